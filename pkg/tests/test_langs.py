import pytest

from mtinstruct.errors import ValidationError
from mtinstruct.langs import Direction, LangCode, known_languages, register_language


def test_known_languages_present():
    langs = known_languages()
    assert langs["en"] == "English"
    assert langs["de"] == "German"
    assert langs["zh"] == "Chinese"
    assert langs["ro"] == "Romanian"


def test_display_names():
    assert LangCode("zh").display == "Chinese"
    assert LangCode("de").display == "German"


def test_unknown_code_rejected():
    with pytest.raises(ValidationError):
        LangCode("xx")


def test_direction_parse_and_pair():
    d = Direction.parse("de-en")
    assert d.src.code == "de"
    assert d.tgt.code == "en"
    assert d.pair == "de-en"
    assert d.reversed().pair == "en-de"


def test_direction_label():
    assert Direction.parse("de-en").label == "De⇒En"
    assert Direction.parse("zh-en").label == "Zh⇒En"


def test_direction_same_language_rejected():
    with pytest.raises(ValidationError):
        Direction.parse("en-en")


@pytest.mark.parametrize("bad", ["en", "en-", "-en", "en-de-fr", ""])
def test_direction_bad_pair(bad):
    with pytest.raises(ValidationError):
        Direction.parse(bad)


def test_register_language():
    register_language("fr", "French")
    try:
        assert LangCode("fr").display == "French"
        assert Direction.parse("fr-en").pair == "fr-en"
    finally:
        known = known_languages()
        del known  # registry stays extended; harmless for other tests


def test_register_language_validates():
    with pytest.raises(ValidationError):
        register_language("", "Empty")
    with pytest.raises(ValidationError):
        register_language("EN", "Shouty")
    with pytest.raises(ValidationError):
        register_language("pt", "  ")

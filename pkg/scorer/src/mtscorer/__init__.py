"""Batch translation-quality scoring behind a small HTTP/offline protocol."""

__version__ = "0.1.0"

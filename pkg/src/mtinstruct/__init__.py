"""Instruction-data engineering and evaluation toolkit for machine translation.

Builds instruction-tuning datasets from parallel corpora, error-annotated
translations and quality scores; renders prompts; runs hint-conditioned
inference against completion endpoints; and reports BLEU-based comparisons.
"""

__version__ = "0.1.0"

"""Zici - Unsupervised self-segmentation of short Chinese documents and lexicon building"""

__version__ = "0.1.0"

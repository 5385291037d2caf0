"""Lexicon pruning, second-pass segmentation, merging and file formats"""

"""N-gram weighting and per-chunk self-segmentation"""

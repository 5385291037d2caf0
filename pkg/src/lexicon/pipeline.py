"""
Self-Segmentation Pipeline
Second, lexicon-driven pass and the end-to-end build of segmentation and lexicon
"""

import logging
from typing import Dict, List, Optional, Tuple, Union

from src.config import SegmenterConfig
from src.lexicon.lexicon import Lexicon, prune_singletons
from src.segmentation.ngrams import WeightTable, count_ngrams
from src.segmentation.segcore import BLANK, SegmentedDocument, explode, self_segment_pass, wrap_entries
from src.text.textprep import Document, split_document

logger = logging.getLogger(__name__)


def _entries_within(chunk: str, rank: Dict[str, int], longest: int) -> List[str]:
    # Inserting blanks never creates an occurrence of a blank-free entry
    found = {
        chunk[i:j]
        for i in range(len(chunk))
        for j in range(i + 1, min(len(chunk), i + longest) + 1)
        if chunk[i:j] in rank
    }
    return sorted(found, key=rank.__getitem__)


def resegment_with_lexicon(
    segmented: SegmentedDocument,
    lexicon: Lexicon
) -> Tuple[SegmentedDocument, Lexicon]:
    """
    Segment every chunk again, wrapping lexicon entries in canonical order

    Works on the first-pass segmentation, so earlier breaks are kept. Every
    resulting segment adds 1 to its count on top of the first-pass counts.
    The entry order is fixed before the pass: entries that first appear
    during this pass are counted but do not drive replacement.

    Args:
        segmented: Output of the first pass
        lexicon: Pruned pre-lexicon

    Returns:
        Tuple of (re-segmented document, updated lexicon)
    """
    entries = lexicon.entries()
    rank = {entry: index for index, entry in enumerate(entries)}
    longest = max(map(len, entries), default=0)
    updated = lexicon.copy()
    chunk_segments = []

    for segments in segmented.chunk_segments():
        working = wrap_entries(BLANK.join(segments), _entries_within("".join(segments), rank, longest))
        new_segments = explode(working)
        updated.update(new_segments)
        chunk_segments.append(new_segments)

    logger.info(f"Second pass used {len(entries)} entries over {len(chunk_segments)} chunks")
    return segmented.with_chunk_segments(chunk_segments), updated


def segment_document(
    text: Union[str, bytes, Document],
    config: Optional[SegmenterConfig] = None,
    weights: Optional[WeightTable] = None
) -> Tuple[SegmentedDocument, Lexicon, WeightTable]:
    """
    Run the whole pipeline, also returning the weight table

    Args:
        text: Source text, UTF-8 bytes or an already split Document
        config: Pipeline settings (defaults if omitted)
        weights: Precomputed weight table, mostly for tests

    Returns:
        Tuple of (segmented document, tentative lexicon, weight table)
    """
    config = config or SegmenterConfig()
    document = text if isinstance(text, Document) else split_document(text)
    if weights is None:
        weights = count_ngrams(document, config.max_n)

    first_pass, pre_lexicon = self_segment_pass(document, weights, rule=config.acceptability)
    pre_lexicon = prune_singletons(pre_lexicon, config.min_count)
    second_pass, lexicon = resegment_with_lexicon(first_pass, pre_lexicon)
    lexicon = prune_singletons(lexicon, config.min_count)

    logger.info(f"Built lexicon of {len(lexicon)} entries from {len(document.chunks)} chunks")
    return second_pass, lexicon, weights


def build(
    text: Union[str, bytes, Document],
    config: Optional[SegmenterConfig] = None
) -> Tuple[SegmentedDocument, Lexicon]:
    """
    Self-segment a document and induce its tentative lexicon

    Args:
        text: Source text, UTF-8 bytes or an already split Document
        config: Pipeline settings (defaults if omitted)

    Returns:
        Tuple of (segmented document, lexicon pruned to min_count)

    Raises:
        EncodingError: If bytes are not valid UTF-8
    """
    segmented, lexicon, _ = segment_document(text, config)
    return segmented, lexicon

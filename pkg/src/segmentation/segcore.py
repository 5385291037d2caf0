"""
Self-Segmentation Core
Candidate collection, acceptability testing and blank insertion for each Han chunk,
plus the first pass that accumulates the pre-lexicon
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from src.config import ACCEPTABILITY_RULES
from src.errors import ConfigurationError
from src.lexicon.lexicon import Lexicon
from src.segmentation.ngrams import WeightTable
from src.text.textprep import Document, contains_han

logger = logging.getLogger(__name__)
# Step-by-step log of candidates, tests and segmentation steps (CLI --trace)
trace = logging.getLogger(f"{__name__}.trace")

BLANK = " "
assert not contains_han(BLANK)


@dataclass(frozen=True)
class Candidate:
    """An n-gram of a chunk whose document-wide weight exceeds 1"""
    text: str
    weight: int
    first_pos: int
    acceptable: bool = True

    @property
    def length(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class CandidateSet:
    """Candidates of one chunk grouped by length, each group in first-occurrence order"""
    by_length: Dict[int, Tuple[Candidate, ...]]

    def __iter__(self) -> Iterator[Candidate]:
        for length in sorted(self.by_length, reverse=True):
            yield from self.by_length[length]

    def __len__(self) -> int:
        return sum(len(group) for group in self.by_length.values())

    def __bool__(self) -> bool:
        return len(self) > 0

    @property
    def max_length(self) -> int:
        return max(self.by_length, default=0)

    def get(self, text: str) -> Optional[Candidate]:
        for candidate in self.by_length.get(len(text), ()):
            if candidate.text == text:
                return candidate
        return None

    def acceptables(self) -> List[Candidate]:
        return [candidate for candidate in self if candidate.acceptable]


@dataclass(frozen=True)
class SegmentedDocument:
    """A document whose Han chunks carry segment lists; literals are one piece each"""
    document: Document
    segments: Tuple[Tuple[str, ...], ...]  # aligned with document.tokens

    @classmethod
    def unsegmented(cls, document: Document) -> "SegmentedDocument":
        return cls(document=document, segments=tuple((token.text,) for token in document.tokens))

    @property
    def source(self) -> str:
        return self.document.source

    def pieces(self) -> List[str]:
        """Segments and literal texts in document order"""
        return [piece for group in self.segments for piece in group]

    def chunk_segments(self) -> List[Tuple[str, ...]]:
        """Segment lists of the Han chunks, in order"""
        return [group for token, group in zip(self.document.tokens, self.segments) if token.is_han]

    def with_chunk_segments(self, chunk_segments: Sequence[Sequence[str]]) -> "SegmentedDocument":
        """
        Replace the segment lists of the Han chunks

        Args:
            chunk_segments: One segment list per Han chunk, in order

        Returns:
            New SegmentedDocument sharing the same tokens
        """
        replacements = iter(chunk_segments)
        segments = []
        for token, group in zip(self.document.tokens, self.segments):
            if token.is_han:
                new_group = tuple(next(replacements))
                if "".join(new_group) != token.text:
                    raise ValueError(f"segments {new_group} do not rebuild chunk {token.text!r}")
                segments.append(new_group)
            else:
                segments.append(group)
        return SegmentedDocument(document=self.document, segments=tuple(segments))


def collect_candidates(chunk: str, weights: WeightTable) -> CandidateSet:
    """
    Find the n-grams of a chunk that occur more than once in the document

    Args:
        chunk: Han chunk text
        weights: Weight table of the whole document

    Returns:
        CandidateSet with each distinct n-gram of weight > 1, at its first position
    """
    by_length: Dict[int, Tuple[Candidate, ...]] = {}
    for n in range(2, min(len(chunk), weights.max_n) + 1):
        seen: Set[str] = set()
        group = []
        for i in range(len(chunk) - n + 1):
            ngram = chunk[i:i + n]
            if ngram in seen:
                continue
            seen.add(ngram)
            count = weights.weight(ngram)
            if count > 1:
                group.append(Candidate(text=ngram, weight=count, first_pos=i))
        if group:
            by_length[n] = tuple(group)
    return CandidateSet(by_length=by_length)


def _constituents(candidate: Candidate, shorter: Dict[str, Candidate]) -> List[Candidate]:
    # Length n-1 candidates found in an n-gram are exactly its prefix and suffix
    texts = dict.fromkeys((candidate.text[:-1], candidate.text[1:]))
    return [shorter[text] for text in texts if text in shorter]


def mark_acceptability(candidates: CandidateSet, weights: WeightTable, rule: str = "each") -> CandidateSet:
    """
    Compare every candidate with the candidates one codepoint shorter it contains

    With rule 'each', a constituent strictly heavier than the n-gram makes the n-gram
    unacceptable, otherwise that constituent is unacceptable. With rule 'both', the
    n-gram is unacceptable only when all its constituents are strictly heavier,
    otherwise the constituents are. Marks are never cleared.

    Args:
        candidates: Output of collect_candidates
        weights: Weight table of the document
        rule: 'each' or 'both'

    Returns:
        New CandidateSet with acceptable flags set
    """
    if rule not in ACCEPTABILITY_RULES:
        raise ConfigurationError(f"unknown acceptability rule {rule!r}")

    unacceptable: Set[str] = set()
    for n in range(candidates.max_length, 2, -1):
        shorter = {c.text: c for c in candidates.by_length.get(n - 1, ())}
        for candidate in candidates.by_length.get(n, ()):
            constituents = _constituents(candidate, shorter)
            if not constituents:
                continue
            weight = weights.weight(candidate.text)
            heavier = [c for c in constituents if weights.weight(c.text) > weight]

            if rule == "each":
                if heavier:
                    unacceptable.add(candidate.text)
                unacceptable.update(c.text for c in constituents if c not in heavier)
            elif len(heavier) == len(constituents):
                unacceptable.add(candidate.text)
            else:
                unacceptable.update(c.text for c in constituents)

            if trace.isEnabledFor(logging.DEBUG):
                parts = ", ".join(f"{c.text} ({weights.weight(c.text)})" for c in constituents)
                verdict = "no" if candidate.text in unacceptable else "yes"
                trace.debug(f"Is {candidate.text} ({weight}) acceptable? constituents {parts}: {verdict}")

    marked = {
        n: tuple(replace(c, acceptable=False) if c.text in unacceptable else c for c in group)
        for n, group in candidates.by_length.items()
    }
    return CandidateSet(by_length=marked)


def order_acceptables(acceptables: Iterable[Candidate]) -> List[Candidate]:
    """Sort by length desc, weight desc, then codepoint order"""
    return sorted(acceptables, key=lambda c: (-c.length, -c.weight, c.text))


def wrap_entries(working: str, entries: Iterable[str]) -> str:
    """
    Surround every occurrence of each entry with blanks, entry by entry

    Matches are left to right and non-overlapping over the current text; since
    entries hold no blank, a match never crosses an earlier break.
    """
    for entry in entries:
        working = working.replace(entry, f"{BLANK}{entry}{BLANK}")
    return working


def explode(working: str) -> List[str]:
    """Split blanked text into its non-empty segments"""
    return [segment for segment in working.split(BLANK) if segment]


def segment_chunk(chunk: str, ordered_acceptables: Sequence[Union[Candidate, str]]) -> List[str]:
    """
    Break a chunk around its acceptable n-grams

    Args:
        chunk: Han chunk text
        ordered_acceptables: Candidates (or texts) already in order_acceptables order

    Returns:
        Segments whose concatenation is the chunk
    """
    working = chunk
    if trace.isEnabledFor(logging.DEBUG):
        trace.debug(f"Segmentation steps:\n  0. {chunk}")
    for step, acceptable in enumerate(ordered_acceptables, start=1):
        text = acceptable.text if isinstance(acceptable, Candidate) else acceptable
        working = wrap_entries(working, (text,))
        if trace.isEnabledFor(logging.DEBUG):
            trace.debug(f"  {step}. {'·'.join(explode(working))}")
    return explode(working)


def _segment_with_candidates(chunk: str, weights: WeightTable, rule: str) -> Optional[List[str]]:
    candidates = collect_candidates(chunk, weights)
    if not candidates:
        return None

    if trace.isEnabledFor(logging.DEBUG):
        listing = "\n".join(f"  {c.text}\t{c.weight}" for c in candidates)
        trace.debug(f"Input data: {chunk}\nCandidate n-grams:\n{listing}")

    marked = mark_acceptability(candidates, weights, rule=rule)
    ordered = order_acceptables(marked.acceptables())

    if trace.isEnabledFor(logging.DEBUG):
        listing = "\n".join(f"  {c.text}\t{c.weight}" for c in ordered)
        trace.debug(f"Acceptable n-grams:\n{listing}")

    return segment_chunk(chunk, ordered)


def self_segment_pass(
    document: Document,
    weights: WeightTable,
    rule: str = "each"
) -> Tuple[SegmentedDocument, Lexicon]:
    """
    First segmentation pass over every Han chunk

    Chunks of length <= 2, or without candidates, stay whole and add nothing to
    the pre-lexicon.

    Args:
        document: Split document
        weights: Weight table built from the same document
        rule: Acceptability rule, 'each' or 'both'

    Returns:
        Tuple of (segmented document, unpruned pre-lexicon)
    """
    pre_lexicon = Lexicon()
    chunk_segments = []
    segmented_chunks = 0

    for chunk in document.chunks:
        segments = None
        if len(chunk) > 2:
            segments = _segment_with_candidates(chunk, weights, rule)
        if segments is None:
            chunk_segments.append((chunk,))
            continue
        pre_lexicon.update(segments)
        chunk_segments.append(tuple(segments))
        segmented_chunks += 1

    logger.info(
        f"First pass segmented {segmented_chunks}/{len(chunk_segments)} chunks, "
        f"pre-lexicon has {len(pre_lexicon)} entries"
    )
    segmented = SegmentedDocument.unsegmented(document).with_chunk_segments(chunk_segments)
    return segmented, pre_lexicon

"""
Lexicon
Entry -> count maps with canonical ordering, pruning, merging and promising-entry ranking
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from src.errors import ConfigurationError

logger = logging.getLogger(__name__)


def canonical_key(entry: str, count: int) -> Tuple[int, int, str]:
    """Sort key: longer first, then more frequent, then codepoint order"""
    return (-len(entry), -count, entry)


class Lexicon:
    """Entry counts, iterated in canonical order (length desc, count desc, codepoint asc)"""

    def __init__(self, entries: Optional[Mapping[str, int]] = None):
        self._counts: Counter = Counter()
        if entries:
            for entry, count in entries.items():
                self.add(entry, count)

    def add(self, entry: str, count: int = 1) -> None:
        if not entry:
            raise ValueError("lexicon entries must be non-empty")
        self._counts[entry] += count

    def update(self, entries: Iterable[str]) -> None:
        """Add 1 for each entry occurrence"""
        for entry in entries:
            self.add(entry)

    def count(self, entry: str) -> int:
        return self._counts.get(entry, 0)

    def items(self) -> List[Tuple[str, int]]:
        """(entry, count) pairs in canonical order"""
        return sorted(self._counts.items(), key=lambda item: canonical_key(*item))

    def entries(self) -> List[str]:
        return [entry for entry, _ in self.items()]

    def as_dict(self) -> Dict[str, int]:
        return dict(self._counts)

    def copy(self) -> "Lexicon":
        return Lexicon(self._counts)

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries())

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, entry: object) -> bool:
        return entry in self._counts

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Lexicon):
            return self._counts == other._counts
        if isinstance(other, Mapping):
            return dict(self._counts) == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{entry}: {count}" for entry, count in self.items())
        return f"Lexicon({{{body}}})"


@dataclass(frozen=True)
class MergedLexicon:
    """Summed lexicon plus the entries found in more than one input"""
    lexicon: Lexicon
    reinforced: FrozenSet[str] = frozenset()
    # Number of inputs containing each entry
    document_frequency: Dict[str, int] = field(default_factory=dict)

    def is_reinforced(self, entry: str) -> bool:
        return entry in self.reinforced


def prune_singletons(lexicon: Lexicon, min_count: int = 2) -> Lexicon:
    """
    Drop entries seen fewer than min_count times

    Args:
        lexicon: Lexicon to prune (left untouched)
        min_count: Smallest count kept (>= 1)

    Returns:
        New pruned Lexicon
    """
    if min_count < 1:
        raise ConfigurationError(f"min_count must be at least 1, got {min_count}")
    kept = {entry: count for entry, count in lexicon.as_dict().items() if count >= min_count}
    dropped = len(lexicon) - len(kept)
    if dropped:
        logger.debug(f"Pruned {dropped} entries below count {min_count}, {len(kept)} kept")
    return Lexicon(kept)


def merge(a: Lexicon, b: Lexicon) -> MergedLexicon:
    """
    Sum two lexicons and mark the entries they share as reinforced

    Args:
        a: First lexicon
        b: Second lexicon

    Returns:
        MergedLexicon; the operation is commutative
    """
    merged = a.copy()
    for entry, count in b.as_dict().items():
        merged.add(entry, count)

    reinforced = frozenset(entry for entry in a.as_dict() if entry in b)
    frequency = {entry: int(entry in a) + int(entry in b) for entry in merged.as_dict()}
    return MergedLexicon(lexicon=merged, reinforced=reinforced, document_frequency=frequency)


def fold(lexicons: Iterable[Lexicon], seed: Optional[Lexicon] = None) -> MergedLexicon:
    """
    Merge a sequence of per-document lexicons in order

    Args:
        lexicons: Lexicons to fold, in a fixed order
        seed: Optional starting lexicon, counted as one more input

    Returns:
        MergedLexicon whose reinforced set holds entries present in two or more inputs
    """
    total = seed.copy() if seed is not None else Lexicon()
    frequency: Counter = Counter(total.as_dict().keys())
    reinforced = set()
    folded = 0

    for lexicon in lexicons:
        step = merge(total, lexicon)
        total = step.lexicon
        reinforced |= step.reinforced
        frequency.update(lexicon.as_dict().keys())
        folded += 1

    logger.info(f"Folded {folded} lexicons: {len(total)} entries, {len(reinforced)} reinforced")
    return MergedLexicon(lexicon=total, reinforced=frozenset(reinforced), document_frequency=dict(frequency))


def rank_promising(lexicon: Lexicon, k: int) -> List[str]:
    """
    Pick the most promising entries: the longest and most frequent first

    Args:
        lexicon: Lexicon to rank
        k: Number of entries to return (>= 0)

    Returns:
        First k entries in canonical order
    """
    if k < 0:
        raise ConfigurationError(f"k must be non-negative, got {k}")
    return lexicon.entries()[:k]

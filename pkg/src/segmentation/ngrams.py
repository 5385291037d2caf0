"""
N-gram Weights
Document-wide occurrence counts of every n-gram (2 <= n <= max_n) inside Han chunks
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from src.config import DEFAULT_MAX_NGRAM_SIZE
from src.errors import ConfigurationError
from src.lexicon.lexicon import canonical_key
from src.text.textprep import Document

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightTable:
    """Occurrence count of each n-gram in one document"""
    max_n: int
    counts: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_counts(cls, counts: Mapping[str, int], max_n: int = DEFAULT_MAX_NGRAM_SIZE) -> "WeightTable":
        """
        Build a table from known counts (used to inject weights)

        Args:
            counts: n-gram -> count
            max_n: Longest n-gram the table answers for

        Returns:
            WeightTable holding the positive counts
        """
        if max_n < 2:
            raise ConfigurationError(f"max_n must be at least 2, got {max_n}")
        return cls(max_n=max_n, counts={ngram: count for ngram, count in counts.items() if count > 0})

    def weight(self, ngram: str) -> int:
        """
        Count of an n-gram

        Args:
            ngram: Text to look up

        Returns:
            Stored count, or 0 when absent, shorter than 2 or longer than max_n
        """
        if not 2 <= len(ngram) <= self.max_n:
            return 0
        return self.counts.get(ngram, 0)

    def __len__(self) -> int:
        return len(self.counts)

    def __contains__(self, ngram: str) -> bool:
        return self.weight(ngram) > 0

    def repeated(self) -> Iterator[Tuple[str, int]]:
        """n-grams occurring twice or more, in canonical order"""
        items = [(ngram, count) for ngram, count in self.counts.items() if count > 1]
        items.sort(key=lambda item: canonical_key(*item))
        return iter(items)


def count_chunk_ngrams(chunks: Iterable[str], max_n: int) -> Counter:
    """
    Count every window of length 2..max_n in each chunk

    Args:
        chunks: Han chunk texts
        max_n: Longest window

    Returns:
        Counter of n-gram occurrences; overlapping occurrences all count
    """
    counts: Counter = Counter()
    for chunk in chunks:
        length = len(chunk)
        for n in range(2, min(max_n, length) + 1):
            counts.update(chunk[i:i + n] for i in range(length - n + 1))
    return counts


def count_ngrams(document: Document, max_n: int = DEFAULT_MAX_NGRAM_SIZE) -> WeightTable:
    """
    Compute the weight table of a document

    Args:
        document: Split document
        max_n: Longest n-gram to count (>= 2)

    Returns:
        WeightTable for the document's Han chunks

    Raises:
        ConfigurationError: If max_n < 2
    """
    if max_n < 2:
        raise ConfigurationError(f"max_n must be at least 2, got {max_n}")

    counts = count_chunk_ngrams(document.chunks, max_n)
    table = WeightTable(max_n=max_n, counts=dict(counts))
    repeated = sum(1 for count in counts.values() if count > 1)
    logger.info(f"Counted {len(counts)} distinct n-grams (n <= {max_n}), {repeated} repeated")
    return table

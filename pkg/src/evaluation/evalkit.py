"""
Evaluation Kit
Dictionary coverage of induced lexicons and word-span scoring of segmentations
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from src.errors import AlignmentError
from src.lexicon.lexicon import Lexicon
from src.text.textprep import decode_source

logger = logging.getLogger(__name__)

# TRAD SIMP [PINYIN] /GLOSS/.../
CEDICT_LINE_RE = re.compile(r"^(\S+)\s+(\S+)\s+\[([^\]]*)\]\s+/(.+)/\s*$")
_ASCII_WHITESPACE_RE = re.compile(r"[ \t\r\f\v]+")


@dataclass(frozen=True)
class DictionarySet:
    """Headwords of a CEDICT-format dictionary"""
    headwords: FrozenSet[str]
    line_count: int = 0
    malformed: int = 0

    def __contains__(self, word: object) -> bool:
        return word in self.headwords

    def __len__(self) -> int:
        return len(self.headwords)


@dataclass(frozen=True)
class CoverageReport:
    """How many lexicon entries are dictionary headwords"""
    total_entries: int
    matched: int
    unmatched: Tuple[str, ...] = ()
    label: str = ""

    @property
    def ratio(self) -> float:
        if self.total_entries == 0:
            return 0.0
        return round(self.matched / self.total_entries, 4)

    @property
    def percent(self) -> int:
        """Percentage rounded half up to an integer"""
        if self.total_entries == 0:
            return 0
        return (200 * self.matched + self.total_entries) // (2 * self.total_entries)

    def summary(self) -> str:
        """Table-style cell, e.g. '279/400 (70%)'"""
        return f"{self.matched}/{self.total_entries} ({self.percent}%)"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "total_entries": self.total_entries,
            "matched": self.matched,
            "ratio": self.ratio,
            "percent": self.percent,
            "unmatched": list(self.unmatched),
        }


@dataclass(frozen=True)
class PrfScore:
    """Micro-averaged word-span precision, recall and F1"""
    matched: int
    gold_words: int
    pred_words: int
    lines: int = 0

    @property
    def precision(self) -> float:
        if self.pred_words == 0:
            return 1.0 if self.gold_words == 0 else 0.0
        return self.matched / self.pred_words

    @property
    def recall(self) -> float:
        if self.gold_words == 0:
            return 1.0 if self.pred_words == 0 else 0.0
        return self.matched / self.gold_words

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        if p + r == 0:
            return 0.0
        return 2 * p * r / (p + r)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lines": self.lines,
            "gold_words": self.gold_words,
            "pred_words": self.pred_words,
            "matched": self.matched,
            "precision": round(self.precision, 4),
            "recall": round(self.recall, 4),
            "f1": round(self.f1, 4),
        }


def parse_cedict(stream: Iterable[str], traditional: bool = False) -> DictionarySet:
    """
    Collect headwords from CEDICT lines

    Args:
        stream: Lines of the dictionary file
        traditional: Use the traditional column instead of the simplified one

    Returns:
        DictionarySet; comment and blank lines are skipped, malformed lines counted
    """
    headwords: Set[str] = set()
    line_count = 0
    malformed = 0

    for line_count, line in enumerate(stream, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        match = CEDICT_LINE_RE.match(line)
        if not match:
            malformed += 1
            logger.debug(f"CEDICT line {line_count} failed to match: {line!r}")
            continue
        headwords.add(match.group(1) if traditional else match.group(2))

    if malformed:
        logger.warning(f"Skipped {malformed} malformed CEDICT lines out of {line_count}")
    logger.info(f"Loaded {len(headwords)} dictionary headwords")
    return DictionarySet(headwords=frozenset(headwords), line_count=line_count, malformed=malformed)


def read_cedict(path: Union[str, Path], traditional: bool = False) -> DictionarySet:
    """
    Load a CEDICT file

    Raises:
        OSError: If the file cannot be read
        EncodingError: If it is not UTF-8
    """
    text = decode_source(Path(path).read_bytes(), source=str(path))
    return parse_cedict(text.splitlines(), traditional=traditional)


def coverage(
    lexicon: Lexicon,
    dictionary: DictionarySet,
    within: Optional[str] = None,
    label: str = ""
) -> CoverageReport:
    """
    Count lexicon entries that are dictionary headwords

    Args:
        lexicon: Induced lexicon
        dictionary: Reference headwords
        within: When given, only entries occurring in this text are considered
        label: Name shown in reports

    Returns:
        CoverageReport; an empty lexicon gives ratio 0
    """
    entries = lexicon.entries()
    if within is not None:
        entries = [entry for entry in entries if entry in within]

    unmatched = tuple(entry for entry in entries if entry not in dictionary)
    return CoverageReport(
        total_entries=len(entries),
        matched=len(entries) - len(unmatched),
        unmatched=unmatched,
        label=label,
    )


def aggregate_coverage(reports: Sequence[CoverageReport], label: str = "Average") -> CoverageReport:
    """Sum several reports into one row"""
    return CoverageReport(
        total_entries=sum(report.total_entries for report in reports),
        matched=sum(report.matched for report in reports),
        unmatched=tuple(entry for report in reports for entry in report.unmatched),
        label=label,
    )


def _spans(words: Sequence[str]) -> Set[Tuple[int, int]]:
    spans = set()
    start = 0
    for word in words:
        spans.add((start, start + len(word)))
        start += len(word)
    return spans


def score_segmentation(gold: Sequence[Sequence[str]], pred: Sequence[Sequence[str]]) -> PrfScore:
    """
    Compare two segmentations of the same lines by word spans

    Args:
        gold: Reference token lists, one per line
        pred: Predicted token lists, one per line

    Returns:
        Micro-averaged PrfScore

    Raises:
        AlignmentError: If line counts differ or a line's tokens rebuild different text
    """
    if len(gold) != len(pred):
        first = min(len(gold), len(pred)) + 1
        raise AlignmentError(f"gold has {len(gold)} lines but pred has {len(pred)}", line_number=first)

    matched = gold_words = pred_words = 0
    for line_number, (gold_line, pred_line) in enumerate(zip(gold, pred), start=1):
        if "".join(gold_line) != "".join(pred_line):
            raise AlignmentError("gold and pred tokens do not rebuild the same text", line_number=line_number)
        gold_spans = _spans(gold_line)
        pred_spans = _spans(pred_line)
        matched += len(gold_spans & pred_spans)
        gold_words += len(gold_line)
        pred_words += len(pred_line)

    return PrfScore(matched=matched, gold_words=gold_words, pred_words=pred_words, lines=len(gold))


def tokenize_line(line: str) -> List[str]:
    """Split a line on runs of ASCII whitespace"""
    return [token for token in _ASCII_WHITESPACE_RE.split(line) if token]


def read_segmentation_file(path: Union[str, Path]) -> List[List[str]]:
    """
    Load a one-sentence-per-line segmentation file

    Raises:
        OSError: If the file cannot be read
        EncodingError: If it is not UTF-8
    """
    text = decode_source(Path(path).read_bytes(), source=str(path))
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        return []
    return [tokenize_line(line) for line in text.split("\n")]

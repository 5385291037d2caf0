"""
Lexicon Files
UTF-8 TSV lexicons (entry<TAB>count[<TAB>R|N]) and the n-gram weight dump
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from src.errors import MalformedDataError
from src.lexicon.lexicon import Lexicon, MergedLexicon
from src.segmentation.ngrams import WeightTable
from src.text.textprep import decode_source, is_han

logger = logging.getLogger(__name__)

REINFORCED_MARK = "R"
NEW_MARK = "N"


def format_lexicon_tsv(lexicon: Lexicon, reinforced: Optional[Iterable[str]] = None) -> str:
    """
    Render a lexicon as TSV lines in canonical order

    Args:
        lexicon: Lexicon to render
        reinforced: When given, a third column marks entries R (in the set) or N

    Returns:
        TSV text, every line ending with LF, empty for an empty lexicon
    """
    marks = set(reinforced) if reinforced is not None else None
    lines = []
    for entry, count in lexicon.items():
        line = f"{entry}\t{count}"
        if marks is not None:
            line += "\t" + (REINFORCED_MARK if entry in marks else NEW_MARK)
        lines.append(line + "\n")
    return "".join(lines)


def format_reinforcement_report(merged: MergedLexicon) -> str:
    """Lines entry<TAB>total count<TAB>number of inputs containing it, canonical order"""
    return "".join(
        f"{entry}\t{count}\t{merged.document_frequency.get(entry, 0)}\n"
        for entry, count in merged.lexicon.items()
    )


def format_ngram_tsv(weights: WeightTable) -> str:
    """Repeated n-grams as ngram<TAB>count lines, ordered like a lexicon"""
    return "".join(f"{ngram}\t{count}\n" for ngram, count in weights.repeated())


def write_text(path: Union[str, Path], text: str) -> None:
    """Write UTF-8 text with LF line endings exactly as given"""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info(f"Wrote {len(text)} codepoints to {path}")


def write_lexicon_tsv(
    lexicon: Lexicon,
    path: Union[str, Path],
    reinforced: Optional[Iterable[str]] = None
) -> None:
    write_text(path, format_lexicon_tsv(lexicon, reinforced))


def parse_lexicon_tsv(lines: Iterable[str], source: str = "<lexicon>") -> Tuple[Lexicon, Dict[str, str]]:
    """
    Parse lexicon TSV lines

    Args:
        lines: Lines with or without trailing newlines
        source: Name used in error messages

    Returns:
        Tuple of (lexicon, entry -> mark for three-column files)

    Raises:
        MalformedDataError: On a line that is not entry<TAB>count[<TAB>R|N] with a Han-only entry
    """
    lexicon = Lexicon()
    marks: Dict[str, str] = {}
    for line_number, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        fields: List[str] = line.split("\t")
        if len(fields) not in (2, 3) or not fields[0]:
            raise MalformedDataError(f"expected entry<TAB>count, got {line!r}", source, line_number)
        entry, count_text = fields[0], fields[1]
        if not all(is_han(char) for char in entry):
            raise MalformedDataError(f"entry must contain only Han characters, got {entry!r}", source, line_number)
        if not (count_text.isascii() and count_text.isdigit()) or int(count_text) < 1:
            raise MalformedDataError(f"count must be a positive integer, got {count_text!r}", source, line_number)
        if entry in lexicon:
            raise MalformedDataError(f"duplicate entry {entry!r}", source, line_number)
        if len(fields) == 3:
            if fields[2] not in (REINFORCED_MARK, NEW_MARK):
                raise MalformedDataError(f"mark must be R or N, got {fields[2]!r}", source, line_number)
            marks[entry] = fields[2]
        lexicon.add(entry, int(count_text))
    return lexicon, marks


def read_lexicon_tsv(path: Union[str, Path]) -> Lexicon:
    """
    Load a lexicon file

    Args:
        path: TSV file

    Returns:
        Lexicon (marks of three-column files are ignored)

    Raises:
        OSError: If the file cannot be read
        MalformedDataError: If the content is not a lexicon
    """
    text = decode_source(Path(path).read_bytes(), source=str(path))
    lexicon, _ = parse_lexicon_tsv(text.split("\n"), source=str(path))
    logger.info(f"Loaded {len(lexicon)} lexicon entries from {path}")
    return lexicon

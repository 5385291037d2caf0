"""
Text Preparation
Splits raw text into Han chunks and literal break tokens, and renders segmented output
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Iterator, List, Optional, Sequence, Tuple, Union

from src.errors import ConfigurationError, EncodingError

if TYPE_CHECKING:
    from src.segmentation.segcore import SegmentedDocument

logger = logging.getLogger(__name__)

# CJK Unified Ideographs Extension A, CJK Unified Ideographs
HAN_RANGES: Tuple[Tuple[int, int], ...] = (
    (0x3400, 0x4DBF),
    (0x4E00, 0x9FFF),
)

_HAN_CLASS = "".join(f"\\u{low:04x}-\\u{high:04x}" for low, high in HAN_RANGES)
_TOKEN_RE = re.compile(f"([{_HAN_CLASS}]+)|([^{_HAN_CLASS}]+)")
_HAN_RE = re.compile(f"[{_HAN_CLASS}]")
_LINE_BREAK_RE = re.compile(r"(\r\n|\r|\n)")


class TokenKind(Enum):
    HAN_CHUNK = "han"
    LITERAL = "literal"


@dataclass(frozen=True)
class Token:
    """A maximal run of Han codepoints, or of anything else"""
    kind: TokenKind
    text: str
    start: int  # codepoint offset into the source

    @property
    def end(self) -> int:
        return self.start + len(self.text)

    @property
    def is_han(self) -> bool:
        return self.kind is TokenKind.HAN_CHUNK


@dataclass(frozen=True)
class Document:
    """Source text and the tokens tiling it"""
    source: str
    tokens: Tuple[Token, ...]

    @property
    def chunks(self) -> List[str]:
        """Han chunk texts in document order"""
        return [token.text for token in self.tokens if token.is_han]

    def pieces(self) -> List[str]:
        """Token texts in document order (one piece per token)"""
        return [token.text for token in self.tokens]


def is_han(char: str) -> bool:
    """
    Check whether a single character is a Han ideograph

    Args:
        char: One-codepoint string

    Returns:
        True if the codepoint lies in one of HAN_RANGES
    """
    codepoint = ord(char)
    return any(low <= codepoint <= high for low, high in HAN_RANGES)


def contains_han(text: str) -> bool:
    return _HAN_RE.search(text) is not None


def check_separator(separator: str) -> str:
    """
    Validate an output separator

    Args:
        separator: Candidate separator string

    Returns:
        The separator unchanged

    Raises:
        ConfigurationError: If the separator contains Han codepoints
    """
    if contains_han(separator):
        raise ConfigurationError(f"separator must not contain Han characters: {separator!r}")
    return separator


def decode_source(data: bytes, source: Optional[str] = None) -> str:
    """
    Decode UTF-8 input strictly

    Args:
        data: Raw bytes
        source: Optional name of the input, used in the error message

    Returns:
        Decoded text; a byte order mark, if present, is kept as a character

    Raises:
        EncodingError: With the offset of the first offending byte
    """
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise EncodingError(e.start, reason=e.reason, source=source) from e


def split_document(text: Union[str, bytes]) -> Document:
    """
    Split text into maximal Han chunks and literal runs

    Args:
        text: Source text, or UTF-8 bytes

    Returns:
        Document whose token texts concatenate back to the source
    """
    if isinstance(text, bytes):
        text = decode_source(text)

    tokens = []
    for match in _TOKEN_RE.finditer(text):
        kind = TokenKind.HAN_CHUNK if match.group(1) is not None else TokenKind.LITERAL
        tokens.append(Token(kind=kind, text=match.group(0), start=match.start()))

    document = Document(source=text, tokens=tuple(tokens))
    logger.debug(f"Split {len(text)} codepoints into {len(tokens)} tokens ({len(document.chunks)} Han chunks)")
    return document


def read_document(path: Union[str, Path]) -> Document:
    """
    Read a UTF-8 file and split it

    Args:
        path: File to read

    Returns:
        Document for the file content

    Raises:
        OSError: If the file cannot be read
        EncodingError: If the file is not valid UTF-8
    """
    path = Path(path)
    data = path.read_bytes()
    logger.info(f"Read {len(data)} bytes from {path}")
    return split_document(decode_source(data, source=str(path)))


def _line_pieces(pieces: Sequence[str]) -> Iterator[str]:
    # Line breaks become pieces of their own so no separator lands next to one
    for piece in pieces:
        for part in _LINE_BREAK_RE.split(piece):
            if part:
                yield part


def render(segmented_document: Union["SegmentedDocument", Document], separator: str = " ") -> str:
    """
    Join segments and literal tokens with a separator

    Args:
        segmented_document: Segmented (or plain) document
        separator: String placed between consecutive pieces of a line

    Returns:
        Rendered text; line breaks inside literals are kept verbatim

    Raises:
        ConfigurationError: If the separator contains Han codepoints
    """
    check_separator(separator)

    output: List[str] = []
    previous_break = True
    for piece in _line_pieces(segmented_document.pieces()):
        is_break = _LINE_BREAK_RE.fullmatch(piece) is not None
        if not previous_break and not is_break:
            output.append(separator)
        output.append(piece)
        previous_break = is_break
    return "".join(output)

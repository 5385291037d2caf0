"""
Error types
Every failure the command line can report maps to one of these, each with its exit code
"""

from typing import Optional


class ZiciError(Exception):
    """Base class for all errors raised by the package"""

    exit_code = 1


class ConfigurationError(ZiciError, ValueError):
    """Invalid parameter value (max_n, min_count, k, separator...)"""

    exit_code = 1


class MalformedDataError(ZiciError):
    """Input file that cannot be interpreted (lexicon TSV, CEDICT, gold/pred files)"""

    exit_code = 3

    def __init__(self, message: str, source: Optional[str] = None, line_number: Optional[int] = None):
        """
        Args:
            message: What went wrong
            source: File name or other description of the input
            line_number: 1-based line of the first offending line, if known
        """
        self.source = source
        self.line_number = line_number
        location = ""
        if source:
            location = source
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        elif line_number is not None:
            location = f"line {line_number}: "
        super().__init__(f"{location}{message}")


class EncodingError(MalformedDataError):
    """Input bytes are not valid UTF-8"""

    def __init__(self, byte_offset: int, reason: str = "invalid UTF-8", source: Optional[str] = None):
        self.byte_offset = byte_offset
        super().__init__(f"{reason} at byte offset {byte_offset}", source=source)


class AlignmentError(MalformedDataError):
    """Gold and predicted segmentations do not describe the same text"""

"""
Segmenter Configuration
Parameters of the self-segmentation pipeline, validated on construction
"""

from dataclasses import dataclass, replace

from src.errors import ConfigurationError
from src.text.textprep import check_separator

DEFAULT_MAX_NGRAM_SIZE = 8
DEFAULT_MIN_COUNT = 2
DEFAULT_SEPARATOR = " "

# 'each': one strictly heavier constituent rejects the longer n-gram
# 'both': both constituents must be strictly heavier
ACCEPTABILITY_RULES = ("each", "both")


@dataclass(frozen=True)
class SegmenterConfig:
    """Settings for one segmentation run"""
    max_n: int = DEFAULT_MAX_NGRAM_SIZE
    min_count: int = DEFAULT_MIN_COUNT
    separator: str = DEFAULT_SEPARATOR
    trace: bool = False
    json: bool = False
    acceptability: str = "each"

    def __post_init__(self):
        if self.max_n < 2:
            raise ConfigurationError(f"max_n must be at least 2, got {self.max_n}")
        if self.min_count < 1:
            raise ConfigurationError(f"min_count must be at least 1, got {self.min_count}")
        if self.acceptability not in ACCEPTABILITY_RULES:
            raise ConfigurationError(
                f"acceptability must be one of {', '.join(ACCEPTABILITY_RULES)}, got {self.acceptability!r}"
            )
        check_separator(self.separator)

    def with_overrides(self, **changes) -> "SegmenterConfig":
        """
        Return a validated copy with some fields replaced

        Args:
            **changes: Field values to override; None values are ignored

        Returns:
            New SegmenterConfig
        """
        return replace(self, **{key: value for key, value in changes.items() if value is not None})

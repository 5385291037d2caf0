"""
Corpus Bootstrap
Builds one lexicon per document of a local corpus and folds them into a reinforced lexicon
"""

import logging
from multiprocessing import get_context
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.config import SegmenterConfig
from src.errors import ZiciError
from src.lexicon.lexicon import Lexicon, MergedLexicon, fold
from src.lexicon.pipeline import build
from src.text.textprep import read_document

logger = logging.getLogger(__name__)

MAX_JOBS = 32

# (path, entry counts or None, error message or None)
DocumentResult = Tuple[str, Optional[Dict[str, int]], Optional[str]]


def list_corpus(corpus_dir: Union[str, Path]) -> List[Path]:
    """
    List corpus files in sorted path order

    Args:
        corpus_dir: Directory searched recursively; hidden files and directories are ignored

    Returns:
        Sorted file paths

    Raises:
        NotADirectoryError: If corpus_dir is not a directory
    """
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise NotADirectoryError(f"not a directory: {corpus_dir}")
    return sorted(
        path for path in corpus_dir.rglob("*")
        if path.is_file() and not any(part.startswith(".") for part in path.relative_to(corpus_dir).parts)
    )


def build_document_lexicon(args: Tuple[str, SegmenterConfig]) -> DocumentResult:
    """Worker: self-segment one file, reporting failures instead of raising"""
    path, config = args
    try:
        document = read_document(path)
    except (OSError, ZiciError) as e:
        return path, None, str(e)
    _, lexicon = build(document, config)
    return path, lexicon.as_dict(), None


def bootstrap(
    corpus_dir: Union[str, Path],
    seed: Optional[Lexicon] = None,
    config: Optional[SegmenterConfig] = None,
    jobs: int = 1
) -> MergedLexicon:
    """
    Fold the lexicons of every document of a corpus

    Args:
        corpus_dir: Directory of UTF-8 documents
        seed: Optional lexicon to start from
        config: Pipeline settings
        jobs: Worker processes; results are folded in sorted path order either way

    Returns:
        MergedLexicon with reinforced entries and per-entry document counts
    """
    config = config or SegmenterConfig()
    paths = list_corpus(corpus_dir)
    logger.info(f"Bootstrapping from {len(paths)} documents in {corpus_dir}")

    tasks = [(str(path), config) for path in paths]
    workers = min(max(1, jobs), MAX_JOBS, max(1, len(tasks)))
    if workers > 1:
        with get_context("spawn").Pool(processes=workers) as pool:
            results = pool.map(build_document_lexicon, tasks)
    else:
        results = [build_document_lexicon(task) for task in tasks]

    lexicons = []
    for path, entries, error in results:
        if entries is None:
            logger.warning(f"Skipping unreadable document {path}: {error}")
            continue
        logger.debug(f"{path}: {len(entries)} lexicon entries")
        lexicons.append(Lexicon(entries))

    return fold(lexicons, seed=seed)

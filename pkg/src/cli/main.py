"""
Command Line
The `zici` program: segment documents, build/merge/rank lexicons, evaluate, bootstrap
"""

import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import click

from src import __version__
from src.cli.bootstrap import bootstrap as bootstrap_corpus
from src.config import (
    ACCEPTABILITY_RULES,
    DEFAULT_MAX_NGRAM_SIZE,
    DEFAULT_MIN_COUNT,
    DEFAULT_SEPARATOR,
    SegmenterConfig,
)
from src.errors import MalformedDataError, ZiciError
from src.evaluation.evalkit import (
    aggregate_coverage,
    coverage,
    read_cedict,
    read_segmentation_file,
    score_segmentation,
)
from src.lexicon.lexicon import fold, merge as merge_lexicons, rank_promising
from src.lexicon.lexicon_io import (
    format_ngram_tsv,
    format_reinforcement_report,
    read_lexicon_tsv,
    write_lexicon_tsv,
    write_text,
)
from src.lexicon.pipeline import build, segment_document
from src.segmentation.segcore import trace as trace_logger
from src.text.textprep import decode_source, read_document, render

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3

_HANDLER_MARK = "_zici_handler"


def configure_logging(verbose: bool = False, trace: bool = False) -> None:
    """
    Route package logs (and the optional segmentation trace) to the current stderr

    Handlers installed by an earlier call are replaced, so repeated in-process
    invocations never write to a stale stream.
    """
    package_logger = logging.getLogger("src")
    for log in (package_logger, trace_logger):
        for handler in list(log.handlers):
            if getattr(handler, _HANDLER_MARK, False):
                log.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    setattr(handler, _HANDLER_MARK, True)
    package_logger.addHandler(handler)
    package_logger.setLevel(logging.INFO if verbose else logging.WARNING)

    if trace:
        trace_handler = logging.StreamHandler(sys.stderr)
        trace_handler.setFormatter(logging.Formatter("%(message)s"))
        setattr(trace_handler, _HANDLER_MARK, True)
        trace_logger.addHandler(trace_handler)
        trace_logger.setLevel(logging.DEBUG)
        trace_logger.propagate = False
    else:
        trace_logger.setLevel(logging.NOTSET)
        trace_logger.propagate = True


def _exit_code_for(error: BaseException) -> int:
    if isinstance(error, ZiciError):
        return error.exit_code
    if isinstance(error, (click.FileError, OSError)):
        return EXIT_IO
    return EXIT_USAGE


def _describe(error: BaseException) -> str:
    if isinstance(error, click.ClickException):
        return error.format_message()
    if isinstance(error, OSError) and error.filename is not None:
        return f"{error.strerror or error}: {error.filename}"
    return str(error) or error.__class__.__name__


class ZiciGroup(click.Group):
    """Command group mapping every failure to a one-line diagnostic and an exit code"""

    def main(self, args: Optional[Sequence[str]] = None, prog_name: Optional[str] = None,
             complete_var: Optional[str] = None, standalone_mode: bool = True, **extra):
        try:
            result = super().main(
                args=args,
                prog_name=prog_name or "zici",
                complete_var=complete_var,
                standalone_mode=False,
                **extra
            )
            code = result if isinstance(result, int) else EXIT_OK
        except click.exceptions.Abort:
            click.echo("zici: error: aborted", err=True)
            code = EXIT_USAGE
        except (click.ClickException, ZiciError, OSError) as e:
            click.echo(f"zici: error: {_describe(e)}", err=True)
            code = _exit_code_for(e)

        if standalone_mode:
            sys.exit(code)
        return code


def _config(ctx: click.Context, **overrides) -> SegmenterConfig:
    return ctx.obj["config"].with_overrides(**overrides)


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        # color=True keeps escape sequences of the input in the output
        click.echo(text, nl=False, color=True)
    else:
        write_text(output, text)


max_ngram_option = click.option(
    "--max-ngram", "max_n", type=int, default=None,
    help=f"Longest n-gram counted (default {DEFAULT_MAX_NGRAM_SIZE})",
)
min_count_option = click.option(
    "--min-count", type=int, default=None,
    help=f"Smallest count kept in the lexicon (default {DEFAULT_MIN_COUNT})",
)
output_option = click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
required_output_option = click.option(
    "-o", "--output", type=click.Path(dir_okay=False, path_type=Path), required=True
)


@click.group(cls=ZiciGroup)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to standard error")
@click.version_option(__version__, prog_name="zici")
@click.pass_context
def cli(ctx: click.Context, verbose: bool):
    """Self-segment short Chinese documents and build lexicons from scratch"""
    configure_logging(verbose=verbose)
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["config"] = SegmenterConfig()


@cli.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(path_type=Path))
@output_option
@click.option("--lexicon-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Also write the induced lexicon as TSV")
@click.option("--ngrams-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Dump repeated n-gram weights as TSV")
@max_ngram_option
@min_count_option
@click.option("--separator", default=None, help=f"Text placed between segments (default {DEFAULT_SEPARATOR!r})")
@click.option("--acceptability", type=click.Choice(ACCEPTABILITY_RULES), default=None,
              help="'each': one heavier constituent rejects an n-gram; 'both': both must be heavier")
@click.option("--trace", is_flag=True, help="Log candidates, tests and segmentation steps to standard error")
@click.pass_context
def segment(ctx, input_path, output, lexicon_out, ngrams_out, max_n, min_count, separator, acceptability, trace):
    """Segment INPUT and print it with segments separated"""
    config = _config(
        ctx, max_n=max_n, min_count=min_count, separator=separator, acceptability=acceptability, trace=trace
    )
    if config.trace:
        configure_logging(verbose=ctx.obj["verbose"], trace=True)

    segmented, lexicon, weights = segment_document(read_document(input_path), config)

    _emit(render(segmented, config.separator), output)
    if lexicon_out is not None:
        write_lexicon_tsv(lexicon, lexicon_out)
    if ngrams_out is not None:
        write_text(ngrams_out, format_ngram_tsv(weights))


@cli.group()
def lexicon():
    """Build, merge and rank lexicons"""


@lexicon.command("build")
@click.argument("inputs", metavar="INPUT...", nargs=-1, required=True, type=click.Path(path_type=Path))
@required_output_option
@max_ngram_option
@min_count_option
@click.pass_context
def lexicon_build(ctx, inputs, output, max_n, min_count):
    """Self-segment each INPUT separately and write the summed lexicon"""
    config = _config(ctx, max_n=max_n, min_count=min_count)
    lexicons = []
    for path in inputs:
        _, document_lexicon = build(read_document(path), config)
        lexicons.append(document_lexicon)
    write_lexicon_tsv(fold(lexicons).lexicon, output)


@lexicon.command("merge")
@click.argument("first", metavar="A.tsv", type=click.Path(path_type=Path))
@click.argument("second", metavar="B.tsv", type=click.Path(path_type=Path))
@required_output_option
@click.option("--mark-reinforced", is_flag=True, help="Add a third column: R (in both inputs) or N")
def lexicon_merge(first, second, output, mark_reinforced):
    """Sum two lexicons"""
    merged = merge_lexicons(read_lexicon_tsv(first), read_lexicon_tsv(second))
    write_lexicon_tsv(merged.lexicon, output, merged.reinforced if mark_reinforced else None)


@lexicon.command("top")
@click.argument("k", type=click.IntRange(min=0))
@click.argument("lexicon_path", metavar="LEX.tsv", type=click.Path(path_type=Path))
def lexicon_top(k, lexicon_path):
    """Print the K most promising entries (longest, then most frequent)"""
    lexicon_data = read_lexicon_tsv(lexicon_path)
    chosen = rank_promising(lexicon_data, k)
    click.echo("".join(f"{entry}\t{lexicon_data.count(entry)}\n" for entry in chosen), nl=False)


@cli.group("eval")
def evaluate():
    """Evaluate lexicons and segmentations"""


@evaluate.command("coverage")
@click.option("--lexicon", "lexicon_paths", multiple=True, required=True, type=click.Path(path_type=Path),
              help="Lexicon TSV; repeat for several documents")
@click.option("--dict", "dict_path", required=True, type=click.Path(path_type=Path), help="CEDICT file")
@click.option("--traditional", is_flag=True, help="Match the traditional headword column")
@click.option("--within", "within_path", type=click.Path(path_type=Path), default=None,
              help="Only count entries occurring in this text")
@click.option("--json", "as_json", is_flag=True, help="Print one JSON object")
@click.pass_context
def eval_coverage(ctx, lexicon_paths, dict_path, traditional, within_path, as_json):
    """Share of lexicon entries that are dictionary headwords"""
    config = _config(ctx, json=as_json)
    dictionary = read_cedict(dict_path, traditional=traditional)
    if dictionary.malformed and not dictionary.headwords:
        raise MalformedDataError("no dictionary entries found", source=str(dict_path))

    within = None
    if within_path is not None:
        within = decode_source(within_path.read_bytes(), source=str(within_path))

    reports = [
        coverage(read_lexicon_tsv(path), dictionary, within=within, label=str(path))
        for path in lexicon_paths
    ]
    average = aggregate_coverage(reports) if len(reports) > 1 else None

    if config.json:
        if average is None:
            payload = reports[0].to_dict()
        else:
            payload = {"rows": [report.to_dict() for report in reports], "average": average.to_dict()}
        click.echo(json.dumps(payload, ensure_ascii=False, sort_keys=True))
        return

    for report in reports + ([average] if average else []):
        click.echo(f"{report.label}\t{report.summary()}\tratio {report.ratio:.4f}")


@evaluate.command("score")
@click.option("--gold", "gold_path", required=True, type=click.Path(path_type=Path))
@click.option("--pred", "pred_path", required=True, type=click.Path(path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Print one JSON object")
@click.pass_context
def eval_score(ctx, gold_path, pred_path, as_json):
    """Word-span precision, recall and F1 of PRED against GOLD"""
    config = _config(ctx, json=as_json)
    score = score_segmentation(read_segmentation_file(gold_path), read_segmentation_file(pred_path))
    if config.json:
        click.echo(json.dumps(score.to_dict(), sort_keys=True))
        return
    click.echo(f"lines\t{score.lines}")
    click.echo(f"gold words\t{score.gold_words}")
    click.echo(f"pred words\t{score.pred_words}")
    click.echo(f"matched\t{score.matched}")
    click.echo(f"precision\t{score.precision:.4f}")
    click.echo(f"recall\t{score.recall:.4f}")
    click.echo(f"f1\t{score.f1:.4f}")


@cli.command("bootstrap")
@click.argument("corpus_dir", metavar="DIR", type=click.Path(path_type=Path))
@click.option("--seed", "seed_path", type=click.Path(path_type=Path), default=None, help="Seed lexicon TSV")
@required_output_option
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="Worker processes")
@max_ngram_option
@min_count_option
@click.pass_context
def bootstrap_command(ctx, corpus_dir, seed_path, output, jobs, max_n, min_count):
    """Fold the lexicons of every document under DIR; print the reinforcement report"""
    config = _config(ctx, max_n=max_n, min_count=min_count)
    seed = read_lexicon_tsv(seed_path) if seed_path is not None else None
    merged = bootstrap_corpus(corpus_dir, seed=seed, config=config, jobs=jobs)
    write_lexicon_tsv(merged.lexicon, output)
    click.echo(format_reinforcement_report(merged), nl=False)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit code: 0 success, 1 usage, 2 I/O, 3 malformed data
    """
    return cli.main(args=argv, prog_name="zici", standalone_mode=False)


if __name__ == "__main__":
    sys.exit(main())

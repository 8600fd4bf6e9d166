"""Command-line interface: the pipeline stages as composable subcommands.

Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error.
Option precedence: command-line flags > --config file (JSON) > defaults.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
from click.core import ParameterSource

from . import pipeline
from .corpus import CORPUS_FORMATS
from .errors import DataError, SessionError, StopmineError
from .lists import matching_set, merge_lists, resolve_lists
from .pipeline import PipelineConfig


def _parse_thresholds(_ctx, _param, value: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")


def _parse_lists(_ctx, _param, value: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in value.split(",") if part.strip())


# config-file key -> click parameter name (tunables only; paths stay flags)
_CONFIG_KEYS = {
    "delta": "delta",
    "thresholds": "thresholds",
    "min_count": "min_count",
    "lists": "stoplists",
    "split_lists": "split_stoplists",
    "k": "k",
    "workers": "workers",
}


def _apply_config_file(ctx: click.Context, values: dict) -> dict:
    """Overlay defaults with config-file values, keeping explicit flags."""
    config_path = values.pop("config", None)
    if not config_path:
        return values
    with open(config_path, "r", encoding="utf-8") as fh:
        file_values = json.load(fh)
    for key, file_value in file_values.items():
        param = _CONFIG_KEYS.get(key)
        if param is None or param not in values:
            continue
        if ctx.get_parameter_source(param) == ParameterSource.COMMANDLINE:
            continue
        if param == "thresholds":
            file_value = tuple(float(v) for v in file_value)
        elif param in ("stoplists", "split_stoplists"):
            file_value = tuple(file_value)
        values[param] = file_value
    return values


_config_option = click.option(
    "--config", type=click.Path(exists=True, dir_okay=False), default=None,
    help="JSON config file; explicit flags take precedence.")


@click.group()
def cli():
    """Discover domain-specific stopwords in a technical corpus."""


@cli.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "format_", type=click.Choice(CORPUS_FORMATS), default="jsonl",
              show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--delta", type=float, default=pipeline.DEFAULT_DELTA, show_default=True,
              help="Discount subtracted from bigram counts.")
@click.option("--thresholds", callback=_parse_thresholds, default="5,2.5", show_default=True,
              help="Comma-separated per-pass phrase score thresholds (decreasing).")
@click.option("--min-count", type=int, default=pipeline.DEFAULT_MIN_COUNT, show_default=True)
@click.option("--lists", "stoplists", callback=_parse_lists, default="nltk,uspto",
              show_default=True, help="Stoplists removed from the vocabulary at the stats stage.")
@click.option("--split-lists", "split_stoplists", callback=_parse_lists, default="nltk,uspto",
              show_default=True, help="Stoplists split out of phrase boundaries.")
@click.option("--tagger", type=click.Choice(["rule"]), default="rule", show_default=True,
              help="POS tagger backing the lemmatizer.")
@click.option("--lemma-exceptions", type=click.Path(exists=True, dir_okay=False), default=None,
              help="TSV (surface, pos, lemma) replacing the built-in exception table.")
@click.option("--export-counts", is_flag=True, default=False,
              help="Also write unigram_counts.tsv (term, count) for the final corpus.")
@click.option("--workers", type=int, default=1, show_default=True)
@_config_option
@click.pass_context
def preprocess(ctx, **values):
    """Tokenize, detect phrases, split stopwords, lemmatize; write artifacts."""
    values = _apply_config_file(ctx, values)
    config = PipelineConfig(
        input=values["input_"], format=values["format_"], out_dir=values["out_dir"],
        delta=values["delta"], thresholds=values["thresholds"],
        min_count=values["min_count"], stoplists=values["stoplists"],
        split_stoplists=values["split_stoplists"], workers=values["workers"],
        tagger=values["tagger"], lemma_exceptions=values["lemma_exceptions"],
        export_counts=values["export_counts"],
    )
    manifest = pipeline.run_preprocess(config)
    for stage in manifest["stages"]:
        click.echo(
            f"{stage['name']}: vocabulary={stage['vocabulary']} tokens={stage['tokens']}"
            f" phrases={stage['phrases']}"
        )


@cli.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Preprocessed corpus artifact (.tsv doc-tagged, or plain lines).")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--min-count", type=int, default=pipeline.DEFAULT_MIN_COUNT, show_default=True)
@click.option("--lists", "stoplists", callback=_parse_lists, default="nltk,uspto",
              show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@_config_option
@click.pass_context
def stats(ctx, **values):
    """Build the term-document index and export metrics + reports."""
    values = _apply_config_file(ctx, values)
    config = PipelineConfig(
        input=values["input_"], out_dir=values["out_dir"],
        min_count=values["min_count"], stoplists=values["stoplists"],
        workers=values["workers"],
    )
    table = pipeline.run_stats(config, values["input_"])
    click.echo(f"vocabulary: {len(table)} terms -> {Path(values['out_dir']) / 'stats.tsv'}")


@cli.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True, dir_okay=False),
              help="stats.tsv from the stats stage.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--k", type=int, default=pipeline.DEFAULT_K, show_default=True,
              help="Per-metric top-K cutoff.")
@_config_option
@click.pass_context
def rank(ctx, **values):
    """Form the union of the four top-K metric rankings."""
    values = _apply_config_file(ctx, values)
    config = PipelineConfig(input=values["input_"], out_dir=values["out_dir"], k=values["k"])
    candidates = pipeline.run_rank(config, values["input_"])
    click.echo(f"union size: {len(candidates)} (k={config.k})")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8375, show_default=True)
@click.option("--data-dir", default="review_sessions", show_default=True,
              type=click.Path(file_okay=False), help="Session event-log directory.")
@click.option("--ui", "ui_dir", default=None, type=click.Path(file_okay=False),
              help="Directory of built web UI assets (default: ./frontend/dist if present).")
def serve(host, port, data_dir, ui_dir):
    """Run the review service (HTTP API + web UI)."""
    import uvicorn

    from .review import SessionStore
    from .server import create_app

    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    app = create_app(SessionStore(data_dir), ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


@cli.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Token corpus (plain lines or doc-tagged .tsv).")
@click.option("--lists", "list_names", callback=_parse_lists, required=True,
              help="Embedded list names (nltk, uspto, study, prior) and/or file paths.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def apply(input_, list_names, out_path):
    """Remove stoplisted tokens from a corpus artifact."""
    stopset = matching_set(resolve_lists(list_names))
    removed = 0
    kept = 0
    in_path = Path(input_)
    with open(in_path, "r", encoding="utf-8") as src, \
         open(out_path, "w", encoding="utf-8", newline="\n") as dst:
        for line in src:
            line = line.rstrip("\n")
            prefix = ""
            body = line
            if in_path.suffix == ".tsv" and "\t" in line:
                doc_id, _, body = line.partition("\t")
                prefix = doc_id + "\t"
            tokens = body.split()
            surviving = [t for t in tokens if t not in stopset]
            removed += len(tokens) - len(surviving)
            kept += len(surviving)
            dst.write(prefix + " ".join(surviving) + "\n")
    click.echo(f"removed {removed} tokens, kept {kept}")


@cli.command("merge-lists")
@click.option("--lists", "list_names", callback=_parse_lists, required=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--name", default="merged", show_default=True)
def merge_lists_cmd(list_names, out_path, name):
    """Merge stopword lists (embedded names and/or files) into one file."""
    merged = merge_lists(resolve_lists(list_names), name=name)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        merged.write(fh)
    click.echo(f"{len(merged)} terms -> {out_path}")


@cli.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True, dir_okay=False),
              help="stats.tsv from the stats stage.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--bins", type=int, default=50, show_default=True)
@click.option("--cap-count", type=int, default=None,
              help="Drop terms with raw count above this cap before binning.")
@click.option("--cap-tfidf", type=float, default=None,
              help="Drop TFIDF values above this cap in the TFIDF histogram.")
def report(input_, out_dir, bins, cap_count, cap_tfidf):
    """Regenerate metric histograms and the rank-frequency table."""
    from .stats import METRICS, TermStatsTable, distribution_report, histogram_to_tsv

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(input_, "r", encoding="utf-8") as fh:
        table = TermStatsTable.from_tsv(fh)
    for metric in METRICS:
        hist = distribution_report(
            table, metric, bins,
            cap_count=cap_count if metric in ("tf", "tfidf") else None,
            cap_value=cap_tfidf if metric == "tfidf" else None,
        )
        with open(out / f"hist_{metric}.tsv", "w", encoding="utf-8", newline="\n") as fh:
            histogram_to_tsv(hist, fh)
    rows = sorted(table, key=lambda r: (-r.count, r.term))
    with open(out / "rank_frequency.tsv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("rank\tterm\tcount\n")
        for i, row in enumerate(rows, start=1):
            fh.write(f"{i}\t{row.term}\t{row.count}\n")
    click.echo(f"wrote {len(METRICS)} histograms + rank_frequency.tsv to {out}")


def main(argv=None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except (DataError, SessionError, StopmineError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"i/o error: {exc}", err=True)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

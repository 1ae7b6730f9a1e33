"""Command-line entry point tying the pipeline together.

Subcommands: ``parse`` validates and echoes definitions, ``translate``
emits the core-language axioms, ``expand`` eliminates definitions subject
to a symbol budget, ``stats`` prints the corpus metrics report, ``render``
produces LaTeX or natural-language output, and ``serve`` starts the HTTP
API.  Exit status is 0 on success, 1 if any definition failed to process,
2 on usage errors.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path
from typing import Optional

import click

from . import dzfc
from .errors import BudgetExceeded, PstError
from .latex import render_latex, render_pst
from .lexicon import Lexicon, parse_lexicon
from .metrics import corpus_report, measured_formula
from .nl import render_nl
from .store import DefStore, expand, load_corpus

DEFAULT_PORT = 7341
# default budget for materialized CLI output; the library default is the
# saturation ceiling, far beyond what is sensible to print
DEFAULT_CLI_BUDGET = 1_000_000


def _load(paths: tuple[str, ...]) -> tuple[DefStore, list[str]]:
    sources = [Path(p).read_text(encoding="utf-8") for p in paths]
    store, issues = load_corpus(sources)
    return store, [str(issue) for issue in issues]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _finish(issues: list[str]) -> None:
    for issue in issues:
        click.echo(f"error: {issue}", err=True)
    sys.exit(1 if issues else 0)


def _lexicon_from(path: Optional[str]) -> Optional[Lexicon]:
    if path is None:
        path = os.environ.get("PST_LEXICON_PATH")
    if path is None:
        return None
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


@click.group()
def main() -> None:
    """Practical set theory toolchain."""


_inputs = click.argument("inputs", nargs=-1, required=True,
                         type=click.Path(exists=True, dir_okay=False))
_out_opt = click.option("--out", type=click.Path(dir_okay=False),
                        help="write output to a file instead of stdout")


@main.command()
@_inputs
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@_out_opt
def parse(inputs, fmt, out):
    """Parse definitions and echo their normalized form."""
    store, issues = _load(inputs)
    if fmt == "json":
        payload = [{"label": sd.label, "symbol": sd.symbol,
                    "kind": sd.axiom.kind, "params": list(sd.axiom.params),
                    "source": render_pst(sd.definition, store.table)}
                   for sd in store.user_definitions()]
        _emit(json.dumps(payload, indent=1) + "\n", out)
    else:
        lines = [render_pst(sd.definition, store.table) + "\n"
                 for sd in store.user_definitions()]
        _emit("".join(lines), out)
    _finish(issues)


@main.command()
@_inputs
@click.option("--format", "fmt", type=click.Choice(["latex", "json"]),
              default="latex")
@_out_opt
def translate(inputs, fmt, out):
    """Translate definitions to the core language of partial terms."""
    store, issues = _load(inputs)
    if fmt == "json":
        payload = [{"label": sd.label, "symbol": sd.symbol,
                    "axiom": dzfc.to_json(sd.axiom.body),
                    "params": list(sd.axiom.params),
                    "kind": sd.axiom.kind}
                   for sd in store.user_definitions()]
        _emit(json.dumps(payload, indent=1) + "\n", out)
    else:
        lines = [render_latex(sd.axiom) + "\n"
                 for sd in store.user_definitions()]
        _emit("".join(lines), out)
    _finish(issues)


@main.command(name="expand")
@_inputs
@click.option("--symbol", required=True, help="definition to expand")
@click.option("--mode", type=click.Choice(["none", "full", "partial"]),
              default="full")
@click.option("--budget", type=int, default=DEFAULT_CLI_BUDGET,
              show_default=True, help="symbol budget before aborting")
@click.option("--format", "fmt", type=click.Choice(["latex", "json"]),
              default="latex")
@_out_opt
def expand_command(inputs, symbol, mode, budget, fmt, out):
    """Expand one definition's body down to primitive vocabulary."""
    store, issues = _load(inputs)
    try:
        sd = store.get(symbol)
        result = expand(measured_formula(sd), store, mode=mode, budget=budget)
    except BudgetExceeded as exc:
        click.echo(f"expansion aborted: {exc}", err=True)
        sys.exit(1)
    except PstError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if fmt == "json":
        _emit(json.dumps(dzfc.to_json(result), indent=1) + "\n", out)
    else:
        _emit(render_latex(result) + "\n", out)
    _finish(issues)


@main.command()
@_inputs
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@_out_opt
def stats(inputs, fmt, out):
    """Corpus metrics: dag sizes, quantifier depths, expansion lengths."""
    store, issues = _load(inputs)
    report = corpus_report(store)
    if fmt == "json":
        _emit(json.dumps(report.to_json(), indent=1, sort_keys=True) + "\n",
              out)
    else:
        _emit(report.to_text(), out)
    _finish(issues)


@main.command()
@_inputs
@click.option("--format", "fmt", type=click.Choice(["latex", "nl"]),
              default="latex")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True),
              help="lexicon file (default: $PST_LEXICON_PATH)")
@_out_opt
def render(inputs, fmt, lexicon_path, out):
    """Render definitions as LaTeX or natural language."""
    store, issues = _load(inputs)
    lines = []
    if fmt == "nl":
        lexicon = _lexicon_from(lexicon_path) or Lexicon()
        for sd in store.user_definitions():
            try:
                lines.append(render_nl(sd.definition, lexicon, store.table)
                             + "\n")
            except PstError as exc:
                issues.append(f"{sd.label}: {exc}")
    else:
        lines = [render_latex(sd.definition, store.table) + "\n"
                 for sd in store.user_definitions()]
    _emit("".join(lines), out)
    _finish(issues)


@main.command()
@_inputs
@click.option("--port", type=int, default=DEFAULT_PORT, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True))
def serve(inputs, port, host, lexicon_path):
    """Serve the definition store over HTTP for the graph explorer."""
    import uvicorn

    from .server import build_app

    store, issues = _load(inputs)
    for issue in issues:
        click.echo(f"error: {issue}", err=True)
    store.freeze()
    app = build_app(store, _lexicon_from(lexicon_path))
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()

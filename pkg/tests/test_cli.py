import json

import pytest
from click.testing import CliRunner

from pst.cli import main
from tests.conftest import FIXTURES

FOUNDATIONS = str(FIXTURES / "foundations.pst")
TOPOLOGY = str(FIXTURES / "topology.pst")
LEXICON = str(FIXTURES / "textbook.lex")


@pytest.fixture()
def runner():
    return CliRunner()


def test_parse_echoes_definitions(runner):
    result = runner.invoke(main, ["parse", FOUNDATIONS])
    assert result.exit_code == 0, result.output
    assert "DEFINITION FS.2.58: 1-ary relation FCN." in result.output


def test_parse_empty_file_succeeds(runner, tmp_path):
    empty = tmp_path / "empty.pst"
    empty.write_text("")
    result = runner.invoke(main, ["parse", str(empty)])
    assert result.exit_code == 0
    assert result.output == ""


def test_parse_reports_errors_with_labels(runner, tmp_path):
    bad = tmp_path / "bad.pst"
    bad.write_text("DEFINITION B.1: 1-ary relation OK1. OK1[x] \\iff x = x.\n"
                   "\n"
                   "DEFINITION B.2: 1-ary relation NO. NO[x] \\iff = x.\n")
    result = runner.invoke(main, ["parse", str(bad)])
    assert result.exit_code == 1
    assert "B.2" in result.output


def test_translate_latex_contains_axioms(runner):
    result = runner.invoke(main, ["translate", FOUNDATIONS, TOPOLOGY,
                                  "--format", "latex"])
    assert result.exit_code == 0, result.output
    assert "\\mathop{\\mathtt{FCN}}[f] \\leftrightarrow" in result.output
    assert "\\mathop{\\mathtt{Oneptcompactification}}(X,T) \\simeq" \
        in result.output


def test_translate_json_is_canonical_tree(runner):
    result = runner.invoke(main, ["translate", FOUNDATIONS,
                                  "--format", "json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    by_symbol = {entry["symbol"]: entry for entry in payload}
    assert by_symbol["FCN"]["axiom"]["node"] == "equal"


def test_outputs_are_deterministic(runner):
    first = runner.invoke(main, ["stats", FOUNDATIONS, "--format", "json"])
    second = runner.invoke(main, ["stats", FOUNDATIONS, "--format", "json"])
    assert first.output == second.output
    a = runner.invoke(main, ["translate", FOUNDATIONS])
    b = runner.invoke(main, ["translate", FOUNDATIONS])
    assert a.output == b.output


def test_stats_text_table(runner):
    result = runner.invoke(main, ["stats", FOUNDATIONS, TOPOLOGY])
    assert result.exit_code == 0
    assert "Quantifier depths" in result.output
    assert "pst_depth" in result.output


def test_expand_small_symbol(runner):
    result = runner.invoke(main, ["expand", FOUNDATIONS, "--symbol",
                                  "DISJOINT", "--format", "latex"])
    assert result.exit_code == 0, result.output
    assert "\\iota" in result.output


def test_expand_budget_diagnostic(runner):
    result = runner.invoke(main, ["expand", FOUNDATIONS, TOPOLOGY,
                                  "--symbol", "Stdrealtopbasis",
                                  "--budget", "2000"])
    assert result.exit_code == 1
    assert "exceeded budget" in result.output


def test_render_nl_with_lexicon(runner):
    result = runner.invoke(main, ["render", FOUNDATIONS, TOPOLOGY,
                                  "--format", "nl", "--lexicon", LEXICON])
    assert result.exit_code == 0, result.output
    assert "the topology on $X$ generated by $\\mathscr{B}$" in result.output


def test_render_nl_lexicon_from_environment(runner):
    result = runner.invoke(main, ["render", FOUNDATIONS, "--format", "nl"],
                           env={"PST_LEXICON_PATH": LEXICON})
    assert result.exit_code == 0, result.output


def test_render_latex_definitions(runner):
    result = runner.invoke(main, ["render", FOUNDATIONS])
    assert result.exit_code == 0
    assert "$\\mathop{\\mathtt{FCN}}$" in result.output


def test_usage_error_exit_code(runner):
    result = runner.invoke(main, ["translate", "--format", "nonsense",
                                  FOUNDATIONS])
    assert result.exit_code == 2


def test_missing_file_is_usage_error(runner):
    result = runner.invoke(main, ["parse", "no-such-file.pst"])
    assert result.exit_code == 2


def test_out_flag_writes_file(runner, tmp_path):
    out = tmp_path / "axioms.tex"
    result = runner.invoke(main, ["translate", FOUNDATIONS,
                                  "--out", str(out)])
    assert result.exit_code == 0
    assert "FCN" in out.read_text()

"""
Tests for the ssiwasawa command line interface.
"""

import csv
import io
import json
import os

import pytest
from click.testing import CliRunner

from ssiwasawa.cli.main import EXIT_INPUT, cli


@pytest.fixture
def runner(monkeypatch, tmp_path):
    """A CLI runner in an empty directory with no SSIWASAWA_ variables set."""
    for key in list(os.environ):
        if key.startswith("SSIWASAWA_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
    return CliRunner()


def csv_rows(text):
    """Parse CSV output, dropping the ``# `` comment lines."""
    body = [line for line in text.splitlines() if not line.startswith("# ")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_tables_q(runner):
    result = runner.invoke(cli, ["tables", "q", "--p", "3", "--n", "5"])
    assert result.exit_code == 0
    assert result.stdout.startswith("# p=3\r\n")
    rows = csv_rows(result.stdout)
    assert [int(row["q_n"]) for row in rows] == [0, 0, 2, 6, 20, 60]
    assert int(rows[4]["sum_q"]) == 28


def test_tables_sha_carries_the_hypotheses(runner):
    result = runner.invoke(cli, ["tables", "sha", "--n", "3", "--d", "2", "--assume", "S", "--assume", "W"])
    assert result.exit_code == 0
    assert "# hypotheses: (S)=yes, (G)=no, (W)=yes, (B)=no" in result.stdout
    rows = csv_rows(result.stdout)
    assert rows[-1]["cumulative"] == "16"
    assert all(row["oracles_agree"] == "yes" for row in rows)


def test_invariants_of_a_bare_series(runner):
    result = runner.invoke(cli, ["invariants"], input="[0, 3, 0, 1]")
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"mu": 0, "lambda": 3}


def test_invariants_of_l_data(runner):
    payload = {"d": 2, "entries": [[[1], [0]], [[0], [3, 1]]], "tY": [1]}
    result = runner.invoke(cli, ["invariants"], input=json.dumps(payload))
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"mu": 0, "lambda": 1, "normalized": False}


@pytest.mark.parametrize("document", ["not json", '"a string"', "[]", '{"d": 1}'])
def test_bad_input_exits_with_input_code(runner, document):
    result = runner.invoke(cli, ["invariants"], input=document)
    assert result.exit_code == EXIT_INPUT
    assert result.stdout == ""


def test_growth_matches_the_sha_table(runner):
    """Test that with only d set the growth totals equal the Sha table."""
    growth = runner.invoke(cli, ["growth", "--variant", "as-stated"], input='{"d": 1, "n_max": 4}')
    assert growth.exit_code == 0
    assert "variant=as-stated" in growth.stdout
    table = runner.invoke(cli, ["tables", "sha", "--n", "4"])
    expected = {row["n"]: row["cumulative"] for row in csv_rows(table.stdout)}
    for row in csv_rows(growth.stdout):
        assert row["cumulative_as_stated"] == expected[row["n"]]
        assert row["increment_selected"] == row["increment_as_stated"]


def test_growth_rejects_bad_params(runner):
    assert runner.invoke(cli, ["growth"], input="[1, 2]").exit_code == EXIT_INPUT
    assert runner.invoke(cli, ["growth"], input='{"n_min": 3, "n_max": 1}').exit_code == EXIT_INPUT


def test_eval_zeta_series(runner):
    result = runner.invoke(cli, ["eval-zeta", "--n", "1"], input="[0, 1]")
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["n"] == 1
    assert payload["ordp"] == "1/2"
    assert len(payload["coords"]) == 2


def test_eval_zeta_matrix(runner):
    payload = {"d": 2, "entries": [[[3], [0]], [[0], [1]]], "tY": [1]}
    result = runner.invoke(cli, ["eval-zeta", "--n", "2"], input=json.dumps(payload))
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["ordp_size"] == 6
    assert report["agrees"] is True


def test_eval_zeta_level_must_be_positive(runner):
    assert runner.invoke(cli, ["eval-zeta", "--n", "0"], input="[1]").exit_code == EXIT_INPUT


def test_checks_lists_groups(runner):
    result = runner.invoke(cli, ["checks"])
    assert result.exit_code == 0
    for name in ("good_lifts", "honda", "sha_sizes", "stable_quotients"):
        assert name in result.output


def test_invalid_prime_is_an_input_error(runner):
    assert runner.invoke(cli, ["tables", "q", "--p", "4"]).exit_code == EXIT_INPUT


def test_verify(runner):
    result = runner.invoke(cli, ["verify", "--p", "3", "--precision", "6", "--degree", "24"])
    assert result.exit_code == 0
    assert result.stdout.startswith("ssiwasawa verify: p=3 N=6 D=24")
    assert "summary:" in result.stdout
    assert "FAIL" not in result.stdout

from __future__ import annotations

import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from orbivertex.cli import run
from orbivertex.cyclo import I, coef_from_json
from orbivertex.series import MultiSeries, TruncationSpec


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def series_of(payload):
    return MultiSeries.from_json(payload["series"], TruncationSpec())


def test_phi_example():
    code, text = call("phi", "--nu", "2", "--mu", "2", "--order", "4")
    assert code == 0
    s = series_of(json.loads(text))
    assert [s.coeff(hbar=k) for k in range(5)] == [Fraction(1, 2), 0, Fraction(1, 4), 0, Fraction(1, 48)]


def test_vertex_example():
    code, text = call("vertex", "--a", "1", "--mu", "1", "--t-order", "3")
    assert code == 0
    s = series_of(json.loads(text))
    spec = TruncationSpec()
    expected = sum((MultiSeries.monomial(spec, {"t": Fraction(2 * k + 1, 2)}, I) for k in range(4)), MultiSeries.zero(spec))
    assert sorted(s.items(), key=str) == sorted(expected.items(), key=str)


def test_partition_and_chartable():
    code, text = call("partition", "--mu", "3,1")
    data = json.loads(text)
    assert code == 0 and data["conjugate"] == "(2,1,1)" and data["z"] == 3
    code, text = call("partition", "--order", "4")
    assert len(json.loads(text)["partitions"]) == 5
    code, text = call("partition", "--mu", "")
    assert json.loads(text)["size"] == 0
    code, text = call("chartable", "--order", "3")
    assert code == 0 and len(json.loads(text)["values"]) == 3


def test_hurwitz_check():
    code, text = call("hurwitz", "--nu", "2", "--mu", "1+1", "--order", "3", "--check")
    rows = json.loads(text)
    assert code == 0
    assert rows[0]["r"] == 1 and rows[0]["H"] == "1/2" and rows[0]["brute_force"] == "1/2"


@pytest.mark.parametrize(
    "argv",
    [
        ("schur", "--lam", "2+1", "--a", "2", "--order", "4", "--check"),
        ("vertex", "--a", "2", "--mu", "2", "--t-order", "3", "--check"),
        ("vertex", "--a", "1", "--mu", "2", "--hbar-order", "3", "--check"),
        ("vertex", "--a", "1", "--mu", "1+1", "--hbar-order", "3", "--tau", "1", "--check"),
        ("ikv", "--lam", "2+1", "--order", "5", "--check"),
        ("football", "--a", "2", "--b", "1", "--q-order", "2", "--order", "3", "--check"),
        ("conifold", "--q-order", "2", "--order", "4", "--log", "--check"),
        ("phi", "--nu", "2+1", "--mu", "3", "--order", "4", "--tau", "2"),
    ],
)
def test_commands_succeed(argv):
    code, text = call(*argv)
    assert code == 0
    json.loads(text)


def test_text_format():
    code, text = call("vertex", "--a", "1", "--mu", "1", "--t-order", "1", "--format", "text")
    assert code == 0
    assert text.splitlines()[-1] == "i*t^(1/2) + i*t^(3/2)"


@pytest.mark.parametrize(
    "argv",
    [
        ("phi", "--nu", "2", "--mu", "1"),
        ("vertex", "--a", "1", "--mu", "1", "--tau", "1"),
        ("ikv", "--lam", "1", "--mu", "1", "--check"),
        ("partition",),
    ],
)
def test_domain_errors_exit_2(argv, capsys):
    code, _ = call(*argv)
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_resource_limit_exit_2(capsys):
    code, _ = call("hurwitz", "--nu", "7", "--mu", "7", "--order", "2", "--check")
    assert code == 2
    assert "budget" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ("vertex", "--a", "0", "--mu", "1"),
        ("vertex", "--mu", "1", "--bogus"),
        ("phi", "--nu", "2+x", "--mu", "2"),
        ("football", "--q-order", "-1"),
        ("nosuchcommand",),
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        run(list(argv), io.StringIO())
    assert exc.value.code == 2


def test_determinism_across_processes():
    argv = [sys.executable, "-m", "orbivertex", "football", "--a", "2", "--b", "2", "--q-order", "2", "--order", "3", "--threads", "3"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second


def test_coefficient_json_roundtrip():
    code, text = call("vertex", "--a", "2", "--mu", "1", "--t-order", "0")
    terms = json.loads(text)["series"]["terms"]
    assert all(coef_from_json(t["coef"]) == I for t in terms)

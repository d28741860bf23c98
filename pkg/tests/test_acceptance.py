"""Acceptance criteria 1-10, one test each.

Every test prints a single PASS/FAIL line (visible in ``pytest -v`` output)
and fails when the identity breaks or the runtime budget is exceeded.
"""

from __future__ import annotations

import pytest

from orbivertex import checks

pytestmark = pytest.mark.acceptance


def _run(check, capsys, **kw):
    res = check(**kw)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.failure
    assert res.seconds <= res.budget, f"over budget: {res.seconds:.2f}s > {res.budget}s"
    assert res.cases > 0


def test_criterion_01_character_integrity(capsys):
    _run(checks.check_characters, capsys)


def test_criterion_02_phi_structure(capsys):
    _run(checks.check_phi, capsys)


def test_criterion_03_burnside_vs_permutation_count(capsys):
    _run(checks.check_burnside, capsys)


def test_criterion_04_r_series_framing_identity(capsys):
    _run(checks.check_r_equation, capsys)


def test_criterion_05_vertex_vs_r_series(capsys):
    _run(checks.check_vertex_coherence, capsys)


def test_criterion_06_schur_triangle_and_dual_cauchy(capsys):
    _run(checks.check_schur, capsys)


def test_criterion_07_ikv_one_leg_forms(capsys):
    _run(checks.check_ikv, capsys)


def test_criterion_08_resolved_conifold(capsys):
    _run(checks.check_conifold, capsys)


def test_criterion_09_local_football(capsys):
    _run(checks.check_football, capsys)


def test_criterion_10_unrefined_limit(capsys):
    _run(checks.check_unrefined, capsys)

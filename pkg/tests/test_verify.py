from fractions import Fraction

import pytest

from lorhom3 import verify
from lorhom3 import catalog as cat


def test_all_checks_pass_quick():
    results = verify.run_checks(quick=True)
    failed = [(r.check_id, r.detail) for r in results if not r.ok]
    assert not failed, failed
    assert len(results) == len(verify.CHECKS)


def _failing_ids(monkeypatch, table, key, value):
    monkeypatch.setitem(table, key, value)
    results = verify.run_checks(quick=True)
    return {r.check_id for r in results if not r.ok}, results


def test_mutated_sol_metric_fails_with_anchor(monkeypatch):
    broken = ("sol", ((0, 0, 1), (0, 2, 0), (1, 0, 0)))  # g(Z,Z) = 2
    failed, results = _failing_ids(monkeypatch, cat.METRIC_TABLES, "lorentz_sol", broken)
    assert "lorentz-sol-connection-table" in failed
    anchors = {r.check_id: r.anchor for r in results}
    assert "sol metric" in anchors["lorentz-sol-connection-table"]


def test_mutated_bracket_fails_curvature_anchor(monkeypatch):
    broken = {"names": ("X", "Z", "T"),
              "brackets": {(0, 2): (-2, 0, 0), (1, 2): (0, 1, 0)}}  # [T,X] = 2X
    monkeypatch.setitem(cat.ALGEBRA_TABLES, "sol", broken)
    results = verify.run_checks(quick=True)
    failed = {r.check_id for r in results if not r.ok}
    assert "lorentz-sol-connection-table" in failed or \
        "lorentz-sol-curvature-endomorphism" in failed


def test_mutated_heisenberg_metric_fails(monkeypatch):
    broken = ("heis", ((1, 0, 0), (0, 0, 1), (0, 1, 1)))  # g(T,T) = 1 extra
    failed, _ = _failing_ids(monkeypatch, cat.METRIC_TABLES, "lorentz_heisenberg", broken)
    assert failed  # at least the isotropy or round-trip checks notice


def test_mutated_ads_metric_fails_constant_curvature(monkeypatch):
    broken = ("sl2", ((2, 0, 0), (0, 0, -4), (0, -4, 1)))
    failed, _ = _failing_ids(monkeypatch, cat.METRIC_TABLES,
                             "anti_de_sitter_killing", broken)
    assert "constant-curvature-values" in failed or "isotropy-catalog" in failed


def test_flipped_curvature_convention_is_caught(monkeypatch):
    """Flipping the sign of the computed curvature must trip the displayed
    matrix check: that check pins the convention."""
    from lorhom3 import metric as mt
    original = mt.curvature

    def flipped(algebra, metric, conn=None):
        data = original(algebra, metric, conn)
        neg = [[[[-x for x in data.riemann[i][j][k]] for k in range(3)]
                for j in range(3)] for i in range(3)]
        flipped_riemann = [[[neg[i][j][k] for k in range(3)] for j in range(3)]
                           for i in range(3)]
        data.riemann = flipped_riemann
        return data

    monkeypatch.setattr(verify, "curvature", flipped)
    results = verify.run_checks(quick=True)
    failed = {r.check_id for r in results if not r.ok}
    assert "lorentz-sol-curvature-endomorphism" in failed


def test_failed_checks_name_their_anchor(monkeypatch):
    broken = ("sol", ((0, 0, 1), (0, 2, 0), (1, 0, 0)))
    monkeypatch.setitem(cat.METRIC_TABLES, "lorentz_sol", broken)
    results = verify.run_checks(quick=True)
    for r in results:
        if not r.ok:
            assert r.anchor  # every failure carries its proposition anchor

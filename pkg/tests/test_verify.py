"""Verification drivers at small q (the full matrix runs in the acceptance
module; here the fast paths and the plumbing)."""

from __future__ import annotations

import numpy as np
import pytest

from srd3.gf import make_field
from srd3.report import DISCREPANCY, PASS, SAMPLED, render
from srd3.verify import (VerifyError, line_sweep_completeness,
                         min_rank2_coverage, plane_sweep, run_checks,
                         solid_groups, verify_censuses, verify_class_counts,
                         verify_completeness_dichotomy, verify_net_corollaries,
                         verify_r2n_equals_h1, verify_rank3_od4, verify_schmidt,
                         verify_solids, verify_tables)


def _ok(reports):
    for r in reports:
        assert r.ok, (r.check_id, r.computed, r.details)
    return reports


def test_censuses_q3():
    _ok(verify_censuses(make_field(3, 1)))


def test_tables_q3():
    r, = _ok(verify_tables(make_field(3, 1)))
    assert r.details["representatives"] == 32


def test_solids_q2_q3():
    r2, = _ok(verify_solids(make_field(2, 1)))
    assert r2.computed["n_groups"] == 3
    r3, = _ok(verify_solids(make_field(3, 1)))
    assert sorted(sig[3] for sig in r3.computed["signatures"]) == [21, 24, 27]
    assert all(v is True for v in r3.computed["orbit_match"].values())


def test_solid_groups_match_orbit_sizes_q3():
    F = make_field(3, 1)
    groups, total = solid_groups(F)
    assert total == 11011
    from srd3.invariants import pgl3_order
    for sig, codes in groups.items():
        assert pgl3_order(3) % len(codes) == 0


def test_r2n_h1_full_q4_and_sampled():
    F = make_field(2, 2)
    r, = _ok(verify_r2n_equals_h1(F))
    assert r.status == PASS
    assert r.computed == {"mismatches": 0, "planes": 376805}
    s, = _ok(verify_r2n_equals_h1(F, sample=5000))
    assert s.status == SAMPLED


def test_r2n_h1_rejects_odd():
    with pytest.raises(VerifyError):
        verify_r2n_equals_h1(make_field(3, 1))


def test_solids_sampled_q7():
    r, = _ok(verify_solids(make_field(7, 1)))
    assert r.status == SAMPLED
    assert r.computed["unexpected_signatures"] == []
    assert r.details["sampled_solids"] == 100000


def test_dichotomy_q3():
    r, = _ok(verify_completeness_dichotomy(make_field(3, 1)))
    assert r.computed == {"complete_lines": 0, "complete_planes": 0}
    assert r.details["min_rank2_lines"] > 0


def test_line_sweep_counts_q3():
    F = make_field(3, 1)
    n_lines, n_complete = line_sweep_completeness(F)
    assert n_complete == 0
    # minimum-rank-2 lines: all lines minus those with a rank-1 point minus
    # the constant-rank-3 ones; sanity bound only
    assert 0 < n_lines < 11011


def test_class_counts_q3():
    d2, d3 = _ok(verify_class_counts(make_field(3, 1)))
    assert d2.computed["classes"] == 3
    assert d3.computed["classes"] == 2
    assert d3.computed["extension_rank1_counts"] == [3, 0]


def test_class_counts_q2_flagged():
    d2, d3 = _ok(verify_class_counts(make_field(2, 1)))
    assert d2.computed["classes"] == 6
    assert d3.computed["classes"] == 1
    assert d2.flags and "q=2" in d2.flags[0]


def test_nets_q3():
    r, = _ok(verify_net_corollaries(make_field(3, 1)))
    assert r.computed["violations"] == 0
    assert r.computed["spot"]["o8_2"] == (0, 14, 2, 24)


def test_schmidt_all_small_q():
    for q in ((2, 1), (3, 1), (2, 2)):
        r, = _ok(verify_schmidt(make_field(*q)))
        assert r.status == PASS


def test_rank3_discrepancy_status():
    r, = verify_rank3_od4(make_field(3, 1))
    assert r.status == DISCREPANCY
    assert r.ok
    assert r.computed["Sigma_GF"] == (0, 0, 0, 13)
    assert any("q+1" in f or "stated" in f for f in r.flags)


def test_run_checks_unknown_id():
    with pytest.raises(VerifyError):
        run_checks(make_field(3, 1), ids=["T99"])
    with pytest.raises(VerifyError):
        run_checks(make_field(3, 1), ids=["T3.3"])  # even-only check


def test_jobs_determinism_q3():
    import srd3.verify as V
    F = make_field(3, 1)
    V._sweep_cache.clear()
    g1, _ = solid_groups(F, jobs=1)
    V._sweep_cache.clear()
    g2, _ = solid_groups(F, jobs=2)
    assert g1.keys() == g2.keys()
    for sig in g1:
        assert np.array_equal(g1[sig], g2[sig])
    V._sweep_cache.clear()
    r1 = verify_r2n_equals_h1(make_field(2, 2), jobs=1)[0]
    r2 = verify_r2n_equals_h1(make_field(2, 2), jobs=2)[0]
    assert r1.computed == r2.computed


def test_coverage_cache_consistency():
    F = make_field(3, 1)
    cov = min_rank2_coverage(F)
    sweep = plane_sweep(F)
    # at q odd every minimum-rank-2 plane lies inside a minimum-rank-2 solid
    assert np.isin(sweep.min_rank2, cov, assume_unique=True).all()
    # and the coverage contains nothing of minimum rank 3
    assert not np.isin(sweep.min_rank3, cov, assume_unique=True).any()


def test_render_formats():
    reports = verify_censuses(make_field(3, 1))
    assert "censuses" in render(reports, "json")
    assert "| censuses |" in render(reports, "md")
    assert render(reports, "csv").startswith("id,field,expected")
    with pytest.raises(ValueError):
        render(reports, "xml")

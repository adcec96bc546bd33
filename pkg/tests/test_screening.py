from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supercohom.algebra import as_weight, build_algebra, d_range_of_U, format_weight, lambda_of_D
from supercohom.screening import (
    FamilyRecord,
    ScreenError,
    d_screen,
    dual_closure_filter,
    dual_weight_module,
    dual_weight_table,
    family_instantiation,
    family_membership,
    kac_common_constituent_screen,
    out_of_family_sample,
    refined_screen,
    run_screen,
    scan_box,
    tau_orbits,
)
from supercohom.verify import KAC_LEVEL_WEIGHTS, RULED_OUT_WEIGHTS

STAGES = ["families", "d_screen_weight", "kac_screen", "dual_closure", "refined", "final"]


@pytest.fixture(scope="module")
def report32():
    return run_screen(build_algebra("sl", 3, 2), 12)


def test_membership_examples(sl32, sl31):
    assert family_membership(sl32, (3, 1, 1, -1, -4)) == FamilyRecord("sl:3:2", 1, 3, 1)
    rec = family_membership(sl32, (0, 0, 0, 0, 0))
    assert (rec.family, rec.p, rec.q) == (2, 0, 0)
    assert family_membership(sl31, (1, 0, 0, -1)) is None


def test_non_integral_rejected(sl32):
    with pytest.raises(ScreenError):
        family_membership(sl32, (Fraction(1, 2), 0, 0, 0, Fraction(-1, 2)))
    with pytest.raises(ScreenError):
        family_instantiation(sl32, 0, 1, 3)


params32 = st.one_of(
    st.tuples(st.just(0), st.integers(2, 12), st.integers(2, 12)).filter(lambda t: t[1] >= t[2]),
    st.tuples(st.just(1), st.integers(1, 12), st.integers(-12, 1)),
    st.tuples(st.just(2), st.integers(-12, 0), st.integers(-12, 0)).filter(lambda t: t[1] >= t[2]),
)


@given(params32)
def test_membership_inverts_instantiation_sl32(t):
    L = build_algebra("sl", 3, 2)
    k, p, q = t
    rec = family_membership(L, family_instantiation(L, k, p, q))
    assert (rec.family, rec.p, rec.q) == (k, p, q)


@given(st.integers(2, 4), st.integers(0, 1), st.integers(1, 12))
def test_membership_inverts_instantiation_slm1(m, k, x):
    L = build_algebra("sl", m, 1)
    p, q = (x, None) if k == 0 else (None, x)
    rec = family_membership(L, family_instantiation(L, k, p, q))
    assert (rec.family, rec.p, rec.q) == (k, p, q)


def test_d_screen_sl31(sl31):
    v = d_screen(sl31, (0, 0, -2, 2), "module")
    assert not v.passed and 4 in v.eigenvalues and v.offending == [4]
    assert set(v.eigenvalues) == {2, 3, 4}
    ok = d_screen(sl31, (0, 0, -1, 1), "module")
    assert ok.passed and set(ok.eigenvalues) == {1, 2, 3}


def test_d_screen_weight_level(sl32):
    lo, hi = d_range_of_U(sl32)
    for lam in ((1, 1, 1, -1, -2), (0, -1, -1, 1, 1)):
        assert d_screen(sl32, lam).passed == (lo <= lambda_of_D(lam, 3) <= hi)


def test_kac_screen_examples(sl32):
    assert kac_common_constituent_screen(sl32, (0, 0, 0, 0, 0))[0]
    assert not kac_common_constituent_screen(sl32, (7, 1, -6, 6, -8))[0]
    assert kac_common_constituent_screen(sl32, (2, 1, -1, 1, -3))[0]
    assert not refined_screen(sl32, (2, 1, -1, 1, -3))[0]


def test_dual_examples(sl32):
    assert dual_weight_table(sl32, (3, 2, 2, -3, -4)) == as_weight((0, -1, -2, 2, 1))
    assert dual_weight_module(sl32, (3, 2, 2, -3, -4)) == as_weight((0, -1, -2, 2, 1))
    zero = as_weight((0, 0, 0, 0, 0))
    assert dual_closure_filter(sl32, [zero]) == [zero]
    assert dual_closure_filter(sl32, [as_weight((1, 1, 1, -1, -2))]) == []


@pytest.mark.parametrize("lam", [(2, 1, 1, -1, -3), (0, 0, -1, 1, 0), (1, 1, 0, 0, -2), (2, 1, 0, 0, -3)])
def test_dual_table_matches_module_route(sl32, lam):
    assert dual_weight_table(sl32, lam) == dual_weight_module(sl32, lam)


def test_dual_closure_idempotent_and_closed(sl32):
    ws = [as_weight(w) for w in KAC_LEVEL_WEIGHTS] + [as_weight((4, 1, 1, -1, -5)), as_weight((2, 2, 2, -3, -3))]
    once = dual_closure_filter(sl32, ws)
    assert sorted(dual_closure_filter(sl32, once)) == sorted(once)
    assert {dual_weight_table(sl32, w) for w in once} <= set(once)
    assert sorted(once) == sorted(as_weight(w) for w in KAC_LEVEL_WEIGHTS)


def test_screen_counts(report32):
    counts = [len(report32.stage(s)) for s in STAGES]
    assert counts == [300, 133, 15, 13, 10, 10]
    assert len(report32.tau_orbits) == 6


def test_screen_is_monotone(report32):
    for a, b in zip(STAGES, STAGES[1:]):
        assert set(report32.stage(b)) <= set(report32.stage(a))


def test_screen_lists(report32):
    fmt = lambda w: format_weight(as_weight(w), 3)  # noqa: E731
    assert sorted(report32.stage("dual_closure")) == sorted(fmt(w) for w in KAC_LEVEL_WEIGHTS)
    removed = set(report32.stage("dual_closure")) - set(report32.stage("refined"))
    assert removed == {fmt(w) for w in RULED_OUT_WEIGHTS}
    extra = set(report32.stage("kac_screen")) - set(report32.stage("dual_closure"))
    assert extra == {fmt((4, 1, 1, -1, -5)), fmt((2, 2, 2, -3, -3))}


def test_screen_report_dict(report32):
    d = report32.as_dict()
    assert d["window"] == 12 and d["d_range"] == [-6, 6]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_slm1_screen(m):
    L = build_algebra("sl", m, 1)
    r = run_screen(L, 12)
    want = {
        format_weight(as_weight((1,) * m + (-m,)), m),
        format_weight(as_weight((0,) * (m + 1)), m),
        format_weight(as_weight((0,) * (m - 1) + (-1, 1)), m),
    }
    assert set(r.stage("final")) == want


def test_tau_orbits_pair_duals(sl32):
    ws = [as_weight(w) for w in ((1, 1, 1, -1, -2), (0, -1, -1, 1, 1), (0, 0, 0, 0, 0))]
    orbits = tau_orbits(sl32, ws)
    assert sorted(len(o) for o in orbits) == [1, 2]


def test_scan_and_sample(sl21):
    box = scan_box(sl21, 4)
    assert all(max(abs(x) for x in w) <= 4 and sum(w) == 0 for w in box)
    s = out_of_family_sample(sl21, 5, 4, seed=7)
    assert len(s) == 5 and all(family_membership(sl21, w) is None for w in s)
    assert s == out_of_family_sample(sl21, 5, 4, seed=7)

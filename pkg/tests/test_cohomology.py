from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercohom.algebra import build_algebra
from supercohom.cohomology import (
    CochainSpace,
    CohomologyError,
    apply_differential,
    check_dd_zero,
    coboundary_value,
    cochain_from_values,
    cochain_space,
    cohomology,
    differential,
    evaluate,
    invariant_cochains,
    is_coboundary,
    is_invariant,
)
from supercohom.extension import build_g123
from supercohom.highest_weight import simple_module
from supercohom.modules import adjoint_module, build_V_realization, natural_module, tau_twist, trivial_module
from supercohom.submodules import invariants


def e(k):
    return {k: Fraction(1)}


def trace_cochain(L):
    K = trivial_module(L)
    vals = {}
    for i in range(L.dim):
        for j in range(L.dim):
            v = L.trace_form(e(i), e(j))
            vals[(i, j)] = {0: v} if v else {}
    return cochain_from_values(L, K, vals)


def test_cochain_dimensions(sl21):
    K = trivial_module(sl21)
    assert CochainSpace(sl21, K, 2).dim == 32
    assert CochainSpace(sl21, K, 3).dim == 88
    N = natural_module(sl21)
    assert CochainSpace(sl21, N, 0).dim == N.dim
    with pytest.raises(CohomologyError):
        CochainSpace(sl21, K, 4)
    with pytest.raises(CohomologyError):
        cochain_space(sl21, trivial_module(build_algebra("sl", 3, 1)), 1)


def test_blocks_partition(sl21):
    S = CochainSpace(sl21, natural_module(sl21), 2)
    seen = sorted(i for b in S.blocks.values() for i in b)
    assert seen == list(range(S.dim))


@pytest.mark.parametrize("make", [trivial_module, adjoint_module, natural_module])
def test_dd_zero(sl21, make):
    V = make(sl21)
    assert check_dd_zero(sl21, V, 0)
    assert check_dd_zero(sl21, V, 1)


def test_dd_zero_gl_realization():
    V = build_V_realization(2, "gl")
    assert check_dd_zero(V.algebra, V, 1)


def test_trivial_degree_zero(sl21):
    K = trivial_module(sl21)
    assert all(not r for r in differential(sl21, K, 0).rows.values())
    assert cohomology(sl21, K, 0, "brute").dim_H == 1


@pytest.mark.parametrize("make", [trivial_module, adjoint_module, natural_module])
def test_H0_is_invariants(sl21, make):
    V = make(sl21)
    assert cohomology(sl21, V, 0, "both").dim_H == invariants(V, "L").dim


@pytest.mark.parametrize(
    "desc,want",
    [
        ("trivial", [1, 0, 0]),
        ("adjoint", [0, 0, 0]),
        ("natural", [0, 1, 0]),
        ("real", [0, 1, 0]),
    ],
)
def test_brute_equals_invariant_sl21(sl21, desc, want):
    V = {
        "trivial": trivial_module,
        "adjoint": adjoint_module,
        "natural": natural_module,
        "real": lambda L: build_V_realization(2, "sl"),
    }[desc](sl21)
    L = V.algebra
    got = []
    for n in range(3):
        r = cohomology(L, V, n, "both")
        assert not r.flags
        got.append(r.dim_H)
    assert got == want


def test_representatives_are_cocycles(sl21):
    V = natural_module(sl21)
    r = cohomology(sl21, V, 1, "brute")
    assert len(r.representatives) == r.dim_H == 1
    f = {i: Fraction(v) for i, v in r.representatives[0]}
    assert not apply_differential(sl21, V, 1, f)
    assert r.representative_is_coboundary == [False]


def test_delta1_of_trace_is_trace_form(sl21):
    K = trivial_module(sl21)
    h = cochain_from_values(sl21, K, {(k,): {0: -sl21.trace(e(k))} for k in range(sl21.dim) if sl21.trace(e(k))})
    assert apply_differential(sl21, K, 1, h) == trace_cochain(sl21)


@pytest.mark.parametrize("m", [2, 3])
def test_trace_form_is_invariant_coboundary(m):
    L = build_algebra("sl", m, 1)
    K = trivial_module(L)
    tf = trace_cochain(L)
    assert tf and is_invariant(L, K, 2, tf)
    assert not apply_differential(L, K, 2, tf)
    inv = invariant_cochains(L, K, 2)
    assert len(inv) == 1
    w = is_coboundary(L, K, 2, tf)
    assert w is not None and apply_differential(L, K, 1, w) == tf
    # the witness differs from -Tr by a 1-cocycle
    h = cochain_from_values(L, K, {(k,): {0: -L.trace(e(k))} for k in range(L.dim) if L.trace(e(k))})
    diff = {k: w.get(k, 0) - h.get(k, 0) for k in set(w) | set(h)}
    assert not apply_differential(L, K, 1, {k: v for k, v in diff.items() if v})


def test_supertrace_variant_vanishes(sl21):
    for i, j in product(range(sl21.dim), repeat=2):
        assert sl21.supertrace(sl21.bracket(e(i), e(j))) == 0


def test_zero_cocycle_has_zero_witness(sl21):
    assert is_coboundary(sl21, trivial_module(sl21), 2, {}) == {}


def test_non_cocycle_raises(sl21):
    K = trivial_module(sl21)
    f = next(f for f in ({i: Fraction(1)} for i in range(CochainSpace(sl21, K, 1).dim)) if apply_differential(sl21, K, 1, f))
    with pytest.raises(CohomologyError):
        is_coboundary(sl21, K, 1, f)


def test_degree_checks(sl21):
    with pytest.raises(CohomologyError):
        cohomology(sl21, trivial_module(sl21), 3)
    with pytest.raises(CohomologyError):
        cohomology(sl21, trivial_module(sl21), 1, method="magic")


def test_displayed_identity_gl21():
    # for G0-invariant g vanishing on G0 x G0: (delta^2 g)(A, B, C) = g(<A, B>, C) with A, B in G0
    V = build_V_realization(2, "gl")
    G = V.algebra
    even = [k for k in range(G.dim) if G.parity[k] == 0]
    for coeffs in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -1, 3)):
        g = {}
        for c, gi in zip(coeffs, build_g123(2)):
            for k, v in gi.items():
                g[k] = g.get(k, 0) + c * v
        g = {k: v for k, v in g.items() if v}
        assert is_invariant(G, V, 2, g)
        for a, b in product(even, repeat=2):
            assert not evaluate(G, V, g, [e(a), e(b)])
            for c in range(G.dim):
                lhs = coboundary_value(G, V, g, a, b, c)
                rhs = evaluate(G, V, g, [G.bracket(e(a), e(b)), e(c)])
                assert lhs == rhs


@pytest.mark.parametrize("m", [2, 3])
def test_gl_invariant_cochain_count(m):
    V = build_V_realization(m, "gl")
    assert len(invariant_cochains(V.algebra, V, 2)) == 3


@pytest.mark.parametrize("m", [2, 3])
def test_sl_trivial_H2_vanishes(m):
    L = build_algebra("sl", m, 1)
    assert cohomology(L, trivial_module(L), 2, "invariant").dim_H == 0


def test_realization_H2():
    V = build_V_realization(2, "gl")
    r = cohomology(V.algebra, V, 2, "both")
    assert r.dim_H == 1 and not r.flags and r.representative_is_coboundary == [False]
    Vs = build_V_realization(2, "sl")
    assert cohomology(Vs.algebra, Vs, 2, "both").dim_H == 0


@pytest.mark.parametrize("lam", [(0, 0, 0), (1, 0, -1), (0, -1, 1), (1, 1, -2)])
def test_tau_symmetry_H2_sl21(sl21, lam):
    V = simple_module(sl21, lam)
    assert cohomology(sl21, V, 2, representatives=False).dim_H == cohomology(
        sl21, tau_twist(V), 2, representatives=False
    ).dim_H


def test_tau_symmetry_H2_sl31(sl31):
    for lam in ((0, 0, 0, 0), (0, 0, -1, 1), (1, 1, 1, -3)):
        V = simple_module(sl31, lam)
        a = cohomology(sl31, V, 2, representatives=False).dim_H
        b = cohomology(sl31, tau_twist(V), 2, representatives=False).dim_H
        assert a == b


def test_report_invariants(sl21):
    r = cohomology(sl21, adjoint_module(sl21), 1, "both")
    assert r.dim_H == r.dim_kernel - r.rank_prev >= 0
    d = r.as_dict()
    assert d["degree"] == 1 and d["method"] == "both"


@settings(max_examples=15)
@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8))
def test_delta_of_coboundary_vanishes(coeffs):
    L = build_algebra("sl", 2, 1)
    V = natural_module(L)
    f = {i: Fraction(c) for i, c in enumerate(coeffs) if c}
    # random 1-cochains drawn from the first slots; delta^2 delta^1 = 0 pointwise
    assert not apply_differential(L, V, 2, apply_differential(L, V, 1, f))

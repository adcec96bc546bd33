from __future__ import annotations

from fractions import Fraction

import pytest

from supercohom.algebra import build_algebra
from supercohom.cohomology import apply_differential, evaluate
from supercohom.extension import (
    build_g123,
    check_extension_theorem,
    cocycle_relation_g,
    extend_to_gl,
    g_difference,
)
from supercohom.modules import build_V_realization, eta_vector


def e(k):
    return {k: Fraction(1)}


@pytest.mark.parametrize("m", [2, 3])
def test_extension_theorem(m):
    r = check_extension_theorem(m)
    assert r.holds
    assert r.sl_invariant_cocycles == r.gl_invariant_cocycles_vanishing_on_I


def test_extend_zero():
    sl = build_algebra("sl", 2, 1)
    V_sl = build_V_realization(2, "sl")
    V_gl = build_V_realization(2, "gl")
    assert extend_to_gl({}, 2, V_sl.algebra, V_gl.algebra, V_sl, V_gl) == {}
    assert sl.dim == 8


def test_g2_value():
    V = build_V_realization(2, "gl")
    G = V.algebra
    g1, g2, g3 = build_g123(2)
    E = lambda i, j: e(G.index_of[(i - 1, j - 1)])  # noqa: E731
    assert evaluate(G, V, g2, [E(1, 1), E(3, 1)]) == eta_vector(2, 1)
    assert evaluate(G, V, g1, [E(1, 2), E(3, 1)]) == eta_vector(2, 2)
    assert evaluate(G, V, g3, [E(3, 3), E(3, 2)]) == eta_vector(2, 2)


@pytest.mark.parametrize("m", [2, 3])
def test_cocycle_relation(m):
    r = cocycle_relation_g(m)
    assert r.relation_a_plus_b_zero and r.triple_formula_ok
    assert r.vanishes_on_sl_m == {"g1": False, "g2": True, "g3": True}
    (a0, a, b), = r.solution_basis
    assert a0 == 0 and a + b == 0


@pytest.mark.parametrize("m", [2, 3])
def test_g_difference(m):
    V = build_V_realization(m, "gl")
    G = V.algebra
    g = g_difference(m)
    assert g and not apply_differential(G, V, 2, g)
    # g(A, E_{m+1,k}) = Str(A) eta_k on even A
    for x in range(G.dim):
        if G.parity[x]:
            continue
        s = G.supertrace(e(x))
        for k in range(1, m + 1):
            want = {a: s * v for a, v in eta_vector(m, k).items() if s}
            assert evaluate(G, V, g, [e(x), e(G.index_of[(m, k - 1)])]) == want
    # restriction to sl(m|1) x sl(m|1) vanishes
    sl = build_algebra("sl", m, 1)
    basis = [G.from_matrix(sl.to_matrix(e(i))) for i in range(sl.dim)]
    assert all(not evaluate(G, V, g, [x, y]) for x in basis for y in basis)

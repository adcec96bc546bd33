from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supercohom.algebra import build_algebra, format_weight
from supercohom.modules import (
    ModuleError,
    adjoint_module,
    build_V_realization,
    d_eigenvalues,
    dual_module,
    eta_vector,
    ext_power_eps,
    is_representation,
    natural_module,
    parity_flip,
    shift_grading,
    sym_power_eps,
    tau_twist,
    tensor,
    trivial_module,
    weights_consistent,
)
from supercohom.submodules import cyclic_submodule, largest_invariant_subspace, singular_vectors


def W(*xs):
    return tuple(Fraction(x) for x in xs)


def top_weight(M):
    sv = singular_vectors(M, "L")
    return sv[0][0]


def test_trivial_and_adjoint(sl32):
    K = trivial_module(sl32)
    assert K.dim == 1 and all(not col for img in K.images for col in img)
    assert d_eigenvalues(K) == [0]
    A = adjoint_module(sl32)
    assert A.dim == 24
    assert top_weight(A) == W(1, 0, 0, 0, -1)


def test_natural_module(sl32, sl21, gl21):
    V = natural_module(sl32)
    assert V.dim == 5
    assert top_weight(V) == W(0, -1, -1, 1, 1)
    assert top_weight(dual_module(V)) == W(1, 1, 1, -1, -2)
    N = natural_module(sl21)
    assert Counter(N.weights)[W(0, -1, 1)] == 1
    # E_12 e_2 = e_1
    assert N.act(sl21.index_of[(0, 1)], {1: Fraction(1)}) == {0: Fraction(1)}


def test_odd_heavy_grading_variant():
    G = build_algebra("gl", 3, 1)
    V = natural_module(G, "section3")
    assert (V.parity.count(0), V.parity.count(1)) == (1, 3)
    with pytest.raises(ModuleError):
        natural_module(build_algebra("sl", 3, 2), "section3")


def test_dual_tau_and_biduality(sl21):
    N = natural_module(sl21)
    assert Counter(tau_twist(N).weights) == Counter(dual_module(N).weights)
    assert Counter(dual_module(dual_module(N)).weights) == Counter(N.weights)
    for M in (dual_module(N), tau_twist(N), parity_flip(N), shift_grading(N, 2)):
        assert is_representation(M)


def test_power_dimensions(sl32):
    A = adjoint_module(sl32)
    assert ext_power_eps(A, 2).dim == 288
    assert sym_power_eps(A, 2).dim == 288
    with pytest.raises((ModuleError, ValueError)):
        sym_power_eps(A, -1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_realization_dimension_and_action(m):
    V = build_V_realization(m, "gl")
    G = V.algebra
    assert V.dim == 2 ** m - 1
    assert is_representation(V)
    e = lambda i, j: G.index_of[(i - 1, j - 1)]  # noqa: E731
    for k in range(1, m + 1):
        eta = eta_vector(m, k)
        assert V.act(e(m + 1, m + 1), eta) == eta
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                want = {a: -v for a, v in eta_vector(m, j).items()} if i == k else {}
                assert V.act(e(i, j), eta) == want
    # the unit matrix acts as zero
    I = G.from_matrix({(k, k): Fraction(1) for k in range(m + 1)})
    assert all(not V.act_element(I, {a: Fraction(1)}) for a in range(V.dim))


def test_realization_grading_and_L0_pieces():
    V = build_V_realization(3, "sl")
    assert sorted(d_eigenvalues(V)) == [1, 1, 1, 2, 2, 2, 3]
    sv = singular_vectors(V, "L0")
    assert len(sv) == 3 and all(len(v) == 1 for _, v in sv)


def test_cyclic_and_fixpoint(sl21):
    A = adjoint_module(sl21)
    top = sl21.index_of[(0, 2)]  # X13, the highest root vector
    assert cyclic_submodule(A, {top: Fraction(1)}).dim == A.dim
    from supercohom.linalg import Subspace

    assert largest_invariant_subspace(A, Subspace.full(A.dim)).dim == A.dim


def test_tensor_is_representation(sl21):
    N = natural_module(sl21)
    T = tensor(N, dual_module(N))
    assert T.dim == 9 and is_representation(T) and weights_consistent(T)
    # N (x) N^* contains the invariant (identity) tensor
    from supercohom.submodules import invariants

    assert invariants(T, "L").dim == 1


def test_weight_compatibility_of_powers(sl21):
    for M in (sym_power_eps(adjoint_module(sl21), 2), ext_power_eps(natural_module(sl21), 3)):
        assert weights_consistent(M) and is_representation(M)


def test_format_weight_examples():
    assert format_weight(W(1, 1, 1, -1, -2), 3) == "(1,1,1|-1,-2)"


@given(st.integers(1, 3), st.integers(0, 3))
def test_dual_of_sym_power_is_representation(k, shift):
    L = build_algebra("sl", 2, 1)
    M = shift_grading(sym_power_eps(natural_module(L), k), shift)
    assert is_representation(dual_module(M))

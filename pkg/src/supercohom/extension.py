"""Passing between sl(m|1) and gl(m|1) cochains, and the cochains g1, g2, g3
with values in the realization S_{m-1}(W, eps)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .algebra import Element, LieSuperalgebra, build_algebra
from .cohomology import (
    Cochain,
    CochainSpace,
    CohomologyError,
    apply_differential,
    coboundary_value,
    cochain_from_values,
    evaluate,
    exterior_tuples,
    invariant_cochains,
    is_invariant,
)
from .linalg import SparseRationalMatrix, kernel_basis
from .modules import Module, build_V_realization, eta_vector, restrict_to_sl


def project_to_sl(gl: LieSuperalgebra, sl: LieSuperalgebra, x: Element) -> Element:
    """A -> A - Str(A)/(m-n) I, written in the sl basis."""
    M = gl.to_matrix(x)
    s = gl.supertrace(x) / (gl.m - gl.n)
    M = dict(M)
    for k in range(gl.N):
        M[k, k] = M.get((k, k), 0) - s
    return sl.from_matrix({key: v for key, v in M.items() if v})


def embed_sl(gl: LieSuperalgebra, sl: LieSuperalgebra, x: Element) -> Element:
    return gl.from_matrix(sl.to_matrix(x))


def _identity_acts_as_zero(gl: LieSuperalgebra, V: Module) -> bool:
    I = gl.from_matrix({(k, k): Fraction(1) for k in range(gl.N)})
    return all(not V.act_element(I, {a: Fraction(1)}) for a in range(V.dim))


def extend_to_gl(
    f: Cochain, n: int, sl: LieSuperalgebra, gl: LieSuperalgebra, V_sl: Module, V_gl: Module
) -> Cochain:
    """fbar = f on L x ... x L and zero as soon as one argument is the unit matrix."""
    if not _identity_acts_as_zero(gl, V_gl):
        raise CohomologyError("the unit matrix must act as zero on the coefficient module")
    d = V_gl.dim
    proj = [project_to_sl(gl, sl, {k: Fraction(1)}) for k in range(gl.dim)]
    out: Cochain = {}
    for t, tup in enumerate(exterior_tuples(gl, n)):
        val = evaluate(sl, V_sl, f, [proj[k] for k in tup])
        for a, v in val.items():
            out[t * d + a] = v
    return out


def restrict_to_sl_cochain(
    g: Cochain, n: int, sl: LieSuperalgebra, gl: LieSuperalgebra, V_gl: Module
) -> Cochain:
    d = V_gl.dim
    emb = [embed_sl(gl, sl, {k: Fraction(1)}) for k in range(sl.dim)]
    out: Cochain = {}
    for t, tup in enumerate(exterior_tuples(sl, n)):
        val = evaluate(gl, V_gl, g, [emb[k] for k in tup])
        for a, v in val.items():
            out[t * d + a] = v
    return out


def _is_invariant_cocycle(L, V, f: Cochain) -> bool:
    return is_invariant(L, V, 2, f) and not apply_differential(L, V, 2, f)


def _pair(m: int):
    sl = build_algebra("sl", m, 1)
    gl = build_algebra("gl", m, 1)
    V_gl = build_V_realization(m, "gl")
    V_sl = restrict_to_sl(V_gl, sl)
    return sl, gl, V_sl, V_gl


def _cocycle_space(L, V, basis: List[Cochain]) -> List[Cochain]:
    if not basis:
        return []
    A = SparseRationalMatrix.from_columns(1 << 40, [apply_differential(L, V, 2, f) for f in basis])
    K = kernel_basis(A)
    out = []
    for k in K.basis:
        v: Cochain = {}
        for i, c in k.items():
            for key, x in basis[i].items():
                v[key] = v.get(key, 0) + c * x
        out.append({key: x for key, x in v.items() if x})
    return out


@dataclass
class ExtensionCheck:
    m: int
    sl_invariant_cocycles: int
    gl_invariant_cocycles_vanishing_on_I: int
    forward_ok: bool
    backward_ok: bool
    basis_cochains_ok: bool

    @property
    def holds(self) -> bool:
        return (
            self.forward_ok
            and self.backward_ok
            and self.basis_cochains_ok
            and self.sl_invariant_cocycles == self.gl_invariant_cocycles_vanishing_on_I
        )


def check_extension_theorem(m: int) -> ExtensionCheck:
    """f is an L0-invariant 2-cocycle iff fbar is a G0-invariant 2-cocycle."""
    sl, gl, V_sl, V_gl = _pair(m)
    Z_sl = _cocycle_space(sl, V_sl, invariant_cochains(sl, V_sl, 2))
    Z_gl = _cocycle_space(gl, V_gl, invariant_cochains(gl, V_gl, 2))

    # G0-invariant cocycles with g(I, .) = 0
    I = gl.from_matrix({(k, k): Fraction(1) for k in range(gl.N)})
    cols = []
    for g in Z_gl:
        col = {}
        for k in range(gl.dim):
            for a, v in evaluate(gl, V_gl, g, [I, {k: Fraction(1)}]).items():
                col[k * V_gl.dim + a] = v
        cols.append(col)
    if Z_gl:
        K = kernel_basis(SparseRationalMatrix.from_columns(gl.dim * V_gl.dim, cols))
        Z_gl_I = []
        for k in K.basis:
            v: Cochain = {}
            for i, c in k.items():
                for key, x in Z_gl[i].items():
                    v[key] = v.get(key, 0) + c * x
            Z_gl_I.append(v)
    else:
        Z_gl_I = []

    forward = all(_is_invariant_cocycle(gl, V_gl, extend_to_gl(f, 2, sl, gl, V_sl, V_gl)) for f in Z_sl)
    backward = all(
        _is_invariant_cocycle(sl, V_sl, restrict_to_sl_cochain(g, 2, sl, gl, V_gl)) for g in Z_gl_I
    )
    # basis cochains and invariant basis cochains, both directions of the equivalence
    probe: List[Cochain] = [{i: Fraction(1)} for i in range(CochainSpace(sl, V_sl, 2).dim)]
    probe += invariant_cochains(sl, V_sl, 2)
    basis_ok = all(
        _is_invariant_cocycle(sl, V_sl, f) == _is_invariant_cocycle(gl, V_gl, extend_to_gl(f, 2, sl, gl, V_sl, V_gl))
        for f in probe
    )
    return ExtensionCheck(m, len(Z_sl), len(Z_gl_I), forward, backward, basis_ok)


# ---------------------------------------------------------------------------
# g1, g2, g3


def build_g123(m: int) -> Tuple[Cochain, Cochain, Cochain]:
    gl = build_algebra("gl", m, 1)
    V = build_V_realization(m, "gl")
    E = lambda i, j: gl.index_of[(i - 1, j - 1)]  # noqa: E731
    eta = {k: eta_vector(m, k) for k in range(1, m + 1)}
    g1, g2, g3 = {}, {}, {}
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            for k in range(1, m + 1):
                if i == k:
                    g1[(E(i, j), E(m + 1, k))] = eta[j]
                if i == j:
                    g2[(E(i, j), E(m + 1, k))] = eta[k]
    for k in range(1, m + 1):
        g3[(E(m + 1, m + 1), E(m + 1, k))] = eta[k]
    return tuple(cochain_from_values(gl, V, g) for g in (g1, g2, g3))


@dataclass
class CocycleRelation:
    m: int
    solution_basis: List[Tuple[Fraction, Fraction, Fraction]]
    relation_a_plus_b_zero: bool
    triple_formula_ok: bool
    vanishes_on_sl_m: Dict[str, bool]


def cocycle_relation_g(m: int) -> CocycleRelation:
    gl = build_algebra("gl", m, 1)
    V = build_V_realization(m, "gl")
    gs = build_g123(m)
    A = SparseRationalMatrix.from_columns(1 << 40, [apply_differential(gl, V, 2, g) for g in gs])
    K = kernel_basis(A)
    sol = [tuple(k.get(i, Fraction(0)) for i in range(3)) for k in K.basis]
    rel = len(sol) == 1 and sol[0][0] == 0 and sol[0][1] + sol[0][2] == 0 and sol[0][1] != 0

    E = lambda i, j: gl.index_of[(i - 1, j - 1)]  # noqa: E731
    eta = {k: eta_vector(m, k) for k in range(1, m + 1)}
    ok = True
    for g in gs[1:]:
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                for k in range(1, m + 1):
                    val = coboundary_value(gl, V, g, E(k, m + 1), E(m + 1, i), E(m + 1, j))
                    want: Dict[int, Fraction] = {}
                    for idx, term in ((i, j), (j, i)):
                        if k == idx:
                            for a, v in eta[term].items():
                                want[a] = want.get(a, 0) - v
                    want = {a: v for a, v in want.items() if v}
                    if val != want:
                        ok = False
    # vanishing on sl(m) x G: E_ij (i != j) and E_ii - E_jj in the first slot
    slm: List[Element] = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i != j:
                slm.append({E(i, j): Fraction(1)})
    for i in range(1, m):
        slm.append({E(i, i): Fraction(1), E(i + 1, i + 1): Fraction(-1)})
    vanish = {}
    for name, g in zip(("g1", "g2", "g3"), gs):
        vanish[name] = all(
            not evaluate(gl, V, g, [x, {k: Fraction(1)}]) for x in slm for k in range(gl.dim)
        )
    return CocycleRelation(m, sol, rel, ok, vanish)


def g_difference(m: int) -> Cochain:
    g1, g2, g3 = build_g123(m)
    out = dict(g2)
    for k, v in g3.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}

"""Casimir operator and the filtration of the atypical block of S_2(sl(3|2)).

The second super-symmetric power of the adjoint module of sl(3|2) splits by
generalized Casimir eigenvalue.  The generalized kernel is the block W whose
Jordan-Hoelder series W = W0 > W1 > W2 > W3 = 0 is checked here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .algebra import LieSuperalgebra, Weight, build_algebra, format_weight
from .highest_weight import simple_character
from .linalg import SparseRationalMatrix, Subspace, kernel_basis, solve, subspace_sum
from .modules import Module, adjoint_module, sym_power_eps
from .submodules import (
    GradedSubspace,
    action_span,
    cyclic_submodule,
    invariants,
    quotient_module,
    singular_vectors,
    split_by_weight,
    submodule_as_module,
)


@dataclass
class FiltrationReport:
    module: str
    chain_dims: List[int]
    factor_weights: List[str]
    summand_dims: Dict[str, int] = field(default_factory=dict)
    casimir_eigenvalues: Dict[str, str] = field(default_factory=dict)
    direct_sum: bool = False
    w1_indecomposable: bool = False
    w_socle_simple: bool = False
    quotient_trivial: bool = False
    l0_invariant_outside_w1: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        dims = self.chain_dims
        return all(a > b for a, b in zip(dims, dims[1:])) and dims[-1] == 0

    def as_dict(self) -> dict:
        return {
            "module": self.module,
            "chain_dims": self.chain_dims,
            "factor_weights": self.factor_weights,
            "summand_dims": self.summand_dims,
            "casimir_eigenvalues": self.casimir_eigenvalues,
            "direct_sum": self.direct_sum,
            "w1_indecomposable": self.w1_indecomposable,
            "w_socle_simple": self.w_socle_simple,
            "quotient_trivial": self.quotient_trivial,
            "l0_invariant_outside_w1": self.l0_invariant_outside_w1,
            "consistent": self.consistent,
            "notes": self.notes,
        }


def dual_basis(L: LieSuperalgebra) -> List[Dict[int, Fraction]]:
    """e^i with Str(e^i e_j) = delta_ij."""
    n = L.dim
    G = SparseRationalMatrix(n, n)
    for i in range(n):
        for j in range(n):
            v = L.invariant_form({i: Fraction(1)}, {j: Fraction(1)})
            if v:
                G[i, j] = v
    out = []
    # sum_k c_k Str(e_k e_j) = delta_ij, i.e. G^T c = e_i
    GT = G.transpose()
    for i in range(n):
        c = solve(GT, {i: Fraction(1)})
        if c is None:
            raise ArithmeticError("invariant form is degenerate")
        out.append(c)
    return out


def casimir_operator(M: Module) -> SparseRationalMatrix:
    """sum_i rho(e_i) rho(e^i), the quadratic Casimir; checked to commute with L.

    With e^i defined by Str(e^i e_j) = delta_ij the unsigned product in the
    order e^i e_i fails to commute for odd e_i; this order needs no sign.
    """
    L = M.algebra
    C = SparseRationalMatrix(M.dim, M.dim)
    for i, d in enumerate(dual_basis(L)):
        A = M.element_matrix(d)
        C = C + M.matrix(i) @ A
    for k in range(L.dim):
        X = M.matrix(k)
        if not (C @ X - X @ C).is_zero():
            raise ArithmeticError("Casimir candidate does not commute with the action")
    return C


def generalized_kernel(C: SparseRationalMatrix) -> Subspace:
    n = C.ncols
    P = SparseRationalMatrix.identity(n)
    prev = -1
    while True:
        P = P @ C
        K = kernel_basis(P)
        if K.dim == prev:
            return K
        prev = K.dim


def eigenspace(C: SparseRationalMatrix, value) -> Subspace:
    return kernel_basis(C - SparseRationalMatrix.identity(C.ncols).scale(Fraction(value)))


def _graded(M: Module, S: Subspace) -> GradedSubspace:
    parts: Dict[Weight, list] = {}
    for b in S.basis:
        for w, loc in split_by_weight(M, b).items():
            parts.setdefault(w, []).append(loc)
    return GradedSubspace(M, {w: Subspace.span(len(M.weight_spaces[w]), v) for w, v in parts.items()})


def analyze_W_structure(L: Optional[LieSuperalgebra] = None) -> FiltrationReport:
    L = L or build_algebra("sl", 3, 2)
    m = L.m
    S2 = sym_power_eps(adjoint_module(L), 2)
    C = casimir_operator(S2)
    report = FiltrationReport(module="S2(adjoint)", chain_dims=[], factor_weights=[])

    top = (2, 0, 0, -1, -1)
    adj = (1, 0, 0, 0, -1)
    dim_top = sum(simple_character(L, top).values())
    sv = dict(singular_vectors(S2, "L"))
    closures = {}
    for name, w in (("V(2,0,0|-1,-1)", top), ("adjoint", adj)):
        ws = tuple(Fraction(x) for x in w)
        vecs = sv.get(ws, [])
        if len(vecs) != 1:
            report.notes.append(f"expected one singular vector of weight {name}, found {len(vecs)}")
            continue
        Y = cyclic_submodule(S2, vecs[0])
        closures[name] = Y.to_subspace()
        v = vecs[0]
        Cv = C.matvec(v)
        a = next(iter(v))
        report.casimir_eigenvalues[name] = str(Cv.get(a, 0) / v[a])
    W = generalized_kernel(C)
    report.casimir_eigenvalues["W"] = "0 (generalized)"
    report.summand_dims = {k: S.dim for k, S in closures.items()}
    report.summand_dims["W"] = W.dim
    total = W
    for S in closures.values():
        total = subspace_sum(total, S)
    report.direct_sum = (
        total.dim == S2.dim
        and W.dim + sum(S.dim for S in closures.values()) == S2.dim
        and closures.get("V(2,0,0|-1,-1)", Subspace.zero(1)).dim == dim_top
        and closures.get("adjoint", Subspace.zero(1)).dim == L.dim
    )
    if W.dim != S2.dim - dim_top - L.dim:
        report.notes.append("W dimension does not match the subtraction count")

    Wg = _graded(S2, W)
    if not Wg.is_submodule():
        report.notes.append("generalized Casimir kernel is not a submodule")
        return report
    Wm = submodule_as_module(S2, Wg, "W")
    W1 = action_span(Wm)
    W2 = invariants(Wm, "L")
    W1m = submodule_as_module(Wm, W1, "W1")
    report.chain_dims = [Wm.dim, W1.dim, W2.dim, 0]

    # W/W1 and W1/W2
    Q = quotient_module(Wm, W1)
    report.quotient_trivial = Q.dim == 1 and all(not any(col) for img in Q.images for col in img)
    W2in1 = invariants(W1m, "L")
    mid = quotient_module(W1m, W2in1)
    mid_sv = singular_vectors(mid, "L")
    target = tuple(Fraction(x) for x in (1, 1, 0, 0, -2))
    dim_mid = sum(simple_character(L, target).values())
    mid_ok = len(mid_sv) == 1 and mid_sv[0][0] == target and mid.dim == dim_mid
    zero = tuple(Fraction(0) for _ in range(L.N))
    report.factor_weights = [
        format_weight(zero, m) if report.quotient_trivial else "?",
        format_weight(target, m) if mid_ok else "?",
        format_weight(zero, m) if W2.dim == 1 else "?",
    ]
    # W1 has no trivial summand iff it is spanned by its own L-action
    report.w1_indecomposable = action_span(W1m).dim == W1m.dim
    # the socle of W is the invariant line unless a copy of V(1,1,0|0,-2) embeds
    sv_W = dict(singular_vectors(Wm, "L"))
    embeds = any(cyclic_submodule(Wm, v).dim == dim_mid for v in sv_W.get(target, []))
    report.w_socle_simple = W2.dim == 1 and not embeds
    inv0 = invariants(Wm, "L0")
    report.l0_invariant_outside_w1 = any(not W1.contains(v) for v in inv0.vectors())
    return report

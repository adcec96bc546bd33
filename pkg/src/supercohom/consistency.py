"""Structural self-checks on an algebra: super Jacobi identity, grading
additivity, the automorphism tau, the element D and the eps relation."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Optional, Tuple

from .algebra import Element, LieSuperalgebra


def _add(a: Element, b: Element, s=1) -> Element:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def _basis(k: int) -> Element:
    return {k: Fraction(1)}


def jacobi_defect(L: LieSuperalgebra) -> Optional[Tuple[int, int, int]]:
    """First (i,j,k) violating [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]."""
    d = L.dim
    br = {(i, j): L.bracket(_basis(i), _basis(j)) for i in range(d) for j in range(d)}

    def bb(i: int, e: Element) -> Element:
        out: Element = {}
        for k, c in e.items():
            for t, v in br[i, k].items():
                out[t] = out.get(t, 0) + c * v
        return out

    def be(e: Element, k: int) -> Element:
        out: Element = {}
        for i, c in e.items():
            for t, v in br[i, k].items():
                out[t] = out.get(t, 0) + c * v
        return out

    for i, j, k in product(range(d), repeat=3):
        lhs = bb(i, br[j, k])
        s = -1 if L.parity[i] and L.parity[j] else 1
        rhs = _add(be(br[i, j], k), bb(j, br[i, k]), s)
        if _add(lhs, rhs, -1):
            return (i, j, k)
    return None


def grading_additive(L: LieSuperalgebra) -> bool:
    """[e_i, e_j] is homogeneous of parity p_i + p_j and Z-degree z_i + z_j."""
    for i, j in product(range(L.dim), repeat=2):
        for k in L.bracket(_basis(i), _basis(j)):
            if L.parity[k] != (L.parity[i] + L.parity[j]) % 2:
                return False
            if L.z_degree[k] != L.z_degree[i] + L.z_degree[j]:
                return False
    return True


def tau_is_automorphism(L: LieSuperalgebra) -> bool:
    for i, j in product(range(L.dim), repeat=2):
        x, y = _basis(i), _basis(j)
        if L.tau(L.bracket(x, y)) != L.bracket(L.tau(x), L.tau(y)):
            return False
        if L.element_parity(L.tau(x)) != L.parity[i]:
            return False
    return True


def D_grades(L: LieSuperalgebra) -> bool:
    """[D, e_i] = z_degree(i) e_i for every basis vector."""
    for i in range(L.dim):
        got = L.bracket(L.D, _basis(i))
        want = {i: Fraction(L.z_degree[i])} if L.z_degree[i] else {}
        if got != want:
            return False
    return True


def algebra_checks(L: LieSuperalgebra) -> Dict[str, bool]:
    out = {
        "jacobi": jacobi_defect(L) is None,
        "grading_additive": grading_additive(L),
        "tau_automorphism": tau_is_automorphism(L),
        "D_grades": D_grades(L),
    }
    # on gl the eps_i are independent, the relation is an sl statement
    if L.kind == "sl":
        out["eps_relation"] = L.check_eps_relation()
    return out

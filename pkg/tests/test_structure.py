from __future__ import annotations

from fractions import Fraction

import pytest

from supercohom.highest_weight import simple_character, simple_module
from supercohom.modules import adjoint_module, natural_module
from supercohom.structure import analyze_W_structure, casimir_operator, eigenspace


def commutes(M, C):
    for x in range(M.algebra.dim):
        for a in range(M.dim):
            v = {a: Fraction(1)}
            if C.matvec(M.act(x, v)) != M.act(x, C.matvec(v)):
                return False
    return True


@pytest.mark.parametrize("make", [natural_module, adjoint_module])
def test_casimir_commutes(sl21, make):
    M = make(sl21)
    assert commutes(M, casimir_operator(M))


def test_casimir_scalar_on_simple(sl21):
    M = simple_module(sl21, (1, 0, -1))
    C = casimir_operator(M)
    assert eigenspace(C, C.matvec({0: Fraction(1)}).get(0, 0)).dim == M.dim


@pytest.fixture(scope="module")
def W_report(sl32):
    return analyze_W_structure(sl32)


def test_casimir_eigenvalues_S2(W_report):
    assert W_report.casimir_eigenvalues["V(2,0,0|-1,-1)"] == "8"
    assert W_report.casimir_eigenvalues["adjoint"] == "2"


def test_W_dimension(sl32, W_report):
    top = sum(simple_character(sl32, (2, 0, 0, -1, -1)).values())
    assert W_report.summand_dims["W"] == 288 - top - 24
    assert W_report.direct_sum and not W_report.notes


def test_W_filtration(W_report):
    assert W_report.chain_dims == [120, 119, 1, 0]
    assert W_report.factor_weights == ["(0,0,0|0,0)", "(1,1,0|0,-2)", "(0,0,0|0,0)"]
    assert W_report.consistent
    assert W_report.quotient_trivial and W_report.w1_indecomposable and W_report.w_socle_simple
    assert W_report.as_dict()["consistent"]

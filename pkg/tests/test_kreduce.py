from fractions import Fraction

import pytest

from virk.coeff import ALPHA, Scalar
from virk.kreduce import (
    eigen_subalgebra_check,
    h0_family,
    h0_spanning_check,
    k_monomial_span_check,
    k_monomial_vector,
    k_monomials_upto,
    lowest_k_eigen_check,
    residue_partner,
    universal_crosscheck_verma,
    universal_sp,
)
from virk.liealg import LieElement, k
from virk.verma import module

F = Fraction
POINTS = [(3, F(1, 5)), (F(1, 2), F(1, 16)), (F(5, 2), 0)]


def test_universal_examples_symbolic():
    c, h = ALPHA, ALPHA * ALPHA  # any formal values
    assert universal_sp(c, h, [], []) == 1
    assert universal_sp(c, h, [1], [1]) == h * h + h * 2
    assert universal_sp(c, h, [2], [2]) == h * h + h * 4 + c * F(1, 2)


def test_universal_mixed_energy_overlap():
    # K_{-1} Psi = h Psi - L_{-1} Psi keeps a component along Psi
    h = F(2, 5)
    assert universal_sp(3, h, [], [1]) == h


@pytest.mark.parametrize("c,h", POINTS)
def test_universal_against_verma(c, h):
    assert universal_crosscheck_verma(c, h, 4).passed


@pytest.mark.parametrize("c,h", POINTS)
def test_universal_hermitian(c, h):
    monos = k_monomials_upto(3)
    for a in monos:
        for b in monos:
            assert universal_sp(c, h, a, b) == universal_sp(c, h, b, a).conj()


def test_universal_symbolic_matches_specialisation():
    c, h = ALPHA * 2 + 1, ALPHA * ALPHA
    for a in k_monomials_upto(3):
        for b in k_monomials_upto(3):
            sym = universal_sp(c, h, a, b)
            val = universal_sp(5, 4, a, b)  # alpha = 2
            assert sym.eval_alpha(2) == val


@pytest.mark.parametrize("c,h", POINTS + [(F(1, 2), 0)])
def test_k_span(c, h):
    report = k_monomial_span_check(c, h, 6)
    assert report.passed


def test_k_span_generic_full_rank():
    report = k_monomial_span_check(3, F(1, 5), 6)
    increments = [d["rank_increment"] for d in report.details]
    assert increments == [1, 1, 2, 3, 5, 7, 11]


@pytest.mark.parametrize("c,h", POINTS)
def test_lowest_eigen(c, h):
    assert lowest_k_eigen_check(c, h, 6, 3).passed


def test_l_minus_one_is_not_eigen():
    mod = module(3, F(1, 5))
    v = mod.basis_vector((1,))
    img = mod.act_k(1, v)
    assert img.coefficient(()) != 0  # K_1 L_{-1} Psi has a Psi component


def test_eigen_subalgebra():
    res = eigen_subalgebra_check(3, F(1, 5), 1, k(2))
    assert res == {"eigen": True, "lambda": F(1, 5)}
    res = eigen_subalgebra_check(F(1, 2), 0, 3, LieElement.l(1) - LieElement.l(4))
    assert res["eigen"] and res["lambda"] == 0
    assert not eigen_subalgebra_check(3, F(1, 5), 1, k(-1))["eigen"]
    with pytest.raises(ValueError):
        eigen_subalgebra_check(3, F(1, 5), 3, k(1))


def test_residue_partner():
    assert [residue_partner(a) for a in range(2, 8)] == [-1, 0, 1, -1, 0, 1]


@pytest.mark.parametrize("c", [3, F(1, 2)])
def test_h0_spanning(c):
    report = h0_spanning_check(c, 6)
    assert report.passed
    assert report.details[0]["rank_increment"] == 1


def test_h0_family_level_zero():
    mod = module(3, 0)
    fam = h0_family(mod, 3)
    assert fam[0][0] == () and fam[0][1] == mod.lowest()


def test_h0_rejects_inadmissible():
    assert h0_spanning_check(F(1, 3), 4).status == "error"


def test_monomial_vector():
    mod = module(Scalar.coerce(3), Scalar.coerce(F(1, 5)))
    v = k_monomial_vector(mod, (2, 1))
    w = mod.act_k(-2, mod.act_k(-1, mod.lowest()))
    assert v == w

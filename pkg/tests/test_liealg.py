from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virk.coeff import I, ONE, ZERO, Scalar
from virk.liealg import (
    KCombination,
    KIndex,
    LieElement,
    bracket,
    bracket_functional_solver,
    functional_system,
    gamma,
    gamma_endo_check,
    jacobi_check,
    k,
    k_bracket,
    k_bracket_check,
    k_bracket_closed,
    k_expand,
    kn_closure_check,
    kn_membership,
    theta,
    virasoro_structure,
)

F = Fraction
l = LieElement.l
C = LieElement.central()


def test_bracket_examples():
    assert bracket(l(1), l(-1)) == l(0, 2)
    assert bracket(l(2), l(-2)) == l(0, 4) + LieElement.central(F(1, 2))
    assert bracket(l(5), C).is_zero()


def test_theta_examples():
    assert theta(l(3)) == l(-3)
    assert theta(l(1, I)) == l(-1, -I)
    assert theta(k(4)) == k(-4)


def test_k_expand():
    assert k_expand(KIndex(0, 5, 1)) == l(0) - l(5)
    assert k_expand(KIndex(0, 0, 1)).is_zero()
    assert k_expand(KIndex(2, -1, 3)) == l(2) - l(-1)
    with pytest.raises(ValueError):
        KIndex(3, 1, 3)


def test_k_bracket_closed_examples():
    assert k_bracket_closed(1, -1) == KCombination({1: ONE, -1: ONE})
    assert k_bracket_closed(2, -2) == KCombination({2: 2, -2: 2}, F(1, 2))
    for r in range(-5, 6):
        assert k_bracket_closed(r, 0) == KCombination()


def test_membership():
    res = kn_membership(l(0) - l(4), 2)
    assert res.member and res.coords == {KIndex(0, 2, 2): ONE}
    assert not kn_membership(l(1), 1).member
    assert kn_membership(C, 3).member


def _residue_oracle(x: LieElement, n: int) -> bool:
    sums = {}
    for m, a in x.l_coeffs.items():
        sums[m % n] = sums.get(m % n, ZERO) + a
    return all(s.is_zero() for s in sums.values())


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.dictionaries(st.integers(-9, 9), st.integers(-3, 3), max_size=5), st.integers(-2, 2))
def test_membership_matches_residue_sums(n, coeffs, c):
    x = LieElement(coeffs, c)
    res = kn_membership(x, n)
    assert res.member == _residue_oracle(x, n)
    if res.member:
        assert res.reconstruct() == x


def test_checks_pass():
    assert jacobi_check(4, samples=10, seed=1).passed
    assert k_bracket_check(10).passed
    assert kn_closure_check(1, r_range=range(-8, 9)).passed
    assert kn_closure_check(3, j_range=range(3), r_range=range(-4, 5)).passed


def test_closure_negative_control():
    # [l_1, l_2] gets an extra l_3
    def perturbed(n, m):
        modes, central = virasoro_structure(n, m)
        if (n, m) == (1, 2):
            modes = {p: a + 1 for p, a in modes.items()}
            modes.setdefault(n + m, 1)
        return modes, central

    report = kn_closure_check(2, r_range=range(-2, 3), structure=perturbed)
    assert report.status == "fail" and report.counterexample


@settings(max_examples=60, deadline=None)
@given(*[st.dictionaries(st.integers(-5, 5), st.integers(-3, 3), max_size=3) for _ in range(2)])
def test_antisymmetry_and_theta(a, b):
    x, y = LieElement(a), LieElement(b)
    assert bracket(x, y) == -bracket(y, x)
    assert bracket(theta(x), theta(y)) == theta(bracket(y, x))


def test_gamma_examples():
    for r in range(-4, 5):
        assert gamma(1, KCombination.k(r)) == KCombination.k(r)
    assert gamma(2, KCombination.k(1)) == KCombination({2: F(1, 2)}, F(1, 16))
    assert gamma(2, KCombination.central()) == KCombination.central(2)


def test_gamma_endomorphism():
    for r in (1, 2, 3):
        assert gamma_endo_check(r, 6).passed


def test_gamma_without_shift_fails_on_2_minus_2():
    report = gamma_endo_check(2, 6, with_shift=False)
    assert report.status == "fail"
    pairs = next(d["failing_pairs"] for d in report.details if "failing_pairs" in d)
    assert [2, -2] in pairs


def test_k_bracket_is_bracket_of_expansions():
    x = KCombination({1: ONE, -3: Scalar.coerce(2)})
    y = KCombination({2: I, -1: ONE}, 5)
    assert k_bracket(x, y).expand() == bracket(x.expand(), y.expand())


# The functionals on K_n vanishing on [K_n, K_n].


@pytest.mark.parametrize("n", [1, 2, 3])
def test_functional_forces_central_value(n):
    sol = bracket_functional_solver(n, 12)
    assert all(v.phi_c.is_zero() for v in sol.basis)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_r_equal_r_solves_system(n):
    # phi(k_{rn}) = r, phi(C) = 0 is a nonzero solution of the full system
    names, rows = functional_system(n, 12)
    vec = [ZERO] + [Scalar.coerce(int(nm)) for nm in names[1:]]
    for row in rows:
        assert sum((a * b for a, b in zip(row, vec)), ZERO).is_zero()
    sol = bracket_functional_solver(n, 12)
    assert sol.dimension == 1
    (v,) = sol.basis
    ratio = v.phi[1]
    assert all(v.phi[r] == ratio * r for r in v.phi)


def test_functional_without_delta_frees_central_value():
    sol = bracket_functional_solver(1, 12, with_delta=False)
    assert any(not v.phi_c.is_zero() for v in sol.basis)


def test_functional_solver_rejects_small_window():
    with pytest.raises(ValueError):
        bracket_functional_solver(1, 4)

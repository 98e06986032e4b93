"""Acceptance criteria, one test (and one printed PASS/FAIL line) each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or
``python3 tests/test_acceptance.py`` for a plain summary.  All comparisons
are exact.
"""

from __future__ import annotations

import time
from fractions import Fraction

from virk.coeff import ALPHA, I, ZERO
from virk.fock import (
    C_ALPHA,
    crosscheck_universal,
    current_virasoro_check,
    fock_space,
    k_alpha_relations_check,
    rho2_eigen_analysis,
)
from virk.kreduce import (
    h0_spanning_check,
    k_monomial_span_check,
    lowest_k_eigen_check,
    universal_crosscheck_verma,
)
from virk.liealg import (
    KCombination,
    bracket_functional_solver,
    gamma,
    gamma_endo_check,
    k_bracket_check,
    kn_closure_check,
)
from virk.verma import discrete_series, psd_check

F = Fraction
POINTS = [(F(3), F(1, 5)), (F(1, 2), F(1, 16)), (F(5, 2), F(0))]


def criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


def test_01_k_bracket_closed_form():
    report, dt = timed(k_bracket_check, 10)
    criterion(1, "closed k-bracket equals l-basis expansion, |r|,|m| <= 10", report.passed and dt < 1, f"{dt:.2f}s")


def test_02_kn_closure():
    t = time.perf_counter()
    reports = [kn_closure_check(n, j_range=range(n), r_range=range(-4, 5)) for n in (1, 2, 3)]
    dt = time.perf_counter() - t
    criterion(2, "K_n closed under the bracket, n = 1, 2, 3", all(r.passed for r in reports) and dt < 1, f"{dt:.2f}s")


def test_03_gamma_endomorphism():
    ok = all(gamma_endo_check(r, 6).passed for r in (2, 3))
    ident = all(gamma(1, KCombination.k(r)) == KCombination.k(r) for r in range(-6, 7))
    ident = ident and gamma(1, KCombination.central()) == KCombination.central()
    criterion(3, "gamma_2, gamma_3 are theta-compatible endomorphisms; gamma_1 = id", ok and ident)


def test_04_functional_solver_forces_zero():
    dims, central_zero = {}, True
    for n in (1, 2, 3):
        sol = bracket_functional_solver(n, 12)
        dims[n] = sol.dimension
        central_zero = central_zero and all(v.phi_c.is_zero() for v in sol.basis)
    ok = central_zero and all(d == 0 for d in dims.values())
    detail = f"inner solution dimensions {dims}; phi(C) forced to 0: {central_zero}"
    if not ok and central_zero:
        detail += "; phi_r = r, phi(C) = 0 survives"
    criterion(4, "functional system forces phi(C) = 0 and phi_r = 0 for |r| <= 6", ok, detail)


def test_05_discrete_series_positivity():
    t = time.perf_counter()
    series = {(c, h) for c, h, _, _ in discrete_series(1)}
    expected = {(F(1, 2), F(0)), (F(1, 2), F(1, 2)), (F(1, 2), F(1, 16))}
    positive = all(psd_check(6, c, h).passed for c, h in sorted(series))
    bad = psd_check(6, F(1, 2), F(1, 3))
    dt = time.perf_counter() - t
    ok = series == expected and positive and bad.status == "fail" and dt < 30
    lvl = bad.counterexample["level"] if bad.counterexample else None
    criterion(5, "m = 1 series positive to level 6; (1/2, 1/3) is not", ok, f"negative at level {lvl}, {dt:.2f}s")


def test_06_k_monomials_span():
    ok = all(k_monomial_span_check(c, h, 6).passed for c, h in POINTS)
    criterion(6, "K-monomial Gram ranks equal unitary dimensions, levels <= 6", ok)


def test_07_lowest_energy_eigen():
    ok = all(lowest_k_eigen_check(c, h, 6, 3).passed for c, h in POINTS)
    criterion(7, "K_n Psi = h Psi for 0 < n <= 6, unique to level 3", ok)


def test_08_h0_spanning():
    ok = all(h0_spanning_check(c, 6).passed for c in (F(3), F(1, 2)))
    criterion(8, "h = 0 family spans every unitary level <= 6, c = 3, 1/2", ok)


def test_09_sugawara():
    ok = current_virasoro_check(3, 6, 0).passed and current_virasoro_check(3, 6, 1).passed
    criterion(9, "Sugawara [L, J] and Virasoro relations with c = 1, q = 0, 1", ok)


def test_10_k_alpha_relations():
    report, dt = timed(k_alpha_relations_check, 4, 6, 0)
    criterion(10, "K^alpha satisfy the k-bracket with C = 1 + 12 alpha^2", report.passed and dt < 120, f"{dt:.1f}s")


def test_11_two_vectors():
    act = rho2_eigen_analysis(6)
    space = fock_space(0)
    low, high = act.eigenvalues
    overlap = space.inner(space.lowest(), act.phi(space))
    ok = (
        act.modes_checked == list(range(1, 7))
        and low == C_ALPHA / 16
        and high == (C_ALPHA + 8) / 16
        and overlap == act.beta
        and not overlap.is_zero()
        and overlap.is_imaginary()
        and overlap.is_odd()
        and act.beta == -I * ALPHA * 2
    )
    criterion(11, "eigenvalues (1+12a^2)/16, (9+12a^2)/16; <Omega, Phi> = beta != 0", ok, f"beta = {act.beta}")


def test_12_universal_product():
    t = time.perf_counter()
    verma_ok = all(universal_crosscheck_verma(c, h, 4).passed for c, h in POINTS)
    fock_ok = crosscheck_universal(3).passed
    dt = time.perf_counter() - t
    criterion(12, "universal product agrees with Verma and Fock orbits", verma_ok and fock_ok and dt < 120, f"{dt:.2f}s")


def test_13_negative_controls():
    g = gamma_endo_check(2, 6, with_shift=False)
    k = k_alpha_relations_check(2, 3, 0, drop_abs_term=True)
    sol = bracket_functional_solver(1, 12, with_delta=False)
    free_c = any(v.phi_c != ZERO for v in sol.basis)
    ok = g.status == "fail" and g.counterexample and k.status == "fail" and k.counterexample and free_c
    criterion(13, "dropping the C/24, 1/|n| or delta term yields a counterexample", bool(ok))


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

"""Symbolic Virasoro algebra, the subalgebras K_n and the maps gamma_r.

Elements are finite combinations of ``l_n`` and the central ``C`` with
:class:`~virk.coeff.Scalar` coefficients.  ``k_{j,r} = l_j - l_{r+j}``; the
n-point subalgebra ``K_n`` is spanned by ``k_{j,rn}`` (``0 <= j < n``) and C.
"""

from __future__ import annotations

import random

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Tuple

from .coeff import ONE, ZERO, Scalar
from .coeff import linalg
from .report import Report, Timer


def _clean(coeffs: Mapping) -> Dict:
    return {k: Scalar.coerce(v) for k, v in coeffs.items() if not Scalar.coerce(v).is_zero()}


@dataclass(frozen=True)
class LieElement:
    """``sum_n l_coeffs[n] * l_n + c_coeff * C``."""

    l_coeffs: Mapping[int, Scalar] = field(default_factory=dict)
    c_coeff: Scalar = ZERO

    def __post_init__(self):
        object.__setattr__(self, "l_coeffs", _clean(self.l_coeffs))
        object.__setattr__(self, "c_coeff", Scalar.coerce(self.c_coeff))

    @classmethod
    def l(cls, n: int, coeff=ONE) -> "LieElement":
        return cls({n: coeff})

    @classmethod
    def central(cls, coeff=ONE) -> "LieElement":
        return cls({}, coeff)

    def modes(self) -> list[int]:
        return sorted(self.l_coeffs)

    def is_zero(self) -> bool:
        return not self.l_coeffs and self.c_coeff.is_zero()

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.l_coeffs)
        for n, a in other.l_coeffs.items():
            out[n] = out.get(n, ZERO) + a
        return LieElement(out, self.c_coeff + other.c_coeff)

    def __neg__(self) -> "LieElement":
        return LieElement({n: -a for n, a in self.l_coeffs.items()}, -self.c_coeff)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, s) -> "LieElement":
        s = Scalar.coerce(s)
        return LieElement({n: s * a for n, a in self.l_coeffs.items()}, s * self.c_coeff)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return dict(self.l_coeffs) == dict(other.l_coeffs) and self.c_coeff == other.c_coeff

    def __hash__(self):
        return hash((frozenset(self.l_coeffs.items()), self.c_coeff))

    def __str__(self) -> str:
        parts = [f"({a})*l_{n}" for n, a in sorted(self.l_coeffs.items())]
        if not self.c_coeff.is_zero():
            parts.append(f"({self.c_coeff})*C")
        return " + ".join(parts) if parts else "0"


def virasoro_structure(n: int, m: int) -> Tuple[Dict[int, Fraction], Fraction]:
    """``[l_n, l_m]`` as ``({n+m: n-m}, central part)``."""
    central = Fraction(n ** 3 - n, 12) if n == -m else Fraction(0)
    return ({n + m: Fraction(n - m)} if n != m else {}), central


StructureFn = Callable[[int, int], Tuple[Dict[int, Fraction], Fraction]]


def bracket(x: LieElement, y: LieElement, structure: StructureFn = virasoro_structure) -> LieElement:
    """Bilinear extension of ``structure`` on the l-modes; C is central."""
    out: Dict[int, Scalar] = {}
    central = ZERO
    for n, a in x.l_coeffs.items():
        for m, b in y.l_coeffs.items():
            ab = a * b
            modes, cpart = structure(n, m)
            for p, coeff in modes.items():
                out[p] = out.get(p, ZERO) + ab * coeff
            if cpart:
                central = central + ab * cpart
    return LieElement(out, central)


def theta(x: LieElement) -> LieElement:
    """Antilinear involution ``l_n -> l_{-n}``, ``C -> C``."""
    return LieElement({-n: a.conj() for n, a in x.l_coeffs.items()}, x.c_coeff.conj())


@dataclass(frozen=True)
class KIndex:
    """``k_{j, r*n} = l_j - l_{r*n + j}`` inside K_n."""

    j: int
    r: int
    n: int = 1

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.j < self.n:
            raise ValueError(f"need 0 <= j < n, got j={self.j}, n={self.n}")


def k_expand(idx: KIndex) -> LieElement:
    if idx.r == 0:
        return LieElement()
    return LieElement({idx.j: ONE, idx.r * idx.n + idx.j: -ONE})


def k(r: int) -> LieElement:
    """``k_r = l_0 - l_r``."""
    return k_expand(KIndex(0, r, 1))


# -- abstract k-combinations (n = 1) ------------------------------------------


@dataclass(frozen=True)
class KCombination:
    """``sum_r coeffs[r] * k_r + c_coeff * C`` with ``k_0 = 0`` dropped."""

    coeffs: Mapping[int, Scalar] = field(default_factory=dict)
    c_coeff: Scalar = ZERO

    def __post_init__(self):
        cleaned = {r: a for r, a in _clean(self.coeffs).items() if r != 0}
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "c_coeff", Scalar.coerce(self.c_coeff))

    @classmethod
    def k(cls, r: int, coeff=ONE) -> "KCombination":
        return cls({r: coeff})

    @classmethod
    def central(cls, coeff=ONE) -> "KCombination":
        return cls({}, coeff)

    def __add__(self, other: "KCombination") -> "KCombination":
        out = dict(self.coeffs)
        for r, a in other.coeffs.items():
            out[r] = out.get(r, ZERO) + a
        return KCombination(out, self.c_coeff + other.c_coeff)

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "KCombination":
        s = Scalar.coerce(s)
        return KCombination({r: s * a for r, a in self.coeffs.items()}, s * self.c_coeff)

    def expand(self) -> LieElement:
        out = LieElement.central(self.c_coeff)
        for r, a in self.coeffs.items():
            out = out + k(r).scale(a)
        return out

    def theta(self) -> "KCombination":
        return KCombination({-r: a.conj() for r, a in self.coeffs.items()}, self.c_coeff.conj())

    def __eq__(self, other):
        if not isinstance(other, KCombination):
            return NotImplemented
        return dict(self.coeffs) == dict(other.coeffs) and self.c_coeff == other.c_coeff

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.c_coeff))

    def __str__(self) -> str:
        parts = [f"({a})*k_{r}" for r, a in sorted(self.coeffs.items())]
        if not self.c_coeff.is_zero():
            parts.append(f"({self.c_coeff})*C")
        return " + ".join(parts) if parts else "0"


def k_bracket_closed(r: int, m: int) -> KCombination:
    """``[k_r, k_m] = r k_r - m k_m - (r-m) k_{r+m} + C/12 (r^3-r) delta_{-r,m}``."""
    if r == 0 or m == 0:
        return KCombination()
    terms: Dict[int, Scalar] = {}
    for idx, coeff in ((r, r), (m, -m), (r + m, -(r - m))):
        terms[idx] = terms.get(idx, ZERO) + coeff
    central = Fraction(r ** 3 - r, 12) if r == -m else 0
    return KCombination(terms, central)


def k_bracket(x: KCombination, y: KCombination) -> KCombination:
    """Bracket of k-combinations through the closed form only."""
    out = KCombination()
    for r, a in x.coeffs.items():
        for m, b in y.coeffs.items():
            out = out + k_bracket_closed(r, m).scale(a * b)
    return out


# -- membership in K_n ---------------------------------------------------------


@dataclass
class Membership:
    member: bool
    coords: Dict[KIndex, Scalar] = field(default_factory=dict)
    c_coeff: Scalar = ZERO

    def reconstruct(self) -> LieElement:
        out = LieElement.central(self.c_coeff)
        for idx, a in self.coords.items():
            out = out + k_expand(idx).scale(a)
        return out


def kn_membership(x: LieElement, n: int) -> Membership:
    """Express ``x`` in the ``k_{j,rn}``/C basis over the mode window of ``x``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    window = sorted(set(x.modes()) | set(range(n)))
    basis = [
        KIndex(j, (m - j) // n, n)
        for j in range(n)
        for m in window
        if m != j and (m - j) % n == 0
    ]
    rows = [[ZERO] * (len(basis) + 1) for _ in range(len(window) + 1)]
    pos = {m: i for i, m in enumerate(window)}
    for col, idx in enumerate(basis):
        rows[pos[idx.j]][col] = ONE
        rows[pos[idx.j + idx.r * n]][col] = -ONE
    rows[len(window)][len(basis)] = ONE
    rhs = [x.l_coeffs.get(m, ZERO) for m in window] + [x.c_coeff]
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return Membership(False)
    coords = {idx: a for idx, a in zip(basis, sol[:-1]) if not a.is_zero()}
    return Membership(True, coords, sol[-1])


def kn_basis(n: int, j_range: Iterable[int], r_range: Iterable[int]) -> list[KIndex]:
    return [KIndex(j, r, n) for j in j_range for r in r_range if r != 0]


def kn_closure_check(
    n: int,
    j_range: Iterable[int] | None = None,
    r_range: Iterable[int] = range(-4, 5),
    structure: StructureFn = virasoro_structure,
) -> Report:
    """Brackets of basis pairs (and with C) stay in K_n."""
    j_range = list(range(n) if j_range is None else j_range)
    r_range = list(r_range)
    report = Report("kn-closure", {"n": n, "j": j_range, "r": [min(r_range), max(r_range)]})
    with Timer(report):
        elems = [(str(idx), k_expand(idx)) for idx in kn_basis(n, j_range, r_range)]
        elems.append(("C", LieElement.central()))
        checked = 0
        for name_x, x in elems:
            for name_y, y in elems:
                z = bracket(x, y, structure)
                res = kn_membership(z, n)
                checked += 1
                if not res.member or res.reconstruct() != z:
                    report.fail({"x": name_x, "y": name_y, "bracket": str(z)})
                    return report
        report.add(pairs=checked)
    return report


# -- gamma_r ---------------------------------------------------------------------


def gamma(r: int, x: KCombination, with_shift: bool = True) -> KCombination:
    """``k_n -> k_{rn}/r + C/24 (r - 1/r)`` for n != 0, ``C -> rC``."""
    if r < 1:
        raise ValueError("gamma_r needs a positive integer r")
    shift = Fraction(r * r - 1, 24 * r) if with_shift else Fraction(0)
    out = KCombination.central(x.c_coeff * r)
    for m, a in x.coeffs.items():
        out = out + KCombination({r * m: a * Fraction(1, r)}, a * shift)
    return out


def gamma_endo_check(r: int, bound: int = 6, with_shift: bool = True) -> Report:
    """gamma_r respects brackets and commutes with theta on ``|a|, |b| <= bound``.

    Every failing pair is listed in the details; the first one is the
    counterexample.
    """
    report = Report("gamma-endo", {"r": r, "bound": bound, "shift": with_shift})
    failures = []
    with Timer(report):
        rng = [a for a in range(-bound, bound + 1) if a != 0]
        for a in rng:
            ka = KCombination.k(a)
            if gamma(r, ka, with_shift).theta() != gamma(r, ka.theta(), with_shift):
                failures.append({"a": a, "law": "theta"})
            for b in rng:
                kb = KCombination.k(b)
                lhs = gamma(r, k_bracket(ka, kb), with_shift)
                rhs = k_bracket(gamma(r, ka, with_shift), gamma(r, kb, with_shift))
                if lhs != rhs:
                    failures.append({"a": a, "b": b, "law": "bracket", "lhs": str(lhs), "rhs": str(rhs)})
        c = KCombination.central()
        if gamma(r, c, with_shift).theta() != gamma(r, c.theta(), with_shift):
            failures.append({"a": "C", "law": "theta"})
        report.add(pairs=len(rng) ** 2, failures=len(failures))
        if failures:
            report.add(failing_pairs=[[f["a"], f.get("b")] for f in failures])
            report.fail(failures[0])
    return report


# -- functionals vanishing on [K_n, K_n] -----------------------------------------


@dataclass
class FunctionalVector:
    """Values ``phi(C)`` and ``phi_r = phi(k_{rn})``; ``phi_0 = 0``."""

    phi_c: Scalar
    phi: Dict[int, Scalar]

    def __post_init__(self):
        self.phi = {r: a for r, a in self.phi.items() if r != 0}


@dataclass
class FunctionalSolution:
    n: int
    R: int
    unknowns: list[str]
    equations: int
    rank: int
    basis: list[FunctionalVector]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def functional_system(n: int, R: int, with_delta: bool = True) -> Tuple[list[str], list[list[Scalar]]]:
    """Rows of ``r phi_r - m phi_m - (r-m) phi_{r+m} + phi(C)/12 (n^2 r^3 - r) delta_{-r,m}``.

    Only equations whose indices all lie in ``[-R, R]`` are imposed.
    """
    index = [r for r in range(-R, R + 1) if r != 0]
    col = {r: i + 1 for i, r in enumerate(index)}
    rows = []
    for r in range(-R, R + 1):
        for m in range(-R, R + 1):
            if abs(r + m) > R:
                continue
            row = [ZERO] * (len(index) + 1)
            for idx, coeff in ((r, r), (m, -m), (r + m, -(r - m))):
                if idx != 0:
                    row[col[idx]] = row[col[idx]] + coeff
            if with_delta and r == -m:
                row[0] = Scalar.coerce(Fraction(n * n * r ** 3 - r, 12))
            if any(not x.is_zero() for x in row):
                rows.append(row)
    return ["C"] + [str(r) for r in index], rows


def functional_system_from_brackets(n: int, R: int) -> list[list[Scalar]]:
    """The same system rebuilt from ``[k_{rn}, k_{mn}]`` via the closed form."""
    index = [r for r in range(-R, R + 1) if r != 0]
    col = {r: i + 1 for i, r in enumerate(index)}
    rows = []
    for r in range(-R, R + 1):
        for m in range(-R, R + 1):
            if abs(r + m) > R:
                continue
            comb = k_bracket_closed(r * n, m * n).scale(Fraction(1, n))
            row = [ZERO] * (len(index) + 1)
            for idx, a in comb.coeffs.items():
                row[col[idx // n]] = a
            row[0] = comb.c_coeff
            if any(not x.is_zero() for x in row):
                rows.append(row)
    return rows


def bracket_functional_solver(n: int, R: int = 12, with_delta: bool = True) -> FunctionalSolution:
    """Solutions of the truncated system, restricted to ``|r| <= R // 2``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if R < 6:
        raise ValueError("R too small to impose any interior equation (need R >= 6)")
    names, rows = functional_system(n, R, with_delta)
    null = linalg.nullspace(rows, ncols=len(names))
    inner = R // 2
    keep = [0] + [i for i, nm in enumerate(names) if nm != "C" and abs(int(nm)) <= inner]
    projected = [[v[i] for i in keep] for v in null]
    basis = []
    if projected:
        rref, pivots = linalg.row_reduce(projected)
        for row in rref[: len(pivots)]:
            phi = {int(names[i]): row[p] for p, i in enumerate(keep) if p > 0}
            basis.append(FunctionalVector(row[0], phi))
    return FunctionalSolution(n, R, names, len(rows), linalg.rank(rows), basis)


# -- checks used by the front end ----------------------------------------------


def jacobi_check(bound: int = 6, samples: int = 0, seed: int = 0) -> Report:
    """Antisymmetry, theta and Jacobi on the grid ``|a|, |b|, |c| <= bound``.

    ``samples`` extra Jacobi triples are drawn from ``|a| <= 4 * bound`` with
    a generator seeded by ``seed``.
    """
    report = Report("vir-jacobi", {"bound": bound, "samples": samples, "seed": seed})
    with Timer(report):
        rng = range(-bound, bound + 1)
        draw = random.Random(seed)
        wide = 4 * bound
        for _ in range(samples):
            x, y, z = (LieElement.l(draw.randint(-wide, wide)) for _ in range(3))
            j = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)
            if not j.is_zero():
                report.fail({"x": str(x), "y": str(y), "z": str(z), "law": "jacobi", "value": str(j)})
                return report
        for a in rng:
            for b in rng:
                x, y = LieElement.l(a), LieElement.l(b)
                if bracket(x, y) != -bracket(y, x):
                    report.fail({"a": a, "b": b, "law": "antisymmetry"})
                    return report
                if bracket(theta(x), theta(y)) != theta(bracket(y, x)):
                    report.fail({"a": a, "b": b, "law": "theta"})
                    return report
                for c in rng:
                    z = LieElement.l(c)
                    j = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)
                    if not j.is_zero():
                        report.fail({"a": a, "b": b, "c": c, "law": "jacobi", "value": str(j)})
                        return report
        report.add(triples=len(rng) ** 3, sampled=samples)
    return report


def k_bracket_check(rmax: int = 10) -> Report:
    """Closed form of ``[k_r, k_m]`` against the l-basis expansion."""
    report = Report("k-bracket", {"rmax": rmax})
    with Timer(report):
        for r in range(-rmax, rmax + 1):
            for m in range(-rmax, rmax + 1):
                lhs = bracket(k(r), k(m))
                rhs = k_bracket_closed(r, m).expand()
                if lhs != rhs:
                    report.fail({"r": r, "m": m, "expanded": str(lhs), "closed": str(rhs)})
                    return report
        report.add(pairs=(2 * rmax + 1) ** 2)
    return report


def functional_solver_check(n: int, R: int = 12, with_delta: bool = True) -> Report:
    """Passes only if the truncated system forces every inner unknown to zero.

    Details separate the central value from the ``phi_r``: ``phi_c_forced_zero``
    records whether every solution has ``phi(C) = 0``.
    """
    report = Report("functional-solver", {"n": n, "R": R, "delta": with_delta})
    with Timer(report):
        sol = bracket_functional_solver(n, R, with_delta)
        if with_delta:
            names, rows = functional_system(n, R)
            rebuilt = functional_system_from_brackets(n, R)
            if not (linalg.rank(rebuilt) == sol.rank == linalg.rank(rows + rebuilt)):
                report.fail({"reason": "system disagrees with the closed-form brackets"})
                return report
        forced = all(v.phi_c.is_zero() for v in sol.basis)
        report.add(
            unknowns=len(sol.unknowns),
            equations=sol.equations,
            rank=sol.rank,
            inner_dimension=sol.dimension,
            phi_c_forced_zero=forced,
        )
        if sol.dimension:
            v = sol.basis[0]
            report.fail({"phi_C": str(v.phi_c), "phi": {str(r): str(a) for r, a in sorted(v.phi.items()) if a}})
    return report

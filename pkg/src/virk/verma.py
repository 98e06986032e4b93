"""Lowest-energy Virasoro modules over exact parameters.

The basis vector labelled by a partition ``(n_1 >= ... >= n_k)`` is
``L_{-n_1} ... L_{-n_k} Psi``.  The unitary module is realised as this
Verma-type module modulo the radical of its contravariant form, so the
dimension of a unitary level is a Gram rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Sequence

from .coeff import ONE, ZERO, Scalar
from .coeff import linalg
from .partitions import Partition, partitions
from .report import Report, Timer
from .vectors import PartitionVector, add_into

# -- admissible pairs ---------------------------------------------------------


def central_charge(m: int) -> Fraction:
    return 1 - Fraction(6, (m + 2) * (m + 3))


def kac_weight(m: int, p: int, q: int) -> Fraction:
    return Fraction(((m + 3) * p - (m + 2) * q) ** 2 - 1, 4 * (m + 2) * (m + 3))


def discrete_series(m: int) -> list[tuple[Fraction, Fraction, int, int]]:
    """``(c(m), h_{p,q}(m), p, q)`` for ``1 <= q <= p <= m + 1``."""
    if m < 0:
        raise ValueError("m must be a non-negative integer")
    c = central_charge(m)
    return [(c, kac_weight(m, p, q), p, q) for p in range(1, m + 2) for q in range(1, p + 1)]


@dataclass(frozen=True)
class AdmissiblePair:
    c: Fraction
    h: Fraction
    kind: str  # continuous | discrete | trivial | inadmissible
    m: int | None = None
    p: int | None = None
    q: int | None = None

    @property
    def admissible(self) -> bool:
        return self.kind != "inadmissible"

    def __str__(self) -> str:
        if self.kind == "discrete":
            return f"discrete(m={self.m}, p={self.p}, q={self.q})"
        return self.kind


def is_admissible(c, h) -> AdmissiblePair:
    c, h = Fraction(c), Fraction(h)
    if c == 0 and h == 0:
        return AdmissiblePair(c, h, "trivial")
    if c >= 1:
        return AdmissiblePair(c, h, "continuous" if h >= 0 else "inadmissible")
    if c < 0:
        return AdmissiblePair(c, h, "inadmissible")
    # c(m) = c  <=>  (m+2)(m+3) = 6/(1-c)
    target = Fraction(6) / (1 - c)
    if target.denominator == 1:
        t = target.numerator
        m = (math.isqrt(4 * t + 1) - 5) // 2
        if m >= 0 and (m + 2) * (m + 3) == t:
            for _, hh, p, q in discrete_series(m):
                if hh == h:
                    return AdmissiblePair(c, h, "discrete", m, p, q)
    return AdmissiblePair(c, h, "inadmissible")


# -- the module -----------------------------------------------------------------


class VermaVector(PartitionVector):
    __slots__ = ()


class VermaModule:
    """PBW module with central charge ``c`` and lowest energy ``h``.

    ``c`` and ``h`` may be rationals or :class:`Scalar` polynomials in alpha.
    Basis actions are memoised per module.
    """

    def __init__(self, c, h):
        self.c = Scalar.coerce(c)
        self.h = Scalar.coerce(h)
        self._act: Dict[tuple[int, Partition], Dict[Partition, Scalar]] = {}
        self._pair: Dict[tuple[Partition, Partition], Scalar] = {}
        self._gram: Dict[int, "GramMatrix"] = {}

    @property
    def key(self):
        return ("verma", self.c, self.h)

    def __eq__(self, other):
        return isinstance(other, VermaModule) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"VermaModule(c={self.c}, h={self.h})"

    def is_rational(self) -> bool:
        return self.c.is_constant() and self.c.is_real() and self.h.is_constant() and self.h.is_real()

    # vectors

    def vector(self, coeffs) -> VermaVector:
        return VermaVector(self, coeffs)

    def lowest(self) -> VermaVector:
        return self.vector({(): ONE})

    def basis_vector(self, p: Iterable[int]) -> VermaVector:
        return self.vector({tuple(p): ONE})

    def basis(self, level: int) -> tuple[Partition, ...]:
        return partitions(level)

    # actions

    def _basis_act(self, m: int, lam: Partition) -> Dict[Partition, Scalar]:
        key = (m, lam)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        if m == 0:
            coeff = self.h + sum(lam)
            out = {lam: coeff} if not coeff.is_zero() else {}
        elif not lam:
            out = {} if m > 0 else {(-m,): ONE}
        elif m < 0 and -m >= lam[0]:
            out = {(-m,) + lam: ONE}
        elif m < 0:
            # L_{-p} L_{-n1} = L_{-n1} L_{-p} + (n1 - p) L_{-p-n1}
            p, n1, rest = -m, lam[0], lam[1:]
            out = {}
            for mu, a in self._basis_act(m, rest).items():
                add_into(out, self._basis_act(-n1, mu), a)
            add_into(out, self._basis_act(m - n1, rest), Scalar.coerce(n1 - p))
        else:
            # L_m L_{-n1} = L_{-n1} L_m + (m + n1) L_{m-n1} + delta c/12 (m^3 - m)
            n1, rest = lam[0], lam[1:]
            out = {}
            for mu, a in self._basis_act(m, rest).items():
                add_into(out, self._basis_act(-n1, mu), a)
            add_into(out, self._basis_act(m - n1, rest), Scalar.coerce(m + n1))
            if m == n1:
                add_into(out, {rest: self.c * Fraction(m ** 3 - m, 12)})
        self._act[key] = out
        return out

    def act_l(self, n: int, v: VermaVector) -> VermaVector:
        self._own(v)
        out: Dict[Partition, Scalar] = {}
        for lam, a in v.coeffs.items():
            add_into(out, self._basis_act(n, lam), a)
        return self.vector(out)

    def act_k(self, n: int, v: VermaVector) -> VermaVector:
        """``K_n = L_0 - L_n``."""
        if n == 0:
            return self.vector({})
        return self.act_l(0, v) - self.act_l(n, v)

    def act_lie(self, x, v: VermaVector) -> VermaVector:
        """Action of a :class:`~virk.liealg.LieElement`."""
        out = v.scale(self.c * x.c_coeff)
        for n, a in x.l_coeffs.items():
            out = out + self.act_l(n, v).scale(a)
        return out

    def _own(self, v: PartitionVector) -> None:
        if v.space != self:
            raise ValueError(f"vector belongs to {v.space}, not {self}")

    # contravariant form

    def _basis_inner(self, lam: Partition, mu: Partition) -> Scalar:
        if sum(lam) != sum(mu):
            return ZERO
        key = (lam, mu)
        hit = self._pair.get(key)
        if hit is not None:
            return hit
        # <L_{-l1}...L_{-lk} Psi, w> = <Psi, L_{lk} ... L_{l1} w>
        vec = {mu: ONE}
        for part in lam:
            nxt: Dict[Partition, Scalar] = {}
            for nu, a in vec.items():
                add_into(nxt, self._basis_act(part, nu), a)
            vec = nxt
        value = vec.get((), ZERO)
        self._pair[key] = value
        return value

    def inner(self, v: VermaVector, w: VermaVector) -> Scalar:
        """Sesquilinear form, antilinear in ``v``."""
        if v.space != w.space:
            raise ValueError("inner product of vectors with different (c, h)")
        self._own(v)
        total = ZERO
        for lam, a in v.coeffs.items():
            for mu, b in w.coeffs.items():
                if sum(lam) == sum(mu):
                    g = self._basis_inner(lam, mu)
                    if not g.is_zero():
                        total = total + a.conj() * b * g
        return total

    def gram(self, level: int) -> "GramMatrix":
        if level < 0:
            raise ValueError("level must be non-negative")
        hit = self._gram.get(level)
        if hit is None:
            basis = list(self.basis(level))
            entries = [[self._basis_inner(a, b) for b in basis] for a in basis]
            hit = GramMatrix.build(level, basis, entries)
            self._gram[level] = hit
        return hit

    def coordinates(self, v: VermaVector, level: int) -> list[Scalar]:
        return [v.coefficient(p) for p in self.basis(level)]

    def family_gram(self, vectors: Sequence[VermaVector]) -> list[list[Scalar]]:
        """Matrix of inner products of an arbitrary family."""
        return [[self.inner(a, b) for b in vectors] for a in vectors]

    def is_null(self, v: VermaVector) -> bool:
        """True iff ``v`` lies in the radical of the form."""
        for lv in v.levels():
            g = self.gram(lv)
            coords = self.coordinates(v, lv)
            if any(not x.is_zero() for x in linalg.mat_vec(g.entries, coords)):
                return False
        return True


@dataclass
class GramMatrix:
    level: int
    basis: list[Partition]
    entries: list[list[Scalar]]
    rank: int
    radical: list[list[Scalar]] | None = field(default=None)

    @classmethod
    def build(cls, level, basis, entries) -> "GramMatrix":
        if all(x.is_constant() for row in entries for x in row):
            radical = linalg.nullspace(entries, ncols=len(basis))
            return cls(level, basis, entries, len(basis) - len(radical), radical)
        return cls(level, basis, entries, linalg.generic_rank(entries), None)

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_hermitian(self) -> bool:
        return linalg.is_hermitian(self.entries)


_MODULES: Dict[tuple, VermaModule] = {}


def module(c, h) -> VermaModule:
    """Shared module instance for ``(c, h)``, so memo tables are reused."""
    key = (Scalar.coerce(c), Scalar.coerce(h))
    mod = _MODULES.get(key)
    if mod is None:
        mod = _MODULES.setdefault(key, VermaModule(*key))
    return mod


def act_l(n: int, v: VermaVector) -> VermaVector:
    return v.space.act_l(n, v)


def act_k(n: int, v: VermaVector) -> VermaVector:
    return v.space.act_k(n, v)


def inner(v: VermaVector, w: VermaVector) -> Scalar:
    return v.space.inner(v, w)


def gram(level: int, c, h) -> GramMatrix:
    return module(c, h).gram(level)


def psd_check(level: int, c, h) -> Report:
    """Positivity of the form on every level ``<= level`` by exact LDL."""
    report = Report("psd", {"c": Fraction(c), "h": Fraction(h), "level": level})
    with Timer(report):
        mod = module(Fraction(c), Fraction(h))
        if not mod.is_rational():
            report.error("positivity needs rational (c, h)")
            return report
        for lv in range(level + 1):
            g = mod.gram(lv)
            sig = linalg.hermitian_ldl(g.entries)
            report.add(level=lv, size=g.size, rank=sig.rank, pivots=[str(p) for p in sig.pivots])
            if not sig.positive:
                witness = mod.vector(dict(zip(g.basis, sig.witness)))
                report.fail({"level": lv, "witness": str(witness), "norm": str(sig.witness_norm)})
                break
    return report


def gram_report(level: int, c, h) -> Report:
    report = Report("gram", {"c": Fraction(c), "h": Fraction(h), "level": level})
    with Timer(report):
        g = gram(level, Fraction(c), Fraction(h))
        if not g.is_hermitian():
            report.fail({"reason": "Gram matrix is not Hermitian", "level": level})
        report.add(
            level=level,
            basis=[list(p) for p in g.basis],
            entries=[[str(x) for x in row] for row in g.entries],
            rank=g.rank,
            radical_dimension=g.size - g.rank,
            radical=[[str(x) for x in v] for v in (g.radical or [])],
        )
    return report


def admissible_report(c, h, m: int | None = None) -> Report:
    report = Report("admissible", {"c": Fraction(c), "h": Fraction(h), "m": m})
    with Timer(report):
        pair = is_admissible(c, h)
        report.add(classification=str(pair), admissible=pair.admissible)
        if m is not None:
            series = discrete_series(m)
            report.add(m=m, series=[[str(cc), str(hh), p, q] for cc, hh, p, q in series])
            if any(hh < 0 for _, hh, _, _ in series):
                report.fail({"reason": "negative lowest energy in the discrete series", "m": m})
    return report

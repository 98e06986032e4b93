"""Calculus on the k-side of a lowest-energy module.

Two independent routes to the same numbers:

* :func:`universal_sp` uses nothing but the relations of the k-generators,
  ``K_n Psi = h Psi`` for ``n > 0``, ``K_0 = 0``, ``C = c`` and unitarity;
* the Verma realisation ``K_n = L_0 - L_n`` from :mod:`virk.verma`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

from .coeff import ONE, ZERO, Scalar
from .coeff import linalg
from .liealg import LieElement, kn_membership
from .partitions import partitions
from .report import Report, Timer
from .verma import VermaModule, VermaVector, module

KMonomial = Tuple[int, ...]


def k_monomials(energy: int) -> tuple[KMonomial, ...]:
    """All ``K_{-n_1} ... K_{-n_k}`` with ``n_1 >= ... >= n_k > 0`` of given energy."""
    return partitions(energy)


def k_monomials_upto(energy: int) -> list[KMonomial]:
    return [m for e in range(energy + 1) for m in k_monomials(e)]


class UniversalProduct:
    """Scalar products of k-monomial vectors from ``(c, h)`` alone.

    A word ``(a_1, ..., a_s)`` stands for ``<Psi, K_{a_1} ... K_{a_s} Psi>``.
    Positive-index generators are commuted to the right with the closed
    bracket; each rewrite lowers (positive count, positive energy, distance
    of positives from the right end) lexicographically.
    """

    def __init__(self, c, h):
        self.c = Scalar.coerce(c)
        self.h = Scalar.coerce(h)
        self._memo: Dict[tuple[int, ...], Scalar] = {}

    def word(self, w: Sequence[int]) -> Scalar:
        w = tuple(w)
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        value = self._evaluate(w)
        self._memo[w] = value
        return value

    def _evaluate(self, w: tuple[int, ...]) -> Scalar:
        if not w:
            return ONE
        if 0 in w:
            return ZERO
        if w[-1] > 0:
            return self.h * self.word(w[:-1])
        if w[0] < 0:
            # <Psi, K_{-p} X> = <K_p Psi, X>
            return self.h.conj() * self.word(w[1:])
        i = max(idx for idx, a in enumerate(w) if a > 0)
        p, m = w[i], w[i + 1]
        head, tail = w[:i], w[i + 2:]
        # K_p K_m = K_m K_p + p K_p - m K_m - (p - m) K_{p+m} + c/12 (p^3 - p) delta
        total = self.word(head + (m, p) + tail)
        total = total + self.word(head + (p,) + tail) * p
        total = total - self.word(head + (m,) + tail) * m
        if p + m != 0:
            total = total - self.word(head + (p + m,) + tail) * (p - m)
        if p == -m:
            total = total + self.word(head + tail) * self.c * Fraction(p ** 3 - p, 12)
        return total

    def pair(self, left: KMonomial, right: KMonomial) -> Scalar:
        """``<K_{-left} Psi, K_{-right} Psi>``."""
        return self.word(tuple(reversed(left)) + tuple(-n for n in right))


@lru_cache(maxsize=64)
def _universal(c: Scalar, h: Scalar) -> UniversalProduct:
    return UniversalProduct(c, h)


def universal_sp(c, h, left: Iterable[int], right: Iterable[int]) -> Scalar:
    return _universal(Scalar.coerce(c), Scalar.coerce(h)).pair(tuple(left), tuple(right))


def universal_gram(c, h, monomials: Sequence[KMonomial]) -> list[list[Scalar]]:
    up = _universal(Scalar.coerce(c), Scalar.coerce(h))
    return [[up.pair(a, b) for b in monomials] for a in monomials]


def k_monomial_vector(mod: VermaModule, mono: KMonomial) -> VermaVector:
    """``K_{-n_1} ... K_{-n_k} Psi`` realised in the Verma module."""
    v = mod.lowest()
    for n in reversed(mono):
        v = mod.act_k(-n, v)
    return v


def _family_rank(mod: VermaModule, vectors: Sequence[VermaVector]) -> int:
    return linalg.rank(mod.family_gram(vectors)) if vectors else 0


def unitary_dimension(mod: VermaModule, level: int) -> int:
    return mod.gram(level).rank


def k_monomial_span_check(c, h, level: int) -> Report:
    """K-monomials span the unitary module, filtration step by step.

    ``K_{-n}`` is not homogeneous, so the monomials of energy ``<= N`` are
    compared with the direct sum of unitary levels ``<= N``; the increment
    at ``N`` must equal the rank of the level-``N`` Gram matrix.
    """
    c, h = Fraction(c), Fraction(h)
    report = Report("k-span", {"c": c, "h": h, "level": level})
    with Timer(report):
        mod = module(c, h)
        family: list[VermaVector] = []
        prev = 0
        for e in range(level + 1):
            family.extend(k_monomial_vector(mod, m) for m in k_monomials(e))
            r = _family_rank(mod, family)
            target = unitary_dimension(mod, e)
            report.add(level=e, monomials=len(family), rank_increment=r - prev, unitary_dimension=target)
            if r - prev != target:
                report.fail({"level": e, "rank_increment": r - prev, "unitary_dimension": target})
                break
            prev = r
    return report


def _eigen_system(mod: VermaModule, level: int, nmax: int):
    """Linear conditions ``G (K_n - (h + level)) v = 0`` for ``n = 1..nmax``."""
    basis = list(mod.basis(level))
    lam = mod.h + level
    rows: list[list[Scalar]] = []
    for n in range(1, nmax + 1):
        images = [mod.act_k(n, mod.basis_vector(p)) - mod.basis_vector(p).scale(lam) for p in basis]
        for lv in sorted({lv for w in images for lv in w.levels()}):
            cols = [mod.coordinates(w, lv) for w in images]
            for row in mod.gram(lv).entries:
                rows.append([sum((a * b for a, b in zip(row, col)), ZERO) for col in cols])
    return basis, rows


def lowest_k_eigen_check(c, h, N: int = 6, unique_level: int = 3) -> Report:
    """``K_n Psi = h Psi`` for ``0 < n <= N`` and uniqueness up to ``unique_level``.

    A common eigenvector of all ``K_n`` (n > 0) is an ``L_0``-eigenvector
    (``K_n = L_0`` beyond its level), so uniqueness is decided level by level:
    the solution space modulo the radical must be ``C Psi`` at level 0 and
    zero above.
    """
    c, h = Fraction(c), Fraction(h)
    report = Report("lowest-k-eigen", {"c": c, "h": h, "N": N, "unique_level": unique_level})
    with Timer(report):
        mod = module(c, h)
        psi = mod.lowest()
        for n in range(1, N + 1):
            if mod.act_k(n, psi) != psi.scale(h):
                report.fail({"n": n, "image": str(mod.act_k(n, psi))})
                return report
        report.add(eigen_relations=N)
        for lv in range(unique_level + 1):
            basis, rows = _eigen_system(mod, lv, lv)
            sols = linalg.nullspace(rows, ncols=len(basis))
            vecs = [mod.vector(dict(zip(basis, s))) for s in sols]
            dim = _family_rank(mod, vecs)
            expected = 1 if lv == 0 else 0
            report.add(level=lv, eigen_dimension=dim)
            if dim != expected:
                report.fail({"level": lv, "eigen_dimension": dim, "witness": str(vecs[0]) if vecs else None})
                return report
    return report


def eigen_subalgebra_check(c, h, n: int, x: LieElement) -> dict:
    """Is ``x`` in K_n with ``pi(x) Psi`` proportional to ``Psi`` (mod radical)?"""
    membership = kn_membership(x, n)
    if not membership.member:
        raise ValueError(f"{x} is not in K_{n}")
    mod = module(Fraction(c), Fraction(h))
    image = mod.act_lie(x, mod.lowest())
    lam = image.coefficient(())
    rest = image - mod.lowest().scale(lam)
    eigen = mod.is_null(rest)
    return {"eigen": eigen, "lambda": lam if eigen else None}


# -- vacuum spanning family for K_3 ---------------------------------------------


def residue_partner(a: int) -> int:
    """The ``r`` in ``{0, 1, -1}`` with ``r = a (mod 3)``."""
    return {0: 0, 1: 1, 2: -1}[a % 3]


def vacuum_annihilator(a: int) -> LieElement:
    """``l_a - l_r`` with ``r`` the residue partner of ``a``."""
    return LieElement({a: ONE, residue_partner(a): -ONE})


def h0_family(mod: VermaModule, maxlevel: int) -> list[tuple[tuple[int, ...], VermaVector]]:
    """Words ``A_{a_1}^+ ... A_{a_j}^+ Omega`` with ``a_i >= 2``, ``sum a_i <= maxlevel``.

    ``A_a^+ = L_{-a} - L_{-r}``; generated breadth-first by total index.
    """
    by_energy: dict[int, list[tuple[tuple[int, ...], VermaVector]]] = {0: [((), mod.lowest())]}
    for e in range(2, maxlevel + 1):
        by_energy[e] = []
        for a in range(2, e + 1):
            r = residue_partner(a)
            for word, v in by_energy.get(e - a, []):
                w = mod.act_l(-a, v) - mod.act_l(-r, v)
                by_energy[e].append(((a,) + word, w))
    return [item for e in sorted(by_energy) for item in by_energy[e]]


def h0_spanning_check(c, maxlevel: int = 6) -> Report:
    c = Fraction(c)
    report = Report("h0-span", {"c": c, "maxlevel": maxlevel})
    with Timer(report):
        pair_ok = is_vacuum_admissible(c)
        if not pair_ok:
            report.error(f"(c, 0) = ({c}, 0) is not admissible")
            return report
        mod = module(c, 0)
        for a in range(2, maxlevel + 1):
            x = vacuum_annihilator(a)
            if not kn_membership(x, 3).member:
                report.fail({"a": a, "reason": "annihilator outside K_3"})
                return report
            if not mod.is_null(mod.act_lie(x, mod.lowest())):
                report.fail({"a": a, "reason": "A Omega != 0"})
                return report
        family = h0_family(mod, maxlevel)
        prev = 0
        for e in range(maxlevel + 1):
            vecs = [v for word, v in family if sum(word) <= e]
            r = _family_rank(mod, vecs)
            target = unitary_dimension(mod, e)
            report.add(level=e, family=len(vecs), rank_increment=r - prev, unitary_dimension=target)
            if r - prev != target:
                report.fail({"level": e, "rank_increment": r - prev, "unitary_dimension": target})
                return report
            prev = r
    return report


def is_vacuum_admissible(c) -> bool:
    from .verma import is_admissible

    return is_admissible(c, 0).admissible


def universal_crosscheck_verma(c, h, energy: int = 4) -> Report:
    """Both routes agree on every pair of monomials of energy ``<= energy``."""
    c, h = Fraction(c), Fraction(h)
    report = Report("universal-verma", {"c": c, "h": h, "energy": energy})
    with Timer(report):
        mod = module(c, h)
        monos = k_monomials_upto(energy)
        vecs = {m: k_monomial_vector(mod, m) for m in monos}
        for a in monos:
            for b in monos:
                u = universal_sp(c, h, a, b)
                v = mod.inner(vecs[a], vecs[b])
                if u != v:
                    report.fail({"left": list(a), "right": list(b), "universal": str(u), "verma": str(v)})
                    return report
        report.add(pairs=len(monos) ** 2)
    return report

"""Exact dense linear algebra over Q(i) and the specialisations of Q(i)[alpha].

Matrices are lists of rows.  Entries only need ``+ - *``, ``is_zero()`` and
``inverse()``, so the same routines run on constant :class:`Scalar` values and
on :class:`QuadraticValue` (alpha specialised to a square root).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from .scalar import ONE, ZERO, Scalar

Matrix = List[List]


def _copy(matrix: Sequence[Sequence]) -> Matrix:
    return [list(row) for row in matrix]


def row_reduce(matrix: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Only the first ``ncols`` columns are eligible as pivots, so an augmented
    matrix can carry non-invertible right-hand sides.  Returns ``(rref, pivots)``.
    """
    m = _copy(matrix)
    if not m:
        return m, []
    width = len(m[0])
    ncols = width if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        sel = next((r for r in range(row, len(m)) if not m[r][col].is_zero()), None)
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = m[row][col].inverse()
        m[row] = [x * inv for x in m[row]]
        for r in range(len(m)):
            if r != row and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(row_reduce(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{x : matrix @ x = 0}``."""
    if not matrix:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    width = len(matrix[0])
    rref, pivots = row_reduce(matrix)
    zero = _zero_like(matrix)
    one = _one_like(matrix)
    basis = []
    for free in (c for c in range(width) if c not in pivots):
        vec = [zero] * width
        vec[free] = one
        for r, p in enumerate(pivots):
            vec[p] = -rref[r][free]
        basis.append(vec)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list | None:
    """One solution of ``matrix @ x = rhs`` or ``None`` when inconsistent.

    The coefficient matrix must be invertible-entry (constant) where pivots are
    taken; the right-hand side may hold arbitrary ring elements.
    """
    n = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rref, pivots = row_reduce(aug, ncols=n)
    for r in range(len(pivots), len(rref)):
        if not rref[r][n].is_zero():
            return None
    zero = _zero_like(matrix) if matrix else ZERO
    x = [zero] * n
    for r, p in enumerate(pivots):
        x[p] = rref[r][n]
    return x


def _zero_like(matrix):
    for row in matrix:
        for x in row:
            return x - x
    return ZERO


def _one_like(matrix):
    for row in matrix:
        for x in row:
            if isinstance(x, QuadraticValue):
                return QuadraticValue(ONE, ZERO, x.radicand)
            return ONE
    return ONE


def mat_vec(matrix: Sequence[Sequence], vec: Sequence):
    return [sum((a * b for a, b in zip(row, vec)), ZERO) for row in matrix]


def conj_transpose(matrix: Sequence[Sequence[Scalar]]) -> Matrix:
    if not matrix:
        return []
    return [[matrix[r][c].conj() for r in range(len(matrix))] for c in range(len(matrix[0]))]


def is_hermitian(matrix: Sequence[Sequence[Scalar]]) -> bool:
    return [list(r) for r in matrix] == conj_transpose(matrix)


@dataclass
class HermitianSignature:
    """Outcome of symmetric pivoting on a Hermitian rational matrix."""

    pivots: list[Fraction]
    rank: int
    positive: bool
    witness: list[Scalar] | None = None
    witness_norm: Fraction | None = None
    order: list[int] = field(default_factory=list)


def hermitian_ldl(matrix: Sequence[Sequence[Scalar]]) -> HermitianSignature:
    """Decide positive semidefiniteness of a constant Hermitian matrix.

    Diagonal pivoting on Schur complements.  On failure a coefficient vector of
    negative norm is returned as witness.
    """
    n = len(matrix)
    m = _copy(matrix)
    basis = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    active = list(range(n))
    pivots: list[Fraction] = []
    order: list[int] = []
    while active:
        diag = {k: m[k][k].real_value() for k in active}
        neg = next((k for k in active if diag[k] < 0), None)
        if neg is not None:
            return HermitianSignature(pivots, len(pivots), False, basis[neg], diag[neg], order)
        k = next((k for k in active if diag[k] > 0), None)
        if k is None:
            for i in active:
                for j in active:
                    if i != j and not m[i][j].is_zero():
                        g = m[i][j]
                        w = [a - g.conj() * b for a, b in zip(basis[i], basis[j])]
                        norm = -2 * (g * g.conj()).real_value()
                        return HermitianSignature(pivots, len(pivots), False, w, norm, order)
            pivots.extend(Fraction(0) for _ in active)
            break
        d = m[k][k]
        dinv = d.inverse()
        pivots.append(diag[k])
        order.append(k)
        active.remove(k)
        for i in active:
            mu = m[k][i] * dinv  # <T_k, T_i> / <T_k, T_k>
            if mu.is_zero():
                continue
            basis[i] = [a - mu * b for a, b in zip(basis[i], basis[k])]
        for i in active:
            for j in active:
                if not m[i][k].is_zero() and not m[k][j].is_zero():
                    m[i][j] = m[i][j] - m[i][k] * m[k][j] * dinv
    npos = sum(1 for p in pivots if p > 0)
    return HermitianSignature(pivots, npos, True, None, None, order)


# -- specialising alpha --------------------------------------------------------


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


class QuadraticValue:
    """``x + y*r`` with ``r*r = radicand``; x, y are Gaussian-rational constants.

    A field when the radicand is not a square in Q(i); use
    :func:`specialize_alpha2`, which only builds these for such radicands.
    """

    __slots__ = ("x", "y", "radicand")

    def __init__(self, x: Scalar, y: Scalar, radicand: Fraction):
        self.x, self.y, self.radicand = x, y, radicand

    def _wrap(self, other) -> "QuadraticValue":
        if isinstance(other, QuadraticValue):
            return other
        return QuadraticValue(Scalar.coerce(other), ZERO, self.radicand)

    def __add__(self, other):
        o = self._wrap(other)
        return QuadraticValue(self.x + o.x, self.y + o.y, self.radicand)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        return QuadraticValue(self.x - o.x, self.y - o.y, self.radicand)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __neg__(self):
        return QuadraticValue(-self.x, -self.y, self.radicand)

    def __mul__(self, other):
        o = self._wrap(other)
        return QuadraticValue(
            self.x * o.x + self.y * o.y * self.radicand,
            self.x * o.y + self.y * o.x,
            self.radicand,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def inverse(self) -> "QuadraticValue":
        norm = self.x * self.x - self.y * self.y * self.radicand
        ninv = norm.inverse()
        return QuadraticValue(self.x * ninv, -self.y * ninv, self.radicand)

    def __eq__(self, other):
        o = self._wrap(other)
        return self.x == o.x and self.y == o.y

    def __repr__(self):
        return f"({self.x}) + ({self.y})*sqrt({self.radicand})"


def specialize_alpha2(s: Scalar, alpha2) -> Scalar | QuadraticValue:
    """Evaluate ``s`` at ``alpha = sqrt(alpha2)`` exactly (alpha2 >= 0)."""
    a = Fraction(alpha2) if not isinstance(alpha2, Fraction) else alpha2
    if a < 0:
        raise ValueError("alpha is real, so alpha^2 must be non-negative")
    root = rational_sqrt(a)
    if root is not None:
        return s.eval_alpha(root)
    x, y = ZERO, ZERO
    for k, (re_, im_) in s.items():
        part = Scalar.const(re_, im_) * (a ** (k // 2))
        if k % 2:
            y = y + part
        else:
            x = x + part
    return QuadraticValue(x, y, a)


def specialized_rank(matrix: Sequence[Sequence[Scalar]], alpha2) -> int:
    return rank([[specialize_alpha2(x, alpha2) for x in row] for row in matrix])


def generic_rank(matrix: Sequence[Sequence[Scalar]], points=(Fraction(1), Fraction(7, 3), Fraction(-5, 2))) -> int:
    """Rank over Q(i)(alpha), certified from below by specialisations.

    The rank over the function field equals the rank at every point off a
    finite set, and is never exceeded; the maximum over a few rational points
    is therefore exact unless every point is exceptional.
    """
    if all(x.is_constant() for row in matrix for x in row):
        return rank(matrix)
    return max(rank([[x.eval_alpha(p) for x in row] for row in matrix]) for p in points)

"""U(1) current on the charge-q Fock space and the twisted k-generators.

The basis vector labelled ``(n_1, ..., n_k)`` is ``J_{-n_1} ... J_{-n_k} Phi_q``
(creators commute).  The Virasoro field is the normal-ordered square of the
current, ``L_n = 1/2 :J^2:_n``.  On top of it live the twisted generators

    K^a_n = (L_0 - L_n) + i n a (J_n + (J_0 + J_n - 2 sum_{k=min(0,n)}^{max(0,n)} J_k) / |n|)

with central charge ``1 + 12 a^2``, and their ``gamma_2`` composite on the
vacuum sector, whose two lowest-energy vectors are analysed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Sequence

from .coeff import ALPHA, I, ONE, ZERO, Scalar
from .coeff import linalg
from .kreduce import KMonomial, k_monomials_upto, universal_gram, universal_sp
from .partitions import Partition, insert_part, partitions, remove_part
from .report import Report, Timer
from .vectors import PartitionVector, add_into

C_ALPHA = ONE + ALPHA * ALPHA * 12  # central charge of K^alpha
VACUUM_SHIFT = C_ALPHA / 16  # (1 + 12 alpha^2)/16


class DivergenceError(ArithmeticError):
    """An operator sum failed to terminate on a finite-energy vector."""


class FockVector(PartitionVector):
    __slots__ = ()

    @property
    def charge(self) -> Fraction:
        return self.space.q


class FockSpace:
    """Charge-``q`` representation of the current algebra.

    Basis actions of ``J``, ``L`` and ``K^alpha`` are memoised per space.
    """

    def __init__(self, q=0):
        self.q = Fraction(q)
        self._qs = Scalar.coerce(self.q)
        self._j: Dict[tuple[int, Partition], Dict[Partition, Scalar]] = {}
        self._l: Dict[tuple[int, Partition], Dict[Partition, Scalar]] = {}
        self._k: Dict[tuple, Dict[Partition, Scalar]] = {}
        self._pair: Dict[tuple[Partition, Partition], Scalar] = {}

    @property
    def key(self):
        return ("fock", self.q)

    def __eq__(self, other):
        return isinstance(other, FockSpace) and other.q == self.q

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FockSpace(q={self.q})"

    def vector(self, coeffs) -> FockVector:
        return FockVector(self, coeffs)

    def lowest(self) -> FockVector:
        return self.vector({(): ONE})

    def basis_vector(self, p: Iterable[int]) -> FockVector:
        return self.vector({tuple(p): ONE})

    def basis(self, level: int) -> tuple[Partition, ...]:
        return partitions(level)

    def basis_upto(self, level: int) -> list[Partition]:
        return [p for lv in range(level + 1) for p in partitions(lv)]

    def _own(self, v: PartitionVector) -> None:
        if v.space != self:
            raise ValueError(f"vector has charge {v.space.q}, expected {self.q}")

    def _apply(self, table: Callable[[Partition], Dict[Partition, Scalar]], v: FockVector) -> FockVector:
        self._own(v)
        out: Dict[Partition, Scalar] = {}
        for lam, a in v.coeffs.items():
            add_into(out, table(lam), a)
        return self.vector(out)

    # -- currents

    def _j_basis(self, m: int, lam: Partition) -> Dict[Partition, Scalar]:
        key = (m, lam)
        hit = self._j.get(key)
        if hit is None:
            if m < 0:
                hit = {insert_part(lam, -m): ONE}
            elif m == 0:
                hit = {lam: self._qs} if self.q else {}
            else:
                mult = lam.count(m)
                hit = {remove_part(lam, m): Scalar.coerce(m * mult)} if mult else {}
            self._j[key] = hit
        return hit

    def act_j(self, m: int, v: FockVector) -> FockVector:
        return self._apply(lambda lam: self._j_basis(m, lam), v)

    def _jj(self, first: int, second: int, lam: Partition) -> Dict[Partition, Scalar]:
        """``J_second J_first`` on a basis vector."""
        out: Dict[Partition, Scalar] = {}
        for mu, a in self._j_basis(first, lam).items():
            add_into(out, self._j_basis(second, mu), a)
        return out

    # -- Sugawara field

    def _l_basis(self, n: int, lam: Partition) -> Dict[Partition, Scalar]:
        key = (n, lam)
        hit = self._l.get(key)
        if hit is None:
            level = sum(lam)
            hit = {}
            # :J_k J_{n-k}: puts the larger index on the right; an index above
            # the level annihilates, so k is confined to [n - level, level].
            for k in range(n - level, level + 1):
                a, b = k, n - k
                first, second = (a, b) if a > b else (b, a)
                add_into(hit, self._jj(first, second, lam), Scalar.coerce(Fraction(1, 2)))
            self._l[key] = hit
        return hit

    def sugawara_l(self, n: int, v: FockVector) -> FockVector:
        return self._apply(lambda lam: self._l_basis(n, lam), v)

    def naive_l(self, n: int, v: FockVector, window: int | None = None) -> FockVector:
        """``1/2 sum_k J_k J_{n-k}`` without normal ordering, over a finite window.

        Raises :class:`DivergenceError` when the boundary terms of the window
        do not vanish, i.e. the formal sum does not terminate.
        """
        self._own(v)
        top = max(v.levels(), default=0)
        window = top + abs(n) + 8 if window is None else window
        out: Dict[Partition, Scalar] = {}
        for k in range(-window, window + 1):
            term: Dict[Partition, Scalar] = {}
            for lam, a in v.coeffs.items():
                add_into(term, self._jj(n - k, k, lam), a * Fraction(1, 2))
            if term and abs(k) == window:
                raise DivergenceError(f"term k={k} of the unordered sum is nonzero on {v}")
            add_into(out, term)
        return self.vector(out)

    # -- twisted generators

    def _current_part(self, n: int, lam: Partition, drop_abs_term: bool) -> Dict[Partition, Scalar]:
        """``J_n + (J_0 + J_n - 2 sum_{k=min(0,n)}^{max(0,n)} J_k)/|n|``."""
        out: Dict[Partition, Scalar] = {}
        add_into(out, self._j_basis(n, lam))
        if not drop_abs_term:
            inv = Scalar.coerce(Fraction(1, abs(n)))
            add_into(out, self._j_basis(0, lam), inv)
            add_into(out, self._j_basis(n, lam), inv)
            for k in range(min(0, n), max(0, n) + 1):
                add_into(out, self._j_basis(k, lam), inv * -2)
        return out

    def _k_basis(self, n: int, lam: Partition, drop_abs_term: bool) -> Dict[Partition, Scalar]:
        key = (n, lam, drop_abs_term)
        hit = self._k.get(key)
        if hit is None:
            hit = {}
            add_into(hit, self._l_basis(0, lam))
            add_into(hit, self._l_basis(n, lam), -ONE)
            add_into(hit, self._current_part(n, lam, drop_abs_term), I * ALPHA * n)
            self._k[key] = hit
        return hit

    def k_alpha(self, n: int, v: FockVector, drop_abs_term: bool = False) -> FockVector:
        if n == 0:
            raise ValueError("K^alpha_n is defined for n != 0 (k_0 = 0)")
        return self._apply(lambda lam: self._k_basis(n, lam, drop_abs_term), v)

    def rho2(self, n: int, v: FockVector) -> FockVector:
        """``gamma_2`` composed with ``K^alpha``: ``K^a_{2n}/2 + (1 + 12 a^2)/16``."""
        if n == 0:
            raise ValueError("n must be nonzero")
        return self.k_alpha(2 * n, v).scale(Fraction(1, 2)) + v.scale(C_ALPHA * Fraction(3, 2) / 24)

    def rho2_display(self, n: int, v: FockVector) -> FockVector:
        """The same operator written out on the vacuum sector (no ``J_0`` term)."""
        if n == 0:
            raise ValueError("n must be nonzero")
        if self.q:
            raise ValueError("the expanded form assumes charge 0")
        half = Scalar.coerce(Fraction(1, 2))
        out = (self.sugawara_l(0, v) - self.sugawara_l(2 * n, v)).scale(half)
        cur = self.act_j(2 * n, v)
        inner = self.act_j(2 * n, v)
        for k in range(min(0, 2 * n), max(0, 2 * n) + 1):
            inner = inner - self.act_j(k, v).scale(2)
        cur = cur + inner.scale(Fraction(1, 2 * abs(n)))
        return out + cur.scale(I * ALPHA * n) + v.scale(VACUUM_SHIFT)

    # -- scalar product

    def _basis_inner(self, lam: Partition, mu: Partition) -> Scalar:
        if sum(lam) != sum(mu):
            return ZERO
        key = (lam, mu)
        hit = self._pair.get(key)
        if hit is None:
            vec = {mu: ONE}
            for part in lam:  # J_{-p}^+ = J_p, annihilating leftward
                nxt: Dict[Partition, Scalar] = {}
                for nu, a in vec.items():
                    add_into(nxt, self._j_basis(part, nu), a)
                vec = nxt
            hit = vec.get((), ZERO)
            self._pair[key] = hit
        return hit

    def inner(self, v: FockVector, w: FockVector) -> Scalar:
        if v.space != w.space:
            raise ValueError("inner product of vectors with different charge")
        self._own(v)
        total = ZERO
        for lam, a in v.coeffs.items():
            for mu, b in w.coeffs.items():
                if sum(lam) == sum(mu):
                    g = self._basis_inner(lam, mu)
                    if not g.is_zero():
                        total = total + a.conj() * b * g
        return total


_SPACES: Dict[Fraction, FockSpace] = {}


def fock_space(q=0) -> FockSpace:
    q = Fraction(q)
    space = _SPACES.get(q)
    if space is None:
        space = _SPACES.setdefault(q, FockSpace(q))
    return space


def act_j(m: int, v: FockVector) -> FockVector:
    return v.space.act_j(m, v)


def sugawara_l(n: int, v: FockVector) -> FockVector:
    return v.space.sugawara_l(n, v)


def k_alpha(n: int, v: FockVector) -> FockVector:
    return v.space.k_alpha(n, v)


def rho2(n: int, v: FockVector) -> FockVector:
    return v.space.rho2(n, v)


def fock_inner(v: FockVector, w: FockVector) -> Scalar:
    return v.space.inner(v, w)


# -- commutator checks ------------------------------------------------------------

Operator = Callable[[int, FockVector], FockVector]


def k_relation_failure(op: Operator, central: Scalar, n: int, m: int, v: FockVector):
    """Compare ``[op_n, op_m] v`` with the closed k-bracket; return ``None`` if equal."""
    lhs = op(n, op(m, v)) - op(m, op(n, v))
    rhs = op(n, v).scale(n) - op(m, v).scale(m)
    if n + m != 0:
        rhs = rhs - op(n + m, v).scale(n - m)
    else:
        rhs = rhs + v.scale(central * Fraction(n ** 3 - n, 12))
    if lhs == rhs:
        return None
    return {"n": n, "m": m, "vector": str(v), "lhs": str(lhs), "rhs": str(rhs)}


def k_relations_report(
    name: str,
    op: Operator,
    central: Scalar,
    space: FockSpace,
    modes: Sequence[int],
    level: int,
    parameters: dict,
) -> Report:
    report = Report(name, parameters)
    with Timer(report):
        count = 0
        for lam in space.basis_upto(level):
            v = space.basis_vector(lam)
            for n in modes:
                for m in modes:
                    bad = k_relation_failure(op, central, n, m, v)
                    count += 1
                    if bad:
                        report.fail(bad)
                        return report
        report.add(cases=count, central=str(central))
    return report


def k_alpha_relations_check(mode_range: int = 4, level: int = 6, q=0, drop_abs_term: bool = False, alpha=None) -> Report:
    """The closed k-bracket with ``C -> 1 + 12 alpha^2`` on Fock levels ``<= level``.

    With ``alpha`` given, the generators are specialised first.
    """
    space = fock_space(q)
    modes = [n for n in range(-mode_range, mode_range + 1) if n != 0]
    if alpha is None:
        op = lambda n, v: space.k_alpha(n, v, drop_abs_term)  # noqa: E731
        central = C_ALPHA
    else:
        a = Scalar.coerce(alpha)
        op = lambda n, v: _specialize(space.k_alpha(n, v, drop_abs_term), a)  # noqa: E731
        central = C_ALPHA.eval_alpha(a)
    params = {"range": mode_range, "level": level, "q": space.q, "drop_abs_term": drop_abs_term}
    if alpha is not None:
        params["alpha"] = Scalar.coerce(alpha)
    return k_relations_report("k-alpha-relations", op, central, space, modes, level, params)


def _specialize(v: FockVector, a: Scalar) -> FockVector:
    return v.space.vector({p: x.eval_alpha(a) for p, x in v.coeffs.items()})


def current_virasoro_check(mode_range: int = 3, level: int = 6, q=0, normal_order: bool = True) -> Report:
    """``[L_n, J_m] = -m J_{n+m}`` and the Virasoro relations with ``c = 1``."""
    space = fock_space(q)
    report = Report("current-virasoro", {"range": mode_range, "level": level, "q": space.q, "normal_order": normal_order})
    L = space.sugawara_l if normal_order else space.naive_l
    J = space.act_j
    modes = range(-mode_range, mode_range + 1)
    with Timer(report):
        try:
            count = 0
            for lam in space.basis_upto(level):
                v = space.basis_vector(lam)
                for n in modes:
                    for m in modes:
                        lj = L(n, J(m, v)) - J(m, L(n, v))
                        if lj != J(n + m, v).scale(-m):
                            report.fail({"relation": "[L,J]", "n": n, "m": m, "vector": str(v)})
                            return report
                        ll = L(n, L(m, v)) - L(m, L(n, v))
                        expect = L(n + m, v).scale(n - m)
                        if n == -m:
                            expect = expect + v.scale(Fraction(n ** 3 - n, 12))
                        if ll != expect:
                            report.fail({"relation": "[L,L]", "n": n, "m": m, "vector": str(v)})
                            return report
                        count += 1
            for lam in space.basis_upto(level):
                v = space.basis_vector(lam)
                if L(0, v) != v.scale(Fraction(sum(lam)) + space.q ** 2 / 2):
                    report.fail({"relation": "L_0 grading", "vector": str(v)})
                    return report
            report.add(cases=count, central_charge="1")
        except DivergenceError as exc:
            report.error(f"divergence: {exc}")
    return report


# -- the gamma_2 composite on the vacuum sector ---------------------------------------


@dataclass
class TwoByTwoAction:
    """An operator restricted to ``span{Omega, J_{-1} Omega}``.

    ``matrix[i][j]`` is the coefficient of basis vector ``i`` in the image of
    basis vector ``j``.
    """

    matrix: list[list[Scalar]]
    eigenvalues: tuple[Scalar, Scalar]
    beta: Scalar
    modes_checked: list[int] = field(default_factory=list)

    @property
    def upper_triangular(self) -> bool:
        return self.matrix[1][0].is_zero()

    @property
    def gap(self) -> Scalar:
        return self.eigenvalues[1] - self.eigenvalues[0]

    def phi(self, space: FockSpace) -> FockVector:
        return space.vector({(1,): ONE, (): self.beta})

    def solves(self, numerator: Scalar, denominator: Scalar) -> bool:
        """Would ``beta = numerator / denominator`` give an eigenvector?

        Checked by cross-multiplying the eigen-equation for the second eigenvalue.
        """
        (a, b), (_, d) = self.matrix
        # a*beta + b = d*beta  <=>  (a - d) * num + b * den = 0
        return ((a - d) * numerator + b * denominator).is_zero()


def restrict_two_by_two(op: Callable[[FockVector], FockVector], space: FockSpace) -> list[list[Scalar]]:
    basis = [(), (1,)]
    cols = []
    for p in basis:
        img = op(space.basis_vector(p))
        if any(q not in basis for q in img.coeffs):
            raise ValueError(f"operator leaves span{{Omega, J_-1 Omega}}: {img}")
        cols.append([img.coefficient(q) for q in basis])
    return [[cols[j][i] for j in range(2)] for i in range(2)]


def rho2_eigen_analysis(nmax: int = 6) -> TwoByTwoAction:
    space = fock_space(0)
    mats = [restrict_two_by_two(lambda v, n=n: space.rho2(n, v), space) for n in range(1, nmax + 1)]
    if any(m != mats[0] for m in mats):
        raise AssertionError("the restriction depends on n")
    (a, b), (c, d) = mats[0]
    if not c.is_zero():
        raise AssertionError("restriction is not upper triangular")
    # (a - d) beta + b = 0 with a - d a nonzero constant
    beta = -b / (a - d)
    return TwoByTwoAction(mats[0], (a, d), beta, list(range(1, nmax + 1)))


def rho2_eigen_report(nmax: int = 6) -> Report:
    report = Report("rho2-eigen", {"nmax": nmax})
    with Timer(report):
        act = rho2_eigen_analysis(nmax)
        space = fock_space(0)
        phi = act.phi(space)
        omega = space.lowest()
        low, high = act.eigenvalues
        checks = {
            "lower eigenvalue (1 + 12 alpha^2)/16": low == VACUUM_SHIFT,
            "upper eigenvalue (9 + 12 alpha^2)/16": high == (C_ALPHA + 8) / 16,
            "gap 1/2": act.gap == Fraction(1, 2),
        }
        for n in range(1, nmax + 1):
            checks[f"n={n} Omega eigen"] = space.rho2(n, omega) == omega.scale(low)
            checks[f"n={n} Phi eigen"] = space.rho2(n, phi) == phi.scale(high)
            checks[f"n={n} display agrees"] = all(
                space.rho2(n, space.basis_vector(p)) == space.rho2_display(n, space.basis_vector(p))
                for p in space.basis_upto(5)
            )
        candidate = act.solves(I * ALPHA * 16, C_ALPHA)
        report.add(
            matrix=[[str(x) for x in row] for row in act.matrix],
            eigenvalues=[str(low), str(high)],
            beta=str(act.beta),
            candidate_16i_alpha_over_c_alpha_is_eigen=candidate,
        )
        report.add(checks=checks)
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            report.fail({"failed": bad})
    return report


def overlap_report(alpha2=1, energy: int = 3) -> Report:
    """``<Omega, Phi> = beta``: nonzero, imaginary, odd; orbits non-orthogonal."""
    report = Report("overlap", {"alpha2": Fraction(alpha2), "energy": energy})
    with Timer(report):
        act = rho2_eigen_analysis()
        space = fock_space(0)
        omega, phi = space.lowest(), act.phi(space)
        ov = space.inner(omega, phi)
        at_alpha2 = linalg.specialize_alpha2(ov, alpha2)
        facts = {
            "overlap equals beta": ov == act.beta,
            "nonzero polynomial": not ov.is_zero(),
            "purely imaginary": ov.is_imaginary(),
            "odd in alpha": ov.is_odd(),
            "vanishes at alpha = 0": ov.eval_alpha(0).is_zero(),
        }
        report.add(overlap=str(ov), specialised=repr(at_alpha2), facts=facts)
        if Fraction(alpha2) != 0 and at_alpha2.is_zero():
            facts["nonzero at alpha2"] = False
        o_orbit = orbit_span(omega, energy, alpha2)
        p_orbit = orbit_span(phi, energy, alpha2)
        cross = ZERO
        for _, u in o_orbit.members:
            for _, w in p_orbit.members:
                cross = space.inner(u, w)
                if not cross.is_zero():
                    break
            if not cross.is_zero():
                break
        facts["orbits not orthogonal"] = not cross.is_zero()
        report.add(omega_orbit_ranks=o_orbit.ranks, phi_orbit_ranks=p_orbit.ranks)
        bad = [k for k, ok in facts.items() if not ok]
        if bad:
            report.fail({"failed": bad, "overlap": str(ov)})
    return report


@dataclass
class Orbit:
    start: FockVector
    members: list[tuple[KMonomial, FockVector]]
    gram: list[list[Scalar]]
    alpha2: Fraction
    ranks: list[int]  # rank of the family with monomial energy <= e, for each e


def orbit_span(start: FockVector, max_energy: int, alpha2=1) -> Orbit:
    """Images of ``start`` under the monomials ``K_{-n_1} ... K_{-n_k}`` of the composite."""
    space = start.space
    if space.q:
        raise ValueError("orbits are built in the vacuum sector")
    members = []
    for mono in k_monomials_upto(max_energy):
        v = start
        for n in reversed(mono):
            v = space.rho2(-n, v)
        members.append((mono, v))
    gram = [[space.inner(a, b) for _, b in members] for _, a in members]
    ranks = []
    for e in range(max_energy + 1):
        idx = [i for i, (m, _) in enumerate(members) if sum(m) <= e]
        sub = [[gram[i][j] for j in idx] for i in idx]
        ranks.append(linalg.specialized_rank(sub, alpha2))
    return Orbit(start, members, gram, Fraction(alpha2), ranks)


def crosscheck_universal(max_degree: int = 3) -> Report:
    """Fock orbits of ``Omega`` and ``Phi`` against the k-only scalar product."""
    if max_degree > 4:
        raise ValueError("max_degree is limited to 4")
    report = Report("crosscheck-universal", {"degree": max_degree})
    with Timer(report):
        c = C_ALPHA * 2
        h1 = c / 32
        h2 = h1 + Fraction(1, 2)
        act = rho2_eigen_analysis()
        space = fock_space(0)
        phi = act.phi(space)
        norm_phi = space.inner(phi, phi)
        for label, start, h, scale in (("Omega", space.lowest(), h1, ONE), ("Phi", phi, h2, norm_phi)):
            orbit = orbit_span(start, max_degree)
            monos = [m for m, _ in orbit.members]
            for i, a in enumerate(monos):
                for j, b in enumerate(monos):
                    u = universal_sp(c, h, a, b) * scale
                    if orbit.gram[i][j] != u:
                        report.fail({"orbit": label, "left": list(a), "right": list(b),
                                     "fock": str(orbit.gram[i][j]), "universal": str(u)})
                        return report
            report.add(orbit=label, pairs=len(monos) ** 2, h=str(h), norm=str(scale))
        report.add(c=str(c))
    return report


def rho2_relations_check(mode_range: int = 3, level: int = 4) -> Report:
    """The composite satisfies the k-bracket with ``C -> 2 (1 + 12 alpha^2)``."""
    space = fock_space(0)
    modes = [n for n in range(-mode_range, mode_range + 1) if n != 0]
    return k_relations_report(
        "rho2-relations", space.rho2, C_ALPHA * 2, space, modes, level, {"range": mode_range, "level": level}
    )


def k_alpha_adjoint_check(mode_range: int = 3, level: int = 4, q=0) -> Report:
    """``<K_n u, v> = <u, K_{-n} v>`` on all basis pairs of level ``<= level``."""
    space = fock_space(q)
    report = Report("k-alpha-adjoint", {"range": mode_range, "level": level, "q": space.q})
    with Timer(report):
        basis = [space.basis_vector(p) for p in space.basis_upto(level)]
        count = 0
        for n in range(-mode_range, mode_range + 1):
            if n == 0:
                continue
            for u in basis:
                ku = space.k_alpha(n, u)
                for v in basis:
                    if space.inner(ku, v) != space.inner(u, space.k_alpha(-n, v)):
                        report.fail({"n": n, "u": str(u), "v": str(v)})
                        return report
                    count += 1
        report.add(pairs=count)
    return report


def orbit_rank_check(max_energy: int = 3, alpha2=1) -> Report:
    """Orbit ranks of ``Omega`` and ``Phi`` against the universal Gram ranks at ``alpha^2``."""
    alpha2 = Fraction(alpha2)
    report = Report("orbit-ranks", {"energy": max_energy, "alpha2": alpha2})
    with Timer(report):
        act = rho2_eigen_analysis()
        space = fock_space(0)
        c = linalg.specialize_alpha2(C_ALPHA * 2, alpha2)
        h1 = c / 32
        for label, start, h in (("Omega", space.lowest(), h1), ("Phi", act.phi(space), h1 + Fraction(1, 2))):
            orbit = orbit_span(start, max_energy, alpha2)
            expected = []
            for e in range(max_energy + 1):
                monos = k_monomials_upto(e)
                expected.append(linalg.rank(universal_gram(c, h, monos)))
            report.add(orbit=label, c=str(c), h=str(h), ranks=orbit.ranks, universal_ranks=expected)
            if orbit.ranks != expected:
                report.fail({"orbit": label, "ranks": orbit.ranks, "universal_ranks": expected})
    return report


"""Registry of named verification suites and their parameter schemas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Mapping

from . import fock, kreduce, liealg, verma
from .coeff.linalg import rational_sqrt
from .report import Report


class ParameterError(ValueError):
    """Unknown or malformed check parameter."""


def parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParameterError(f"expected an integer, got {text!r}") from None


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"expected a rational p/q, got {text!r}") from None


def parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ParameterError(f"expected a boolean, got {text!r}")


PARSERS: Dict[str, Callable[[str], Any]] = {"int": parse_int, "rational": parse_rational, "bool": parse_bool}


@dataclass(frozen=True)
class Param:
    kind: str  # int | rational | bool
    default: Any
    help: str = ""

    def parse(self, text: str) -> Any:
        return PARSERS[self.kind](text)


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    params: Mapping[str, Param]
    runner: Callable[..., Report]

    def resolve(self, given: Mapping[str, Any]) -> dict[str, Any]:
        unknown = set(given) - set(self.params)
        if unknown:
            raise ParameterError(f"{self.name} takes no parameter(s) {', '.join(sorted(unknown))}")
        out = {}
        for key, param in self.params.items():
            value = given.get(key, param.default)
            out[key] = param.parse(value) if isinstance(value, str) else value
        return out

    def schema(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "params": {
                k: {"type": p.kind, "default": None if p.default is None else str(p.default), "help": p.help}
                for k, p in self.params.items()
            },
        }


def _bundle(name: str, params: dict, reports) -> Report:
    out = Report(name, params)
    for sub in reports:
        out.absorb(sub)
        out.timing += sub.timing
        out.details[-1]["details"] = sub.details
        if sub.counterexample is not None:
            out.details[-1]["counterexample"] = sub.counterexample
    return out


def _choices(value, default):
    return default if value is None else (value,)


# -- runners ------------------------------------------------------------------------


def _kn_closure(n, rmax):
    rs = range(-rmax, rmax + 1)
    return _bundle("kn-closure", {"n": n, "rmax": rmax},
                   [liealg.kn_closure_check(m, r_range=rs) for m in _choices(n, (1, 2, 3))])


def _gamma_endo(r, bound, shift):
    reports = [liealg.gamma_endo_check(x, bound, shift) for x in _choices(r, (1, 2, 3))]
    return _bundle("gamma-endo", {"r": r, "bound": bound, "shift": shift}, reports)


def _functional(n, R, delta):
    reports = [liealg.functional_solver_check(m, R, delta) for m in _choices(n, (1, 2, 3))]
    return _bundle("functional-solver", {"n": n, "R": R, "delta": delta}, reports)


def _psd(c, h, level):
    if c is None and h is None:
        pairs = [(cc, hh) for cc, hh, _, _ in verma.discrete_series(1)]
    else:
        pairs = [(Fraction(1, 2) if c is None else c, Fraction(1, 16) if h is None else h)]
    return _bundle("psd", {"c": c, "h": h, "level": level}, [verma.psd_check(level, cc, hh) for cc, hh in pairs])


SPAN_POINTS = ((Fraction(3), Fraction(1, 5)), (Fraction(1, 2), Fraction(1, 16)), (Fraction(5, 2), Fraction(0)))


def _points(c, h):
    if c is None and h is None:
        return SPAN_POINTS
    if c is None or h is None:
        raise ParameterError("give both c and h, or neither")
    return ((c, h),)


def _k_span(c, h, level, energy):
    reports = []
    for cc, hh in _points(c, h):
        reports.append(kreduce.k_monomial_span_check(cc, hh, level))
        reports.append(kreduce.universal_crosscheck_verma(cc, hh, energy))
    return _bundle("k-span", {"c": c, "h": h, "level": level, "energy": energy}, reports)


def _lowest_eigen(c, h, N, unique_level):
    reports = [kreduce.lowest_k_eigen_check(cc, hh, N, unique_level) for cc, hh in _points(c, h)]
    return _bundle("lowest-k-eigen", {"c": c, "h": h, "N": N, "unique_level": unique_level}, reports)


def _h0_span(c, maxlevel):
    cs = _choices(c, (Fraction(3), Fraction(1, 2)))
    return _bundle("h0-span", {"c": c, "maxlevel": maxlevel}, [kreduce.h0_spanning_check(x, maxlevel) for x in cs])


def _current(range, level, q, normal_order):  # noqa: A002
    qs = _choices(q, (Fraction(0), Fraction(1)))
    reports = [fock.current_virasoro_check(range, level if x == 0 else min(level, 5), x, normal_order) for x in qs]
    return _bundle("current-virasoro", {"range": range, "level": level, "q": q, "normal_order": normal_order}, reports)


def _k_alpha(range, level, q, drop_abs_term, alpha2):  # noqa: A002
    alpha = None
    if alpha2 is not None:
        alpha = rational_sqrt(Fraction(alpha2)) if alpha2 >= 0 else None
        if alpha is None:
            raise ParameterError("alpha2 must be the square of a rational")
    reports = [fock.k_alpha_relations_check(range, level, q, drop_abs_term, alpha)]
    if not drop_abs_term and alpha is None:
        reports.append(fock.k_alpha_adjoint_check(min(range, 3), min(level, 4), q))
    params = {"range": range, "level": level, "q": q, "drop_abs_term": drop_abs_term, "alpha2": alpha2}
    return _bundle("k-alpha-relations", params, reports)


def _rho2(nmax, level):
    return _bundle("rho2-eigen", {"nmax": nmax, "level": level},
                   [fock.rho2_eigen_report(nmax), fock.rho2_relations_check(3, level)])


def _overlap(alpha2, energy):
    return _bundle("overlap", {"alpha2": alpha2, "energy": energy},
                   [fock.overlap_report(alpha2, energy), fock.orbit_rank_check(energy, alpha2)])


def _crosscheck(degree):
    try:
        return fock.crosscheck_universal(degree)
    except ValueError as exc:
        raise ParameterError(str(exc)) from None


def _all():
    reports = [run_check(name, {}) for name in CHECKS if name != "all"]
    return _bundle("all", {}, reports)


_N = Param("int", None, "subalgebra index; default runs 1, 2 and 3")
_C = Param("rational", None, "central charge")
_H = Param("rational", None, "lowest energy")

CHECKS: Dict[str, Check] = {}


def _register(name: str, anchor: str, runner, **params: Param) -> None:
    CHECKS[name] = Check(name, anchor, params, runner)


_register("vir-jacobi", "[l_n, l_m] = (n-m) l_{n+m} + C/12 (n^3 - n) delta_{n,-m}; theta(l_n) = l_{-n}",
          liealg.jacobi_check, bound=Param("int", 6), samples=Param("int", 0, "random wide triples"),
          seed=Param("int", 0))
_register("k-bracket", "[k_r, k_m] = r k_r - m k_m - (r-m) k_{r+m} + C/12 (r^3 - r) delta_{r,-m}",
          liealg.k_bracket_check, rmax=Param("int", 10))
_register("kn-closure", "K_n = span{k_{j,rn}, C}: closed under the bracket", _kn_closure,
          n=_N, rmax=Param("int", 4))
_register("gamma-endo", "gamma_r: k_n -> k_{rn}/r + C/24 (r - 1/r), C -> rC is an endomorphism commuting with theta",
          _gamma_endo, r=Param("int", None, "default runs 1, 2 and 3"), bound=Param("int", 6),
          shift=Param("bool", True, "keep the C/24 term"))
_register("functional-solver", "phi vanishing on [K_n, K_n]: r phi_r - m phi_m - (r-m) phi_{r+m} + phi(C)/12 (n^2 r^3 - r) delta = 0",
          _functional, n=_N, R=Param("int", 12), delta=Param("bool", True, "keep the central term"))
_register("admissible", "c >= 1, h >= 0 or c = 1 - 6/((m+2)(m+3)), h = h_{p,q}(m)", verma.admissible_report,
          c=Param("rational", Fraction(1, 2)), h=Param("rational", Fraction(1, 16)), m=Param("int", None))
_register("gram", "contravariant form <L_{-l} Psi, L_{-m} Psi> on one energy level",
          lambda c, h, level: verma.gram_report(level, c, h),
          c=Param("rational", Fraction(1, 2)), h=Param("rational", Fraction(1, 16)), level=Param("int", 4))
_register("psd", "unitarity: the contravariant form is positive semidefinite", _psd,
          c=_C, h=_H, level=Param("int", 6))
_register("k-span", "K-monomials K_{-n_1}...K_{-n_k} Psi span the unitary module", _k_span,
          c=_C, h=_H, level=Param("int", 6), energy=Param("int", 4, "universal product cross-check energy"))
_register("lowest-k-eigen", "K_n Psi = h Psi for n > 0, unique up to scale", _lowest_eigen,
          c=_C, h=_H, N=Param("int", 6), unique_level=Param("int", 3))
_register("h0-span", "h = 0: (L_{-a} - L_{-r}) words on Omega span, r = a mod 3 in {0, 1, -1}", _h0_span,
          c=_C, maxlevel=Param("int", 6))
_register("current-virasoro", "L_n = 1/2 :J^2:_n, [L_n, J_m] = -m J_{n+m}, central charge 1", _current,
          range=Param("int", 3), level=Param("int", 6), q=Param("rational", None, "default runs 0 and 1"),
          normal_order=Param("bool", True))
_register("k-alpha-relations", "K^a_n = (L_0 - L_n) + i n a (J_n + (J_0 + J_n - 2 sum J_k)/|n|), c = 1 + 12 a^2",
          _k_alpha, range=Param("int", 4), level=Param("int", 6), q=Param("rational", Fraction(0)),
          drop_abs_term=Param("bool", False), alpha2=Param("rational", None, "specialise alpha^2 (a rational square)"))
_register("rho2-eigen", "K^a_{2n}/2 + (1 + 12 a^2)/16 on span{Omega, J_{-1} Omega}: eigenvalues (1+12a^2)/16, (9+12a^2)/16",
          _rho2, nmax=Param("int", 6), level=Param("int", 4))
_register("overlap", "<Omega, Phi> != 0 for the two lowest-energy vectors of the composite", _overlap,
          alpha2=Param("rational", Fraction(1)), energy=Param("int", 3))
_register("crosscheck-universal", "Fock orbits of Omega, Phi against the universal product at c = 2(1 + 12 a^2), h = c/32, c/32 + 1/2",
          _crosscheck, degree=Param("int", 3))
_register("all", "every suite at default parameters", _all)


def list_checks() -> list[dict[str, Any]]:
    return [check.schema() for check in CHECKS.values()]


def run_check(name: str, params: Mapping[str, Any] | None = None) -> Report:
    """Run a registered check; raises :class:`ParameterError` on bad input."""
    check = CHECKS.get(name)
    if check is None:
        raise ParameterError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    return check.runner(**check.resolve(params or {}))

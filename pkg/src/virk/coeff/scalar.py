"""Polynomials in a real formal parameter ``alpha`` over the Gaussian rationals.

A :class:`Scalar` is stored sparsely as ``{degree: (re, im)}`` with
:class:`fractions.Fraction` parts.  Zero coefficients are never stored, so
structural equality is ring equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterator, Tuple, Union

Number = Union[int, Fraction]
Coefficient = Tuple[Fraction, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Scalar:
    """Element of Q(i)[alpha] with conjugation fixing ``alpha``.

    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[int, Coefficient] | None = None):
        clean: Dict[int, Coefficient] = {}
        if terms:
            for k, (a, b) in terms.items():
                if a or b:
                    if k < 0:
                        raise ValueError("negative alpha degree")
                    clean[k] = (_frac(a), _frac(b))
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, Coefficient]) -> "Scalar":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        q = _frac(x)
        return cls._raw({0: (q, _ZERO)} if q else {})

    @classmethod
    def const(cls, re_part: Number = 0, im_part: Number = 0) -> "Scalar":
        a, b = _frac(re_part), _frac(im_part)
        return cls._raw({0: (a, b)} if (a or b) else {})

    @classmethod
    def monomial(cls, degree: int, re_part: Number = 1, im_part: Number = 0) -> "Scalar":
        return cls({degree: (re_part, im_part)})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[int, Coefficient]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, Coefficient]]:
        return iter(sorted(self._terms.items()))

    @property
    def degree(self) -> int | None:
        """Highest alpha power, or ``None`` for the zero scalar."""
        return max(self._terms) if self._terms else None

    def coefficient(self, degree: int) -> Coefficient:
        return self._terms.get(degree, (_ZERO, _ZERO))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_real(self) -> bool:
        return all(not b for _, b in self._terms.values())

    def is_imaginary(self) -> bool:
        return all(not a for a, _ in self._terms.values())

    def is_odd(self) -> bool:
        return all(k % 2 for k in self._terms)

    def is_even(self) -> bool:
        return all(k % 2 == 0 for k in self._terms)

    def real_value(self) -> Fraction:
        """The value of a real constant; raises otherwise."""
        if not self.is_constant() or not self.is_real():
            raise ValueError(f"{self} is not a real rational")
        return self.coefficient(0)[0]

    def sign(self) -> int:
        v = self.real_value()
        return (v > 0) - (v < 0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, (a, b) in other._terms.items():
            if k in out:
                c, d = out[k]
                a, b = a + c, b + d
                if a or b:
                    out[k] = (a, b)
                else:
                    del out[k]
            else:
                out[k] = (a, b)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw({k: (-a, -b) for k, (a, b) in self._terms.items()})

    def __sub__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Scalar._raw({k: (a * other, b * other) for k, (a, b) in self._terms.items()})
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[int, list] = {}
        for k1, (a1, b1) in self._terms.items():
            for k2, (a2, b2) in other._terms.items():
                if b1 or b2:
                    re_, im_ = a1 * a2 - b1 * b2, a1 * b2 + b1 * a2
                else:
                    re_, im_ = a1 * a2, _ZERO
                k = k1 + k2
                acc = out.get(k)
                if acc is None:
                    out[k] = [re_, im_]
                else:
                    acc[0] += re_
                    acc[1] += im_
        return Scalar._raw({k: (a, b) for k, (a, b) in out.items() if a or b})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "Scalar":
        """Inverse of a nonzero constant; polynomials in alpha have none."""
        if not self._terms:
            raise ZeroDivisionError("inverse of zero scalar")
        if not self.is_constant():
            raise ValueError(f"{self} is not invertible in Q(i)[alpha]")
        a, b = self._terms[0]
        n = a * a + b * b
        return Scalar._raw({0: (a / n, -b / n)})

    def __truediv__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            q = Fraction(1) / other
            return self * q
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def conj(self) -> "Scalar":
        return Scalar._raw({k: (a, -b) for k, (a, b) in self._terms.items()})

    def eval_alpha(self, value) -> "Scalar":
        """Substitute ``alpha = value``; the result is a Gaussian-rational constant."""
        v = Scalar.coerce(value)
        if not v.is_constant():
            raise ValueError("alpha can only be specialised to a constant")
        result = ZERO
        for k, (a, b) in sorted(self._terms.items(), reverse=True):
            # Horner would need all degrees; powers are cheap at these sizes
            result = result + Scalar._raw({0: (a, b)}) * v ** k
        return result

    def reflect_alpha(self) -> "Scalar":
        """Image under ``alpha -> -alpha``."""
        return Scalar._raw({k: ((-a, -b) if k % 2 else (a, b)) for k, (a, b) in self._terms.items()})

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Scalar.coerce(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"Scalar('{self}')"

    def __str__(self) -> str:
        return render_scalar(self)


ZERO = Scalar._raw({})
ONE = Scalar._raw({0: (_ONE, _ZERO)})
I = Scalar._raw({0: (_ZERO, _ONE)})
ALPHA = Scalar._raw({1: (_ONE, _ZERO)})


def conj(a: Scalar) -> Scalar:
    return Scalar.coerce(a).conj()


def eval_alpha(a: Scalar, value) -> Scalar:
    return Scalar.coerce(a).eval_alpha(value)


# -- text form ----------------------------------------------------------------


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _power(k: int) -> str:
    return "alpha" if k == 1 else f"alpha^{k}"


def render_scalar(s: Scalar) -> str:
    """Canonical text, e.g. ``3/4 - 2*i + (1 + i)*alpha - 12*alpha^2``."""
    pieces: list[tuple[int, str]] = []  # (sign, body)
    for k, (a, b) in s.items():
        if k == 0:
            if a:
                pieces.append((1 if a > 0 else -1, _fmt(abs(a))))
            if b:
                body = "i" if abs(b) == 1 else f"{_fmt(abs(b))}*i"
                pieces.append((1 if b > 0 else -1, body))
        elif a and b:
            inner = f"{_fmt(a)} {'+' if b > 0 else '-'} "
            inner += "i" if abs(b) == 1 else f"{_fmt(abs(b))}*i"
            pieces.append((1, f"({inner})*{_power(k)}"))
        elif a:
            body = _power(k) if abs(a) == 1 else f"{_fmt(abs(a))}*{_power(k)}"
            pieces.append((1 if a > 0 else -1, body))
        else:
            body = f"i*{_power(k)}" if abs(b) == 1 else f"{_fmt(abs(b))}*i*{_power(k)}"
            pieces.append((1 if b > 0 else -1, body))
    if not pieces:
        return "0"
    sign, body = pieces[0]
    out = body if sign > 0 else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" + {body}" if sign > 0 else f" - {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(alpha|i)|(\*\*|[-+*^()]))")


class ScalarParseError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"unexpected input at {pos}: {text[pos:]!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


def parse_scalar(text: str) -> Scalar:
    """Parse the rendered grammar (and ordinary +, -, *, ^, parentheses).

    Juxtaposition multiplies: ``2i``, ``12 alpha^2``, ``(1+i) alpha``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ScalarParseError("empty scalar")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> Scalar:
        value = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term() -> Scalar:
        value = factor()
        while True:
            tok = peek()
            if tok == "*":
                take()
            elif tok not in ("(", "alpha", "i"):
                break
            value = value * factor()  # "*" or juxtaposition, as in 12 alpha^2
        return value

    def factor() -> Scalar:
        tok = peek()
        if tok == "-":
            take()
            return -factor()
        if tok == "+":
            take()
            return factor()
        base = atom()
        if peek() in ("^", "**"):
            take()
            exp = take() if peek() is not None else None
            if exp is None or not exp.isdigit():
                raise ScalarParseError("exponent must be a non-negative integer")
            base = base ** int(exp)
        return base

    def atom() -> Scalar:
        tok = take() if peek() is not None else None
        if tok is None:
            raise ScalarParseError("unexpected end of input")
        if tok == "(":
            value = expr()
            if peek() != ")":
                raise ScalarParseError("missing ')'")
            take()
            return value
        if tok == "alpha":
            return ALPHA
        if tok == "i":
            return I
        if tok[0].isdigit():
            q = Fraction(tok)
            return Scalar.const(q)
        raise ScalarParseError(f"unexpected token {tok!r}")

    value = expr()
    if pos != len(tokens):
        raise ScalarParseError(f"trailing input: {' '.join(tokens[pos:])}")
    return value

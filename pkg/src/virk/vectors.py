"""Finite linear combinations of partition-labelled basis vectors."""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, Iterator, Mapping, Tuple

from .coeff import ZERO, Scalar
from .partitions import Partition


def add_into(acc: Dict[Partition, Scalar], terms: Mapping[Partition, Scalar], factor: Scalar | None = None) -> None:
    for p, a in terms.items():
        if factor is not None:
            a = a * factor
        cur = acc.get(p)
        if cur is None:
            acc[p] = a
        else:
            s = cur + a
            if s.is_zero():
                del acc[p]
            else:
                acc[p] = s


class PartitionVector:
    """Vector in a space whose basis is labelled by partitions.

    ``space`` identifies the ambient module; arithmetic between vectors of
    different spaces is refused.  Vectors may mix levels (energy grades).
    """

    __slots__ = ("space", "coeffs")

    def __init__(self, space: Hashable, coeffs: Mapping[Partition, Scalar] | None = None):
        self.space = space
        self.coeffs: Dict[Partition, Scalar] = {}
        if coeffs:
            for p, a in coeffs.items():
                a = Scalar.coerce(a)
                if not a.is_zero():
                    self.coeffs[tuple(p)] = a

    def _new(self, coeffs: Dict[Partition, Scalar]):
        out = type(self).__new__(type(self))
        out.space = self.space
        out.coeffs = coeffs
        return out

    def _check(self, other: "PartitionVector") -> None:
        if self.space != other.space:
            raise ValueError(f"vectors live in different spaces: {self.space} vs {other.space}")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        add_into(acc, other.coeffs)
        return self._new(acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({p: -a for p, a in self.coeffs.items()})

    def scale(self, s) -> "PartitionVector":
        s = Scalar.coerce(s)
        if s.is_zero():
            return self._new({})
        return self._new({p: a * s for p, a in self.coeffs.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartitionVector):
            return NotImplemented
        return self.space == other.space and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.space, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> Iterator[Tuple[Partition, Scalar]]:
        return iter(sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))))

    def coefficient(self, p: Iterable[int]) -> Scalar:
        return self.coeffs.get(tuple(p), ZERO)

    def levels(self) -> list[int]:
        return sorted({sum(p) for p in self.coeffs})

    @property
    def level(self) -> int | None:
        """The level of a homogeneous vector; ``None`` if zero or mixed."""
        lv = self.levels()
        return lv[0] if len(lv) == 1 else None

    def component(self, level: int):
        return self._new({p: a for p, a in self.coeffs.items() if sum(p) == level})

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({a})*{list(p)}" for p, a in self.items())

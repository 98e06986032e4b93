"""Integer partitions as weakly decreasing tuples."""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

Partition = Tuple[int, ...]


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[Partition, ...]:
    """Partitions of ``n`` in reverse-lexicographic order (largest part first).

    >>> partitions(3)
    ((3,), (2, 1), (1, 1, 1))
    """
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    largest = n if largest is None else min(largest, n)
    out = []
    for first in range(largest, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions(n))


def is_partition(p) -> bool:
    return all(x > 0 for x in p) and all(a >= b for a, b in zip(p, p[1:]))


def insert_part(p: Partition, part: int) -> Partition:
    i = 0
    while i < len(p) and p[i] >= part:
        i += 1
    return p[:i] + (part,) + p[i:]


def remove_part(p: Partition, part: int) -> Partition:
    i = p.index(part)
    return p[:i] + p[i + 1:]

"""Bosonic Fock space in the power-sum basis.

A basis vector is a partition ``(l_1 >= l_2 >= ...)`` standing for the
monomial ``p_{l_1} p_{l_2} ...``.  Creation by ``p_n`` is multiplication;
annihilation is ``n * d/dp_n``, so that ``[a_n, a_{-n}] = n``.  This
normalization carries the factor ``n`` (other conventions divide it out).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from gmpy2 import mpq

from .exact import ZERO, format_rational, rational

Partition = tuple  # weakly decreasing tuple of positive ints


def make_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if parts and parts[-1] < 1:
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def degree_basis(d: int) -> list[Partition]:
    """All partitions of ``d``, reverse-lexicographic (largest part first)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return list(_partitions(d, d))


def partition_count(d: int) -> int:
    return len(_partitions(d, d)) if d >= 0 else 0


def add_part(p: Partition, n: int) -> Partition:
    i = 0
    while i < len(p) and p[i] >= n:
        i += 1
    return p[:i] + (n,) + p[i:]


def remove_part(p: Partition, n: int) -> Partition:
    i = p.index(n)
    return p[:i] + p[i + 1:]


class FockVector:
    """Immutable sparse rational combination of partitions."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Partition, object] | None = None):
        clean = {}
        if terms:
            for p, c in terms.items():
                c = rational(c)
                if c:
                    clean[make_partition(p)] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: dict) -> "FockVector":
        v = cls.__new__(cls)
        v._terms = terms
        return v

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Partition]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, p) -> mpq:
        return self._terms.get(tuple(p), ZERO)

    def __eq__(self, other) -> bool:
        if isinstance(other, FockVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "FockVector") -> "FockVector":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "FockVector":
        return FockVector._wrap({p: -c for p, c in self._terms.items()})

    def __rmul__(self, c) -> "FockVector":
        c = rational(c)
        if not c:
            return FockVector()
        return FockVector._wrap({p: c * x for p, x in self._terms.items()})

    def degrees(self) -> set[int]:
        return {sum(p) for p in self._terms}

    def component(self, d: int) -> "FockVector":
        return FockVector._wrap({p: c for p, c in self._terms.items() if sum(p) == d})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_items(self) -> list:
        """Terms ordered by degree, then reverse-lex within a degree."""
        return sorted(self._terms.items(), key=lambda pc: (sum(pc[0]), tuple(-x for x in pc[0])))

    def to_json(self) -> dict:
        return {"terms": [{"partition": list(p), "coeff": format_rational(c)}
                          for p, c in self.sorted_items()]}

    @classmethod
    def from_json(cls, data: dict) -> "FockVector":
        out: dict = {}
        for t in data["terms"]:
            p = make_partition(t["partition"])
            out[p] = out.get(p, ZERO) + rational(str(t["coeff"]))
        return cls(out)

    def __repr__(self) -> str:
        if not self._terms:
            return "FockVector(0)"
        inner = ", ".join(f"{list(p)}: {format_rational(c)}" for p, c in self.sorted_items())
        return "FockVector({" + inner + "})"


def vacuum() -> FockVector:
    return FockVector._wrap({(): mpq(1)})


def basis_vector(p: Iterable[int]) -> FockVector:
    return FockVector._wrap({make_partition(p): mpq(1)})


def _check_mode(n: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"mode index must be a positive integer, got {n}")


def mul_power_sum(n: int, v: FockVector) -> FockVector:
    """Multiply by ``p_n`` (raises degree by ``n``)."""
    _check_mode(n)
    return FockVector._wrap({add_part(p, n): c for p, c in v.items()})


def del_power_sum(n: int, v: FockVector) -> FockVector:
    """Apply ``n * d/dp_n`` (lowers degree by ``n``)."""
    _check_mode(n)
    out: dict = {}
    for p, c in v.items():
        m = p.count(n)
        if m:
            q = remove_part(p, n)
            out[q] = out.get(q, ZERO) + c * (n * m)
    return FockVector._wrap({p: c for p, c in out.items() if c})


def linear_combine(pairs: Iterable[tuple]) -> FockVector:
    out: dict = {}
    for c, v in pairs:
        c = rational(c)
        if not c:
            continue
        for p, x in v.items():
            s = out.get(p, ZERO) + c * x
            if s:
                out[p] = s
            else:
                out.pop(p, None)
    return FockVector._wrap(out)

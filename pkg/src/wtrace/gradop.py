"""Rank-graded linear operators on Fock space, evaluated exactly and lazily.

An operator of rank ``r`` maps the degree-``d`` subspace into degree
``d + r``.  Each operator computes its action one degree block at a time and
memoizes the block, so building a large expression tree is cheap; cost is
paid only for the degrees actually probed.

Blocks are dicts ``{partition_in: {partition_out: coeff}}`` with one entry per
basis partition of the input degree (possibly an empty column).  They are
shared with the cache and must not be mutated by callers.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from gmpy2 import mpq

from .exact import ZERO, format_rational, rational, solve_span
from .fock import FockVector, add_part, degree_basis, remove_part

Block = dict


def _add_into(out: dict, c, col: dict) -> None:
    for p, x in col.items():
        s = out.get(p, ZERO) + c * x
        if s:
            out[p] = s
        else:
            out.pop(p, None)


class GradedOperator:
    """Base class; subclasses implement :meth:`_compute`."""

    def __init__(self, rank: int, filtration: Optional[int] = None, label: str = ""):
        self.rank = int(rank)
        self.filtration = filtration
        self.label = label
        self._blocks: dict[int, Block] = {}
        self._lock = threading.Lock()

    def _compute(self, d: int) -> Block:
        raise NotImplementedError

    def block(self, d: int) -> Block:
        """Sparse matrix of the operator on degree ``d`` (memoized)."""
        blk = self._blocks.get(d)
        if blk is not None:
            return blk
        if d < 0:
            blk = {}
        elif d + self.rank < 0:
            blk = {p: {} for p in degree_basis(d)}
        else:
            blk = self._compute(d)
        with self._lock:
            return self._blocks.setdefault(d, blk)

    def column(self, p) -> dict:
        return self.block(sum(p))[tuple(p)]

    def __call__(self, v: FockVector) -> FockVector:
        return apply(self, v)

    # algebra sugar: A @ B applies B first
    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        return compose(self, other)

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        return add(self, other)

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return add(self, scale(-1, other))

    def __neg__(self) -> "GradedOperator":
        return scale(-1, self)

    def __rmul__(self, c) -> "GradedOperator":
        return scale(c, self)

    def __mul__(self, c) -> "GradedOperator":
        if isinstance(c, GradedOperator):
            return NotImplemented
        return scale(c, self)

    def __truediv__(self, c) -> "GradedOperator":
        return scale(1 / rational(c), self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} rank={self.rank} {self.label}>".replace(" >", ">")


class Atom(GradedOperator):
    """Creation, annihilation, degree-diagonal, identity or zero."""

    def __init__(self, kind: str, n: int = 0, scale_by=0, rank: int = 0):
        if kind in ("creation", "annihilation"):
            if int(n) != n or n < 1:
                raise ValueError(f"{kind} needs a positive integer mode, got {n}")
            rank = n if kind == "creation" else -n
        elif kind in ("identity", "diagonal_degree"):
            rank = 0
        elif kind != "zero":
            raise ValueError(f"unknown atom kind {kind!r}")
        super().__init__(rank, 0, f"{kind}({n})" if n else kind)
        self.kind = kind
        self.n = int(n)
        self.scale_by = rational(scale_by)

    def _compute(self, d: int) -> Block:
        basis = degree_basis(d)
        n = self.n
        if self.kind == "creation":
            return {p: {add_part(p, n): mpq(1)} for p in basis}
        if self.kind == "annihilation":
            out = {}
            for p in basis:
                m = p.count(n)
                out[p] = {remove_part(p, n): mpq(n * m)} if m else {}
            return out
        if self.kind == "identity":
            return {p: {p: mpq(1)} for p in basis}
        if self.kind == "diagonal_degree":
            s = self.scale_by * d
            return {p: ({p: s} if s else {}) for p in basis}
        return {p: {} for p in basis}


class Compose(GradedOperator):
    def __init__(self, left: GradedOperator, right: GradedOperator):
        filt = None
        if left.filtration is not None and right.filtration is not None:
            filt = left.filtration + right.filtration
        super().__init__(left.rank + right.rank, filt)
        self.left, self.right = left, right

    def _compute(self, d: int) -> Block:
        rb = self.right.block(d)
        mid = d + self.right.rank
        lb = self.left.block(mid) if mid >= 0 else {}
        out = {}
        for p, col in rb.items():
            acc: dict = {}
            for q, c in col.items():
                _add_into(acc, c, lb[q])
            out[p] = acc
        return out


class LinearCombination(GradedOperator):
    def __init__(self, terms: Sequence[tuple], rank: int):
        filts = [op.filtration for _, op in terms]
        filt = max(filts) if filts and None not in filts else (0 if not filts else None)
        super().__init__(rank, filt)
        self.terms = [(rational(c), op) for c, op in terms]

    def _compute(self, d: int) -> Block:
        out = {p: {} for p in degree_basis(d)}
        for c, op in self.terms:
            for p, col in op.block(d).items():
                _add_into(out[p], c, col)
        return out


class FormalSum(GradedOperator):
    """Infinite sum of operators truncated by the input degree.

    ``summands(d)`` must yield every ``(coeff, operator)`` pair that can act
    nontrivially on degree-``d`` input; the rest are known to vanish there.
    """

    def __init__(self, rank: int, summands: Callable[[int], Iterable[tuple]],
                 filtration: Optional[int] = None, label: str = ""):
        super().__init__(rank, filtration, label)
        self.summands = summands

    def _compute(self, d: int) -> Block:
        out = {p: {} for p in degree_basis(d)}
        for c, op in self.summands(d):
            if op.rank != self.rank:
                raise ValueError("formal sum summand has the wrong rank")
            c = rational(c)
            for p, col in op.block(d).items():
                _add_into(out[p], c, col)
        return out


# constructors ---------------------------------------------------------------

@lru_cache(maxsize=None)
def creation(n: int) -> Atom:
    """Multiplication by ``p_n`` (rank ``+n``)."""
    return Atom("creation", n)


@lru_cache(maxsize=None)
def annihilation(n: int) -> Atom:
    """``n * d/dp_n`` (rank ``-n``)."""
    return Atom("annihilation", n)


def diagonal_degree(s) -> Atom:
    return Atom("diagonal_degree", scale_by=s)


_IDENTITY = None


def identity() -> Atom:
    global _IDENTITY
    if _IDENTITY is None:
        _IDENTITY = Atom("identity")
    return _IDENTITY


def zero(rank: int = 0) -> GradedOperator:
    return LinearCombination([], rank)


def atom(kind: str, arg=None) -> Atom:
    """Build an atom by name: creation/annihilation take ``n``,
    diagonal_degree takes its scale."""
    if kind in ("creation", "annihilation"):
        return Atom(kind, arg)
    if kind == "diagonal_degree":
        return diagonal_degree(arg)
    if kind == "identity":
        return identity()
    if kind == "zero":
        return zero()
    raise ValueError(f"unknown atom kind {kind!r}")


def compose(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """``a`` after ``b``."""
    return Compose(a, b)


def add(*ops: GradedOperator) -> GradedOperator:
    if not ops:
        raise ValueError("add needs at least one operator")
    ranks = {op.rank for op in ops}
    if len(ranks) != 1:
        raise ValueError(f"cannot add operators of different ranks {sorted(ranks)}")
    return LinearCombination([(1, op) for op in ops], ops[0].rank)


def scale(c, a: GradedOperator) -> GradedOperator:
    return LinearCombination([(c, a)], a.rank)


def linear(terms: Sequence[tuple], rank: Optional[int] = None) -> GradedOperator:
    """``sum(c * op)`` over ``(c, op)`` pairs sharing one rank."""
    terms = list(terms)
    ranks = {op.rank for _, op in terms}
    if rank is None:
        if len(ranks) != 1:
            raise ValueError("rank of an empty or mixed combination is ambiguous")
        rank = ranks.pop()
    elif ranks - {rank}:
        raise ValueError(f"mixed ranks {sorted(ranks)} in a rank-{rank} combination")
    return LinearCombination(terms, rank)


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return LinearCombination([(1, Compose(a, b)), (-1, Compose(b, a))], a.rank + b.rank)


# evaluation -----------------------------------------------------------------

def apply(a: GradedOperator, v: FockVector) -> FockVector:
    acc: dict = {}
    for p, c in v.items():
        _add_into(acc, c, a.column(p))
    return FockVector._wrap(acc)


def first_difference(a: GradedOperator, b: GradedOperator, max_degree: int) -> Optional[int]:
    """Smallest degree ``d <= max_degree`` where ``a`` and ``b`` differ, else None."""
    for d in range(max_degree + 1):
        ba, bb = a.block(d), b.block(d)
        for p in degree_basis(d):
            if ba.get(p, {}) != bb.get(p, {}):
                return d
    return None


def equal_up_to(a: GradedOperator, b: GradedOperator, max_degree: int) -> bool:
    """True iff ``a`` and ``b`` agree on every basis vector of degree <= max_degree."""
    return first_difference(a, b, max_degree) is None


def matrix_block(a: GradedOperator, d: int) -> list[list[mpq]]:
    """Dense matrix from the degree-``d`` basis to the degree-``d+rank`` basis."""
    cols = degree_basis(d)
    rows = degree_basis(d + a.rank) if d + a.rank >= 0 else []
    index = {p: i for i, p in enumerate(rows)}
    m = [[ZERO] * len(cols) for _ in rows]
    blk = a.block(d)
    for j, p in enumerate(cols):
        for q, c in blk[p].items():
            m[index[q]][j] = c
    return m


def matrix_block_json(a: GradedOperator, d: int) -> dict:
    out_deg = d + a.rank
    return {
        "rank": a.rank,
        "degree_in": d,
        "basis_in": [list(p) for p in degree_basis(d)],
        "basis_out": [list(p) for p in degree_basis(out_deg)] if out_deg >= 0 else [],
        "matrix": [[format_rational(x) for x in row] for row in matrix_block(a, d)],
    }


def _flatten(op: GradedOperator, max_degree: int, index: dict) -> dict:
    vec = {}
    for d in range(max_degree + 1):
        for p, col in op.block(d).items():
            for q, c in col.items():
                key = index.setdefault((d, p, q), len(index))
                vec[key] = c
    return vec


def solve_operator_span(target: GradedOperator, basis: Sequence[GradedOperator],
                        max_degree: int) -> Optional[list[mpq]]:
    """Coefficients expressing ``target`` in ``basis`` on degrees <= max_degree."""
    for op in basis:
        if op.rank != target.rank:
            raise ValueError("span basis must share the target's rank")
    index: dict = {}
    t = _flatten(target, max_degree, index)
    vecs = [_flatten(op, max_degree, index) for op in basis]
    return solve_span(vecs, t)

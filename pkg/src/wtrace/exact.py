"""Exact rational arithmetic and sparse row reduction.

All coefficients in the package are :class:`gmpy2.mpq` values.  Sparse
vectors are plain ``dict`` objects mapping integer column indices to nonzero
rationals.
"""

from __future__ import annotations

import operator
from typing import Iterable, Mapping, Optional, Sequence

from gmpy2 import mpq

Rational = mpq
SparseVec = dict  # column index -> nonzero Rational

ZERO = mpq(0)
ONE = mpq(1)

_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rational(value) -> mpq:
    """Coerce ints, Fractions, mpq or ``"p/q"`` strings to a canonical rational."""
    if isinstance(value, str):
        value = value.strip()
        if not value or any(ch in value for ch in ".eE"):
            raise ValueError(f"not a rational literal: {value!r}")
        return mpq(value)
    return mpq(value)


def rat_arith(a, b, op: str) -> mpq:
    """Exact ``a op b`` for ``op`` in add/sub/mul/div.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    a, b = rational(a), rational(b)
    if op == "div" and b == 0:
        raise ZeroDivisionError("rational division by zero")
    return fn(a, b)


def format_rational(q) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sparse(entries: Mapping[int, object]) -> SparseVec:
    """Build a sparse vector, dropping zeros."""
    out = {}
    for k, v in entries.items():
        v = mpq(v)
        if v:
            out[k] = v
    return out


def axpy(y: SparseVec, c, x: Mapping[int, mpq]) -> None:
    """In place ``y += c * x`` with zero pruning."""
    for k, v in x.items():
        s = y.get(k, ZERO) + c * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class RowSpace:
    """Reduced row echelon form maintained under insertion.

    Pivot column of each row is its smallest column index; the pivot entry
    is 1 and no other stored row has a nonzero entry there.
    """

    def __init__(self) -> None:
        self._rows: dict[int, SparseVec] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def rows(self) -> list[SparseVec]:
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def reduce(self, v: Mapping[int, object]) -> SparseVec:
        """Residue of ``v`` after eliminating every stored pivot column."""
        r = sparse(v)
        rows = self._rows
        if not rows:
            return r
        for p in sorted(c for c in r if c in rows):
            c = r.get(p)
            if c:
                axpy(r, -c, rows[p])
        return r

    def contains(self, v: Mapping[int, object]) -> bool:
        return not self.reduce(v)

    def insert(self, v: Mapping[int, object]) -> bool:
        """Add ``v``; return True iff it was independent of the stored rows."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for row in self._rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self._rows[p] = r
        return True


def rank(vectors: Iterable[Mapping[int, object]]) -> int:
    space = RowSpace()
    for v in vectors:
        space.insert(v)
    return space.rank


def solve_span(targets: Sequence[Mapping[int, object]],
               target: Mapping[int, object]) -> Optional[list[mpq]]:
    """Rationals ``c`` with ``sum(c[i] * targets[i]) == target``, or None.

    When the targets are dependent any one exact solution is returned.
    """
    targets = [sparse(t) for t in targets]
    target = sparse(target)
    cols = set(target)
    for t in targets:
        cols.update(t)
    # tag columns sit after every real column so real pivots are chosen first
    offset = (max(cols) + 1) if cols else 0
    space = RowSpace()
    for i, t in enumerate(targets):
        row = dict(t)
        row[offset + i] = ONE
        space.insert(row)
    residue = space.reduce(target)
    if any(k < offset for k in residue):
        return None
    coeffs = [-residue.get(offset + i, ZERO) for i in range(len(targets))]
    check: SparseVec = {}
    for c, t in zip(coeffs, targets):
        if c:
            axpy(check, c, t)
    assert check == target, "span solution failed verification"
    return coeffs

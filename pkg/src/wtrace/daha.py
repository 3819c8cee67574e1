"""Degenerate affine Hecke algebra DH_n in PBW normal form ``x^a * w``.

Permutations are 1-based one-line tuples with ``(s t)(j) = s(t(j))``.  The
crossing ``T_i`` is the simple transposition ``s_i`` and moves past a
polynomial by ``T_i p = (s_i p) T_i + d_i(p)`` with ``d_i`` the divided
difference, so left multiplication by ``T_i`` on ``p * u`` gives
``(s_i p)(s_i u) + d_i(p) u``.

The cocenter ``DH_n / [DH_n, DH_n]`` is computed by brute force in the
filtration pieces ``A_{<=d}`` and compared with the cycle-type count.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from gmpy2 import mpq

from .exact import ZERO, RowSpace, format_rational, rational
from .fock import degree_basis


# permutations ----------------------------------------------------------------

def perm_identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


def perm_mul(s: tuple, t: tuple) -> tuple:
    return tuple(s[t[j] - 1] for j in range(len(t)))


def perm_inverse(s: tuple) -> tuple:
    inv = [0] * len(s)
    for j, v in enumerate(s):
        inv[v - 1] = j + 1
    return tuple(inv)


def simple_transposition(n: int, i: int) -> tuple:
    if not 1 <= i < n:
        raise ValueError(f"s_{i} does not exist in S_{n}")
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


@lru_cache(maxsize=None)
def reduced_word(w: tuple) -> tuple:
    """Indices ``(i_1, ..., i_r)`` with ``w = s_{i_1} ... s_{i_r}``."""
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            shorter = list(w)
            shorter[i], shorter[i + 1] = shorter[i + 1], shorter[i]
            return reduced_word(tuple(shorter)) + (i + 1,)
    return ()


def cycles(w: tuple) -> list[tuple]:
    """Cycles ``(c, w(c), w^2(c), ...)`` ordered by length desc, then least element."""
    seen, out = set(), []
    for start in range(1, len(w) + 1):
        if start in seen:
            continue
        cyc, j = [], start
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = w[j - 1]
        out.append(tuple(cyc))
    out.sort(key=lambda cyc: (-len(cyc), cyc[0]))
    return out


def cycle_type(w: tuple) -> tuple:
    return tuple(len(c) for c in cycles(w))


@lru_cache(maxsize=None)
def standard_perm(shape: tuple) -> tuple:
    """Consecutive blocks, each the cycle ``j -> j+1`` closed back to its head."""
    out, start = [], 1
    for k in shape:
        out.extend(range(start + 1, start + k))
        out.append(start)
        start += k
    return tuple(out)


def block_heads(shape: tuple) -> list[int]:
    heads, start = [], 1
    for k in shape:
        heads.append(start)
        start += k
    return heads


def all_perms(n: int) -> list[tuple]:
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


# polynomials -------------------------------------------------------------------

def act_on_exps(w: tuple, a: tuple) -> tuple:
    """Exponents of ``w . x^a`` where ``w . x_j = x_{w(j)}``."""
    out = [0] * len(a)
    for j, e in enumerate(a):
        out[w[j] - 1] = e
    return tuple(out)


@lru_cache(maxsize=None)
def divided_difference(i: int, a: tuple) -> tuple:
    """``(p - s_i p) / (x_i - x_{i+1})`` for ``p = x^a``, as ((exps, coeff), ...)."""
    lo, hi = a[i - 1], a[i]
    if lo == hi:
        return ()
    common = min(lo, hi)
    gap = abs(lo - hi)
    sign = 1 if lo > hi else -1
    out = []
    for f in range(gap):
        e = list(a)
        e[i - 1] = common + f
        e[i] = common + gap - 1 - f
        out.append((tuple(e), sign))
    return tuple(out)


# elements ------------------------------------------------------------------------

def _add_term(terms: dict, key, c) -> None:
    s = terms.get(key, ZERO) + c
    if s:
        terms[key] = s
    else:
        terms.pop(key, None)


class DahaElement:
    """Immutable sparse combination of ``x^exps * perm`` in DH_n."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = int(n)
        clean = {}
        for (a, w), c in (terms or {}).items():
            a, w = tuple(a), tuple(w)
            if len(a) != n or sorted(w) != list(range(1, n + 1)):
                raise ValueError(f"bad basis element {(a, w)} for n={n}")
            c = rational(c)
            if c:
                clean[(a, w)] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, n: int, terms: dict) -> "DahaElement":
        e = cls.__new__(cls)
        e.n = n
        e._terms = terms
        return e

    # constructors
    @classmethod
    def monomial(cls, n: int, exps: Iterable[int], perm: Iterable[int] | None = None,
                 coeff=1) -> "DahaElement":
        perm = perm_identity(n) if perm is None else tuple(perm)
        return cls(n, {(tuple(exps), perm): coeff})

    @classmethod
    def one(cls, n: int) -> "DahaElement":
        return cls.monomial(n, (0,) * n)

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> "DahaElement":
        a = [0] * n
        a[i - 1] = power
        return cls.monomial(n, a)

    @classmethod
    def T(cls, n: int, i: int) -> "DahaElement":
        return cls.monomial(n, (0,) * n, simple_transposition(n, i))

    @classmethod
    def perm(cls, n: int, w: Iterable[int]) -> "DahaElement":
        return cls.monomial(n, (0,) * n, w)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def degree(self) -> int:
        return max((sum(a) for a, _ in self._terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, DahaElement):
            return self.n == other.n and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def _check(self, other: "DahaElement") -> None:
        if not isinstance(other, DahaElement) or other.n != self.n:
            raise ValueError("DAHA arity mismatch")

    def __add__(self, other: "DahaElement") -> "DahaElement":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _add_term(out, k, c)
        return DahaElement._wrap(self.n, out)

    def __sub__(self, other: "DahaElement") -> "DahaElement":
        return self + (-1) * other

    def __neg__(self) -> "DahaElement":
        return (-1) * self

    def __rmul__(self, c) -> "DahaElement":
        c = rational(c)
        return DahaElement._wrap(self.n, {k: c * v for k, v in self._terms.items()} if c else {})

    def __mul__(self, other):
        if isinstance(other, DahaElement):
            return multiply(self, other)
        return rational(other) * self

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: (-sum(kv[0][0]), kv[0]))

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [
            {"exps": list(a), "perm": list(w), "coeff": format_rational(c)}
            for (a, w), c in self.sorted_items()]}

    @classmethod
    def from_json(cls, data: dict) -> "DahaElement":
        n = int(data["n"])
        out: dict = {}
        for t in data["terms"]:
            _add_term(out, (tuple(t["exps"]), tuple(t["perm"])), rational(str(t["coeff"])))
        return cls(n, out)

    def __repr__(self) -> str:
        if not self._terms:
            return f"DahaElement(n={self.n}, 0)"
        parts = [f"{format_rational(c)}*x^{list(a)}*{list(w)}" for (a, w), c in self.sorted_items()]
        return f"DahaElement(n={self.n}, " + " + ".join(parts) + ")"


@lru_cache(maxsize=None)
def _perm_times_monomial(w: tuple, b: tuple) -> tuple:
    """Normal form of ``w * x^b`` as ((exps, perm, coeff), ...)."""
    n = len(w)
    terms = {(b, perm_identity(n)): mpq(1)}
    for i in reversed(reduced_word(w)):
        s = simple_transposition(n, i)
        nxt: dict = {}
        for (a, u), c in terms.items():
            _add_term(nxt, (act_on_exps(s, a), perm_mul(s, u)), c)
            for a2, k in divided_difference(i, a):
                _add_term(nxt, (a2, u), c * k)
        terms = nxt
    return tuple((a, u, c) for (a, u), c in terms.items())


def multiply(f: DahaElement, g: DahaElement) -> DahaElement:
    """Normal form of ``f * g``."""
    f._check(g)
    out: dict = {}
    for (a, w), c1 in f.items():
        for (b, v), c2 in g.items():
            c = c1 * c2
            for e, u, k in _perm_times_monomial(w, b):
                key = (tuple(x + y for x, y in zip(a, e)), perm_mul(u, v))
                _add_term(out, key, c * k)
    return DahaElement._wrap(f.n, out)


def bracket(f: DahaElement, g: DahaElement) -> DahaElement:
    return multiply(f, g) - multiply(g, f)


# defining relations ----------------------------------------------------------------

def relation_cases(n: int, max_degree: int, samples: int = 20, seed: int = 0) -> list:
    """``(name, lhs, rhs)`` for every defining relation family, the divided-difference
    identity up to ``max_degree`` and seeded random associativity triples."""
    if n < 2:
        raise ValueError("relations need n >= 2")
    X = lambda i, p=1: DahaElement.x(n, i, p)  # noqa: E731
    T = lambda i: DahaElement.T(n, i)  # noqa: E731
    one = DahaElement.one(n)
    cases = []
    for i in range(1, n):
        cases.append((f"T{i}X{i}=X{i+1}T{i}+1", T(i) * X(i), X(i + 1) * T(i) + one))
        cases.append((f"X{i}T{i}=T{i}X{i+1}+1", X(i) * T(i), T(i) * X(i + 1) + one))
        cases.append((f"T{i}^2=1", T(i) * T(i), one))
        for a in range(1, max_degree + 1):
            rhs = DahaElement(n, {})
            for f in range(a):
                e = [0] * n
                e[i - 1], e[i] = f, a - 1 - f
                rhs = rhs + DahaElement.monomial(n, e)
            cases.append((f"T{i}X{i}^{a}-X{i+1}^{a}T{i}", T(i) * X(i, a) - X(i + 1, a) * T(i), rhs))
        for j in range(1, n):
            if abs(i - j) > 1:
                cases.append((f"T{i}T{j}=T{j}T{i}", T(i) * T(j), T(j) * T(i)))
        if i + 1 < n:
            cases.append((f"braid{i}", T(i) * T(i + 1) * T(i), T(i + 1) * T(i) * T(i + 1)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            cases.append((f"X{i}X{j}=X{j}X{i}", X(i) * X(j), X(j) * X(i)))
    rng = random.Random(seed)
    perms = all_perms(n)
    for s in range(samples):
        trip = []
        for _ in range(3):
            el = DahaElement(n, {})
            for _ in range(2):
                a = [0] * n
                for _ in range(rng.randint(0, max_degree)):
                    a[rng.randrange(n)] += 1
                el = el + DahaElement.monomial(n, a, rng.choice(perms), rng.randint(-3, 3) or 1)
            trip.append(el)
        f, g, k = trip
        cases.append((f"assoc{s}", (f * g) * k, f * (g * k)))
    return cases


def check_defining_relations(n: int, max_degree: int) -> bool:
    return all(lhs == rhs for _, lhs, rhs in relation_cases(n, max_degree))


# cocenter ------------------------------------------------------------------------

MAX_COCENTER_COLUMNS = 60000


def monomials(n: int, degree: int) -> list[tuple]:
    """Exponent vectors of total degree ``degree`` in ``n`` variables."""
    out = []
    for p in itertools.combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in p:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


class _Columns:
    """Basis ``x^a w`` with ``|a| <= top``, higher degree first."""

    def __init__(self, n: int, top: int):
        self.n = n
        self.keys = []
        for d in range(top, -1, -1):
            for a in monomials(n, d):
                for w in all_perms(n):
                    self.keys.append((a, w))
        self.index = {k: i for i, k in enumerate(self.keys)}

    def vec(self, f: DahaElement) -> dict:
        return {self.index[k]: c for k, c in f.items()}

    def degree(self, col: int) -> int:
        return sum(self.keys[col][0])


def commutator_space(n: int, top: int) -> tuple[RowSpace, _Columns]:
    """Row space of all commutators of polynomial degree <= top.

    ``[ab, c] = [a, bc] + [b, ca]`` reduces every commutator to one with a
    generator ``x_i`` or ``s_j`` on the left, within the same degree budget.
    """
    cols = _Columns(n, top)
    if len(cols.keys) > MAX_COCENTER_COLUMNS:
        raise ValueError(f"cocenter basis of {len(cols.keys)} elements exceeds the guard")
    space = RowSpace()
    gens = [(DahaElement.x(n, i), 1) for i in range(1, n + 1)]
    gens += [(DahaElement.T(n, i), 0) for i in range(1, n)]
    for d in range(top + 1):
        for a in monomials(n, d):
            for w in all_perms(n):
                y = DahaElement.monomial(n, a, w)
                for g, gdeg in gens:
                    if d + gdeg <= top:
                        space.insert(cols.vec(bracket(g, y)))
    return space, cols


def full_commutator_space(n: int, top: int) -> tuple[RowSpace, _Columns]:
    """Same span as :func:`commutator_space` from every basis pair (slow; for tests)."""
    cols = _Columns(n, top)
    space = RowSpace()
    basis = [DahaElement.monomial(n, a, w) for (a, w) in cols.keys]
    for f in basis:
        for g in basis:
            if f.degree() + g.degree() <= top:
                space.insert(cols.vec(bracket(f, g)))
    return space, cols


def _quotient_dims(n: int, max_degree: int, buffer: int) -> list[int]:
    space, cols = commutator_space(n, max_degree + buffer)
    pivots_at = [0] * (max_degree + 1)
    for p in space.pivots:
        d = cols.degree(p)
        if d <= max_degree:
            pivots_at[d] += 1
    nperm = len(all_perms(n))
    return [len(monomials(n, d)) * nperm - pivots_at[d] for d in range(max_degree + 1)]


@dataclass(frozen=True)
class CocenterReport:
    n: int
    max_degree: int
    buffer: int
    dims: tuple
    stabilized: bool
    previous: Optional[tuple] = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {"n": self.n, "max_degree": self.max_degree, "buffer": self.buffer,
                "dims": list(self.dims), "stabilized": self.stabilized}


def cocenter_dims(n: int, max_degree: int, buffer: int) -> CocenterReport:
    """Graded dimensions of ``A_{<=D}`` modulo commutators of degree <= D + B.

    ``dims[d]`` counts degree-``d`` classes.  ``stabilized`` means buffer
    ``B - 1`` gives the same answer (False when ``B == 0``).
    """
    if n < 1 or max_degree < 0 or buffer < 0:
        raise ValueError("need n >= 1, D >= 0, B >= 0")
    dims = tuple(_quotient_dims(n, max_degree, buffer))
    prev = tuple(_quotient_dims(n, max_degree, buffer - 1)) if buffer > 0 else None
    return CocenterReport(n, max_degree, buffer, dims, prev == dims, prev)


def _bounded_parts(d: int, k: int) -> int:
    """Partitions of ``d`` into at most ``k`` parts: dim of degree-d part of S^k C[x]."""
    return sum(1 for p in degree_basis(d) if len(p) <= k)


def hhsd_dims(n: int, max_degree: int) -> list[int]:
    """Degree-wise dimension of ``sum_lambda tensor_i S^{p_i(lambda)} C[x]``."""
    total = [0] * (max_degree + 1)
    for lam in degree_basis(n):
        series = [1] + [0] * max_degree
        for part in set(lam):
            mult = lam.count(part)
            factor = [_bounded_parts(d, mult) for d in range(max_degree + 1)]
            series = [sum(series[i] * factor[d - i] for i in range(d + 1))
                      for d in range(max_degree + 1)]
        total = [x + y for x, y in zip(total, series)]
    return total


# trace reduction ----------------------------------------------------------------------

ClassKey = tuple  # (cycle type, exponents per cycle)


def class_representative(n: int, key: ClassKey) -> DahaElement:
    """``x^e * std(shape)`` with the exponents ``e`` placed on the cycle heads."""
    shape, exps = key
    a = [0] * n
    for head, e in zip(block_heads(shape), exps):
        a[head - 1] = e
    return DahaElement.monomial(n, a, standard_perm(shape))


def _sorting_block_perm(shape: tuple, exps: tuple) -> Optional[tuple]:
    """Permutation moving equal-length blocks into descending exponent order."""
    heads = block_heads(shape)
    order = sorted(range(len(shape)), key=lambda b: (-shape[b], -exps[b], b))
    if [exps[b] for b in order] == list(exps):
        return None
    g = [0] * sum(shape)
    for new_pos, old in enumerate(order):
        for t in range(shape[old]):
            g[heads[old] - 1 + t] = heads[new_pos] + t
    return tuple(g)


def _conjugate(g: tuple, f: DahaElement) -> DahaElement:
    n = f.n
    return multiply(multiply(DahaElement.perm(n, g), f), DahaElement.perm(n, perm_inverse(g)))


def _reduce_into(out: dict, f: DahaElement, scale_by) -> None:
    for (a, w), c in f.items():
        for key, k in _reduce_basis(a, w).items():
            _add_term(out, key, scale_by * c * k)


@lru_cache(maxsize=None)
def _reduce_basis_cached(a: tuple, w: tuple) -> tuple:
    return tuple(_reduce_basis_impl(a, w).items())


def _reduce_basis(a: tuple, w: tuple) -> dict:
    return dict(_reduce_basis_cached(a, w))


def _expect_top(f: DahaElement, key: tuple) -> None:
    deg = sum(key[0])
    tops = [k for k in f._terms if sum(k[0]) == deg]
    if tops != [key] or f._terms[key] != 1:
        raise ArithmeticError(f"unexpected top-degree part while reducing: {tops}")


def _reduce_basis_impl(a: tuple, w: tuple) -> dict:
    n = len(w)
    shape = cycle_type(w)
    std = standard_perm(shape)
    out: dict = {}
    if w != std:
        # conjugate cycles onto consecutive blocks
        g = [0] * n
        for cyc, head in zip(cycles(w), block_heads(shape)):
            for t, j in enumerate(cyc):
                g[j - 1] = head + t
        g = tuple(g)
        conj = _conjugate(g, DahaElement.monomial(n, a, w))
        _expect_top(conj, (act_on_exps(g, a), std))
        _reduce_into(out, conj, 1)
        return out
    heads = set(block_heads(shape))
    for i in range(1, n + 1):
        if i not in heads and a[i - 1] > 0:
            # x^a std = x_i (x^{a - e_i} std) == (x^{a - e_i} std) x_i  modulo commutators
            rest = list(a)
            rest[i - 1] -= 1
            moved = multiply(DahaElement.monomial(n, rest, std), DahaElement.x(n, i))
            rest[std[i - 1] - 1] += 1
            _expect_top(moved, (tuple(rest), std))
            _reduce_into(out, moved, 1)
            return out
    exps = tuple(a[h - 1] for h in block_heads(shape))
    g = _sorting_block_perm(shape, exps)
    if g is not None:
        conj = _conjugate(g, DahaElement.monomial(n, a, std))
        _expect_top(conj, (act_on_exps(g, a), std))
        _reduce_into(out, conj, 1)
        return out
    out[(shape, exps)] = mpq(1)
    return out


def trace_reduce(f: DahaElement) -> dict:
    """Canonical class of ``f`` in the cocenter.

    Returns ``{(cycle_type, exponents): coeff}``; ``exponents`` has one entry
    per cycle, descending within cycles of equal length.
    """
    out: dict = {}
    _reduce_into(out, f, 1)
    return dict(sorted(out.items(), key=lambda kv: (-sum(kv[0][1]), kv[0])))


def class_element(n: int, classes: dict) -> DahaElement:
    """Sum of representatives for a :func:`trace_reduce` result."""
    out = DahaElement(n, {})
    for key, c in classes.items():
        out = out + c * class_representative(n, key)
    return out


def classes_to_json(classes: dict) -> list:
    return [{"cycle_type": list(shape), "exps": list(exps), "coeff": format_rational(c)}
            for (shape, exps), c in classes.items()]


def in_commutator_span(f: DahaElement, buffer: int = 0) -> bool:
    """Is ``f`` a sum of commutators of degree <= deg(f) + buffer?"""
    if not f:
        return True
    space, cols = commutator_space(f.n, max(f.degree(), 0) + buffer)
    return space.contains(cols.vec(f))

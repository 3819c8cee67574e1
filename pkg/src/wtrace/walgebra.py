"""Generators ``w(l, k)`` of W_{1+inf}/(C-1, w_{0,0}) acting on Fock space.

Conventions: ``w(-n, 0)`` multiplies by ``p_n``, ``w(n, 0)`` is ``n d/dp_n``,
``w(0, 1)`` is minus the degree, and ``w(0, 2)`` is the cubic cut-and-join
operator shifted by ``-w(0, 1)``.  Everything else is produced by solving a
commutator relation for its top-order term, with the coefficients read off
:func:`structure_constants`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .exact import ONE, ZERO, format_rational
from .gradop import (FormalSum, GradedOperator, annihilation, commutator, compose,
                     creation, diagonal_degree, equal_up_to, first_difference,
                     identity, linear, zero)


@dataclass(frozen=True)
class CommutatorExpansion:
    """``[w(l,k), w(m,j)] = sum(coeff * w(l+m, i)) + central``."""

    linear: tuple  # ((l+m, i), coeff) pairs sorted by i
    central: mpq

    def as_dict(self) -> dict:
        return dict(self.linear)

    def to_json(self) -> dict:
        return {
            "linear": [{"l": l, "k": k, "coeff": format_rational(c)} for (l, k), c in self.linear],
            "central": format_rational(self.central),
        }


# structure constants ---------------------------------------------------------

def _binomial_poly(shift: int, power: int) -> list:
    """Coefficients of ``(D + shift)^power`` indexed by the power of ``D``."""
    return [mpq(comb(power, i) * shift ** (power - i)) for i in range(power + 1)]


@lru_cache(maxsize=None)
def _inverse_expm1_ratio(order: int) -> tuple:
    """Coefficients of ``s / (1 - e^s)`` up to ``s^order`` by series inversion."""
    # (e^s - 1)/s = sum s^n / (n+1)!
    a = [mpq(1, factorial(n + 1)) for n in range(order + 1)]
    inv = [ZERO] * (order + 1)
    inv[0] = 1 / a[0]
    for n in range(1, order + 1):
        inv[n] = -sum(a[i] * inv[n - i] for i in range(1, n + 1)) / a[0]
    return tuple(-x for x in inv)


@lru_cache(maxsize=None)
def central_term(l: int, k: int, j: int) -> mpq:
    """Coefficient of ``a^k b^j / (k! j!)`` in ``(e^{-l a} - e^{l b}) / (1 - e^{a+b})``.

    This is the central part of ``[w(l,k), w(-l,j)]``.  The numerator vanishes
    on ``a + b = 0`` so it is divided by ``a + b`` exactly first.
    """
    m = -l
    top = k + j
    # numerator coefficients n[(x, y)] up to total degree top+1
    num = {}
    for x in range(top + 2):
        num[(x, 0)] = num.get((x, 0), ZERO) + mpq((-l) ** x, factorial(x))
        num[(0, x)] = num.get((0, x), ZERO) - mpq((-m) ** x, factorial(x))
    # quotient by (a + b): n[x, y] = q[x-1, y] + q[x, y-1]
    quo = {}
    for total in range(top + 1):
        prev = ZERO
        for y in range(total + 1):
            x = total - y
            # n[x+1, y] = q[x, y] + q[x+1, y-1]
            q = num.get((x + 1, y), ZERO) - prev
            quo[(x, y)] = q
            prev = q
        if num.get((0, total + 1), ZERO) != prev:
            raise ArithmeticError("numerator is not divisible by a + b")
    g = _inverse_expm1_ratio(top)
    # coefficient of a^k b^j in quo(a,b) * g(a+b)
    acc = ZERO
    for x in range(k + 1):
        for y in range(j + 1):
            qxy = quo.get((x, y), ZERO)
            if not qxy:
                continue
            n_ = (k - x) + (j - y)
            acc += qxy * g[n_] * comb(n_, k - x)
    return acc * factorial(k) * factorial(j)


@lru_cache(maxsize=None)
def structure_constants(l: int, k: int, m: int, j: int) -> CommutatorExpansion:
    """Expansion of ``[w(l,k), w(m,j)]`` in the quotient (C = 1, w_{0,0} = 0)."""
    coeffs: dict = {}
    for i, c in enumerate(_binomial_poly(m, k)):
        coeffs[i + j] = coeffs.get(i + j, ZERO) + c
    for i, c in enumerate(_binomial_poly(l, j)):
        coeffs[i + k] = coeffs.get(i + k, ZERO) - c
    rank = l + m
    lin = tuple(((rank, i), c) for i, c in sorted(coeffs.items())
                if c and (rank, i) != (0, 0))
    central = central_term(l, k, j) if l == -m else ZERO
    return CommutatorExpansion(lin, central)


# generators ------------------------------------------------------------------

_memo: dict = {}
_memo_lock = threading.RLock()


@lru_cache(maxsize=None)
def _cubic_pair(k: int, l: int) -> tuple:
    return (
        compose(creation(l), compose(creation(k), annihilation(k + l))),
        compose(creation(k + l), compose(annihilation(l), annihilation(k))),
    )


def _cubic_summands(d: int):
    # a summand with annihilation weight k + l > d kills degree-d input
    for total in range(2, d + 1):
        for k in range(1, total):
            for op in _cubic_pair(k, total - k):
                yield ONE, op


def expansion_operator(exp: CommutatorExpansion, rank: int,
                       skip: tuple | None = None) -> GradedOperator:
    """Operator ``sum(coeff * w) + central * id`` of degree shift ``rank``,
    optionally omitting one index."""
    terms = [(c, w(*idx)) for idx, c in exp.linear if idx != skip]
    if exp.central:
        terms.append((exp.central, identity()))
    return linear(terms, rank)


def _solve_top(a: tuple, b: tuple, target: tuple) -> GradedOperator:
    """Isolate ``w(target)`` from ``[w(a), w(b)]`` using the structure constants."""
    exp = structure_constants(*a, *b)
    coeffs = exp.as_dict()
    top = coeffs.get(target, ZERO)
    if not top:
        raise ArithmeticError(f"w{target} has zero coefficient in [w{a}, w{b}]")
    for idx in coeffs:
        if idx != target and idx[1] >= target[1]:
            raise ArithmeticError(f"recursion for w{target} is not triangular")
    rest = expansion_operator(exp, -target[0], skip=target)
    bracket = commutator(w(*a), w(*b))
    return linear([(1 / top, bracket), (-1 / top, rest)], -target[0])


def _build(l: int, k: int) -> GradedOperator:
    if (l, k) == (0, 0):
        return zero(0)
    if k == 0:
        return creation(-l) if l < 0 else annihilation(l)
    if (l, k) == (0, 1):
        return diagonal_degree(-1)
    if (l, k) == (0, 2):
        cubic = FormalSum(0, _cubic_summands, label="cut-and-join")
        return linear([(1, cubic), (-1, w(0, 1))], 0)
    if l == 1 or l == -1:
        return _solve_top((0, 2), (l, k - 1), (l, k))
    if l == 0:
        return _solve_top((-1, 0), (1, k + 1), (0, k))
    if l >= 2:
        return _solve_top((1, k + 1), (l - 1, 0), (l, k))
    return _solve_top((-1, k + 1), (l + 1, 0), (l, k))


def w(l: int, k: int) -> GradedOperator:
    """The generator ``w_{l,k}``: degree shift ``-l``, filtration ``k``.

    The W-algebra rank of ``w_{l,k}`` is ``l``; on Fock space it lowers the
    degree by ``l``, so the operator's ``rank`` attribute is ``-l``.
    """
    if k < 0:
        raise ValueError("differential order k must be nonnegative")
    key = (int(l), int(k))
    op = _memo.get(key)
    if op is not None:
        return op
    with _memo_lock:
        op = _memo.get(key)
        if op is None:
            op = _build(*key)
            op.filtration = key[1]
            op.label = f"w({key[0]},{key[1]})"
            _memo[key] = op
    return op


def virasoro_bar(l: int) -> GradedOperator:
    """``-w(l,1) - (l+1)/2 * w(l,0)``."""
    return linear([(-1, w(l, 1)), (mpq(-(l + 1), 2), w(l, 0))], -l)


def relation_sides(l: int, k: int, m: int, j: int) -> tuple:
    lhs = commutator(w(l, k), w(m, j))
    rhs = expansion_operator(structure_constants(l, k, m, j), -(l + m))
    return lhs, rhs


def check_relation(l: int, k: int, m: int, j: int, max_degree: int) -> bool:
    """Does ``[w(l,k), w(m,j)]`` match its structure constants on degrees <= max_degree?"""
    return equal_up_to(*relation_sides(l, k, m, j), max_degree)


def relation_witness(l: int, k: int, m: int, j: int, max_degree: int):
    """First failing degree of the relation, or None."""
    return first_difference(*relation_sides(l, k, m, j), max_degree)

"""Tr(H) realized on Fock space through its image in the W-algebra.

Each trace generator is *defined* as the operator it maps to: ``h(1,0)`` is
``w(-1,0)``, ``h(-1,0)`` is ``w(1,0)``, ``c(0)`` is ``-w(0,1)`` and
``c(0)+c(1)`` is ``w(0,2)``.  Dots are added with the ``c(1)`` commutator
recursion and higher bubbles come from ``[h(-1,0), h(1,l)]``.  The relations
between these elements are then checked, never assumed.

Products follow ``[f][g] = [fg]``, realized as composition ``f @ g``.
"""

from __future__ import annotations

import threading
from typing import Optional

from gmpy2 import mpq

from .gradop import (GradedOperator, commutator, compose, identity, linear,
                     solve_operator_span, zero)
from .walgebra import w

_lock = threading.RLock()


def _memo(fn):
    cache: dict = {}

    def wrapper(*args):
        op = cache.get(args)
        if op is None:
            with _lock:
                op = cache.get(args)
                if op is None:
                    op = fn(*args)
                    cache[args] = op
        return op

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _tag(op: GradedOperator, label: str, filtration: int) -> GradedOperator:
    # shared W-generators keep their own labels
    if not op.label:
        op.label = label
        op.filtration = filtration
    return op


@_memo
def h(n: int, a: int = 0) -> GradedOperator:
    """``h_n (x) x_1^a``: rank ``n``, filtration ``a``."""
    if n == 0:
        raise ValueError("h_0 is not a generator")
    if a < 0:
        raise ValueError("dot count must be nonnegative")
    if a == 0:
        return w(-n, 0)
    m, s = abs(n), (1 if n > 0 else -1)
    # [h_{sm} x^{a-1}, c_1] = -2ms h_{sm} x^a + sum_j 2(m-j) h_{sj} x^{a-1} h_{s(m-j)}
    terms = [(mpq(-s, 2 * m), commutator(h(n, a - 1), c(1)))]
    for j in range(1, m):
        terms.append((mpq(s * (m - j), m), compose(h(s * j, a - 1), h(s * (m - j), 0))))
    return _tag(linear(terms, n), f"h({n},{a})", a)


@_memo
def c(j: int) -> GradedOperator:
    """Clockwise bubble ``c_j`` (central, rank 0)."""
    if j < 0:
        raise ValueError("use bubble() for the negative-index conventions")
    if j == 0:
        return _tag(linear([(-1, w(0, 1))], 0), "c(0)", 0)
    if j == 1:
        return _tag(linear([(1, w(0, 2)), (1, w(0, 1))], 0), "c(1)", 1)
    l = j + 2
    terms = [(mpq(1, l), bubble_bracket(l))]
    for i in range(1, l - 1):
        terms.append((mpq(-(l - i), l), compose(ctilde(i), c(l - 2 - i))))
    return _tag(linear(terms, 0), f"c({j})", j)


def bubble(j: int) -> GradedOperator:
    """``c_j`` extended by ``c_{-2} = -1`` and ``c_{-n} = 0`` otherwise."""
    if j >= 0:
        return c(j)
    if j == -2:
        return linear([(-1, identity())], 0)
    return zero(0)


@_memo
def ctilde(j: int) -> GradedOperator:
    """Counterclockwise bubble: ``1``, ``0``, then ``sum_i ctilde(i) c(n-1-i)``."""
    if j < 0:
        raise ValueError("ctilde index must be nonnegative")
    if j == 0:
        return identity()
    if j == 1:
        return zero(0)
    n = j - 1
    return _tag(linear([(1, compose(ctilde(i), c(n - 1 - i))) for i in range(n)], 0),
                f"ctilde({j})", j)


@_memo
def bubble_bracket(l: int) -> GradedOperator:
    """``A_l = [h(-1,0), h(1,l)]``."""
    return commutator(h(-1, 0), h(1, l))


def bubble_lemma_rhs(a: int, b: int) -> GradedOperator:
    """``ctilde_{a+b} + sum_l (a+b-1-l) ctilde_l c_{a+b-2-l}``."""
    s = a + b
    terms = [(1, ctilde(s))]
    for l in range(s - 1):
        terms.append((s - 1 - l, compose(ctilde(l), bubble(s - 2 - l))))
    return linear(terms, 0)


@_memo
def p_op(n: int) -> GradedOperator:
    """``p^{(n)} (x) 1`` by the Newton recursion in the ``h(k,0)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return identity()
    return _tag(linear([(mpq(1, n), compose(h(k, 0), p_op(n - k))) for k in range(1, n + 1)], n),
                f"p({n})", 0)


@_memo
def q_op(n: int) -> GradedOperator:
    """``q^{(n)} (x) 1``, the mirror of :func:`p_op` in the ``h(-k,0)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return identity()
    return _tag(linear([(mpq(1, n), compose(h(-k, 0), q_op(n - k))) for k in range(1, n + 1)], -n),
                f"q({n})", 0)


@_memo
def h_dot(m: int, i: int) -> GradedOperator:
    """``h_m (x) x_i`` via the dot-move rule, grounded at ``h(m,1)``."""
    if not 1 <= i <= abs(m):
        raise ValueError(f"dot position {i} outside 1..{abs(m)}")
    if i == 1:
        return h(m, 1)
    s = 1 if m > 0 else -1
    k = i - 1
    # h_{+-n} x_k = h_{+-n} x_{k+1} +- h_{+-k} h_{+-(n-k)}
    return linear([(1, h_dot(m, k)), (-s, compose(h(s * k, 0), h(m - s * k, 0)))], m)


@_memo
def L(l: int) -> GradedOperator:
    """Virasoro element: ``c_0`` at 0, else ``|1/l| h_{-l} (x) (x_1 + ... + x_|l|)``."""
    if l == 0:
        return c(0)
    n = abs(l)
    return _tag(linear([(mpq(1, n), h_dot(-l, i)) for i in range(1, n + 1)], -l), f"L({l})", 1)


def b(l: int) -> GradedOperator:
    """``b_l = h_{-l} (x) 1``; ``b_0`` is taken as 0, the image of ``w_{0,0}``."""
    if l == 0:
        return zero(0)
    return h(-l, 0)


def psi_leading_term(l: int, max_degree: int) -> Optional[list]:
    """Coefficients of ``h(1,l)`` in the span of ``w(-1,0..l)`` on degrees <= max_degree."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    return solve_operator_span(h(1, l), [w(-1, k) for k in range(l + 1)], max_degree)


# lemma suites -------------------------------------------------------------------

LEMMAS = ("heisenberg", "virasoro_half", "mixed_n1m0", "mixed_-m1n0", "mixed_n1-m0",
          "mixed_-m1n1", "heisenberg_virasoro", "remark")


def _heisenberg_rhs(m: int, n: int) -> GradedOperator:
    if m == -n:
        return linear([(n, identity())], 0)
    return zero(m + n)


def _mixed_m1n0_rhs(m: int, n: int) -> GradedOperator:
    # [h_{-m} x_1, h_n]
    return linear([(n, h(n - m, 0))], n - m) if n > m else zero(n - m)


def _mixed_n1m0neg_rhs(n: int, m: int) -> GradedOperator:
    # [h_n x_1, h_{-m}]
    if n > m:
        return linear([(-2 * m, h(n - m, 0))], n - m)
    if n == m:
        return zero(0)
    return linear([(-m, h(n - m, 0))], n - m)


def _mixed_m1n1_rhs(m: int, n: int) -> GradedOperator:
    # [h_{-m} x_1, h_n x_1], n != m
    terms = [(n + m, h(n - m, 1))]
    terms += [(-j, compose(h(n - j, 0), h(j - m, 0))) for j in range(1, min(m, n))]
    return linear(terms, n - m)


def remark_rhs(n: int, m: int) -> GradedOperator:
    """Right side of the ``[h_n x_1, h_m x_1^2]`` formula."""
    terms = [(m - 2 * n, h(n + m, 2))]
    terms += [(2 * n - j, compose(h(j, 1), h(n + m - j, 0))) for j in range(1, n + 1)]
    terms += [(-j, compose(h(m + j, 1), h(n - j, 0))) for j in range(1, n)]
    return linear(terms, n + m)


def h0x1_observation(m: int, max_degree: int) -> Optional[list]:
    """Solve ``[h_{-m} x_1, h_m x_1] + sum_j j h_{m-j} h_{j-m} = 2m X`` for
    ``X`` in span{c_0, 1}; returns the coefficients of ``X``."""
    lhs = linear([(1, commutator(h(-m, 1), h(m, 1)))]
                 + [(j, compose(h(m - j, 0), h(j - m, 0))) for j in range(1, m)], 0)
    sol = solve_operator_span(lhs, [c(0), identity()], max_degree)
    return None if sol is None else [x / (2 * m) for x in sol]


def _cases(name: str, bound: int, max_degree: int) -> list:
    from .report import operator_case

    D = max_degree
    out = []
    signed = [k for k in range(-bound, bound + 1) if k]
    pos = range(1, bound + 1)
    if name == "heisenberg":
        for m in signed:
            for n in signed:
                out.append(operator_case({"m": m, "n": n}, lambda m=m, n=n: commutator(h(m, 0), h(n, 0)),
                                         lambda m=m, n=n: _heisenberg_rhs(m, n), D))
    elif name == "virasoro_half":
        for m in signed:
            for n in signed:
                if m * n > 0:
                    out.append(operator_case(
                        {"m": m, "n": n}, lambda m=m, n=n: commutator(h(m, 1), h(n, 1)),
                        lambda m=m, n=n: linear([(n - m, h(m + n, 1))], m + n), D))
    elif name == "mixed_n1m0":
        for n in signed:
            for m in signed:
                if m * n > 0:
                    out.append(operator_case(
                        {"n": n, "m": m}, lambda m=m, n=n: commutator(h(n, 1), h(m, 0)),
                        lambda m=m, n=n: linear([(m, h(m + n, 0))], m + n), D))
    elif name == "mixed_-m1n0":
        for m in pos:
            for n in pos:
                out.append(operator_case({"m": m, "n": n}, lambda m=m, n=n: commutator(h(-m, 1), h(n, 0)),
                                         lambda m=m, n=n: _mixed_m1n0_rhs(m, n), D))
    elif name == "mixed_n1-m0":
        for n in pos:
            for m in pos:
                out.append(operator_case({"n": n, "m": m}, lambda m=m, n=n: commutator(h(n, 1), h(-m, 0)),
                                         lambda m=m, n=n: _mixed_n1m0neg_rhs(n, m), D))
    elif name == "mixed_-m1n1":
        # n == m would need the undefined h_0 x_1
        for m in pos:
            for n in pos:
                if n != m:
                    out.append(operator_case(
                        {"m": m, "n": n}, lambda m=m, n=n: commutator(h(-m, 1), h(n, 1)),
                        lambda m=m, n=n: _mixed_m1n1_rhs(m, n), D))
    elif name == "heisenberg_virasoro":
        rng = range(-bound, bound + 1)
        for k in rng:
            for l in rng:
                if k and l:
                    out.append(operator_case(
                        {"relation": "bb", "k": k, "l": l}, lambda k=k, l=l: commutator(b(k), b(l)),
                        lambda k=k, l=l: linear([(k, identity())], 0) if k == -l else zero(-(k + l)), D))
                extra = [(mpq(k ** 3 - k, 12), identity())] if k == -l else []
                out.append(operator_case(
                    {"relation": "LL", "k": k, "l": l}, lambda k=k, l=l: commutator(L(k), L(l)),
                    lambda k=k, l=l, extra=extra: linear([(k - l, L(k + l))] + extra, -(k + l)), D))
                if k:
                    out.append(operator_case(
                        {"relation": "Lb", "l": l, "k": k}, lambda k=k, l=l: commutator(L(l), b(k)),
                        lambda k=k, l=l: linear([(-k, b(l + k))], -(l + k)), D))
    elif name == "remark":
        for n, m in [(n, m) for n in pos for m in pos]:
            out.append(operator_case({"n": n, "m": m}, lambda m=m, n=n: commutator(h(n, 1), h(m, 2)),
                                     lambda m=m, n=n: remark_rhs(n, m), D))
    else:
        raise ValueError(f"unknown lemma {name!r}; expected one of {LEMMAS}")
    return out


def lemma_suite(name: str, ranges, max_degree: int, jobs: int = 1):
    """Check one lemma family over ``1 <= |m|, |n| <= ranges`` (or explicit pairs
    for ``remark``) on Fock degrees <= max_degree."""
    from .report import operator_case, run_suite

    if name == "remark" and not isinstance(ranges, int):
        pairs = [tuple(p) for p in ranges]
        if any(n < 1 or m < 1 for n, m in pairs):
            raise ValueError("remark pairs need positive indices")
        pending = [operator_case({"n": n, "m": m}, lambda m=m, n=n: commutator(h(n, 1), h(m, 2)),
                                 lambda m=m, n=n: remark_rhs(n, m), max_degree) for n, m in pairs]
        return run_suite(name, pending, jobs)
    if not isinstance(ranges, int) or ranges < 1:
        raise ValueError(f"range bound must be a positive integer, got {ranges!r}")
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    return run_suite(name, _cases(name, ranges, max_degree), jobs)

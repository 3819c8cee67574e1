"""Truncated bivariate series for (rank, dot-degree) Poincare counting."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .exact import ZERO, format_rational
from .fock import degree_basis


@dataclass
class BiSeries:
    """Coefficients of ``t^r q^k`` for ``0 <= r <= max_t``, ``0 <= k <= max_q``.

    ``side == "<"`` means the stored ``r`` stands for ``t^{-r}``.
    """

    max_t: int
    max_q: int
    side: str = ">"
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.side not in (">", "<"):
            raise ValueError("side must be '>' or '<'")
        self.coeffs = {k: mpq(v) for k, v in self.coeffs.items() if v}

    def __getitem__(self, tq: tuple) -> mpq:
        return self.coeffs.get(tq, ZERO)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BiSeries) and (self.max_t, self.max_q) == (other.max_t, other.max_q)
                and self.coeffs == other.coeffs)

    @classmethod
    def one(cls, max_t: int, max_q: int, side: str = ">") -> "BiSeries":
        return cls(max_t, max_q, side, {(0, 0): 1})

    def mul(self, other: "BiSeries") -> "BiSeries":
        out: dict = {}
        for (r1, k1), a in self.coeffs.items():
            for (r2, k2), b in other.coeffs.items():
                r, k = r1 + r2, k1 + k2
                if r <= self.max_t and k <= self.max_q:
                    out[(r, k)] = out.get((r, k), ZERO) + a * b
        return BiSeries(self.max_t, self.max_q, self.side, out)

    def mul_geometric(self, r: int, k: int) -> "BiSeries":
        """Multiply by ``1 / (1 - t^r q^k)`` within the truncation."""
        if r == 0 and k == 0:
            raise ZeroDivisionError("1/(1 - 1)")
        out = dict(self.coeffs)
        # out[R, K] = self[R, K] + out[R - r, K - k], filled in increasing order
        for R in range(self.max_t + 1):
            for K in range(self.max_q + 1):
                if R >= r and K >= k:
                    prev = out.get((R - r, K - k), ZERO)
                    if prev:
                        out[(R, K)] = out.get((R, K), ZERO) + prev
        return BiSeries(self.max_t, self.max_q, self.side, out)

    def mirrored(self) -> "BiSeries":
        return BiSeries(self.max_t, self.max_q, "<" if self.side == ">" else ">", dict(self.coeffs))

    def to_json(self) -> dict:
        sign = 1 if self.side == ">" else -1
        items = sorted(self.coeffs.items())
        return {"side": self.side, "max_t": self.max_t, "max_q": self.max_q,
                "coeffs": [{"t": sign * r, "q": k, "value": format_rational(v)}
                           for (r, k), v in items]}


def product_formula(side: str, max_t: int, max_q: int) -> BiSeries:
    """``prod_{0<r<=R, 0<=k<=K} 1/(1 - t^r q^k)`` truncated at ``(R, K)``."""
    if max_t < 0 or max_q < 0:
        raise ValueError("truncation orders must be nonnegative")
    s = BiSeries.one(max_t, max_q, side)
    for r in range(1, max_t + 1):
        for k in range(max_q + 1):
            s = s.mul_geometric(r, k)
    return s


def _at_most_parts(d: int, parts: int) -> int:
    return sum(1 for p in degree_basis(d) if len(p) <= parts)


def trace_count(max_t: int, max_q: int, side: str = ">") -> BiSeries:
    """Count of ``tensor_i S^{p_i(lambda)} C[x]`` over partitions ``lambda`` of each rank."""
    out: dict = {}
    for n in range(max_t + 1):
        for lam in degree_basis(n):
            series = [1] + [0] * max_q
            for part in set(lam):
                mult = lam.count(part)
                factor = [_at_most_parts(d, mult) for d in range(max_q + 1)]
                series = [sum(series[i] * factor[d - i] for i in range(d + 1))
                          for d in range(max_q + 1)]
            for k, v in enumerate(series):
                if v:
                    out[(n, k)] = out.get((n, k), 0) + v
    return BiSeries(max_t, max_q, side, out)


def phi_series(max_q: int, max_t: int) -> dict:
    """``sum_m q^m / ((1-t)...(1-t^m))`` as ``{(q_exp, t_exp): coeff}``."""
    out: dict = {}
    for m in range(max_q + 1):
        # 1/((1-t)...(1-t^m)) counts partitions into parts <= m
        poly = [0] * (max_t + 1)
        poly[0] = 1
        for part in range(1, m + 1):
            for e in range(part, max_t + 1):
                poly[e] += poly[e - part]
        for e, v in enumerate(poly):
            if v:
                out[(m, e)] = mpq(v)
    return out


def phi_product(max_q: int, max_t: int) -> dict:
    """``prod_{j>=0} 1/(1 - q t^j)`` as ``{(q_exp, t_exp): coeff}``."""
    s = BiSeries.one(max_q, max_t)  # first coordinate plays q here
    for j in range(max_t + 1):
        s = s.mul_geometric(1, j)
    return dict(s.coeffs)


def hypergeometric_check(max_q: int, max_t: int) -> bool:
    """Compare both sides of the ``1phi0(0; t, q)`` product identity to orders ``(Q, T)``."""
    return phi_series(max_q, max_t) == phi_product(max_q, max_t)

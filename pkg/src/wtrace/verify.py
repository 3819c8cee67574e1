"""Verification suites aggregated by the ``verify`` command."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from gmpy2 import mpq

from . import daha, series, traceh, walgebra
from .exact import format_rational
from .gradop import commutator, compose, equal_up_to, identity, linear, zero
from .report import SuiteReport, flag_case, operator_case, run_suite
from .traceh import L, b, bubble_bracket, bubble_lemma_rhs, c, ctilde, h, p_op, q_op
from .walgebra import virasoro_bar, w

SUITES = ("walg", "heisenberg", "virasoro", "trace", "pq", "bubbles", "daha", "series", "psi")


@dataclass
class RunConfig:
    max_degree: int = 8
    l_max: int = 3
    k_max: int = 3
    mn_max: int = 4
    daha_n: tuple = (2, 3)
    daha_max_degree: tuple = (4, 2)
    daha_buffer: int = 2
    daha_relation_degree: int = 4
    jobs: int = 1

    def validate(self) -> None:
        for name in ("max_degree", "l_max", "k_max", "mn_max", "jobs", "daha_relation_degree"):
            if getattr(self, name) < 0 or (name == "jobs" and self.jobs < 1):
                raise ValueError(f"{name} out of range")
        if self.max_degree > 14 or self.l_max > 6 or self.k_max > 6 or self.mn_max > 8:
            raise ValueError("bounds exceed the resource guard (D<=14, L<=6, K<=6, M<=8)")
        if self.daha_buffer < 0 or any(n < 1 or n > 4 for n in self.daha_n):
            raise ValueError("daha n must be in 1..4 and buffer nonnegative")
        if len(self.daha_n) != len(self.daha_max_degree):
            raise ValueError("daha n and max-degree lists must align")


def _w_closed_forms(cfg: RunConfig) -> list:
    """The displayed consequences of the master relation, transcribed directly."""
    D, R, out = cfg.max_degree, cfg.l_max, []
    ls = range(-R, R + 1)
    for l in ls:
        for k in ls:
            central = [(mpq(k ** 3 - k, 6), identity())] if l == -k else []
            out.append(operator_case(
                {"relation": "w_l1_k1", "l": l, "k": k}, lambda l=l, k=k: commutator(w(l, 1), w(k, 1)),
                lambda l=l, k=k, central=central: linear([(k - l, w(l + k, 1))] + central, -(l + k)), D))
            central = [(mpq(-k * (k - 1), 2), identity())] if l == -k else []
            out.append(operator_case(
                {"relation": "w_l1_k0", "l": l, "k": k}, lambda l=l, k=k: commutator(w(l, 1), w(k, 0)),
                lambda l=l, k=k, central=central: linear([(k, w(l + k, 0))] + central, -(l + k)), D))
        out.append(operator_case(
            {"relation": "w_l0_02", "l": l}, lambda l=l: commutator(w(l, 0), w(0, 2)),
            lambda l=l: linear([(-2 * l, w(l, 1)), (-l * l, w(l, 0))], -l), D))
    for a in range(cfg.k_max + 1):
        for bb in range(cfg.k_max + 1):
            def rhs(a=a, bb=bb):
                terms = [(comb(a, r), w(0, a + bb - r)) for r in range(1, a + 1)]
                terms += [(-(-1) ** s * comb(bb, s), w(0, a + bb - s)) for s in range(1, bb + 1)]
                if a == 0:
                    terms.append(((-1) ** (bb + 1), identity()))
                return linear(terms, 0)
            out.append(operator_case({"relation": "w_-1a_1b", "a": a, "b": bb},
                                     lambda a=a, bb=bb: commutator(w(-1, a), w(1, bb)), rhs, D))
    return out


def suite_walg(cfg: RunConfig) -> SuiteReport:
    D, R, K = cfg.max_degree, cfg.l_max, cfg.k_max
    pending = []
    for l in range(-R, R + 1):
        for m in range(-R, R + 1):
            for k in range(K + 1):
                for j in range(K + 1):
                    pending.append(operator_case(
                        {"relation": "structure", "l": l, "k": k, "m": m, "j": j},
                        lambda l=l, k=k, m=m, j=j: walgebra.relation_sides(l, k, m, j)[0],
                        lambda l=l, k=k, m=m, j=j: walgebra.relation_sides(l, k, m, j)[1], D))
    pending += _w_closed_forms(cfg)
    # the k = 0 instance of the |l| >= 2 recursion rebuilds the annihilation/creation atoms
    for l in range(2, R + 2):
        pending.append(operator_case({"relation": "recursion_k0", "l": l},
                                     lambda l=l: commutator(w(1, 1), w(l - 1, 0)),
                                     lambda l=l: linear([(l - 1, w(l, 0))], -l), D))
        pending.append(operator_case({"relation": "recursion_k0", "l": -l},
                                     lambda l=l: commutator(w(-1, 1), w(-l + 1, 0)),
                                     lambda l=l: linear([(-l + 1, w(-l, 0))], l), D))
    # w(0,2) from the cubic formula vs. from [w(-1,0), w(1,3)]
    pending.append(operator_case({"relation": "w02_two_routes"}, lambda: w(0, 2),
                                 lambda: walgebra._solve_top((-1, 0), (1, 3), (0, 2)), D))
    for l in range(1, R + 1):
        pending.append(flag_case({"relation": "freeness", "l": l},
                                 lambda l=l: _independent([w(l, k) for k in range(K + 1)], D)))
    return run_suite("walg", pending, cfg.jobs)


def _independent(ops, D):
    from .exact import rank
    from .gradop import _flatten

    index: dict = {}
    vecs = [_flatten(op, D, index) for op in ops]
    r = rank(vecs)
    return r == len(ops), {"rank": r, "count": len(ops)}


def suite_heisenberg(cfg: RunConfig) -> SuiteReport:
    D = cfg.max_degree
    pending = []
    ls = [x for x in range(-5, 6) if x]
    for l in ls:
        for k in ls:
            pending.append(operator_case(
                {"side": "W", "l": l, "k": k}, lambda l=l, k=k: commutator(w(l, 0), w(k, 0)),
                lambda l=l, k=k: linear([(l, identity())], 0) if l == -k else zero(-(l + k)), D))
    rep = traceh.lemma_suite("heisenberg", 5, D, cfg.jobs)
    for case in rep.cases:
        case.params = {"side": "trace", **case.params}
    return SuiteReport("heisenberg", run_suite("", pending, cfg.jobs).cases + rep.cases)


def suite_virasoro(cfg: RunConfig) -> SuiteReport:
    D, R = cfg.max_degree, cfg.l_max
    pending = []
    for l in range(-R, R + 1):
        for k in range(-R, R + 1):
            extra = [(mpq(l ** 3 - l, 12), identity())] if l == -k else []
            pending.append(operator_case(
                {"l": l, "k": k}, lambda l=l, k=k: commutator(virasoro_bar(l), virasoro_bar(k)),
                lambda l=l, k=k, extra=extra: linear([(l - k, virasoro_bar(l + k))] + extra, -(l + k)), D))

    def central_two():
        from .gradop import solve_operator_span
        lhs = linear([(1, commutator(virasoro_bar(2), virasoro_bar(-2))), (-4, virasoro_bar(0))], 0)
        sol = solve_operator_span(lhs, [identity()], D)
        return sol == [mpq(1, 2)], {"central": None if sol is None else format_rational(sol[0])}
    pending.append(flag_case({"relation": "central_l2"}, central_two))
    return run_suite("virasoro", pending, cfg.jobs)


def suite_trace(cfg: RunConfig) -> SuiteReport:
    D, M = cfg.max_degree, cfg.mn_max
    cases = []
    for name, bound in (("virasoro_half", M), ("mixed_n1m0", M), ("mixed_-m1n0", M),
                        ("mixed_n1-m0", M), ("mixed_-m1n1", M), ("heisenberg_virasoro", cfg.l_max),
                        ("remark", [(1, 2), (2, 2), (2, 3)])):
        rep = traceh.lemma_suite(name, bound, D, cfg.jobs)
        for case in rep.cases:
            case.params = {"lemma": name, **case.params}
        cases += rep.cases
    # not a pass/fail identity: what h_0 x_1 would have to be at n = m
    obs = run_suite("", [flag_case({"lemma": "h0x1_observed", "m": m},
                                   lambda m=m: _h0x1(m, D)) for m in range(1, M + 1)], cfg.jobs)
    return SuiteReport("trace", cases + obs.cases)


def _h0x1(m, D):
    sol = traceh.h0x1_observation(m, D)
    data = {"c0": None, "one": None} if sol is None else \
        {"c0": format_rational(sol[0]), "one": format_rational(sol[1])}
    return True, data


def suite_pq(cfg: RunConfig) -> SuiteReport:
    D, M = cfg.max_degree, cfg.mn_max
    pending = []
    for n in range(M + 1):
        for m in range(M + 1):
            pending.append(operator_case(
                {"relation": "pp", "n": n, "m": m}, lambda n=n, m=m: compose(p_op(n), p_op(m)),
                lambda n=n, m=m: compose(p_op(m), p_op(n)), D))
            pending.append(operator_case(
                {"relation": "qq", "n": n, "m": m}, lambda n=n, m=m: compose(q_op(n), q_op(m)),
                lambda n=n, m=m: compose(q_op(m), q_op(n)), D))
            pending.append(operator_case(
                {"relation": "qp", "n": n, "m": m}, lambda n=n, m=m: compose(q_op(n), p_op(m)),
                lambda n=n, m=m: linear([(1, compose(p_op(m - k), q_op(n - k)))
                                         for k in range(min(m, n) + 1)], m - n), D))
    # pins the product-order convention: q1 p1 = p1 q1 + 1 fails under the reversed order
    pending.append(operator_case({"relation": "q1p1_scalar"}, lambda: compose(q_op(1), p_op(1)),
                                 lambda: linear([(1, compose(p_op(1), q_op(1))), (1, identity())], 0), D))
    return run_suite("pq", pending, cfg.jobs)


def suite_bubbles(cfg: RunConfig) -> SuiteReport:
    D = cfg.max_degree
    pending = [
        operator_case({"relation": "ctilde2=c0"}, lambda: ctilde(2), lambda: c(0), D),
        operator_case({"relation": "ctilde3=c1"}, lambda: ctilde(3), lambda: c(1), D),
        operator_case({"relation": "ctilde4=c2+c0^2"}, lambda: ctilde(4),
                      lambda: linear([(1, c(2)), (1, compose(c(0), c(0)))], 0), D),
        operator_case({"relation": "A2=2c0"}, lambda: bubble_bracket(2),
                      lambda: linear([(2, c(0))], 0), D),
        operator_case({"relation": "c0=degree"}, lambda: c(0),
                      lambda: linear([(-1, w(0, 1))], 0), D),
    ]
    for s in range(5):
        for a in range(s + 1):
            bb = s - a
            pending.append(operator_case({"relation": "bubble_commutator", "a": a, "b": bb},
                                         lambda a=a, bb=bb: commutator(h(-1, bb), h(1, a)),
                                         lambda a=a, bb=bb: bubble_lemma_rhs(a, bb), D))
    for n in range(1, 4):
        for a in range(3):
            for sgn in (1, -1):
                pending.append(operator_case(
                    {"relation": "h_c0", "n": sgn * n, "a": a},
                    lambda n=n, a=a, sgn=sgn: commutator(h(sgn * n, a), c(0)),
                    lambda n=n, a=a, sgn=sgn: linear([(-sgn * n, h(sgn * n, a))], sgn * n), D))
    for i in range(4):
        for j in range(i + 1, 4):
            pending.append(operator_case({"relation": "bubbles_commute", "i": i, "j": j},
                                         lambda i=i, j=j: commutator(c(i), c(j)),
                                         lambda: zero(0), D))
    gens = [("h", n, a) for n in (1, 2, 3, -1, -2, -3) for a in range(3)]
    gens += [("c", j, None) for j in range(4)] + [("p", n, None) for n in range(4)] + \
        [("q", n, None) for n in range(4)] + [("L", l, None) for l in range(-3, 4)]
    for kind, x, y in gens:
        pending.append(flag_case({"relation": "rank_filtration", "gen": kind, "i": x, "a": y},
                                 lambda kind=kind, x=x, y=y: _rank_filtration(kind, x, y, D)))
    return run_suite("bubbles", pending, cfg.jobs)


def _rank_filtration(kind, x, y, D):
    from .fock import degree_basis

    op = {"h": lambda: h(x, y), "c": lambda: c(x), "p": lambda: p_op(x), "q": lambda: q_op(x),
          "L": lambda: L(x)}[kind]()
    declared = {"h": x, "c": 0, "p": x, "q": -x, "L": -x}[kind]
    ok = op.rank == declared
    for d in range(D + 1):
        for col in op.block(d).values():
            ok &= all(sum(p) == d + declared for p in col)
    if kind == "h":
        ok &= op.filtration == y
    return ok, {"rank": op.rank, "filtration": op.filtration}


def suite_daha(cfg: RunConfig) -> SuiteReport:
    pending = []
    for n in sorted({n for n in cfg.daha_n if n >= 2} | {2, 3}):
        if n > max(cfg.daha_n):
            continue
        for name, lhs, rhs in daha.relation_cases(n, cfg.daha_relation_degree):
            pending.append(flag_case({"relation": name, "n": n},
                                     lambda lhs=lhs, rhs=rhs: lhs == rhs))
    for n, D in zip(cfg.daha_n, cfg.daha_max_degree):
        def check(n=n, D=D):
            rep = daha.cocenter_dims(n, D, cfg.daha_buffer)
            target = daha.hhsd_dims(n, D)
            return (list(rep.dims) == target and rep.stabilized,
                    {"dims": list(rep.dims), "hhsd": target, "stabilized": rep.stabilized})
        pending.append(flag_case({"relation": "cocenter", "n": n, "max_degree": D,
                                  "buffer": cfg.daha_buffer}, check))
    return run_suite("daha", pending, cfg.jobs)


def suite_series(cfg: RunConfig) -> SuiteReport:
    R, K = 5, 3
    prod, count = series.product_formula(">", R, K), series.trace_count(R, K)
    pending = [
        flag_case({"relation": "product=count", "R": R, "K": K}, lambda: prod == count),
        flag_case({"relation": "mirror", "R": R, "K": K},
                  lambda: series.product_formula("<", R, K).coeffs == prod.coeffs),
        flag_case({"relation": "hypergeometric", "Q": 4, "T": 8},
                  lambda: series.hypergeometric_check(4, 8)),
        flag_case({"relation": "spot", "t": 1, "q": 0}, lambda: prod[(1, 0)] == 1),
        flag_case({"relation": "spot", "t": 2, "q": 1}, lambda: prod[(2, 1)] == 2),
        flag_case({"relation": "spot", "t": 0, "q": 0}, lambda: prod[(0, 0)] == 1),
        flag_case({"relation": "nonnegative_integers"},
                  lambda: all(v >= 0 and v.denominator == 1 for v in prod.coeffs.values())),
    ]
    return run_suite("series", pending, cfg.jobs)


def suite_psi(cfg: RunConfig) -> SuiteReport:
    D = cfg.max_degree

    def check(l):
        sol = traceh.psi_leading_term(l, D)
        if sol is None:
            return False, {"coefficients": None}
        return sol[-1] == (-1) ** l, {"coefficients": [format_rational(x) for x in sol]}
    pending = [flag_case({"l": l}, lambda l=l: check(l)) for l in range(5)]
    pending.append(operator_case({"relation": "L1=Lbar1"}, lambda: L(1), lambda: virasoro_bar(1), D))
    pending.append(operator_case({"relation": "c0+c1=w02"},
                                 lambda: linear([(1, c(0)), (1, c(1))], 0), lambda: w(0, 2), D))
    for l in range(-3, 4):
        pending.append(operator_case({"relation": "L=Lbar", "l": l}, lambda l=l: L(l),
                                     lambda l=l: virasoro_bar(l), D))
    return run_suite("psi", pending, cfg.jobs)


RUNNERS = {
    "walg": suite_walg, "heisenberg": suite_heisenberg, "virasoro": suite_virasoro,
    "trace": suite_trace, "pq": suite_pq, "bubbles": suite_bubbles, "daha": suite_daha,
    "series": suite_series, "psi": suite_psi,
}


def run(names, cfg: RunConfig) -> list:
    cfg.validate()
    if names == "all" or names == ["all"]:
        names = SUITES
    elif isinstance(names, str):
        names = [names]
    return [RUNNERS[name](cfg) for name in names]

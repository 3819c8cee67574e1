"""Command-line entry point: ``wtrace <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from typing import Optional

from . import daha, series, traceh
from .exact import format_rational
from .fock import FockVector, vacuum
from .gradop import GradedOperator, apply, commutator, compose, matrix_block_json, solve_operator_span
from .verify import SUITES, RunConfig, run
from .walgebra import w

CONFIG_ENV = "WTRACE_CONFIG"
MAX_DEGREE_GUARD = 14
SERIES_GUARD = 40

log = logging.getLogger("wtrace")


class UsageError(Exception):
    pass


_SPEC = re.compile(r"^(w|h|c|ct|p|q|L|b):(-?\d+)(?:,(-?\d+))?$")
_ARITY = {"w": 2, "h": 2, "c": 1, "ct": 1, "p": 1, "q": 1, "L": 1, "b": 1}


def parse_generator(token: str) -> GradedOperator:
    m = _SPEC.match(token.strip())
    if not m:
        raise UsageError(f"cannot parse generator spec {token!r}")
    kind, x, y = m.group(1), int(m.group(2)), m.group(3)
    if (y is not None) != (_ARITY[kind] == 2):
        raise UsageError(f"{kind!r} takes {_ARITY[kind]} index(es): {token!r}")
    y = int(y) if y is not None else None
    if kind == "w":
        if (x, y) == (0, 0):
            log.warning("w:0,0 is zero in the quotient")
            raise UsageError("w:0,0 evaluates to zero")
        if y < 0:
            raise UsageError("w:l,k needs k >= 0")
        return w(x, y)
    if kind == "h":
        if y < 0:
            raise UsageError("h:n,a needs a >= 0")
        return traceh.h(x, y)
    if kind in ("c", "ct", "p", "q") and x < 0:
        raise UsageError(f"{kind}:j needs j >= 0")
    return {"c": traceh.c, "ct": traceh.ctilde, "p": traceh.p_op, "q": traceh.q_op,
            "L": traceh.L, "b": traceh.b}[kind](x)


def parse_expression(text: str) -> GradedOperator:
    """Whitespace-separated specs multiply in written order: ``"A B"`` is ``A∘B``."""
    tokens = text.split()
    if not tokens:
        raise UsageError("empty generator expression")
    ops = [parse_generator(t) for t in tokens]
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = compose(op, out)
    return out


def expand_resolve(tokens: list[str]) -> list[str]:
    """Expand ``"w:-1,0..w:-1,3"`` ranges over the last index."""
    out = []
    for tok in tokens:
        for part in tok.split():
            if ".." not in part:
                out.append(part)
                continue
            lo, hi = part.split("..", 1)
            head_lo, _, a = lo.rpartition(",") if "," in lo else lo.rpartition(":")
            head_hi, _, b = hi.rpartition(",") if "," in hi else hi.rpartition(":")
            if head_lo != head_hi or not a.lstrip("-").isdigit() or not b.lstrip("-").isdigit():
                raise UsageError(f"bad range {part!r}")
            sep = "," if "," in lo else ":"
            out += [f"{head_lo}{sep}{i}" for i in range(int(a), int(b) + 1)]
    return out


def parse_vector(text: str) -> FockVector:
    if text.strip() == "vacuum":
        return vacuum()
    try:
        return FockVector.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad Fock vector: {exc}") from exc


def _load_config_defaults() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=_positive_int, default=8)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--jobs", type=_positive_int, default=1)
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("-q", "--quiet", action="store_true")

    parser = _Parser(prog="wtrace", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=("all",) + SUITES)
    p.add_argument("--l-max", type=_positive_int, default=3)
    p.add_argument("--k-max", type=_positive_int, default=3)
    p.add_argument("--mn-max", type=_positive_int, default=4)
    p.add_argument("--n", type=_positive_int, nargs="+", help="daha ranks for the cocenter check")
    p.add_argument("--buffer", type=_positive_int, default=2)

    p = sub.add_parser("eval", parents=[common], help="apply an operator to a Fock vector")
    p.add_argument("spec")
    p.add_argument("vector")

    p = sub.add_parser("commutator", parents=[common], help="matrix blocks of [A, B]")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--resolve", nargs="+", help="express [A, B] in the span of these specs")

    p = sub.add_parser("poincare", parents=[common], help="bigraded Poincaré series")
    p.add_argument("side", choices=(">", "<"))
    p.add_argument("R", type=_positive_int)
    p.add_argument("K", type=_positive_int)
    p.add_argument("which", choices=("product", "count", "both"))

    p = sub.add_parser("daha-dims", parents=[common], help="cocenter dimensions of DH_n")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--buffer", type=_positive_int, default=2)

    p = sub.add_parser("psi-leading", parents=[common], help="ψ(h_{-1}⊗x^l) in the w(-1,k) basis")
    p.add_argument("l", type=_positive_int, nargs="+")
    return parser


def _check_degree(args) -> None:
    if args.max_degree > MAX_DEGREE_GUARD:
        raise UsageError(f"--max-degree above the guard {MAX_DEGREE_GUARD}")


def cmd_verify(args) -> tuple[object, int]:
    n_list = tuple(args.n) if args.n else (2, 3)
    if args.n:
        degrees = (args.max_degree,) * len(n_list)
    else:
        degrees = (4, 2)
    cfg = RunConfig(max_degree=args.max_degree, l_max=args.l_max, k_max=args.k_max,
                    mn_max=args.mn_max, daha_n=n_list, daha_max_degree=degrees,
                    daha_buffer=args.buffer, jobs=args.jobs)
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports = run(args.suite, cfg)
    ok = all(r.passed for r in reports)
    for r in reports:
        bad = r.first_failure()
        msg = f"{r.suite}: {'PASS' if r.passed else 'FAIL'} ({len(r.cases)} cases)"
        if bad is not None:
            msg += f" first failure {json.dumps(bad.params, sort_keys=True)}"
            if bad.witness_degree is not None:
                msg += f" at degree {bad.witness_degree}"
        log.info(msg)
    return {"pass": ok, "suites": [r.to_json() for r in reports]}, 0 if ok else 1


def cmd_eval(args) -> tuple[object, int]:
    _check_degree(args)
    op = parse_expression(args.spec)
    v = parse_vector(args.vector)
    top = max(v.degrees(), default=0)
    if top > MAX_DEGREE_GUARD:
        raise UsageError("input vector degree above the guard")
    return apply(op, v).to_json(), 0


def cmd_commutator(args) -> tuple[object, int]:
    _check_degree(args)
    a, b = parse_expression(args.spec_a), parse_expression(args.spec_b)
    br = commutator(a, b)
    out = {"rank": br.rank,
           "blocks": [matrix_block_json(br, d) for d in range(args.max_degree + 1)]}
    if args.resolve:
        names = expand_resolve(args.resolve)
        basis = [parse_expression(s) for s in names]
        if any(op.rank != br.rank for op in basis):
            raise UsageError("--resolve operators must share the commutator's rank")
        sol = solve_operator_span(br, basis, args.max_degree)
        out["resolve"] = {"basis": names, "in_span": sol is not None,
                          "coeffs": None if sol is None else [format_rational(x) for x in sol]}
    return out, 0


def cmd_poincare(args) -> tuple[object, int]:
    if args.R > SERIES_GUARD or args.K > SERIES_GUARD:
        raise UsageError(f"series orders above the guard {SERIES_GUARD}")
    out = {}
    if args.which in ("product", "both"):
        out["product"] = series.product_formula(args.side, args.R, args.K).to_json()
    if args.which in ("count", "both"):
        out["count"] = series.trace_count(args.R, args.K, args.side).to_json()
    if args.which == "both":
        out["equal"] = out["product"] == out["count"]
    return out, 0


def cmd_daha_dims(args) -> tuple[object, int]:
    try:
        rep = daha.cocenter_dims(args.n, args.max_degree, args.buffer)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = rep.to_json()
    out["hhsd"] = daha.hhsd_dims(args.n, args.max_degree)
    out["agrees"] = out["dims"] == out["hhsd"]
    log.info("dims %s, hhsd %s, stabilized %s", out["dims"], out["hhsd"], rep.stabilized)
    return out, 0


def cmd_psi_leading(args) -> tuple[object, int]:
    _check_degree(args)
    rows, ok = [], True
    for l in args.l:
        sol = traceh.psi_leading_term(l, args.max_degree)
        ok &= sol is not None
        rows.append({"l": l, "coeffs": None if sol is None else [format_rational(x) for x in sol]})
    return {"basis": "w(-1,k), k = 0..l", "terms": rows}, 0 if ok else 1


COMMANDS = {"verify": cmd_verify, "eval": cmd_eval, "commutator": cmd_commutator,
            "poincare": cmd_poincare, "daha-dims": cmd_daha_dims, "psi-leading": cmd_psi_leading}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        defaults = _load_config_defaults()
        if defaults:
            for action in parser._subparsers._group_actions[0].choices.values():
                known = {a.dest for a in action._actions}
                action.set_defaults(**{k: v for k, v in defaults.items() if k in known})
        args = parser.parse_args(argv)
        level = logging.WARNING if args.quiet else (logging.DEBUG if args.verbose > 1 else logging.INFO)
        logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)
        payload, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"wtrace: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

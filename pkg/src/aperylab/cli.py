"""Command-line entry point: ``aperylab {eval,discover,pade,pslq,verify,prove}``.

Exit codes
  0  the requested result was obtained (value computed, relation found,
     identity verified, every exact check passed)
  1  a scientific negative, e.g. a residual above tolerance or a failed
     exact check
  2  usage or parse error
  3  PSLQ finished with an exclusion bound instead of a relation
  4  precision exhausted or iteration cap reached
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .catalog import IDENTITIES, PoleError, identity_eval
from .discovery import (
    BootstrapFailure,
    alphas_to_json,
    conjecture_closed_forms,
    max_residual,
    run_table1,
    table_rows,
    verify_conjecture,
)
from .exact import RationalFunction, format_rational
from .mp import DivergenceError, DomainError, Precision, magnitude, serialize
from .pade import pade_scan
from .pslq import IterationLimit, PrecisionExhausted, RelationProblem, pslq_detect
from .series import SigmaSpec, parse_spec, sigma_eval, simplex_eval
from .wz import prove_report

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_EXCLUDED, EXIT_EXHAUSTED = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    digits: int = 50
    guard: int = 10
    extra_terms: int = 0
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.digits < 30:
            raise ValueError("--digits must be >= 30")
        if self.format not in ("json", "table"):
            raise ValueError("--format must be json or table")

    @property
    def precision(self) -> Precision:
        return Precision(self.digits, self.guard)


def _ratfun_json(f: RationalFunction) -> dict:
    return {"num": [format_rational(c) for c in f.num.coeffs],
            "den": [format_rational(c) for c in f.den.coeffs]}


def _ratfun_str(f: RationalFunction) -> str:
    def poly(p):
        out = ""
        for i, c in enumerate(p.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else "u" if i == 1 else f"u^{i}"
            mag = format_rational(abs(c))
            term = mag if not mono else mono if mag == "1" else f"{mag}*{mono}"
            out += (" - " if c < 0 else " + ") + term if out else ("-" if c < 0 else "") + term
        return out or "0"
    return f"({poly(f.num)}) / ({poly(f.den)})"


def _tolerance(cfg: RunConfig, tol_digits: int):
    ctx = cfg.precision.ctx
    return ctx.mpf(10) ** (-cfg.digits + tol_digits)


# --------------------------------------------------------------------------
# commands; each returns (payload, table_lines, exit_code)


def cmd_eval(args, cfg: RunConfig):
    p = cfg.precision
    target = args.target
    if target.startswith(("sigma", "simplex")):
        spec = parse_spec(target)
        if isinstance(spec, SigmaSpec):
            v = sigma_eval(spec, p, cfg.extra_terms)
        else:
            v = simplex_eval(spec, p, cfg.extra_terms)
        payload = {"spec": str(spec), **serialize(v, cfg.digits)}
        return payload, [f"{spec}  {payload['value']}"], EXIT_OK
    if target not in IDENTITIES:
        raise ValueError(f"unknown target {target!r}; use sigma(...), simplex(...) or one of "
                         + ", ".join(IDENTITIES))
    ident = IDENTITIES[target]
    given = dict(kv.split("=", 1) for kv in args.params)
    missing = [n for n in ident.params if n not in given]
    if missing:
        raise ValueError(f"{target} needs parameters {', '.join(ident.params)}")
    values = [given[n] for n in ident.params]
    lhs, rhs = identity_eval(target, values, p)
    res = abs(lhs - rhs)
    ok = res < _tolerance(cfg, args.tol_digits)
    payload = {"identity": target, "params": {n: given[n] for n in ident.params},
               "lhs": serialize(lhs, cfg.digits), "rhs": serialize(rhs, cfg.digits),
               "residual": magnitude(res), "verified": bool(ok)}
    lines = [f"lhs       {payload['lhs']['value']}", f"rhs       {payload['rhs']['value']}",
             f"residual  {payload['residual']}"]
    return payload, lines, EXIT_OK if ok else EXIT_NEGATIVE


def _bootstrap_failure(exc: BootstrapFailure):
    payload = {"error": str(exc), "weight": exc.weight, "attempts": exc.result}
    last = exc.result[-1]["status"] if exc.result else None
    code = {"excluded": EXIT_EXCLUDED, "PrecisionExhausted": EXIT_EXHAUSTED,
            "IterationLimit": EXIT_EXHAUSTED}.get(last, EXIT_NEGATIVE)
    return payload, [str(exc)], code


def cmd_discover(args, cfg: RunConfig):
    p = cfg.precision
    try:
        state = run_table1(args.max_weight, p)
    except BootstrapFailure as exc:
        return _bootstrap_failure(exc)
    payload = {"digits": cfg.digits, "max_weight": args.max_weight,
               "alphas": alphas_to_json(state.alphas, args.max_weight), "log": state.log}
    lines = [f"{'weight':>6}  {'partition':<20} alpha"]
    lines += [f"{m:>6}  {part:<20} {val}" for m, part, val in table_rows(state.alphas, args.max_weight)]
    return payload, lines, EXIT_OK


def cmd_pade(args, cfg: RunConfig):
    if args.series:
        with open(args.series) as fh:
            series = [Fraction(s) for s in json.load(fh)]
        hits = pade_scan(series, args.max_deg)
        payload = {"order": len(series), "candidates": [
            {"p": pp, "q": qq, "validated_order": vo, **_ratfun_json(f)} for pp, qq, f, vo in hits]}
        lines = [f"[{pp}/{qq}] validated {vo}: {_ratfun_str(f)}" for pp, qq, f, vo in hits]
        return payload, lines, EXIT_OK if hits else EXIT_NEGATIVE
    # closed forms of P_k from a freshly bootstrapped table
    try:
        state = run_table1(args.max_weight, cfg.precision)
    except BootstrapFailure as exc:
        return _bootstrap_failure(exc)
    rep = conjecture_closed_forms(state.alphas, args.k_max, args.max_weight)
    payload = {"digits": cfg.digits, "max_weight": args.max_weight, "closed_forms": {
        str(k): {"p": rep.degrees[k][0], "q": rep.degrees[k][1],
                 "validated_order": rep.degrees[k][2], "matches_product_form": rep.pattern[k]["matches"],
                 **_ratfun_json(f)} for k, f in rep.closed_forms.items()},
        "missing": rep.missing}
    lines = [f"P_{k}: {_ratfun_str(f)}  (product form: {rep.pattern[k]['matches']})"
             for k, f in rep.closed_forms.items()]
    lines += [f"P_{k}: no validated candidate" for k in rep.missing]
    return payload, lines, EXIT_OK if rep.all_match else EXIT_NEGATIVE


def cmd_pslq(args, cfg: RunConfig):
    if args.problem:
        with open(args.problem) as fh:
            prob = RelationProblem.from_json(json.load(fh))
    else:
        if not args.values:
            raise ValueError("give a problem file or --values")
        p = cfg.precision
        prob = RelationProblem([p.mpf(v) for v in args.values], p,
                               None if args.bound is None else float(args.bound), args.max_iterations)
    try:
        res = pslq_detect(prob)
    except (PrecisionExhausted, IterationLimit) as exc:
        payload = {"status": type(exc).__name__, "message": str(exc), "iterations": exc.iterations,
                   "bound": None if exc.bound is None else magnitude(exc.bound)}
        return payload, [f"{payload['status']}: {exc}"], EXIT_EXHAUSTED
    payload = res.to_json()
    if res.found:
        return payload, [f"relation {list(res.relation)} residual {payload['residual']}"], EXIT_OK
    return payload, [f"excluded: no relation with norm below {payload['bound']}"], EXIT_EXCLUDED


def cmd_verify(args, cfg: RunConfig):
    ident = IDENTITIES.get(args.identity)
    if ident is None or ident.params != ("x",):
        raise ValueError("verify needs a one-parameter identity: "
                         + ", ".join(n for n, i in IDENTITIES.items() if i.params == ("x",)))
    p = cfg.precision
    rep = verify_conjecture(args.identity, p, args.coeff_order, args.n_random)
    tol = _tolerance(cfg, args.tol_digits)
    worst = max_residual(rep)
    ok = worst is not None and worst < tol
    payload = {"identity": args.identity, "digits": cfg.digits, "tolerance": magnitude(tol),
               "max_residual": magnitude(worst) if worst is not None else None, "verified": bool(ok),
               "skipped": rep["skipped"]}
    if rep["coefficients"]:
        payload["coefficients"] = {"order": rep["coefficients"]["order"],
                                   "residuals": [magnitude(r) for r in rep["coefficients"]["residuals"]]}
    payload["special"] = {k: {kk: magnitude(vv) if kk.endswith("residual") else serialize(vv, cfg.digits)
                              for kk, vv in v.items()} for k, v in rep["special"].items()}
    payload["random"] = [{"m": r["m"], "residual": magnitude(r["residual"])} for r in rep["random"]]
    lines = [f"{args.identity}: max residual {payload['max_residual']} (tolerance {payload['tolerance']})"]
    return payload, lines, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_prove(args, cfg: RunConfig):
    if args.n_max < 1:
        raise ValueError("--n-max must be >= 1")
    rep = prove_report(args.n_max)
    lines = [f"{name:<18} checked {rep[name]['checked']:>5}  failures {len(rep[name]['failures'])}"
             for name in ("t", "finite2", "partial_fractions", "finite3", "wz")]
    if rep["first_failure"]:
        lines.append(f"first failure: {rep['first_failure']}")
    return rep, lines, EXIT_OK if rep["ok"] else EXIT_NEGATIVE


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=50, help="target decimal digits (>= 30)")
    common.add_argument("--guard", type=int, default=10, help="extra working digits (>= 10)")
    common.add_argument("--extra-terms", type=int, default=0,
                        help="add terms beyond the default truncation (sum evaluation only)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="aperylab",
                                     description="Central binomial zeta series: evaluation, discovery, proofs.")
    sub = parser.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a sum or both sides of an identity")
    e.add_argument("target", help="sigma(2r;[..]), simplex(2r;[..]) or an identity name")
    e.add_argument("params", nargs="*", help="identity parameters as name=value, e.g. x=1/2")
    e.add_argument("--tol-digits", type=int, default=15, help="residual tolerance 10^(-digits+N)")
    e.set_defaults(func=cmd_eval)

    d = sub.add_parser("discover", parents=[common], help="bootstrap the alpha table")
    d.add_argument("--max-weight", type=int, default=8)
    d.set_defaults(func=cmd_discover)

    pd = sub.add_parser("pade", parents=[common], help="Pade scan of a series file, or P_k closed forms")
    pd.add_argument("series", nargs="?", help="JSON array of \"p/q\" strings in u = x^2, lowest order first")
    pd.add_argument("--max-deg", type=int, default=4)
    pd.add_argument("--max-weight", type=int, default=8, help="table weight when no series file is given")
    pd.add_argument("--k-max", type=int, default=7)
    pd.set_defaults(func=cmd_pade)

    ps = sub.add_parser("pslq", parents=[common], help="integer relation search")
    ps.add_argument("problem", nargs="?", help="JSON problem file")
    ps.add_argument("--values", nargs="+", help="decimal or p/q values")
    ps.add_argument("--bound", help="stop with an exclusion once no relation of smaller norm exists")
    ps.add_argument("--max-iterations", type=int, default=200_000)
    ps.set_defaults(func=cmd_pslq)

    v = sub.add_parser("verify", parents=[common], help="check a one-parameter identity by coefficients and at sample points")
    v.add_argument("identity", nargs="?", default="apery2")
    v.add_argument("--coeff-order", type=int, default=20)
    v.add_argument("--n-random", type=int, default=20)
    v.add_argument("--tol-digits", type=int, default=15)
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("prove", parents=[common], help="exact finite-identity and WZ checks")
    pr.add_argument("--n-max", type=int, default=40)
    pr.set_defaults(func=cmd_prove)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.digits, args.guard, args.extra_terms, args.out, args.format)
        payload, lines, code = args.func(args, cfg)
    except (ValueError, KeyError, PoleError, DomainError, DivergenceError, ZeroDivisionError) as exc:
        print(f"aperylab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(payload, indent=2) if cfg.format == "json" else "\n".join(lines)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

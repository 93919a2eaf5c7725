"""Command-line front end.

Commands evaluate means given as small expressions (``S``, ``holder(1/3)``,
``pow(dual(S), 2)``), compare them on canonical grids, sharpen constants by
bisection, and run the claim catalog.  Three output formats share the same
numbers: ``table`` rounds to 9 significant digits for reading, ``csv`` and
``json`` carry full double precision.

Exit codes: 0 the claim/computation holds, 1 it fails, 3 the result is
inconclusive (e.g. an unconverged limit); argparse keeps its usual 2 for
bad invocations, and malformed expressions/parameters also exit 2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from . import characteristics, core, families, orderlab, suite
from .core import DomainError
from .expr import MeanExprError, parse_mean_expr
from .families import ParameterError
from .orderlab import BracketError, Verdict

#: default bisection bracket tolerance when --tol is not given
BISECT_TOL = 1e-4

_FAMILY_TOKENS = {
    "holder": "HOLDER_FAMILY",
    "lehmer": "LEHMER_FAMILY",
    "genlog": "GENLOG_FAMILY",
    "lambda": "LAMBDA_FAMILY",
    "k": "K_FAMILY",
    "kfamily": "K_FAMILY",
    # parameter sweeps need one parameter, so the bare token means the diagonal
    "stolarsky": "STOLARSKY_DIAG_FAMILY",
    "stolarsky_diag": "STOLARSKY_DIAG_FAMILY",
}


def _resolve_family(token: str) -> families.FamilyDescriptor:
    try:
        return getattr(families, _FAMILY_TOKENS[token])
    except KeyError:
        raise ParameterError(
            f"unknown family {token!r}; choose from {sorted(_FAMILY_TOKENS)}") from None


@dataclass(frozen=True)
class RunConfig:
    """Shared command options; round-trips through ``to_dict``/``from_dict``."""

    grid_points: Optional[int] = None
    t_min: Optional[float] = None
    t_max: Optional[float] = None
    tol: Optional[float] = None
    format: str = "table"
    out: Optional[str] = None
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return cls(**data)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(grid_points=ns.grid_points, t_min=ns.t_min, t_max=ns.t_max,
                   tol=ns.tol, format=ns.format, out=ns.out, seed=ns.seed)

    @property
    def compare_tol(self) -> float:
        return orderlab.COMPARE_TOL if self.tol is None else self.tol

    @property
    def bisect_tol(self) -> float:
        return BISECT_TOL if self.tol is None else self.tol

    def make_grid(self) -> orderlab.GridSpec:
        return orderlab.build_grid(self.grid_points, self.t_min, self.t_max, self.seed)


@dataclass
class CommandOutput:
    exit_code: int
    json_doc: dict  # keys: command, inputs, results, witnesses, verdict
    table_lines: list[str]
    csv_header: list[str]
    csv_rows: list[list]


def _g(x) -> str:
    """Table-format numbers: 9 significant digits."""
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def _doc(command: str, inputs: dict, results: dict, witnesses: list,
         verdict: str) -> dict:
    return {"command": command, "inputs": inputs, "results": results,
            "witnesses": witnesses, "verdict": verdict}


# --- command handlers -----------------------------------------------------------

def _cmd_eval(args, cfg: RunConfig) -> CommandOutput:
    m = parse_mean_expr(args.mean)
    a, b = float(args.a), float(args.b)
    value = core.value(m, a, b)
    return CommandOutput(
        exit_code=0,
        json_doc=_doc("eval", {"mean": args.mean, "a": a, "b": b},
                      {"value": value}, [], "ok"),
        table_lines=[f"{m}({_g(a)}, {_g(b)}) = {_g(value)}"],
        csv_header=["a", "b", "value"],
        csv_rows=[[a, b, value]],
    )


def _cmd_phi(args, cfg: RunConfig) -> CommandOutput:
    m = parse_mean_expr(args.mean)
    t = float(args.t)
    value = core.phi(m, t)
    return CommandOutput(
        exit_code=0,
        json_doc=_doc("phi", {"mean": args.mean, "t": t}, {"value": value}, [], "ok"),
        table_lines=[f"phi[{m}]({_g(t)}) = {_g(value)}"],
        csv_header=["t", "phi"],
        csv_rows=[[t, value]],
    )


def _cmd_sigma(args, cfg: RunConfig) -> CommandOutput:
    m = parse_mean_expr(args.mean)
    numeric = characteristics.sigma(m)
    closed = characteristics.closed_sigma(m)
    if closed is not None:
        value, method, converged = closed, "closed_form", True
    else:
        value, method, converged = numeric.value, numeric.method, numeric.converged
    results = {"value": value, "converged": converged, "method": method,
               "closed_form": closed, "direct_limit": numeric.value,
               "tail": [[eps, est] for eps, est in numeric.tail]}
    verdict = "converged" if converged else "unconverged"
    lines = [f"sigma[{m}] = {_g(value)}  ({method}, {verdict})"]
    lines += [f"  phi(1 - {_g(eps)}) = {_g(est)}" for eps, est in numeric.tail]
    return CommandOutput(
        exit_code=0 if converged else 3,
        json_doc=_doc("sigma", {"mean": args.mean}, results, [], verdict),
        table_lines=lines,
        csv_header=["epsilon", "estimate"],
        csv_rows=[[eps, est] for eps, est in numeric.tail],
    )


def _cmd_series(args, cfg: RunConfig) -> CommandOutput:
    m = parse_mean_expr(args.mean)
    fit = characteristics.phi_series(m, args.order)
    results = {"coefficients": list(fit.coefficients),
               "fit_residual": fit.fit_residual,
               "fit_window": list(fit.fit_window), "ok": fit.ok}
    lines = [f"phi[{m}](t) ~ " + " + ".join(
        f"{_g(c)} t^{2 * k}" for k, c in enumerate(fit.coefficients))]
    lines.append(f"fit residual {_g(fit.fit_residual)} on "
                 f"[{_g(fit.fit_window[0])}, {_g(fit.fit_window[1])}]"
                 + ("" if fit.ok else "  (QUESTIONABLE FIT)"))
    return CommandOutput(
        exit_code=0 if fit.ok else 1,
        json_doc=_doc("series", {"mean": args.mean, "order": args.order},
                      results, [], "ok" if fit.ok else "questionable-fit"),
        table_lines=lines,
        csv_header=["k", "coefficient"],
        csv_rows=[[k, c] for k, c in enumerate(fit.coefficients)],
    )


def _witness_objs(witnesses) -> list:
    return [{"t": t, "lhs": lhs, "rhs": rhs} for t, lhs, rhs in witnesses]


def _cmd_compare(args, cfg: RunConfig) -> CommandOutput:
    m = parse_mean_expr(args.m)
    n = parse_mean_expr(args.n)
    grid = cfg.make_grid()
    rep = orderlab.compare(m, n, grid, cfg.compare_tol)
    rows = []
    for t in grid.t_values:
        pm, pn = core.phi(m, t), core.phi(n, t)
        rows.append([t, 1.0 - t, 1.0 + t, pm, pn, pm - pn])
    results = {"verdict": rep.verdict.value, "strict": rep.strict,
               "max_violation": rep.max_violation, "n_points": rep.n_points,
               "points": rows}
    lines = [f"compare {m} vs {n}: {rep.verdict.value}"
             f" (strict={rep.strict}, {rep.n_points} grid points)",
             f"max violation {_g(rep.max_violation)}"]
    for t, lhs, rhs in rep.witnesses:
        lines.append(f"  witness t={_g(t)}: {_g(lhs)} vs {_g(rhs)}")
    ok = rep.verdict in (Verdict.LE, Verdict.EQUAL)
    return CommandOutput(
        exit_code=0 if ok else 1,
        json_doc=_doc("compare", {"m": args.m, "n": args.n,
                                  "tol": cfg.compare_tol},
                      results, _witness_objs(rep.witnesses), rep.verdict.value),
        table_lines=lines,
        csv_header=["t", "a", "b", "lhs", "rhs", "diff"],
        csv_rows=rows,
    )


def _cmd_chain(args, cfg: RunConfig) -> CommandOutput:
    if len(args.means) < 2:
        raise ParameterError("chain needs at least two means")
    means = [parse_mean_expr(s) for s in args.means]
    grid = cfg.make_grid()
    reports = orderlab.verify_chain(means, grid, cfg.compare_tol)
    rows, results, witnesses, lines = [], [], [], []
    ok = True
    for left, right, rep in zip(args.means, args.means[1:], reports):
        holds = rep.verdict in (Verdict.LE, Verdict.EQUAL)
        ok = ok and holds
        rows.append([left, right, rep.verdict.value, rep.max_violation, rep.strict])
        results.append({"left": left, "right": right,
                        "verdict": rep.verdict.value, "strict": rep.strict,
                        "max_violation": rep.max_violation})
        witnesses += [{"pair": f"{left} <= {right}", "t": t, "lhs": lhs, "rhs": rhs}
                      for t, lhs, rhs in rep.witnesses]
        lines.append(f"{left} <= {right}: {rep.verdict.value} "
                     f"(strict={rep.strict}, max violation {_g(rep.max_violation)})")
    verdict = "pass" if ok else "fail"
    lines.append(f"chain {'holds' if ok else 'BREAKS'} on {len(grid)} grid points")
    return CommandOutput(
        exit_code=0 if ok else 1,
        json_doc=_doc("chain", {"means": list(args.means), "tol": cfg.compare_tol},
                      {"links": results}, witnesses, verdict),
        table_lines=lines,
        csv_header=["left", "right", "verdict", "max_violation", "strict"],
        csv_rows=rows,
    )


def _cmd_best_constant(args, cfg: RunConfig) -> CommandOutput:
    family = _resolve_family(args.family)
    target = parse_mean_expr(args.target)
    grid = cfg.make_grid()
    res = orderlab.best_constant(family, target, args.direction,
                                 (args.lo, args.hi), tol=cfg.bisect_tol, grid=grid)
    rows = [[st.iteration, st.lo, st.hi, st.trial, st.verdict.value]
            for st in res.trace]
    results = {"parameter": res.parameter,
               "bracket": [res.bracket[0], res.bracket[1]],
               "direction": res.direction.value, "iterations": res.iterations,
               "violating_t_at_high": res.violating_t_at_high}
    witnesses = [] if res.violating_t_at_high is None else \
        [{"t": res.violating_t_at_high}]
    lines = [f"best constant for {args.family} vs {target} ({res.direction.value}): "
             f"{_g(res.parameter)}",
             f"final bracket [{_g(res.bracket[0])}, {_g(res.bracket[1])}] "
             f"after {res.iterations} iterations",
             f"violating t at failing end: {_g(res.violating_t_at_high)}"
             if res.violating_t_at_high is not None else
             "violating t at failing end: none recorded"]
    return CommandOutput(
        exit_code=0,
        json_doc=_doc("best-constant",
                      {"family": args.family, "target": args.target,
                       "direction": args.direction,
                       "bracket": [args.lo, args.hi], "tol": cfg.bisect_tol},
                      results, witnesses, "resolved"),
        table_lines=lines,
        csv_header=["iter", "lo", "hi", "trial", "verdict"],
        csv_rows=rows,
    )


def _cmd_cancel(args, cfg: RunConfig) -> CommandOutput:
    family = _resolve_family(args.family)
    candidate = parse_mean_expr(args.candidate)
    grid = cfg.make_grid()
    fn = orderlab.cancelling_verdict if args.side == "right" \
        else orderlab.left_cancelling_verdict
    cv = fn(family, candidate, grid=grid, tol=cfg.compare_tol)
    members = []
    witnesses = []
    rows = []
    for chk in cv.refutations:
        wit = None
        if chk.witness is not None:
            t, mv, cvv = chk.witness
            wit = {"t": t, "member": mv, "candidate": cvv}
            witnesses.append({"parameter": chk.parameter, **wit})
        members.append({"parameter": chk.parameter, "verdict": chk.verdict.value,
                        "method": chk.method, "witness": wit})
        rows.append([chk.parameter, chk.verdict.value, chk.method]
                    + (list(chk.witness) if chk.witness else ["", "", ""]))
    results = {"candidate": cv.candidate, "family": cv.family, "side": cv.side,
               "verdict": cv.verdict,
               "dominates_some_member": cv.dominates_some_member,
               "witness_parameter": cv.witness_parameter,
               "dominated_by_none": cv.dominated_by_none,
               "sigma_argument_used": cv.sigma_argument_used,
               "caveat": cv.caveat, "members": members}
    lines = [f"{cv.candidate} as {cv.side}-cancelling mean for {cv.family}: "
             f"{cv.verdict}",
             f"dominates some member: {cv.dominates_some_member} "
             f"(parameter {cv.witness_parameter})",
             f"dominated by none sampled: {cv.dominated_by_none}; "
             f"sigma argument used: {cv.sigma_argument_used}"]
    for chk in cv.refutations:
        if chk.witness is not None:
            t, mv, cvv = chk.witness
            lines.append(f"  member {_g(chk.parameter)} [{chk.verdict.value}, "
                         f"{chk.method}]: t={_g(t)} member={_g(mv)} "
                         f"candidate={_g(cvv)}")
        else:
            lines.append(f"  member {_g(chk.parameter)} [{chk.verdict.value}]: "
                         "dominates the candidate")
    lines.append(f"caveat: {cv.caveat}")
    code = {"SUPPORTED": 0, "REFUTED": 1}.get(cv.verdict, 3)
    return CommandOutput(
        exit_code=code,
        json_doc=_doc("cancel",
                      {"family": args.family, "candidate": args.candidate,
                       "side": args.side},
                      results, witnesses, cv.verdict),
        table_lines=lines,
        csv_header=["parameter", "verdict", "method", "witness_t",
                    "member_phi", "candidate_phi"],
        csv_rows=rows,
    )


def _cmd_identity(args, cfg: RunConfig) -> CommandOutput:
    a, b, s = float(args.a), float(args.b), float(args.s)
    residual = orderlab.lemma34_residual(a, b, s)
    # recompute the left side so the error budget is relative to it
    if a == b:
        lhs_value = 0.0
    else:
        u = abs((b - a) / (a + b))
        lhs_value = math.log(core.phi(families.stolarsky(s, s), u)) \
            - math.log(core.phi(core.S, u))
    bound = 1e-10 * abs(lhs_value) + 1e-15
    ok = abs(residual) <= bound
    results = {"residual": residual, "lhs": lhs_value, "bound": bound}
    lines = [f"log(I_ss/S) identity at (a={_g(a)}, b={_g(b)}, s={_g(s)}):",
             f"  left side {_g(lhs_value)}, residual {_g(residual)}, "
             f"bound {_g(bound)} -> {'pass' if ok else 'FAIL'}"]
    return CommandOutput(
        exit_code=0 if ok else 1,
        json_doc=_doc("identity", {"name": args.name, "a": a, "b": b, "s": s},
                      results, [], "pass" if ok else "fail"),
        table_lines=lines,
        csv_header=["a", "b", "s", "residual", "lhs", "bound"],
        csv_rows=[[a, b, s, residual, lhs_value, bound]],
    )


def _cmd_suite(args, cfg: RunConfig) -> CommandOutput:
    grid = cfg.make_grid()
    outcomes = suite.run_suite(seed=cfg.seed or 0, grid=grid)
    ok = all(o.passed for o in outcomes)
    lines = []
    rows = []
    results = []
    for o in outcomes:
        lines.append(f"{'PASS' if o.passed else 'FAIL'} {o.check_id}")
        lines += [f"    {d}" for d in o.details]
        rows += [[o.check_id, o.passed, d] for d in o.details]
        results.append({"check_id": o.check_id, "passed": o.passed,
                        "details": list(o.details)})
    lines.append(f"suite {args.name}: {sum(o.passed for o in outcomes)}"
                 f"/{len(outcomes)} checks passed")
    return CommandOutput(
        exit_code=0 if ok else 1,
        json_doc=_doc("suite", {"name": args.name, "seed": cfg.seed or 0},
                      {"checks": results}, [], "pass" if ok else "fail"),
        table_lines=lines,
        csv_header=["check_id", "passed", "detail"],
        csv_rows=rows,
    )


_HANDLERS = {
    "eval": _cmd_eval,
    "phi": _cmd_phi,
    "sigma": _cmd_sigma,
    "series": _cmd_series,
    "compare": _cmd_compare,
    "chain": _cmd_chain,
    "best-constant": _cmd_best_constant,
    "cancel": _cmd_cancel,
    "identity": _cmd_identity,
    "suite": _cmd_suite,
}


# --- parser and driver ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-points", type=int, default=None,
                        help="number of grid points (default: canonical 256)")
    common.add_argument("--t-min", type=float, default=None,
                        help="smallest canonical t (default 1e-6)")
    common.add_argument("--t-max", type=float, default=None,
                        help="largest canonical t (default 1-1e-8)")
    common.add_argument("--tol", type=float, default=None,
                        help="comparison band (default 1e-11) or bisection "
                             "bracket width for best-constant (default 1e-4)")
    common.add_argument("--format", choices=("table", "csv", "json"),
                        default="table", help="output format")
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument("--seed", type=int, default=None,
                        help="grid jitter seed; None/0 keeps the canonical grid")

    parser = argparse.ArgumentParser(
        prog="meanlab",
        description="Bivariate means: stable evaluation, ordering verdicts, "
                    "sharp constants, cancellation checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate M(a, b)")
    p.add_argument("mean"), p.add_argument("a", type=float), p.add_argument("b", type=float)

    p = sub.add_parser("phi", parents=[common],
                       help="evaluate the characteristic function phi_M(t)")
    p.add_argument("mean"), p.add_argument("t", type=float)

    p = sub.add_parser("sigma", parents=[common],
                       help="characteristic number: limit of phi at t -> 1")
    p.add_argument("mean")

    p = sub.add_parser("series", parents=[common],
                       help="fit the even power series of phi near t = 0")
    p.add_argument("mean"), p.add_argument("order", type=int)

    p = sub.add_parser("compare", parents=[common],
                       help="grid ordering verdict for two means")
    p.add_argument("m"), p.add_argument("n")

    p = sub.add_parser("chain", parents=[common],
                       help="verify an increasing chain of means")
    p.add_argument("means", nargs="+")

    p = sub.add_parser("best-constant", parents=[common],
                       help="bisect for the sharp family parameter vs a target")
    p.add_argument("family", help="holder|lehmer|genlog|lambda|k|stolarsky")
    p.add_argument("target")
    p.add_argument("direction", choices=("sup_le", "inf_ge"))
    p.add_argument("lo", type=float), p.add_argument("hi", type=float)

    p = sub.add_parser("cancel", parents=[common],
                       help="cancellation verdict of a candidate vs a family")
    p.add_argument("family"), p.add_argument("candidate")
    p.add_argument("--side", choices=("right", "left"), default="right")

    p = sub.add_parser("identity", parents=[common],
                       help="check a closed-form identity at given arguments")
    p.add_argument("name", choices=("lemma34",))
    p.add_argument("a", type=float), p.add_argument("b", type=float)
    p.add_argument("s", type=float)

    p = sub.add_parser("suite", parents=[common], help="run a named check suite")
    p.add_argument("name", choices=("paper",))

    return parser


def _render(output: CommandOutput, cfg: RunConfig) -> str:
    if cfg.format == "json":
        return json.dumps(output.json_doc, indent=2)
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(output.csv_header)
        writer.writerows(output.csv_rows)
        return buf.getvalue().rstrip("\n")
    return "\n".join(output.table_lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        output = _HANDLERS[args.command](args, cfg)
    except BracketError as exc:
        print(f"meanlab: bracket error: {exc}", file=sys.stderr)
        return 1
    except (MeanExprError, ParameterError, DomainError, ValueError) as exc:
        print(f"meanlab: error: {exc}", file=sys.stderr)
        return 2
    text = _render(output, cfg)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    else:
        print(text)
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""The headline claim catalog: eleven named checks over the mean library.

Each check is a standalone function returning a :class:`CheckOutcome` with
one line per sub-check, so failures say exactly which inequality or constant
broke and by how much.  ``run_suite`` executes all eleven on a shared
canonical grid; the CLI exposes the same thing as ``meanlab suite paper``
and the acceptance tests print one line per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import characteristics, core, families, oracle, orderlab
from .orderlab import GridSpec, Verdict

_PHI_SAMPLE_SEED = 1913
_RESIDUAL_SEED = 3412


@dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    passed: bool
    details: tuple[str, ...]


class _Collector:
    """Accumulates labelled sub-checks into one outcome."""

    def __init__(self, check_id: str):
        self.check_id = check_id
        self.lines: list[str] = []
        self.passed = True

    def expect(self, ok: bool, text: str) -> bool:
        ok = bool(ok)
        self.passed = self.passed and ok
        self.lines.append(("ok   " if ok else "FAIL ") + text)
        return ok

    def outcome(self) -> CheckOutcome:
        return CheckOutcome(self.check_id, self.passed, tuple(self.lines))


def _grid_or_default(grid: Optional[GridSpec]) -> GridSpec:
    return orderlab.default_grid() if grid is None else grid


# --- 1. fundamental chain ----------------------------------------------------

def check_delta0_chain(grid: Optional[GridSpec] = None) -> CheckOutcome:
    """H < G < L < I < A < S: banded LE verdicts plus raw per-point strictness."""
    grid = _grid_or_default(grid)
    c = _Collector("delta0-chain")
    chain = [core.H, core.G, core.L, core.I, core.A, core.S]
    names = ["H", "G", "L", "I", "A", "S"]
    reports = orderlab.verify_chain(chain, grid)
    for (lo, hi), rep in zip(zip(names, names[1:]), reports):
        c.expect(rep.verdict is Verdict.LE and rep.strict,
                 f"{lo} <= {hi} on grid: verdict {rep.verdict.value}, strict={rep.strict}")
    checked = 0
    violations = 0
    min_gap = math.inf
    for m, n in zip(chain, chain[1:]):
        for t in grid.t_values:
            if t <= 1e-6:
                continue
            gap = core.phi(n, t) - core.phi(m, t)
            checked += 1
            min_gap = min(min_gap, gap)
            if gap <= 0.0:
                violations += 1
    c.expect(violations == 0,
             f"raw strictness at {checked} pair/point combinations with t > 1e-6 "
             f"({violations} violations, smallest gap {min_gap:.3e})")
    return c.outcome()


# --- 2. characteristic numbers -------------------------------------------------

def check_sigma_table(grid: Optional[GridSpec] = None) -> CheckOutcome:
    c = _Collector("sigma-table")
    for name, m in (("H", core.H), ("G", core.G), ("L", core.L)):
        res = characteristics.sigma(m)
        c.expect(not res.converged and res.value < 0.05,
                 f"sigma({name}) flagged slow (converged={res.converged}), "
                 f"extrapolate {res.value:.4g} < 0.05")
    for name, m, truth, tol in (("I", core.I, 2.0 / math.e, 1e-6),
                                ("A", core.A, 1.0, 1e-9),
                                ("S", core.S, 2.0, 1e-6)):
        res = characteristics.sigma(m)
        err = abs(res.value - truth)
        c.expect(res.converged and err <= tol,
                 f"sigma({name}) = {res.value:.12g} vs {truth:.12g} "
                 f"(err {err:.2e} <= {tol:g}, converged={res.converged})")
    return c.outcome()


# --- 3. closed-form characteristic functions -------------------------------------

def check_phi_closed_forms(grid: Optional[GridSpec] = None) -> CheckOutcome:
    c = _Collector("phi-closed-forms")
    rng = np.random.default_rng(_PHI_SAMPLE_SEED)
    ts = rng.uniform(1e-6, 1.0 - 1e-6, 50)
    for name in ("H", "G", "L", "I", "S"):
        m = core.ELEMENTARY[name]
        worst = 0.0
        for t in ts:
            ref = float(oracle.phi(m, float(t)))
            worst = max(worst, abs(core.phi(m, float(t)) - ref) / abs(ref))
        c.expect(worst <= 1e-12,
                 f"phi({name}) vs extended-precision reference at 50 points: "
                 f"worst rel err {worst:.2e} <= 1e-12")
    return c.outcome()


# --- 4. generalized log-mean constants --------------------------------------------

def check_genlog_constants(grid: Optional[GridSpec] = None) -> CheckOutcome:
    grid = _grid_or_default(grid)
    c = _Collector("T1.1-genlog-constants")

    rep = orderlab.compare(families.gen_log(3.0), core.A, grid)
    c.expect(rep.verdict is Verdict.LE and rep.strict,
             f"genlog(3) <= A: verdict {rep.verdict.value}, strict={rep.strict}")

    bc = orderlab.best_constant(families.GENLOG_FAMILY, core.A, "sup_le",
                                (2.5, 3.5), tol=1e-4, grid=grid)
    c.expect(abs(bc.parameter - 3.0) <= 1e-4,
             f"sup{{p : genlog(p) <= A}} = {bc.parameter:.6f} (target 3 +- 1e-4, "
             f"{bc.iterations} bisection steps)")

    rep301 = orderlab.compare(families.gen_log(3.01), core.A, grid)
    small_t = rep301.gt_witnesses[0][0] if rep301.gt_witnesses else math.inf
    c.expect(rep301.verdict is Verdict.CROSSING and small_t < 0.2,
             f"genlog(3.01) vs A: verdict {rep301.verdict.value}, "
             f"above-A witness at t = {small_t:.4g} < 0.2")

    bc_lo = orderlab.best_constant(families.GENLOG_FAMILY, core.H, "inf_ge",
                                   (-3.5, -2.5), tol=1e-4, grid=grid)
    c.expect(abs(bc_lo.parameter + 3.0) <= 1e-4,
             f"inf{{p : genlog(p) >= H}} = {bc_lo.parameter:.6f} (target -3 +- 1e-4)")

    for p in (1.0, 2.0, 4.0):
        expo = characteristics.comparison_exponent(families.gen_log(p), core.A)
        target = (p - 3.0) / 6.0
        c.expect(abs(expo - target) <= 1e-5,
                 f"comparison exponent genlog({p:g}) vs A: {expo:.8f} "
                 f"(target {target:.8f} +- 1e-5)")
    return c.outcome()


# --- 5. Holder transform constants --------------------------------------------------

def check_holder_constants(grid: Optional[GridSpec] = None) -> CheckOutcome:
    grid = _grid_or_default(grid)
    c = _Collector("T2.2-holder-constants")

    rep = orderlab.compare(families.holder(2.0), core.S, grid)
    c.expect(rep.verdict is Verdict.LE,
             f"holder(2) <= S: verdict {rep.verdict.value}, strict={rep.strict}")

    bc = orderlab.best_constant(families.HOLDER_FAMILY, core.S, "sup_le",
                                (1.5, 2.5), tol=1e-4, grid=grid)
    c.expect(abs(bc.parameter - 2.0) <= 1e-4,
             f"sup{{s : holder(s) <= S}} = {bc.parameter:.6f} (target 2 +- 1e-4)")

    bc_lo = orderlab.best_constant(families.HOLDER_FAMILY, core.dual(core.S),
                                   "inf_ge", (-4.0, -1.0), tol=1e-4, grid=grid)
    c.expect(abs(bc_lo.parameter + 2.0) <= 1e-4,
             f"inf{{s : holder(s) >= dual(S)}} = {bc_lo.parameter:.6f} "
             f"(target -2 +- 1e-4)")

    worst = 0.0
    for t in np.linspace(0.05, 0.95, 20):
        closed = orderlab.concavity_gap_second_derivative(float(t))
        numeric = orderlab.central_second_difference(orderlab.concavity_gap, float(t))
        worst = max(worst, abs(numeric - closed) / abs(closed))
    c.expect(worst <= 1e-5,
             f"gap curvature closed form vs central differences at 20 points: "
             f"worst rel err {worst:.2e} <= 1e-5")
    return c.outcome()


# --- 6. Stolarsky diagonal constants --------------------------------------------------

def check_stolarsky_constants(grid: Optional[GridSpec] = None) -> CheckOutcome:
    grid = _grid_or_default(grid)
    c = _Collector("T3.2-stolarsky-constants")

    rng = np.random.default_rng(_RESIDUAL_SEED)
    worst_ratio = 0.0
    for _ in range(100):
        a = float(rng.uniform(0.5, 4.0))
        b = float(rng.uniform(0.5, 4.0))
        if a == b:
            b *= 1.0 + 1e-3
        s = float(rng.uniform(0.1, 6.0)) * (1.0 if rng.uniform() < 0.5 else -1.0)
        res = orderlab.lemma34_residual(a, b, s)
        u = abs((b - a) / (a + b))
        lhs = math.log(core.phi(families.stolarsky(s, s), u)) - math.log(core.phi(core.S, u))
        bound = 1e-10 * abs(lhs) + 1e-15
        worst_ratio = max(worst_ratio, abs(res) / bound)
    c.expect(worst_ratio <= 1.0,
             f"log(I_ss/S) identity residual at 100 random (a, b, s): worst "
             f"residual/bound ratio {worst_ratio:.3f} <= 1")

    rep = orderlab.compare(families.stolarsky(3.0, 3.0), core.S, grid)
    c.expect(rep.verdict is Verdict.LE,
             f"stolarsky(3,3) <= S: verdict {rep.verdict.value}, strict={rep.strict}")

    bc = orderlab.best_constant(families.STOLARSKY_DIAG_FAMILY, core.S, "sup_le",
                                (2.5, 3.5), tol=1e-4, grid=grid)
    c.expect(abs(bc.parameter - 3.0) <= 1e-4,
             f"sup{{s : stolarsky(s,s) <= S}} = {bc.parameter:.6f} (target 3 +- 1e-4)")

    bc_l = orderlab.best_constant(families.LEHMER_FAMILY, core.L, "sup_le",
                                  (-0.5, -0.1), tol=1e-4, grid=grid)
    c.expect(abs(bc_l.parameter + 1.0 / 3.0) <= 1e-3,
             f"sup{{r : lehmer(r) <= L}} = {bc_l.parameter:.6f} (target -1/3 +- 1e-3)")
    return c.outcome()


# --- 7. cancellation verdicts ------------------------------------------------------

def check_cancelling_verdicts(grid: Optional[GridSpec] = None) -> CheckOutcome:
    grid = _grid_or_default(grid)
    c = _Collector("T2.1-T4.1-cancelling")

    cv = orderlab.cancelling_verdict(families.HOLDER_FAMILY, core.S, grid=grid)
    c.expect(cv.verdict == "SUPPORTED",
             f"S right-cancels the Holder family: {cv.verdict} "
             f"(dominates member at s = {cv.witness_parameter})")

    cv = orderlab.cancelling_verdict(families.STOLARSKY_DIAG_FAMILY, core.S, grid=grid)
    c.expect(cv.verdict == "SUPPORTED" and cv.sigma_argument_used,
             f"S right-cancels the Stolarsky diagonal: {cv.verdict}, "
             f"sigma argument used = {cv.sigma_argument_used}")

    for r in (0.5, 1.0, 2.0):
        cv = orderlab.cancelling_verdict(families.HOLDER_FAMILY,
                                         families.k_mean(r), grid=grid)
        c.expect(cv.verdict == "SUPPORTED",
                 f"k({r:g}) right-cancels the Holder family: {cv.verdict}")

    cv = orderlab.left_cancelling_verdict(families.GENLOG_FAMILY, core.H, grid=grid)
    c.expect(cv.verdict == "SUPPORTED",
             f"H left-cancels the genlog family: {cv.verdict}")

    cv = orderlab.left_cancelling_verdict(families.HOLDER_FAMILY,
                                          core.dual(core.S), grid=grid)
    c.expect(cv.verdict == "SUPPORTED",
             f"dual(S) left-cancels the Holder family: {cv.verdict}")
    return c.outcome()


# --- 8. lambda family sandwich ------------------------------------------------------

def check_lambda_sandwich(grid: Optional[GridSpec] = None) -> CheckOutcome:
    grid = _grid_or_default(grid)
    c = _Collector("lambda-sandwich")
    lam = families.lambda_mean

    sandwich = (
        ("lambda(-4)", lam(-4.0), "H", core.H),
        ("H", core.H, "lambda(-3)", lam(-3.0)),
        ("lambda(-1)", lam(-1.0), "G", core.G),
        ("G", core.G, "lambda(-1/2)", lam(-0.5)),
        ("lambda(0)", lam(0.0), "L", core.L),
        ("L", core.L, "lambda(1)", lam(1.0)),
        ("lambda(1)", lam(1.0), "I", core.I),
        ("I", core.I, "lambda(2)", lam(2.0)),
    )
    for lo_name, lo, hi_name, hi in sandwich:
        rep = orderlab.compare(lo, hi, grid)
        c.expect(rep.verdict is Verdict.LE and rep.strict,
                 f"{lo_name} < {hi_name}: verdict {rep.verdict.value}, "
                 f"strict={rep.strict}")

    rep = orderlab.compare(lam(2.0), core.A, grid)
    c.expect(rep.verdict is Verdict.EQUAL,
             f"lambda(2) coincides with A: verdict {rep.verdict.value} "
             f"(max |diff| {rep.max_violation:.2e})")

    rep = orderlab.compare(lam(5.0), core.S, grid)
    c.expect(rep.verdict is Verdict.LE and rep.strict,
             f"lambda(5) < S: verdict {rep.verdict.value}, strict={rep.strict}")

    ladder = (-4.0, -3.0, -1.0, -0.5, 0.0, 1.0, 2.0, 5.0, 10.0)
    monotone = True
    for s_lo, s_hi in zip(ladder, ladder[1:]):
        rep = orderlab.compare(lam(s_lo), lam(s_hi), grid)
        if not (rep.verdict is Verdict.LE and rep.strict):
            monotone = False
            c.expect(False,
                     f"lambda ladder {s_lo:g} -> {s_hi:g}: verdict {rep.verdict.value}")
    c.expect(monotone, f"lambda monotone over ladder {ladder}")

    rep = orderlab.compare(lam(10.0), core.S, grid)
    big_t = max((w[0] for w in rep.lt_witnesses), default=0.0)
    c.expect(rep.verdict is Verdict.CROSSING and big_t > 0.9,
             f"lambda(10) vs S: verdict {rep.verdict.value}, lambda(10) < S "
             f"witness at t = {big_t:.6g} > 0.9")
    return c.outcome()


# --- 9. series coefficients ----------------------------------------------------------

def check_series_coefficients(grid: Optional[GridSpec] = None) -> CheckOutcome:
    c = _Collector("series-coefficients")
    targets = (("H", core.H, -1.0), ("G", core.G, -0.5),
               ("L", core.L, -1.0 / 3.0), ("I", core.I, -1.0 / 6.0),
               ("A", core.A, 0.0), ("S", core.S, 0.5))
    for name, m, a1 in targets:
        fit = characteristics.phi_series(m, order=3)
        c.expect(abs(fit.a1 - a1) <= 1e-6,
                 f"phi_series({name}).a1 = {fit.a1:.10f} (target {a1:+.6f} +- 1e-6, "
                 f"fit residual {fit.fit_residual:.1e})")
    for r, s in ((1.0, 2.0), (0.0, 1.0), (1.0, 1.0), (-2.0, -1.0)):
        fit = characteristics.phi_series(families.stolarsky(r, s), order=3)
        a1 = (r + s - 3.0) / 6.0
        c.expect(abs(fit.a1 - a1) <= 1e-6,
                 f"phi_series(stolarsky({r:g},{s:g})).a1 = {fit.a1:.10f} "
                 f"(target {a1:+.6f} +- 1e-6)")
    return c.outcome()


# --- 10. Seiffert bounds ---------------------------------------------------------------

def check_seiffert_bounds(grid: Optional[GridSpec] = None) -> CheckOutcome:
    grid = _grid_or_default(grid)
    c = _Collector("seiffert-bounds")
    q_p = math.log(2.0) / math.log(math.pi)
    q_t = math.log(2.0) / math.log(math.pi / 2.0)

    bounds = (
        (f"holder({q_p:.6f})", families.holder(q_p), "P", core.P),
        ("P", core.P, "holder(2/3)", families.holder(2.0 / 3.0)),
        (f"holder({q_t:.6f})", families.holder(q_t), "T", core.T),
        ("T", core.T, "holder(5/3)", families.holder(5.0 / 3.0)),
    )
    for lo_name, lo, hi_name, hi in bounds:
        rep = orderlab.compare(lo, hi, grid)
        c.expect(rep.verdict is Verdict.LE and rep.strict,
                 f"{lo_name} < {hi_name} on all grid points: verdict "
                 f"{rep.verdict.value}, strict={rep.strict}, "
                 f"worst excursion {rep.max_violation:.2e}")

    bc_up = orderlab.best_constant(families.HOLDER_FAMILY, core.P, "inf_ge",
                                   (0.55, 0.8), tol=1e-4, grid=grid)
    c.expect(abs(bc_up.parameter - 2.0 / 3.0) <= 1e-3,
             f"inf{{s : holder(s) >= P}} = {bc_up.parameter:.6f} "
             f"(target 2/3 +- 1e-3)")

    bc_lo = orderlab.best_constant(families.HOLDER_FAMILY, core.P, "sup_le",
                                   (0.5, 0.65), tol=1e-4, grid=grid)
    c.expect(abs(bc_lo.parameter - q_p) <= 1e-3,
             f"sup{{s : holder(s) <= P}} = {bc_lo.parameter:.6f} "
             f"(target log_pi(2) = {q_p:.6f} +- 1e-3)")
    return c.outcome()


# --- 11. frozen reference values ----------------------------------------------------------

_SQRT7 = 2.6457513110645906

#: (label, computed, frozen 15-digit reference from the 50-digit evaluator)
REFERENCE_VALUES: tuple[tuple[str, Callable[[], float], float], ...] = (
    ("S(1,3)", lambda: core.S.value(1.0, 3.0), 2.27950705695478),
    ("L(1,3)", lambda: core.L.value(1.0, 3.0), 1.82047845325367),
    ("I(1,3)", lambda: core.I.value(1.0, 3.0), 1.91155764950695),
    ("P(1,3)", lambda: core.P.value(1.0, 3.0), 1.90985931710274),
    ("dual(S)(1,3)", lambda: core.dual(core.S).value(1.0, 3.0), 1.31607401295249),
    ("phi_S(0.5)", lambda: core.phi(core.S, 0.5), 1.13975352847739),
    ("holder(2)(1,3)", lambda: families.holder(2.0).value(1.0, 3.0), 2.23606797749979),
    ("holder(1/3)(1,3)", lambda: families.holder(1.0 / 3.0).value(1.0, 3.0),
     1.82087502250974),
    ("lehmer(-1/3)(1,3)", lambda: families.lehmer(-1.0 / 3.0).value(1.0, 3.0),
     1.81891712637225),
    ("lehmer(1)(1,3)", lambda: families.lehmer(1.0).value(1.0, 3.0), 2.5),
    ("genlog(3)(1,3)", lambda: families.gen_log(3.0).value(1.0, 3.0), 1.99068501320645),
    ("genlog(-3)(1,3)", lambda: families.gen_log(-3.0).value(1.0, 3.0),
     1.50701893071864),
    ("stolarsky(3,3)(1,3)", lambda: families.stolarsky(3.0, 3.0).value(1.0, 3.0),
     2.24236984723578),
    ("stolarsky(1,1)(1,3)", lambda: families.stolarsky(1.0, 1.0).value(1.0, 3.0),
     1.91155764950695),
    ("lambda(1)(1,3)", lambda: families.lambda_mean(1.0).value(1.0, 3.0),
     1.9111391257032),
    ("lambda(0)(1,3)", lambda: families.lambda_mean(0.0).value(1.0, 3.0),
     1.81884167930642),
    ("k(2)(1,3)", lambda: families.k_mean(2.0).value(1.0, 3.0), _SQRT7),
    ("k(-1)(1,3)", lambda: families.k_mean(-1.0).value(1.0, 3.0), 2.0),
    ("weighted_holder(1/4,2)(1,3)",
     lambda: families.weighted_holder(0.25, 2.0)(1.0, 3.0), _SQRT7),
    ("lehmer(-1/3)(1,27)", lambda: families.lehmer(-1.0 / 3.0).value(1.0, 27.0), 7.5),
    ("L(1,27)", lambda: core.L.value(1.0, 27.0), 7.88873996409926),
    ("sigma_closed(stolarsky,(1,1))",
     lambda: characteristics.sigma_closed("stolarsky", (1.0, 1.0)), 0.735758882342885),
    ("sigma_closed(stolarsky,(3,3))",
     lambda: characteristics.sigma_closed("stolarsky", (3.0, 3.0)), 1.43306262114758),
    ("cubic-logmean-ratio(0.5)", lambda: orderlab.theorem11_ratio(0.5),
     0.986092495512407),
    ("log(I_33/S)(1,3)",
     lambda: math.log(families.stolarsky(3.0, 3.0).value(1.0, 3.0)
                      / core.S.value(1.0, 3.0)), -0.0164259423713786),
)


def check_oracle_agreement(grid: Optional[GridSpec] = None) -> CheckOutcome:
    """Double-precision kernels against frozen 50-digit reference values."""
    c = _Collector("oracle-agreement")
    worst = 0.0
    worst_label = ""
    for label, compute, expected in REFERENCE_VALUES:
        got = compute()
        rel = abs(got - expected) / max(abs(expected), 1e-300)
        if rel > worst:
            worst, worst_label = rel, label
        if rel > 1e-12:
            c.expect(False, f"{label} = {got!r}, expected {expected!r} (rel {rel:.2e})")
    c.expect(worst <= 1e-12,
             f"{len(REFERENCE_VALUES)} frozen reference values, worst rel err "
             f"{worst:.2e} ({worst_label}) <= 1e-12")
    return c.outcome()


# --- driver -------------------------------------------------------------------------------

SUITE_CHECKS: tuple[tuple[str, Callable[[Optional[GridSpec]], CheckOutcome]], ...] = (
    ("delta0-chain", check_delta0_chain),
    ("sigma-table", check_sigma_table),
    ("phi-closed-forms", check_phi_closed_forms),
    ("T1.1-genlog-constants", check_genlog_constants),
    ("T2.2-holder-constants", check_holder_constants),
    ("T3.2-stolarsky-constants", check_stolarsky_constants),
    ("T2.1-T4.1-cancelling", check_cancelling_verdicts),
    ("lambda-sandwich", check_lambda_sandwich),
    ("series-coefficients", check_series_coefficients),
    ("seiffert-bounds", check_seiffert_bounds),
    ("oracle-agreement", check_oracle_agreement),
)


def run_suite(seed: int = 0, grid: Optional[GridSpec] = None) -> list[CheckOutcome]:
    """Run all eleven checks on one shared grid (canonical unless overridden)."""
    if grid is None:
        grid = orderlab.default_grid(seed)
    return [fn(grid) for _, fn in SUITE_CHECKS]

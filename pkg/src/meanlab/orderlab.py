"""Order relations between means: grid verdicts, sharp constants, cancellation.

Everything here works in canonical coordinates: a pair (a, b) reduces to
t = (b - a)/(a + b) and each mean is probed through phi(t) = M(1-t, 1+t).
Homogeneity makes the reduction lossless and puts every comparison on the
common segment 0 < t < 1, where near-diagonal (t ~ 0) and extreme (t ~ 1)
behaviour can both be sampled on one grid.

Comparisons are banded: two phi values closer than tol * max(|phi_m|, |phi_n|)
count as a tie, so a verdict of LE means "never above n beyond noise" and
strictness means at least one banded separation was seen.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from . import characteristics, core, families
from .core import DomainError, MeanDescriptor
from .families import FamilyDescriptor

Witness = tuple[float, float, float]  # (t, phi_m, phi_n)

#: default banded-comparison tolerance (relative)
COMPARE_TOL = 1e-11

#: sigma separation below this is not trusted as an ordering argument
SIGMA_MARGIN = 1e-3

_WITNESS_CAP = 8


# --- grids -------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """A canonical comparison grid.

    ``t_values`` are strictly inside (0, 1) and sorted; the two flags record
    whether the grid actually probes the near-diagonal and extreme regimes,
    and ``scale_factors`` is carried along for axiom checks that need to
    rescale pairs.
    """

    t_values: tuple[float, ...]
    includes_near_diagonal: bool
    includes_extreme: bool
    scale_factors: tuple[float, ...]

    @classmethod
    def from_values(cls, ts: Iterable[float],
                    scale_factors: Sequence[float] = core.DEFAULT_SCALE_FACTORS,
                    ) -> "GridSpec":
        values = tuple(sorted(set(float(t) for t in ts)))
        if not values:
            raise ValueError("grid needs at least one t value")
        if values[0] <= 0.0 or values[-1] >= 1.0:
            raise ValueError("grid t values must lie strictly inside (0, 1)")
        return cls(
            t_values=values,
            includes_near_diagonal=values[0] <= core.NEAR_DIAGONAL_THRESHOLD,
            includes_extreme=values[-1] >= 1.0 - 1e-6,
            scale_factors=tuple(float(s) for s in scale_factors),
        )

    def __len__(self) -> int:
        return len(self.t_values)


def _jitter(ts: np.ndarray, seed: Optional[int]) -> np.ndarray:
    """Deterministic multiplicative jitter of interior points; endpoints stay."""
    if not seed:
        return ts
    rng = np.random.default_rng(seed)
    inner = ts[1:-1] * np.exp(rng.uniform(-0.05, 0.05, ts.size - 2))
    inner = np.clip(inner, ts[0], ts[-1])
    return np.concatenate([ts[:1], inner, ts[-1:]])


def default_grid(seed: Optional[int] = None,
                 scale_factors: Sequence[float] = core.DEFAULT_SCALE_FACTORS,
                 ) -> GridSpec:
    """256 canonical points: 200 geometric down to t = 1e-6 plus 56 uniform.

    The geometric leg resolves both ends (diagonal and extreme) while the
    uniform leg keeps the middle honest.  ``seed`` in {None, 0} gives the
    canonical grid; any other seed jitters interior points deterministically
    while pinning the endpoints, so coverage flags never degrade.
    """
    geo = np.geomspace(1e-6, 1.0 - 1e-8, 200)
    uni = np.arange(1, 57) / 57.0
    ts = np.unique(np.concatenate([geo, uni]))
    return GridSpec.from_values(_jitter(ts, seed), scale_factors)


def build_grid(n_points: Optional[int] = None,
               t_min: Optional[float] = None,
               t_max: Optional[float] = None,
               seed: Optional[int] = None,
               scale_factors: Sequence[float] = core.DEFAULT_SCALE_FACTORS,
               ) -> GridSpec:
    """Grid for explicit overrides; falls back to :func:`default_grid`."""
    if n_points is None and t_min is None and t_max is None:
        return default_grid(seed, scale_factors)
    n = 256 if n_points is None else int(n_points)
    lo = 1e-6 if t_min is None else float(t_min)
    hi = 1.0 - 1e-8 if t_max is None else float(t_max)
    if not (0.0 < lo < hi < 1.0):
        raise ValueError(f"need 0 < t_min < t_max < 1, got ({lo!r}, {hi!r})")
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    ts = _jitter(np.geomspace(lo, hi, n), seed)
    return GridSpec.from_values(ts, scale_factors)


def _grid_ts(grid: Union[GridSpec, Iterable[float], None]) -> Sequence[float]:
    if grid is None:
        return default_grid().t_values
    if hasattr(grid, "t_values"):
        return grid.t_values
    return tuple(grid)


# --- pairwise verdicts ---------------------------------------------------------

class Verdict(str, enum.Enum):
    LE = "LE"
    GE = "GE"
    EQUAL = "EQUAL"
    CROSSING = "CROSSING"


@dataclass(frozen=True)
class OrderingReport:
    """Grid verdict for phi_m vs phi_n.

    ``witnesses`` hold counterexample points: empty for a clean one-sided
    verdict, both directions for CROSSING.  ``gt_witnesses``/``lt_witnesses``
    keep the smallest-t separated points in each direction (plus the largest-t
    one, which is what extreme-regime arguments want).  ``max_violation`` is
    the worst raw excursion against the verdict's inequality; for CROSSING it
    is the smaller of the two one-sided excursions, i.e. how far the weaker
    side genuinely pokes through.
    """

    verdict: Verdict
    max_violation: float
    witnesses: tuple[Witness, ...]
    strict: bool
    gt_witnesses: tuple[Witness, ...] = ()
    lt_witnesses: tuple[Witness, ...] = ()
    n_points: int = 0
    tol: float = COMPARE_TOL


def _cap_witnesses(points: list[Witness]) -> tuple[Witness, ...]:
    if len(points) <= _WITNESS_CAP:
        return tuple(points)
    kept = points[:_WITNESS_CAP]
    if points[-1] not in kept:
        kept = kept[:-1] + [points[-1]]
    return tuple(kept)


def compare(m: MeanDescriptor, n: MeanDescriptor,
            grid: Union[GridSpec, Iterable[float], None] = None,
            tol: float = COMPARE_TOL) -> OrderingReport:
    """Banded grid comparison of two means in canonical coordinates."""
    ts = _grid_ts(grid)
    gt: list[Witness] = []
    lt: list[Witness] = []
    worst_up = -math.inf
    worst_down = -math.inf
    for t in ts:
        pm = core.phi(m, t)
        pn = core.phi(n, t)
        diff = pm - pn
        band = tol * max(abs(pm), abs(pn))
        worst_up = max(worst_up, diff)
        worst_down = max(worst_down, -diff)
        if diff > band:
            gt.append((t, pm, pn))
        elif diff < -band:
            lt.append((t, pm, pn))
    if gt and lt:
        verdict = Verdict.CROSSING
        max_violation = min(worst_up, worst_down)
    elif gt:
        verdict = Verdict.GE
        max_violation = max(worst_down, 0.0)
    elif lt:
        verdict = Verdict.LE
        max_violation = max(worst_up, 0.0)
    else:
        verdict = Verdict.EQUAL
        max_violation = max(worst_up, worst_down, 0.0)
    gt_w = _cap_witnesses(gt)
    lt_w = _cap_witnesses(lt)
    if verdict is Verdict.CROSSING:
        witnesses = tuple(sorted(gt_w + lt_w))
    else:
        witnesses = ()
    return OrderingReport(
        verdict=verdict,
        max_violation=max_violation,
        witnesses=witnesses,
        strict=verdict in (Verdict.LE, Verdict.GE),
        gt_witnesses=gt_w,
        lt_witnesses=lt_w,
        n_points=len(ts),
        tol=tol,
    )


def verify_chain(means: Sequence[MeanDescriptor],
                 grid: Union[GridSpec, Iterable[float], None] = None,
                 tol: float = COMPARE_TOL) -> list[OrderingReport]:
    """Adjacent-pair reports for a claimed increasing chain."""
    if len(means) < 2:
        raise ValueError("a chain needs at least two means")
    return [compare(means[i], means[i + 1], grid, tol) for i in range(len(means) - 1)]


# --- sharp constants by bisection ----------------------------------------------

class Direction(str, enum.Enum):
    """Which end of the parameter range is being sharpened.

    ``sup_le``: largest p with family(p) <= target everywhere; the claim holds
    at bracket.low and fails at bracket.high.  ``inf_ge``: smallest p with
    family(p) >= target everywhere; holds at bracket.high, fails at
    bracket.low.
    """

    SUP_LE = "sup_le"
    INF_GE = "inf_ge"


class BracketError(ValueError):
    """The bracket does not straddle the claimed constant."""


@dataclass(frozen=True)
class BisectionStep:
    iteration: int
    lo: float
    hi: float
    trial: float
    verdict: Verdict


@dataclass(frozen=True)
class BestConstantResult:
    parameter: float
    bracket: tuple[float, float]
    direction: Direction
    iterations: int
    violating_t_at_high: Optional[float]
    trace: tuple[BisectionStep, ...] = ()


def _family_make(family) -> Callable[[float], MeanDescriptor]:
    return family.make if hasattr(family, "make") else family


def best_constant(family, target: MeanDescriptor,
                  direction: Union[Direction, str],
                  bracket: tuple[float, float],
                  tol: float = 1e-4,
                  grid: Union[GridSpec, Iterable[float], None] = None,
                  compare_tol: float = COMPARE_TOL,
                  max_iterations: int = 200) -> BestConstantResult:
    """Bisect for the sharp parameter of a one-sided comparison."""
    direction = Direction(direction)
    make = _family_make(family)
    if grid is None:
        grid = default_grid()
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise BracketError(f"bracket must be finite with low < high, got {bracket!r}")

    good = (Verdict.LE, Verdict.EQUAL) if direction is Direction.SUP_LE \
        else (Verdict.GE, Verdict.EQUAL)

    def satisfied(p: float) -> tuple[bool, OrderingReport]:
        rep = compare(make(p), target, grid, compare_tol)
        return rep.verdict in good, rep

    ok_lo, rep_lo = satisfied(lo)
    ok_hi, rep_hi = satisfied(hi)
    if direction is Direction.SUP_LE:
        if not ok_lo:
            raise BracketError(
                f"claim fails at bracket low {lo!r} (verdict {rep_lo.verdict.value})")
        if ok_hi:
            raise BracketError(
                f"claim still holds at bracket high {hi!r}; no constant inside")
        fail_report = rep_hi
    else:
        if not ok_hi:
            raise BracketError(
                f"claim fails at bracket high {hi!r} (verdict {rep_hi.verdict.value})")
        if ok_lo:
            raise BracketError(
                f"claim already holds at bracket low {lo!r}; no constant inside")
        fail_report = rep_lo

    trace: list[BisectionStep] = []
    iterations = 0
    while hi - lo > tol and iterations < max_iterations:
        iterations += 1
        mid = 0.5 * (lo + hi)
        ok, rep = satisfied(mid)
        trace.append(BisectionStep(iterations, lo, hi, mid, rep.verdict))
        move_lo = ok if direction is Direction.SUP_LE else not ok
        if move_lo:
            lo = mid
        else:
            hi = mid
        if not ok:
            fail_report = rep

    violating = fail_report.gt_witnesses if direction is Direction.SUP_LE \
        else fail_report.lt_witnesses
    return BestConstantResult(
        parameter=0.5 * (lo + hi),
        bracket=(lo, hi),
        direction=direction,
        iterations=iterations,
        violating_t_at_high=violating[0][0] if violating else None,
        trace=tuple(trace),
    )


# --- cancellation verdicts -------------------------------------------------------

DEFAULT_PARAM_LADDER = (0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0)


@dataclass(frozen=True)
class MemberCheck:
    """Evidence that one sampled member does not dominate the candidate.

    ``witness`` is a grid point (t, phi_member, phi_candidate) where the
    member sits strictly on the wrong side; ``method`` records whether that
    point came from a characteristic-number separation argument ("sigma",
    witness taken at the largest separated t) or a plain grid scan
    ("witness").  A member that *does* dominate carries no witness and
    method "none".
    """

    parameter: float
    verdict: Verdict
    witness: Optional[Witness]
    method: str


@dataclass(frozen=True)
class CancellationVerdict:
    """Can the candidate be cancelled against this family on one side?

    Right side: the candidate dominates at least one member and is dominated
    by none.  Left side is the mirror image (candidate below some member,
    above none); it is computed by running the right-side check on dual
    means and transporting the witnesses back.
    """

    candidate: str
    family: str
    side: str  # "right" or "left"
    verdict: str  # "SUPPORTED", "REFUTED", "INCONCLUSIVE"
    dominates_some_member: bool
    witness_parameter: Optional[float]
    dominated_by_none: bool
    sigma_argument_used: bool
    caveat: str
    refutations: tuple[MemberCheck, ...]


def _usable_sigma(m: MeanDescriptor) -> Optional[float]:
    try:
        result = characteristics.best_sigma(m)
    except (DomainError, OverflowError, ValueError):
        return None
    return result.value if result is not None else None


def _fmt_params(ladder: Sequence[float]) -> str:
    return "{" + ", ".join(f"{p:g}" for p in ladder) + "}"


def cancelling_verdict(family: FamilyDescriptor, candidate: MeanDescriptor,
                       param_ladder: Optional[Sequence[float]] = None,
                       grid: Union[GridSpec, Iterable[float], None] = None,
                       tol: float = COMPARE_TOL,
                       _side: str = "right") -> CancellationVerdict:
    """Right-cancellation check against a sampled parameter ladder.

    SUPPORTED means: some sampled member is <= candidate on the whole grid,
    and every sampled member drops strictly below the candidate somewhere
    (so none dominates it).  REFUTED means a sampled member dominates the
    candidate.  INCONCLUSIVE means no sampled member was dominated but none
    dominates either.
    """
    ladder = DEFAULT_PARAM_LADDER if param_ladder is None else tuple(param_ladder)
    if not ladder:
        raise ValueError("parameter ladder must be non-empty")
    if grid is None:
        grid = default_grid()
    make = _family_make(family)

    cand_sigma = _usable_sigma(candidate)
    witness_parameter: Optional[float] = None
    dominated_by: Optional[float] = None
    sigma_used = False
    checks: list[MemberCheck] = []

    for p in ladder:
        member = make(p)
        rep = compare(member, candidate, grid, tol)
        if rep.verdict in (Verdict.LE, Verdict.EQUAL) and witness_parameter is None:
            witness_parameter = p
        if rep.verdict in (Verdict.GE, Verdict.EQUAL):
            if dominated_by is None:
                dominated_by = p
            checks.append(MemberCheck(p, rep.verdict, None, "none"))
            continue
        # member is LE or CROSSING, so strictly-below points exist
        member_sigma = _usable_sigma(member)
        if (cand_sigma is not None and member_sigma is not None
                and member_sigma < cand_sigma - SIGMA_MARGIN):
            witness = max(rep.lt_witnesses, key=lambda w: w[0])
            method = "sigma"
            sigma_used = True
        else:
            witness = max(rep.lt_witnesses, key=lambda w: w[2] - w[1])
            method = "witness"
        checks.append(MemberCheck(p, rep.verdict, witness, method))

    dominated_by_none = dominated_by is None
    if not dominated_by_none:
        verdict = "REFUTED"
    elif witness_parameter is not None:
        verdict = "SUPPORTED"
    else:
        verdict = "INCONCLUSIVE"

    n_points = len(_grid_ts(grid))
    caveat = (
        f"{_side}-cancellation checked against {len(ladder)} sampled parameters "
        f"{_fmt_params(ladder)} on a {n_points}-point canonical grid; an "
        "unsampled intermediate member could still dominate the candidate, and "
        "separations thinner than the comparison band count as ties."
    )
    return CancellationVerdict(
        candidate=str(candidate),
        family=str(family),
        side=_side,
        verdict=verdict,
        dominates_some_member=witness_parameter is not None,
        witness_parameter=witness_parameter,
        dominated_by_none=dominated_by_none,
        sigma_argument_used=sigma_used,
        caveat=caveat,
        refutations=tuple(checks),
    )


def _flip_verdict(v: Verdict) -> Verdict:
    if v is Verdict.LE:
        return Verdict.GE
    if v is Verdict.GE:
        return Verdict.LE
    return v


def left_cancelling_verdict(family: FamilyDescriptor, candidate: MeanDescriptor,
                            param_ladder: Optional[Sequence[float]] = None,
                            grid: Union[GridSpec, Iterable[float], None] = None,
                            tol: float = COMPARE_TOL) -> CancellationVerdict:
    """Left-cancellation via duality.

    dual reverses every pointwise inequality, so the candidate sits below
    some member and above none exactly when its dual right-cancels the dual
    family.  Witness t values carry straight over; the phi values are
    re-evaluated for the original means so the report reads in the original
    orientation (witness = point where the member is strictly *above* the
    candidate).
    """
    make = _family_make(family)
    dual_family = FamilyDescriptor(
        family_id=getattr(family, "family_id", "family"),
        param_arity=getattr(family, "param_arity", 1),
        make=lambda p: core.dual(make(p)),
        base_mean=getattr(family, "base_mean", None),
        ordered=getattr(family, "ordered", True),
    )
    right = cancelling_verdict(dual_family, core.dual(candidate),
                               param_ladder, grid, tol, _side="left")
    transported: list[MemberCheck] = []
    for chk in right.refutations:
        witness = None
        if chk.witness is not None:
            t = chk.witness[0]
            witness = (t, core.phi(make(chk.parameter), t), core.phi(candidate, t))
        transported.append(MemberCheck(chk.parameter, _flip_verdict(chk.verdict),
                                       witness, chk.method))
    return replace(right,
                   candidate=str(candidate),
                   family=str(family),
                   refutations=tuple(transported))


def finite_family(means: Sequence[MeanDescriptor],
                  family_id: str = "finite") -> FamilyDescriptor:
    """Wrap an explicit list of means as an index-parametrized family.

    Use ``range(len(means))`` as the parameter ladder; the chain order is
    whatever order the list is in.
    """
    members = tuple(means)
    if not members:
        raise ValueError("finite family needs at least one member")

    def make(p: float) -> MeanDescriptor:
        idx = int(round(p))
        if not (0 <= idx < len(members) and abs(p - idx) < 1e-9):
            raise families.ParameterError(
                f"finite family index must be an integer in [0, {len(members) - 1}], "
                f"got {p!r}")
        return members[idx]

    return FamilyDescriptor(family_id=family_id, param_arity=1, make=make,
                            ordered=False)


# --- identities and curvature checks ---------------------------------------------

def lemma34_residual(a: float, b: float, s: float) -> float:
    """Residual of the closed form for log(I_ss / S) as a Lehmer/log-mean ratio.

    With l = a*b*(a^(s-1) + b^(s-1))/(a + b) and L = (a^s - b^s)/(s*log(a/b)),
    the identity says  log(I_ss(a, b) / S(a, b)) = (l/L - 1)/s,  where I_ss is
    the diagonal two-parameter difference mean with both parameters s.
    Returns left side minus right side; both sides are O(1) for a != b so the
    residual should sit at rounding level.
    """
    s = float(s)
    if s == 0.0:
        raise DomainError("the identity degenerates at s = 0")
    core._check_pair(a, b)
    a, b = float(a), float(b)
    if a == b:
        return 0.0
    u = abs((b - a) / (a + b))
    lhs = math.log(core.phi(families.stolarsky(s, s), u)) - math.log(core.phi(core.S, u))
    ell = a * b * (a ** (s - 1.0) + b ** (s - 1.0)) / (a + b)
    x = s * math.log1p((a - b) / b)
    big_l = b ** s * math.expm1(x) / x
    rhs = (ell / big_l - 1.0) / s
    return lhs - rhs


def theorem11_ratio(t: float) -> float:
    """phi of the cubic generalized log-mean, cubed: (3 + t^2) t / (3 atanh t).

    Cross-checks the direct evaluation against the closed form to 1e-12
    relative before returning; the value is < 1 on (0, 1).
    """
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"need 0 < t < 1, got {t!r}")
    direct = core.phi(families.gen_log(3.0), t) ** 3
    closed = (3.0 + t * t) / 3.0 * (t / math.atanh(t))
    if abs(direct - closed) > 1e-12 * abs(closed):
        raise RuntimeError(
            f"cubic log-mean self-check failed at t={t!r}: {direct!r} vs {closed!r}")
    return closed


def concavity_gap(t: float) -> float:
    """2 log(phi_Q / phi_S) with Q the quadratic power mean, grouped stably.

    Equals log1p(t^2) - log1p(-t^2) - 2 t atanh t.  The grouping keeps full
    absolute accuracy near t = 0 (every term is O(t^2)), which a difference
    of two finished log-phi evaluations would not.
    """
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"need 0 <= t < 1, got {t!r}")
    tt = t * t
    return math.log1p(tt) - (math.log1p(-tt) + 2.0 * t * math.atanh(t))


def concavity_gap_second_derivative(t: float) -> float:
    """Closed second derivative of :func:`concavity_gap`: -8 t^2 / ((1+t^2)^2 (1-t^2))."""
    t = float(t)
    tt = t * t
    return -8.0 * tt / ((1.0 + tt) ** 2 * (1.0 - tt))


def central_second_difference(f: Callable[[float], float], t: float,
                              h: float = 1e-5) -> float:
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h)

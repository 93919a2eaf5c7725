"""Parametric families of means: Hölder, Lehmer, generalized logarithmic,
Stolarsky (two-parameter), the lambda family, the K family, power transforms
and weighted Hölder means.

Construction returns a :class:`~meanlab.core.MeanDescriptor`; the phi
implementations registered here do the numerical work.  Throughout, with
u = |t|:

    lp = log1p(u),   lm = log1p(-u),   w = atanh(u) = (lp - lm) / 2,

and (1 + u)^q = exp(q * lp) etc.  Formulas are arranged so that only sums of
same-sign terms, expm1/log1p calls, and log-sum-exp reductions appear; the
residual cancellations all sit inside exponents, where only their *absolute*
error survives exp().

Parameters are capped at |p| <= 64: beyond that the means are numerically
indistinguishable from max/min long before t reaches the end of the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import core
from .core import MeanDescriptor

PARAM_LIMIT = 64.0

#: parameters closer than this to a removable singularity take the limit branch
_LIMIT_EPS = 1e-8

#: exp() arguments above this are treated as exp-dominated (expm1(x) ~ e^x)
_BIG = 690.0

_LN2 = math.log(2.0)


class ParameterError(ValueError):
    """Family parameter outside the supported range."""


def _check_param(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    if abs(value) > PARAM_LIMIT:
        raise ParameterError(f"|{name}| <= {PARAM_LIMIT:g} required, got {value!r}")
    return value


# --- shared numerics -------------------------------------------------------

def _logaddexp(x: float, y: float) -> float:
    if x < y:
        x, y = y, x
    return x + math.log1p(math.exp(y - x))


def _log_expm1(x: float) -> float:
    """log(expm1(x)) for x > 0 without overflow."""
    return math.log(math.expm1(x)) if x <= _BIG else x


def _log_expm1_over_x(x: float) -> float:
    """log(expm1(x)/x) for x > 0 without overflow."""
    return math.log(math.expm1(x) / x) if x <= _BIG else x - math.log(x)


def _g(p: float, w: float) -> float:
    """log(expm1(2 p w) / p) for p != 0, w > 0 — sign-safe both ways."""
    x = 2.0 * p * w
    if p > 0.0:
        return _log_expm1(x) - math.log(p)
    return math.log1p(-math.exp(x)) - math.log(-p)


# --- Hölder (power) means --------------------------------------------------

def _phi_holder(m: MeanDescriptor, u: float) -> float:
    (s,) = m.params
    lp = math.log1p(u)
    lm = math.log1p(-u)
    return math.exp((_logaddexp(s * lp, s * lm) - _LN2) / s)


def _holder_series(m: MeanDescriptor) -> tuple[float, float]:
    (s,) = m.params
    return (s - 1.0) / 2.0, -(s - 1.0) * (s + 1.0) * (2.0 * s - 3.0) / 24.0


def holder(s: float) -> MeanDescriptor:
    """Power mean of exponent s; s = 0 is the geometric mean."""
    s = _check_param("s", s)
    if abs(s) < _LIMIT_EPS:
        return core.G
    return MeanDescriptor("holder", (s,))


# --- Lehmer means -----------------------------------------------------------

def _phi_lehmer(m: MeanDescriptor, u: float) -> float:
    (r,) = m.params
    lp = math.log1p(u)
    lm = math.log1p(-u)
    # ((1+u)^(r+1) + (1-u)^(r+1)) / ((1+u)^r + (1-u)^r), all terms positive
    return math.exp(_logaddexp((r + 1.0) * lp, (r + 1.0) * lm)
                    - _logaddexp(r * lp, r * lm))


def _lehmer_series(m: MeanDescriptor) -> tuple[float, float]:
    (r,) = m.params
    return r, -r * (r - 1.0) * (r + 1.0) / 3.0


def lehmer(r: float) -> MeanDescriptor:
    """Lehmer mean (a^(r+1) + b^(r+1)) / (a^r + b^r)."""
    r = _check_param("r", r)
    return MeanDescriptor("lehmer", (r,))


# --- generalized logarithmic means ------------------------------------------

def _phi_gen_log_param(p: float, u: float) -> float:
    w = math.atanh(u)
    # L_p(a,b) = ((b^p - a^p) / (p (log b - log a)))^(1/p)
    #          = (1-u) * (expm1(2pw) / (2pw))^(1/p)
    if p > 0.0:
        return math.exp(math.log1p(-u) + _log_expm1_over_x(2.0 * p * w) / p)
    return math.exp(math.log1p(-u) + (_g(p, w) - math.log(2.0 * w)) / p)


def _phi_gen_log(m: MeanDescriptor, u: float) -> float:
    return _phi_gen_log_param(m.params[0], u)


def _gen_log_series(m: MeanDescriptor) -> tuple[float, float]:
    (p,) = m.params
    return (p - 3.0) / 6.0, -(2.0 * p**3 - 5.0 * p**2 - 10.0 * p + 45.0) / 360.0


def gen_log(p: float) -> MeanDescriptor:
    """Generalized logarithmic mean; p = 1 is L, the limit p -> 0 is G."""
    p = _check_param("p", p)
    if abs(p) < _LIMIT_EPS:
        return core.G
    return MeanDescriptor("genlog", (p,))


# --- Stolarsky (extended) means ----------------------------------------------

def _phi_stolarsky_diag(sbar: float, u: float) -> float:
    """phi of the r = s = sbar member, sbar > 0."""
    x = 2.0 * sbar * math.atanh(u)
    tail = 0.0 if x > _BIG else x / (sbar * math.expm1(x))
    return math.exp(math.log1p(u) - 1.0 / sbar + tail)


def _dg_near_diagonal(r: float, s: float, w: float) -> float:
    """(g(s) - g(r)) / (s - r) for 0 < r < s nearly equal.

    The direct difference of g values loses one digit per digit of parameter
    agreement; rewriting both terms as log1p of O(s - r) quantities keeps
    full relative accuracy however small the split is.
    """
    d = 2.0 * (s - r) * w
    x = 2.0 * r * w
    ratio = math.expm1(d) / -math.expm1(-x)  # expm1(d) * e^x / expm1(x)
    return (math.log1p(ratio) - math.log1p((s - r) / r)) / (s - r)


def _phi_stolarsky_pair(r: float, s: float, u: float) -> float:
    """phi of I_{r,s} for r <= s, not within the diagonal routing band."""
    if abs(r) < _LIMIT_EPS:
        return _phi_gen_log_param(s, u)
    if abs(s) < _LIMIT_EPS:
        return _phi_gen_log_param(r, u)
    w = math.atanh(u)
    lm = math.log1p(-u)
    if s < 0.0:
        # I_{-s,-r} duality keeps the nearly-diagonal rewrite single-signed
        return (1.0 - u) * (1.0 + u) / _phi_stolarsky_pair(-s, -r, u)
    if r > 0.0 and s - r <= 1e-5 * max(1.0, s):
        return math.exp(lm + _dg_near_diagonal(r, s, w))
    return math.exp(lm + (_g(s, w) - _g(r, w)) / (s - r))


def _phi_stolarsky(m: MeanDescriptor, u: float) -> float:
    r, s = m.params
    if s - r <= _LIMIT_EPS:
        sbar = 0.5 * (r + s)
        if abs(sbar) < _LIMIT_EPS:
            return math.sqrt((1.0 - u) * (1.0 + u))
        if sbar < 0.0:
            return (1.0 - u) * (1.0 + u) / _phi_stolarsky_diag(-sbar, u)
        return _phi_stolarsky_diag(sbar, u)
    return _phi_stolarsky_pair(r, s, u)


def _stolarsky_series(m: MeanDescriptor) -> tuple[float, float]:
    r, s = m.params
    a1 = (r + s - 3.0) / 6.0
    a2 = -(2.0 * r**3 + 2.0 * r**2 * s - 5.0 * r**2 + 2.0 * r * s**2
           - 10.0 * r * s - 10.0 * r + 2.0 * s**3 - 5.0 * s**2 - 10.0 * s
           + 45.0) / 360.0
    return a1, a2


def stolarsky(r: float, s: float) -> MeanDescriptor:
    """Two-parameter Stolarsky mean; symmetric in (r, s), stored sorted.

    Contains most of the zoo: (0, p) is the generalized logarithmic mean,
    (1, 1) the identric mean, (1, 2) the arithmetic mean, and (-r, r)
    collapses to G for every r.  Parameters within 1e-8 of a removable
    singularity (r = s, or a vanishing parameter) take the limit branch.
    """
    r = _check_param("r", r)
    s = _check_param("s", s)
    if s < r:
        r, s = s, r
    return MeanDescriptor("stolarsky", (r, s))


# --- lambda family ------------------------------------------------------------

def _phi_lambda(m: MeanDescriptor, u: float) -> float:
    (s,) = m.params
    q = core._log_one_minus_sq(u)
    if abs(s - 1.0) < _LIMIT_EPS:
        return u * u / (q + 2.0 * u * math.atanh(u))
    if abs(s) < _LIMIT_EPS:
        return (q + 2.0 * u * math.atanh(u)) / (-q)
    if abs(s + 1.0) < _LIMIT_EPS:
        return -q * (1.0 - u) * (1.0 + u) / (u * u)
    lp = math.log1p(u)
    lm = math.log1p(-u)
    scale = (s - 1.0) / (s + 1.0)
    x1, x2 = (s + 1.0) * lp, (s + 1.0) * lm
    y1, y2 = s * lp, s * lm
    if max(x1, x2, y1, y2) > _BIG:
        # the -2 corrections below are invisible at this magnitude
        return scale * math.exp(_logaddexp(x1, x2) - _logaddexp(y1, y2))
    num = math.expm1(x1) + math.expm1(x2)
    den = math.expm1(y1) + math.expm1(y2)
    return scale * num / den


def _lambda_series(m: MeanDescriptor) -> tuple[float, float]:
    (s,) = m.params
    return (s - 2.0) / 6.0, -(s - 3.0) * (s - 2.0) * (s + 6.0) / 360.0


def lambda_mean(s: float) -> MeanDescriptor:
    """The interpolation family hitting L-like means below and S-like above.

    The removable singularities at s in {-1, 0, 1} are evaluated through
    their limit forms; parameters within 1e-8 of them route the same way.
    """
    s = _check_param("s", s)
    return MeanDescriptor("lambda", (s,))


# --- K family -------------------------------------------------------------------

def _phi_k(m: MeanDescriptor, u: float) -> float:
    (r,) = m.params
    lp = math.log1p(u)
    lm = math.log1p(-u)
    # ((a^(r+1) + b^(r+1)) / (a + b))^(1/r) on the canonical pair
    return math.exp((_logaddexp((r + 1.0) * lp, (r + 1.0) * lm) - _LN2) / r)


def _k_series(m: MeanDescriptor) -> tuple[float, float]:
    (r,) = m.params
    return (r + 1.0) / 2.0, -(r - 1.0) * (r + 1.0) * (2.0 * r + 5.0) / 24.0


def k_mean(r: float) -> MeanDescriptor:
    """K family ((a^(r+1) + b^(r+1)) / (a + b))^(1/r); r -> 0 gives S.

    A mean for r >= -1 (r = -1 is the limit A); below that betweenness
    fails near the boundary and the descriptor is kept only for exploration.
    """
    r = _check_param("r", r)
    if abs(r) < _LIMIT_EPS:
        return core.S
    if abs(r + 1.0) < _LIMIT_EPS:
        return core.A
    return MeanDescriptor("kfamily", (r,))


# --- power transform ----------------------------------------------------------

_ONE_MINUS = math.nextafter(1.0, 0.0)


def _phi_power(m: MeanDescriptor, u: float) -> float:
    (s,) = m.params
    lp = math.log1p(u)
    lm = math.log1p(-u)
    # the base mean sees the canonical coordinate of the pair (a^s, b^s)
    t_inner = min(math.tanh(abs(s) * math.atanh(u)), _ONE_MINUS)
    ln_base = math.log(core._phi_abs(m.base, t_inner))
    return math.exp((_logaddexp(s * lp, s * lm) - _LN2 + ln_base) / s)


def _power_series(m: MeanDescriptor) -> tuple[float, float]:
    (s,) = m.params
    a1b, a2b = core.series_coefficients(m.base)  # type: ignore[arg-type]
    l2b = a2b - 0.5 * a1b * a1b  # log-phi t^4 coefficient of the base
    a1 = (s - 1.0) / 2.0 + a1b * s
    c4 = (s * (s - 1.0) * (s - 2.0) * (s - 3.0) / 24.0
          - s * s * (s - 1.0) ** 2 / 8.0)
    l2 = (c4 + a1b * 2.0 * s * s * (1.0 - s * s) / 3.0 + l2b * s**4) / s
    return a1, l2 + 0.5 * a1 * a1


def power_transform(base: MeanDescriptor, s: float) -> MeanDescriptor:
    """M_s(base)(a, b) = base(a^s, b^s)^(1/s); the limit s -> 0 is G."""
    s = _check_param("s", s)
    if abs(s) < _LIMIT_EPS or base.family_id == "G":
        return core.G
    if base.family_id == "A":
        return holder(s)
    return MeanDescriptor("power_transform", (s,), base=base)


# --- weighted Hölder means ------------------------------------------------------

@dataclass(frozen=True)
class WeightedHolder:
    """Weighted power mean (p a^r + (1-p) b^r)^(1/r); r = 0 means a^p b^(1-p).

    Asymmetric for p != 1/2, so it lives outside the descriptor machinery;
    it is still homogeneous, between min and max, and increasing in r.
    """

    p: float
    r: float

    def __post_init__(self) -> None:
        if not (0.0 < self.p < 1.0):
            raise ParameterError(f"weight must lie strictly in (0, 1), got {self.p!r}")
        _check_param("r", self.r)

    def __call__(self, a: float, b: float) -> float:
        core._check_pair(a, b)
        la, lb = math.log(a), math.log(b)
        if abs(self.r) < _LIMIT_EPS:
            return math.exp(self.p * la + (1.0 - self.p) * lb)
        x, y = self.r * la, self.r * lb
        hi = max(x, y)
        inner = self.p * math.exp(x - hi) + (1.0 - self.p) * math.exp(y - hi)
        return math.exp((hi + math.log(inner)) / self.r)


def weighted_holder(p: float, r: float) -> WeightedHolder:
    return WeightedHolder(p, r)


# --- family descriptors (for sweeps, bisection, the CLI) -------------------------

@dataclass(frozen=True)
class FamilyDescriptor:
    """A parametrized curve through mean-space.

    ``make`` builds the member at a parameter; ``ordered`` records whether
    members increase pointwise with the parameter, which is what makes
    bisection for best constants meaningful.
    """

    family_id: str
    param_arity: int
    make: Callable[..., MeanDescriptor]
    base_mean: Optional[MeanDescriptor] = None
    ordered: bool = True

    def __str__(self) -> str:
        return self.family_id


HOLDER_FAMILY = FamilyDescriptor("holder", 1, holder)
LEHMER_FAMILY = FamilyDescriptor("lehmer", 1, lehmer)
GENLOG_FAMILY = FamilyDescriptor("genlog", 1, gen_log)
LAMBDA_FAMILY = FamilyDescriptor("lambda", 1, lambda_mean)
K_FAMILY = FamilyDescriptor("kfamily", 1, k_mean)
STOLARSKY_FAMILY = FamilyDescriptor("stolarsky", 2, stolarsky)
STOLARSKY_DIAG_FAMILY = FamilyDescriptor(
    "stolarsky_diag", 1, lambda s: stolarsky(s, s))


def power_family(base: MeanDescriptor) -> FamilyDescriptor:
    return FamilyDescriptor(
        "power_transform", 1, lambda s, _b=base: power_transform(_b, s),
        base_mean=base)


FAMILIES: dict[str, FamilyDescriptor] = {
    "holder": HOLDER_FAMILY,
    "lehmer": LEHMER_FAMILY,
    "genlog": GENLOG_FAMILY,
    "lambda": LAMBDA_FAMILY,
    "kfamily": K_FAMILY,
    "stolarsky": STOLARSKY_FAMILY,
    "stolarsky_diag": STOLARSKY_DIAG_FAMILY,
}


core.register_phi("holder", _phi_holder, _holder_series)
core.register_phi("lehmer", _phi_lehmer, _lehmer_series)
core.register_phi("genlog", _phi_gen_log, _gen_log_series)
core.register_phi("stolarsky", _phi_stolarsky, _stolarsky_series)
core.register_phi("lambda", _phi_lambda, _lambda_series)
core.register_phi("kfamily", _phi_k, _k_series)
core.register_phi("power_transform", _phi_power, _power_series)

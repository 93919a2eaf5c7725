"""Characteristic numbers and characteristic-function diagnostics.

The characteristic number sigma(M) = lim_{t->1-} phi_M(t) measures how a
mean behaves when one argument dwarfs the other (equivalently M(0+, 2)).
It is computed by sampling phi at t = 1 - 10^-k and accelerating with
iterated Aitken extrapolation; means whose phi approaches its limit like
1/log(1/eps) are reported honestly as slow-convergent instead of being
assigned a confident wrong value.

Closed forms exist for a handful of transformed families and are kept in a
separate registry so callers can prefer them and fall back to the numeric
limit everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import core
from .core import DomainError, MeanDescriptor

#: epsilon ladder for the t -> 1 limit
SIGMA_EPSILONS = tuple(10.0 ** -k for k in range(2, 11))

#: relative agreement between successive extrapolation levels
SIGMA_RTOL = 1e-9


class UnsupportedSigmaError(KeyError):
    """No closed-form sigma registered for this family/parameters."""


@dataclass(frozen=True)
class SigmaResult:
    """Outcome of the characteristic-number limit."""

    value: float
    converged: bool
    method: str  # "direct_limit" or "closed_form"
    tail: tuple[tuple[float, float], ...]  # (epsilon, phi(1 - epsilon))


def _aitken_limit(xs: Sequence[float], rtol: float) -> tuple[float, bool]:
    """Iterated Aitken delta-squared with a degenerate-difference early out.

    Convergence is judged between the best estimates of successive levels;
    a vanishing second difference means the sequence is numerically settled
    at that level (constant sequences land here immediately).
    """
    levels: list[list[float]] = [list(xs)]
    while len(levels[-1]) >= 3:
        prev = levels[-1]
        nxt: list[float] = []
        for i in range(len(prev) - 2):
            d2 = prev[i + 2] - 2.0 * prev[i + 1] + prev[i]
            scale = abs(prev[i]) + abs(prev[i + 1]) + abs(prev[i + 2])
            if abs(d2) <= 1e-15 * scale:
                return prev[-1], True
            nxt.append(prev[i + 2] - (prev[i + 2] - prev[i + 1]) ** 2 / d2)
        levels.append(nxt)
    estimates = [lv[-1] for lv in levels]
    value = estimates[-1]
    if len(estimates) < 2:
        return value, False
    return value, abs(estimates[-1] - estimates[-2]) <= rtol * max(abs(value), 1e-300)


def sigma(m: MeanDescriptor, rtol: float = SIGMA_RTOL) -> SigmaResult:
    """Numeric characteristic number via the t -> 1 limit of phi."""
    if not isinstance(m, MeanDescriptor):
        raise TypeError(
            "sigma needs a symmetric mean descriptor; asymmetric evaluators "
            "have no single characteristic number")
    samples: list[tuple[float, float]] = []
    for eps in SIGMA_EPSILONS:
        try:
            samples.append((eps, core.phi(m, 1.0 - eps)))
        except Exception as exc:
            raise DomainError(f"sigma sample failed at epsilon={eps!r}: {exc}") from exc
    value, converged = _aitken_limit([v for _, v in samples], rtol)
    value = min(2.0, max(0.0, value))
    return SigmaResult(value=value, converged=converged,
                       method="direct_limit", tail=tuple(samples))


# --- closed forms -----------------------------------------------------------

_SigmaClosedFn = Callable[[tuple[float, ...]], float]
_SIGMA_CLOSED: dict[str, _SigmaClosedFn] = {}


def register_sigma_closed(family_id: str, fn: _SigmaClosedFn) -> None:
    _SIGMA_CLOSED[family_id] = fn


def sigma_closed(family_id: str, params: Sequence[float]) -> float:
    """Closed-form sigma for the registered families.

    Registered: ``holder`` (s > 0) -> 2^(1-1/s); ``stolarsky`` diagonal
    (r = s > 0) -> 2 e^(-1/s); ``kfamily`` (r > -1) -> 2;
    ``power_transform`` with params (s, sigma_base), s > 0
    -> 2^(1-1/s) * sigma_base^(1/s).
    """
    try:
        fn = _SIGMA_CLOSED[family_id]
    except KeyError:
        raise UnsupportedSigmaError(f"no closed sigma for family {family_id!r}") from None
    return fn(tuple(float(p) for p in params))


def _sigma_holder(params: tuple[float, ...]) -> float:
    (s,) = params
    if s <= 0.0:
        raise UnsupportedSigmaError("closed holder sigma needs s > 0")
    return 2.0 ** (1.0 - 1.0 / s)


def _sigma_stolarsky(params: tuple[float, ...]) -> float:
    r, s = params
    if abs(r - s) > 1e-8 or s <= 0.0:
        raise UnsupportedSigmaError("closed stolarsky sigma needs r = s > 0")
    sbar = 0.5 * (r + s)
    return 2.0 * math.exp(-1.0 / sbar)


def _sigma_k(params: tuple[float, ...]) -> float:
    (r,) = params
    if r <= -1.0:
        raise UnsupportedSigmaError("closed kfamily sigma needs r > -1")
    return 2.0


def _sigma_power(params: tuple[float, ...]) -> float:
    s, sigma_base = params
    if s <= 0.0:
        raise UnsupportedSigmaError("closed power-transform sigma needs s > 0")
    return 2.0 ** (1.0 - 1.0 / s) * sigma_base ** (1.0 / s)


register_sigma_closed("holder", _sigma_holder)
register_sigma_closed("stolarsky", _sigma_stolarsky)
register_sigma_closed("kfamily", _sigma_k)
register_sigma_closed("power_transform", _sigma_power)


def closed_sigma(m: MeanDescriptor) -> Optional[float]:
    """Structural closed-form sigma for a descriptor, or None.

    Walks power transforms recursively; anything without a registered
    closed form yields None so callers can fall back to :func:`sigma`.
    """
    try:
        if m.family_id == "power_transform":
            base = closed_sigma(m.base)  # type: ignore[arg-type]
            if base is None:
                return None
            return sigma_closed("power_transform", (m.params[0], base))
        if m.family_id in ("holder", "stolarsky", "kfamily"):
            return sigma_closed(m.family_id, m.params)
    except UnsupportedSigmaError:
        return None
    return None


def best_sigma(m: MeanDescriptor) -> Optional[SigmaResult]:
    """Closed form when registered, else the numeric limit if it converged."""
    closed = closed_sigma(m)
    if closed is not None:
        return SigmaResult(value=closed, converged=True, method="closed_form", tail=())
    numeric = sigma(m)
    return numeric if numeric.converged else None


# --- phi series --------------------------------------------------------------

#: default half-width of the series fitting window
SERIES_WINDOW = 0.1

#: residuals above this mark a questionable fit
SERIES_RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True)
class PhiSeries:
    """Fitted even power series phi(t) ~ sum a_k t^(2k), a_0 = 1."""

    coefficients: tuple[float, ...]  # a_0 .. a_order
    fit_residual: float
    fit_window: tuple[float, float]
    ok: bool

    @property
    def a1(self) -> float:
        return self.coefficients[1]

    def evaluate(self, t: float) -> float:
        u = t * t
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * u + c
        return acc


def phi_series(m: MeanDescriptor, order: int, window: float = SERIES_WINDOW) -> PhiSeries:
    """Least-squares even-polynomial fit of phi on [-window, window].

    a_0 is pinned to 1 and the remaining coefficients are solved in the
    scaled variable (t/window)^2, which keeps the normal equations sane.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order!r}")
    n = 8 * order
    ts = np.linspace(window / n, window, n)
    ts = np.concatenate([-ts[::-1], ts])
    y = np.array([core.phi(m, t) - 1.0 for t in ts])
    u = (ts / window) ** 2
    design = np.column_stack([u**k for k in range(1, order + 1)])
    scaled, *_ = np.linalg.lstsq(design, y, rcond=None)
    coeffs = [1.0] + [scaled[k - 1] / window ** (2 * k) for k in range(1, order + 1)]
    fitted = design @ scaled
    residual = float(np.max(np.abs(fitted - y)))
    return PhiSeries(
        coefficients=tuple(float(c) for c in coeffs),
        fit_residual=residual,
        fit_window=(-window, window),
        ok=residual <= SERIES_RESIDUAL_LIMIT,
    )


# --- comparison exponents ------------------------------------------------------

@dataclass(frozen=True)
class ComparisonExponent:
    """Richardson-extrapolated lim_{t->0} log(m/n)(1-t, 1+t) / t^2."""

    value: float
    converged: bool
    samples: tuple[tuple[float, float], ...]  # (t, raw quotient)


def comparison_exponent_report(m: MeanDescriptor, n: MeanDescriptor) -> ComparisonExponent:
    ts = [0.1 / 2**k for k in range(7)]
    samples = []
    for t in ts:
        pm = core.phi(m, t)
        pn = core.phi(n, t)
        samples.append((t, math.log1p((pm - pn) / pn) / (t * t)))
    # classic Richardson table; steps halve, error is even in t, factor 4
    table = [[v for _, v in samples]]
    for j in range(1, len(ts)):
        prev = table[-1]
        table.append([
            prev[i + 1] + (prev[i + 1] - prev[i]) / (4.0**j - 1.0)
            for i in range(len(prev) - 1)
        ])
    diag = [table[j][-1] for j in range(len(table))]
    value = diag[-1]
    converged = abs(diag[-1] - diag[-2]) <= 1e-8 * max(1.0, abs(value))
    return ComparisonExponent(value=float(value), converged=converged,
                              samples=tuple(samples))


def comparison_exponent(m: MeanDescriptor, n: MeanDescriptor) -> float:
    """The sign of this limit says which mean wins near the diagonal."""
    return comparison_exponent_report(m, n).value

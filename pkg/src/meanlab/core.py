"""Bivariate means on the positive half-line, evaluated without blowing up.

Every mean here is symmetric, homogeneous of order one, and sits between
min(a, b) and max(a, b).  That structure is exploited everywhere: a pair
(a, b) is reduced to the canonical coordinates

    t = (b - a) / (a + b)  in (-1, 1),      c = (a + b) / 2,

so that M(a, b) = c * phi_M(|t|) with phi_M(t) = M(1 - t, 1 + t).  All
numerics happen on phi: the canonical pair lives in (0, 2) so overflow never
enters, homogeneity is exact up to one multiplication, and symmetry is
structural because phi is evaluated at |t|.

Near the diagonal the textbook formulas for L, I, S and the Seiffert means
turn into 0/0; below the threshold ``Stabilization.threshold`` phi switches
to the even series 1 + a1*t^2 + a2*t^4 whose coefficients are exact rational
functions of the family parameters (checked against the extended-precision
oracle in the test suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence


class DomainError(ValueError):
    """Mean arguments must be finite and strictly positive."""


#: threshold below which phi switches from closed form to the even series
NEAR_DIAGONAL_THRESHOLD = 1e-4

#: scale factors used by homogeneity checks
DEFAULT_SCALE_FACTORS = (1e-3, 1.0, 1e3)

ELEMENTARY_IDS = ("H", "G", "L", "I", "A", "S", "P", "T")


@dataclass(frozen=True)
class Stabilization:
    """Near-diagonal policy: where the series takes over, and its order."""

    threshold: float = NEAR_DIAGONAL_THRESHOLD
    series_order: int = 2  # even powers through t^(2*series_order)


@dataclass(frozen=True)
class CanonicalPoint:
    """A positive pair in (t, c) coordinates."""

    t: float
    scale: float

    def pair(self) -> tuple[float, float]:
        return self.scale * (1.0 - self.t), self.scale * (1.0 + self.t)


def canonical(a: float, b: float) -> CanonicalPoint:
    """Map a positive pair to canonical coordinates (t keeps its sign)."""
    _check_pair(a, b)
    return CanonicalPoint(t=(b - a) / (a + b), scale=0.5 * (a + b))


@dataclass(frozen=True)
class MeanDescriptor:
    """A mean, described structurally.

    ``family_id`` selects the evaluation rule; ``params`` are the family
    parameters; ``base`` carries the wrapped descriptor for ``dual`` and the
    power transform.  ``value_fn`` is an escape hatch for ad-hoc bivariate
    functions (used by validation tests); such descriptors bypass the
    canonical reduction entirely, so they may be asymmetric on purpose.
    """

    family_id: str
    params: tuple[float, ...] = ()
    base: Optional["MeanDescriptor"] = None
    stabilization: Stabilization = field(default=Stabilization())
    value_fn: Optional[Callable[[float, float], float]] = None

    def value(self, a: float, b: float) -> float:
        return value(self, a, b)

    def phi(self, t: float) -> float:
        return phi(self, t)

    def __str__(self) -> str:
        if self.family_id == "dual":
            return f"dual({self.base})"
        if self.family_id == "power_transform":
            return f"pow({self.base}, {_fmt_param(self.params[0])})"
        if self.family_id == "custom":
            return "custom"
        token = "k" if self.family_id == "kfamily" else self.family_id
        if self.params:
            args = ", ".join(_fmt_param(p) for p in self.params)
            return f"{token}({args})"
        return token


def _fmt_param(x: float) -> str:
    return f"{x:g}"


# --- evaluation registry -------------------------------------------------
#
# families.py registers its phi implementations here at import time; the
# elementary means are registered below.  Each entry provides the direct
# closed form (valid for threshold <= t < 1) and the exact (a1, a2) series
# coefficients used below the threshold.

_PhiDirect = Callable[[MeanDescriptor, float], float]
_SeriesFn = Callable[[MeanDescriptor], tuple[float, float]]

_PHI_DIRECT: dict[str, _PhiDirect] = {}
_PHI_SERIES: dict[str, _SeriesFn] = {}


def register_phi(family_id: str, direct: _PhiDirect, series: _SeriesFn | None = None) -> None:
    _PHI_DIRECT[family_id] = direct
    if series is not None:
        _PHI_SERIES[family_id] = series


def _check_pair(a: float, b: float) -> None:
    try:
        ok = a > 0 and b > 0 and math.isfinite(a) and math.isfinite(b)
    except TypeError as exc:  # complex, None, ...
        raise DomainError(f"mean arguments must be positive reals, got ({a!r}, {b!r})") from exc
    if not ok:
        raise DomainError(f"mean arguments must be finite and > 0, got ({a!r}, {b!r})")


def value(m: MeanDescriptor, a: float, b: float) -> float:
    """Evaluate M(a, b) through the canonical reduction."""
    _check_pair(a, b)
    if m.family_id == "custom":
        return float(m.value_fn(a, b))  # type: ignore[misc]
    a = float(a)
    b = float(b)
    if a == b:  # reflexivity short-circuit, exact by construction
        return a
    return 0.5 * (a + b) * _phi_abs(m, abs((b - a) / (a + b)))


def phi(m: MeanDescriptor, t: float) -> float:
    """phi_M(t) = M(1 - t, 1 + t) for |t| < 1."""
    t = float(t)
    if not (-1.0 < t < 1.0):
        raise DomainError(f"phi needs |t| < 1, got {t!r}")
    if m.family_id == "custom":
        return float(m.value_fn(1.0 - t, 1.0 + t))  # type: ignore[misc]
    return _phi_abs(m, abs(t))


def _phi_abs(m: MeanDescriptor, u: float) -> float:
    if u == 0.0:
        return 1.0
    fam = m.family_id
    if fam == "custom":
        return float(m.value_fn(1.0 - u, 1.0 + u))  # type: ignore[misc]
    if fam == "dual":
        return (1.0 - u) * (1.0 + u) / _phi_abs(m.base, u)  # type: ignore[arg-type]
    if fam not in _PHI_DIRECT:
        raise DomainError(f"unknown mean family {fam!r}")
    if u < m.stabilization.threshold and fam in _PHI_SERIES:
        a1, a2 = _PHI_SERIES[fam](m)
        if m.stabilization.series_order <= 1:
            return 1.0 + a1 * u * u
        return 1.0 + u * u * (a1 + a2 * (u * u))
    return _PHI_DIRECT[fam](m, u)


def phi_direct(m: MeanDescriptor, t: float) -> float:
    """Closed-form phi with the series switch disabled (testing hook)."""
    u = abs(float(t))
    if u == 0.0:
        return 1.0
    if m.family_id == "dual":
        return (1.0 - u) * (1.0 + u) / phi_direct(m.base, u)  # type: ignore[arg-type]
    return _PHI_DIRECT[m.family_id](m, u)


def phi_series(m: MeanDescriptor, t: float) -> float:
    """Even-series phi regardless of threshold (testing hook)."""
    u = abs(float(t))
    a1, a2 = series_coefficients(m)
    return 1.0 + u * u * (a1 + a2 * (u * u))


def series_coefficients(m: MeanDescriptor) -> tuple[float, float]:
    """Exact (a1, a2) of phi_M(t) = 1 + a1 t^2 + a2 t^4 + O(t^6)."""
    if m.family_id == "dual":
        # phi_dual = (1 - t^2) / phi_base, so log-coefficients negate and
        # shift: l1 -> -1 - l1, l2 -> -1/2 - l2.
        a1b, a2b = series_coefficients(m.base)  # type: ignore[arg-type]
        l2b = a2b - 0.5 * a1b * a1b
        a1 = -1.0 - a1b
        l2 = -0.5 - l2b
        return a1, l2 + 0.5 * a1 * a1
    fn = _PHI_SERIES.get(m.family_id)
    if fn is None:
        raise DomainError(f"{m} has no registered series coefficients")
    return fn(m)


# --- elementary means ----------------------------------------------------

def _phi_H(m: MeanDescriptor, u: float) -> float:
    return (1.0 - u) * (1.0 + u)


def _phi_G(m: MeanDescriptor, u: float) -> float:
    return math.sqrt((1.0 - u) * (1.0 + u))


def _phi_A(m: MeanDescriptor, u: float) -> float:
    return 1.0


def _phi_L(m: MeanDescriptor, u: float) -> float:
    return u / math.atanh(u)


def _log_one_minus_sq(u: float) -> float:
    # log(1 - u^2): forming u*u first would round 1 - u^2 to absolute eps
    # and wreck the value for u near 1, while the split form loses relative
    # accuracy for small u, so pick per regime
    if u < 0.5:
        return math.log1p(-u * u)
    return math.log1p(-u) + math.log1p(u)


def _phi_I(m: MeanDescriptor, u: float) -> float:
    # exponent rewritten as w/u - 1 + log(1-u^2)/2 with w = atanh u; only
    # the absolute error of the exponent reaches phi, so the small-u
    # cancellation in w/u - 1 is benign
    w = math.atanh(u)
    return math.exp(w / u - 1.0 + 0.5 * _log_one_minus_sq(u))


def _phi_S(m: MeanDescriptor, u: float) -> float:
    return math.exp(0.5 * (_log_one_minus_sq(u) + 2.0 * u * math.atanh(u)))


def _phi_P(m: MeanDescriptor, u: float) -> float:
    return u / math.asin(u)


def _phi_T(m: MeanDescriptor, u: float) -> float:
    return u / math.atan(u)


_ELEMENTARY_SERIES: dict[str, tuple[float, float]] = {
    "H": (-1.0, 0.0),
    "G": (-0.5, -0.125),
    "L": (-1.0 / 3.0, -4.0 / 45.0),
    "I": (-1.0 / 6.0, -13.0 / 360.0),
    "A": (0.0, 0.0),
    "S": (0.5, 5.0 / 24.0),
    "P": (-1.0 / 6.0, -17.0 / 360.0),
    "T": (1.0 / 3.0, -4.0 / 45.0),
}

for _kind, _direct in [("H", _phi_H), ("G", _phi_G), ("L", _phi_L), ("I", _phi_I),
                       ("A", _phi_A), ("S", _phi_S), ("P", _phi_P), ("T", _phi_T)]:
    register_phi(_kind, _direct, lambda m, c=_ELEMENTARY_SERIES[_kind]: c)

H = MeanDescriptor("H")
G = MeanDescriptor("G")
L = MeanDescriptor("L")
I = MeanDescriptor("I")  # noqa: E741  - the identric mean really is called I
A = MeanDescriptor("A")
S = MeanDescriptor("S")
P = MeanDescriptor("P")
T = MeanDescriptor("T")

ELEMENTARY: dict[str, MeanDescriptor] = {
    "H": H, "G": G, "L": L, "I": I, "A": A, "S": S, "P": P, "T": T,
}


def eval_elementary(kind: str, a: float, b: float) -> float:
    """Evaluate one of H, G, L, I, A, S, P, T at a positive pair."""
    try:
        m = ELEMENTARY[kind]
    except KeyError:
        raise DomainError(f"unknown elementary mean {kind!r}; expected one of {ELEMENTARY_IDS}") from None
    return value(m, a, b)


def dual(m: MeanDescriptor) -> MeanDescriptor:
    """The dual mean (a, b) -> a*b / M(a, b); an involution on means."""
    if m.family_id == "dual":
        return m.base  # type: ignore[return-value]
    return MeanDescriptor("dual", base=m, stabilization=m.stabilization)


def custom_mean(fn: Callable[[float, float], float]) -> MeanDescriptor:
    """Wrap an arbitrary bivariate function (no canonical reduction applied)."""
    return MeanDescriptor("custom", value_fn=fn)


# --- axiom validation -----------------------------------------------------

@dataclass(frozen=True)
class MeanAxiomReport:
    """Numerical evidence that a descriptor behaves like a mean.

    Violations are relative; the betweenness witness list is non-empty
    exactly when its maximum violation exceeds the tolerance.
    """

    descriptor: str
    tolerance: float
    symmetry_max_violation: float
    homogeneity_max_violation: float
    betweenness_max_violation: float
    betweenness_violations: tuple[tuple[float, float, float], ...]
    symmetry_violations: tuple[tuple[float, float, float], ...]
    reflexivity_ok: bool

    @property
    def passed(self) -> bool:
        return (self.reflexivity_ok
                and self.symmetry_max_violation <= self.tolerance
                and self.homogeneity_max_violation <= self.tolerance
                and self.betweenness_max_violation <= self.tolerance)


def _grid_ts(grid) -> Sequence[float]:
    return tuple(getattr(grid, "t_values", grid))


def _grid_scales(grid) -> Sequence[float]:
    return tuple(getattr(grid, "scale_factors", DEFAULT_SCALE_FACTORS))


def validate_mean(m: MeanDescriptor, grid: Iterable[float], tol: float = 1e-12) -> MeanAxiomReport:
    """Check symmetry, homogeneity, betweenness and reflexivity on a grid.

    ``grid`` is either a GridSpec or a bare iterable of t values; witnesses
    are (a, b, value) triples.
    """
    ts = _grid_ts(grid)
    scales = _grid_scales(grid)

    sym_max = 0.0
    hom_max = 0.0
    btw_max = 0.0
    sym_wit: list[tuple[float, float, float]] = []
    btw_wit: list[tuple[float, float, float]] = []

    for t in ts:
        a, b = 1.0 - t, 1.0 + t
        v = value(m, a, b)
        v_swapped = value(m, b, a)
        sym = abs(v - v_swapped) / max(abs(v), abs(v_swapped), 1e-300)
        if sym > sym_max:
            sym_max = sym
        if sym > tol:
            sym_wit.append((a, b, v))

        lo, hi = min(a, b), max(a, b)
        btw = max(lo - v, v - hi, 0.0) / hi
        if btw > btw_max:
            btw_max = btw
        if btw > tol:
            btw_wit.append((a, b, v))

        for lam in scales:
            if lam == 1.0:
                continue
            scaled = value(m, lam * a, lam * b)
            hom = abs(scaled - lam * v) / (lam * abs(v))
            if hom > hom_max:
                hom_max = hom

    refl = all(value(m, x, x) == x for x in (0.25, 1.0, 3.0, 1e-3, 1e4))

    return MeanAxiomReport(
        descriptor=str(m),
        tolerance=tol,
        symmetry_max_violation=sym_max,
        homogeneity_max_violation=hom_max,
        betweenness_max_violation=btw_max,
        betweenness_violations=tuple(btw_wit[:16]),
        symmetry_violations=tuple(sym_wit[:16]),
        reflexivity_ok=refl,
    )

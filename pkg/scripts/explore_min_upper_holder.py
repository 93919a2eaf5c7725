#!/usr/bin/env python3
"""Exploratory: Hölder envelopes of the classical means, and the K corner.

For a symmetric homogeneous mean M, two regimes constrain which power means
A_s bound it:

* near the diagonal, phi_M(t) = 1 + a1 t^2 + ... forces s >= 1 + 2 a1 for an
  upper bound (and <= for a lower one);
* at the extreme end, sigma(A_s) = 2^(1 - 1/s) must clear sigma(M).

Whichever is larger binds the least upper power mean; whichever is smaller
binds the greatest lower one.  This script prints both predictions next to a
grid bisection so the binding regime is visible, then pokes at two corners:
the logarithmic-rate means (where the grid constant visibly drifts with
t_max) and the K family below r = -1 (where K_{-2} collapses to G).

Exploratory only -- nothing here is part of the tested claim catalog.
"""

import math

import numpy as np

from meanlab import characteristics, core, families, orderlab
from meanlab.core import ELEMENTARY
from meanlab.orderlab import Direction, Verdict, best_constant, compare

GRID = orderlab.default_grid()


def sigma_of(m) -> float | None:
    closed = characteristics.closed_sigma(m)
    if closed is not None:
        return closed
    res = characteristics.sigma(m)
    return res.value if res.converged else None


def envelope_predictions(m):
    a1, _ = core.series_coefficients(m)
    s_small = 1.0 + 2.0 * a1
    sig = sigma_of(m)
    if sig is None or sig <= 0.0:
        s_ext = None  # sigma(A_s) > 0 for every s > 0: no positive s clears it
    else:
        denom = 1.0 - math.log2(sig)
        # sigma(A_s) = 2^(1-1/s) stays below 2, so sigma >= 2 means no finite
        # power mean can dominate from above
        s_ext = 1.0 / denom if denom > 1e-9 else math.inf
    return s_small, s_ext, sig


def holds(s: float, target, direction: Direction) -> bool:
    rep = compare(families.holder(s), target, GRID)
    good = (Verdict.GE, Verdict.EQUAL) if direction is Direction.INF_GE \
        else (Verdict.LE, Verdict.EQUAL)
    return rep.verdict in good


def bisect_envelope(target, direction: Direction, guess: float) -> float | None:
    """Walk outward from the guess for a straddling bracket, then bisect."""
    for width in (0.25, 0.5, 1.0, 2.0, 4.0):
        lo, hi = guess - width, guess + width
        lo_ok, hi_ok = holds(lo, target, direction), holds(hi, target, direction)
        if direction is Direction.INF_GE and hi_ok and not lo_ok:
            break
        if direction is Direction.SUP_LE and lo_ok and not hi_ok:
            break
    else:
        return None
    res = best_constant(families.HOLDER_FAMILY, target, direction, (lo, hi),
                        grid=GRID)
    return res.parameter


def fmt(x) -> str:
    return f"{x:9.5f}" if x is not None else "     none"


def main() -> None:
    print("least upper / greatest lower power mean A_s for the classics")
    print("(small-t and extreme-t predictions vs. a 256-point grid bisection)\n")
    header = (f"{'mean':<6} {'sigma':>9} | {'s(t->0)':>9} {'s(t->1)':>9} "
              f"{'upper fit':>10} | {'lower fit':>10}")
    print(header)
    print("-" * len(header))
    for name in ("L", "I", "P", "T", "S"):
        m = ELEMENTARY[name]
        s_small, s_ext, sig = envelope_predictions(m)
        upper_pred = s_small if s_ext is None else max(s_small, s_ext)
        lower_pred = s_small if s_ext is None else min(s_small, s_ext)
        upper = None if math.isinf(upper_pred) \
            else bisect_envelope(m, Direction.INF_GE, upper_pred)
        lower = bisect_envelope(m, Direction.SUP_LE, lower_pred)
        print(f"{name:<6} {fmt(sig)} | {fmt(s_small)} {fmt(s_ext)} "
              f"{fmt(upper):>10} | {fmt(lower):>10}")
    print()
    print("P: the extreme regime binds below (ln2/ln pi ~ 0.60551) while the")
    print("   diagonal binds above (2/3); T mirrors this with ln2/ln(pi/2)")
    print("   and 5/3.  For L the lower fit is a grid artifact: sigma(A_s) -> 0")
    print("   only like 2^(-1/s) while phi_L decays logarithmically, so the")
    print("   bisected constant creeps toward 0 only as t_max -> 1.")

    print("\ndiagonal difference means I_{s,s}: the extreme regime takes over")
    print(f"{'s':>4} {'s(t->0)=2s/3':>14} {'s(t->1)=s ln2':>14} {'upper fit':>10}")
    for s in (1.0, 2.0, 3.0, 4.0, 5.0):
        m = families.stolarsky(s, s)
        s_small, s_ext, _ = envelope_predictions(m)
        upper = bisect_envelope(m, Direction.INF_GE, max(s_small, s_ext))
        print(f"{s:4.0f} {s_small:14.5f} {s_ext:14.5f} {fmt(upper):>10}")

    print("\nK family below r = -1 (outside the mean regime)")
    g_dev = max(
        abs(core.phi(families.k_mean(-2), t) / core.phi(core.G, t) - 1.0)
        for t in GRID.t_values
    )
    print(f"  K_-2 collapses to G: max |phi ratio - 1| = {g_dev:.3g} over the grid")
    for rr in (-1.25, -1.5, -3.0):
        m = families.k_mean(rr)
        ts = np.array([0.9, 0.99, 1 - 1e-6])
        vals = [core.phi(m, float(t)) for t in ts]
        inside = all(1 - t <= v <= 1 + t for t, v in zip(ts, vals))
        tag = "still between min and max" if inside else "escapes [min, max]"
        print(f"  K_{rr:g}: phi at t=0.9, 0.99, 1-1e-6 -> "
              + ", ".join(f"{v:.4g}" for v in vals) + f"  ({tag})")


if __name__ == "__main__":
    main()

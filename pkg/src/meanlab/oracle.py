"""Extended-precision reference evaluator.

Every mean the package implements is re-implemented here from the naive
textbook formula, evaluated with mpmath at high working precision.  No
stabilization tricks, no canonical reduction: at 50+ digits the 0/0
cancellations near the diagonal merely eat a predictable number of digits,
which we pad for up front.  The double-precision kernels are tested against
these values, never the other way around.
"""

from __future__ import annotations

import mpmath as mp

from .core import MeanDescriptor

DEFAULT_DPS = 50

#: branch routing must mirror the double-precision constructors
_LIMIT_EPS = 1e-8


def _elem_H(a, b):
    return 2 * a * b / (a + b)


def _elem_G(a, b):
    return mp.sqrt(a * b)


def _elem_A(a, b):
    return (a + b) / 2


def _elem_L(a, b):
    return (b - a) / (mp.log(b) - mp.log(a))


def _elem_I(a, b):
    return mp.exp(-1) * (b**b / a**a) ** (1 / (b - a))


def _elem_S(a, b):
    return a ** (a / (a + b)) * b ** (b / (a + b))


def _elem_P(a, b):
    t = (b - a) / (a + b)
    return (b - a) / (2 * mp.asin(t))


def _elem_T(a, b):
    t = (b - a) / (a + b)
    return (b - a) / (2 * mp.atan(t))


_ELEMENTARY = {
    "H": _elem_H, "G": _elem_G, "A": _elem_A, "L": _elem_L,
    "I": _elem_I, "S": _elem_S, "P": _elem_P, "T": _elem_T,
}


def _holder(s, a, b):
    if abs(s) < _LIMIT_EPS:
        return _elem_G(a, b)
    s = mp.mpf(s)
    return ((a**s + b**s) / 2) ** (1 / s)


def _lehmer(r, a, b):
    r = mp.mpf(r)
    return (a ** (r + 1) + b ** (r + 1)) / (a**r + b**r)


def _gen_log(p, a, b):
    if abs(p) < _LIMIT_EPS:
        return _elem_G(a, b)
    p = mp.mpf(p)
    return ((b**p - a**p) / (p * (mp.log(b) - mp.log(a)))) ** (1 / p)


def _stolarsky_diag(s, a, b):
    s = mp.mpf(s)
    xs, ys = a**s, b**s
    return mp.exp(-1 / s + (xs * mp.log(a) - ys * mp.log(b)) / (xs - ys))


def _stolarsky(r, s, a, b):
    if abs(s - r) <= _LIMIT_EPS:
        sbar = (r + s) / 2.0
        if abs(sbar) < _LIMIT_EPS:
            return _elem_G(a, b)
        return _stolarsky_diag(sbar, a, b)
    if abs(r) < _LIMIT_EPS:
        return _gen_log(s, a, b)
    if abs(s) < _LIMIT_EPS:
        return _gen_log(r, a, b)
    r, s = mp.mpf(r), mp.mpf(s)
    return (r * (b**s - a**s) / (s * (b**r - a**r))) ** (1 / (s - r))


def _lambda(s, a, b):
    am = (a + b) / 2
    la, lb, lam = mp.log(a), mp.log(b), mp.log(am)
    if abs(s - 1.0) < _LIMIT_EPS:
        return (b - a) ** 2 / (4 * (a * la + b * lb - (a + b) * lam))
    if abs(s) < _LIMIT_EPS:
        return (a * la + b * lb - (a + b) * lam) / (2 * lam - la - lb)
    if abs(s + 1.0) < _LIMIT_EPS:
        return 4 * a * b * am * (2 * lam - la - lb) / (b - a) ** 2
    s = mp.mpf(s)
    num = (a ** (s + 1) + b ** (s + 1)) / 2 - am ** (s + 1)
    den = (a**s + b**s) / 2 - am**s
    return (s - 1) / (s + 1) * num / den


def _kfamily(r, a, b):
    if abs(r) < _LIMIT_EPS:
        return _elem_S(a, b)
    if abs(r + 1.0) < _LIMIT_EPS:
        return _elem_A(a, b)
    r = mp.mpf(r)
    return ((a ** (r + 1) + b ** (r + 1)) / (a + b)) ** (1 / r)


def _value(m: MeanDescriptor, a, b):
    fam = m.family_id
    if a == b:
        return mp.mpf(a)
    if fam in _ELEMENTARY:
        return _ELEMENTARY[fam](a, b)
    if fam == "dual":
        return a * b / _value(m.base, a, b)
    if fam == "holder":
        return _holder(m.params[0], a, b)
    if fam == "lehmer":
        return _lehmer(m.params[0], a, b)
    if fam == "genlog":
        return _gen_log(m.params[0], a, b)
    if fam == "stolarsky":
        return _stolarsky(m.params[0], m.params[1], a, b)
    if fam == "lambda":
        return _lambda(m.params[0], a, b)
    if fam == "kfamily":
        return _kfamily(m.params[0], a, b)
    if fam == "power_transform":
        s = mp.mpf(m.params[0])
        return _value(m.base, a**s, b**s) ** (1 / s)
    raise ValueError(f"no oracle formula for family {fam!r}")


def _working_dps(dps: int, a, b) -> int:
    # the naive 0/0 forms lose roughly 2*log10(scale/|b-a|) digits near the
    # diagonal; pad so at least `dps` digits survive
    if a == b:
        return dps
    t = abs(mp.mpf(b) - mp.mpf(a)) / (mp.mpf(a) + mp.mpf(b))
    lost = max(0, int(-2 * mp.log10(t))) if t > 0 else 0
    return dps + lost + 10


def value(m: MeanDescriptor, a, b, dps: int = DEFAULT_DPS) -> mp.mpf:
    """M(a, b) as an mpf, accurate to at least ``dps`` significant digits."""
    with mp.workdps(_working_dps(dps, a, b)):
        res = _value(m, mp.mpf(a), mp.mpf(b))
    return res


def phi(m: MeanDescriptor, t, dps: int = DEFAULT_DPS) -> mp.mpf:
    """phi_M(t) = M(1 - t, 1 + t) as an mpf."""
    with mp.workdps(dps + 15):
        tt = mp.mpf(t)
        if not abs(tt) < 1:
            raise ValueError(f"phi needs |t| < 1, got {t!r}")
        if tt == 0:
            return mp.mpf(1)
        a, b = 1 - tt, 1 + tt
    return value(m, a, b, dps)


def weighted_holder_value(p, r, a, b, dps: int = DEFAULT_DPS) -> mp.mpf:
    """Naive (p a^r + (1-p) b^r)^(1/r), the asymmetric reference."""
    with mp.workdps(dps):
        p, a, b = mp.mpf(p), mp.mpf(a), mp.mpf(b)
        if abs(r) < _LIMIT_EPS:
            return a**p * b ** (1 - p)
        r = mp.mpf(r)
        return (p * a**r + (1 - p) * b**r) ** (1 / r)

#!/usr/bin/env python3
"""Symbolically derive the (a1, a2) series table and check it against the code.

Every mean here admits phi_M(t) = M(1 - t, 1 + t) = 1 + a1 t^2 + a2 t^4 + ...
This script expands the defining formulas with sympy, prints the closed
coefficients, and cross-checks :func:`meanlab.core.series_coefficients` at
sample parameters.  Runs in a few seconds; exits non-zero on any mismatch.
"""

import sys

import sympy as sp

from meanlab import core, families

t = sp.Symbol("t", positive=True)
r, s, p = sp.symbols("r s p", positive=True)
a, b = 1 - t, 1 + t


def coefficients(expr):
    ser = sp.series(expr, t, 0, 6).removeO()
    a1 = sp.simplify(ser.coeff(t, 2))
    a2 = sp.simplify(ser.coeff(t, 4))
    assert sp.simplify(ser.coeff(t, 0) - 1) == 0, "phi(0) must be 1"
    assert sp.simplify(ser.coeff(t, 1)) == 0 and sp.simplify(ser.coeff(t, 3)) == 0
    return a1, a2


ELEMENTARY_PHI = {
    "H": 2 * a * b / (a + b),
    "G": sp.sqrt(a * b),
    "L": (b - a) / (sp.log(b) - sp.log(a)),
    "I": sp.exp(-1) * (b**b / a**a) ** (1 / (b - a)),
    "A": (a + b) / 2,
    "S": a ** (a / (a + b)) * b ** (b / (a + b)),
    "P": (b - a) / (2 * sp.asin(t)),
    "T": (b - a) / (2 * sp.atan(t)),
}

# (family name, symbolic phi, parameter symbols, sample params, constructor)
PARAMETRIC = [
    ("holder", ((a**s + b**s) / 2) ** (1 / s), (s,), (2.0,), families.holder),
    ("lehmer", (a ** (r + 1) + b ** (r + 1)) / (a**r + b**r), (r,), (1.5,), families.lehmer),
    ("genlog", ((b**p - a**p) / (p * (sp.log(b) - sp.log(a)))) ** (1 / p),
     (p,), (3.0,), families.gen_log),
    ("kfamily", ((a ** (r + 1) + b ** (r + 1)) / (a + b)) ** (1 / r),
     (r,), (2.0,), families.k_mean),
    ("lambda", (s - 1) / (s + 1)
     * ((a ** (s + 1) + b ** (s + 1)) / 2 - 1) / ((a**s + b**s) / 2 - 1),
     (s,), (3.0,), families.lambda_mean),
    ("stolarsky", (r * (b**s - a**s) / (s * (b**r - a**r))) ** (1 / (s - r)),
     (r, s), (2.0, 5.0), lambda r_, s_: families.stolarsky(r_, s_)),
]


def check(label, symbolic, coded, failures):
    sym = tuple(float(c) for c in symbolic)
    ok = all(abs(x - y) <= 1e-12 * max(1.0, abs(x)) for x, y in zip(sym, coded))
    print(f"  {label:<28} symbolic {sym}  coded {tuple(coded)}  "
          f"{'ok' if ok else 'MISMATCH'}")
    if not ok:
        failures.append(label)


def main() -> int:
    failures: list[str] = []

    print("elementary means:")
    for name, expr in ELEMENTARY_PHI.items():
        a1, a2 = coefficients(expr)
        print(f"  phi_{name}: a1 = {a1},  a2 = {a2}")
        check(name, (a1, a2), core.series_coefficients(core.ELEMENTARY[name]), failures)

    print("\nparametric families (closed coefficients, then spot check):")
    for name, expr, syms, sample, make in PARAMETRIC:
        a1, a2 = coefficients(expr)
        print(f"  phi_{name}: a1 = {a1}")
        print(f"  {'':12}a2 = {sp.factor(a2)}")
        subs = dict(zip(syms, sample))
        coded = core.series_coefficients(make(*sample))
        check(f"{name}{sample}", (a1.subs(subs), a2.subs(subs)), coded, failures)

    print("\ntransforms:")
    # dual: phi -> (1 - t^2) / phi
    for name in ("H", "L", "S"):
        a1, a2 = coefficients((1 - t**2) / ELEMENTARY_PHI[name])
        check(f"dual({name})", (a1, a2),
              core.series_coefficients(core.dual(core.ELEMENTARY[name])), failures)
    # power transform at a concrete exponent: M_3(I) = I(a^3, b^3)^(1/3)
    x, y = a**3, b**3
    phi_pow = (sp.exp(-1) * (y**y / x**x) ** (1 / (y - x))) ** sp.Rational(1, 3)
    a1, a2 = coefficients(phi_pow)
    check("pow(I, 3)", (a1, a2),
          core.series_coefficients(families.power_transform(core.I, 3.0)), failures)

    if failures:
        print(f"\n{len(failures)} mismatch(es): {failures}")
        return 1
    print("\nall coded series coefficients match the symbolic expansions")
    return 0


if __name__ == "__main__":
    sys.exit(main())

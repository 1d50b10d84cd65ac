"""Symbolic derivatives of W = -((x_n/xi)^(2/a) - r^2)^(1/b) at fixed points.

Run with python3; prints C++ initializer rows frozen into test_barrier.cpp.
"""
import sympy as sp

r, x = sp.symbols("r x", positive=True)

cases = [
    (2, 2, 1, sp.Rational(1, 10), sp.Rational(1, 2)),
    (3, sp.Rational(3, 2), sp.Rational(7, 10), sp.Rational(1, 5), sp.Rational(2, 5)),
    (sp.Rational(3, 2), 2, sp.Rational(1, 2), sp.Rational(1, 20), sp.Rational(3, 10)),
]
for a, b, xi, r0, x0 in cases:
    W = -(((x / xi) ** (sp.Integer(2) / a)) - r**2) ** (1 / sp.sympify(b))
    vals = [W, sp.diff(W, r), sp.diff(W, x), sp.diff(W, r, 2), sp.diff(W, x, 2), sp.diff(W, r, x)]
    nums = [sp.N(v.subs({r: r0, x: x0}), 25) for v in vals]
    print("{%s, %s, %s, %s, %s, {%s}}," % (float(a), float(b), float(xi), float(r0), float(x0),
                                          ", ".join("%.17g" % float(v) for v in nums)))

"""Convex and concave envelopes of phi = -sqrt(y) on the circle |x - (0,1/2)| = 1/2.

The value at a point is the optimum of a linear program over convex
combinations of 4096 boundary samples. Prints the frozen values.
"""
import numpy as np
from scipy.optimize import linprog

N = 4096
th = -np.pi / 2 + 2 * np.pi * np.arange(N) / N
px = 0.5 * np.cos(th)
py = 0.5 + 0.5 * np.sin(th)
phi = -np.sqrt(np.maximum(py, 0.0))

A = np.vstack([px, py, np.ones(N)])
for q in [(0.0, 0.5), (0.1, 0.3), (-0.2, 0.6)]:
    b = np.array([q[0], q[1], 1.0])
    lo = linprog(phi, A_eq=A, b_eq=b, bounds=(0, None), method="highs").fun
    hi = -linprog(-phi, A_eq=A, b_eq=b, bounds=(0, None), method="highs").fun
    print("{%r, %r, %.15g, %.15g}," % (q[0], q[1], lo, hi))

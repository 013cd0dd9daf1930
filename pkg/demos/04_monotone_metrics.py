"""Monotone metrics: profiles g(s), modified traces, and pure-state limits.

Every rotationally invariant quantum metric here is a radial profile g(s),
s = (1-r)/(1+r): Helstrom/Bures is g = 2/(1+s) (minimal), Yuen-Lax is
g = (1+s)/(2s) (maximal), quasi-Bures g = e s^(s/(1-s)) sits between.
Re-reading the even-N optimal-measurement Fisher matrices as N times such a
metric extracts per-copy profiles; whether their reciprocals are operator
monotone is open, but as scalar functions they are monotone and ordered.
"""

import math

import numpy as np

from qig import (
    BlochCartesian,
    diagonal_colatitude,
    g_function,
    gm_trace,
    limit_trace,
    modified_trace_reference,
    monotone_metric,
    pure_helstrom_m2,
    pure_helstrom_m3,
    scaled_curve_intersection,
    to_spherical,
    trace_limit_reference,
)

np.set_printoptions(precision=6, suppress=True)

print("profiles g(s) at a few s values:")
print(f"{'s':>5} {'helstrom':>9} {'yuen_lax':>9} {'quasi_bures':>12} "
      f"{'fit N=4':>9} {'fit N=6':>9}")
for s in (0.1, 0.3, 0.6, 1.0):
    row = [g_function(k, s) for k in
           ("helstrom", "yuen_lax", "quasi_bures", "fitted_n4", "fitted_n6")]
    print(f"{s:>5.2f} " + " ".join(f"{v:>9.5f}" for v in row[:3])
          + f"  {row[3]:>9.5f} {row[4]:>9.5f}")
print("(the fitted profiles are per copy; the matching N=2 value is "
      "g_helstrom/2 = 1/(1+s))")

state = BlochCartesian(0.3, 0.2, 0.1)
sph = to_spherical(state)
print("\nquasi-Bures metric tensor at the state (diagonal, x-polar chart):")
print(monotone_metric("quasi_bures", sph).entries)

print("\nmodified Gill-Massar traces trace(G^-1 F_N) for the three metrics:")
print(f"{'N':>3} {'helstrom':>10} {'yuen-lax':>10} {'quasi-bures':>12}")
for n in (2, 4, 6):
    row = [gm_trace(k, n, state) for k in ("helstrom", "yuen_lax", "quasi_bures")]
    print(f"{n:>3} {row[0]:>10.5f} {row[1]:>10.5f} {row[2]:>12.5f}")

print("\nYuen-Lax closed form for N=5 needs the colatitude from the "
      "diagonal (1,1,1)/sqrt(3) axis:")
theta_diag = diagonal_colatitude(state)
print(f"  computed trace  : {gm_trace('yuen_lax', 5, state):.8f}")
print(f"  closed form     : "
      f"{modified_trace_reference('yuen_lax', 5, state.r, theta=theta_diag):.8f}")

print("\npure-state limits of the traces, (N-1) + 2N/g(0+):")
for kind, g0 in (("helstrom", "2"), ("quasi_bures", "e"), ("yuen_lax", "inf")):
    vals = [limit_trace(kind, n, "pure") for n in (2, 4, 6)]
    refs = [trace_limit_reference(kind, n, "pure") for n in (2, 4, 6)]
    print(f"  {kind:<12} g(0+)={g0:>3}: {np.round(vals, 5)}  (targets {np.round(refs, 5)})")

x = scaled_curve_intersection()
print(f"\nthe pure-scaled quasi-Bures curves for N=2 and N=4 cross at r = {x:.6f}")

print("\npure-state information matrices:")
print("  m=2, theta=pi/3:", np.diag(pure_helstrom_m2(math.pi / 3).entries))
print("  m=3 (spin-1), theta=pi/2, phi=pi/4 -- chi angles never enter:")
print(pure_helstrom_m3(math.pi / 2, math.pi / 4).entries)

"""Fisher information of the optimal joint measurements on N qubit copies.

For two copies the optimal five-outcome measurement attains a Fisher matrix
exactly equal to H_q -- half the additive Cramer-Rao cap of 2*H_q.  For
N = 3..6 the matrices take the form (N-1) H_q plus a negative-semidefinite
residual, so the cap (N-1) H_q is tight near the pure boundary but never
reached: joint measurements buy roughly one copy less than the cap allows.
"""

import numpy as np

from qig import (
    BlochCartesian,
    dominance_boundary_radius,
    fisher_closed_form,
    fisher_information,
    helstrom_cartesian,
    min_dominating_scalar,
    scan_dominance,
    vidal_model,
    vidal_probabilities,
)

np.set_printoptions(precision=6, suppress=True)

state = BlochCartesian(0.3, 0.2, 0.1)

print("five outcome probabilities of the optimal 2-copy measurement:")
print(vidal_probabilities(2, state), "  sum:", vidal_probabilities(2, state).sum())

f2 = fisher_information(vidal_model(2), state)
h = helstrom_cartesian(state)
print("\nFisher matrix of those outcomes minus H_q (zero!):")
print(f2.entries - h.entries)

print("\neight outcome probabilities for three copies:")
print(vidal_probabilities(3, state))
f3 = fisher_information(vidal_model(3), state)
print("engine vs closed form, max |diff|:",
      np.max(np.abs(f3.entries - fisher_closed_form(3, state).entries)))

print("\nresidual spectra F_N - (N-1) H_q (all eigenvalues <= 0):")
for n in (3, 4, 5, 6):
    res = fisher_closed_form(n, state).entries - (n - 1) * h.entries
    print(f"  N={n}: {np.linalg.eigvalsh(res)}")

print("\nhow small can c be with c*H_q still dominating F_N on r <= 0.999?")
for n in (3, 4, 5, 6):
    c = min_dominating_scalar(n, (0.0, 0.999))
    print(f"  N={n}: c = {c:.4f}   (cap would be {n})")

radius = dominance_boundary_radius()
print(f"\nfor N=6, shaving the scalar to 4.99 loses dominance beyond r = {radius:.6f}:")
report = scan_dominance(6, 4.99, (0.0, 0.999))
print(f"  scan found {report.n_violations} violating grid points, "
      f"min scaled eigenvalue {report.min_eigenvalue_found:.2e}; "
      f"first violators at r = "
      f"{[round(p.r, 5) for p in report.violating_points[:3]]}")

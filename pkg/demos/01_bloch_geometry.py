"""Bloch-ball geometry: coordinates, the Helstrom matrix, and the 4x identity.

Walks through the package's conventions: states live in the unit ball, the
spherical chart is x-polar (x = r cos theta), and the quantum information
matrix of a mixed qubit state is diagonal in that chart.  Ends with the
algebraic surprise that powers everything else: the classical Fisher matrix
of the quadrinomial distribution (x^2, y^2, z^2, 1-r^2) is exactly four
times the quantum Helstrom matrix.
"""

import numpy as np

from qig import (
    BlochCartesian,
    classical_info_determinant,
    fisher_information,
    helstrom_cartesian,
    helstrom_inverse,
    helstrom_spherical,
    jacobian,
    quadrinomial_model,
    to_spherical,
)

np.set_printoptions(precision=6, suppress=True)

state = BlochCartesian(0.3, 0.2, 0.1)
print(f"state (x, y, z) = ({state.x}, {state.y}, {state.z}),  r = {state.r:.4f}")

spherical = to_spherical(state)
print(f"x-polar spherical view: r = {spherical.r:.4f}, theta = {spherical.theta:.4f}, "
      f"phi = {spherical.phi:.4f}")

j = jacobian(spherical)
print(f"\nchart Jacobian determinant = {np.linalg.det(j):.6f} "
      f"(= r^2 sin theta = {spherical.r**2 * np.sin(spherical.theta):.6f})")

h = helstrom_cartesian(state)
print("\nHelstrom information matrix H_q (Cartesian):")
print(h.entries)
print("same matrix in the x-polar chart (diagonal):")
print(helstrom_spherical(spherical).entries)

print("\nclosed-form inverse (the Cramer-Rao covariance floor):")
print(helstrom_inverse(state).entries)
print("H_q @ H_q^-1 =")
print(h.entries @ helstrom_inverse(state).entries)

# The quadrinomial bridge between classical and quantum information
quad = quadrinomial_model()
print(f"\nquadrinomial probabilities at the state: {quad.eval(state)}")
fisher = fisher_information(quad, state)
print("classical Fisher matrix of the quadrinomial model:")
print(fisher.entries)
print("ratio to H_q (should be 4 in every entry):")
print(fisher.entries / h.entries)

det = classical_info_determinant(spherical)
det_h = np.linalg.det(helstrom_spherical(spherical).entries)
print(f"\n|I_c| = 64 r^4 sin^2(theta) / (1-r^2) = {det:.6f} "
      f"(= 64 * det H_q = {64 * det_h:.6f})")

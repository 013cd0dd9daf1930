"""Universal coding: volume integrals, priors, and quantum vs classical redundancy.

The Clarke-Barron redundancy of Bayes mixture coding splits into
(3/2)log(N/2 pi e) + (1/2)log(information) - log(prior).  Classically the
Jeffreys prior (normalized volume element of the Fisher metric) is minimax
and makes the redundancy point-independent; the quantum analogue swaps in
the scalar I_q(r) and the quasi-Bures prior, and comes out strictly smaller.
"""

import math

from qig import (
    classical_redundancy,
    endpoint_asymptotics,
    nats_to_bits,
    prior_normalization,
    prior_value,
    quantum_info_scalar,
    quantum_redundancy,
    quasi_bures_constant_quadrature,
    volume_integral,
)
from qig.bloch import BlochSpherical
from qig.coding import JEFFREYS, QUASI_BURES_CONSTANT, QUASI_BURES_PRIOR

print("volume integrals of sqrt(det F_N) over the Bloch ball:")
for n in (2, 3, 4, 5, 6):
    v = volume_integral(n)
    note = "  (= pi^2)" if n == 2 else ""
    print(f"  N={n}: {v:.4f}{note}")
print("  (N=2 is the normalization behind the Jeffreys prior below)")

print("\nboth priors integrate to one over the ball:")
print(f"  Jeffreys   : {prior_normalization(JEFFREYS):.9f}")
print(f"  quasi-Bures: {prior_normalization(QUASI_BURES_PRIOR):.9f} "
      f"(tabulated constant {QUASI_BURES_CONSTANT}, "
      f"requadrature {quasi_bures_constant_quadrature():.9f})")

n_len = 100
s = BlochSpherical(0.5, 1.1, 0.7)
classical = classical_redundancy(n_len, s, JEFFREYS)
quantum = quantum_redundancy(n_len, s.r, QUASI_BURES_PRIOR)
print(f"\nredundancy at N = {n_len}, r = {s.r}:")
print(f"  classical (Jeffreys)   : {classical:.5f} nats = {nats_to_bits(classical):.5f} bits")
print(f"  quantum (quasi-Bures)  : {quantum:.5f} nats = {nats_to_bits(quantum):.5f} bits")

print("\nthe information terms behind the gap, (1/2)log I vs radius:")
print(f"{'r':>5} {'quantum':>9} {'classical':>10}")
for r in (0.1, 0.5, 0.9, 0.99):
    q = 0.5 * math.log(quantum_info_scalar(r))
    c = 0.5 * math.log(64.0 / (1.0 - r * r))
    print(f"{r:>5.2f} {q:>9.4f} {c:>10.4f}")
print("(the quantum term is smaller everywhere: mixture coding is cheaper "
      "in the quantum domain)")

print("\nratio identities tying the scalars to the priors:")
sq = BlochSpherical(0.6, 2.0, 1.0)
wq = prior_value(QUASI_BURES_PRIOR, sq)
lhs = quantum_info_scalar(sq.r) * sq.r ** 4 * math.sin(sq.theta) ** 2
print(f"  I_q r^4 sin^2(theta) / W_q^2 = {lhs / wq**2:.4f}  (1/K^2 = 144.372)")
wc = prior_value(JEFFREYS, sq)
from qig import classical_info_determinant
print(f"  |I_c| / W_c^2               = {classical_info_determinant(sq) / wc**2:.4f}"
      f"  (64 pi^4 = {64 * math.pi**4:.4f})")

print("\nendpoint asymptotics (nats):")
print(f"  fully mixed, w(0)=1        : {endpoint_asymptotics('mixed', 100, 1.0):.5f}")
print(f"  pure, continuous w(1)=1    : {endpoint_asymptotics('pure_continuous', 100, 1.0):.5f}")
print(f"  pure, Jeffreys (singular)  : {endpoint_asymptotics('pure_jeffreys', 100):.5f}")

"""Monte Carlo check that the optimal 2-copy measurement hits its Cramer-Rao bound.

Simulates repeated experiments: draw M outcomes from the five-outcome
two-copy measurement at a known state, fit the maximum-likelihood state,
and compare the scatter of the estimates with the inverse Fisher matrix
H_q^{-1}/M.  Philox counter streams make every number here reproducible.
"""

import numpy as np

from qig import BlochCartesian, EstimationRun, efficiency_report, mle_fit, sample_counts
from qig.povm import vidal_model

np.set_printoptions(precision=6, suppress=True)

model = vidal_model(2)
truth = BlochCartesian(0.3, 0.2, 0.1)
run = EstimationRun(model, truth, trials=10 ** 5, repetitions=100, seed=25)

counts = sample_counts(run, repetition=0)
print(f"one repetition: {run.trials} outcomes -> counts {counts}")
print(f"relative frequencies {counts / run.trials}")
print(f"true probabilities   {model.eval(truth)}")

fit = mle_fit(model, counts, truth)
print(f"\nMLE for that repetition: ({fit.point.x:.5f}, {fit.point.y:.5f}, "
      f"{fit.point.z:.5f})  converged={fit.converged} in {fit.iterations} iterations")

report = efficiency_report(run)
print(f"\nacross {run.repetitions} repetitions (seed {run.seed}):")
print("empirical covariance of the estimates:")
print(report.empirical_cov)
print("Cramer-Rao bound H_q^{-1}/M:")
print(report.crb)
print(f"diagonal variance ratios (→ 1 for an efficient estimator): "
      f"{np.round(report.ratio_diag, 4)}")
print(f"empirical Gill-Massar trace (→ 3 for this measurement): "
      f"{report.gm_trace:.5f}")
print(f"fit failures: {report.failures}")

# the bound really is matched per copy PAIR: one pair carries H_q, so M
# pairs carry M*H_q -- half of what 2M separate copies could in principle
# promise (2M * H_q), yet unreachable separably.
print("\nsame seed, twice the data: variances halve")
report2 = efficiency_report(EstimationRun(model, truth, 2 * 10 ** 5, 100, seed=25))
print(f"variance ratio 2M vs M: "
      f"{np.round(np.diag(report2.empirical_cov) / np.diag(report.empirical_cov), 4)}")

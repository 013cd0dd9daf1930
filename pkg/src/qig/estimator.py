"""Monte Carlo validation of the Cramer-Rao machinery.

Samples joint-measurement outcomes from a :class:`~qig.infogeo.ProbModel`,
fits maximum-likelihood states, and compares the empirical covariance of the
estimates against the inverse Fisher information F^{-1}/M.  For the optimal
two-copy measurement F = H_q, so the run doubles as a direct check that the
quantum Cramer-Rao bound is met with equality per copy pair.

Reproducibility: the bit generator is Philox, a counter-based 64-bit
generator; repetition k draws from ``Philox(key=seed).jumped(k)``, i.e.
streams are split by jumping rather than by reseeding, so the same
(seed, M, R) reproduces every count vector bit-for-bit and repetitions
stay independent no matter how they are scheduled.  Aggregation happens
in repetition order, so reports are identical for any worker count; the
QIG_THREADS environment variable caps the thread pool (default serial).

The likelihood is maximized over the Cartesian ball (radius capped at
1 - 1e-9) by projected gradient ascent with exact dual-number gradients,
Barzilai-Borwein steps, and an Armijo backtracking safeguard, multi-started
from the caller's initial point plus eight fixed perturbations.  Models
whose probabilities depend only on (x^2, y^2, z^2) -- the quadrinomial
being the canonical case -- have sign-symmetric likelihoods; the returned
branch is the one reachable from the initial point, which is a property of
the model, not a defect of the optimizer.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import infogeo
from ._dual import Dual, seed_xyz
from .bloch import BlochCartesian
from .infogeo import ProbModel, ZeroProbabilityError

__all__ = [
    "EstimationRun",
    "MleResult",
    "EfficiencyReport",
    "sample_counts",
    "mle_fit",
    "efficiency_report",
    "worker_count",
]

#: radial cap keeping iterates strictly inside the ball
BALL_MARGIN = 1e-9
#: fixed multi-start perturbations: the eight cube-corner directions, scaled
START_OFFSETS = 0.05 / math.sqrt(3.0) * np.array(
    [(sx, sy, sz) for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)], dtype=float)


def worker_count() -> int:
    """Thread cap for repetition scheduling, from QIG_THREADS (default 1)."""
    raw = os.environ.get("QIG_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"QIG_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


@dataclass(frozen=True)
class EstimationRun:
    """Configuration of a reproducible estimation experiment."""

    model: ProbModel
    truth: BlochCartesian
    trials: int        # outcomes drawn per repetition (M)
    repetitions: int   # independent repetitions (R)
    seed: int

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.repetitions < 1:
            raise ValueError("repetitions must be positive")


def _stream(seed: int, repetition: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed).jumped(repetition))


def sample_counts(run: EstimationRun, repetition: int = 0) -> np.ndarray:
    """Multinomial(M, p(truth)) outcome counts for one repetition.

    Deterministic per (seed, repetition).  Raises ZeroProbabilityError if
    any outcome probability vanishes at the truth.
    """
    p = run.model.eval(run.truth)
    bad = np.flatnonzero(p <= infogeo.MIN_PROBABILITY)
    if bad.size:
        raise ZeroProbabilityError(bad, p)
    return _stream(run.seed, repetition).multinomial(run.trials, p / p.sum())


@dataclass(frozen=True)
class MleResult:
    """Outcome of one likelihood maximization."""

    point: BlochCartesian
    converged: bool
    iterations: int
    log_likelihood: float


def _project(v: np.ndarray) -> np.ndarray:
    nrm = math.sqrt(float(v @ v))
    cap = 1.0 - BALL_MARGIN
    return v * (cap / nrm) if nrm > cap else v


def _loglik_grad(model: ProbModel, counts: np.ndarray, v: np.ndarray):
    """Multinomial log-likelihood and its exact gradient at v (in the ball)."""
    x, y, z = seed_xyz(float(v[0]), float(v[1]), float(v[2]))
    loglik = 0.0
    grad = np.zeros(3)
    for n_i, term in zip(counts, model.formula(x, y, z)):
        if n_i == 0:
            continue
        if not isinstance(term, Dual):  # state-independent outcome
            loglik += n_i * math.log(float(term))
            continue
        p = term.val
        if p <= 0.0:
            return -math.inf, grad
        loglik += n_i * math.log(p)
        w = n_i / p
        grad[0] += w * term.dx
        grad[1] += w * term.dy
        grad[2] += w * term.dz
    return loglik, grad


def _ascend(model, counts, start, max_iter, step_tol, grad_tol):
    """Projected gradient ascent with BB steps and Armijo backtracking."""
    v = _project(np.asarray(start, dtype=float))
    loglik, grad = _loglik_grad(model, counts, v)
    step = 1.0 / (1.0 + float(np.linalg.norm(grad)))
    prev_v = prev_grad = None
    for it in range(1, max_iter + 1):
        gnorm = float(np.linalg.norm(grad))
        at_boundary = float(v @ v) >= (1.0 - BALL_MARGIN) ** 2 * (1.0 - 1e-12)
        if gnorm <= grad_tol and not at_boundary:
            return v, True, it, loglik
        if prev_v is not None:
            s = v - prev_v
            y = prev_grad - grad
            sy = float(s @ y)
            if sy > 0.0:
                step = float(s @ s) / sy
        step = min(max(step, 1e-14), 1e6)
        # Armijo backtracking on the projected step
        accepted = False
        t = step
        for _ in range(80):
            w = _project(v + t * grad)
            new_loglik, new_grad = _loglik_grad(model, counts, w)
            if new_loglik >= loglik + 1e-4 * float(grad @ (w - v)):
                accepted = True
                break
            t *= 0.5
        if not accepted:
            return v, gnorm <= grad_tol and not at_boundary, it, loglik
        moved = float(np.linalg.norm(w - v))
        prev_v, prev_grad = v, grad
        v, loglik, grad = w, new_loglik, new_grad
        if moved <= step_tol:
            # stationary; interior points are genuine optima, boundary-pinned
            # ones are flagged (the unconstrained maximizer lies outside)
            interior_ok = float(v @ v) < (1.0 - BALL_MARGIN) ** 2 * (1.0 - 1e-12)
            return v, bool(interior_ok or float(np.linalg.norm(grad)) <= grad_tol), it, loglik
    return v, False, max_iter, loglik


def mle_fit(model: ProbModel, counts, init: BlochCartesian,
            max_iter: int = 500, step_tol: float = 1e-12,
            grad_tol: float = 1e-7) -> MleResult:
    """Maximum-likelihood state for observed outcome counts.

    Maximizes sum_i n_i log p_i(x, y, z) over the ball of radius 1 - 1e-9 by
    multi-start projected gradient ascent (the initial point plus eight fixed
    perturbations); the best final likelihood wins.  ``converged`` is False
    when the winning start exhausted its iterations or stalled against the
    boundary with an outward gradient (degenerate data such as single-outcome
    counts); the best iterate is still returned.
    """
    counts = np.asarray(counts)
    if counts.shape != (model.n_outcomes,):
        raise ValueError(f"counts must have shape ({model.n_outcomes},), got {counts.shape}")
    if counts.sum() <= 0:
        raise ValueError("counts must total at least one observation")
    starts = [init.as_array()] + [init.as_array() + d for d in START_OFFSETS]
    best = None
    for start in starts:
        v, ok, iters, loglik = _ascend(model, counts, start, max_iter, step_tol, grad_tol)
        if best is None or loglik > best[3]:
            best = (v, ok, iters, loglik)
    v, ok, iters, loglik = best
    return MleResult(BlochCartesian(*v), bool(ok), iters, float(loglik))


@dataclass(frozen=True)
class EfficiencyReport:
    """Empirical covariance of MLEs against the Cramer-Rao bound F^{-1}/M."""

    model: str
    truth: BlochCartesian
    trials: int
    repetitions: int
    seed: int
    empirical_cov: np.ndarray
    crb: np.ndarray
    ratio_diag: np.ndarray
    failures: int
    empirical_fisher: np.ndarray
    gm_trace: float

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "truth": [self.truth.x, self.truth.y, self.truth.z],
            "M": self.trials,
            "R": self.repetitions,
            "seed": self.seed,
            "empirical_cov": self.empirical_cov.tolist(),
            "crb": self.crb.tolist(),
            "ratio_diag": self.ratio_diag.tolist(),
            "failures": self.failures,
            "empirical_fisher": self.empirical_fisher.tolist(),
            "gm_trace": self.gm_trace,
        }


def _empirical_info(model: ProbModel, counts: np.ndarray, at: BlochCartesian) -> np.ndarray:
    """Per-observation outer-product information sum_i (n_i/M) grad(p_i) grad(p_i)^T / p_i^2."""
    p = np.maximum(model.eval(at), 1e-300)
    g = model.grad(at)
    w = counts / counts.sum() / p ** 2
    return (g * w[:, None]).T @ g


def efficiency_report(run: EstimationRun) -> EfficiencyReport:
    """Run R independent repetitions of (sample, fit) and compare with the CRB.

    Each repetition draws M outcomes on its own pre-split stream and fits the
    MLE initialized at the truth.  The empirical covariance of the R
    estimates is compared entrywise with F(truth)^{-1}/M; ratio_diag holds
    the three variance ratios (asymptotically 1 for an efficient estimator).
    gm_trace is trace(H_q^{-1} F_hat) with F_hat the repetition-averaged
    per-observation empirical information at the fitted states.
    """
    fisher = infogeo.fisher_information(run.model, run.truth).entries
    expected = run.trials * run.model.eval(run.truth)
    if expected.min() < 10.0:
        raise ValueError(
            f"smallest expected count {expected.min():.2f} < 10; "
            "increase trials for a meaningful covariance comparison")

    def one_rep(k: int):
        counts = sample_counts(run, k)
        fit = mle_fit(run.model, counts, run.truth)
        info = _empirical_info(run.model, counts, fit.point)
        return fit, info

    workers = worker_count()
    reps = range(run.repetitions)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_rep, reps))
    else:
        results = [one_rep(k) for k in reps]

    points = np.array([[f.point.x, f.point.y, f.point.z] for f, _ in results])
    failures = sum(1 for f, _ in results if not f.converged)
    cov = np.cov(points, rowvar=False, ddof=1)
    crb = np.linalg.inv(fisher) / run.trials
    f_hat = np.mean([info for _, info in results], axis=0)
    h_inv = infogeo.helstrom_inverse(run.truth).entries
    return EfficiencyReport(
        model=run.model.name,
        truth=run.truth,
        trials=run.trials,
        repetitions=run.repetitions,
        seed=run.seed,
        empirical_cov=cov,
        crb=crb,
        ratio_diag=np.diag(cov) / np.diag(crb),
        failures=failures,
        empirical_fisher=f_hat,
        gm_trace=float(np.trace(h_inv @ f_hat)),
    )

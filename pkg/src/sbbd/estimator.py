"""Monte Carlo validation of the variance-balance property.

Data follow y = X tau + eps with i.i.d. Gaussian noise, where the effect
vector tau obeys the double zero-sum constraints (every row group and every
column group of the v1 x v2 effect table sums to zero).  Effects are
estimated by least squares through the exact generalized inverse,
tau_hat = G X^T y, and compared contrast-by-contrast against the prediction
Var((p_i (x) q_j)^T tau_hat) = sigma^2 / alpha.

Noise is drawn from per-run child streams of a single seed
(numpy SeedSequence(seed).spawn), so results are reproducible and
independent of run ordering or batching.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analyzer import (
    ContrastsNotEstimable,
    generalized_inverse,
    information_matrix,
    spectrum,
)
from .design_core import DesignMatrix, DimensionError


@dataclass(frozen=True)
class EffectVector:
    """Effect values in lexicographic edge order, with double zero sums."""

    v1: int
    v2: int
    tau: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.ascontiguousarray(self.tau, dtype=float)
        if t.shape != (self.v1 * self.v2,):
            raise DimensionError(
                f"tau length {t.shape} != v1*v2 = {self.v1 * self.v2}"
            )
        table = t.reshape(self.v1, self.v2)
        if (np.abs(table.sum(axis=1)) > 1e-12).any() or (
            np.abs(table.sum(axis=0)) > 1e-12
        ).any():
            raise DimensionError("tau violates the double zero-sum constraints")
        t.flags.writeable = False
        object.__setattr__(self, "tau", t)


@dataclass(frozen=True)
class SimulationReport:
    runs: int
    sigma: float
    contrast_index: list  # [(i, j)] for 1 <= i <= v1-1, 1 <= j <= v2-1
    true_contrasts: np.ndarray
    empirical_mean: np.ndarray
    empirical_variance: np.ndarray
    predicted_variance: float  # sigma^2 / alpha
    max_relative_deviation: float
    alpha: int


def _helmert(n: int) -> np.ndarray:
    """(n-1) x n orthonormal rows, each orthogonal to the all-ones vector."""
    rows = np.zeros((n - 1, n))
    for m in range(1, n):
        rows[m - 1, :m] = 1.0
        rows[m - 1, m] = -m
        rows[m - 1] /= np.sqrt(m * (m + 1))
    return rows


def contrast_basis(v1: int, v2: int) -> np.ndarray:
    """Orthonormal basic-contrast vectors p_i (x) q_j, one per row.

    Rows are ordered (i, j) with i major, matching SimulationReport's
    contrast_index.  Every row is orthogonal to the all-ones vector and the
    Gram matrix is the identity to 1e-12.
    """
    if v1 < 2 or v2 < 2:
        raise DimensionError("contrasts need v1 >= 2 and v2 >= 2")
    p = _helmert(v1)
    q = _helmert(v2)
    rows = [np.kron(p[i], q[j]) for i in range(v1 - 1) for j in range(v2 - 1)]
    return np.vstack(rows)


def random_effects(v1: int, v2: int, scale: float = 1.0, seed: int = 0) -> EffectVector:
    """Random effects satisfying the double zero sums exactly (to 1e-12).

    Draws z uniform in [-scale, scale] and projects through the centering
    operators on both axes; a fixed seed reproduces tau bit for bit.
    """
    rng = np.random.default_rng(seed)
    z = rng.uniform(-scale, scale, size=v1 * v2).reshape(v1, v2)
    centered = z - z.mean(axis=1, keepdims=True) - z.mean(axis=0, keepdims=True) + z.mean()
    return EffectVector(v1, v2, centered.reshape(-1))


def _run_noise(seed: int, run_index: int, n: int) -> np.ndarray:
    """Standard normal draw for one run from its dedicated child stream."""
    child = np.random.SeedSequence(entropy=seed, spawn_key=(run_index,))
    return np.random.default_rng(child).standard_normal(n)


def estimate_effects(x: DesignMatrix, y: np.ndarray) -> np.ndarray:
    """One-shot least squares tau_hat = G X^T y.

    Only contrasts of tau_hat carry an accuracy contract; components along
    the non-estimable directions are whatever the generalized inverse
    assigns them.
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (x.n_rows,):
        raise DimensionError(f"y length {y.shape} != N = {x.n_rows}")
    g = generalized_inverse(information_matrix(x)).astype(float)
    return g @ (x.matrix.T.astype(float) @ y)


def simulate(
    x: DesignMatrix,
    tau: EffectVector,
    sigma: float,
    runs: int,
    seed: int = 0,
) -> SimulationReport:
    """Estimate every basic contrast across `runs` noisy replications.

    Per run: y = X tau + sigma * eps, tau_hat = G X^T y, then the contrast
    estimates C tau_hat.  Reports per-contrast empirical mean and variance
    against the predicted sigma^2 / alpha.
    """
    if (tau.v1, tau.v2) != (x.v1, x.v2):
        raise DimensionError("effect vector does not match the design dimensions")
    if runs < 2:
        raise DimensionError("need at least 2 runs for a variance estimate")
    info = information_matrix(x)
    spec = spectrum(info)
    if spec.alpha <= 0:
        raise ContrastsNotEstimable(
            f"alpha = {spec.alpha} <= 0; basic contrasts are not estimable"
        )
    g = generalized_inverse(info).astype(float)
    c = contrast_basis(x.v1, x.v2)
    w = c @ g @ x.matrix.T.astype(float)  # contrast estimates are W y
    signal = x.matrix.astype(float) @ tau.tau

    true = c @ tau.tau
    n_contrasts = c.shape[0]
    # accumulate deviations from the true contrasts to keep the variance
    # update numerically clean
    dev_sum = np.zeros(n_contrasts)
    dev_sq = np.zeros(n_contrasts)
    for start in range(0, runs, 4096):
        stop = min(start + 4096, runs)
        noise = np.stack(
            [_run_noise(seed, i, x.n_rows) for i in range(start, stop)]
        )
        deviations = (signal[None, :] + sigma * noise) @ w.T - true[None, :]
        dev_sum += deviations.sum(axis=0)
        dev_sq += (deviations * deviations).sum(axis=0)

    mean = true + dev_sum / runs
    variance = (dev_sq - dev_sum * dev_sum / runs) / (runs - 1)
    predicted = sigma * sigma / spec.alpha
    if predicted > 0:
        max_rel = float(np.max(np.abs(variance - predicted)) / predicted)
    else:
        max_rel = float(np.max(np.abs(variance)))
    return SimulationReport(
        runs=runs,
        sigma=sigma,
        contrast_index=[
            (i, j) for i in range(1, x.v1) for j in range(1, x.v2)
        ],
        true_contrasts=true,
        empirical_mean=mean,
        empirical_variance=variance,
        predicted_variance=predicted,
        max_relative_deviation=max_rel,
        alpha=spec.alpha,
    )

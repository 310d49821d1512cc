"""Randomized accuracy study for ``exp(A)`` with clustered spectra.

Each trial draws cluster sizes, well separated cluster centers in the box
[-2, 0] x [-i pi, i pi], eigenvalues within a small box around each center,
and a random similarity ``T``.  With ``A = T^-1 diag(mu) T`` the exact
exponential is ``T^-1 diag(exp(mu)) T``, which is compared to the Newton
approximation.
"""
import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .clustering import ClusterPartition, partition_from_sizes
from .errors import GenerationExhausted, SingularMatrix
from .linalg import condition_number, mat_inverse, operator_norm
from .newton import FunmParams, funm
from .taylor_dd import Exp

FAILURE_THRESHOLD = 1e-3
REPORT_FLOOR = 1e-10
MAX_REJECTIONS = 10**6
CSV_HEADER = ["n", "K", "gamma", "max_kappa", "mean_kappa", "max_relerr", "mean_relerr", "M"]


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    K: int
    gamma: int = 5
    delta: float = 0.01
    eta: float = 0.001
    trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 1 <= self.K <= self.n:
            raise ValueError("K must satisfy 1 <= K <= n")
        if self.gamma < -1:
            raise ValueError("gamma must be >= -1")
        if not (self.delta > 0 and self.eta > 0):
            raise ValueError("delta and eta must be positive")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class ExperimentInstance:
    eigenvalues: np.ndarray
    T: np.ndarray
    T_inv: np.ndarray
    A: np.ndarray
    centers: np.ndarray
    true_clusters: ClusterPartition

    @property
    def Lambda(self):
        return np.diag(self.eigenvalues)


@dataclass(frozen=True)
class TrialResult:
    kappa: float
    rel_error: float

    @property
    def exceeded(self):
        return not self.rel_error <= FAILURE_THRESHOLD


@dataclass(frozen=True)
class StatsRow:
    """One line of the results table.

    ``max_``/``mean_`` statistics are floored to 0 below 1e-10, as reported.
    The medians are an addition and are not floored.
    """

    n: int
    K: int
    gamma: int
    max_kappa: float
    mean_kappa: float
    max_rel_error: float
    mean_rel_error: float
    M: int
    median_kappa: float = field(default=math.nan, compare=False)
    median_rel_error: float = field(default=math.nan, compare=False)

    def csv_row(self):
        return [self.n, self.K, self.gamma, repr(self.max_kappa), repr(self.mean_kappa),
                repr(self.max_rel_error), repr(self.mean_rel_error), self.M]


def _uniform_box(rng, half_re, half_im, size, center=0j):
    re = rng.uniform(-half_re, half_re, size)
    im = rng.uniform(-half_im, half_im, size)
    return center + re + 1j * im


def cluster_sizes(rng, n, K):
    sizes, total = [], 0
    while total < n:
        k = int(rng.integers(1, K + 1))
        if total + k >= n:
            k = n - total
        sizes.append(k)
        total += k
    return sizes


def _centers(rng, count, delta):
    for _ in range(MAX_REJECTIONS):
        c = rng.uniform(-2.0, 0.0, count) + 1j * rng.uniform(-math.pi, math.pi, count)
        if count < 2:
            return c
        d = np.abs(c[:, None] - c[None, :])
        d[np.diag_indices(count)] = np.inf
        if d.min() >= delta:
            return c
    raise GenerationExhausted(
        f"no admissible set of {count} centers after {MAX_REJECTIONS} draws")


def generate_instance(config: ExperimentConfig, rng) -> ExperimentInstance:
    sizes = cluster_sizes(rng, config.n, config.K)
    centers = _centers(rng, len(sizes), config.delta)
    mu = np.concatenate([
        _uniform_box(rng, config.eta, config.eta, k, center=c) for c, k in zip(centers, sizes)
    ])
    t = _uniform_box(rng, 1.0, 1.0, (config.n, config.n))
    t_inv = mat_inverse(t)
    a = t_inv @ (mu[:, None] * t)
    parts = partition_from_sizes(mu, sizes, config.delta, config.gamma)
    return ExperimentInstance(eigenvalues=mu, T=t, T_inv=t_inv, A=a, centers=centers,
                              true_clusters=parts)


def exact_exponential(instance: ExperimentInstance):
    """``T^-1 diag(exp(mu)) T``."""
    return instance.T_inv @ (np.exp(instance.eigenvalues)[:, None] * instance.T)


def relative_error(approx, exact):
    denom = operator_norm(exact)
    if denom == 0:
        raise ZeroDivisionError("exact matrix has zero norm")
    return operator_norm(np.asarray(approx) - np.asarray(exact)) / denom


def trial_rngs(seed, trials):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def run_trial(config: ExperimentConfig, rng) -> TrialResult:
    inst = generate_instance(config, rng)
    params = FunmParams(delta=config.delta, gamma=config.gamma)
    approx = funm(inst.A, list(inst.eigenvalues), Exp(), params)
    return TrialResult(kappa=condition_number(inst.T),
                       rel_error=relative_error(approx, exact_exponential(inst)))


def _run_indexed(args):
    config, index, rng = args
    try:
        return run_trial(config, rng)
    except (GenerationExhausted, SingularMatrix) as exc:
        raise GenerationExhausted(f"trial {index}: {exc}", trial=index) from exc


def run_trial_results(config: ExperimentConfig, workers=1):
    """Per-trial results; trial ``i`` always uses the i-th spawned stream."""
    jobs = [(config, i, rng) for i, rng in enumerate(trial_rngs(config.seed, config.trials))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_indexed, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_run_indexed(j) for j in jobs]


def _floor(x):
    return 0.0 if x < REPORT_FLOOR else float(x)


def summarize(config: ExperimentConfig, results) -> StatsRow:
    kappa = np.array([r.kappa for r in results])
    err = np.array([r.rel_error for r in results])
    return StatsRow(
        n=config.n, K=config.K, gamma=config.gamma,
        max_kappa=float(kappa.max()), mean_kappa=float(kappa.mean()),
        max_rel_error=_floor(err.max()), mean_rel_error=_floor(err.mean()),
        M=int(sum(r.exceeded for r in results)),
        median_kappa=float(np.median(kappa)), median_rel_error=float(np.median(err)),
    )


def run_trials(config: ExperimentConfig, workers=1) -> StatsRow:
    return summarize(config, run_trial_results(config, workers))


def write_stats_csv(row: StatsRow, path):
    """Append ``row`` to ``path``, writing the header if the file is new."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        w = csv.writer(fh)
        if fresh:
            w.writerow(CSV_HEADER)
        w.writerow(row.csv_row())


def read_stats_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [
            StatsRow(n=int(r["n"]), K=int(r["K"]), gamma=int(r["gamma"]),
                     max_kappa=float(r["max_kappa"]), mean_kappa=float(r["mean_kappa"]),
                     max_rel_error=float(r["max_relerr"]),
                     mean_rel_error=float(r["mean_relerr"]), M=int(r["M"]))
            for r in reader
        ]

"""p-biased subset sampling, Monte Carlo estimation with Wilson intervals,
exact probabilities by subset enumeration, and the closed-form bounds.

Reproducibility contract: trial i of an estimate draws its inclusion
vector from a Philox stream keyed by (master_seed, i // BLOCK_TRIALS) at
row i % BLOCK_TRIALS. Blocks have a fixed size, are independent streams,
and are reduced by an integer sum, so the report is bit-identical for any
thread count and any scheduling order.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .core import Tournament, VertexSubset
from .errors import BadParams, TooLarge
from .hamilton import hamiltonian_batch, strong_on_mask

EXACT_MAX_N = 20
BLOCK_TRIALS = 2048

# Two-sided normal quantiles: 95% for reported intervals, 99.7% for the
# oracle-agreement envelope used in the acceptance suite.
Z95 = 1.959963984540054
Z997 = 2.9677379253417944


@dataclass(frozen=True)
class SamplePlan:
    """Inclusion probability, trial count, and the 64-bit master seed."""

    p: float
    trials: int
    master_seed: int

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise BadParams(f"inclusion probability must be in (0,1), got {self.p}")
        if self.trials < 1:
            raise BadParams(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 1 << 64:
            raise BadParams("master_seed must fit in 64 bits")


@dataclass(frozen=True)
class EstimateReport:
    """Monte Carlo outcome; wall_time is informational and never serialized."""

    successes: int
    trials: int
    point_estimate: float
    ci_low: float
    ci_high: float
    p: float
    master_seed: int
    wall_time: float

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "trials": self.trials,
            "seed": self.master_seed,
            "successes": self.successes,
            "estimate": self.point_estimate,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
        }


@dataclass(frozen=True)
class BoundSpec:
    """Theoretical lower bound 1-(1-p)^t, sharpened to t+1 when n-t = 1 mod 4."""

    n: int
    t: int
    p: float
    bound_value: float
    improved: bool


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Score interval for a binomial proportion; well-behaved near 0 and 1."""
    if trials < 1:
        raise BadParams("trials must be >= 1")
    ph = successes / trials
    denom = 1.0 + z * z / trials
    center = (ph + z * z / (2 * trials)) / denom
    half = (z / denom) * ((ph * (1 - ph) / trials + z * z / (4 * trials * trials)) ** 0.5)
    # the score interval always contains ph; keep that true under rounding
    lo = min(max(0.0, center - half), ph)
    hi = max(min(1.0, center + half), ph)
    return lo, hi


def sample_subset(n: int, p: float, rng: Generator) -> VertexSubset:
    """One p-biased subset of 0..n-1 drawn from the given generator."""
    if not 0.0 < p < 1.0:
        raise BadParams(f"inclusion probability must be in (0,1), got {p}")
    keep = rng.random(n) < p
    return VertexSubset(n, np.flatnonzero(keep))


def _block_uniforms(master_seed: int, block: int, rows: int, n: int) -> np.ndarray:
    """Uniforms for one trial block: Philox keyed by (master_seed, block)."""
    key = np.array([master_seed, block], dtype=np.uint64)
    return Generator(Philox(key=key)).random((rows, n))


def trial_subset(n: int, p: float, master_seed: int, trial_index: int) -> VertexSubset:
    """The exact subset estimate_hamiltonian_probability uses for one trial."""
    block, row = divmod(trial_index, BLOCK_TRIALS)
    u = _block_uniforms(master_seed, block, row + 1, n)
    return VertexSubset(n, np.flatnonzero(u[row] < p))


def thread_cap() -> int:
    """Worker cap from TOURNEYLAB_THREADS (default: CPU count)."""
    raw = os.environ.get("TOURNEYLAB_THREADS", "").strip()
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise BadParams(f"TOURNEYLAB_THREADS must be an integer, got {raw!r}") from None
        if cap < 1:
            raise BadParams(f"TOURNEYLAB_THREADS must be >= 1, got {cap}")
        return cap
    return os.cpu_count() or 1


def estimate_hamiltonian_probability(
    T: Tournament, plan: SamplePlan, threads: int | None = None
) -> EstimateReport:
    """Monte Carlo estimate of P[T[S] Hamiltonian] under p-biased sampling.

    Each trial samples S by independent Bernoulli(p) draws and counts a
    success iff T[S] is Hamiltonian (|S| <= 2 never succeeds). Trials are
    processed in fixed blocks through the vectorized score-sequence
    kernel; the success count is invariant to the worker count.
    """
    workers = thread_cap() if threads is None else max(1, threads)
    n = T.n
    n_blocks = (plan.trials + BLOCK_TRIALS - 1) // BLOCK_TRIALS
    start = time.perf_counter()

    def run_block(b: int) -> int:
        rows = min(BLOCK_TRIALS, plan.trials - b * BLOCK_TRIALS)
        u = _block_uniforms(plan.master_seed, b, rows, n)
        return int(hamiltonian_batch(T, u < plan.p).sum())

    if workers == 1 or n_blocks == 1:
        successes = sum(run_block(b) for b in range(n_blocks))
    else:
        with ThreadPoolExecutor(max_workers=min(workers, n_blocks)) as pool:
            successes = sum(pool.map(run_block, range(n_blocks)))

    lo, hi = wilson_interval(successes, plan.trials)
    return EstimateReport(
        successes=successes,
        trials=plan.trials,
        point_estimate=successes / plan.trials,
        ci_low=lo,
        ci_high=hi,
        p=plan.p,
        master_seed=plan.master_seed,
        wall_time=time.perf_counter() - start,
    )


def hamiltonian_subset_size_counts(T: Tournament) -> np.ndarray:
    """counts[s] = number of s-element subsets S with T[S] Hamiltonian.

    Enumerates all 2^n subsets with the bitset reachability check (a code
    path disjoint from the estimator's score kernel), so this doubles as
    the independent oracle for the Monte Carlo route. Requires n <= 20.
    """
    n = T.n
    if n > EXACT_MAX_N:
        raise TooLarge(n, EXACT_MAX_N)
    out_rows = T.out_masks
    in_rows = T.in_masks
    counts = np.zeros(n + 1, dtype=np.int64)
    for mask in range(1 << n):
        s = mask.bit_count()
        if s >= 3 and strong_on_mask(out_rows, in_rows, mask):
            counts[s] += 1
    return counts


def exact_hamiltonian_probability(T: Tournament, p: float) -> float:
    """Sum of p^|S| (1-p)^(n-|S|) over all Hamiltonian-inducing subsets (n <= 20)."""
    if not 0.0 < p < 1.0:
        raise BadParams(f"inclusion probability must be in (0,1), got {p}")
    counts = hamiltonian_subset_size_counts(T)
    n = T.n
    return float(sum(counts[s] * p**s * (1 - p) ** (n - s) for s in range(n + 1)))


def uniform_subset_probability(T: Tournament) -> float:
    """P[T[S] Hamiltonian] for a uniformly random subset S (p = 1/2)."""
    return exact_hamiltonian_probability(T, 0.5)


def theoretical_bound(n: int, t: int, p: float) -> BoundSpec:
    """The closed-form probability target for tournaments with the requisite
    minimum semidegree; exponent improves to t+1 when n - t = 1 mod 4."""
    if t < 1:
        raise BadParams(f"t must be >= 1, got {t}")
    if not 0.0 < p < 1.0:
        raise BadParams(f"inclusion probability must be in (0,1), got {p}")
    improved = (n - t) % 4 == 1
    expo = t + 1 if improved else t
    return BoundSpec(n=n, t=t, p=p, bound_value=1.0 - (1.0 - p) ** expo, improved=improved)

"""Learners and extraction steps for the parity-distribution experiments.

The suite deliberately spans both sides of the sample/statistical-query
contrast: Gaussian elimination cracks noiseless parity samples with ~n
samples, the exhaustive maximum-agreement learner handles noisy samples at
2**n cost, and the statistical-query learner sweeps parity correlators one
candidate at a time, which is exactly the exponential-query behaviour the
oracle model forces.
"""

import time
from dataclasses import dataclass

import numpy as np

from .bits import bit_matrix, check_bits, index_to_bits, parity_vector
from .errors import (
    DimensionMismatchError,
    InconsistentSamplesError,
    PromiseViolatedError,
    SecretNotFoundError,
    TooLargeError,
)
from .dist import Evaluator, label_table, parity_label
from .oracle import parity_correlator
from .simulate import DistributionTable

MAX_ML_BITS = 16
MAX_IDENTIFY_BITS = 12
MAX_EXACT_PAC_BITS = 16


@dataclass(frozen=True)
class PacParams:
    """Accuracy/confidence pair for approximately-correct learning targets."""

    epsilon: float
    delta: float

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")


@dataclass
class LearnReport:
    """Outcome record of one learner run; wallclock never enters the JSON."""

    experiment: str
    n: int
    success: bool
    recovered: str | None = None
    eta: float | None = None
    tau: float | None = None
    queries_used: int | None = None
    samples_used: int | None = None
    seed: int | None = None
    wallclock: float = 0.0

    def __post_init__(self):
        if self.success and self.recovered is None:
            raise ValueError("success requires a recovered secret")

    def to_json_dict(self) -> dict:
        out: dict = {
            "experiment": self.experiment,
            "n": self.n,
            "eta": float(self.eta) if self.eta is not None else 0.0,
            "recovered": self.recovered,
            "success": self.success,
        }
        if self.tau is not None:
            out["tau"] = float(self.tau)
        if self.queries_used is not None:
            out["queries_used"] = self.queries_used
        if self.samples_used is not None:
            out["samples_used"] = self.samples_used
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _sample_arrays(samples) -> tuple[np.ndarray, np.ndarray, int]:
    if not samples:
        raise ValueError("no samples given")
    n = len(samples[0][0])
    rows = np.empty((len(samples), n), dtype=np.int8)
    labels = np.empty(len(samples), dtype=np.int8)
    for i, (x, y) in enumerate(samples):
        check_bits(x, n)
        rows[i] = [int(c) for c in x]
        labels[i] = int(y) & 1
    return rows, labels, n


def gauss_learner(samples) -> str | None:
    """Solve x.s = y over GF(2) by Gaussian elimination.

    Returns the unique solution when the sample matrix has full rank, None
    when it is rank deficient, and raises InconsistentSamplesError when the
    system has no solution at all (the signature of noisy labels).
    """
    rows, labels, n = _sample_arrays(samples)
    aug = np.hstack([rows, labels[:, None]]).astype(np.uint8)
    rank = 0
    for col in range(n):
        hits = np.flatnonzero(aug[rank:, col])
        if hits.size == 0:
            continue
        r = rank + int(hits[0])
        if r != rank:
            aug[[rank, r]] = aug[[r, rank]]
        others = np.flatnonzero(aug[:, col])
        others = others[others != rank]
        aug[others] ^= aug[rank]
        rank += 1
        if rank == len(aug):
            break
    if np.any(aug[rank:, n] != 0):
        raise InconsistentSamplesError("sample system has no GF(2) solution")
    if rank < n:
        return None
    return "".join(str(int(b)) for b in aug[:n, n])


def lpn_ml_learner(samples, eta: float) -> str:
    """Maximum-agreement secret over all 2**n candidates; ties go lexicographic.

    Deliberately exponential: scores every candidate against the sample set.
    Meaningful recovery needs eta < 1/2; above that the labels carry no
    signal and the argmax is noise (the run still completes).
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"noise rate must be in [0, 1], got {eta}")
    rows, labels, n = _sample_arrays(samples)
    if n > MAX_ML_BITS:
        raise TooLargeError(f"secret length {n} exceeds {MAX_ML_BITS}")
    cands = bit_matrix(n)
    best_idx, best_score = 0, -1
    block = 1 << 12
    for lo in range(0, 1 << n, block):
        preds = (cands[lo : lo + block] @ rows.T) & 1  # int8 sums stay < 127
        scores = (preds == labels[None, :]).sum(axis=1)
        i = int(np.argmax(scores))
        if scores[i] > best_score:
            best_score, best_idx = int(scores[i]), lo + i
    return index_to_bits(best_idx, n)


def sq_parity_learner(oracle, tau: float, n: int | None = None) -> LearnReport:
    """Identify the secret from a statistical-query oracle by exhaustive sweep.

    Queries the correlator (-1)**(t.x + y) for candidates t in lexicographic
    order; the expectation is 1 at the true secret and 0 elsewhere, so any
    tolerance below 1/2 makes the first response above 1/2 conclusive.

    The oracle may present either the labelled picture (n+1 bits) or the
    padded picture (n+2 bits); padded queries simply ignore the last bit.
    queries_used reports the oracle's base counter, i.e. the labelled-picture
    query cost when the oracle routes through the two-for-one reduction.
    """
    if not 0.0 < tau < 0.5:
        raise ValueError(f"tolerance must be in (0, 1/2), got {tau}")
    if n is None:
        n = oracle.n - 1
    pad_bits = oracle.n - (n + 1)
    if pad_bits not in (0, 1):
        raise DimensionMismatchError(
            f"oracle over {oracle.n} bits cannot present a length-{n} secret"
        )
    start = time.perf_counter()
    recovered = None
    for t_int in range(1 << n):
        cand = index_to_bits(t_int, n)
        if oracle.query(parity_correlator(cand, 1, pad_bits=pad_bits)) > 0.5:
            recovered = cand
            break
    if recovered is None:
        raise SecretNotFoundError("no candidate cleared the 1/2 threshold")
    return LearnReport(
        experiment="sq-parity",
        n=n,
        success=True,
        recovered=recovered,
        tau=tau,
        queries_used=getattr(oracle, "base_query_count", oracle.query_count),
        wallclock=time.perf_counter() - start,
    )


def identify_secret_from_distribution(m: DistributionTable) -> str:
    """Closest-secret search over all padded parity distributions.

    Promise: some secret's distribution is within total variation 1/4 of m;
    distinct secrets' distributions are mutually 1/2 apart, so the minimizer
    is then unique.  Raises PromiseViolatedError when the minimum is >= 1/4.
    """
    n = m.n - 2
    if n < 1:
        raise ValueError("distribution must cover at least 3 bits")
    if n > MAX_IDENTIFY_BITS:
        raise TooLargeError(f"secret length {n} exceeds {MAX_IDENTIFY_BITS}")
    unit = 2.0 ** -n
    x_idx = np.arange(1 << n, dtype=np.int64)
    pxv = parity_vector(n).astype(np.int64)
    best, best_d = None, np.inf
    for t_int in range(1 << n):
        t = index_to_bits(t_int, n)
        y = label_table(t)
        z = (pxv + y) & 1
        support = (x_idx << 2) | (y << 1) | z
        on = m.mass[support]
        # tvd against a table that is `unit` on the support and 0 elsewhere
        d = 0.5 * (np.abs(on - unit).sum() + (1.0 - on.sum()))
        if d < best_d:
            best_d, best = d, t
    if best_d >= 0.25:
        raise PromiseViolatedError(f"closest candidate is at tvd {best_d:.4f} >= 1/4")
    return best


def evaluator_to_pac(e: Evaluator):
    """Turn a padded-picture evaluator into a parity hypothesis.

    h(x) compares the evaluator's mass at label 0 versus label 1 (each with
    its matching padding bit) and returns the heavier side, 0 on ties.
    """

    def h(x: str) -> int:
        px = x.count("1") & 1
        at0 = e(x + "0" + str(px))
        at1 = e(x + "1" + str(1 - px))
        return 0 if at0 >= at1 else 1

    return h


def pac_error(h, s: str) -> float:
    """Exact disagreement fraction of h against the parity of s, uniform inputs."""
    check_bits(s)
    n = len(s)
    if n > MAX_EXACT_PAC_BITS:
        raise TooLargeError(
            f"secret length {n} exceeds {MAX_EXACT_PAC_BITS}; use pac_error_estimate"
        )
    wrong = 0
    for i in range(1 << n):
        x = index_to_bits(i, n)
        if int(h(x)) != parity_label(s, x):
            wrong += 1
    return wrong / (1 << n)


def pac_error_estimate(h, s: str, shots: int, seed: int) -> tuple[float, tuple[float, float]]:
    """Monte-Carlo disagreement estimate with a 95% Wilson interval."""
    check_bits(s)
    n = len(s)
    rng = np.random.default_rng(seed)
    wrong = 0
    for idx in rng.integers(0, 1 << n, size=shots):
        x = index_to_bits(int(idx), n)
        if int(h(x)) != parity_label(s, x):
            wrong += 1
    z = 1.959963984540054
    phat = wrong / shots
    denom = 1.0 + z * z / shots
    center = (phat + z * z / (2 * shots)) / denom
    half = z * np.sqrt(phat * (1 - phat) / shots + z * z / (4 * shots * shots)) / denom
    return phat, (max(0.0, center - half), min(1.0, center + half))

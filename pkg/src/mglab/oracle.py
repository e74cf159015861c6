"""Sample and statistical-query presenters with query accounting.

A statistical-query oracle answers bounded test functions phi with a value
within an additive tolerance tau of the true expectation.  Three concrete
modes pin down the nondeterminism in that contract:

  exact        the dense expectation itself;
  empirical    the mean of phi over fresh samples, with a Hoeffding guard
               that refuses shot counts too small for the tolerance;
  adversarial  the exact value displaced by exactly +-tau, the sign derived
               deterministically from the oracle seed and the query, i.e.
               the worst response the contract permits.

Queries on the padded (n+2)-bit picture split into an even and an odd part
supported on the padding constraint; each part is a query on the labelled
(n+1)-bit picture, so one padded query costs two labelled queries at half
the tolerance.
"""

import hashlib
import math
from collections.abc import Callable

import numpy as np

from .bits import bits_to_index, check_bits, index_to_bits, parity_vector, secret_vector
from .errors import DimensionMismatchError, RangeViolationError, ToleranceRiskError
from .simulate import DistributionTable

STAT_CONFIDENCE_LOG = math.log(2e6)  # Hoeffding at confidence 1 - 1e-6


class StatQuery:
    """Total map from n-bit strings to [-1, 1], with a dense value table."""

    def __init__(
        self,
        n: int,
        fn: Callable[[str], float] | None = None,
        values: np.ndarray | None = None,
        name: str = "",
    ):
        if (fn is None) == (values is None):
            raise ValueError("provide exactly one of fn or values")
        self.n = int(n)
        self.name = name
        self._fn = fn
        self._values: np.ndarray | None = None
        if values is not None:
            values = np.asarray(values, dtype=float)
            if values.shape != (1 << self.n,):
                raise ValueError(f"expected {1 << self.n} values, got {values.shape}")
            self._check_range(values)
            values = values.copy()
            values.setflags(write=False)
            self._values = values

    @staticmethod
    def _check_range(values: np.ndarray) -> None:
        if values.size and (values.min() < -1.0 or values.max() > 1.0):
            raise RangeViolationError("query values leave [-1, 1]")

    def values(self) -> np.ndarray:
        """Dense table of phi over all 2**n inputs, built once and cached."""
        if self._values is None:
            vals = np.array(
                [float(self._fn(index_to_bits(i, self.n))) for i in range(1 << self.n)]
            )
            self._check_range(vals)
            vals.setflags(write=False)
            self._values = vals
        return self._values

    def __call__(self, x: str) -> float:
        check_bits(x, self.n)
        v = float(self.values()[bits_to_index(x)])
        if not -1.0 <= v <= 1.0:
            raise RangeViolationError(f"query returned {v}")
        return v


def parity_correlator(a: str, b: int, pad_bits: int = 0) -> StatQuery:
    """The +-1 query (-1)**(a.x + b*y) over (x, y) strings.

    With pad_bits > 0 the domain is widened by that many trailing bits which
    the query ignores (used to lift labelled queries to the padded picture).
    """
    check_bits(a)
    n = len(a)
    y = np.zeros(1 << (n + 1), dtype=np.int64)
    spots = np.flatnonzero(secret_vector(a))
    idx = np.arange(1 << (n + 1), dtype=np.uint64)
    for p in spots:
        y ^= ((idx >> np.uint64(n - int(p))) & np.uint64(1)).astype(np.int64)
    if b & 1:
        y ^= (idx & np.uint64(1)).astype(np.int64)
    vals = 1.0 - 2.0 * y
    if pad_bits:
        vals = np.repeat(vals, 1 << pad_bits)
    return StatQuery(n + 1 + pad_bits, values=vals, name=f"parity-correlator[{a},{b}]")


def indicator(target: str) -> StatQuery:
    """Query that is 1 on one string and 0 elsewhere."""
    check_bits(target)
    vals = np.zeros(1 << len(target))
    vals[bits_to_index(target)] = 1.0
    return StatQuery(len(target), values=vals, name=f"indicator[{target}]")


QUERY_FAMILIES = {
    "parity-correlator": parity_correlator,
    "indicator": indicator,
}


def default_shots(tau: float) -> int:
    """Smallest shot count whose Hoeffding bound meets tau at confidence 1-1e-6."""
    return math.ceil(2.0 * STAT_CONFIDENCE_LOG / tau**2)


class StatOracle:
    """Statistical-query presenter for one distribution.

    Holds a mutable query counter and (for the stochastic modes) RNG state,
    so one logical owner at a time.
    """

    def __init__(
        self,
        target: DistributionTable,
        tau: float,
        mode: str = "exact",
        shots: int | None = None,
        seed: int | None = None,
    ):
        if not 0.0 < tau < 1.0:
            raise ValueError(f"tolerance must be in (0, 1), got {tau}")
        if mode not in ("exact", "empirical", "adversarial"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode in ("empirical", "adversarial") and seed is None:
            raise ValueError(f"mode {mode!r} requires a seed")
        self.target = target
        self.tau = float(tau)
        self.mode = mode
        self.seed = seed
        self.shots = int(shots) if shots is not None else default_shots(tau)
        self.query_count = 0
        self._rng = np.random.default_rng(seed) if mode == "empirical" else None
        self._cdf = np.cumsum(target.mass) if mode == "empirical" else None

    @property
    def n(self) -> int:
        return self.target.n

    @property
    def base_query_count(self) -> int:
        return self.query_count

    def query(self, q: StatQuery) -> float:
        if q.n != self.target.n:
            raise DimensionMismatchError(f"query over {q.n} bits, target has {self.target.n}")
        self.query_count += 1
        vals = q.values()
        if self.mode == "exact":
            return float(self.target.mass @ vals)
        if self.mode == "empirical":
            bound = math.sqrt(2.0 * STAT_CONFIDENCE_LOG / self.shots)
            if bound > self.tau:
                raise ToleranceRiskError(
                    f"{self.shots} shots give Hoeffding bound {bound:.3g} > tau={self.tau}"
                )
            idx = np.searchsorted(self._cdf, self._rng.random(self.shots), side="right")
            idx = np.minimum(idx, (1 << self.target.n) - 1)
            return float(vals[idx].mean())
        # adversarial: exact value pushed to the edge of the tolerance window,
        # direction a deterministic function of (seed, query values)
        exact = float(self.target.mass @ vals)
        h = hashlib.sha256()
        h.update(str(self.seed).encode())
        h.update(np.asarray(vals, dtype="<f8").tobytes())
        sign = 1.0 if h.digest()[0] & 1 else -1.0
        return exact + sign * self.tau


class SampleOracle:
    """Sample presenter: i.i.d. draws from the target, deterministic per seed."""

    def __init__(self, target: DistributionTable, seed: int):
        self.target = target
        self.seed = seed
        self.sample_count = 0
        self._rng = np.random.default_rng(seed)
        self._cdf = np.cumsum(target.mass)

    @property
    def n(self) -> int:
        return self.target.n

    def draw(self, count: int = 1) -> list[str]:
        self.sample_count += count
        idx = np.searchsorted(self._cdf, self._rng.random(count), side="right")
        idx = np.minimum(idx, (1 << self.target.n) - 1)
        return [index_to_bits(int(i), self.target.n) for i in idx]


def split_fermionized_query(q: StatQuery) -> tuple[StatQuery, StatQuery]:
    """Even/odd parts of a padded-picture query as labelled-picture queries.

    For phi over (x, y, z): the even part is phi(x, y, 0) where |x|+y = 0,
    the odd part phi(x, y, 1) where |x|+y = 1, each zero elsewhere.  The
    remainder of phi is supported off the padding constraint and has zero
    expectation under every padded parity distribution, so it is never
    materialized.
    """
    m = q.n - 1  # labelled-picture bit count
    vals = q.values()
    par = parity_vector(m)  # |x| + y over (x, y) indices
    even = np.where(par == 0, vals[0::2], 0.0)
    odd = np.where(par == 1, vals[1::2], 0.0)
    return (
        StatQuery(m, values=even, name=f"{q.name}|even"),
        StatQuery(m, values=odd, name=f"{q.name}|odd"),
    )


def query_fermionized_via_parity(q: StatQuery, parity_oracle: StatOracle) -> float:
    """Answer a padded-picture query with two labelled-picture queries.

    The two sub-queries run at the inner oracle's tolerance, so the result
    is within twice that tolerance of the padded expectation; the inner
    counter advances by exactly 2.
    """
    if q.n != parity_oracle.n + 1:
        raise DimensionMismatchError(
            f"query over {q.n} bits cannot split onto a {parity_oracle.n}-bit oracle"
        )
    even, odd = split_fermionized_query(q)
    return parity_oracle.query(even) + parity_oracle.query(odd)


class FermionizedStatOracle:
    """Padded-picture presenter backed by a labelled-picture oracle.

    Each query costs two queries on the inner oracle; base_query_count
    reports the inner total, the cost metric of the reduction.
    """

    def __init__(self, parity_oracle: StatOracle):
        self.inner = parity_oracle
        self.tau = 2.0 * parity_oracle.tau
        self.query_count = 0

    @property
    def n(self) -> int:
        return self.inner.n + 1

    @property
    def base_query_count(self) -> int:
        return self.inner.query_count

    def query(self, q: StatQuery) -> float:
        self.query_count += 1
        return query_fermionized_via_parity(q, self.inner)

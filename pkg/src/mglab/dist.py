"""Parity-labelled distributions, their even-parity paddings, and representations.

Layout convention for an n-bit secret s: strings are x (positions 0..n-1)
followed by the label bit y at position n, and, for the padded variants, a
parity-completion bit z at position n+1 chosen so the whole string has even
Hamming weight (z = |x| + y mod 2 on the support).  The padded distributions
are exactly the ones realizable as matchgate Born distributions; the
reductions below translate samplers and mass functions between the labelled
and padded pictures.
"""

from collections.abc import Callable

import numpy as np

from .bits import (
    bits_to_index,
    check_bits,
    index_to_bits,
    parity_of_bits,
    parity_vector,
    secret_vector,
)
from .errors import LengthMismatchError, RangeViolationError, TooLargeError
from .simulate import DistributionTable

MAX_SECRET_BITS = 20
MAX_PADDED_SECRET_BITS = 18


def check_secret(s: str) -> str:
    return check_bits(s)


def check_noise_rate(eta: float) -> float:
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"noise rate must be in [0, 1], got {eta}")
    return float(eta)


def parity_label(s: str, x: str) -> int:
    """<x, s> mod 2."""
    check_secret(s)
    if len(x) != len(s):
        raise LengthMismatchError(f"|x|={len(x)} but |s|={len(s)}")
    return sum(1 for a, b in zip(x, s) if a == b == "1") & 1


def padded_labels(s: str, x: str) -> tuple[int, int]:
    """(y, z) with y the parity label and z = y + |x| mod 2.

    Appending these two bits to x always yields an even-weight string.
    """
    y = parity_label(s, x)
    return y, (y + parity_of_bits(x)) & 1


def label_table(s: str) -> np.ndarray:
    """Parity label of every x as an int64 vector over all 2**n inputs."""
    n = len(s)
    spots = np.flatnonzero(secret_vector(s))
    idx = np.arange(1 << n, dtype=np.uint64)
    y = np.zeros(1 << n, dtype=np.int64)
    for p in spots:
        y ^= ((idx >> np.uint64(n - 1 - int(p))) & np.uint64(1)).astype(np.int64)
    return y


def parity_dist(s: str) -> DistributionTable:
    """Uniform over (x, y) pairs with y the parity label of x; n+1 bits."""
    check_secret(s)
    n = len(s)
    if n > MAX_SECRET_BITS:
        raise TooLargeError(f"secret length {n} exceeds {MAX_SECRET_BITS}")
    y = label_table(s)
    mass = np.zeros(1 << (n + 1))
    mass[(np.arange(1 << n) << 1) | y] = 2.0 ** -n
    return DistributionTable(n + 1, mass)


def noisy_parity_dist(s: str, eta: float) -> DistributionTable:
    """As parity_dist but the label is flipped with probability eta."""
    check_secret(s)
    check_noise_rate(eta)
    n = len(s)
    if n > MAX_SECRET_BITS:
        raise TooLargeError(f"secret length {n} exceeds {MAX_SECRET_BITS}")
    y = label_table(s)
    x_idx = np.arange(1 << n)
    mass = np.zeros(1 << (n + 1))
    mass[(x_idx << 1) | y] = (1.0 - eta) * 2.0 ** -n
    mass[(x_idx << 1) | (1 - y)] += eta * 2.0 ** -n
    return DistributionTable(n + 1, mass)


def fermionized_parity_dist(s: str) -> DistributionTable:
    """parity_dist padded with z = |x| + y; supported on even-weight strings."""
    check_secret(s)
    n = len(s)
    if n > MAX_PADDED_SECRET_BITS:
        raise TooLargeError(f"secret length {n} exceeds {MAX_PADDED_SECRET_BITS}")
    y = label_table(s)
    z = (parity_vector(n).astype(np.int64) + y) & 1
    mass = np.zeros(1 << (n + 2))
    mass[(np.arange(1 << n) << 2) | (y << 1) | z] = 2.0 ** -n
    return DistributionTable(n + 2, mass)


def fermionized_noisy_parity_dist(s: str, eta: float) -> DistributionTable:
    """Noisy labels in the padded picture: flipping y also flips z.

    Weight (1-eta)*2**-n where (y, z) are the true padded labels and
    eta*2**-n where both are flipped, so the support stays even-weight.
    """
    check_secret(s)
    check_noise_rate(eta)
    n = len(s)
    if n > MAX_PADDED_SECRET_BITS:
        raise TooLargeError(f"secret length {n} exceeds {MAX_PADDED_SECRET_BITS}")
    y = label_table(s)
    z = (parity_vector(n).astype(np.int64) + y) & 1
    x_idx = np.arange(1 << n)
    mass = np.zeros(1 << (n + 2))
    mass[(x_idx << 2) | (y << 1) | z] = (1.0 - eta) * 2.0 ** -n
    mass[(x_idx << 2) | ((1 - y) << 1) | (1 - z)] += eta * 2.0 ** -n
    return DistributionTable(n + 2, mass)


def even_parity_dist(k: int) -> DistributionTable:
    """Uniform over the 2**(k-1) even-weight k-bit strings."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > MAX_SECRET_BITS:
        raise TooLargeError(f"k={k} exceeds {MAX_SECRET_BITS}")
    mass = np.where(parity_vector(k) == 0, 2.0 ** -(k - 1), 0.0)
    return DistributionTable(k, mass)


class Evaluator:
    """Total map from fixed-length bitstrings to probabilities in [0, 1]."""

    def __init__(self, n: int, fn: Callable[[str], float], exact: bool = False):
        self.n = int(n)
        self._fn = fn
        self.exact = bool(exact)

    def __call__(self, x: str) -> float:
        check_bits(x, self.n)
        v = float(self._fn(x))
        if not 0.0 <= v <= 1.0:
            raise RangeViolationError(f"evaluator returned {v} for {x!r}")
        return v

    @classmethod
    def from_table(cls, d: DistributionTable, exact: bool = True) -> "Evaluator":
        return cls(d.n, lambda x: float(d.mass[bits_to_index(x)]), exact=exact)

    def table(self) -> np.ndarray:
        """Materialize all 2**n values (desk scale only)."""
        return np.array([self(index_to_bits(i, self.n)) for i in range(1 << self.n)])


class Generator:
    """Sampling procedure with owned RNG producing fixed-length bitstrings.

    Single-caller: the RNG state advances with every draw, so concurrent
    users must hold distinct instances.
    """

    def __init__(self, n: int, draw: Callable[[int], list[str]], exact: bool = False):
        self.n = int(n)
        self._draw = draw
        self.exact = bool(exact)

    def draw(self, count: int) -> list[str]:
        out = self._draw(int(count))
        for x in out:
            check_bits(x, self.n)
        return out

    @classmethod
    def from_table(cls, d: DistributionTable, seed: int, exact: bool = True) -> "Generator":
        rng = np.random.default_rng(seed)
        cdf = np.cumsum(d.mass)

        def draw(count: int) -> list[str]:
            idx = np.searchsorted(cdf, rng.random(count), side="right")
            idx = np.minimum(idx, (1 << d.n) - 1)
            return [index_to_bits(int(i), d.n) for i in idx]

        return cls(d.n, draw, exact=exact)


def to_parity_evaluator(e: Evaluator) -> Evaluator:
    """Padded-picture evaluator -> labelled-picture evaluator.

    The labelled mass at (x, y) is the padded mass at (x, y, |x|+y), the one
    point of the padded support that projects onto (x, y).
    """

    def fn(xy: str) -> float:
        x, y = xy[:-1], int(xy[-1])
        z = (parity_of_bits(x) + y) & 1
        return e(xy + str(z))

    return Evaluator(e.n - 1, fn, exact=e.exact)


def to_fermionized_evaluator(e: Evaluator) -> Evaluator:
    """Labelled-picture evaluator -> padded-picture evaluator.

    Checks the padding constraint |x| + y == z first and returns 0 when it
    fails; otherwise defers to the labelled evaluator on (x, y).
    """

    def fn(xyz: str) -> float:
        x, y, z = xyz[:-2], int(xyz[-2]), int(xyz[-1])
        if (parity_of_bits(x) + y) & 1 != z:
            return 0.0
        return e(xyz[:-1])

    return Evaluator(e.n + 1, fn, exact=e.exact)


def reduce_generator(g: Generator, direction: str) -> Generator:
    """Translate a sampler between the padded and labelled pictures.

    direction "drop_pad": discard the last bit of each padded sample.
    direction "add_pad": append |x| + y mod 2 to each labelled sample.
    Both maps carry noisy variants across unchanged: flipped labels map to
    jointly-flipped (y, z) pairs and back.
    """
    if direction == "drop_pad":
        return Generator(g.n - 1, lambda k: [x[:-1] for x in g.draw(k)], exact=g.exact)
    if direction == "add_pad":
        def draw(k: int) -> list[str]:
            return [x + str(parity_of_bits(x)) for x in g.draw(k)]

        return Generator(g.n + 1, draw, exact=g.exact)
    raise ValueError(f"direction must be 'drop_pad' or 'add_pad', got {direction!r}")

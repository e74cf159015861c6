"""Dense statevector simulation and exact Born distributions.

This is the brute-force ground truth for the whole package: circuits are
applied gate by gate to the full 2**n amplitude vector (n <= 24 guard), and
distributions are dense probability tables.  Wire 0 is the most significant
bit of every bitstring/index (see bits.py).
"""

from dataclasses import dataclass

import numpy as np

from .bits import bit_matrix, index_to_bits
from .errors import DimensionMismatchError, TooLargeError
from .gates import MatchgateCircuit

MAX_WIRES = 24
NORM_TOL = 1e-10


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitude vector over n-bit strings."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"statevector norm {norm} deviates from 1")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def amplitude(self, x: str) -> complex:
        return complex(self.amplitudes[int(x, 2)])


@dataclass(frozen=True)
class DistributionTable:
    """Dense probability mass function over n-bit strings."""

    n: int
    mass: np.ndarray

    def __post_init__(self):
        mass = np.asarray(self.mass, dtype=float)
        if mass.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} entries, got {mass.shape}")
        if mass.min() < 0.0:
            raise ValueError("negative probability mass")
        total = mass.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"mass sums to {total}, not 1")
        mass = mass.copy()
        mass.setflags(write=False)
        object.__setattr__(self, "mass", mass)

    def prob(self, x: str) -> float:
        return float(self.mass[int(x, 2)])

    def to_csv(self) -> str:
        """CSV export with header `bitstring,probability`, 17 significant digits."""
        lines = ["bitstring,probability"]
        for i, m in enumerate(self.mass):
            lines.append(f"{index_to_bits(i, self.n)},{m:.17g}")
        return "\n".join(lines) + "\n"


def _apply_two_qubit(state: np.ndarray, mat: np.ndarray, wire: int, n: int) -> np.ndarray:
    """Apply a 4x4 gate on wires (wire, wire+1) to a dense state."""
    psi = state.reshape([2] * n)
    m = mat.reshape(2, 2, 2, 2)
    psi = np.tensordot(m, psi, axes=([2, 3], [wire, wire + 1]))
    psi = np.moveaxis(psi, (0, 1), (wire, wire + 1))
    return psi.reshape(-1)


def apply_circuit(c: MatchgateCircuit) -> StateVector:
    """U|0...0> with layers applied in order, ascending wire order inside a layer.

    Assumes the circuit already passed validate_circuit.
    """
    if c.n > MAX_WIRES:
        raise TooLargeError(f"{c.n} wires exceeds the {MAX_WIRES}-wire guard")
    state = np.zeros(1 << c.n, dtype=complex)
    state[0] = 1.0
    for layer in c.layers:
        for g in sorted(layer, key=lambda g: g.wires[0]):
            state = _apply_two_qubit(state, g.to_matrix(), g.wires[0], c.n)
    return StateVector(c.n, state)


def born_distribution(c: MatchgateCircuit) -> DistributionTable:
    """Measurement distribution |<x|U|0...0>|**2 of the circuit's output state."""
    amps = apply_circuit(c).amplitudes
    return DistributionTable(c.n, np.abs(amps) ** 2)


def sample(d: DistributionTable, rng_seed: int, shots: int) -> list[str]:
    """shots i.i.d. samples via inverse CDF; deterministic for a fixed seed."""
    rng = np.random.default_rng(rng_seed)
    cdf = np.cumsum(d.mass)
    idx = np.searchsorted(cdf, rng.random(shots), side="right")
    idx = np.minimum(idx, (1 << d.n) - 1)  # guard against cdf[-1] rounding below 1
    return [index_to_bits(int(i), d.n) for i in idx]


def tvd(p: DistributionTable, q: DistributionTable) -> float:
    """Total variation distance, half the l1 distance between mass tables."""
    if p.n != q.n:
        raise DimensionMismatchError(f"bit counts differ: {p.n} vs {q.n}")
    return 0.5 * float(np.abs(p.mass - q.mass).sum())


def permute_bits(d: DistributionTable, targets) -> DistributionTable:
    """Relabel bit positions: bit at position p moves to position targets[p]."""
    targets = list(targets)
    if sorted(targets) != list(range(d.n)):
        raise ValueError(f"targets is not a permutation of 0..{d.n - 1}")
    weights = np.array([1 << (d.n - 1 - t) for t in targets], dtype=np.int64)
    dest = bit_matrix(d.n).astype(np.int64) @ weights
    out = np.zeros_like(d.mass)
    out[dest] = d.mass
    return DistributionTable(d.n, out)

"""Pfaffians of skew-symmetric matrices and Gaussian-state amplitudes.

The Pfaffian is computed by Parlett-Reid tridiagonalization with partial
pivoting: repeated skew-symmetric rank-two updates reduce the matrix while
accumulating the product of super-diagonal pivots; every row/column
transposition flips the sign.  Cost is O(m**3).

A state defined by an antisymmetric generating matrix G assigns to the
occupation string x the amplitude N * Pf(G restricted to the 1-positions
of x); strings of odd weight get amplitude exactly 0.
"""

import json
from dataclasses import dataclass

import numpy as np

from .bits import check_bits, parity_of_bits
from .errors import DegenerateStateError, TooLargeError

SKEW_TOL = 1e-12
MAX_NORMALIZE_DIM = 20


@dataclass(frozen=True)
class SkewMatrix:
    """Complex skew-symmetric matrix; the diagonal is zeroed on construction."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if a.size and np.max(np.abs(a + a.T)) > 2 * SKEW_TOL:
            raise ValueError("matrix is not skew-symmetric within tolerance")
        np.fill_diagonal(a, 0.0)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def to_json_dict(self) -> dict:
        upper = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.entries[i, j]
                upper.append([i, j, float(v.real), float(v.imag)])
        return {"dim": self.dim, "upper": upper}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SkewMatrix":
        dim = int(data["dim"])
        a = np.zeros((dim, dim), dtype=complex)
        for i, j, re, im in data["upper"]:
            a[i, j] = complex(re, im)
            a[j, i] = -complex(re, im)
        return cls(a)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SkewMatrix":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class GaussianState:
    """Generating matrix plus the normalization constant making amplitudes unit-norm."""

    n: int
    generating: SkewMatrix
    norm_constant: float

    def __post_init__(self):
        if self.generating.dim != self.n:
            raise ValueError("generating matrix dimension must equal mode count")
        if not self.norm_constant > 0:
            raise ValueError("norm_constant must be positive")


def _pfaffian_inplace(a: np.ndarray) -> complex:
    m = a.shape[0]
    if m % 2 == 1:
        return 0j
    pf = 1 + 0j
    for k in range(0, m - 1, 2):
        # pivot the largest entry of column k below the diagonal into row k+1
        kp = k + 1 + int(np.argmax(np.abs(a[k + 1 :, k])))
        if kp != k + 1:
            a[[k + 1, kp], k:] = a[[kp, k + 1], k:]
            a[k:, [k + 1, kp]] = a[k:, [kp, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0:
            return 0j
        pf *= a[k, k + 1]
        if k + 2 < m:
            tau = a[k, k + 2 :] / a[k, k + 1]
            a[k + 2 :, k + 2 :] += np.outer(tau, a[k + 2 :, k + 1])
            a[k + 2 :, k + 2 :] -= np.outer(a[k + 2 :, k + 1], tau)
    return complex(pf)


def pfaffian(a: SkewMatrix | np.ndarray) -> complex:
    """Pf(a); 1 for the empty matrix, 0 for odd dimension by convention."""
    arr = a.entries if isinstance(a, SkewMatrix) else np.asarray(a, dtype=complex)
    if arr.shape[0] == 0:
        return 1 + 0j
    return _pfaffian_inplace(arr.astype(complex, copy=True))


def restrict(g: SkewMatrix, x: str) -> SkewMatrix:
    """Principal submatrix on the rows/columns where x has a 1, in index order."""
    check_bits(x, g.dim)
    idx = [i for i, c in enumerate(x) if c == "1"]
    return SkewMatrix(g.entries[np.ix_(idx, idx)])


def amplitude(state: GaussianState, x: str) -> complex:
    """N * Pf(G|_x) for even-weight x, exactly 0 for odd weight."""
    check_bits(x, state.n)
    if parity_of_bits(x) == 1:
        return 0j
    return state.norm_constant * pfaffian(restrict(state.generating, x))


def normalize(g: SkewMatrix) -> GaussianState:
    """Fix N by brute-force enumeration of |Pf(G|_x)|**2 over even-weight x."""
    n = g.dim
    if n > MAX_NORMALIZE_DIM:
        raise TooLargeError(f"dim {n} exceeds the {MAX_NORMALIZE_DIM} enumeration guard")
    total = 0.0
    for i in range(1 << n):
        if i.bit_count() % 2:
            continue
        idx = [b for b in range(n) if (i >> (n - 1 - b)) & 1]
        total += abs(pfaffian(g.entries[np.ix_(idx, idx)])) ** 2
    if total < 1e-300:
        raise DegenerateStateError("normalization sum underflowed")
    return GaussianState(n, g, total ** -0.5)

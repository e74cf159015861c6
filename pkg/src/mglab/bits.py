"""Bitstring/index conversions and cached bit tables.

Convention used everywhere in this package: bit 0 (wire 0) is the most
significant bit, so a bitstring maps to its integer index via int(x, 2).
"""

from functools import lru_cache

import numpy as np

from .errors import LengthMismatchError


def check_bits(x: str, length: int | None = None) -> str:
    """Validate a 0/1 string, optionally against an expected length."""
    if not isinstance(x, str) or x == "" or any(c not in "01" for c in x):
        raise ValueError(f"not a nonempty 0/1 bitstring: {x!r}")
    if length is not None and len(x) != length:
        raise LengthMismatchError(f"expected {length} bits, got {len(x)} ({x!r})")
    return x


def index_to_bits(i: int, n: int) -> str:
    return format(i, f"0{n}b")


def bits_to_index(x: str) -> int:
    return int(x, 2)


def parity_of_bits(x: str) -> int:
    """Hamming parity of a 0/1 string."""
    return x.count("1") & 1


@lru_cache(maxsize=None)
def bit_matrix(n: int) -> np.ndarray:
    """(2**n, n) int8 array; row i holds the bits of i, bit 0 first."""
    idx = np.arange(1 << n, dtype=np.int64)
    rows = ((idx[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.int8)
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=None)
def parity_vector(n: int) -> np.ndarray:
    """Hamming parity of every n-bit index, shape (2**n,), values 0/1."""
    par = (np.bitwise_count(np.arange(1 << n, dtype=np.uint64)) & 1).astype(np.int8)
    par.setflags(write=False)
    return par


def secret_vector(s: str) -> np.ndarray:
    """0/1 int8 vector for a secret bitstring."""
    return np.frombuffer(s.encode(), dtype=np.uint8).astype(np.int8) - ord("0")

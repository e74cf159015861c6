"""Shared helpers: independent brute-force constructions used as test oracles.

Everything here is written the slow, obvious way on purpose (python loops
over bitstrings, explicit case analysis) so the fast vectorized package
code is checked against a genuinely different path.
"""

import numpy as np

from mglab.gates import Gate2Q, MatchgateCircuit


def bitstrings(n: int):
    return [format(i, f"0{n}b") for i in range(1 << n)]


def dot2(x: str, s: str) -> int:
    return sum(int(a) & int(b) for a, b in zip(x, s)) % 2


def weight_parity(x: str) -> int:
    return x.count("1") % 2


def slow_parity_table(s: str, eta: float = 0.0) -> np.ndarray:
    """Labelled parity mass table built by explicit case analysis."""
    n = len(s)
    mass = np.zeros(1 << (n + 1))
    for x in bitstrings(n):
        for y in (0, 1):
            if dot2(x, s) == y:
                mass[int(x + str(y), 2)] = (1.0 - eta) * 2.0**-n
            else:
                mass[int(x + str(y), 2)] = eta * 2.0**-n
    return mass


def slow_padded_table(s: str, eta: float = 0.0) -> np.ndarray:
    """Padded parity mass table built by explicit case analysis."""
    n = len(s)
    mass = np.zeros(1 << (n + 2))
    for x in bitstrings(n):
        for y in (0, 1):
            for z in (0, 1):
                i = int(x + str(y) + str(z), 2)
                on_pad = (weight_parity(x) + y) % 2 == z
                if dot2(x, s) == y and on_pad:
                    mass[i] = (1.0 - eta) * 2.0**-n
                elif dot2(x, s) != y and on_pad:
                    mass[i] = eta * 2.0**-n
    return mass


def slow_even_table(k: int) -> np.ndarray:
    mass = np.zeros(1 << k)
    for x in bitstrings(k):
        if weight_parity(x) == 0:
            mass[int(x, 2)] = 2.0 ** -(k - 1)
    return mass


def random_su2(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    a, b = v / np.linalg.norm(v)
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def blocks_to_gate(outer: np.ndarray, inner: np.ndarray, phase: complex = 1.0) -> np.ndarray:
    """4x4 matrix with `outer` on {|00>,|11>} and `inner` on {|01>,|10>}."""
    u = np.zeros((4, 4), dtype=complex)
    u[np.ix_([0, 3], [0, 3])] = outer
    u[np.ix_([1, 2], [1, 2])] = inner
    return phase * u


def random_matchgate(rng: np.random.Generator) -> np.ndarray:
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
    return blocks_to_gate(random_su2(rng), random_su2(rng), phase)


def random_circuit(rng: np.random.Generator, n: int, depth: int) -> MatchgateCircuit:
    """Random valid circuit: each layer fills a random subset of adjacent pairs."""
    layers = []
    for _ in range(depth):
        layer = []
        wire = 0
        while wire < n - 1:
            kind = rng.integers(0, 4)
            if kind == 0:
                layer.append(Gate2Q("UX", (wire, wire + 1), t=float(rng.uniform(0, 2 * np.pi))))
            elif kind == 1:
                layer.append(Gate2Q("FSWAP", (wire, wire + 1)))
            elif kind == 2:
                layer.append(Gate2Q("CUSTOM", (wire, wire + 1), matrix=random_matchgate(rng)))
            wire += 2 if kind < 3 else 1
        if layer:
            layers.append(tuple(layer))
    return MatchgateCircuit(n, tuple(layers))


def empirical_table(samples: list[str], n: int) -> np.ndarray:
    hist = np.zeros(1 << n)
    for x in samples:
        hist[int(x, 2)] += 1.0
    return hist / hist.sum()


def l1_half(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(a - b).sum())

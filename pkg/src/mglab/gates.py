"""Two-qubit matchgates and nearest-neighbour circuits on a line of wires.

Basis ordering for all 4x4 matrices is |00>, |01>, |10>, |11> with the left
ket belonging to the lower wire index.  A matchgate acts as one 2x2 block on
the even-parity subspace {|00>, |11>} (the "outer" block) and another on the
odd subspace {|01>, |10>} (the "inner" block); up to a global phase both
blocks are special unitary, which is equivalent to det(outer) == det(inner).
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidWireError,
    NonUnitaryError,
    NotAMatchgateError,
    OverlappingGatesError,
)

GATE_TOL = 1e-9

_X = np.array([[0, 1], [1, 0]], dtype=complex)

# off-block entries: rows in {0,3} with columns in {1,2} and vice versa
_OFF_BLOCK = np.zeros((4, 4), dtype=bool)
for _r in (0, 3):
    for _c in (1, 2):
        _OFF_BLOCK[_r, _c] = True
        _OFF_BLOCK[_c, _r] = True


def ux_gate(t: float) -> np.ndarray:
    """XX interaction gate: cos(t/2)*I + i*sin(t/2)*X(x)X."""
    return np.cos(t / 2) * np.eye(4, dtype=complex) + 1j * np.sin(t / 2) * np.kron(_X, _X)


def fswap_gate() -> np.ndarray:
    """Fermionic swap: SWAP with a -1 phase on |11>."""
    return np.array(
        [[1, 0, 0, 0],
         [0, 0, 1, 0],
         [0, 1, 0, 0],
         [0, 0, 0, -1]],
        dtype=complex,
    )


def is_matchgate(u: np.ndarray, tol: float = GATE_TOL) -> bool:
    """Whether a 4x4 unitary has matchgate block structure.

    Checks that the eight off-block entries vanish and that the outer and
    inner 2x2 blocks have equal determinants (the phase-free form of the
    two-blocks-in-SU(2) condition).  Raises NonUnitaryError if u is not
    unitary within tol.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(4))) > tol:
        raise NonUnitaryError("matrix is not unitary within tolerance")
    if np.max(np.abs(u[_OFF_BLOCK])) > tol:
        return False
    det_outer = u[0, 0] * u[3, 3] - u[0, 3] * u[3, 0]
    det_inner = u[1, 1] * u[2, 2] - u[1, 2] * u[2, 1]
    return bool(abs(det_outer - det_inner) <= tol)


@dataclass(frozen=True)
class Gate2Q:
    """A two-qubit gate on an adjacent wire pair.

    kind is "UX" (takes angle t), "FSWAP", or "CUSTOM" (takes a 4x4 matrix).
    Adjacency and matchgate-ness are enforced by validate_circuit, not here,
    so that invalid circuits can be constructed and then diagnosed.
    """

    kind: str
    wires: tuple[int, int]
    t: float | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("UX", "FSWAP", "CUSTOM"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "wires", (int(self.wires[0]), int(self.wires[1])))
        if self.kind == "UX" and self.t is None:
            raise ValueError("UX gate requires an angle t")
        if self.kind == "CUSTOM":
            m = np.asarray(self.matrix, dtype=complex)
            if m.shape != (4, 4):
                raise ValueError("CUSTOM gate requires a 4x4 matrix")
            m = m.copy()
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)

    def to_matrix(self) -> np.ndarray:
        if self.kind == "UX":
            return ux_gate(self.t)
        if self.kind == "FSWAP":
            return fswap_gate()
        return self.matrix


@dataclass(frozen=True)
class MatchgateCircuit:
    """Layered nearest-neighbour circuit on n wires.

    Each layer is a tuple of gates with pairwise-disjoint wire pairs; within
    a layer gates are applied in ascending wire order (they commute).
    """

    n: int
    layers: tuple[tuple[Gate2Q, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "layers", tuple(tuple(layer) for layer in self.layers)
        )

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def gates(self):
        for layer in self.layers:
            yield from layer

    @classmethod
    def from_gates(cls, n: int, gates) -> "MatchgateCircuit":
        """Compact a flat gate sequence greedily into layers.

        Each gate goes into the earliest layer whose wires are all free in
        that layer and in every later one (so gates sharing a wire keep
        their relative order).
        """
        layers: list[list[Gate2Q]] = []
        busy_from: dict[int, int] = {}  # wire -> first layer index still free
        for g in gates:
            start = max(busy_from.get(w, 0) for w in g.wires)
            if start == len(layers):
                layers.append([])
            layers[start].append(g)
            for w in g.wires:
                busy_from[w] = start + 1
        return cls(n, tuple(tuple(l) for l in layers))

    def to_json_dict(self) -> dict:
        out_layers = []
        for layer in self.layers:
            out_layer = []
            for g in layer:
                entry: dict = {"kind": g.kind, "wires": [g.wires[0], g.wires[1]]}
                if g.kind == "UX":
                    entry["t"] = float(g.t)
                elif g.kind == "CUSTOM":
                    entry["matrix"] = [
                        [float(v.real), float(v.imag)] for v in g.matrix.ravel()
                    ]
                out_layer.append(entry)
            out_layers.append(out_layer)
        return {"n": self.n, "layers": out_layers}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MatchgateCircuit":
        layers = []
        for layer in data["layers"]:
            gates = []
            for entry in layer:
                kind = entry["kind"]
                wires = (entry["wires"][0], entry["wires"][1])
                if kind == "UX":
                    gates.append(Gate2Q("UX", wires, t=entry["t"]))
                elif kind == "FSWAP":
                    gates.append(Gate2Q("FSWAP", wires))
                else:
                    flat = entry["matrix"]
                    m = np.array(
                        [complex(re, im) for re, im in flat], dtype=complex
                    ).reshape(4, 4)
                    gates.append(Gate2Q("CUSTOM", wires, matrix=m))
            layers.append(tuple(gates))
        return cls(int(data["n"]), tuple(layers))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MatchgateCircuit":
        return cls.from_json_dict(json.loads(text))


def validate_circuit(c: MatchgateCircuit, tol: float = GATE_TOL) -> None:
    """Check all circuit invariants; raises with the offending gate's position.

    Raises InvalidWireError for out-of-range or non-adjacent wire pairs,
    OverlappingGatesError for shared wires within a layer, and
    NotAMatchgateError when a gate's matrix fails is_matchgate (a non-unitary
    custom matrix also lands here).
    """
    if c.n < 1:
        raise InvalidWireError("circuit needs at least one wire")
    for li, layer in enumerate(c.layers):
        used: set[int] = set()
        for gi, g in enumerate(layer):
            i, j = g.wires
            if j != i + 1:
                raise InvalidWireError(
                    f"layer {li} gate {gi}: wires {g.wires} are not adjacent"
                )
            if i < 0 or j > c.n - 1:
                raise InvalidWireError(
                    f"layer {li} gate {gi}: wires {g.wires} outside [0, {c.n - 1}]"
                )
            if i in used or j in used:
                raise OverlappingGatesError(
                    f"layer {li} gate {gi}: wires {g.wires} already used in layer"
                )
            used.update(g.wires)
            try:
                ok = is_matchgate(g.to_matrix(), tol)
            except NonUnitaryError as exc:
                raise NotAMatchgateError(
                    f"layer {li} gate {gi}: {exc}"
                ) from exc
            if not ok:
                raise NotAMatchgateError(
                    f"layer {li} gate {gi}: matrix fails the matchgate test"
                )

"""Circuits whose Born distributions are the padded parity distributions.

The padded distribution of a secret s factors, after a relabeling of bit
positions, into two independent even-parity blocks: one holding the x-bits
on the support of s together with the label bit y, the other holding the
completion bit z and the off-support x-bits (the padding constraint
z = |x| + y is the same as z being the parity of the off-support bits).
Each block is produced exactly by a depth-2 brickwork of UX(pi/2) gates.

The relabeling is realized in one of two ways:

  local      a network of FSWAP gates in odd-even transposition order,
             giving a nearest-neighbour circuit of linear depth;
  non-local  the blocks-only circuit of depth 2, with the relabeling
             recorded in the plan and applied to measurement outcomes
             (swaps treated as a free resource).

Label noise at rate eta is one additional UX(t) gate on the (y, z) wire
pair with sin(t/2)**2 = eta: it mixes each outcome with the outcome whose
y and z are both flipped, and those two never carry mass simultaneously,
so the result is exactly the noisy padded distribution.  The block layout
keeps y and z adjacent (y closes block 1, z opens block 2), so no routing
fix-up is ever needed before the noise gate.
"""

import json
import math
from dataclasses import dataclass

from .bits import check_bits
from .errors import TooLargeError
from .gates import Gate2Q, MatchgateCircuit
from .simulate import DistributionTable, born_distribution, permute_bits

MAX_EMBED_BITS = 16


@dataclass(frozen=True)
class EmbeddingPlan:
    """Secret, block split, and the wire relabeling for one embedding.

    m is the size of the first even-parity block (weight of s plus one).
    transpositions lists adjacent swaps in application order; replaying
    them on 0..n+1 yields the relabeling of measured bit positions.
    """

    s: str
    eta: float
    m: int
    transpositions: tuple[tuple[int, int], ...]
    local: bool

    def __post_init__(self):
        check_bits(self.s)
        if self.m - 1 != self.s.count("1"):
            raise ValueError("block size m must be the weight of s plus one")
        object.__setattr__(
            self,
            "transpositions",
            tuple((int(i), int(j)) for i, j in self.transpositions),
        )
        for i, j in self.transpositions:
            if j != i + 1:
                raise ValueError(f"transposition ({i}, {j}) is not adjacent")

    def targets(self) -> list[int]:
        """Final position of each pre-routing wire after all transpositions."""
        size = len(self.s) + 2
        arr = list(range(size))
        for i, j in self.transpositions:
            arr[i], arr[j] = arr[j], arr[i]
        out = [0] * size
        for slot, item in enumerate(arr):
            out[item] = slot
        return out

    def to_json_dict(self) -> dict:
        return {
            "s": self.s,
            "eta": float(self.eta),
            "m": self.m,
            "transpositions": [[i, j] for i, j in self.transpositions],
            "local": self.local,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "EmbeddingPlan":
        return cls(
            s=data["s"],
            eta=float(data["eta"]),
            m=int(data["m"]),
            transpositions=tuple((i, j) for i, j in data["transpositions"]),
            local=bool(data["local"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "EmbeddingPlan":
        return cls.from_json_dict(json.loads(text))


def _brickwork_gates(k: int, offset: int) -> list[Gate2Q]:
    """Depth-2 even-parity brickwork on wires offset..offset+k-1."""
    t = math.pi / 2
    layer1 = [Gate2Q("UX", (offset + i, offset + i + 1), t=t) for i in range(0, k - 1, 2)]
    layer2 = [Gate2Q("UX", (offset + i, offset + i + 1), t=t) for i in range(1, k - 1, 2)]
    return layer1 + layer2


def parity_block_circuit(k: int) -> MatchgateCircuit:
    """Depth-2 UX(pi/2) brickwork on k wires; Born distribution is uniform
    over even-weight strings.  k = 1 gives the empty circuit.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return MatchgateCircuit.from_gates(k, _brickwork_gates(k, 0))


def _block_layout(s: str) -> tuple[int, list[int]]:
    """Block size m and the relabeling target of each pre-routing wire.

    Pre-routing order: support x-bits ascending, then y, then z, then
    off-support x-bits ascending.  Targets send the support bits home,
    y to position n, z to position n+1 and the off-support bits home.
    """
    n = len(s)
    ones = [i for i, c in enumerate(s) if c == "1"]
    zeros = [i for i, c in enumerate(s) if c == "0"]
    m = len(ones) + 1
    targets = ones + [n] + [n + 1] + zeros
    return m, targets


def _odd_even_transpositions(keys: list[int]) -> list[tuple[int, int]]:
    """Adjacent transpositions sorting keys, in odd-even transposition order.

    Swaps from one pass touch disjoint pairs, so greedy layer packing keeps
    the network depth at most len(keys) layers.
    """
    keys = list(keys)
    size = len(keys)
    out: list[tuple[int, int]] = []
    for p in range(size):
        for i in range(p % 2, size - 1, 2):
            if keys[i] > keys[i + 1]:
                keys[i], keys[i + 1] = keys[i + 1], keys[i]
                out.append((i, i + 1))
    return out


def plan_permutation(s: str) -> EmbeddingPlan:
    """Block split and routing plan for a secret (eta 0, local mode defaults)."""
    check_bits(s)
    m, targets = _block_layout(s)
    return EmbeddingPlan(
        s=s,
        eta=0.0,
        m=m,
        transpositions=tuple(_odd_even_transpositions(targets)),
        local=True,
    )


def _embedding_gates(s: str, local: bool) -> tuple[list[Gate2Q], EmbeddingPlan]:
    n = len(s)
    if n > MAX_EMBED_BITS:
        raise TooLargeError(f"secret length {n} exceeds {MAX_EMBED_BITS}")
    plan = plan_permutation(s)
    m = plan.m
    gates = _brickwork_gates(m, 0) + _brickwork_gates(n + 2 - m, m)
    if local:
        gates += [Gate2Q("FSWAP", (i, j)) for i, j in plan.transpositions]
    return gates, plan


def embed_parity(s: str, local: bool = True) -> MatchgateCircuit:
    """Circuit on n+2 wires presenting the padded parity distribution of s.

    In local mode the Born distribution equals the target directly; in
    non-local mode it equals the target after relabeling the outcome bits
    by the plan's targets.
    """
    gates, _ = _embedding_gates(s, local)
    return MatchgateCircuit.from_gates(len(s) + 2, gates)


def embed_noisy_parity(s: str, eta: float, local: bool = True) -> MatchgateCircuit:
    """embed_parity followed by a UX(t) noise gate on the (y, z) pair.

    t = 2*arcsin(sqrt(eta)) so the label-and-padding pair flips with
    probability eta.  After routing y and z sit on the last two wires; in
    non-local mode they are adjacent at (m-1, m) by the block layout.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"noise rate must be in [0, 1], got {eta}")
    n = len(s)
    gates, plan = _embedding_gates(s, local)
    t = 2.0 * math.asin(math.sqrt(eta))
    noise_wires = (n, n + 1) if local else (plan.m - 1, plan.m)
    base = MatchgateCircuit.from_gates(n + 2, gates)
    return MatchgateCircuit(n + 2, base.layers + ((Gate2Q("UX", noise_wires, t=t),),))


def embedded_distribution(s: str, eta: float = 0.0, local: bool = True) -> DistributionTable:
    """Observable distribution of the embedding: Born distribution of the
    circuit, with the plan's outcome relabeling applied in non-local mode.
    """
    d = born_distribution(embed_noisy_parity(s, eta, local))
    if not local:
        d = permute_bits(d, plan_permutation(s).targets())
    return d

"""Tests for the parity embeddings: blocks, routing plans, and exactness."""

import itertools

import numpy as np
import pytest

from mglab.dist import (
    even_parity_dist,
    fermionized_noisy_parity_dist,
    fermionized_parity_dist,
)
from mglab.embed import (
    EmbeddingPlan,
    _odd_even_transpositions,
    embed_noisy_parity,
    embed_parity,
    embedded_distribution,
    parity_block_circuit,
    plan_permutation,
)
from mglab.errors import TooLargeError
from mglab.gates import Gate2Q, MatchgateCircuit, validate_circuit
from mglab.simulate import DistributionTable, born_distribution, permute_bits, tvd

from conftest import random_circuit


def all_secrets(n: int):
    return ["".join(c) for c in itertools.product("01", repeat=n)]


# ---------------------------------------------------------------------------
# even-parity blocks
# ---------------------------------------------------------------------------

def test_single_wire_block_is_empty_circuit():
    c = parity_block_circuit(1)
    assert c.depth == 0
    assert born_distribution(c).prob("0") == 1.0


def test_two_wire_block_is_single_gate():
    c = parity_block_circuit(2)
    assert c.gate_count == 1
    d = born_distribution(c)
    assert d.prob("00") == pytest.approx(0.5) and d.prob("11") == pytest.approx(0.5)


@pytest.mark.parametrize("k", range(1, 11))
def test_block_distribution_matches_even_parity(k):
    c = parity_block_circuit(k)
    assert c.depth <= 2
    validate_circuit(c)
    assert tvd(born_distribution(c), even_parity_dist(k)) < 1e-12


# ---------------------------------------------------------------------------
# plans and the bit relabeling
# ---------------------------------------------------------------------------

def test_plan_block_size_and_permutation_validity():
    for s in ("1", "0", "1010", "1111", "0000", "011010"):
        plan = plan_permutation(s)
        assert plan.m - 1 == s.count("1")
        assert plan.m <= len(s) + 2
        assert sorted(plan.targets()) == list(range(len(s) + 2))


def test_plan_all_ones_secret():
    plan = plan_permutation("111")
    # support bits and the label are already in place; z closes the string
    assert plan.m == 4
    assert plan.targets() == [0, 1, 2, 3, 4]
    assert plan.transpositions == ()


def test_plan_all_zeros_secret():
    plan = plan_permutation("00")
    assert plan.m == 1
    # pre-routing order is [y, z, x0, x1]; y must reach position 2, z position 3
    assert plan.targets() == [2, 3, 0, 1]


def test_plan_invariant_enforced():
    with pytest.raises(ValueError):
        EmbeddingPlan(s="101", eta=0.0, m=1, transpositions=(), local=True)
    with pytest.raises(ValueError):
        EmbeddingPlan(s="1", eta=0.0, m=2, transpositions=((0, 2),), local=True)


def test_plan_json_round_trip():
    plan = plan_permutation("01101")
    back = EmbeddingPlan.from_json(plan.to_json())
    assert back == plan


def test_odd_even_network_sorts_and_layers():
    rng = np.random.default_rng(3)
    for size in (2, 5, 8, 11):
        keys = list(rng.permutation(size))
        swaps = _odd_even_transpositions(keys)
        replay = list(keys)
        for i, j in swaps:
            replay[i], replay[j] = replay[j], replay[i]
        assert replay == sorted(keys)
        packed = MatchgateCircuit.from_gates(
            size, [Gate2Q("FSWAP", (i, j)) for i, j in swaps]
        )
        assert packed.depth <= size


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_relabeled_block_product_equals_padded_table(n):
    """The plan's relabeling applied to the two-block product mass table
    reproduces the padded parity table, with no circuits involved."""
    for s in all_secrets(n):
        plan = plan_permutation(s)
        product = np.kron(
            even_parity_dist(plan.m).mass, even_parity_dist(n + 2 - plan.m).mass
        )
        relabeled = permute_bits(DistributionTable(n + 2, product), plan.targets())
        assert tvd(relabeled, fermionized_parity_dist(s)) < 1e-12


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

def test_single_bit_secret_distribution():
    d = embedded_distribution("1")
    assert d.prob("000") == pytest.approx(0.5, abs=1e-12)
    assert d.prob("110") == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("local", [True, False])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_embedding_exact_for_every_secret(n, local):
    for s in all_secrets(n):
        circuit = embed_parity(s, local)
        validate_circuit(circuit)
        assert tvd(embedded_distribution(s, 0.0, local), fermionized_parity_dist(s)) < 1e-10


@pytest.mark.parametrize("local", [True, False])
@pytest.mark.parametrize("eta", [0.0, 0.1, 0.25, 1.0])
def test_noisy_embedding_exact(eta, local):
    for n in (1, 2, 3, 4):
        for s in all_secrets(n):
            got = embedded_distribution(s, eta, local)
            want = fermionized_noisy_parity_dist(s, eta)
            assert tvd(got, want) < 1e-10


def test_full_noise_flips_label_and_pad():
    s = "101"
    flipped = embedded_distribution(s, 1.0)
    clean = fermionized_parity_dist(s)
    for i, m in enumerate(clean.mass):
        x, y, z = i >> 2, (i >> 1) & 1, i & 1
        j = (x << 2) | ((1 - y) << 1) | (1 - z)
        assert flipped.mass[j] == pytest.approx(m, abs=1e-12)


def test_noisy_circuits_validate_and_use_only_matchgates():
    for s in ("1", "0110", "10101"):
        for local in (True, False):
            c = embed_noisy_parity(s, 0.3, local)
            validate_circuit(c)
            assert all(g.kind in ("UX", "FSWAP") for g in c.gates())


def test_nonlocal_mode_depth_constant():
    for s in ("1", "100101", "111000111"):
        assert embed_parity(s, local=False).depth <= 2
        assert embed_noisy_parity(s, 0.2, local=False).depth <= 3


def test_local_mode_depth_linear():
    depths = {}
    for n in range(2, 13, 2):
        worst = 0
        rng = np.random.default_rng(n)
        for _ in range(8):
            s = "".join(str(b) for b in rng.integers(0, 2, n))
            worst = max(worst, embed_noisy_parity(s, 0.1, local=True).depth)
        depths[n] = worst
    ns = np.array(sorted(depths))
    ds = np.array([depths[n] for n in ns])
    slope, intercept = np.polyfit(ns, ds, 1)
    print(f"local depth fit: depth ~ {slope:.2f}*n + {intercept:.2f}")
    assert all(ds <= ns + 5)
    assert slope <= 1.5


def test_fswap_network_matches_outcome_relabeling():
    """Appending a transposition network acts on the Born distribution exactly
    as relabeling the outcome bits, for arbitrary circuits."""
    rng = np.random.default_rng(8)
    for n in (3, 5, 8):
        c = random_circuit(rng, n, depth=5)
        base = born_distribution(c)
        perm = list(rng.permutation(n))
        targets = [0] * n
        swaps = _odd_even_transpositions([perm.index(i) for i in range(n)])
        # replay to know where each wire ends up
        arr = list(range(n))
        for i, j in swaps:
            arr[i], arr[j] = arr[j], arr[i]
        for slot, item in enumerate(arr):
            targets[item] = slot
        appended = MatchgateCircuit(
            n, c.layers + tuple((Gate2Q("FSWAP", (i, j)),) for i, j in swaps)
        )
        np.testing.assert_allclose(
            born_distribution(appended).mass,
            permute_bits(base, targets).mass,
            atol=1e-12,
        )


def test_embed_guard():
    with pytest.raises(TooLargeError):
        embed_parity("0" * 17)

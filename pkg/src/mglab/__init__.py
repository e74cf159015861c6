"""mglab: exact desk-scale experiments on matchgate Born distributions.

Everything here is brute-force-verifiable: dense statevector simulation of
nearest-neighbour matchgate circuits, Pfaffian amplitudes of Gaussian
generating matrices, the parity distribution family and its even-parity
paddings, sample and statistical-query oracle presenters, circuit
embeddings of (noisy) parities, and the learner suite that exercises the
sample-versus-query separation on those targets.
"""

from .gates import (
    Gate2Q,
    MatchgateCircuit,
    fswap_gate,
    is_matchgate,
    ux_gate,
    validate_circuit,
)
from .simulate import (
    DistributionTable,
    StateVector,
    apply_circuit,
    born_distribution,
    permute_bits,
    sample,
    tvd,
)
from .pfaffian import GaussianState, SkewMatrix, amplitude, normalize, pfaffian, restrict
from .dist import (
    Evaluator,
    Generator,
    even_parity_dist,
    fermionized_noisy_parity_dist,
    fermionized_parity_dist,
    noisy_parity_dist,
    padded_labels,
    parity_dist,
    parity_label,
    reduce_generator,
    to_fermionized_evaluator,
    to_parity_evaluator,
)
from .oracle import (
    FermionizedStatOracle,
    SampleOracle,
    StatOracle,
    StatQuery,
    indicator,
    parity_correlator,
    query_fermionized_via_parity,
    split_fermionized_query,
)
from .embed import (
    EmbeddingPlan,
    embed_noisy_parity,
    embed_parity,
    embedded_distribution,
    parity_block_circuit,
    plan_permutation,
)
from .learn import (
    LearnReport,
    PacParams,
    evaluator_to_pac,
    gauss_learner,
    identify_secret_from_distribution,
    lpn_ml_learner,
    pac_error,
    pac_error_estimate,
    sq_parity_learner,
)
from .seeds import derive_seed

__version__ = "0.1.0"

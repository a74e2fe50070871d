"""Causal structure discovery over independence oracles.

Learns the skeleton and invariant arrowheads of a sparse maximal ancestral
graph using polynomially many conditional-independence queries, with
brute-force reference algorithms for validation and benchmarking.
"""

from .graph import (
    ARROW,
    CIRCLE,
    LATENT,
    OBSERVED,
    SELECTION,
    TAIL,
    MixedGraph,
    ancestors,
    anteriors,
    descendants,
    skeleton,
    validate_ancestral,
    validate_maximal,
)
from .io import parse_graph, read_graph, serialize_graph, write_graph
from .separation import (
    IndependenceOracle,
    IndependenceRecord,
    m_separated,
    m_separated_bruteforce,
    minimize_sepset,
    oracle_from_mag,
    single_node_dependence,
)
from .models import (
    CausalModel,
    GenConfig,
    marginalize_mag,
    move_to_latent,
    project_to_mag,
    random_model,
)
from .discovery import (
    AugmentedSkeleton,
    DiscoveryStats,
    Hierarchy,
    IndependenceSet,
    augment,
    dsep_candidates,
    fci_plus_run,
    hierarchy,
    pc_skeleton,
    resolve_candidate,
)
from .baseline import (
    ComparisonReport,
    compare_outputs,
    dsep_links,
    dsep_standard_form,
    exhaustive_dsep_search,
    is_dsep_link,
)

__version__ = "0.1.0"

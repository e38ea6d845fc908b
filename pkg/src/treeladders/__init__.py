"""Desk-scale ladder systems on labeled trees and their derived graphs."""

from .builder import (
    BuildResult,
    BuilderState,
    Challenge,
    Decision,
    DefeatOutcome,
    DefeatSummary,
    decide_coloring,
    defeat_colorings,
    extend_coherent,
    extend_sparse,
    extend_transitive,
    full_label_ladder,
    label_quantile_chain,
    node_decides,
)
from .errors import (
    ExhaustedError,
    GenerationFailedError,
    InvalidArgumentError,
    InvalidChallengeError,
    InvalidLadderError,
    InvalidPathError,
    InvalidTreeError,
    MissingEtaError,
    MissingLadderEntryError,
    PreconditionError,
    ResourceLimitError,
    TreeLaddersError,
)
from .generators import (
    generate_system,
    random_coherent_system,
    random_coloring,
    random_sparse_system,
    random_system,
    random_transitive_system,
    random_tree,
)
from .graphcore import (
    Coloring,
    DefeaterColoring,
    HEmbedding,
    SpecialCycle,
    chromatic_number,
    clique_chain_check,
    constant_coloring,
    defeater_coloring,
    find_h_pattern,
    find_mono_clique,
    find_special_cycle,
    find_triangle,
    gamma_covered,
    is_vee,
    maximal_cliques,
    min_pair_connectivity_over,
    pair_connectivity,
    reduce_path,
    separates,
    separator,
    validate_path,
)
from .graphs import (
    LadderGraph,
    TreeGraph,
    comparability_graph,
    covered,
    covering_path,
    min_cover_label,
)
from .ladder import (
    LadderSystem,
    OrdinalLadder,
    TrueLadder,
    assert_finite_reading,
    derive_ladder_from_ordinal,
    derive_true_ladder,
    graph_of,
    is_coherent,
    is_sparse,
    is_transitive,
)
from .tree import (
    Tree,
    below_set,
    generate_ts_tree,
    has_branching_property,
    level_set,
    node_set,
)

__version__ = "0.1.0"

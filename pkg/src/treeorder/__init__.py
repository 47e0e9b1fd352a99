"""Sequence orders from uniform spanning trees on token lattices.

Generates, validates, and benchmarks autoregressive visit orders over 2D
token grids: raster scan, random permutations, and tree-traversal orders,
plus rejection-sampled orders that complete a masked region as a postfix.
"""

from .bench import BenchConfig, TrialStats, acceptance_experiment
from .completion import (
    CompletionResult,
    check_postfix_condition,
    combined_tree,
    completion_order,
    farthest_root,
)
from .entropy import (
    EntropyProfile,
    GibbsModel,
    distance_entropy_profile,
    exact_conditional_entropy,
    position_entropy_map,
    sequence_entropy_profile,
)
from .lattice import (
    Lattice,
    Region,
    Vertex,
    boundary,
    complement_region,
    full_region,
    is_connected,
    make_lattice,
    manhattan,
    neighbors,
    region_of,
)
from .masking import Mask, random_connected_mask, read_mask, write_mask
from .orders import (
    OrderKind,
    make_order,
    raster_order,
    random_permutation_order,
    read_order,
    star_train_order,
    validate_order,
    write_order,
)
from .rng import Rng, splitmix64, substream_seed
from .spanning import (
    SpanningTree,
    count_spanning_trees,
    depth_map,
    enumerate_spanning_trees,
    log_count_per_vertex,
    wilson_ust,
)
from .traversal import (
    SequenceOrder,
    bfs_order,
    dfs_order,
    last_dfs_vertex,
    max_depth_vertices,
)

__version__ = "0.1.0"

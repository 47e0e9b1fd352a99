"""Sequence orders for postfix completion of a masked lattice.

Rejection-samples a spanning tree of the unmasked region whose traversal
reaches its maximum depth on the mask boundary, then spans the mask from a
root adjacent to that deepest front.  The concatenated traversal puts every
unmasked vertex before every masked one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .errors import (
    AllCornersMaskedError,
    DisconnectedComplementError,
    DisconnectedMaskError,
    EmptyMaskError,
)
from .lattice import (
    Lattice,
    Region,
    Vertex,
    boundary,
    complement_region,
    is_connected,
    manhattan,
    neighbors,
)
from .rng import Rng
from .spanning import SpanningTree, depth_map, region_csr, wilson_ust
from .traversal import (
    SequenceOrder,
    bfs_order,
    dfs_order,
    last_dfs_vertex,
    max_depth_vertices,
)

Traversal = Literal["bfs", "dfs"]
RootStrategy = Literal["farthest", "random"]

DEFAULT_MAX_TRIALS = 100


@dataclass(frozen=True)
class CompletionResult:
    """Outcome of the rejection sampler.

    On acceptance, `order` covers the full lattice with the unmasked region
    as a strict prefix, and the two constituent trees are attached for
    inspection.
    """

    order: SequenceOrder | None
    trials: int
    accepted: bool
    prefix_tree: SpanningTree | None = None
    mask_tree: SpanningTree | None = None


def farthest_root(lattice: Lattice, mask: Region) -> Vertex:
    """Unmasked corner with maximal mean Manhattan distance to the boundary.

    Ties break toward the smallest raster index.  Distances are compared as
    integer sums, so ties are exact.
    """
    corners = [c for c in lattice.corners() if c not in mask]
    if not corners:
        raise AllCornersMaskedError("every corner is masked")
    bnd = sorted(boundary(lattice, mask))
    best = corners[0]
    best_sum = -1
    for c in corners:
        total = sum(manhattan(v, c) for v in bnd)
        if total > best_sum:
            best, best_sum = c, total
    return best


def check_postfix_condition(tree: SpanningTree, mask: Region) -> bool:
    """True iff every masked vertex lies deeper than every unmasked vertex."""
    depths = depth_map(tree)
    min_masked = min(
        (d for v, d in depths.items() if v in mask.vertices), default=None
    )
    if min_masked is None:
        return True
    max_unmasked = max(
        (d for v, d in depths.items() if v not in mask.vertices), default=-1
    )
    return min_masked > max_unmasked


def combined_tree(prefix_tree: SpanningTree, mask_tree: SpanningTree) -> SpanningTree:
    """Join the two trees by parenting the mask root to a deepest neighbor.

    The mask root attaches to its smallest-raster neighbor among the prefix
    tree's maximum-depth vertices, which preserves the postfix depth
    condition on the joined tree.
    """
    lattice = prefix_tree.region.lattice
    deepest = max_depth_vertices(prefix_tree)
    anchors = sorted(
        v for v in neighbors(lattice, mask_tree.root) if v in deepest
    )
    if not anchors:
        raise ValueError("mask root is not adjacent to a maximum-depth vertex")
    parent = dict(prefix_tree.parent)
    parent.update(mask_tree.parent)
    parent[mask_tree.root] = anchors[0]
    region = Region(
        lattice.h,
        lattice.w,
        prefix_tree.region.vertices | mask_tree.region.vertices,
    )
    return SpanningTree(prefix_tree.root, parent, region)


def _validate_mask(lattice: Lattice, mask: Region) -> Region:
    if len(mask) == 0:
        raise EmptyMaskError("mask must be nonempty")
    if not is_connected(lattice, mask):
        raise DisconnectedMaskError("mask region is disconnected")
    if all(c in mask.vertices for c in lattice.corners()):
        raise AllCornersMaskedError("every corner is masked")
    comp = complement_region(lattice, mask)
    if not is_connected(lattice, comp):
        raise DisconnectedComplementError("unmasked region is disconnected")
    return comp


@dataclass
class _Prepared:
    """Per-mask precomputation shared across strategies and trials."""

    lattice: Lattice
    mask: Region
    comp: Region
    indptr: np.ndarray
    indices: np.ndarray
    verts: tuple[Vertex, ...]
    local: dict[Vertex, int]
    in_boundary: np.ndarray
    unmasked_corners: list[Vertex]


def prepare(lattice: Lattice, mask: Region) -> _Prepared:
    comp = _validate_mask(lattice, mask)
    indptr, indices, verts = region_csr(comp)
    local = {v: i for i, v in enumerate(verts)}
    in_boundary = np.zeros(len(verts), dtype=np.bool_)
    for v in boundary(lattice, mask):
        in_boundary[local[v]] = True
    corners = [c for c in lattice.corners() if c not in mask.vertices]
    return _Prepared(
        lattice, mask, comp, indptr, indices, verts, local, in_boundary, corners
    )


def select_root(prep: _Prepared, root_strategy: RootStrategy, rng: Rng) -> Vertex:
    """Root of the unmasked tree; drawn once, before the rejection loop."""
    if root_strategy == "farthest":
        return farthest_root(prep.lattice, prep.mask)
    return prep.unmasked_corners[rng.randrange(len(prep.unmasked_corners))]


def run_trials(
    prep: _Prepared,
    root: Vertex,
    traversal: Traversal,
    max_trials: int,
    rng: Rng,
) -> tuple[int, bool, np.ndarray]:
    """Run the rejection loop; returns (trials, accepted, local parent array)."""
    return _kernels.completion_trials(
        prep.indptr,
        prep.indices,
        prep.local[root],
        prep.in_boundary,
        traversal == "dfs",
        max_trials,
        rng.state,
    )


def completion_order(
    lattice: Lattice,
    mask: Region,
    rng: Rng,
    traversal: Traversal = "bfs",
    root_strategy: RootStrategy = "farthest",
    max_trials: int = DEFAULT_MAX_TRIALS,
) -> CompletionResult:
    """Sample a full-lattice order with the unmasked region as prefix.

    Follows the rejection scheme: resample the unmasked tree until its
    deepest front touches the mask boundary (BFS) or its last-visited vertex
    does (DFS), then root the mask tree next to that front and concatenate
    the two traversals.
    """
    prep = prepare(lattice, mask)
    root = select_root(prep, root_strategy, rng)
    trials, accepted, parent = run_trials(prep, root, traversal, max_trials, rng)
    if not accepted:
        return CompletionResult(None, trials, False)
    parent_map = {
        prep.verts[i]: prep.verts[parent[i]]
        for i in range(len(prep.verts))
        if prep.verts[i] != root
    }
    prefix_tree = SpanningTree(root, parent_map, prep.comp)
    if traversal == "bfs":
        anchors = max_depth_vertices(prefix_tree)
    else:
        anchors = {last_dfs_vertex(prefix_tree)}
    mask_roots = sorted(
        {
            v
            for a in anchors
            for v in neighbors(lattice, a)
            if v in mask.vertices
        }
    )
    mask_root = mask_roots[rng.randrange(len(mask_roots))]
    mask_tree = wilson_ust(mask, mask_root, rng)
    walk = bfs_order if traversal == "bfs" else dfs_order
    prefix_part = walk(prefix_tree)
    mask_part = walk(mask_tree)
    order = SequenceOrder(
        lattice.h, lattice.w, prefix_part.positions + mask_part.positions
    )
    return CompletionResult(order, trials, True, prefix_tree, mask_tree)

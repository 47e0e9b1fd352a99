"""Uniform spanning trees on lattice regions.

Sampling uses Wilson's loop-erased random walk (exactly uniform); tiny
regions can be enumerated outright as a test oracle; exact counting goes
through a Laplacian cofactor with fraction-free integer elimination.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DisconnectedRegionError, InvalidRootError, SizeLimitError
from .lattice import Lattice, Region, Vertex, full_region, is_connected, neighbors
from .rng import Rng

ENUMERATION_LIMIT = 12


@dataclass(frozen=True)
class SpanningTree:
    """Rooted spanning tree of a region, stored as a parent map.

    The root is absent from the parent map, so the map holds exactly
    |region| - 1 entries, one per tree edge.
    """

    root: Vertex
    parent: dict[Vertex, Vertex]
    region: Region

    def children(self) -> dict[Vertex, list[Vertex]]:
        """Child lists per vertex, each ascending by raster index."""
        out: dict[Vertex, list[Vertex]] = {v: [] for v in self.region.sorted_vertices}
        for c in sorted(self.parent):
            out[self.parent[c]].append(c)
        return out

    def is_valid(self) -> bool:
        """Check the spanning-tree invariants (size, edges, reachability)."""
        verts = self.region.vertices
        if self.root not in verts:
            return False
        if len(self.parent) != len(verts) - 1:
            return False
        if self.root in self.parent:
            return False
        for c, p in self.parent.items():
            if c not in verts or p not in verts:
                return False
            if abs(c.row - p.row) + abs(c.col - p.col) != 1:
                return False
        # every vertex must reach the root without revisiting
        for v in verts:
            seen = set()
            while v != self.root:
                if v in seen or v not in self.parent:
                    return False
                seen.add(v)
                v = self.parent[v]
        return True

    def canonical_edges(self) -> tuple[tuple[int, int], ...]:
        """Unrooted edge set as sorted (raster, raster) pairs."""
        w = self.region.w
        out = []
        for c, p in self.parent.items():
            a = c.row * w + c.col
            b = p.row * w + p.col
            out.append((a, b) if a < b else (b, a))
        return tuple(sorted(out))


def region_csr(region: Region) -> tuple[np.ndarray, np.ndarray, tuple[Vertex, ...]]:
    """CSR adjacency of the induced subgraph, local ids in raster order."""
    verts = region.sorted_vertices
    local = {v: i for i, v in enumerate(verts)}
    lattice = region.lattice
    indptr = np.zeros(len(verts) + 1, dtype=np.int32)
    cols: list[int] = []
    for i, v in enumerate(verts):
        for nb in neighbors(lattice, v):
            if nb in local:
                cols.append(local[nb])
        indptr[i + 1] = len(cols)
    return indptr, np.asarray(cols, dtype=np.int32), verts


def wilson_ust(region: Region, root: Vertex, rng: Rng) -> SpanningTree:
    """Sample a uniformly random spanning tree of a connected region."""
    if root not in region:
        raise InvalidRootError(f"root {root} not in region")
    if not is_connected(region.lattice, region):
        raise DisconnectedRegionError("region is not connected")
    indptr, indices, verts = region_csr(region)
    parent = _kernels.wilson_parent(indptr, indices, verts.index(root), rng.state)
    parent_map = {
        verts[i]: verts[parent[i]] for i in range(len(verts)) if verts[i] != root
    }
    return SpanningTree(root, parent_map, region)


def depth_map(tree: SpanningTree) -> dict[Vertex, int]:
    """Depth of every vertex (root depth 0)."""
    depths = {tree.root: 0}
    children = tree.children()
    queue = deque([tree.root])
    while queue:
        v = queue.popleft()
        for c in children[v]:
            depths[c] = depths[v] + 1
            queue.append(c)
    return depths


def enumerate_spanning_trees(region: Region) -> list[tuple[tuple[int, int], ...]]:
    """All spanning trees as canonical unrooted edge sets, sorted.

    Each tree is a sorted tuple of (raster, raster) edges.  Guarded to
    regions of at most ENUMERATION_LIMIT vertices.
    """
    n = len(region)
    if n > ENUMERATION_LIMIT:
        raise SizeLimitError(f"enumeration limited to {ENUMERATION_LIMIT} vertices")
    if n == 0:
        return []
    if n == 1:
        return [()]
    w = region.w
    edges = [
        (u.row * w + u.col, v.row * w + v.col) for u, v in region.induced_edges()
    ]
    members = {v.row * w + v.col for v in region.vertices}
    rank = {m: i for i, m in enumerate(sorted(members))}
    trees = []
    for combo in itertools.combinations(edges, n - 1):
        # union-find: n-1 edges span iff they form a single component
        uf = list(range(n))

        def find(a: int) -> int:
            while uf[a] != a:
                uf[a] = uf[uf[a]]
                a = uf[a]
            return a

        parts = n
        for a, b in combo:
            ra, rb = find(rank[a]), find(rank[b])
            if ra != rb:
                uf[ra] = rb
                parts -= 1
        if parts == 1:
            trees.append(combo)
    trees.sort()
    return trees


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _reduced_laplacian(region: Region) -> list[list[int]]:
    """Laplacian of the induced subgraph with row/column 0 deleted."""
    indptr, indices, verts = region_csr(region)
    n = len(verts)
    lap = [[0] * n for _ in range(n)]
    for i in range(n):
        lap[i][i] = int(indptr[i + 1] - indptr[i])
        for j in indices[indptr[i] : indptr[i + 1]]:
            lap[i][int(j)] = -1
    return [row[1:] for row in lap[1:]]


def count_spanning_trees(region: Region) -> int:
    """Exact spanning-tree count via a cofactor of the graph Laplacian.

    Returns 0 for disconnected regions (the determinant vanishes).
    """
    n = len(region)
    if n == 0:
        return 0
    if n == 1:
        return 1
    return _bareiss_det(_reduced_laplacian(region))


EXACT_LOG_COUNT_LIMIT = 6
TREE_GROWTH_CONSTANT = 1.1662  # per-vertex log-count limit of the square lattice


def log_count_per_vertex(n: int) -> float:
    """ln(spanning-tree count of the n x n lattice) / n^2.

    Exact integer counting is used up to EXACT_LOG_COUNT_LIMIT; beyond that
    the float log-determinant of the reduced Laplacian takes over (the two
    are cross-checked where both are available).
    """
    if not 2 <= n <= 16:
        raise SizeLimitError("n must be in [2, 16]")
    region = full_region(Lattice(n, n))
    reduced = np.array(_reduced_laplacian(region), dtype=np.float64)
    sign, logdet = np.linalg.slogdet(reduced)
    if sign <= 0:
        raise ArithmeticError("reduced Laplacian must have positive determinant")
    float_value = float(logdet) / (n * n)
    if n <= EXACT_LOG_COUNT_LIMIT:
        exact = count_spanning_trees(region)
        exact_value = math.log(exact) / (n * n)
        if abs(exact_value - float_value) > 1e-9:
            raise ArithmeticError(
                f"exact/float log-count disagree at n={n}: "
                f"{exact_value} vs {float_value}"
            )
        return exact_value
    return float_value

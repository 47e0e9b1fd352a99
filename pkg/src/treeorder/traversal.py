"""Deterministic BFS/DFS visit orders of rooted spanning trees.

Ties among children of one parent always break toward the smaller raster
index, so identical trees give bit-identical orders.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .lattice import Vertex
from .spanning import SpanningTree, depth_map


@dataclass(frozen=True)
class SequenceOrder:
    """A visit order over lattice positions (a permutation of its region)."""

    h: int
    w: int
    positions: tuple[Vertex, ...]

    def __len__(self) -> int:
        return len(self.positions)

    def raster_indices(self) -> list[int]:
        return [v.row * self.w + v.col for v in self.positions]


def bfs_order(tree: SpanningTree) -> SequenceOrder:
    """FIFO breadth-first order; children enqueued in ascending raster index."""
    children = tree.children()
    out = []
    queue = deque([tree.root])
    while queue:
        v = queue.popleft()
        out.append(v)
        queue.extend(children[v])
    return SequenceOrder(tree.region.h, tree.region.w, tuple(out))


def dfs_order(tree: SpanningTree) -> SequenceOrder:
    """Preorder depth-first order; children explored in ascending raster index."""
    children = tree.children()
    out = []
    stack = [tree.root]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(reversed(children[v]))
    return SequenceOrder(tree.region.h, tree.region.w, tuple(out))


def max_depth_vertices(tree: SpanningTree) -> set[Vertex]:
    """All vertices at the tree's maximum depth."""
    depths = depth_map(tree)
    dmax = max(depths.values())
    return {v for v, d in depths.items() if d == dmax}


def last_dfs_vertex(tree: SpanningTree) -> Vertex:
    """Final vertex of the preorder DFS traversal."""
    return dfs_order(tree).positions[-1]

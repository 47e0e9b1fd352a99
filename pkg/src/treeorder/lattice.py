"""The 2D taxicab lattice of token positions: adjacency, regions, connectivity.

Vertices are (row, col) pairs; the raster index row*w + col is the canonical
linearization, and tuple ordering on Vertex coincides with raster ordering.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import (
    EmptyComplementError,
    InvalidDimensionError,
    InvalidVertexError,
)


class Vertex(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Lattice:
    """h x w grid of vertices, 4-connected (Manhattan adjacency)."""

    h: int
    w: int

    def __post_init__(self) -> None:
        if self.h < 2 or self.w < 2:
            raise InvalidDimensionError(
                f"lattice must be at least 2x2, got {self.h}x{self.w}"
            )

    @property
    def n(self) -> int:
        return self.h * self.w

    @property
    def edge_count(self) -> int:
        return self.h * (self.w - 1) + (self.h - 1) * self.w

    def in_bounds(self, v: Vertex) -> bool:
        return 0 <= v.row < self.h and 0 <= v.col < self.w

    def raster(self, v: Vertex) -> int:
        return v.row * self.w + v.col

    def vertex(self, raster_index: int) -> Vertex:
        if not 0 <= raster_index < self.n:
            raise InvalidVertexError(f"raster index {raster_index} out of range")
        return Vertex(raster_index // self.w, raster_index % self.w)

    def vertices(self) -> list[Vertex]:
        return [Vertex(r, c) for r in range(self.h) for c in range(self.w)]

    def corners(self) -> tuple[Vertex, Vertex, Vertex, Vertex]:
        h, w = self.h, self.w
        return (Vertex(0, 0), Vertex(0, w - 1), Vertex(h - 1, 0), Vertex(h - 1, w - 1))

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        """All lattice edges as (u, v) with raster(u) < raster(v)."""
        out = []
        for r in range(self.h):
            for c in range(self.w):
                if c + 1 < self.w:
                    out.append((Vertex(r, c), Vertex(r, c + 1)))
                if r + 1 < self.h:
                    out.append((Vertex(r, c), Vertex(r + 1, c)))
        return out


def make_lattice(h: int, w: int) -> Lattice:
    return Lattice(h, w)


def neighbors(lattice: Lattice, v: Vertex) -> list[Vertex]:
    """In-bounds 4-neighbors of v, ascending by raster index."""
    if not lattice.in_bounds(v):
        raise InvalidVertexError(f"vertex {v} outside {lattice.h}x{lattice.w} lattice")
    r, c = v
    out = []
    # this enumeration order is already raster-ascending
    if r > 0:
        out.append(Vertex(r - 1, c))
    if c > 0:
        out.append(Vertex(r, c - 1))
    if c + 1 < lattice.w:
        out.append(Vertex(r, c + 1))
    if r + 1 < lattice.h:
        out.append(Vertex(r + 1, c))
    return out


def manhattan(u: Vertex, v: Vertex) -> int:
    return abs(u.row - v.row) + abs(u.col - v.col)


@dataclass(frozen=True)
class Region:
    """A subset of lattice vertices together with the parent lattice dims."""

    h: int
    w: int
    vertices: frozenset[Vertex]

    def __post_init__(self) -> None:
        for v in self.vertices:
            if not (0 <= v.row < self.h and 0 <= v.col < self.w):
                raise InvalidVertexError(f"region vertex {v} outside {self.h}x{self.w}")

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: Vertex) -> bool:
        return v in self.vertices

    @cached_property
    def sorted_vertices(self) -> tuple[Vertex, ...]:
        return tuple(sorted(self.vertices))

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.h, self.w)

    def induced_edges(self) -> list[tuple[Vertex, Vertex]]:
        """Lattice edges with both endpoints in the region, canonical order."""
        out = []
        for u in self.sorted_vertices:
            right = Vertex(u.row, u.col + 1)
            down = Vertex(u.row + 1, u.col)
            if right.col < self.w and right in self.vertices:
                out.append((u, right))
            if down.row < self.h and down in self.vertices:
                out.append((u, down))
        return out


def region_of(lattice: Lattice, vertices: Iterable[Vertex]) -> Region:
    return Region(lattice.h, lattice.w, frozenset(vertices))


def full_region(lattice: Lattice) -> Region:
    return Region(lattice.h, lattice.w, frozenset(lattice.vertices()))


def complement_region(lattice: Lattice, region: Region) -> Region:
    keep = frozenset(lattice.vertices()) - region.vertices
    return Region(lattice.h, lattice.w, keep)


def is_connected(lattice: Lattice, region: Region) -> bool:
    """True iff the induced subgraph on the region is connected.

    The empty region counts as connected.
    """
    if not region.vertices:
        return True
    members = region.vertices
    start = next(iter(region.sorted_vertices))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for nb in neighbors(lattice, u):
            if nb in members and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == len(members)


def boundary(lattice: Lattice, mask: Region) -> set[Vertex]:
    """Unmasked vertices adjacent to at least one masked vertex."""
    if len(mask) >= lattice.n:
        raise EmptyComplementError("mask covers the entire lattice")
    out: set[Vertex] = set()
    for u in mask.vertices:
        for nb in neighbors(lattice, u):
            if nb not in mask.vertices:
                out.add(nb)
    return out

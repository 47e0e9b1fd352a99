"""The three sequence-order families and their interchange format.

Raster scan, uniformly random permutations, and the tree-based training
orders (uniform spanning tree from a random corner, read off by BFS).
Orders serialize to the line-oriented STAR-ORDER v1 text format.
"""

from __future__ import annotations

import enum
from pathlib import Path

from .errors import (
    DimensionMismatchError,
    MalformedFileError,
    NonPermutationError,
)
from .lattice import Lattice, Region, full_region
from .rng import Rng
from .spanning import wilson_ust
from .traversal import SequenceOrder, bfs_order


class OrderKind(enum.Enum):
    RASTER = "raster"
    RANDOM_PERMUTATION = "random_permutation"
    SPANNING_TREE = "spanning_tree"


def raster_order(lattice: Lattice) -> SequenceOrder:
    """Row-major left-to-right, top-to-bottom order."""
    return SequenceOrder(lattice.h, lattice.w, tuple(lattice.vertices()))


def random_permutation_order(lattice: Lattice, rng: Rng) -> SequenceOrder:
    """Uniformly random permutation of all vertices (Fisher-Yates)."""
    idx = list(range(lattice.n))
    rng.shuffle(idx)
    return SequenceOrder(lattice.h, lattice.w, tuple(lattice.vertex(i) for i in idx))


def star_train_order(lattice: Lattice, rng: Rng) -> SequenceOrder:
    """Training order: BFS of a uniform spanning tree rooted at a random corner."""
    corners = lattice.corners()
    root = corners[rng.randrange(4)]
    tree = wilson_ust(full_region(lattice), root, rng)
    return bfs_order(tree)


def make_order(kind: OrderKind, lattice: Lattice, rng: Rng) -> SequenceOrder:
    if kind is OrderKind.RASTER:
        return raster_order(lattice)
    if kind is OrderKind.RANDOM_PERMUTATION:
        return random_permutation_order(lattice, rng)
    return star_train_order(lattice, rng)


def validate_order(order: SequenceOrder, region: Region | None = None) -> bool:
    """True iff the order is a permutation of its region (full lattice by default)."""
    if region is None:
        expected = frozenset(Lattice(order.h, order.w).vertices())
    else:
        if (region.h, region.w) != (order.h, order.w):
            return False
        expected = region.vertices
    return len(order.positions) == len(expected) and set(order.positions) == expected


ORDER_HEADER = "STAR-ORDER v1"


def write_order(order: SequenceOrder, destination: str | Path) -> None:
    """Write the 3-line STAR-ORDER v1 file (LF newlines, full permutation)."""
    if not validate_order(order):
        raise NonPermutationError("order is not a permutation of its lattice")
    payload = " ".join(str(i) for i in order.raster_indices())
    text = f"{ORDER_HEADER}\n{order.h} {order.w}\n{payload}\n"
    with open(destination, "w", newline="\n") as fh:
        fh.write(text)


def read_order(source: str | Path) -> SequenceOrder:
    """Parse and validate a STAR-ORDER v1 file."""
    with open(source, "r", newline="") as fh:
        lines = fh.read().split("\n")
    if len(lines) < 3 or lines[0] != ORDER_HEADER:
        raise MalformedFileError("missing or unknown STAR-ORDER header")
    dims = lines[1].split()
    if len(dims) != 2:
        raise MalformedFileError("dimension line must hold two integers")
    try:
        h, w = int(dims[0]), int(dims[1])
    except ValueError as exc:
        raise MalformedFileError("dimension line must hold two integers") from exc
    if h < 2 or w < 2:
        raise DimensionMismatchError(f"invalid lattice dimensions {h}x{w}")
    try:
        idx = [int(tok) for tok in lines[2].split()]
    except ValueError as exc:
        raise MalformedFileError("payload must hold integers") from exc
    n = h * w
    if len(idx) != n:
        raise DimensionMismatchError(f"expected {n} indices, found {len(idx)}")
    if any(i < 0 or i >= n for i in idx):
        raise DimensionMismatchError("raster index out of range")
    if len(set(idx)) != n:
        raise NonPermutationError("payload repeats a raster index")
    lattice = Lattice(h, w)
    return SequenceOrder(h, w, tuple(lattice.vertex(i) for i in idx))

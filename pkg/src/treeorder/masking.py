"""Random connected masks for inpainting-style postfix completion.

A mask grows from a random start vertex by repeatedly expanding a uniformly
chosen masked cell into a uniform unmasked neighbor; the whole construction
retries until the complement is connected and at least one corner stays
unmasked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatchError,
    GenerationFailureError,
    InvalidRatioError,
    MalformedFileError,
    MaskInvariantError,
)
from .lattice import (
    Lattice,
    Region,
    complement_region,
    is_connected,
    region_of,
)
from .rng import Rng

DEFAULT_MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class Mask:
    """Connected vertex subset to inpaint, with its requested ratio."""

    region: Region
    ratio: float

    @property
    def h(self) -> int:
        return self.region.h

    @property
    def w(self) -> int:
        return self.region.w

    def __len__(self) -> int:
        return len(self.region)


def mask_size(lattice: Lattice, ratio: float) -> int:
    """ceil(ratio * N), guarded against float fuzz on integral products."""
    return math.ceil(ratio * lattice.n - 1e-9)


def random_connected_mask(
    lattice: Lattice,
    ratio: float,
    rng: Rng,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Mask:
    """Grow a connected mask of exactly ceil(ratio*N) vertices.

    Start vertex uniform over V; each growth step picks a uniform masked
    cell that still has an unmasked neighbor and absorbs a uniform unmasked
    neighbor of it.  Constructions whose complement is disconnected or which
    cover all four corners are rejected wholesale; on 16x16 this needs only
    a handful of attempts even at ratio 0.9.
    """
    if not 0.0 < ratio < 1.0:
        raise InvalidRatioError(f"ratio must lie in (0, 1), got {ratio}")
    n = lattice.n
    target = mask_size(lattice, ratio)
    if target > n - 4:
        raise InvalidRatioError(
            f"mask of {target} vertices leaves no room for an unmasked corner"
        )
    flags, _ = _kernels.grow_mask(lattice.h, lattice.w, target, max_attempts, rng.state)
    if flags.shape[0] == 0:
        raise GenerationFailureError(
            f"no valid mask after {max_attempts} attempts (ratio {ratio})"
        )
    region = region_of(lattice, (lattice.vertex(int(i)) for i in np.nonzero(flags)[0]))
    return Mask(region, ratio)


MASK_HEADER = "STAR-MASK v1"


def write_mask(mask: Mask, destination: str | Path) -> None:
    """Write the 4-line STAR-MASK v1 file (LF newlines)."""
    w = mask.w
    payload = " ".join(str(v.row * w + v.col) for v in mask.region.sorted_vertices)
    text = f"{MASK_HEADER}\n{mask.h} {mask.w}\n{mask.ratio!r}\n{payload}\n"
    with open(destination, "w", newline="\n") as fh:
        fh.write(text)


def read_mask(source: str | Path) -> Mask:
    """Parse a STAR-MASK v1 file and re-validate every mask invariant."""
    with open(source, "r", newline="") as fh:
        lines = fh.read().split("\n")
    if len(lines) < 4 or lines[0] != MASK_HEADER:
        raise MalformedFileError("missing or unknown STAR-MASK header")
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
        ratio = float(lines[2])
    except ValueError as exc:
        raise MalformedFileError("ratio line must hold a decimal") from exc
    try:
        idx = [int(tok) for tok in lines[3].split()]
    except ValueError as exc:
        raise MalformedFileError("payload must hold integers") from exc
    lattice = Lattice(h, w)
    n = lattice.n
    if any(i < 0 or i >= n for i in idx):
        raise DimensionMismatchError("raster index out of range")
    if len(set(idx)) != len(idx):
        raise MaskInvariantError("mask repeats a vertex")
    if not 0.0 < ratio < 1.0:
        raise MaskInvariantError(f"ratio {ratio} outside (0, 1)")
    if len(idx) != mask_size(lattice, ratio):
        raise MaskInvariantError(
            f"mask holds {len(idx)} vertices, ratio {ratio} implies "
            f"{mask_size(lattice, ratio)}"
        )
    region = region_of(lattice, (lattice.vertex(i) for i in idx))
    if not is_connected(lattice, region):
        raise MaskInvariantError("mask region is disconnected")
    if not is_connected(lattice, complement_region(lattice, region)):
        raise MaskInvariantError("mask complement is disconnected")
    if all(c in region.vertices for c in lattice.corners()):
        raise MaskInvariantError("mask covers all four corners")
    return Mask(region, ratio)

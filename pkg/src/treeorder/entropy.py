"""Exact conditional-entropy studies on an enumerable Gibbs surrogate.

A binary-token Gibbs distribution with an edge-agreement coupling stands in
for a trained predictor at desk scale: with at most 16 vertices the joint
table is explicit, so every conditional prediction entropy is exact rather
than estimated.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import InvalidTargetError, SizeLimitError
from .lattice import Lattice, Region, Vertex, full_region, manhattan
from .orders import OrderKind, make_order
from .rng import Rng
from .traversal import SequenceOrder

MAX_MODEL_VERTICES = 16


def binary_entropy_bits(p: float) -> float:
    """Entropy of a Bernoulli(p) in bits."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-(p * np.log2(p) + (1.0 - p) * np.log2(1.0 - p)))


class GibbsModel:
    """p(x) proportional to exp(J * #agreeing edges + sum_v bias_v * x_v).

    Defined over a lattice region (the full lattice by default) with binary
    vocabulary; the normalized joint table over all 2^n assignments is built
    eagerly.  Bit i of an assignment integer holds the value of the i-th
    region vertex in raster order.
    """

    def __init__(
        self,
        lattice: Lattice,
        coupling: float,
        bias: Mapping[Vertex, float] | None = None,
        region: Region | None = None,
    ) -> None:
        self.lattice = lattice
        self.coupling = float(coupling)
        self.region = full_region(lattice) if region is None else region
        n = len(self.region)
        if n == 0:
            raise SizeLimitError("model region must be nonempty")
        if n > MAX_MODEL_VERTICES:
            raise SizeLimitError(
                f"joint table limited to {MAX_MODEL_VERTICES} vertices, got {n}"
            )
        self.vertices = self.region.sorted_vertices
        self._bit = {v: i for i, v in enumerate(self.vertices)}
        self.n = n
        states = np.arange(1 << n, dtype=np.uint32)
        energy = np.zeros(1 << n, dtype=np.float64)
        for u, v in self.region.induced_edges():
            agree = ((states >> self._bit[u]) ^ (states >> self._bit[v])) & 1 == 0
            energy[agree] += self.coupling
        if bias:
            for v, b in bias.items():
                if v not in self._bit:
                    raise InvalidTargetError(f"bias vertex {v} not in model region")
                energy += float(b) * ((states >> self._bit[v]) & 1)
        weights = np.exp(energy - energy.max())
        self.joint = weights / weights.sum()
        self._states = states
        self._cumulative: np.ndarray | None = None

    def bit_of(self, v: Vertex) -> int:
        if v not in self._bit:
            raise InvalidTargetError(f"vertex {v} not in model region")
        return self._bit[v]

    def sample_assignment(self, rng: Rng) -> int:
        """Draw one full assignment (as a bit pattern) from the exact joint."""
        if self._cumulative is None:
            self._cumulative = np.cumsum(self.joint)
        u = rng.random()
        idx = int(np.searchsorted(self._cumulative, u, side="right"))
        return min(idx, (1 << self.n) - 1)


def joint_entropy(model: GibbsModel) -> float:
    """Entropy of the full joint, in bits."""
    p = model.joint
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def exact_conditional_entropy(
    model: GibbsModel, observed: Mapping[Vertex, int], target: Vertex
) -> float:
    """H(x_target | x_S = observed) in bits, by exact marginalization."""
    if target in observed:
        raise InvalidTargetError(f"target {target} is already observed")
    tb = model.bit_of(target)
    states = model._states
    keep = np.ones(states.shape[0], dtype=np.bool_)
    for v, val in observed.items():
        if val not in (0, 1):
            raise InvalidTargetError(f"observed value for {v} must be 0 or 1")
        keep &= ((states >> model.bit_of(v)) & 1) == val
    p = model.joint[keep]
    total = p.sum()
    p_one = p[((states[keep] >> tb) & 1) == 1].sum()
    return binary_entropy_bits(float(p_one / total))


def _step_entropies(model: GibbsModel, order_bits: list[int], x: int) -> list[float]:
    """Per-step conditional entropies along an order, given true assignment x.

    The consistent-assignment index set shrinks incrementally, one observed
    bit per step.
    """
    idx = model._states
    joint = model.joint
    out = []
    for b in order_bits:
        sel = joint[idx]
        bits = (idx >> b) & 1
        total = sel.sum()
        p_one = sel[bits == 1].sum()
        out.append(binary_entropy_bits(float(p_one / total)))
        idx = idx[bits == ((x >> b) & 1)]
    return out


@dataclass(frozen=True)
class EntropyProfile:
    """Mean entropies keyed by position, distance bucket, or 1D step."""

    axis: str
    rows: tuple[tuple[str, float, int], ...]


def _order_bits(model: GibbsModel, order: SequenceOrder) -> list[int]:
    return [model.bit_of(v) for v in order.positions]


def distance_entropy_profile(
    model: GibbsModel,
    rng: Rng,
    num_prefixes: int,
    prefix_generator: OrderKind = OrderKind.RANDOM_PERMUTATION,
) -> EntropyProfile:
    """Mean conditional entropy bucketed by min Manhattan distance to the prefix.

    Each iteration draws an order of the given kind, keeps a uniformly long
    proper prefix as the observed set, samples the observed values from the
    model, and computes the exact conditional entropy of every unobserved
    vertex.
    """
    lattice = model.lattice
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for _ in range(num_prefixes):
        order = make_order(prefix_generator, lattice, rng)
        k = 1 + rng.randrange(model.n - 1)
        prefix = order.positions[:k]
        x = model.sample_assignment(rng)
        observed = {v: (x >> model.bit_of(v)) & 1 for v in prefix}
        for v in model.vertices:
            if v in observed:
                continue
            d = min(manhattan(v, u) for u in prefix)
            h = exact_conditional_entropy(model, observed, v)
            sums[d] = sums.get(d, 0.0) + h
            counts[d] = counts.get(d, 0) + 1
    rows = tuple(
        (f"d:{d}", sums[d] / counts[d], counts[d]) for d in sorted(sums)
    )
    return EntropyProfile("distance", rows)


def position_entropy_map(
    model: GibbsModel, rng: Rng, num_orders: int
) -> EntropyProfile:
    """Mean prediction entropy per 2D position under random-permutation orders."""
    lattice = model.lattice
    sums = {v: 0.0 for v in model.vertices}
    for _ in range(num_orders):
        order = make_order(OrderKind.RANDOM_PERMUTATION, lattice, rng)
        x = model.sample_assignment(rng)
        hs = _step_entropies(model, _order_bits(model, order), x)
        for v, h in zip(order.positions, hs):
            sums[v] += h
    rows = tuple(
        (f"{v.row}:{v.col}", sums[v] / num_orders, num_orders)
        for v in model.vertices
    )
    return EntropyProfile("position", rows)


def sequence_entropy_profile(
    model: GibbsModel, kind: OrderKind, rng: Rng, num_orders: int
) -> EntropyProfile:
    """Mean conditional entropy per 1D step for orders of the given kind."""
    lattice = model.lattice
    sums = [0.0] * model.n
    for _ in range(num_orders):
        order = make_order(kind, lattice, rng)
        x = model.sample_assignment(rng)
        hs = _step_entropies(model, _order_bits(model, order), x)
        for i, h in enumerate(hs):
            sums[i] += h
    rows = tuple(
        (f"step:{i + 1}", sums[i] / num_orders, num_orders) for i in range(model.n)
    )
    return EntropyProfile("sequence", rows)


def exhaustive_sequence_entropy(
    model: GibbsModel, order: SequenceOrder
) -> list[float]:
    """Exact per-step conditional entropies for a fixed order.

    Step i returns sum over prefix contexts of p(context) * H(target |
    context); summed over all steps this must equal the joint entropy by the
    chain rule, which the tests assert.
    """
    states = model._states
    joint = model.joint
    bits = _order_bits(model, order)
    out = []
    pattern = np.zeros(states.shape[0], dtype=np.int64)
    for j, b in enumerate(bits):
        tbit = ((states >> b) & 1).astype(np.float64)
        totals = np.bincount(pattern, weights=joint)
        ones = np.bincount(pattern, weights=joint * tbit)
        step = 0.0
        for tot, one in zip(totals, ones):
            if tot > 0.0:
                step += tot * binary_entropy_bits(float(one / tot))
        out.append(step)
        pattern = pattern | (((states >> b) & 1).astype(np.int64) << j)
    return out


def write_profile_csv(profile: EntropyProfile, destination: str | Path) -> None:
    lines = ["key,mean_entropy_bits,samples"]
    for key, mean, samples in profile.rows:
        lines.append(f"{key},{mean!r},{samples}")
    with open(destination, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

"""Postfix-completion sampler: hand traces, exact oracle, structural checks."""

import pytest

from treeorder.completion import (
    CompletionResult,
    check_postfix_condition,
    combined_tree,
    completion_order,
    farthest_root,
    prepare,
    run_trials,
    select_root,
)
from treeorder.errors import (
    AllCornersMaskedError,
    DisconnectedComplementError,
    DisconnectedMaskError,
    EmptyMaskError,
)
from treeorder.lattice import (
    Lattice,
    Vertex,
    boundary,
    complement_region,
    full_region,
    manhattan,
    region_of,
)
from treeorder.masking import random_connected_mask
from treeorder.orders import validate_order
from treeorder.rng import Rng
from treeorder.spanning import (
    SpanningTree,
    depth_map,
    enumerate_spanning_trees,
)
from treeorder.traversal import bfs_order


def test_farthest_root_2x2_tie_break():
    lat = Lattice(2, 2)
    mask = region_of(lat, [Vertex(1, 1)])
    assert farthest_root(lat, mask) == Vertex(0, 0)


def test_farthest_root_4x4_block():
    lat = Lattice(4, 4)
    mask = region_of(lat, [Vertex(2, 2), Vertex(2, 3), Vertex(3, 2), Vertex(3, 3)])
    # brute-force oracle over unmasked corners
    bnd = boundary(lat, mask)
    best = max(
        (c for c in lat.corners() if c not in mask.vertices),
        key=lambda c: (sum(manhattan(v, c) for v in bnd), -lat.raster(c)),
    )
    got = farthest_root(lat, mask)
    assert got == best == Vertex(0, 0)


def test_farthest_root_codomain():
    lat = Lattice(16, 16)
    mask = random_connected_mask(lat, 0.2, Rng(5))
    assert farthest_root(lat, mask.region) in lat.corners()


def test_farthest_root_all_corners_masked():
    lat = Lattice(3, 3)
    ring = [v for v in lat.vertices() if v != Vertex(1, 1)]
    with pytest.raises(AllCornersMaskedError):
        farthest_root(lat, region_of(lat, ring))


def test_check_postfix_condition_hand_traces():
    lat = Lattice(2, 2)
    region = full_region(lat)
    mask = region_of(lat, [Vertex(1, 1)])
    good = SpanningTree(
        Vertex(0, 0),
        {
            Vertex(0, 1): Vertex(0, 0),
            Vertex(1, 0): Vertex(0, 0),
            Vertex(1, 1): Vertex(0, 1),
        },
        region,
    )
    assert check_postfix_condition(good, mask)

    bad = SpanningTree(
        Vertex(0, 0),
        {
            Vertex(0, 1): Vertex(0, 0),
            Vertex(1, 1): Vertex(0, 1),
            Vertex(1, 0): Vertex(1, 1),
        },
        region,
    )
    assert not check_postfix_condition(bad, mask)

    assert check_postfix_condition(good, region_of(lat, []))


def test_completion_2x2_hand_example():
    lat = Lattice(2, 2)
    mask = region_of(lat, [Vertex(1, 1)])
    result = completion_order(lat, mask, Rng(7))
    assert result.accepted
    assert result.trials == 1
    assert result.order.positions == (
        Vertex(0, 0),
        Vertex(0, 1),
        Vertex(1, 0),
        Vertex(1, 1),
    )


def test_completion_error_preconditions():
    lat = Lattice(4, 4)
    with pytest.raises(EmptyMaskError):
        completion_order(lat, region_of(lat, []), Rng(0))
    with pytest.raises(DisconnectedMaskError):
        completion_order(lat, region_of(lat, [Vertex(0, 0), Vertex(3, 3)]), Rng(0))
    # middle rows masked -> complement split top/bottom
    split = [Vertex(1, c) for c in range(4)] + [Vertex(2, c) for c in range(4)]
    with pytest.raises(DisconnectedComplementError):
        completion_order(lat, region_of(lat, split), Rng(0))
    lat3 = Lattice(3, 3)
    ring = [v for v in lat3.vertices() if v != Vertex(1, 1)]
    with pytest.raises(AllCornersMaskedError):
        completion_order(lat3, region_of(lat3, ring), Rng(0))
    with pytest.raises(AllCornersMaskedError):
        completion_order(lat3, full_region(lat3), Rng(0))


def test_acceptance_probability_matches_enumeration_oracle():
    """Complement of the center 2x2 block of a 4x4 lattice is a 12-cycle;
    the exact acceptance probability over its enumerable trees must match
    the empirical single-trial rate of the sampler."""
    lat = Lattice(4, 4)
    mask = region_of(lat, [Vertex(1, 1), Vertex(1, 2), Vertex(2, 1), Vertex(2, 2)])
    comp = complement_region(lat, mask)
    bnd = boundary(lat, mask)
    root = farthest_root(lat, mask)

    def tree_from_edges(edges):
        adj = {}
        for a, b in edges:
            u, v = lat.vertex(a), lat.vertex(b)
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        parent = {}
        stack, seen = [root], {root}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    stack.append(y)
        return SpanningTree(root, parent, comp)

    trees = enumerate_spanning_trees(comp)
    accept = 0
    for edges in trees:
        depths = depth_map(tree_from_edges(edges))
        dmax = max(depths.values())
        accept += any(depths[v] == dmax for v in bnd)
    p_exact = accept / len(trees)

    prep = prepare(lat, mask)
    rng = Rng(99)
    samples = 60_000
    hits = sum(run_trials(prep, root, "bfs", 1, rng)[1] for _ in range(samples))
    p_emp = hits / samples
    se = (p_exact * (1 - p_exact) / samples) ** 0.5
    assert abs(p_emp - p_exact) < 4 * se


def _masked_suffix_ok(result, mask, n):
    masked = mask.vertices
    prefix = result.order.positions[: n - len(masked)]
    suffix = result.order.positions[n - len(masked) :]
    return all(v not in masked for v in prefix) and all(v in masked for v in suffix)


def test_completion_structural_random_cases():
    lat = Lattice(8, 8)
    rng = Rng(4242)
    for i in range(300):
        ratio = (1 + i % 8) / 10
        mask = random_connected_mask(lat, ratio, rng)
        result = completion_order(lat, mask.region, rng)
        assert result.accepted
        assert validate_order(result.order)
        assert _masked_suffix_ok(result, mask.region, lat.n)
        joined = combined_tree(result.prefix_tree, result.mask_tree)
        assert joined.is_valid()
        assert check_postfix_condition(joined, mask.region)
        assert bfs_order(joined).positions == result.order.positions


def test_completion_dfs_variant():
    lat = Lattice(8, 8)
    rng = Rng(11)
    done = 0
    for _ in range(120):
        mask = random_connected_mask(lat, 0.4, rng)
        result = completion_order(lat, mask.region, rng, traversal="dfs")
        if not result.accepted:
            assert result.trials == 100
            continue
        done += 1
        assert validate_order(result.order)
        assert _masked_suffix_ok(result, mask.region, lat.n)
        # DFS acceptance: the last prefix-tree vertex borders the mask
        last = result.order.positions[lat.n - len(mask.region) - 1]
        assert last in boundary(lat, mask.region)
    assert done > 60


def test_completion_random_root_strategy():
    lat = Lattice(8, 8)
    rng = Rng(21)
    corners = set(lat.corners())
    seen_roots = set()
    for _ in range(60):
        mask = random_connected_mask(lat, 0.3, rng)
        result = completion_order(lat, mask.region, rng, root_strategy="random")
        assert result.accepted
        root = result.order.positions[0]
        assert root in corners
        seen_roots.add(root)
    assert len(seen_roots) >= 3


def test_completion_rejection_path():
    # max_trials=0 -> immediate rejection without an order
    lat = Lattice(4, 4)
    mask = region_of(lat, [Vertex(1, 1), Vertex(1, 2), Vertex(2, 1), Vertex(2, 2)])
    result = completion_order(lat, mask, Rng(1), max_trials=0)
    assert result == CompletionResult(None, 0, False)


def test_run_trials_matches_completion_order_counts():
    """The bench fast path and the full sampler consume randomness
    identically up to acceptance, so trial counts agree seed-for-seed."""
    lat = Lattice(8, 8)
    for seed in range(25):
        mask = random_connected_mask(lat, 0.2, Rng(seed))
        for traversal in ("bfs", "dfs"):
            for strategy in ("farthest", "random"):
                prep = prepare(lat, mask.region)
                r1 = Rng(1000 + seed)
                root = select_root(prep, strategy, r1)
                trials, accepted, _ = run_trials(prep, root, traversal, 100, r1)
                r2 = Rng(1000 + seed)
                result = completion_order(
                    lat, mask.region, r2, traversal=traversal, root_strategy=strategy
                )
                assert (result.trials, result.accepted) == (trials, accepted)


def test_trials_deterministic_per_seed():
    lat = Lattice(16, 16)
    mask = random_connected_mask(lat, 0.3, Rng(70))
    a = completion_order(lat, mask.region, Rng(5))
    b = completion_order(lat, mask.region, Rng(5))
    assert a.order == b.order
    assert a.trials == b.trials

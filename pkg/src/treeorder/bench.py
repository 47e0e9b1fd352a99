"""Acceptance-ratio benchmark over traversal and root-selection strategies.

Every strategy is evaluated on the identical per-ratio mask set (paired
comparison); failed runs count at the trial cap in the headline mean, with
the accepted-only mean kept alongside.  Per-mask substreams make the result
bit-identical for any worker count.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import completion
from .errors import GenerationFailureError
from .lattice import Lattice
from .masking import DEFAULT_MAX_ATTEMPTS, random_connected_mask
from .rng import Rng, splitmix64, substream_seed

STRATEGIES: tuple[tuple[str, str], ...] = (
    ("bfs", "farthest"),
    ("bfs", "random"),
    ("dfs", "farthest"),
    ("dfs", "random"),
)

DEFAULT_RATIOS = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass(frozen=True)
class TrialStats:
    """Aggregated rejection-sampling cost for one (ratio, strategy) cell."""

    ratio: float
    traversal: str
    root: str
    mean_trials: float
    failure_ratio: float
    n_masks: int
    mean_trials_accepted: float


@dataclass(frozen=True)
class BenchConfig:
    h: int = 16
    w: int = 16
    ratios: tuple[float, ...] = DEFAULT_RATIOS
    masks_per_ratio: int = 5000
    max_trials: int = 100
    master_seed: int = 0
    workers: int = 1
    mask_max_attempts: int = DEFAULT_MAX_ATTEMPTS


def _evaluate_mask(config: BenchConfig, lattice: Lattice, ratio: float, gidx: int):
    """All four strategies on the mask of global index gidx."""
    seed = substream_seed(config.master_seed, gidx)
    rng = Rng(seed)
    try:
        mask = random_connected_mask(lattice, ratio, rng, config.mask_max_attempts)
    except GenerationFailureError as exc:
        raise GenerationFailureError(f"ratio {ratio}, mask {gidx}: {exc}") from exc
    prep = completion.prepare(lattice, mask.region)
    cells = []
    for s_idx, (traversal, root_strategy) in enumerate(STRATEGIES):
        srng = Rng(splitmix64(seed ^ (s_idx + 1)))
        root = completion.select_root(prep, root_strategy, srng)
        trials, accepted, _ = completion.run_trials(
            prep, root, traversal, config.max_trials, srng
        )
        cells.append((int(trials), bool(accepted)))
    return cells


def acceptance_experiment(config: BenchConfig) -> list[TrialStats]:
    """Run the full ratio x strategy grid; rows ordered ratio-major."""
    if config.masks_per_ratio < 1:
        raise ValueError("masks_per_ratio must be at least 1")
    lattice = Lattice(config.h, config.w)
    jobs = [
        (ratio, r_idx * config.masks_per_ratio + m_idx)
        for r_idx, ratio in enumerate(config.ratios)
        for m_idx in range(config.masks_per_ratio)
    ]
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(
                pool.map(
                    lambda job: _evaluate_mask(config, lattice, job[0], job[1]),
                    jobs,
                    chunksize=64,
                )
            )
    else:
        results = [_evaluate_mask(config, lattice, ratio, g) for ratio, g in jobs]
    stats = []
    m = config.masks_per_ratio
    for r_idx, ratio in enumerate(config.ratios):
        block = results[r_idx * m : (r_idx + 1) * m]
        for s_idx, (traversal, root) in enumerate(STRATEGIES):
            trials = [cell[s_idx][0] for cell in block]
            accepted = [cell[s_idx][1] for cell in block]
            failures = sum(1 for a in accepted if not a)
            ok_trials = [t for t, a in zip(trials, accepted) if a]
            stats.append(
                TrialStats(
                    ratio=ratio,
                    traversal=traversal,
                    root=root,
                    mean_trials=sum(trials) / m,
                    failure_ratio=failures / m,
                    n_masks=m,
                    mean_trials_accepted=(
                        sum(ok_trials) / len(ok_trials) if ok_trials else math.nan
                    ),
                )
            )
    return stats


CSV_HEADER = ["ratio", "traversal", "root", "mean_trials", "failure_ratio", "n_masks"]


def write_stats_csv(
    stats: list[TrialStats], destination: str | Path, extended: bool = False
) -> None:
    """Write stats rows; `extended` appends the accepted-only mean column."""
    header = CSV_HEADER + (["mean_trials_accepted"] if extended else [])
    rows = sorted(stats, key=lambda s: (s.ratio, s.traversal, s.root))
    with open(destination, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for s in rows:
            row = [
                repr(s.ratio),
                s.traversal,
                s.root,
                repr(s.mean_trials),
                repr(s.failure_ratio),
                str(s.n_masks),
            ]
            if extended:
                row.append(repr(s.mean_trials_accepted))
            writer.writerow(row)


def read_stats_csv(source: str | Path) -> list[TrialStats]:
    with open(source, "r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        extended = header == CSV_HEADER + ["mean_trials_accepted"]
        if not extended and header != CSV_HEADER:
            raise ValueError(f"unexpected stats header: {header}")
        out = []
        for row in reader:
            out.append(
                TrialStats(
                    ratio=float(row[0]),
                    traversal=row[1],
                    root=row[2],
                    mean_trials=float(row[3]),
                    failure_ratio=float(row[4]),
                    n_masks=int(row[5]),
                    mean_trials_accepted=float(row[6]) if extended else math.nan,
                )
            )
        return out

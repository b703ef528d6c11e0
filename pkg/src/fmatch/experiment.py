"""Monte Carlo over uniform random labeled trees.

Every trial draws from its own generator derived from ``(seed, trial
index)``, so results do not depend on how trials are spread over workers.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .canonical import codes_below, canon, has_R_leaf
from .counting import Variant, count_mod
from .trees import FunctionTable, LabeledTree, RootedTree, from_pruefer, joyal_tree

SAMPLERS = ("pruefer", "joyal")
Z95 = 1.959963984540054


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def sample_tree(n: int, rng: np.random.Generator, sampler: str = "pruefer") -> LabeledTree:
    """Uniform labeled tree on ``n`` vertices.

    ``joyal`` draws a uniform map ``[n] -> [n]`` and forgets the two marks;
    every tree has exactly ``n**2`` preimages so the result is still uniform.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}")
    if n == 1:
        return LabeledTree.single()
    if sampler == "pruefer":
        return from_pruefer(rng.integers(1, n + 1, size=n - 2).tolist())
    f = FunctionTable(tuple(rng.integers(1, n + 1, size=n).tolist()))
    return joyal_tree(f).tree


def wilson_interval(hits: int, trials: int, z: float = Z95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = hits / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class TrialConfig:
    n: int
    m: int
    F: LabeledTree
    variant: Variant = Variant.PLAIN
    trials: int = 100
    seed: int = 0
    sampler: str = "pruefer"
    workers: int = 1
    pattern: str = ""

    def __post_init__(self):
        if self.n < 1 or self.trials < 1 or self.m < 1:
            raise ValueError("need n >= 1, trials >= 1 and m >= 1")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"unknown sampler {self.sampler!r}")
        object.__setattr__(self, "variant", Variant(self.variant))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "pattern": self.pattern,
            "F": {"n": self.F.n, "edges": [list(e) for e in self.F.edges]},
            "variant": self.variant.value,
            "trials": self.trials,
            "seed": self.seed,
            "sampler": self.sampler,
            "workers": self.workers,
        }


@dataclass
class ExperimentReport:
    config: TrialConfig
    residues: list[int]
    wall_ms: float = 0.0
    histogram: list[int] = field(init=False)

    def __post_init__(self):
        hist = [0] * self.config.m
        for r in self.residues:
            hist[r] += 1
        self.histogram = hist

    @property
    def trials(self) -> int:
        return len(self.residues)

    @property
    def fraction_zero(self) -> float:
        return self.histogram[0] / self.trials

    @property
    def wilson(self) -> tuple[float, float]:
        return wilson_interval(self.histogram[0], self.trials)

    def to_dict(self) -> dict:
        lo, hi = self.wilson
        return {
            "config": self.config.to_dict(),
            "trials": self.trials,
            "histogram": self.histogram,
            "fraction_zero": self.fraction_zero,
            "wilson_low": lo,
            "wilson_high": hi,
            "seed": self.config.seed,
            "wall_ms": self.wall_ms,
        }

    def to_csv(self) -> str:
        rows = ["trial_index,residue"] + [f"{i},{r}" for i, r in enumerate(self.residues)]
        return "\n".join(rows) + "\n"


REPORT_SCHEMA = {
    "type": "object",
    "required": ["config", "histogram", "fraction_zero", "wilson_low", "wilson_high", "seed", "wall_ms"],
    "properties": {
        "config": {"type": "object"},
        "trials": {"type": "integer", "minimum": 1},
        "histogram": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "fraction_zero": {"type": "number", "minimum": 0, "maximum": 1},
        "wilson_low": {"type": "number", "minimum": 0, "maximum": 1},
        "wilson_high": {"type": "number", "minimum": 0, "maximum": 1},
        "seed": {"type": "integer"},
        "wall_ms": {"type": "number", "minimum": 0},
    },
}


def _residue_chunk(cfg: TrialConfig, indices: range) -> list[int]:
    out = []
    for i in indices:
        T = sample_tree(cfg.n, trial_rng(cfg.seed, i), cfg.sampler)
        out.append(count_mod(cfg.F, T, cfg.m, cfg.variant))
    return out


def _rleaf_chunk(R: RootedTree, n: int, seed: int, sampler: str, indices: range) -> list[bool]:
    return [has_R_leaf(sample_tree(n, trial_rng(seed, i), sampler), R) is not None for i in indices]


def _chunks(total: int, workers: int) -> list[range]:
    size = max(1, math.ceil(total / (4 * workers)))
    return [range(a, min(a + size, total)) for a in range(0, total, size)]


def _run(fn, args, total: int, workers: int) -> list:
    if workers <= 1:
        return fn(*args, range(total))
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves chunk order, so the concatenation is schedule independent
        for part in pool.map(fn, *zip(*[(*args, c) for c in _chunks(total, workers)])):
            out.extend(part)
    return out


def residue_experiment(cfg: TrialConfig) -> ExperimentReport:
    start = time.perf_counter()
    residues = _run(_residue_chunk, (cfg,), cfg.trials, cfg.workers)
    return ExperimentReport(cfg, residues, (time.perf_counter() - start) * 1000)


@dataclass(frozen=True)
class RLeafReport:
    R: RootedTree
    n: int
    trials: int
    hits: int
    seed: int
    sampler: str = "pruefer"

    @property
    def frequency(self) -> float:
        return self.hits / self.trials

    def to_dict(self) -> dict:
        lo, hi = wilson_interval(self.hits, self.trials)
        return {
            "R": {"n": self.R.n, "root": self.R.root, "edges": [list(e) for e in self.R.tree.edges]},
            "n": self.n,
            "trials": self.trials,
            "hits": self.hits,
            "frequency": self.frequency,
            "wilson_low": lo,
            "wilson_high": hi,
            "seed": self.seed,
            "sampler": self.sampler,
        }


def rleaf_experiment(R: RootedTree, n: int, trials: int, seed: int = 0,
                     sampler: str = "pruefer", workers: int = 1) -> RLeafReport:
    if n < R.n + 1:
        raise ValueError(f"n must be at least |R| + 1 = {R.n + 1}")
    if trials < 1:
        raise ValueError("trials must be positive")
    found = _run(_rleaf_chunk, (R, n, seed, sampler), trials, workers)
    return RLeafReport(R, n, trials, sum(found), seed, sampler)


def x_statistic(f: FunctionTable, R: RootedTree) -> int:
    """Edges ``u -> f(u)`` whose in-tree at ``u`` is cycle free and shaped like ``R``.

    The in-tree of ``u`` is ``u`` together with every vertex that reaches it,
    rooted at ``u``.
    """
    on_cycle = set(f.cycle_vertices())
    n = f.n
    # the functional digraph minus cycle-internal arcs, as an undirected forest
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for i in range(1, n + 1):
        if i not in on_cycle:
            adj[i].append(f(i))
            adj[f(i)].append(i)
    target = canon(R).code
    hits = 0
    for u in range(1, n + 1):
        if u in on_cycle:
            continue
        # everything reaching u lies on u's side of the arc u -> f(u)
        if codes_below(adj, u, f(u))[u] == target:
            hits += 1
    return hits

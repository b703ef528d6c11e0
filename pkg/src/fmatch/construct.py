"""Nullifying trees.

A chained tree ``W_t`` strings ``t`` copies of ``F`` along a longest path of
``F``: in the plain variant consecutive copies share an endpoint, in the
induced variant they are joined by an extra edge.  Cutting ``W_t`` back to
the last ``r`` starting vertices gives ``Y_r``, whose matching counts obey

    plain:    g(r) = g(r-1) + g(r-d)
    induced:  g(r) = g(r-1) + g(r-d-1)

so some ``Y_r`` has a count divisible by ``m``.  Hanging enough copies of
that ``Y`` off a fresh root gives ``Z``; any tree with a ``Z``-leaf then has
a count divisible by ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .counting import Variant, count, enumerate_copies
from .trees import LabeledTree, RootedTree, graft


class ConstructionError(RuntimeError):
    """An internal consistency check failed; this indicates a bug."""


class DegeneratePatternError(ValueError):
    pass


@dataclass(frozen=True)
class Spine:
    path: tuple[int, ...]   # u_1 .. u_{l+1}
    b: tuple[int, ...]      # component sizes after deleting path edges

    @property
    def l(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True)
class ChainedTree:
    tree: RootedTree
    spine_path: tuple[int, ...]
    t: int
    variant: Variant


@dataclass(frozen=True)
class GSequence:
    variant: Variant
    d: int
    values: tuple[int, ...]   # g(1), g(2), ...

    @property
    def order(self) -> int:
        return self.d if self.variant is Variant.PLAIN else self.d + 1

    def __getitem__(self, r: int) -> int:
        return self.values[r - 1]


def _farthest(F: LabeledTree, src: int) -> list[int]:
    dist = {src: 0}
    for x, p in F.bfs(src)[1:]:
        dist[x] = dist[p] + 1
    top = max(dist.values())
    return sorted(v for v, dv in dist.items() if dv == top)


def spine(F: LabeledTree) -> Spine:
    """Longest path by double sweep from vertex 1; ties go to the smallest labels."""
    if F.n == 1:
        return Spine((1,), (1,))
    a = _farthest(F, 1)[0]
    path = min(tuple(F.path(a, z)) for z in _farthest(F, a))
    on_path = set(path)
    sizes = []
    for u in path:
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in F.adj[x]:
                if y not in seen and y not in on_path:
                    seen.add(y)
                    stack.append(y)
        sizes.append(len(seen))
    return Spine(path, tuple(sizes))


def _check_variant(F: LabeledTree, variant: Variant) -> Variant:
    variant = Variant(variant)
    if variant is Variant.PLAIN and F.n == 1:
        raise DegeneratePatternError(
            "plain matchings of a single vertex are all 2^n vertex subsets; "
            "there is no nullifying construction for this pattern")
    return variant


def _period(F: LabeledTree, variant: Variant) -> int:
    l = spine(F).l
    return l if variant is Variant.PLAIN else l + 1


def build_W(F: LabeledTree, t: int, variant: Variant = Variant.PLAIN) -> ChainedTree:
    """Chain ``t`` copies of ``F``.  Spine positions are labeled ``1..|P|``."""
    variant = _check_variant(F, variant)
    if t < 1:
        raise ValueError("t must be at least 1")
    sp = spine(F)
    step = _period(F, variant)
    pos_of = {u: k for k, u in enumerate(sp.path)}
    spine_len = sp.l * t + 1 if variant is Variant.PLAIN else t * (sp.l + 1)
    next_label = spine_len + 1
    edges = []
    for j in range(t):
        label = {}
        for u, k in pos_of.items():
            label[u] = j * step + k + 1
        for x in F.vertices:
            if x not in label:
                label[x] = next_label
                next_label += 1
        edges += [(label[a], label[b]) for a, b in F.edges]
        if variant is Variant.INDUCED and j + 1 < t:
            edges.append((label[sp.path[-1]], label[sp.path[-1]] + 1))
    W = LabeledTree(next_label - 1, tuple(edges))
    return ChainedTree(RootedTree(W, 1), tuple(range(1, spine_len + 1)), t, variant)


def starting_vertices(F: LabeledTree, t: int, variant: Variant = Variant.PLAIN) -> list[int]:
    """Spine indices that are the smallest spine vertex of some copy of ``F`` in ``W_t``."""
    W = build_W(F, t, variant)
    last = len(W.spine_path)
    return sorted({min(x for x in c.vertices if x <= last)
                   for c in enumerate_copies(F, W.tree.tree)})


@lru_cache(maxsize=None)
def _start_pattern(F: LabeledTree, variant: Variant) -> tuple[int, frozenset[int], int]:
    """``(period, start residues, d)``, checked for periodicity on ``W_4``."""
    t = 4
    period = _period(F, variant)
    starts = set(starting_vertices(F, t, variant))
    last_start = (t - 1) * period + 1
    for i in range(1, (t - 2) * period + 2):
        if (i in starts) != (i + period in starts):
            raise ConstructionError(f"starting vertices not periodic at {i}")
    if max(starts) != last_start:
        raise ConstructionError(f"last starting vertex is {max(starts)}, expected {last_start}")
    d = sum(1 for i in starts if i <= spine(F).l + 1)
    expected = 1 + (t - 1) * (d - 1) if variant is Variant.PLAIN else (t - 1) * d + 1
    if len(starts) != expected:
        raise ConstructionError(f"{len(starts)} starting vertices in W_{t}, expected {expected}")
    residues = frozenset((i - 1) % period for i in starts)
    return period, residues, d


def compute_d(F: LabeledTree, variant: Variant = Variant.PLAIN) -> int:
    variant = _check_variant(F, variant)
    return _start_pattern(F, variant)[2]


def _copies_needed(r: int, d: int, variant: Variant) -> int:
    per_copy = d - 1 if variant is Variant.PLAIN else d
    return max(1, 1 + math.ceil((r - 1) / per_copy))


def build_Yr(F: LabeledTree, r: int, variant: Variant = Variant.PLAIN) -> RootedTree:
    """The last ``r`` starting vertices of ``W_t`` with everything hanging off them.

    Rooted at the first of those vertices and relabeled so the root is 1.
    """
    variant = _check_variant(F, variant)
    if r < 1:
        raise ValueError("r must be at least 1")
    period, residues, d = _start_pattern(F, variant)
    t = _copies_needed(r, d, variant)
    W = build_W(F, t, variant)
    last_start = (t - 1) * period + 1
    starts = [i for i in range(1, last_start + 1) if (i - 1) % period in residues]
    if len(starts) < r:
        raise ConstructionError(f"W_{t} has only {len(starts)} starting vertices, need {r}")
    first = starts[-r]
    keep = set(range(first, last_start + 1))
    tree = W.tree.tree
    spine_len = len(W.spine_path)
    stack = list(keep)
    while stack:
        x = stack.pop()
        for y in tree.adj[x]:
            if y > spine_len and y not in keep:
                keep.add(y)
                stack.append(y)
    order = sorted(keep)
    mapping = {x: i for i, x in enumerate(order, start=1)}
    edges = tuple((mapping[a], mapping[b]) for a, b in tree.edges if a in keep and b in keep)
    return RootedTree(LabeledTree(len(order), edges), mapping[first]).normalized()


def _recurrence_lag(d: int, variant: Variant) -> int:
    return d if variant is Variant.PLAIN else d + 1


def g_sequence(F: LabeledTree, r_max: int, variant: Variant = Variant.PLAIN) -> GSequence:
    """Count matchings of ``Y_1..Y_{r_max}`` directly and check the recurrence."""
    variant = _check_variant(F, variant)
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    d = compute_d(F, variant)
    values = tuple(count(F, build_Yr(F, r, variant).tree, variant) for r in range(1, r_max + 1))
    seq = GSequence(variant, d, values)
    lag = _recurrence_lag(d, variant)
    for r in range(lag + 1, r_max + 1):
        if seq[r] != seq[r - 1] + seq[r - lag]:
            raise ConstructionError(
                f"recurrence fails at r={r}: {seq[r]} != {seq[r - 1]} + {seq[r - lag]}")
    return seq


def find_r0(F: LabeledTree, m: int, variant: Variant = Variant.PLAIN) -> int:
    """Smallest ``r >= 1`` with ``g(r) = 0 (mod m)``.

    Seeds ``g(1..order)`` are counted directly; afterwards the recurrence is
    run on residues.  The sequence is purely periodic mod ``m`` with period at
    most ``m**order``, so exhausting that bound means something is broken.
    """
    variant = _check_variant(F, variant)
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    d = compute_d(F, variant)
    lag = _recurrence_lag(d, variant)
    seeds = g_sequence(F, lag, variant).values
    window = [g % m for g in seeds]
    for r, g in enumerate(window, start=1):
        if g == 0:
            return r
    cap = m ** lag + lag
    r = lag
    while r < cap:
        r += 1
        g = (window[-1] + window[-lag]) % m
        if g == 0:
            return r
        window.append(g)
        window.pop(0)
    raise ConstructionError(f"no zero residue mod {m} within {cap} terms")


@lru_cache(maxsize=None)
def build_Y(F: LabeledTree, m: int, variant: Variant = Variant.PLAIN) -> RootedTree:
    variant = _check_variant(F, variant)
    Y = build_Yr(F, find_r0(F, m, variant), variant)
    if count(F, Y.tree, variant) % m:
        raise ConstructionError("Y does not have a zero residue")
    return Y


def build_Z(F: LabeledTree, m: int, variant: Variant = Variant.PLAIN) -> RootedTree:
    """Root joined to ``Delta(F)+1`` copies of ``Y`` (plain).

    Induced: one copy of ``Y'`` on an edge and ``Delta(F)+1`` more each behind
    a fresh middle vertex.  Copies hang off the root at their own roots.
    """
    variant = _check_variant(F, variant)
    Y = build_Y(F, m, variant)
    extra = F.max_degree() + 1
    Z = LabeledTree.single()
    if variant is Variant.PLAIN:
        for _ in range(extra):
            Z = graft(Z, 1, Y, 1)
    else:
        Z = graft(Z, 1, Y, 1)
        for _ in range(extra):
            Z = graft(Z, 1, Y, 2)
    return RootedTree(Z, 1)

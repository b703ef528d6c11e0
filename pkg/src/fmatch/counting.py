"""Counting F-matchings and induced F-matchings in trees.

The counter is a tree DP whose states are rooted isomorphism classes of
*fragments*: the component of ``F - {x, p}`` containing ``x``, rooted at
``x``.  A vertex of ``T`` in state "open with class k" is the root of a
partial copy of ``F`` shaped like fragment class ``k`` that continues
through its parent.  At each vertex the children's open states are combined
by extracting class-multiset coefficients from

    prod_children (closed_c + sum_k open_c[k] * x_k)

which picks distinct children for each required fragment, so every copy is
counted once as a subgraph and no division by ``|Aut(F)|`` is needed.  The
same code therefore runs over exact integers or modulo any ``m``.
"""

from __future__ import annotations

import enum
import os
import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .canonical import CanonCode, canon, edge_subtree_codes
from .trees import Forest, LabeledTree, RootedTree, induced_subtree

DEFAULT_ORACLE_CAP = 5000


class Variant(str, enum.Enum):
    PLAIN = "plain"
    INDUCED = "induced"


class OracleCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Fragment:
    source: tuple[int, int]
    tree: RootedTree
    code: CanonCode
    class_id: int


def fragments_of(F: LabeledTree) -> list[Fragment]:
    """One fragment per ordered edge ``(x, p)`` of ``F``, sorted by class then edge."""
    if F.n == 1:
        return []
    codes = edge_subtree_codes(F)
    class_of = {c: i for i, c in enumerate(sorted(set(codes.values())))}
    out = []
    for (p, x), code in codes.items():
        side = [v for v in F.vertices if _reaches(F, x, v, p)]
        out.append(Fragment((x, p), induced_subtree(F, side, x), code, class_of[code]))
    out.sort(key=lambda fr: (fr.class_id, fr.source))
    return out


def _reaches(F: LabeledTree, start: int, goal: int, banned: int) -> bool:
    seen = {start, banned}
    stack = [start]
    while stack:
        x = stack.pop()
        if x == goal:
            return True
        for y in F.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


class _Plan:
    """Fragment classes of ``F`` and the monomial bookkeeping for the DP."""

    def __init__(self, F: LabeledTree):
        self.F = F
        if F.n == 1:
            self.n_classes = 0
            open_targets: list[tuple[int, ...]] = []
            closed_targets = [()]
        else:
            codes = edge_subtree_codes(F)
            classes = sorted(set(codes.values()))
            cid = {c: i for i, c in enumerate(classes)}
            self.n_classes = k = len(classes)

            def multiset(kid_codes):
                vec = [0] * k
                for c in kid_codes:
                    vec[cid[c]] += 1
                return tuple(vec)

            open_by_class: dict[int, tuple[int, ...]] = {}
            for (p, x), code in codes.items():
                open_by_class[cid[code]] = multiset(codes[(x, c)] for c in F.adj[x] if c != p)
            open_targets = [open_by_class[i] for i in range(k)]
            # distinct rootings of F; equal shapes have equal child multisets
            closed_targets = sorted({multiset(codes[(y, c)] for c in F.adj[y]) for y in F.vertices})

        # down-closure of all targets: every partial product we must keep
        allowed = set()
        for tgt in open_targets + closed_targets:
            allowed.update(product(*(range(e + 1) for e in tgt)))
        monos = sorted(allowed, key=lambda m: (sum(m), m))
        index = {m: i for i, m in enumerate(monos)}
        self.size = len(monos)
        self.shifts = []  # (src, cls, dst): dst = src + e_cls
        for m in monos:
            for c in range(self.n_classes):
                if m[c]:
                    src = m[:c] + (m[c] - 1,) + m[c + 1:]
                    self.shifts.append((index[src], c, index[m]))
        self.open_idx = [index[t] for t in open_targets]
        self.closed_idx = [index[t] for t in closed_targets]


@lru_cache(maxsize=256)
def _plan(F: LabeledTree) -> _Plan:
    return _Plan(F)


def _dp(F: LabeledTree, T: LabeledTree, variant: Variant, mod: int | None) -> int:
    plan = _plan(F)
    induced = Variant(variant) is Variant.INDUCED
    n = T.n
    free = [0] * (n + 1)
    closed = [0] * (n + 1)
    opened: list[list[int]] = [[]] * (n + 1)
    adj = T.adj
    shifts = plan.shifts
    for v, p in reversed(T.bfs(1)):
        uncovered = 1
        poly = [0] * plan.size
        poly[0] = 1
        for c in adj[v]:
            if c == p:
                continue
            done = free[c] + closed[c]
            uncovered *= done
            keep = free[c] if induced else done
            oc = opened[c]
            new = [a * keep for a in poly]
            for src, cls, dst in shifts:
                if poly[src] and oc[cls]:
                    new[dst] += poly[src] * oc[cls]
            if mod is not None:
                uncovered %= mod
                new = [a % mod for a in new]
            poly = new
        free[v] = uncovered
        total = sum(poly[i] for i in plan.closed_idx)
        closed[v] = total % mod if mod is not None else total
        opened[v] = [poly[i] for i in plan.open_idx]
    ans = free[1] + closed[1]
    return ans % mod if mod is not None else ans


def count(F: LabeledTree, T: LabeledTree, variant: Variant = Variant.PLAIN) -> int:
    """Exact number of (induced) F-matchings of ``T``, the empty one included."""
    return _dp(F, T, variant, None)


def count_mod(F: LabeledTree, T: LabeledTree, m: int, variant: Variant = Variant.PLAIN) -> int:
    """``count(F, T, variant) % m``, computed entirely in residues."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    return _dp(F, T, variant, m)


def count_forest(F: LabeledTree, forest: Forest, variant: Variant = Variant.PLAIN,
                 m: int | None = None) -> int:
    result = 1 if m is None else 1 % m
    for comp in forest:
        if m is None:
            result *= count(F, comp, variant)
        else:
            result = result * count_mod(F, comp, m, variant) % m
    return result


# --- brute-force oracle -------------------------------------------------

@dataclass(frozen=True)
class Copy:
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]


def connected_subsets(T: LabeledTree, k: int):
    """Yield each connected vertex set of size ``k`` exactly once (ESU order)."""
    adj = T.adj

    def extend(sub, ext, root):
        if len(sub) == k:
            yield frozenset(sub)
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            # in a tree a neighbor of w cannot already touch sub
            grow = ext + [u for u in adj[w] if u > root and u not in sub]
            sub.append(w)
            yield from extend(sub, grow, root)
            sub.pop()

    if k < 1:
        return
    for v in T.vertices:
        yield from extend([v], [w for w in adj[v] if w > v], v)


def _rooting_codes(F: LabeledTree) -> frozenset[str]:
    return frozenset(canon(RootedTree(F, y)).code for y in F.vertices)


def enumerate_copies(F: LabeledTree, T: LabeledTree) -> list[Copy]:
    """Every subgraph of ``T`` isomorphic to ``F``, each listed once."""
    if F.n > T.n:
        return []
    if F.n == 1:
        return [Copy(frozenset([v]), frozenset()) for v in T.vertices]
    shapes = _rooting_codes(F)
    out = []
    for vs in connected_subsets(T, F.n):
        sub = induced_subtree(T, vs, min(vs))
        if canon(sub).code in shapes:
            edges = frozenset(e for e in T.edges if e[0] in vs and e[1] in vs)
            out.append(Copy(vs, edges))
    out.sort(key=lambda c: sorted(c.vertices))
    return out


def oracle_cap() -> int:
    return int(os.environ.get("FMATCH_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def oracle_count(F: LabeledTree, T: LabeledTree, variant: Variant = Variant.PLAIN,
                 cap: int | None = None) -> int:
    """Count (induced) F-matchings as independent sets of the copy conflict graph."""
    cap = oracle_cap() if cap is None else cap
    copies = enumerate_copies(F, T)
    if len(copies) > cap:
        raise OracleCapExceeded(f"{len(copies)} copies exceed the oracle cap {cap}")
    induced = Variant(variant) is Variant.INDUCED
    closed_nbhd = []
    for c in copies:
        if induced:
            closed_nbhd.append(c.vertices | {y for x in c.vertices for y in T.adj[x]})
        else:
            closed_nbhd.append(c.vertices)
    conflict = [0] * len(copies)
    for i, a in enumerate(copies):
        for j in range(i + 1, len(copies)):
            b = copies[j]
            # induced: touching via a T-edge counts as a conflict too
            if closed_nbhd[i] & b.vertices:
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
    return _count_independent(conflict)


def _count_independent(nbr: list[int]) -> int:
    memo: dict[int, int] = {}

    def go(mask: int) -> int:
        if mask == 0:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        val = go(rest) + go(rest & ~nbr[v])
        memo[mask] = val
        return val

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 2 * len(nbr) + 200))
    try:
        return go((1 << len(nbr)) - 1)
    finally:
        sys.setrecursionlimit(limit)

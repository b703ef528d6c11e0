"""Labeled trees, the Pruefer codec and the Joyal bijection.

Vertices are always labeled ``1..n``.  Every value type here is immutable,
so trees can be shared freely between threads and used as dict keys.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class TreeError(ValueError):
    """Raised for malformed trees, codes or markings."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LabeledTree:
    """Undirected tree on vertices ``1..n``.

    Edges are stored normalized (smaller label first) and sorted, so two
    trees compare equal exactly when they have the same edge set.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise TreeError(f"tree needs at least one vertex, got n={self.n}")
        edges = tuple(sorted(_norm(int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        if len(edges) != self.n - 1:
            raise TreeError(f"a tree on {self.n} vertices has {self.n - 1} edges, got {len(edges)}")
        for u, v in edges:
            if u == v:
                raise TreeError(f"self-loop at {u}")
            if u < 1 or v > self.n:
                raise TreeError(f"edge ({u}, {v}) out of range 1..{self.n}")
        if len(set(edges)) != len(edges):
            raise TreeError("duplicate edge")
        # n-1 distinct edges + connected => acyclic
        seen = {1}
        stack = [1]
        adj = self.adj
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != self.n:
            raise TreeError("graph is not connected")

    @classmethod
    def single(cls) -> LabeledTree:
        return cls(1, ())

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor tuples indexed by label (index 0 unused)."""
        nbrs: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj[1:]), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and v in self.adj[u]

    def parents(self, root: int = 1) -> list[int]:
        """Parent array for the orientation away from ``root`` (root maps to 0)."""
        parent = [0] * (self.n + 1)
        for x, p in self.bfs(root):
            parent[x] = p
        return parent

    def bfs(self, root: int = 1) -> list[tuple[int, int]]:
        """``(vertex, parent)`` pairs in breadth-first order from ``root``."""
        if not 1 <= root <= self.n:
            raise TreeError(f"vertex {root} not in tree")
        order = [(root, 0)]
        q = deque(order)
        adj = self.adj
        while q:
            x, p = q.popleft()
            for y in adj[x]:
                if y != p:
                    order.append((y, x))
                    q.append((y, x))
        return order

    def path(self, a: int, b: int) -> list[int]:
        """Vertex sequence of the unique path from ``a`` to ``b``."""
        parent = self.parents(b)
        out = [a]
        while out[-1] != b:
            out.append(parent[out[-1]])
        return out

    def relabel(self, mapping: dict[int, int]) -> LabeledTree:
        return LabeledTree(self.n, tuple((mapping[u], mapping[v]) for u, v in self.edges))

    def to_edgelist(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> LabeledTree:
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows:
            raise TreeError("empty edge list")
        try:
            if len(rows[0]) != 1:
                raise TreeError("first line must hold the vertex count")
            n = int(rows[0][0])
            edges = []
            for row in rows[1:]:
                if len(row) != 2:
                    raise TreeError(f"bad edge line: {' '.join(row)!r}")
                edges.append((int(row[0]), int(row[1])))
        except ValueError as exc:
            if isinstance(exc, TreeError):
                raise
            raise TreeError(f"non-integer token in edge list: {exc}") from None
        return cls(n, tuple(edges))


@dataclass(frozen=True)
class RootedTree:
    tree: LabeledTree
    root: int = 1

    def __post_init__(self):
        if not 1 <= self.root <= self.tree.n:
            raise TreeError(f"root {self.root} not in 1..{self.tree.n}")

    @property
    def n(self) -> int:
        return self.tree.n

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.tree.n + 1)]
        for x, p in self.tree.bfs(self.root)[1:]:
            kids[p].append(x)
        return kids

    def normalized(self) -> RootedTree:
        """Relabel in BFS order so the root becomes 1."""
        mapping = {x: i for i, (x, _) in enumerate(self.tree.bfs(self.root), start=1)}
        return RootedTree(self.tree.relabel(mapping), 1)


@dataclass(frozen=True)
class Forest:
    components: tuple[LabeledTree, ...] = ()

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class FunctionTable:
    """A map ``[n] -> [n]``; ``values[i-1]`` is the image of ``i``."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(x) for x in self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n < 1:
            raise TreeError("function on the empty set")
        for x in vals:
            if not 1 <= x <= n:
                raise TreeError(f"value {x} outside 1..{n}")

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def cycle_vertices(self) -> list[int]:
        """Sorted vertices lying on a cycle of the functional digraph."""
        n = self.n
        state = [0] * (n + 1)  # 0 new, 1 on current walk, 2 done
        on_cycle = []
        for s in range(1, n + 1):
            if state[s]:
                continue
            walk = []
            x = s
            while state[x] == 0:
                state[x] = 1
                walk.append(x)
                x = self.values[x - 1]
            if state[x] == 1:
                on_cycle.extend(walk[walk.index(x):])
            for y in walk:
                state[y] = 2
        return sorted(on_cycle)


@dataclass(frozen=True)
class MarkedTree:
    tree: LabeledTree
    left: int
    right: int

    def __post_init__(self):
        n = self.tree.n
        if not (1 <= self.left <= n and 1 <= self.right <= n):
            raise TreeError("marks must be vertices of the tree")


def from_pruefer(code: Sequence[int]) -> LabeledTree:
    """Decode a Pruefer sequence of length ``n-2``."""
    n = len(code) + 2
    degree = [1] * (n + 1)
    for x in code:
        if not 1 <= x <= n:
            raise TreeError(f"label {x} outside 1..{n}")
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return LabeledTree(n, tuple(edges))


def to_pruefer(t: LabeledTree) -> tuple[int, ...]:
    if t.n < 2:
        raise TreeError("Pruefer code needs at least two vertices")
    degree = [len(a) for a in t.adj]
    removed = [False] * (t.n + 1)
    leaves = [v for v in t.vertices if degree[v] == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(t.n - 2):
        leaf = heapq.heappop(leaves)
        removed[leaf] = True
        nb = next(y for y in t.adj[leaf] if not removed[y])
        code.append(nb)
        degree[nb] -= 1
        if degree[nb] == 1:
            heapq.heappush(leaves, nb)
    return tuple(code)


def joyal_tree(f: FunctionTable) -> MarkedTree:
    """Map ``f`` to its doubly marked tree.

    The cycle vertices ``a_1 < ... < a_m`` become the path
    ``f(a_1) - ... - f(a_m)``; every other ``i`` keeps its edge ``{i, f(i)}``.
    """
    cyc = f.cycle_vertices()
    spine = [f(a) for a in cyc]
    on_cycle = set(cyc)
    edges = list(zip(spine, spine[1:]))
    edges += [(i, f(i)) for i in range(1, f.n + 1) if i not in on_cycle]
    return MarkedTree(LabeledTree(f.n, tuple(edges)), spine[0], spine[-1])


def joyal_inverse(mt: MarkedTree) -> FunctionTable:
    """Recover the function from a marked tree.

    With ``p_1..p_m`` the left-to-right path and ``a_1 < ... < a_m`` its
    sorted vertices, ``f(a_j) = p_j``; off-path vertices point toward the path.
    """
    t = mt.tree
    spine = t.path(mt.left, mt.right)
    values = [0] * (t.n + 1)
    for a, p in zip(sorted(spine), spine):
        values[a] = p
    # orient everything else toward the path
    seen = set(spine)
    q = deque(spine)
    while q:
        x = q.popleft()
        for y in t.adj[x]:
            if y not in seen:
                seen.add(y)
                values[y] = x
                q.append(y)
    return FunctionTable(tuple(values[1:]))


def split_edge(t: LabeledTree, u: int, v: int) -> tuple[RootedTree, RootedTree]:
    """Cut edge ``{u, v}``.

    Returns ``(T^(u,v), T^(v,u))``: the side containing ``v`` rooted at ``v``
    and the side containing ``u`` rooted at ``u``.  Both are relabeled to
    ``1..k`` preserving the relative order of the original labels.
    """
    if not t.has_edge(u, v):
        raise TreeError(f"({u}, {v}) is not an edge")
    return _side(t, u, v), _side(t, v, u)


def _side(t: LabeledTree, cut: int, keep: int) -> RootedTree:
    comp = component_vertices(t, cut, keep)
    return induced_subtree(t, comp, keep)


def component_vertices(t: LabeledTree, cut: int, keep: int) -> list[int]:
    """Sorted vertices of the component of ``t - {cut, keep}`` containing ``keep``."""
    seen = {keep, cut}
    stack = [keep]
    while stack:
        x = stack.pop()
        for y in t.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    seen.discard(cut)
    return sorted(seen)


def induced_subtree(t: LabeledTree, vertices: Iterable[int], root: int) -> RootedTree:
    """The subtree spanned by a connected vertex set, relabeled order-preservingly."""
    verts = sorted(vertices)
    mapping = {x: i for i, x in enumerate(verts, start=1)}
    edges = tuple((mapping[a], mapping[b]) for a, b in t.edges if a in mapping and b in mapping)
    return RootedTree(LabeledTree(len(verts), edges), mapping[root])


def graft(host: LabeledTree, at: int, sub: RootedTree, via_path_len: int = 1) -> LabeledTree:
    """Attach a copy of ``sub`` to ``host`` at vertex ``at``.

    With ``via_path_len=1`` the edge ``{at, root(sub)}`` is added; with 2 a
    fresh vertex sits between them.  Host labels are kept; new vertices get
    ``n_host+1, ...`` (the intermediate vertex first).
    """
    if not 1 <= at <= host.n:
        raise TreeError(f"vertex {at} not in host")
    if via_path_len not in (1, 2):
        raise TreeError("via_path_len must be 1 or 2")
    offset = host.n + via_path_len - 1
    edges = list(host.edges)
    edges += [(a + offset, b + offset) for a, b in sub.tree.edges]
    if via_path_len == 1:
        edges.append((at, sub.root + offset))
    else:
        mid = host.n + 1
        edges += [(at, mid), (mid, sub.root + offset)]
    return LabeledTree(offset + sub.n, tuple(edges))


def path_tree(k: int) -> LabeledTree:
    return LabeledTree(k, tuple((i, i + 1) for i in range(1, k)))


def star_tree(leaves: int) -> LabeledTree:
    """``K_{1,leaves}`` with center 1."""
    return LabeledTree(leaves + 1, tuple((1, i) for i in range(2, leaves + 2)))

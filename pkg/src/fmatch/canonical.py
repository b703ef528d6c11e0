"""AHU canonical codes for rooted trees and R-leaf detection."""

from __future__ import annotations

from dataclasses import dataclass

from .trees import LabeledTree, RootedTree


@dataclass(frozen=True, order=True)
class CanonCode:
    """Balanced-parenthesis code; equal codes <=> rooted-isomorphic trees."""

    code: str

    @property
    def size(self) -> int:
        return len(self.code) // 2

    def __str__(self):
        return self.code


LEAF = CanonCode("()")


def codes_below(adj, root: int, parent_of_root: int = 0) -> dict[int, str]:
    """Code string of every vertex's subtree, oriented away from ``root``."""
    order = [(root, parent_of_root)]
    i = 0
    while i < len(order):
        x, p = order[i]
        order.extend((y, x) for y in adj[x] if y != p)
        i += 1
    codes: dict[int, str] = {}
    kids: dict[int, list[str]] = {}
    for x, p in reversed(order):
        codes[x] = "(" + "".join(sorted(kids.pop(x, ()))) + ")"
        kids.setdefault(p, []).append(codes[x])
    return codes


def canon(rt: RootedTree) -> CanonCode:
    return CanonCode(codes_below(rt.tree.adj, rt.root)[rt.root])


def rooted_iso(a: RootedTree, b: RootedTree) -> bool:
    return a.n == b.n and canon(a) == canon(b)


def split_code(code: CanonCode) -> list[CanonCode]:
    """Codes of the root's child subtrees, in canonical (sorted) order."""
    s = code.code
    out = []
    depth = 0
    start = 1
    for i in range(1, len(s) - 1):
        depth += 1 if s[i] == "(" else -1
        if depth == 0:
            out.append(CanonCode(s[start:i + 1]))
            start = i + 1
    return out


def subtree_sizes(t: LabeledTree, root: int = 1) -> tuple[list[int], list[int]]:
    """``(parent, size)`` arrays for ``t`` rooted at ``root``."""
    order = t.bfs(root)
    parent = [0] * (t.n + 1)
    size = [1] * (t.n + 1)
    for x, p in order:
        parent[x] = p
    for x, p in reversed(order[1:]):
        size[p] += size[x]
    return parent, size


def side_size(parent, size, n: int, u: int, v: int) -> int:
    """Vertex count of the component containing ``v`` after cutting ``{u, v}``."""
    return size[v] if parent[v] == u else n - size[u]


def edge_subtree_codes(t: LabeledTree) -> dict[tuple[int, int], CanonCode]:
    """Code of ``T^(u,v)`` for every ordered edge ``(u, v)``.

    Directed edges are processed by increasing component size so each code
    is assembled from already-known smaller ones.
    """
    parent, size = subtree_sizes(t)
    directed = [(u, v) for a, b in t.edges for u, v in ((a, b), (b, a))]
    directed.sort(key=lambda e: side_size(parent, size, t.n, *e))
    codes: dict[tuple[int, int], str] = {}
    for u, v in directed:
        kids = sorted(codes[(v, w)] for w in t.adj[v] if w != u)
        codes[(u, v)] = "(" + "".join(kids) + ")"
    return {e: CanonCode(c) for e, c in codes.items()}


def has_R_leaf(t: LabeledTree, R: RootedTree) -> tuple[int, int] | None:
    """Smallest ordered edge ``(u, v)`` with ``T^(u,v)`` rooted-isomorphic to ``R``."""
    if t.n < 2:
        return None
    target = canon(R).code
    k = R.n
    parent, size = subtree_sizes(t)
    for u in t.vertices:
        for v in t.adj[u]:
            if side_size(parent, size, t.n, u, v) != k:
                continue
            if codes_below(t.adj, v, u)[v] == target:
                return (u, v)
    return None

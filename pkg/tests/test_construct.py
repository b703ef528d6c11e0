import networkx as nx
import numpy as np
import pytest

from fmatch.canonical import canon, has_R_leaf
from fmatch.construct import (DegeneratePatternError, build_W, build_Y, build_Yr, build_Z,
                              compute_d, find_r0, g_sequence, spine, starting_vertices)
from fmatch.counting import Variant, count, count_mod
from fmatch.experiment import sample_tree
from fmatch.patterns import parse_pattern
from fmatch.trees import LabeledTree, RootedTree, graft, path_tree, star_tree

PLAIN, INDUCED = Variant.PLAIN, Variant.INDUCED
VERTEX = LabeledTree.single()
EDGE = path_tree(2)
P3 = path_tree(3)
K13 = star_tree(3)
FORK = LabeledTree(5, ((1, 2), (2, 3), (3, 4), (3, 5)))

GRID = [(EDGE, PLAIN), (P3, PLAIN), (K13, PLAIN), (FORK, PLAIN), (path_tree(4), PLAIN),
        (VERTEX, INDUCED), (EDGE, INDUCED), (P3, INDUCED), (K13, INDUCED), (FORK, INDUCED)]
GRID_IDS = [f"{F.n}v-{F.edges}-{v.value}" for F, v in GRID]


def nx_tree(t: LabeledTree) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(t.vertices)
    g.add_edges_from(t.edges)
    return g


def is_iso(a: LabeledTree, b: LabeledTree) -> bool:
    return nx.is_isomorphic(nx_tree(a), nx_tree(b))


def lag(d, v):
    return d if v is PLAIN else d + 1


def test_spine_examples():
    s = spine(EDGE)
    assert (s.l, s.b) == (1, (1, 1))
    s = spine(P3)
    assert (s.l, s.b) == (2, (1, 1, 1))
    s = spine(K13)
    assert (s.l, s.b) == (2, (1, 2, 1))
    assert spine(VERTEX).l == 0


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
def test_spine_identity(F, v):
    s = spine(F)
    assert sum(s.b) == F.n
    assert F.n == 1 + sum(s.b[:-1])
    assert s.b[-1] == 1
    diameter = max(nx.eccentricity(nx_tree(F)).values()) if F.n > 1 else 0
    assert s.l == diameter
    for a, b in zip(s.path, s.path[1:]):
        assert F.has_edge(a, b)


def test_spine_is_deterministic():
    F = parse_pattern("star:4")
    assert spine(F) == spine(F)
    assert spine(F).path == (2, 1, 3)


def test_build_W_examples():
    W = build_W(EDGE, 3, PLAIN)
    assert W.tree.tree == path_tree(4)
    assert W.spine_path == (1, 2, 3, 4)
    W = build_W(VERTEX, 4, INDUCED)
    assert W.tree.tree == path_tree(4)
    assert build_W(EDGE, 1, PLAIN).tree.tree == EDGE
    with pytest.raises(DegeneratePatternError):
        build_W(VERTEX, 3, PLAIN)


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
@pytest.mark.parametrize("t", [1, 2, 5])
def test_build_W_sizes(F, v, t):
    W = build_W(F, t, v)
    l = spine(F).l
    if v is PLAIN:
        assert W.tree.n == t * F.n - (t - 1)
        assert len(W.spine_path) == l * t + 1
    else:
        assert W.tree.n == t * F.n
        assert len(W.spine_path) == t * (l + 1)
    for a, b in zip(W.spine_path, W.spine_path[1:]):
        assert W.tree.tree.has_edge(a, b)


def test_starting_vertices_examples():
    assert starting_vertices(EDGE, 4, PLAIN) == [1, 2, 3, 4]   # |P| = 5
    assert starting_vertices(P3, 4, PLAIN) == list(range(1, 8))  # |P| = 9
    assert starting_vertices(VERTEX, 5, INDUCED) == [1, 2, 3, 4, 5]


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
@pytest.mark.parametrize("t", [2, 3, 5])
def test_starting_vertex_totals(F, v, t):
    d = compute_d(F, v)
    starts = starting_vertices(F, t, v)
    if v is PLAIN:
        assert len(starts) == 1 + (t - 1) * (d - 1)
    else:
        assert len(starts) == (t - 1) * d + 1


def test_compute_d_examples():
    assert compute_d(EDGE, PLAIN) == 2
    assert compute_d(P3, PLAIN) == 3
    assert compute_d(VERTEX, INDUCED) == 1


def test_build_Yr_paths():
    for r in range(1, 8):
        assert build_Yr(EDGE, r, PLAIN).tree == path_tree(r)
        assert build_Yr(VERTEX, r, INDUCED).tree == path_tree(r)
    assert build_Yr(EDGE, 2, PLAIN).tree == EDGE
    with pytest.raises(ValueError):
        build_Yr(EDGE, 0, PLAIN)


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
def test_build_Yr_landmarks(F, v):
    d = compute_d(F, v)
    Y1 = build_Yr(F, 1, v)
    assert Y1.n == 1
    assert Y1.root == 1
    if v is PLAIN:
        assert is_iso(build_Yr(F, d, v).tree, F)
    else:
        s = spine(F)
        extended = graft(F, s.path[-1], RootedTree(VERTEX, 1), 1)
        assert is_iso(build_Yr(F, d + 1, v).tree, extended)


def test_g_sequence_examples():
    assert g_sequence(EDGE, 10, PLAIN).values == (1, 2, 3, 5, 8, 13, 21, 34, 55, 89)
    assert g_sequence(VERTEX, 8, INDUCED).values == (2, 3, 5, 8, 13, 21, 34, 55)
    seq = g_sequence(P3, 12, PLAIN)
    assert seq.d == 3 and seq.order == 3
    assert seq.values[:3] == (1, 1, 2)


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
def test_g_sequence_recurrence(F, v):
    d = compute_d(F, v)
    k = lag(d, v)
    seq = g_sequence(F, d + 8, v)
    direct = [count(F, build_Yr(F, r, v).tree, v) for r in range(1, d + 9)]
    assert list(seq.values) == direct
    for r in range(k + 1, d + 9):
        assert seq[r] == seq[r - 1] + seq[r - k]
    if v is PLAIN:
        assert all(seq[r] == 1 for r in range(1, d))
        assert seq[d] == 2
    else:
        assert all(seq[r] == 1 for r in range(1, d))


def test_find_r0_examples():
    # g = 1, 2, 3, 5, 8: g(2) = 2 is already even
    assert find_r0(EDGE, 2, PLAIN) == 2
    assert find_r0(EDGE, 3, PLAIN) == 3
    assert find_r0(EDGE, 4, PLAIN) == 5
    # g' = 2, 3, 5, 8
    assert find_r0(VERTEX, 2, INDUCED) == 1
    assert find_r0(VERTEX, 4, INDUCED) == 4
    assert find_r0(EDGE, 1, PLAIN) == 1
    with pytest.raises(DegeneratePatternError):
        find_r0(VERTEX, 2, PLAIN)
    with pytest.raises(ValueError):
        find_r0(EDGE, 0, PLAIN)


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
@pytest.mark.parametrize("m", [2, 3, 4, 6, 9])
def test_find_r0_minimal_by_direct_count(F, v, m):
    r0 = find_r0(F, m, v)
    direct = [count(F, build_Yr(F, r, v).tree, v) for r in range(1, r0 + 1)]
    assert direct[-1] % m == 0
    assert all(g % m for g in direct[:-1])


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
@pytest.mark.parametrize("m", [2, 3, 4, 6, 9])
def test_build_Y_zero_residue(F, v, m):
    Y = build_Y(F, m, v)
    assert count(F, Y.tree, v) % m == 0


def test_build_Y_examples():
    Y = build_Y(EDGE, 4, PLAIN)
    assert Y.tree == path_tree(5) and count(EDGE, Y.tree) == 8
    Y = build_Y(VERTEX, 4, INDUCED)
    assert Y.tree == path_tree(4) and count(VERTEX, Y.tree, INDUCED) == 8
    assert count(P3, build_Y(P3, 2, PLAIN).tree) % 2 == 0


def test_build_Z_sizes():
    assert build_Z(EDGE, 4, PLAIN).n == 1 + 2 * 5
    assert build_Z(VERTEX, 4, INDUCED).n == 1 + 4 + (1 + 4)
    Z = build_Z(EDGE, 2, PLAIN)
    assert Z.n == 1 + 2 * 2
    assert Z.root == 1 and Z.tree.degree(1) == 2


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
def test_build_Z_shape(F, v):
    m = 3
    Y = build_Y(F, m, v)
    Z = build_Z(F, m, v)
    delta = F.max_degree()
    if v is PLAIN:
        assert Z.n == 1 + (delta + 1) * Y.n
        assert Z.tree.degree(1) == delta + 1
    else:
        assert Z.n == 1 + (delta + 2) * Y.n + (delta + 1)
        assert Z.tree.degree(1) == delta + 2


@pytest.mark.parametrize("F,v", GRID, ids=GRID_IDS)
@pytest.mark.parametrize("m", [2, 3, 6])
def test_nullifying_property(F, v, m):
    Z = build_Z(F, m, v)
    rng = np.random.default_rng(1234 + m)
    for _ in range(20):
        T = sample_tree(int(rng.integers(1, 40)), rng)
        at = int(rng.integers(1, T.n + 1))
        host = graft(T, at, Z, 1)
        assert has_R_leaf(host, Z) is not None
        assert count_mod(F, host, m, v) == 0


def test_Z_leaf_inside_larger_tree():
    # Z hanging anywhere, not only from a vertex of a random host
    Z = build_Z(P3, 4, PLAIN)
    T = graft(graft(path_tree(7), 4, Z, 1), 2, RootedTree(star_tree(3), 1), 1)
    assert count(P3, T) % 4 == 0


def test_Y_is_cached():
    assert build_Y(EDGE, 5, PLAIN) is build_Y(EDGE, 5, PLAIN)
    assert canon(build_Y(EDGE, 5, PLAIN)) == canon(RootedTree(path_tree(4), 1))

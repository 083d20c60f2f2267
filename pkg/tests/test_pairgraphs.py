"""Pair graphs, tree tests, Pruefer sequences, and arrow transports."""

import itertools
import random

import pytest

from hopfgalois.endomorphisms import StructuredEndo, enumerate_end0
from hopfgalois.groups import compose_perm, invert_perm, load_group
from hopfgalois.pairgraphs import (
    UndirectedPairGraph,
    bfs_arrow_tree,
    build_directed,
    build_undirected,
    bullet_transform,
    components,
    count_trees_root_degree,
    degree_of_vertex0,
    dump_lines,
    enumerate_labelled_trees,
    find_directed_path,
    find_simple_cycle,
    gamma_of_path,
    is_tree,
    prufer_decode,
    prufer_encode,
    tree_degree_census,
)

S3 = load_group("s3")


# ── Undirected graphs ────────────────────────────────────────────────────


def test_build_undirected_edges():
    g = build_undirected((0, 1, 3), (1, 2, 3))
    assert g.n == 3
    assert g.edges == ((0, 1), (1, 2), (3, 3))
    assert g.degree(3) == 2  # the loop counts twice
    assert g.degree(0) == 1


def test_build_undirected_validates():
    with pytest.raises(ValueError, match="same length"):
        build_undirected((0, 1), (1,))
    with pytest.raises(ValueError, match="outside"):
        build_undirected((0, 5), (1, 2))


def test_degree_of_vertex0_is_the_zero_count():
    rng = random.Random(0xD36)
    for _ in range(100):
        n = rng.randrange(1, 6)
        mu = tuple(rng.randrange(n + 1) for _ in range(n))
        nu = tuple(rng.randrange(n + 1) for _ in range(n))
        want = sum(1 for x in mu if x == 0) + sum(1 for x in nu if x == 0)
        assert degree_of_vertex0(mu, nu) == want


def test_is_tree_small_cases():
    assert is_tree(build_undirected((0,), (1,)))
    assert is_tree(build_undirected((1,), (0,)))
    assert not is_tree(build_undirected((0,), (0,)))  # loop at 0, vertex 1 cut off
    assert not is_tree(build_undirected((1,), (1,)))  # loop at 1, vertex 0 cut off
    assert is_tree(build_undirected((0, 1), (1, 2)))
    assert not is_tree(build_undirected((1, 2), (2, 1)))  # 2-cycle misses 0
    assert not is_tree(build_undirected((0, 0), (1, 1)))  # double edge


def test_components_partition_vertices():
    g = build_undirected((1, 2, 0, 4), (2, 1, 0, 4))
    comps = components(g)
    seen = sorted(v for c in comps for v in c.vertices)
    assert seen == [0, 1, 2, 3, 4]
    assert sum(c.edge_count for c in comps) == 4
    by_vertices = {c.vertices: c for c in comps}
    assert (3,) in by_vertices  # isolated vertex forms its own component
    assert by_vertices[(3,)].edge_count == 0
    assert by_vertices[(1, 2)].edge_count == 2


def test_bullet_transform():
    g = build_undirected((0, 0, 2), (1, 0, 3))
    # edge (0,1) orients away from 0; the loop (0,0) disappears; the
    # ordinary edge (2,3) doubles.
    assert bullet_transform(g) == [(0, 1), (2, 3), (3, 2)]


# ── Pruefer machinery ────────────────────────────────────────────────────


def test_prufer_round_trip_exhaustive():
    for n in range(1, 6):
        seen = set()
        for seq in itertools.product(range(n + 1), repeat=max(0, n - 1)):
            edges = prufer_decode(seq, n)
            assert len(edges) == n
            assert is_tree(UndirectedPairGraph(n, tuple(edges)))
            assert prufer_encode(edges, n) == tuple(seq)
            seen.add(tuple(sorted(tuple(sorted(e)) for e in edges)))
        assert len(seen) == (n + 1) ** max(0, n - 1)


def test_prufer_decode_validates():
    with pytest.raises(ValueError):
        prufer_decode((0, 0), 2)  # wrong length
    with pytest.raises(ValueError):
        prufer_decode((5,), 2)  # label out of range


def test_enumerate_labelled_trees():
    trees = list(enumerate_labelled_trees(3))
    assert len(trees) == 16
    for seq, edges in trees:
        assert prufer_decode(seq, 3) == list(edges)


def test_degree_census_matches_formula():
    for n in range(1, 7):
        census = tree_degree_census(n)
        for d in range(1, n + 1):
            assert census[d] == count_trees_root_degree(n, d)
        assert sum(census.values()) == (n + 1) ** (n - 1)
    assert count_trees_root_degree(4, 0) == 0
    assert count_trees_root_degree(4, 5) == 0


# ── Directed graphs and transports ───────────────────────────────────────


F = StructuredEndo(S3, 2, (0, 1), (None, 3))
G = StructuredEndo(S3, 2, (1, 2), (2, 4))


def test_build_directed_arrow_inventory():
    directed = build_directed(F, G)
    labels = [c.label for c in directed.arrows]
    # edge 1 has theta_f = 0: only the forward arrow exists (tail 0).
    assert labels == ["a1", "a2", "b2"]
    a1 = directed.arrow("a", 1)
    assert (a1.tail, a1.head) == (0, 1)
    assert a1.transport == (0,) * 6  # constant identity from a 0 tail
    with pytest.raises(KeyError):
        directed.arrow("b", 1)


def test_forward_and_reverse_transports_are_inverse():
    directed = build_directed(F, G)
    a2 = directed.arrow("a", 2)
    b2 = directed.arrow("b", 2)
    assert compose_perm(a2.transport, b2.transport) == tuple(range(6))
    assert invert_perm(a2.transport) == b2.transport


def test_gamma_of_path_composes_transports():
    directed = build_directed(F, G)
    pm = gamma_of_path(F, G, [("a", 1), ("a", 2)])
    assert (pm.source, pm.target) == (0, 2)
    want = compose_perm(directed.arrow("a", 2).transport, directed.arrow("a", 1).transport)
    assert pm.images == want
    with pytest.raises(ValueError, match="not composable"):
        gamma_of_path(F, G, [("a", 2), ("a", 2)])
    empty = gamma_of_path(F, G, [], source=1)
    assert empty.images == tuple(range(6))


def test_find_directed_path_and_bfs_tree():
    directed = build_directed(F, G)
    pm = find_directed_path(directed, 0, 2, S3)
    assert pm.source == 0 and pm.target == 2
    maps = bfs_arrow_tree(directed, 0, S3)
    assert set(maps) == {0, 1, 2}
    assert maps[2].images == pm.images
    with pytest.raises(ValueError, match="no directed path"):
        # vertex 0 has no incoming arrows by construction
        find_directed_path(directed, 2, 0, S3)


def test_find_simple_cycle_on_a_unicyclic_component():
    # theta pair (1,2)/(2,1) over coordinates {1,2}: a 2-cycle off vertex 0.
    f = StructuredEndo(S3, 2, (1, 2), (0, 0))
    g = StructuredEndo(S3, 2, (2, 1), (5, 1))
    und = build_undirected(f.theta, g.theta)
    directed = build_directed(f, g)
    comp = next(c for c in components(und) if 0 not in c.vertices)
    fwd, rev = find_simple_cycle(und, directed, comp, S3)
    assert fwd.source == fwd.target == 1
    assert rev.source == rev.target == 1
    assert compose_perm(fwd.images, rev.images) == tuple(range(6))
    # both orientations are automorphisms of T
    assert sorted(fwd.images) == list(range(6))
    tree_comp = next(c for c in components(und) if 0 in c.vertices)
    with pytest.raises(ValueError, match="no cycle"):
        find_simple_cycle(und, directed, tree_comp, S3)


def test_dump_lines_format():
    und = build_undirected(F.theta, G.theta)
    lines = dump_lines(und, build_directed(F, G))
    assert lines[0] == "e1\t0\t1"
    assert any(line.startswith("a2\t") for line in lines)


def test_theta_only_dependence_of_the_tree_verdict():
    # The undirected graph ignores the phi decorations entirely, so any
    # two endo pairs sharing source maps get the same verdict.
    rng = random.Random(0x7355)
    endos = list(enumerate_end0(S3, 2))
    for _ in range(200):
        f1, g1 = rng.choice(endos), rng.choice(endos)
        assert build_undirected(f1.theta, g1.theta).edges == tuple(
            zip(f1.theta, g1.theta)
        )

"""Family constructors: shapes, symmetry validation, and the values
that pin each construction down."""

import pytest

from critgroups.actions import classify_dihedral_orbits, is_harmonic
from critgroups.divisors import critical_group
from critgroups.families import (
    chained_copies,
    circulant,
    concentric_polygon,
    fibonacci,
    h_graph,
    intro_counterexample,
    klein_example,
)
from critgroups.multigraph import DisconnectedGraphError, Multigraph, spanning_tree_count
from critgroups.quotients import quotient_graph


def test_fibonacci():
    assert [fibonacci(i) for i in range(1, 11)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    with pytest.raises(ValueError):
        fibonacci(0)


def test_h_graph_counts_and_recurrence():
    counts = [spanning_tree_count(h_graph(k)) for k in range(1, 9)]
    assert counts[0] == 2 and counts[1] == 5
    for k in range(3, 9):
        assert counts[k - 1] == 3 * counts[k - 2] - counts[k - 3]
    for k in range(1, 9):
        assert counts[k - 1] == fibonacci(2 * k + 1)


def test_h_graph_group_cyclic_with_end_difference_generator():
    for k in range(1, 8):
        g = h_graph(k)
        cg = critical_group(g)
        assert len(cg.group.factors) <= 1
        gamma = [0] * (k + 1)
        gamma[k - 1] = 1   # second-to-last path vertex
        gamma[k] = -1      # the end vertex
        assert cg.order_of(gamma) == cg.group.order == fibonacci(2 * k + 1)
    with pytest.raises(ValueError):
        h_graph(0)


def test_circulant_shapes():
    g7, a7 = circulant(7, [1, 2])
    assert g7.vertex_count == 7 and len(g7.edges) == 14
    assert spanning_tree_count(g7) == 7 * 13 * 13
    g9, _ = circulant(9, [1, 3])
    assert g9.vertex_count == 9 and len(g9.edges) == 18
    g14, _ = circulant(14, [2, 5])
    assert g14.vertex_count == 14 and len(g14.edges) == 28
    # a step and its negative double the edges; exact duplicates drop
    g3, _ = circulant(3, [1, 2])
    assert len(g3.edges) == 6 and spanning_tree_count(g3) == 12
    g5a, _ = circulant(5, [1, 1])
    g5b, _ = circulant(5, [1])
    assert g5a.edges == g5b.edges


def test_circulant_validation():
    with pytest.raises(ValueError):
        circulant(2, [1])
    with pytest.raises(ValueError):
        circulant(5, [0])
    with pytest.raises(ValueError):
        circulant(5, [5])
    with pytest.raises(DisconnectedGraphError):
        circulant(4, [2])
    with pytest.raises(DisconnectedGraphError):
        circulant(6, [2])


def test_circulant_action_is_harmonic_dihedral():
    for n, steps in ((7, [1, 2]), (9, [1, 3]), (14, [2, 5]), (8, [1, 4])):
        g, act = circulant(n, steps)
        assert act.n == n
        assert len(act.elements) == 2 * n
        assert is_harmonic(g, act.elements)
        lab = classify_dihedral_orbits(g, act)
        assert (lab.s, lab.t) == (1, 0)


def test_circulant_quotient_matches_h_graph():
    """Quotient by the first reflection equals the fan graph after the
    explicit relabeling (mirror of the index order)."""
    for n in (5, 7, 9, 11, 13):
        k = (n - 1) // 2
        g, act = circulant(n, [1, 2])
        q = quotient_graph(g, [act.sigma1])
        hk = h_graph(k)
        mapping = {}
        for qv in range(q.quotient.vertex_count):
            m = min(q.fiber(qv))
            if m == k:
                mapping[qv] = 0       # the reflection-fixed vertex
            elif m == 0:
                mapping[qv] = k       # orbit {v1, vn} plays the end vertex
            else:
                mapping[qv] = k - m
        mapped = sorted(
            tuple(sorted((mapping[u], mapping[v]))) for u, v in q.quotient.edges
        )
        assert mapped == list(hk.edges)


def test_concentric_shapes():
    g4, act4 = concentric_polygon(4)
    assert g4.vertex_count == 12 and len(g4.edges) == 20
    g3, act3 = concentric_polygon(3)
    assert g3.vertex_count == 9 and len(g3.edges) == 15
    for n in (3, 4, 5, 6):
        g, act = concentric_polygon(n)
        assert act.n == n
        lab = classify_dihedral_orbits(g, act)
        assert (lab.s, lab.t) == (1, 1)
        qhat = quotient_graph(g, act.elements)
        tree = qhat.quotient
        assert tree.is_connected() and len(tree.edges) == tree.vertex_count - 1
    with pytest.raises(ValueError):
        concentric_polygon(2)


def test_concentric_quotient_groups():
    g4, act4 = concentric_polygon(4)
    q1 = quotient_graph(g4, [act4.sigma1])
    q2 = quotient_graph(g4, [act4.sigma2])
    q3 = quotient_graph(g4, act4.rotation_subgroup())
    assert critical_group(q1.quotient).group.factors == (40,)
    assert critical_group(q2.quotient).group.factors == (30,)
    assert critical_group(q3.quotient).group.factors == (5,)
    assert (q1.quotient.vertex_count, len(q1.quotient.edges)) == (7, 9)
    assert (q2.quotient.vertex_count, len(q2.quotient.edges)) == (6, 8)
    assert (q3.quotient.vertex_count, len(q3.quotient.edges)) == (3, 4)


def test_klein_shapes():
    g, act = klein_example()
    assert g.vertex_count == 6 and len(g.edges) == 8
    assert critical_group(g).group.factors == (2, 2, 8)
    q1 = quotient_graph(g, [act.sigma1])
    tree = q1.quotient
    assert tree.is_connected() and len(tree.edges) == tree.vertex_count - 1
    q2 = quotient_graph(g, [act.sigma2])
    assert (q2.quotient.vertex_count, len(q2.quotient.edges)) == (4, 4)
    assert all(m == 1 for m in q2.quotient.pair_multiplicities().values())
    q3 = quotient_graph(g, act.rotation_subgroup())
    # two doubled edges sharing a vertex
    assert (q3.quotient.vertex_count, len(q3.quotient.edges)) == (3, 4)
    assert sorted(q3.quotient.pair_multiplicities().values()) == [2, 2]


def test_intro_counterexample_values():
    g, act = intro_counterexample()
    assert g.vertex_count == 5 and len(g.edges) == 12
    assert spanning_tree_count(g) == 192
    assert critical_group(g).group.factors == (2, 2, 4, 12)
    # the induced vertex maps: sigma1 swaps the second and third middles,
    # sigma2 the first and second; hubs stay put
    assert act.sigma1 == (0, 1, 3, 2, 4)
    assert act.sigma2 == (0, 2, 1, 3, 4)
    assert act.n == 3
    assert is_harmonic(g, act.elements)


def test_chained_copies_edge_base_gives_cycles():
    base = Multigraph.from_edges(2, [(0, 1)], labels=["a", "b"])
    g, act = chained_copies(base, [1, 0], 0, 1, 5)
    assert g.vertex_count == 5 and len(g.edges) == 5
    assert critical_group(g).group.factors == (5,)
    assert act.n == 5


def test_chained_copies_path_base():
    base = Multigraph.from_edges(3, [(0, 1), (1, 2)], labels=["a", "m", "b"])
    g, act = chained_copies(base, [2, 1, 0], 0, 2, 3)
    assert g.vertex_count == 6 and len(g.edges) == 6
    assert is_harmonic(g, act.elements)
    lab = classify_dihedral_orbits(g, act)
    assert (lab.s, lab.t) == (2, 0)


def test_chained_copies_cycle_base():
    base = Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], labels=["a", "p", "b", "q"])
    g, act = chained_copies(base, [2, 3, 0, 1], 0, 2, 3)
    assert g.vertex_count == 9 and len(g.edges) == 12
    lab = classify_dihedral_orbits(g, act)
    assert (lab.s, lab.t) == (1, 1)


def test_chained_copies_validation():
    base = Multigraph.from_edges(3, [(0, 1), (1, 2)], labels=["a", "m", "b"])
    with pytest.raises(ValueError):
        chained_copies(base, [1, 0, 2], 0, 2, 3)  # not an automorphism
    with pytest.raises(ValueError):
        chained_copies(base, [2, 1, 0], 0, 1, 3)  # phi(a) != b
    with pytest.raises(ValueError):
        chained_copies(base, [2, 1, 0], 0, 0, 3)  # endpoints equal

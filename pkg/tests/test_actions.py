"""Permutation groups on multigraphs: generation, harmonicity,
orbit/stabilizer bookkeeping, and the dihedral orbit labeling."""

import random

import pytest

from critgroups.actions import (
    DihedralAction,
    LabelingImpossibleError,
    NotAutomorphismError,
    OrbitSizeError,
    check_automorphism,
    classify_dihedral_orbits,
    compose,
    generate_group,
    identity_perm,
    is_harmonic,
    orbits,
    pair_stabilizer,
    stabilizer,
)
from critgroups.families import circulant, intro_counterexample, klein_example
from critgroups.multigraph import Multigraph


def cycle(n):
    return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_generate_group_sizes():
    c5 = cycle(5)
    ident = list(range(5))
    assert generate_group(c5, [ident]) == [identity_perm(5)]
    refl = [(5 - i) % 5 for i in range(5)]
    assert len(generate_group(c5, [refl])) == 2
    g7, act = circulant(7, [1, 2])
    assert len(generate_group(g7, [act.sigma1, act.sigma2])) == 14


def test_non_automorphism_rejected():
    path = Multigraph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(NotAutomorphismError):
        check_automorphism(path, [1, 0, 2])
    with pytest.raises(NotAutomorphismError):
        check_automorphism(path, [0, 0, 1])


def test_harmonicity_examples():
    g, act = intro_counterexample()
    assert is_harmonic(g, act.elements)
    star = Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    swap = generate_group(star, [[0, 2, 1, 3]])
    assert not is_harmonic(star, swap)
    c5 = cycle(5)
    rot = generate_group(c5, [[(i + 1) % 5 for i in range(5)]])
    assert is_harmonic(c5, rot)


def test_harmonicity_invariant_under_relabeling():
    rng = random.Random(5)
    star = Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    intro_g, intro_act = intro_counterexample()
    cases = [
        (star, [[0, 2, 1, 3]]),
        (cycle(6), [[(6 - i) % 6 for i in range(6)]]),
        (intro_g, [list(intro_act.sigma1), list(intro_act.sigma2)]),
    ]
    for g, gens in cases:
        group = generate_group(g, gens)
        verdict = is_harmonic(g, group)
        for _ in range(5):
            pi = list(range(g.vertex_count))
            rng.shuffle(pi)
            inv = [0] * len(pi)
            for i, v in enumerate(pi):
                inv[v] = i
            g2 = Multigraph.from_edges(
                g.vertex_count, [(pi[u], pi[v]) for u, v in g.edges]
            )
            group2 = [tuple(pi[p[inv[w]]] for w in range(len(pi))) for p in group]
            assert is_harmonic(g2, group2) == verdict


def test_orbit_stabilizer_consistency():
    g4, act = circulant(9, [1, 3])
    group = list(act.elements)
    for orb in orbits(group, g4.vertex_count):
        for v in orb:
            assert len(orb) * len(stabilizer(group, v)) == len(group)
    ident_orbits = orbits([identity_perm(5)], 5)
    assert ident_orbits == [[v] for v in range(5)]
    c5 = cycle(5)
    rot = generate_group(c5, [[(i + 1) % 5 for i in range(5)]])
    assert orbits(rot, 5) == [[0, 1, 2, 3, 4]]
    assert all(len(stabilizer(rot, v)) == 1 for v in range(5))


def test_pair_stabilizer():
    g, act = intro_counterexample()
    h = pair_stabilizer(act.elements, 0, 4)  # both hubs fixed by everything
    assert len(h) == 6


def test_dihedral_action_validation():
    c6 = cycle(6)
    rot = [(i + 1) % 6 for i in range(6)]
    refl = [(6 - i) % 6 for i in range(6)]
    with pytest.raises(ValueError):
        DihedralAction.build(c6, rot, refl)  # rot is not an involution
    act = DihedralAction.build(c6, refl, [(1 - i) % 6 for i in range(6)])
    assert act.n == 6
    assert len(act.elements) == 12


def test_dihedral_element_structure():
    g, act = circulant(7, [1, 2])
    rho = act.rotation
    expected = set()
    power = identity_perm(7)
    for _ in range(act.n):
        expected.add(power)
        expected.add(compose(power, act.sigma1))
        power = compose(rho, power)
    assert expected == set(act.elements)


def test_classification_shapes():
    g7, a7 = circulant(7, [1, 2])
    lab = classify_dihedral_orbits(g7, a7)
    assert (lab.s, lab.t) == (1, 0)
    gk, ak = klein_example()
    labk = classify_dihedral_orbits(gk, ak)
    assert (labk.s, labk.t, labk.flipped_count) == (3, 0, 2)
    rows = sorted(tuple(sorted(p.row)) for p in labk.pinned)
    assert rows == [(0, 1), (2, 4), (3, 5)]  # {x1,x2}, {a1,b1}, {a2,b2}


def test_classification_rejects_small_orbits():
    g, act = intro_counterexample()
    with pytest.raises(OrbitSizeError):
        classify_dihedral_orbits(g, act)


def test_labeling_impossible_for_rotation_stabilizer():
    # Klein example plus a pair c1, c2 swapped by both involutions: the
    # pair is stabilized by the rotation, which neither reflection
    # assignment can accommodate.
    g = Multigraph.from_edges(
        8,
        [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5),
         (6, 0), (6, 1), (7, 0), (7, 1)],
        labels=["x1", "x2", "a1", "a2", "b1", "b2", "c1", "c2"],
    )
    sigma1 = [1, 0, 2, 3, 4, 5, 7, 6]
    sigma2 = [0, 1, 4, 5, 2, 3, 7, 6]
    act = DihedralAction.build(g, sigma1, sigma2)
    assert act.n == 2
    with pytest.raises(LabelingImpossibleError):
        classify_dihedral_orbits(g, act)


def test_labeling_with_rotated_seed_still_valid():
    for n, steps in ((7, [1, 2]), (9, [1, 3])):
        g, act = circulant(n, steps)
        for shift in (0, 1, 3):
            lab = classify_dihedral_orbits(g, act, seed_shift=shift)
            assert (lab.s, lab.t) == (1, 0)


def test_concentric_orbit_stabilizers():
    from critgroups.families import concentric_polygon

    g, act = concentric_polygon(4)
    group = list(act.elements)
    orbs = orbits(group, g.vertex_count)
    sizes = sorted(len(o) for o in orbs)
    assert sizes == [4, 8]  # inner ring and the outer double ring
    for orb in orbs:
        for v in orb:
            stab = stabilizer(group, v)
            assert len(stab) == (2 if len(orb) == 4 else 1)

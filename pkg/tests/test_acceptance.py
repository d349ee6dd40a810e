"""Acceptance suite: every criterion at exact equality.

Each criterion prints one PASS/FAIL line (visible with -s or in captured
output).  Two assertions reproduce literal reference values that exact
computation contradicts; they are kept faithful and fail honestly:

  * criterion 2: the stated kernel (Z/2)^2 and quotient (Z/2)^3 for the
    complete-bipartite example.  Exact lattice computation gives Z/2 and
    (Z/2)^2; the stated values assume all size-n orbits sit on one
    reflection class, which fails here (two orbits are pinned by the
    first involution, one by the second).
  * criterion 3: the stated decomposition Z/160 + Z/30 + Z/5 of the
    concentric-polygon group.  Two independent Smith-form computations
    on the literal figure graph give Z/10 + Z/10 + Z/240 (same order
    24000, same quotient groups, same index-4 cokernel, still
    non-split).
"""

import random
from math import gcd

import pytest

from critgroups.abelian import FinAbGroup, direct_sum, is_isomorphic
from critgroups.decomposition import (
    DecompositionContext,
    pair_sum_conditions,
    pair_sum_matrix,
    pullback_subgroup,
    random_degree_zero,
    run_all_checks,
    split_pair_sum,
    split_triple_sum,
    triple_sum_conditions,
    triple_sum_matrix,
)
from critgroups.divisors import critical_group, is_principal, quotient_by_subgroup
from critgroups.families import (
    chained_copies,
    circulant,
    concentric_polygon,
    fibonacci,
    h_graph,
    intro_counterexample,
    klein_example,
)
from critgroups.intmatrix import (
    IntMatrix,
    det_bareiss,
    hermite_normal_form,
    lattice_contains,
    smith_normal_form,
)
from critgroups.multigraph import Multigraph, spanning_tree_count
from critgroups.oracles import brute_force_spanning_trees
from critgroups.quotients import is_pullback, pullback, quotient_graph


def report(criterion: str, ok: bool, detail: str = "") -> bool:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def test_criterion_1_intro_counterexample():
    g, act = intro_counterexample()
    cg = critical_group(g)
    ok = cg.group.factors == (2, 2, 4, 12)
    orders = []
    factors = []
    for gens in ([act.sigma1], [act.sigma2], act.rotation_subgroup()):
        q = quotient_graph(g, gens)
        grp = critical_group(q.quotient).group
        orders.append(grp.order)
        factors.append(grp.factors)
    ok &= factors[0] == (12,) and factors[1] == (12,)
    ok &= factors[2] == (2, 2)
    product = orders[0] * orders[1] * orders[2]
    ok &= product == 576 and cg.group.order == 192
    ok &= cg.group.order % product != 0  # the direct sum cannot embed
    assert report(
        "1 (doubled-edge counterexample)",
        ok,
        f"K={cg.group.factors} quotients={factors} product={product}",
    )


KLEIN_CTX = DecompositionContext(*klein_example())


def test_criterion_2_klein_computable_parts():
    ctx = KLEIN_CTX
    ok = ctx.cg.group.factors == (2, 2, 8)
    t1 = ctx.q1.quotient
    ok &= t1.is_connected() and len(t1.edges) == t1.vertex_count - 1  # tree
    sq = ctx.q2.quotient
    ok &= (sq.vertex_count, len(sq.edges)) == (4, 4)
    ok &= all(m == 1 for m in sq.pair_multiplicities().values())  # a plain square
    two = ctx.q3.quotient
    ok &= (two.vertex_count, len(two.edges)) == (3, 4)
    ok &= sorted(two.pair_multiplicities().values()) == [2, 2]  # two 2-cycles, one shared vertex
    assert report(
        "2 (Klein example, group and quotient shapes)",
        ok,
        f"K={ctx.cg.group.factors}",
    )


def test_criterion_2_klein_stated_kernel_and_quotient():
    """Faithful to the stated values; exact computation contradicts them.

    The natural-map kernel computes to Z/2 and the cokernel to
    (Z/2)^2 (verified against lattice oracles and by hand); the stated
    (Z/2)^2 and (Z/2)^3 would require every size-2 orbit to be pinned
    by the same involution, which this action does not satisfy.
    """
    from critgroups.decomposition import check_kernel_structure, check_quotient_structure

    ctx = KLEIN_CTX
    kernel = check_kernel_structure(ctx).computed["kernel"]
    quotient = check_quotient_structure(ctx).computed["quotient"]
    ok = kernel == [2, 2] and quotient == [2, 2, 2]
    report(
        "2 (Klein example, stated kernel/quotient values)",
        ok,
        f"computed kernel={kernel}, quotient={quotient}; stated [2,2] and [2,2,2]",
    )
    assert kernel == [2, 2], (
        f"stated kernel (Z/2)^2, exact computation gives {kernel}; "
        "see notes/decisions ledger: mixed reflection classes"
    )
    assert quotient == [2, 2, 2], (
        f"stated quotient (Z/2)^3, exact computation gives {quotient}"
    )


G4_CTX = DecompositionContext(*concentric_polygon(4))


def test_criterion_3_concentric_computable_parts():
    ctx = G4_CTX
    ok = ctx.cg.group.order == 24000
    hs = [cgq.group.factors for cgq in ctx.cg_h]
    ok &= hs == [(40,), (30,), (5,)]
    j, gens = pullback_subgroup(ctx)
    quot = quotient_by_subgroup(ctx.cg, [d.values for d in gens])
    ok &= ctx.cg.group.order == j.order * quot.order
    ok &= quot.factors == (4,)
    ok &= j.order == 6000  # index 4
    # non-splitting by element orders: the true group has an element of
    # order beyond anything in the split direct sum
    split = direct_sum(FinAbGroup((40,)), FinAbGroup((30,)), FinAbGroup((5,)), FinAbGroup((4,)))
    ok &= split.exponent == 120
    ok &= ctx.cg.group.exponent > split.exponent
    ok &= not is_isomorphic(ctx.cg.group, split)
    assert report(
        "3 (concentric polygons, order/quotients/index/non-splitting)",
        ok,
        f"|K|={ctx.cg.group.order} K={ctx.cg.group.factors} quotients={hs} "
        f"cokernel={quot.factors} exponent {ctx.cg.group.exponent} vs split {split.exponent}",
    )


def test_criterion_3_concentric_stated_group():
    """Faithful to the stated group; exact computation contradicts it.

    Both this package's Smith form and an independent implementation
    give Z/10 + Z/10 + Z/240 for the literal figure graph.
    """
    computed = G4_CTX.cg.group
    stated = FinAbGroup((160, 30, 5))
    ok = is_isomorphic(computed, stated)
    report(
        "3 (concentric polygons, stated isomorphism type)",
        ok,
        f"computed {computed.factors}, stated {stated.factors}",
    )
    assert is_isomorphic(computed, stated), (
        f"stated Z/160+Z/30+Z/5 = {stated.factors}, exact computation gives "
        f"{computed.factors}; see notes/decisions ledger"
    )


def test_criterion_4_fibonacci_circulants():
    ok = True
    details = []
    counts = {k: spanning_tree_count(h_graph(k)) for k in range(1, 9)}
    ok &= counts[1] == 2 and counts[2] == 5
    for k in range(3, 9):
        ok &= counts[k] == 3 * counts[k - 1] - counts[k - 2]
    for n in (3, 5, 7, 9, 11, 13, 15):
        k = (n - 1) // 2
        fn = fibonacci(n)
        g, act = circulant(n, [1, 2])
        trees = spanning_tree_count(g)
        ok &= trees == n * fn * fn
        hk = critical_group(h_graph(k))
        ok &= hk.group.order == fn and len(hk.group.factors) <= 1  # cyclic
        gamma = [0] * (k + 1)
        gamma[k - 1] = 1
        gamma[k] = -1
        ok &= hk.order_of(gamma) == fn  # generator of full order
        if gcd(n, fn) == 1:
            cg = critical_group(g)
            ok &= is_isomorphic(
                cg.group, FinAbGroup((fn, fn, n))
            )
        details.append(f"n={n}:{trees}")
    assert report("4 (circulant tree counts and cyclic quotient groups)", ok, " ".join(details))


def _chain(base_name, n):
    bases = {
        "edge": (Multigraph.from_edges(2, [(0, 1)], labels=["a", "b"]), [1, 0], 0, 1),
        "path": (
            Multigraph.from_edges(3, [(0, 1), (1, 2)], labels=["a", "m", "b"]),
            [2, 1, 0],
            0,
            2,
        ),
        "cycle4": (
            Multigraph.from_edges(
                4, [(0, 1), (1, 2), (2, 3), (3, 0)], labels=["a", "p", "b", "q"]
            ),
            [2, 3, 0, 1],
            0,
            2,
        ),
    }
    base, phi, a, b = bases[base_name]
    return chained_copies(base, phi, a, b, n)


SWEEP = [
    ("circulant3", lambda: circulant(3, [1, 2])),
    ("circulant5", lambda: circulant(5, [1, 2])),
    ("circulant7", lambda: circulant(7, [1, 2])),
    ("circulant9", lambda: circulant(9, [1, 2])),
    ("circulant11", lambda: circulant(11, [1, 2])),
    ("circulant13", lambda: circulant(13, [1, 2])),
    ("circulant15", lambda: circulant(15, [1, 2])),
    ("circulant9_13", lambda: circulant(9, [1, 3])),
    ("circulant14_25", lambda: circulant(14, [2, 5])),
    ("concentric3", lambda: concentric_polygon(3)),
    ("concentric4", lambda: concentric_polygon(4)),
    ("concentric5", lambda: concentric_polygon(5)),
    ("concentric6", lambda: concentric_polygon(6)),
    ("klein", klein_example),
    ("chain_edge4", lambda: _chain("edge", 4)),
    ("chain_edge5", lambda: _chain("edge", 5)),
    ("chain_path3", lambda: _chain("path", 3)),
]


def test_criterion_5_theorem_sweep():
    failures = []
    tree_cases = 0
    for name, maker in SWEEP:
        g, act = maker()
        ctx = DecompositionContext(g, act)
        rep = run_all_checks(ctx, trials=10, seed=101, oracle=False, graph_name=name)
        if not rep.passed:
            failures.append(name)
        if any(c.name == "tree_case" for c in rep.checks):
            tree_cases += 1
        order = next(c for c in rep.checks if c.name == "order_identity")
        if ctx.n % 2 == 0 and not any("flagged" in note for note in order.notes):
            failures.append(f"{name}: even-order caveat not flagged")
    ok = not failures and tree_cases >= 8
    assert report(
        "5 (theorem sweep over all family instances)",
        ok,
        f"{len(SWEEP)} instances, {tree_cases} tree cases"
        + (f", failures: {failures}" if failures else ""),
    )


ORACLE_SET = [
    ("klein", KLEIN_CTX),
    ("concentric4", G4_CTX),
    ("circulant5", DecompositionContext(*circulant(5, [1, 2]))),
    ("circulant7", DecompositionContext(*circulant(7, [1, 2]))),
    ("circulant9_13", DecompositionContext(*circulant(9, [1, 3]))),
    ("concentric3", DecompositionContext(*concentric_polygon(3))),
]


def test_criterion_6_oracle_equivalence():
    ok = True
    member_counts = {}
    for name, ctx in ORACLE_SET:
        rng = random.Random(2024)
        pair_m = pair_sum_matrix(ctx)
        triple_m = triple_sum_matrix(ctx)
        hits = 0
        for _ in range(200):
            d = random_degree_zero(ctx.graph, rng, span=4)
            dropped = ctx.cg._dropped(d.values)
            in_pair = pair_sum_conditions(ctx, d.values)
            in_triple = triple_sum_conditions(ctx, d.values)
            ok &= in_pair == lattice_contains(pair_m, dropped)
            ok &= in_triple == lattice_contains(triple_m, dropped)
            if in_pair:
                split_pair_sum(ctx, d.values)  # round-trips or raises
                hits += 1
            if in_triple:
                split_triple_sum(ctx, d.values)
            ok &= is_principal(ctx.cg, d.values) == all(
                x == 0 for x in ctx.cg.project(d.values)
            )
        member_counts[name] = hits
    # pullback injectivity, 50 divisors per quotient
    for name, ctx in (("klein", KLEIN_CTX), ("circulant7", ORACLE_SET[3][1])):
        rng = random.Random(55)
        for q in (ctx.q1, ctx.q2, ctx.q3, ctx.qhat):
            cgq = critical_group(q.quotient)
            for _ in range(50):
                nq = q.quotient.vertex_count
                dhat = [rng.randint(-4, 4) for _ in range(nq)]
                dhat[-1] -= sum(dhat)
                ok &= is_principal(ctx.cg, pullback(q, dhat)) == is_principal(cgq, dhat)
                ok &= is_pullback(q, pullback(q, dhat))
    assert report(
        "6 (membership conditions against lattice oracles)",
        ok,
        f"200 divisors x {len(ORACLE_SET)} instances, pair members {member_counts}",
    )


def test_criterion_7_linear_algebra_suite():
    rng = random.Random(99)
    ok = True
    for _ in range(500):
        r = rng.randint(1, 6)
        c = rng.randint(1, 6)
        m = IntMatrix(r, c, [rng.randint(-9, 9) for _ in range(r * c)])
        snf = smith_normal_form(m)
        ok &= snf.U * m * snf.V == snf.S
        ok &= abs(det_bareiss(snf.U)) == 1 and abs(det_bareiss(snf.V)) == 1
        diag = [snf.S[i, i] for i in range(min(r, c))]
        for a, b in zip(diag, diag[1:]):
            if b != 0:
                ok &= a != 0 and b % a == 0
        hnf = hermite_normal_form(m)
        ok &= m * hnf.T == hnf.H
        ok &= hermite_normal_form(hnf.H).H == hnf.H
    # matrix-tree versus enumeration on every small graph the suite uses
    small = [
        Multigraph.from_edges(2, [(0, 1)]),
        Multigraph.from_edges(3, [(0, 1), (1, 2), (0, 2)]),
        Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        circulant(3, [1, 2])[0],
        klein_example()[0],
        intro_counterexample()[0],
        h_graph(1),
        h_graph(2),
        h_graph(3),
        h_graph(4),
        _chain("path", 3)[0],
        _chain("edge", 5)[0],
    ]
    for g in small:
        assert len(g.edges) <= 20
        if len(g.edges) <= 10:
            ok &= spanning_tree_count(g) == brute_force_spanning_trees(g)
    # the two larger ones still go through the capped oracle
    ok &= spanning_tree_count(intro_counterexample()[0]) == brute_force_spanning_trees(
        intro_counterexample()[0]
    )
    assert report("7 (linear-algebra and matrix-tree suite)", ok, "500 matrices")

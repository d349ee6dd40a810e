"""Quotients of multigraphs by harmonic group actions.

The quotient identifies each vertex orbit to a point.  Edge orbits
running between two distinct vertex orbits descend to quotient edges
(one per orbit); edge orbits inside a single vertex orbit would become
loops and are dropped, with their number reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .actions import Perm, generate_group, orbits, require_harmonic
from .multigraph import Multigraph


@dataclass(frozen=True)
class QuotientResult:
    """A harmonic quotient together with its covering data.

    ``vertex_map`` sends each source vertex to its quotient vertex and
    ``multiplicity`` is the horizontal multiplicity |stabilizer(v)| =
    |group| / orbit size.
    """

    source: Multigraph
    group: tuple[Perm, ...]
    quotient: Multigraph
    vertex_map: tuple[int, ...]
    multiplicity: tuple[int, ...]
    collapsed_edges: int

    @property
    def group_order(self) -> int:
        return len(self.group)

    def fiber(self, qv: int) -> list[int]:
        return [v for v, img in enumerate(self.vertex_map) if img == qv]

    def to_json(self) -> dict:
        g, q = self.source, self.quotient
        return {
            "vertices": [q.label(v) for v in range(q.vertex_count)],
            "edges": [[q.label(u), q.label(v)] for u, v in q.edges],
            "vertex_map": {
                g.label(v): q.label(self.vertex_map[v])
                for v in range(g.vertex_count)
            },
            "multiplicity": {
                g.label(v): self.multiplicity[v] for v in range(g.vertex_count)
            },
            "collapsed_edges": self.collapsed_edges,
        }


def quotient_graph(g: Multigraph, group: Sequence[Sequence[int]]) -> QuotientResult:
    """Quotient of g by the group generated by the given automorphisms.

    The action must be harmonic; that is what makes every edge orbit
    between distinct vertex orbits have exactly |group| members, so the
    quotient edge count is the plain quotient of edge counts.
    """
    elements = tuple(generate_group(g, list(group)))
    require_harmonic(g, elements)
    orbs = orbits(elements, g.vertex_count)
    order = len(elements)

    orbit_index = [0] * g.vertex_count
    for qi, orb in enumerate(orbs):
        for v in orb:
            orbit_index[v] = qi

    labels = [f"o_{g.label(min(orb))}" for orb in orbs]
    between: dict[tuple[int, int], int] = {}
    internal = 0
    for u, v in g.edges:
        a, b = orbit_index[u], orbit_index[v]
        if a == b:
            internal += 1
        else:
            key = (a, b) if a < b else (b, a)
            between[key] = between.get(key, 0) + 1

    qedges: list[tuple[int, int]] = []
    for (a, b), count in sorted(between.items()):
        if count % order != 0:
            raise AssertionError(
                "edge orbit count is not |group|; harmonicity check failed to "
                "catch a degenerate action"
            )
        qedges.extend([(a, b)] * (count // order))

    collapsed = _internal_orbit_count(g, elements, orbit_index)
    quotient = Multigraph.from_edges(len(orbs), qedges, labels)
    mult = tuple(order // len(orbs[orbit_index[v]]) for v in range(g.vertex_count))
    return QuotientResult(
        source=g,
        group=elements,
        quotient=quotient,
        vertex_map=tuple(orbit_index),
        multiplicity=mult,
        collapsed_edges=collapsed,
    )


def _internal_orbit_count(
    g: Multigraph, elements: tuple[Perm, ...], orbit_index: list[int]
) -> int:
    """Number of edge orbits that collapse to loops.

    Within one orbit of endpoint pairs, the pointwise pair stabilizer H
    acts freely on the k parallel edges (that is harmonicity), so the
    edges split into k/|H| regular H-blocks.  Pair-reversing elements
    merge blocks two at a time; an odd leftover block needs an
    involutive reverser to close up on itself.  Parallel edges carry no
    identity of their own, so blocks are merged as far as the action
    allows.
    """
    from .actions import compose, identity_perm, pair_stabilizer

    pairs: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        if orbit_index[u] == orbit_index[v]:
            key = (u, v) if u <= v else (v, u)
            pairs[key] = pairs.get(key, 0) + 1
    total = 0
    seen: set[tuple[int, int]] = set()
    ident = identity_perm(g.vertex_count)
    for base, k in pairs.items():
        if base in seen:
            continue
        u, v = base
        orbit_of_pair = {tuple(sorted((p[u], p[v]))) for p in elements}
        seen.update(orbit_of_pair)
        h = len(pair_stabilizer(elements, u, v)) if u != v else len(
            [p for p in elements if p[u] == u]
        )
        if k % h != 0:
            raise AssertionError("harmonicity check missed a rigid stabilizer")
        blocks = k // h
        reversers = (
            [p for p in elements if p[u] == v and p[v] == u] if u != v else []
        )
        if not reversers:
            total += blocks
        elif blocks % 2 == 0:
            total += blocks // 2
        else:
            if not any(compose(r, r) == ident for r in reversers):
                raise AssertionError(
                    "parallel block cannot close under its reversers"
                )
            total += (blocks + 1) // 2
    return total


def pullback(q: QuotientResult, dhat: Sequence[int]) -> list[int]:
    """Pull a quotient divisor back: value m(v) * dhat(image of v)."""
    if len(dhat) != q.quotient.vertex_count:
        raise ValueError("divisor not indexed by quotient vertices")
    return [
        q.multiplicity[v] * dhat[q.vertex_map[v]]
        for v in range(q.source.vertex_count)
    ]


def pullback_witness(q: QuotientResult, delta: Sequence[int]) -> list[int] | None:
    """The quotient divisor pulling back to delta, or None.

    delta is a pullback iff it is constant on fibers and each value is
    divisible by the horizontal multiplicity there.
    """
    if len(delta) != q.source.vertex_count:
        raise ValueError("divisor not indexed by source vertices")
    if sum(delta) != 0:
        raise ValueError("pullback criterion applies to degree-zero divisors")
    dhat = [None] * q.quotient.vertex_count
    for v, val in enumerate(delta):
        m = q.multiplicity[v]
        if val % m != 0:
            return None
        w = val // m
        img = q.vertex_map[v]
        if dhat[img] is None:
            dhat[img] = w
        elif dhat[img] != w:
            return None
    return [x if x is not None else 0 for x in dhat]


def is_pullback(q: QuotientResult, delta: Sequence[int]) -> bool:
    return pullback_witness(q, delta) is not None


def tree_reduce(q: QuotientResult, delta: Sequence[int]) -> list[int]:
    """Firing script, constant on orbits, sending delta to zero.

    Requires the quotient to be a tree and delta to satisfy the
    pullback criterion.  Works leaf-inward on the quotient: the firing
    count across each quotient edge is the accumulated weight hanging
    below it, then the script lifts through the vertex map.
    """
    tree = q.quotient
    nq = tree.vertex_count
    if len(tree.edges) != nq - 1 or not tree.is_connected():
        raise ValueError("quotient is not a tree")
    dhat = pullback_witness(q, delta)
    if dhat is None:
        raise ValueError("divisor fails the pullback criterion")

    adj: list[list[int]] = [[] for _ in range(nq)]
    for u, v in tree.edges:
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * nq
    order = [0]
    seen = {0}
    for u in order:
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)

    # subtree sums, leaves first
    subtree = list(dhat)
    for u in reversed(order[1:]):
        subtree[parent[u]] += subtree[u]
    shat = [0] * nq
    for u in order[1:]:
        shat[u] = shat[parent[u]] + subtree[u]

    script = [shat[q.vertex_map[v]] for v in range(q.source.vertex_count)]
    low = min(script)
    return [x - low for x in script]

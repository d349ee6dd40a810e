"""Constructors for the graph families used throughout: circulants,
chained copies of a base graph, concentric polygons, the complete
bipartite Klein example, the five-vertex doubled-edge counterexample,
and the fan-shaped circulant quotients.

Each constructor returns the graph together with its dihedral action
(two involutions), already validated: automorphisms, involutions,
group order, and harmonicity.
"""

from __future__ import annotations

from math import gcd

from .actions import DihedralAction, check_automorphism, require_harmonic
from .multigraph import DisconnectedGraphError, Multigraph


def circulant(n: int, steps: list[int]) -> tuple[Multigraph, DihedralAction]:
    """Circulant graph on n vertices with the reflection pair fixing the
    vertex indexing: the first involution sends v_j to v_{n+1-j}, the
    second to v_{n+2-j}.

    Each step contributes one edge per vertex, so a step pair {a, n-a}
    doubles its edges (the triangle with both steps 1 and 2 has twelve
    spanning trees, not three).  Exact duplicate steps are dropped; the
    graph must come out connected.
    """
    if n < 3:
        raise ValueError("circulant needs n >= 3")
    canon = []
    for a in steps:
        a = int(a)
        if not 1 <= a < n:
            raise ValueError(f"step {a} out of range 1..{n - 1}")
        if a not in canon:
            canon.append(a)
    canon.sort()
    if gcd(n, *canon) != 1:
        raise DisconnectedGraphError(
            f"circulant with steps {canon} on {n} vertices is disconnected"
        )
    edges = [(i, (i + a) % n) for a in canon for i in range(n)]
    g = Multigraph.from_edges(n, edges, labels=[f"v{i + 1}" for i in range(n)])
    sigma1 = [(n - 1 - i) % n for i in range(n)]
    sigma2 = [(n - i) % n for i in range(n)]
    action = DihedralAction.build(g, sigma1, sigma2)
    require_harmonic(g, action.elements)
    return g, action


def chained_copies(
    base: Multigraph, phi: list[int], a: int, b: int, n: int
) -> tuple[Multigraph, DihedralAction]:
    """Cycle of n copies of a base graph glued along an involution.

    Copy i contributes every base vertex except b; the vertex b of copy
    i is identified with the vertex a of copy i+1 (indices mod n, so the
    chain closes into a cycle).  The dihedral action is generated by the
    copy-reversing involutions (v, i) -> (phi(v), -i) and
    (v, i) -> (phi(v), 1 - i).
    """
    if n < 2:
        raise ValueError("need at least two copies")
    perm = check_automorphism(base, phi)
    from .actions import compose, identity_perm

    if compose(perm, perm) != identity_perm(base.vertex_count):
        raise ValueError("phi is not an involution")
    if a == b:
        raise ValueError("gluing endpoints must be distinct")
    if perm[a] != b:
        raise ValueError("phi must send the first endpoint to the second")

    kept = [v for v in range(base.vertex_count) if v != b]
    pos = {v: k for k, v in enumerate(kept)}
    m = len(kept)

    def vid(v: int, i: int) -> int:
        i %= n
        if v == b:
            v, i = a, (i + 1) % n
        return i * m + pos[v]

    edges = []
    for i in range(n):
        for u, w in base.edges:
            edges.append((vid(u, i), vid(w, i)))
    labels = [f"{base.label(v)}@{i}" for i in range(n) for v in kept]
    g = Multigraph.from_edges(n * m, edges, labels=labels)

    sigma1 = [0] * (n * m)
    sigma2 = [0] * (n * m)
    for i in range(n):
        for v in kept:
            sigma1[vid(v, i)] = vid(perm[v], -i)
            sigma2[vid(v, i)] = vid(perm[v], 1 - i)
    action = DihedralAction.build(g, sigma1, sigma2)
    require_harmonic(g, action.elements)
    return g, action


def concentric_polygon(n: int) -> tuple[Multigraph, DihedralAction]:
    """Inner n-cycle, outer 2n-cycle, and spokes tying them together.

    Vertices: inner z1..zn, outer x1..xn and y1..yn arranged around the
    outer cycle as x1, y2, x2, y3, ...; each z_i holds spokes to x_i and
    y_i.  The first involution is the reflection fixing z1 (it maps
    indices by j -> n+2-j, exchanging the strands); the second is the
    adjacent reflection j -> n+3-j.
    """
    if n < 3:
        raise ValueError("concentric polygon needs n >= 3")

    def z(i):
        return i % n

    def x(i):
        return n + i % n

    def y(i):
        return 2 * n + i % n

    edges = []
    for i in range(n):
        edges.append((z(i), z(i + 1)))
        edges.append((x(i), y(i)))
        edges.append((x(i), y(i + 1)))
        edges.append((z(i), x(i)))
        edges.append((z(i), y(i)))
    labels = (
        [f"z{i + 1}" for i in range(n)]
        + [f"x{i + 1}" for i in range(n)]
        + [f"y{i + 1}" for i in range(n)]
    )
    g = Multigraph.from_edges(3 * n, edges, labels=labels)

    sigma1 = [0] * (3 * n)
    sigma2 = [0] * (3 * n)
    for i in range(n):  # 0-based index i is 1-based j = i+1
        sigma1[z(i)] = z(n - i)  # j -> n+2-j
        sigma1[x(i)] = y(n - i)
        sigma1[y(i)] = x(n - i)
        sigma2[z(i)] = z(n + 1 - i)  # j -> n+3-j
        sigma2[x(i)] = y(n + 1 - i)
        sigma2[y(i)] = x(n + 1 - i)
    action = DihedralAction.build(g, sigma1, sigma2)
    require_harmonic(g, action.elements)
    return g, action


def klein_example() -> tuple[Multigraph, DihedralAction]:
    """Complete bipartite graph on {x1, x2} and {a1, a2, b1, b2} with
    the involutions swapping x1/x2 and a_i/b_i."""
    g = Multigraph.from_edges(
        6,
        [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)],
        labels=["x1", "x2", "a1", "a2", "b1", "b2"],
    )
    action = DihedralAction.build(g, [1, 0, 2, 3, 4, 5], [0, 1, 4, 5, 2, 3])
    require_harmonic(g, action.elements)
    return g, action


# Edge labels of the five-vertex counterexample, with the two given edge
# permutations; the vertex action is induced from them.
_INTRO_EDGES = {
    "a1": (0, 1), "a2": (0, 1),
    "b1": (0, 2), "b2": (0, 2),
    "c1": (0, 3), "c2": (0, 3),
    "d1": (1, 4), "d2": (1, 4),
    "e1": (2, 4), "e2": (2, 4),
    "f1": (3, 4), "f2": (3, 4),
}
_INTRO_SIGMA1_EDGES = {
    "a1": "a2", "a2": "a1", "b1": "c2", "c2": "b1", "b2": "c1", "c1": "b2",
    "d1": "d2", "d2": "d1", "e1": "f2", "f2": "e1", "e2": "f1", "f1": "e2",
}
_INTRO_SIGMA2_EDGES = {
    "a1": "b2", "b2": "a1", "a2": "b1", "b1": "a2", "c1": "c2", "c2": "c1",
    "d1": "e2", "e2": "d1", "d2": "e1", "e1": "d2", "f1": "f2", "f2": "f1",
}


def _vertex_perm_from_edge_map(edge_map: dict[str, str]) -> list[int]:
    """Vertex permutation induced by a permutation of labeled edges."""
    img = {}
    for e, f in edge_map.items():
        (u1, v1), (u2, v2) = _INTRO_EDGES[e], _INTRO_EDGES[f]
        # endpoints 0/4 (the hubs) are fixed by every symmetry here, which
        # orients each edge and determines the vertex images
        img.setdefault(u1, u2)
        img.setdefault(v1, v2)
        if img[u1] != u2 or img[v1] != v2:
            raise ValueError("edge map does not induce a vertex permutation")
    return [img[v] for v in range(5)]


def intro_counterexample() -> tuple[Multigraph, DihedralAction]:
    """Five vertices v1, x1, x2, x3, v2 with doubled edges from each hub
    to each middle vertex.  The action fixes both hubs, so its orbits
    are too small for the decomposition machinery; it is still harmonic
    because the edge doubling lets stabilizers act freely.
    """
    g = Multigraph.from_edges(
        5,
        sorted(_INTRO_EDGES.values()),
        labels=["v1", "x1", "x2", "x3", "v2"],
    )
    sigma1 = _vertex_perm_from_edge_map(_INTRO_SIGMA1_EDGES)
    sigma2 = _vertex_perm_from_edge_map(_INTRO_SIGMA2_EDGES)
    action = DihedralAction.build(g, sigma1, sigma2)
    require_harmonic(g, action.elements)
    return g, action


def h_graph(k: int) -> Multigraph:
    """Fan on v1..vk plus an end vertex: a path with doubled last edge
    and chords two steps ahead (the chord from v_{k-1} lands on the end
    vertex).  Spanning trees count 2, 5, 13, ... as k grows."""
    if k < 1:
        raise ValueError("need k >= 1")
    end = k  # index of the extra vertex
    edges = []
    for i in range(k - 1):
        edges.append((i, i + 1))
    edges.append((k - 1, end))
    edges.append((k - 1, end))
    for i in range(k - 1):
        edges.append((i, i + 2))  # i+2 == end exactly for the last chord
    labels = [f"v{i + 1}" for i in range(k)] + ["vinf"]
    return Multigraph.from_edges(k + 1, edges, labels=labels)


def fibonacci(n: int) -> int:
    """F(1) = F(2) = 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a

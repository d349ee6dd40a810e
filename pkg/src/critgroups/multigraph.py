"""Finite undirected multigraphs with exact Laplacian computations.

Parallel edges are first-class citizens (repeated endpoint pairs) and
loops are representable but never contribute to degrees, adjacency, or
the Laplacian: chip-firing cannot see them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .intmatrix import IntMatrix, det_bareiss


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices 0..n-1 with optional labels.

    The edge list is canonicalized (each pair sorted, list sorted) so
    equal graphs compare equal; no isomorphism testing happens here.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("negative vertex count")
        canon = []
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            canon.append((u, v) if u <= v else (v, u))
        canon.sort()
        object.__setattr__(self, "edges", tuple(canon))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.vertex_count:
                raise ValueError("label count mismatch")
            if len(set(labels)) != len(labels):
                raise ValueError("duplicate vertex labels")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "Multigraph":
        return cls(vertex_count, tuple(edges), tuple(labels) if labels else None)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex_by_label(self, name: str) -> int:
        if self.labels is None:
            return int(name)
        return self.labels.index(name)

    @property
    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def multiplicity(self, u: int, v: int) -> int:
        pair = (u, v) if u <= v else (v, u)
        return sum(1 for e in self.edges if e == pair)

    def degree(self, v: int) -> int:
        """Loopless degree."""
        return sum(1 for u, w in self.edges if u != w and (u == v or w == v))

    def pair_multiplicities(self) -> Counter:
        """Counter over distinct non-loop endpoint pairs."""
        return Counter(e for e in self.edges if e[0] != e[1])

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n <= 1:
            return True
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n


def adjacency_matrix(g: Multigraph) -> IntMatrix:
    """Symmetric matrix of parallel-edge counts; loops are excluded."""
    n = g.vertex_count
    a = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        if u != v:
            a[u][v] += 1
            a[v][u] += 1
    return IntMatrix.from_rows(a) if n else IntMatrix(0, 0, [])


def laplacian(g: Multigraph) -> IntMatrix:
    """Degree matrix minus adjacency matrix (positive semidefinite)."""
    n = g.vertex_count
    a = adjacency_matrix(g).to_rows() if n else []
    rows = []
    for i in range(n):
        row = [-x for x in a[i]]
        row[i] = g.degree(i)
        rows.append(row)
    return IntMatrix.from_rows(rows) if n else IntMatrix(0, 0, [])


def reduced_laplacian(g: Multigraph, root: int) -> IntMatrix:
    """Laplacian with the root's row and column deleted."""
    if g.vertex_count < 2:
        raise ValueError("need at least two vertices")
    if not g.is_connected():
        raise DisconnectedGraphError("reduced Laplacian needs a connected graph")
    if not (0 <= root < g.vertex_count):
        raise ValueError("root out of range")
    lap = laplacian(g)
    keep = [i for i in range(g.vertex_count) if i != root]
    rows = [[lap[i, j] for j in keep] for i in keep]
    return IntMatrix.from_rows(rows)


def spanning_tree_count(g: Multigraph) -> int:
    """Matrix-tree count; root-independent, loops ignored."""
    if not g.is_connected():
        raise DisconnectedGraphError("spanning trees need a connected graph")
    if g.vertex_count <= 1:
        return 1
    return abs(det_bareiss(reduced_laplacian(g, 0)))

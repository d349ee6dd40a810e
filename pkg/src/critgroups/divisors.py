"""Divisors, chip-firing, and the critical group of a connected multigraph.

The critical group is the cokernel of the reduced Laplacian.  A divisor
class is always carried as an explicit divisor plus a projection into
invariant-factor coordinates; the projection vanishes exactly on
principal divisors, and that equivalence is checked against a lattice
membership test rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abelian import Cokernel, FinAbGroup, cokernel, lattice_quotient
from .intmatrix import IntMatrix, lattice_contains
from .multigraph import DisconnectedGraphError, Multigraph, laplacian, reduced_laplacian


@dataclass(frozen=True)
class Divisor:
    """Integer chip counts on the vertices of a fixed graph."""

    graph: Multigraph
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.graph.vertex_count:
            raise ValueError("divisor length differs from vertex count")
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))

    @classmethod
    def zero(cls, graph: Multigraph) -> "Divisor":
        return cls(graph, (0,) * graph.vertex_count)

    @property
    def degree(self) -> int:
        return sum(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check_same_graph(other)
        return Divisor(self.graph, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check_same_graph(other)
        return Divisor(self.graph, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Divisor":
        return Divisor(self.graph, tuple(-a for a in self.values))

    def _check_same_graph(self, other: "Divisor") -> None:
        if self.graph != other.graph:
            raise ValueError("divisors live on different graphs")

    def to_json(self) -> dict:
        return {self.graph.label(v): x for v, x in enumerate(self.values) if x}


@dataclass(frozen=True)
class FiringScript:
    """How many times each vertex fires (negative means borrowing)."""

    graph: Multigraph
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.graph.vertex_count:
            raise ValueError("script length differs from vertex count")
        object.__setattr__(self, "counts", tuple(int(x) for x in self.counts))


def apply_firing(d: Divisor, s: FiringScript) -> Divisor:
    """Result of running the script: d minus Laplacian times s."""
    if d.graph != s.graph:
        raise ValueError("divisor and script live on different graphs")
    lap = laplacian(d.graph)
    moved = lap.apply(list(s.counts))
    return Divisor(d.graph, tuple(a - b for a, b in zip(d.values, moved)))


class CriticalGroupData:
    """Critical group of a connected multigraph with projection data.

    The root vertex is the lowest index; droping its coordinate turns
    degree-zero divisors into arbitrary integer vectors on the other
    vertices, and the group is the cokernel of the reduced Laplacian.
    """

    def __init__(self, graph: Multigraph):
        if not graph.is_connected():
            raise DisconnectedGraphError("critical group needs a connected graph")
        self.graph = graph
        self.root = 0
        if graph.vertex_count >= 2:
            self.reduced = reduced_laplacian(graph, self.root)
            self._coker: Cokernel | None = cokernel(self.reduced)
            self.group = self._coker.group
        else:
            self.reduced = IntMatrix(0, 0, [])
            self._coker = None
            self.group = FinAbGroup.trivial()

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.group.factors

    def _dropped(self, d: Sequence[int]) -> list[int]:
        vals = list(d)
        if len(vals) != self.graph.vertex_count:
            raise ValueError("divisor length differs from vertex count")
        if sum(vals) != 0:
            raise ValueError("projection is defined on degree-zero divisors")
        return vals[: self.root] + vals[self.root + 1 :]

    def project(self, d: Sequence[int]) -> tuple[int, ...]:
        """Class of a degree-zero divisor in invariant-factor coordinates."""
        dropped = self._dropped(d)
        if self._coker is None:
            return ()
        return self._coker.project(dropped)

    def order_of(self, d: Sequence[int]) -> int:
        """Order of the divisor class in the critical group."""
        if self._coker is None:
            return 1
        return self._coker.element_order(self.project(d))

    def generator_divisors(self) -> list[Divisor]:
        """Divisors whose classes are the invariant-factor generators."""
        if self._coker is None:
            return []
        out = []
        for lift in self._coker.generator_lifts():
            vals = list(lift)
            vals.insert(self.root, -sum(lift))
            out.append(Divisor(self.graph, tuple(vals)))
        return out

    def divisor(self, values: Sequence[int]) -> Divisor:
        return Divisor(self.graph, tuple(values))


def critical_group(g: Multigraph) -> CriticalGroupData:
    return CriticalGroupData(g)


def is_principal(cg: CriticalGroupData, d: Sequence[int]) -> bool:
    """Is d an integral combination of Laplacian columns?

    Decided by lattice membership on the reduced system; the test suite
    cross-checks this against vanishing of the projection.
    """
    dropped = cg._dropped(d)
    if not dropped:
        return True
    return lattice_contains(cg.reduced, dropped)


def subgroup_generated(cg: CriticalGroupData, gens: Sequence[Sequence[int]]) -> FinAbGroup:
    """Structure of the subgroup generated by the classes of gens.

    Computed on lattices: the subgroup is the span of the projected
    generators together with the relation lattice, modulo the relations.
    """
    coords = [cg.project(d) for d in gens]
    moduli = cg.moduli
    if not moduli:
        return FinAbGroup.trivial()
    relations = IntMatrix.diagonal(list(moduli))
    cols = [list(c) for c in coords] + [relations.col(j) for j in range(relations.cols)]
    outer = IntMatrix.from_cols(cols)
    return lattice_quotient(outer, relations)


def quotient_by_subgroup(cg: CriticalGroupData, gens: Sequence[Sequence[int]]) -> FinAbGroup:
    """Critical group modulo the subgroup generated by gens.

    Cokernel of the reduced Laplacian augmented with the reduced
    generator columns.
    """
    cols = []
    for d in gens:
        cols.append(cg._dropped(d))
    if cg.graph.vertex_count <= 1:
        return FinAbGroup.trivial()
    m = cg.reduced
    if cols:
        m = m.hstack(IntMatrix.from_cols(cols))
    return cokernel(m).group

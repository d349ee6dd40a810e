"""Vertex permutation groups on multigraphs: harmonicity, orbits, and
the canonical labeling of orbits under a dihedral action.

A dihedral action of order 2n is generated by two involutions whose
product has order exactly n.  When every orbit has n or 2n vertices the
orbits can be indexed so that the generators act by fixed reflection
formulas on the indices; that labeling drives all the decomposition
machinery.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .multigraph import Multigraph


class NotAutomorphismError(ValueError):
    pass


class NonHarmonicError(ValueError):
    def __init__(self, message: str, edge: tuple[int, int] | None = None):
        super().__init__(message)
        self.edge = edge


class OrbitSizeError(ValueError):
    """An orbit has size other than n or 2n."""


class LabelingImpossibleError(ValueError):
    """A size-n orbit is stabilized by rotations only; the reflection
    index equations cannot be satisfied with either generator order."""


Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(outer: Perm, inner: Perm) -> Perm:
    """outer after inner: (outer . inner)(v) == outer[inner[v]]."""
    return tuple(outer[inner[v]] for v in range(len(inner)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    n = len(p)
    q = p
    k = 1
    while q != identity_perm(n):
        q = compose(p, q)
        k += 1
    return k


def check_automorphism(g: Multigraph, p: Sequence[int]) -> Perm:
    """Validate that p is a graph-compatible vertex permutation."""
    perm = tuple(int(x) for x in p)
    if sorted(perm) != list(range(g.vertex_count)):
        raise NotAutomorphismError("not a permutation of the vertices")
    before = Counter(tuple(sorted(e)) for e in g.edges)
    after = Counter(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges)
    if before != after:
        raise NotAutomorphismError("permutation does not preserve the edge multiset")
    return perm


def generate_group(g: Multigraph, generators: Sequence[Sequence[int]]) -> list[Perm]:
    """Closure of the generators under composition, deduplicated."""
    gens = [check_automorphism(g, p) for p in generators]
    n = g.vertex_count
    group = {identity_perm(n)}
    frontier = [identity_perm(n)]
    while frontier:
        nxt = []
        for q in frontier:
            for p in gens:
                r = compose(p, q)
                if r not in group:
                    group.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(group)


def orbits(group: Sequence[Perm], n: int) -> list[list[int]]:
    """Vertex orbits, each sorted, ordered by minimal element."""
    seen = [False] * n
    out = []
    for v in range(n):
        if seen[v]:
            continue
        orb = sorted({p[v] for p in group})
        for w in orb:
            seen[w] = True
        out.append(orb)
    return out


def stabilizer(group: Sequence[Perm], v: int) -> list[Perm]:
    return [p for p in group if p[v] == v]


def pair_stabilizer(group: Sequence[Perm], u: int, v: int) -> list[Perm]:
    """Elements fixing both u and v."""
    return [p for p in group if p[u] == u and p[v] == v]


def is_harmonic(g: Multigraph, group: Sequence[Perm]) -> bool:
    """No vertex stabilizer may fix an incident edge.

    For an edge pair (u, v) fixed pointwise by a subgroup H, the parallel
    edges between u and v must admit a free H-action, which requires |H|
    to divide their number.  On simple graphs this reduces to "no
    non-identity element fixes both endpoints of an edge".
    """
    return _harmonic_offender(g, group) is None


def _harmonic_offender(
    g: Multigraph, group: Sequence[Perm]
) -> tuple[int, int] | None:
    for (u, v), mult in g.pair_multiplicities().items():
        h = pair_stabilizer(group, u, v)
        if len(h) > 1 and mult % len(h) != 0:
            return (u, v)
    return None


def require_harmonic(g: Multigraph, group: Sequence[Perm]) -> None:
    bad = _harmonic_offender(g, group)
    if bad is not None:
        raise NonHarmonicError(
            f"action is not harmonic: edge {g.label(bad[0])}-{g.label(bad[1])} "
            "is fixed pointwise by a stabilizer that cannot act freely on it",
            edge=bad,
        )


@dataclass(frozen=True)
class DihedralAction:
    """Two involutions generating a dihedral group of order 2n."""

    n: int
    sigma1: Perm
    sigma2: Perm
    elements: tuple[Perm, ...]

    @classmethod
    def build(cls, g: Multigraph, sigma1: Sequence[int], sigma2: Sequence[int]) -> "DihedralAction":
        s1 = check_automorphism(g, sigma1)
        s2 = check_automorphism(g, sigma2)
        nv = g.vertex_count
        if compose(s1, s1) != identity_perm(nv) or s1 == identity_perm(nv):
            raise ValueError("sigma1 is not an involution")
        if compose(s2, s2) != identity_perm(nv) or s2 == identity_perm(nv):
            raise ValueError("sigma2 is not an involution")
        n = perm_order(compose(s2, s1))
        if n < 2:
            raise ValueError("sigma2 . sigma1 must have order at least 2")
        elements = generate_group(g, [s1, s2])
        if len(elements) != 2 * n:
            raise ValueError(
                f"generated group has order {len(elements)}, expected {2 * n}"
            )
        return cls(n=n, sigma1=s1, sigma2=s2, elements=tuple(elements))

    @property
    def rotation(self) -> Perm:
        """sigma2 . sigma1, the order-n element."""
        return compose(self.sigma2, self.sigma1)

    def rotation_subgroup(self) -> list[Perm]:
        rho = self.rotation
        out = [identity_perm(len(rho))]
        q = rho
        while q != out[0]:
            out.append(q)
            q = compose(rho, q)
        return out


@dataclass(frozen=True)
class PinnedOrbit:
    """Size-n orbit: row[i] is the vertex with index i+1.

    ``flipped`` records which generator fixes the seed vertex: False
    means the second involution does (the reference shape), True means
    the first one does.  Flipped orbits only arise for even n, where the
    two reflection classes are distinct.
    """

    row: tuple[int, ...]
    flipped: bool


@dataclass(frozen=True)
class FreeOrbit:
    """Size-2n orbit split into two strands interchanged by reflections."""

    xrow: tuple[int, ...]
    yrow: tuple[int, ...]


@dataclass(frozen=True)
class OrbitLabeling:
    """Canonical indexing of all orbits of a dihedral action.

    With r1/r2 the (possibly swapped) generators and indices 1-based
    mod n, every orbit satisfies:

      free orbits:     r1(x_i) = y_{n+1-i}   r2(x_i) = y_{n+2-i}
      pinned, default: r1(z_i) = z_{n+1-i}   r2(z_i) = z_{n+2-i}
      pinned, flipped: r1(z_i) = z_{n+2-i}   r2(z_i) = z_{n+3-i}

    ``generators_swapped`` tells whether (r1, r2) is (sigma2, sigma1)
    rather than the action's given order.
    """

    n: int
    pinned: tuple[PinnedOrbit, ...]
    free: tuple[FreeOrbit, ...]
    generators_swapped: bool

    @property
    def s(self) -> int:
        return len(self.pinned)

    @property
    def t(self) -> int:
        return len(self.free)

    @property
    def flipped_count(self) -> int:
        return sum(1 for orb in self.pinned if orb.flipped)

    def is_uniform(self) -> bool:
        return self.flipped_count == 0


def _ref1(i: int, n: int) -> int:
    # 0-based image of the 1-based rule i -> n+1-i
    return (n - 1 - i) % n


def _ref2(i: int, n: int) -> int:
    # i -> n+2-i
    return (n - i) % n


def _ref3(i: int, n: int) -> int:
    # i -> n+3-i
    return (n + 1 - i) % n


def _verify_labeling(r1: Perm, r2: Perm, lab: OrbitLabeling) -> None:
    n = lab.n
    for orb in lab.free:
        xs, ys = orb.xrow, orb.yrow
        for i in range(n):
            assert r1[xs[i]] == ys[_ref1(i, n)], "r1 x-strand equation"
            assert r1[ys[i]] == xs[_ref1(i, n)], "r1 y-strand equation"
            assert r2[xs[i]] == ys[_ref2(i, n)], "r2 x-strand equation"
            assert r2[ys[i]] == xs[_ref2(i, n)], "r2 y-strand equation"
    for orb in lab.pinned:
        zs = orb.row
        a, b = (_ref2, _ref3) if orb.flipped else (_ref1, _ref2)
        for i in range(n):
            assert r1[zs[i]] == zs[a(i, n)], "r1 pinned equation"
            assert r2[zs[i]] == zs[b(i, n)], "r2 pinned equation"


def classify_dihedral_orbits(
    g: Multigraph, action: DihedralAction, seed_shift: int = 0
) -> OrbitLabeling:
    """Canonical orbit labeling for a harmonic dihedral action.

    Raises OrbitSizeError when an orbit has size other than n or 2n and
    LabelingImpossibleError when a size-n orbit is stabilized only by
    rotations.  If every size-n orbit is pinned by the first generator,
    the generator roles are swapped globally; a residual mix (possible
    for even n) is recorded per orbit via ``flipped``.

    ``seed_shift`` rotates every seed choice by that many rotation
    steps; the labeling equations hold for any shift, which the tests
    exploit.
    """
    require_harmonic(g, action.elements)
    n = action.n
    orbs = orbits(action.elements, g.vertex_count)
    for orb in orbs:
        if len(orb) not in (n, 2 * n):
            raise OrbitSizeError(
                f"orbit {sorted(g.label(v) for v in orb)} has size {len(orb)}, "
                f"expected {n} or {2 * n}"
            )

    lab = _attempt_labeling(action.sigma1, action.sigma2, orbs, n, False, seed_shift)
    if lab is None:
        lab = _attempt_labeling(action.sigma2, action.sigma1, orbs, n, True, seed_shift)
    if lab is None:
        raise LabelingImpossibleError("no generator order yields a pinned seed")
    r1, r2 = (
        (action.sigma2, action.sigma1)
        if lab.generators_swapped
        else (action.sigma1, action.sigma2)
    )
    _verify_labeling(r1, r2, lab)
    return lab


def _attempt_labeling(
    r1: Perm,
    r2: Perm,
    orbs: list[list[int]],
    n: int,
    swapped: bool,
    seed_shift: int,
) -> OrbitLabeling | None:
    rho = compose(r2, r1)

    def walk(seed: int) -> tuple[int, ...]:
        row = [seed]
        for _ in range(n - 1):
            row.append(rho[row[-1]])
        if len(set(row)) != n:
            raise LabelingImpossibleError("rotation does not act freely on orbit")
        return tuple(row)

    # Seed each size-n orbit at a fixed point of r2; fall back to a fixed
    # point of r1 (a flipped orbit, even n only).
    pinned_seeds: list[tuple[int, bool]] = []
    for orb in orbs:
        if len(orb) != n:
            continue
        fixed2 = sorted(v for v in orb if r2[v] == v)
        fixed1 = sorted(v for v in orb if r1[v] == v)
        if fixed2:
            candidates, flipped = fixed2, False
        elif fixed1:
            candidates, flipped = fixed1, True
        else:
            raise LabelingImpossibleError(
                "size-n orbit has rotation-only point stabilizers"
            )
        pinned_seeds.append((candidates[seed_shift % len(candidates)], flipped))
    if not swapped and pinned_seeds and all(f for _, f in pinned_seeds):
        # Every pinned orbit prefers the other generator order: swap
        # globally instead of flipping them all.
        return None

    pinned = [PinnedOrbit(row=walk(seed), flipped=f) for seed, f in pinned_seeds]

    def rotate(seed: int) -> int:
        for _ in range(seed_shift % n):
            seed = rho[seed]
        return seed

    free: list[FreeOrbit] = []
    for orb in orbs:
        if len(orb) != 2 * n:
            continue
        xs = walk(rotate(min(orb)))
        ys = tuple(r1[xs[_ref1(k, n)]] for k in range(n))
        if set(xs) | set(ys) != set(orb) or set(xs) & set(ys):
            raise LabelingImpossibleError("free orbit does not split into strands")
        free.append(FreeOrbit(xrow=xs, yrow=ys))

    pinned.sort(key=lambda o: min(o.row))
    free.sort(key=lambda o: min(min(o.xrow), min(o.yrow)))
    return OrbitLabeling(
        n=n, pinned=tuple(pinned), free=tuple(free), generators_swapped=swapped
    )

"""Abstract simplicial complexes and their reduced integral homology."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable

import networkx as nx

from .exact import smith_normal_form


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex stored by its facets; faces are generated on demand."""

    facets: tuple[frozenset, ...]

    def __post_init__(self):
        fs = {frozenset(f) for f in self.facets}
        fs.discard(frozenset())
        maximal = [f for f in fs if not any(f < g for g in fs)]
        object.__setattr__(self, "facets", tuple(sorted(maximal, key=lambda f: (len(f), sorted(map(repr, f))))))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        return cls(tuple(frozenset(f) for f in facets))

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted({v for f in self.facets for v in f}, key=repr))

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @cached_property
    def _faces(self) -> tuple[tuple[tuple, ...], ...]:
        order = {v: i for i, v in enumerate(self.vertices)}
        levels: list[set[tuple]] = [set() for _ in range(self.dim + 1)]
        for f in self.facets:
            verts = sorted(f, key=order.__getitem__)
            for k in range(1, len(verts) + 1):
                levels[k - 1].update(combinations(verts, k))
        return tuple(tuple(sorted(level, key=lambda t: [order[v] for v in t])) for level in levels)

    def faces(self, k: int) -> tuple[tuple, ...]:
        if k < 0 or k > self.dim:
            return ()
        return self._faces[k]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self._faces)

    def facet_census(self) -> dict[int, int]:
        """Number of facets per dimension."""
        out: dict[int, int] = {}
        for f in self.facets:
            out[len(f) - 1] = out.get(len(f) - 1, 0) + 1
        return dict(sorted(out.items()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))


def f_vector(c: SimplicialComplex) -> tuple[int, ...]:
    return c.f_vector()


def flag_complex(g: nx.Graph) -> SimplicialComplex:
    """Clique complex: facets are the maximal cliques (Bron-Kerbosch)."""
    return SimplicialComplex(tuple(frozenset(c) for c in nx.find_cliques(g)))


@dataclass(frozen=True)
class HomologyGroup:
    dim: int
    rank: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion


@dataclass(frozen=True)
class HomologyResult:
    groups: tuple[HomologyGroup, ...]

    def __getitem__(self, k: int) -> HomologyGroup:
        for g in self.groups:
            if g.dim == k:
                return g
        return HomologyGroup(k, 0)

    def ranks(self) -> dict[int, int]:
        return {g.dim: g.rank for g in self.groups}

    def nonzero(self) -> list[HomologyGroup]:
        return [g for g in self.groups if not g.is_zero()]


def boundary_matrix(c: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map from k-faces to (k-1)-faces.

    For k = 0 this is the augmentation onto the empty face.
    """
    cols = c.faces(k)
    if k == 0:
        return [[1] * len(cols)]
    rows = c.faces(k - 1)
    index = {f: i for i, f in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(cols):
        for i in range(len(f)):
            m[index[f[:i] + f[i + 1:]]][j] = -1 if i % 2 else 1
    return m


def reduced_homology(c: SimplicialComplex) -> HomologyResult:
    """Reduced integral homology in dimensions -1 .. dim."""
    top = c.dim
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for k in range(0, top + 1):
        m = boundary_matrix(c, k)
        factors = smith_normal_form(m) if m and m[0] else []
        ranks[k] = len(factors)
        torsion[k - 1] = tuple(x for x in factors if x > 1)
    torsion[top] = ()
    groups = []
    sizes = {-1: 1}
    sizes.update({k: len(c.faces(k)) for k in range(top + 1)})
    for k in range(-1, top + 1):
        r_out = ranks.get(k, 0)  # boundary leaving C_k
        r_in = ranks.get(k + 1, 0)
        groups.append(HomologyGroup(k, sizes[k] - r_out - r_in, torsion.get(k, ())))
    return HomologyResult(tuple(groups))


def graph_stats(g: nx.Graph) -> dict:
    degrees = sorted((d for _, d in g.degree()), reverse=True)
    girth = nx.girth(g) if g.number_of_nodes() else float("inf")
    return {
        "vertices": g.number_of_nodes(),
        "edges": g.number_of_edges(),
        "degrees": degrees,
        "regular": degrees[0] if degrees and degrees[0] == degrees[-1] else None,
        "girth": None if girth == float("inf") else int(girth),
        "connectivity": nx.node_connectivity(g) if g.number_of_nodes() > 1 else 0,
    }

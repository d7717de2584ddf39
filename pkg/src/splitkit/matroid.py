"""Matroids by bases and matroid subdivisions of hypersimplices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .hypersimplex import ABSplit, ab_compatible, ab_to_split, vertex_index, vertex_sets
from .polytope import VPolytope, is_edge
from .splits import Split, split_weight
from .subdivision import RegularSubdivision, add, is_common_refinement, regular_subdivision


def exchange_holds(bases: Iterable[frozenset[int]]) -> bool:
    """Basis exchange, checked by brute force."""
    bs = set(bases)
    for b1 in bs:
        for b2 in bs:
            for x in b1 - b2:
                if not any((b1 - {x}) | {y} in bs for y in b2 - b1):
                    return False
    return True


@dataclass(frozen=True)
class Matroid:
    n: int
    k: int
    bases: frozenset[frozenset[int]]

    def __post_init__(self):
        bs = frozenset(frozenset(b) for b in self.bases)
        object.__setattr__(self, "bases", bs)
        if not bs:
            raise ValueError("a matroid needs at least one basis")
        ground = set(range(1, self.n + 1))
        for b in bs:
            if len(b) != self.k or not b <= ground:
                raise ValueError(f"basis {sorted(b)} is not a {self.k}-subset of 1..{self.n}")
        if not exchange_holds(bs):
            raise ValueError("basis exchange axiom fails")

    def sorted_bases(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(b)) for b in self.bases)


def matroid_polytope(M: Matroid) -> VPolytope:
    verts = tuple(tuple(Fraction(int(i in b)) for i in range(1, M.n + 1)) for b in M.sorted_bases())
    return VPolytope(verts, check=False)


def _hypersimplex_params(P: VPolytope) -> tuple[int, int]:
    n = P.ambient
    sums = {sum(v) for v in P.vertices}
    if len(sums) != 1 or any(x not in (0, 1) for v in P.vertices for x in v):
        raise ValueError("not a hypersimplex")
    k = int(sums.pop())
    if P.n != len(vertex_sets(k, n)):
        raise ValueError("not a hypersimplex")
    return k, n


def _cell_is_matroidal(P: VPolytope, cell: frozenset[int]) -> bool:
    """Every edge of the cell is parallel to some e_i - e_j."""
    idx = sorted(cell)
    pts = [P.vertices[i] for i in idx]
    sums = {}
    for a, b in combinations(range(len(idx)), 2):
        key = tuple(x + y for x, y in zip(pts[a], pts[b]))
        sums.setdefault(key, []).append((a, b))
    sub = P.sub(idx)
    for a, b in combinations(range(len(idx)), 2):
        support = sum(1 for x, y in zip(pts[a], pts[b]) if x != y)
        if support == 2:
            continue
        # another pair with the same midpoint rules out an edge
        key = tuple(x + y for x, y in zip(pts[a], pts[b]))
        if len(sums[key]) > 1:
            continue
        if is_edge(sub, a, b):
            return False
    return True


def is_matroid_subdivision(sub: RegularSubdivision) -> bool:
    P = sub.polytope
    _hypersimplex_params(P)
    return all(_cell_is_matroidal(P, c) for c in sub.cells)


def split_matroid(k: int, n: int, s: ABSplit) -> tuple[Matroid, Matroid]:
    """Matroids of the two cells: at most mu points in B, resp. k - mu in A."""
    first = [X for X in vertex_sets(k, n) if len(X & s.B) <= s.mu]
    second = [X for X in vertex_sets(k, n) if len(X & s.A) <= k - s.mu]
    return Matroid(n, k, frozenset(first)), Matroid(n, k, frozenset(second))


def matroid_cell(k: int, n: int, M: Matroid) -> frozenset[int]:
    """Vertex indices of Delta(k, n) belonging to the bases of M."""
    index = vertex_index(k, n)
    return frozenset(index[b] for b in M.bases)


def pair_matroid(k: int, n: int, s: ABSplit, t: ABSplit) -> Matroid:
    """Matroid of the middle cell cut out by two compatible splits.

    The splits are reoriented so that #(B & D) <= mu + nu - k; its bases are
    the k-sets meeting B in at most mu and D in at most nu points.
    """
    if not ab_compatible(k, n, s, t):
        raise ValueError("splits are not compatible")
    for A, B, mu in ((s.A, s.B, s.mu), s.flipped()):
        for C, D, nu in ((t.A, t.B, t.mu), t.flipped()):
            if len(B & D) <= mu + nu - k:
                bases = [X for X in vertex_sets(k, n) if len(X & B) <= mu and len(X & D) <= nu]
                return Matroid(n, k, frozenset(bases))
    raise ValueError("no orientation satisfies #(B & D) <= mu + nu - k")


def split_refines_matroid(sub: RegularSubdivision, s: Split | ABSplit) -> RegularSubdivision:
    """Common refinement of a matroid subdivision and a split.

    The refinement is the subdivision of the summed weight; it is certified
    against both inputs before being returned.
    """
    P = sub.polytope
    k, n = _hypersimplex_params(P)
    if isinstance(s, ABSplit):
        s = ab_to_split(k, n, s)
    if not is_matroid_subdivision(sub):
        raise ValueError("input is not a matroid subdivision")
    ws = split_weight(P, s)
    out = regular_subdivision(P, add(sub.weight, ws))
    if not is_common_refinement(out, sub, regular_subdivision(P, ws)):
        raise ValueError("the common refinement needs new vertices")
    return out

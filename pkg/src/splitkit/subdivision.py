"""Regular subdivisions, tight spans and coherence of weight functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import networkx as nx

from . import dd
from .exact import POS_INF, affine_rank, dot, rat_vector, solve_affine
from .lp import eq, gt, lp_optimize
from .polytope import VPolytope, _bits, _mask, simplex_volume

Weight = tuple[Fraction, ...]


def weight(values: Sequence, P: VPolytope | None = None) -> Weight:
    w = rat_vector(values)
    if P is not None and len(w) != P.n:
        raise ValueError(f"weight has {len(w)} entries, polytope has {P.n} vertices")
    return w


def add(*weights: Sequence[Fraction]) -> Weight:
    return tuple(sum(xs, Fraction(0)) for xs in zip(*weights))


def scale(c, w: Sequence[Fraction]) -> Weight:
    c = Fraction(c)
    return tuple(c * x for x in w)


def is_affine(P: VPolytope, w: Sequence[Fraction]) -> bool:
    """Is w the restriction of a linear functional (affine on aff P)?"""
    x, _ = solve_affine(P.vertices, list(w))
    return x is not None


@dataclass(frozen=True)
class RegularSubdivision:
    polytope: VPolytope
    weight: Weight
    cells: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.cells)

    def cell_polytope(self, i: int) -> VPolytope:
        return self.polytope.sub(self.cells[i])

    def cell_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(self.cells)


@dataclass(frozen=True)
class TightSpan:
    """Bounded part of the envelope ``{x : V x >= -w}``.

    ``vertices[i]`` is dual to ``cells[i]``.  ``faces`` pairs every interior
    face of the subdivision with the tight-span vertices spanning its dual.
    """

    vertices: tuple[tuple[Fraction, ...], ...]
    cells: tuple[frozenset[int], ...]
    faces: tuple[tuple[frozenset[int], frozenset[int]], ...]

    @property
    def dim(self) -> int:
        return max((affine_rank([self.vertices[i] for i in dual]) for _, dual in self.faces), default=0)

    def graph(self) -> nx.Graph:
        """1-skeleton: vertices joined when their cells share a wall."""
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        for _, dual in self.faces:
            if len(dual) == 2:
                g.add_edge(*sorted(dual))
        return g


@lru_cache(maxsize=4096)
def _lower_cells(P: VPolytope, w: Weight) -> tuple[frozenset[int], ...]:
    rows = [tuple(v) + (x,) for v, x in zip(P.reduced, w)]
    rows.append((Fraction(0),) * len(P.reduced[0]) + (Fraction(1),))
    cells = []
    for a, zeros in dd.extreme_rays(rows):
        if a[-1] > 0:
            cells.append(frozenset(i for i in _bits(zeros) if i < P.n))
    return tuple(sorted(cells, key=sorted))


def regular_subdivision(P: VPolytope, w: Sequence) -> RegularSubdivision:
    """Cells are the projections of the lower facets of the lifted polytope."""
    w = weight(w, P)
    return RegularSubdivision(P, w, _lower_cells(P, w))


def trivial_subdivision(P: VPolytope) -> RegularSubdivision:
    return RegularSubdivision(P, (Fraction(0),) * P.n, (frozenset(range(P.n)),))


def dual_vertex(P: VPolytope, w: Sequence[Fraction], cell) -> tuple[Fraction, ...]:
    """Solve <v, x> = -w(v) over a maximal cell (free coordinates set to 0)."""
    idx = sorted(cell)
    x, _ = solve_affine([P.vertices[i] for i in idx], [-w[i] for i in idx])
    if x is None:
        raise RuntimeError("inconsistent dual solve: cell is not a lower facet")
    return x


def interior_faces(sub: RegularSubdivision, codim: int) -> list[frozenset[int]]:
    """Faces of the given codimension that are not contained in the boundary."""
    if codim < 1:
        raise ValueError("codim must be at least 1")
    return [f for f, _ in _interior_face_table(sub) if _face_dim(sub.polytope, f) == sub.polytope.dim - codim]


def _face_dim(P: VPolytope, face) -> int:
    return affine_rank([P.vertices[i] for i in face])


@lru_cache(maxsize=1024)
def _interior_face_table(sub: RegularSubdivision) -> tuple[tuple[frozenset[int], frozenset[int]], ...]:
    """Interior faces of codimension >= 1 with the cells containing them.

    Every interior face is the intersection of the maximal cells that contain
    it, so the intersection closure of the cells finds them all.
    """
    P = sub.polytope
    cells = [_mask(c) for c in sub.cells]
    boundary = [_mask(f.vertices) for f in P.facets]
    found = set(cells)
    frontier = set(cells)
    while frontier:
        new = set()
        for a in frontier:
            for b in cells:
                c = a & b
                if c and c not in found:
                    new.add(c)
        found |= new
        frontier = new
    out = []
    for m in found:
        if any(m & f == m for f in boundary):
            continue
        containing = frozenset(i for i, c in enumerate(cells) if c & m == m)
        if len(containing) < 2:
            continue
        out.append((frozenset(_bits(m)), containing))
    out.sort(key=lambda t: (sorted(t[1]), sorted(t[0])))
    return tuple(out)


def tight_span(P: VPolytope, w: Sequence) -> TightSpan:
    sub = regular_subdivision(P, w)
    verts = tuple(dual_vertex(P, sub.weight, c) for c in sub.cells)
    return TightSpan(verts, sub.cells, _interior_face_table(sub))


def walls(sub: RegularSubdivision) -> list[tuple[int, int, frozenset[int]]]:
    """Pairs of maximal cells sharing a codimension-1 face."""
    d = sub.polytope.dim
    out = []
    for face, cells in _interior_face_table(sub):
        if len(cells) == 2 and _face_dim(sub.polytope, face) == d - 1:
            i, j = sorted(cells)
            out.append((i, j, face))
    return out


def dual_graph(sub: RegularSubdivision) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(sub.cells)))
    for i, j, _ in walls(sub):
        g.add_edge(i, j)
    return g


def is_triangulation(sub: RegularSubdivision) -> bool:
    d = sub.polytope.dim
    return all(len(c) == d + 1 for c in sub.cells)


def is_foldable(sub: RegularSubdivision) -> bool:
    """A triangulation is foldable iff its dual graph is bipartite."""
    if not is_triangulation(sub):
        raise ValueError("foldability is defined for triangulations only")
    return nx.is_bipartite(dual_graph(sub))


def refines(fine: RegularSubdivision, coarse: RegularSubdivision) -> bool:
    if fine.polytope != coarse.polytope:
        raise ValueError("subdivisions of different polytopes")
    return all(any(c <= big for big in coarse.cells) for c in fine.cells)


def same_subdivision(P: VPolytope, w1: Sequence, w2: Sequence) -> bool:
    return regular_subdivision(P, w1).cell_sets() == regular_subdivision(P, w2).cell_sets()


def _cell_of(sub: RegularSubdivision, cell: frozenset[int]) -> int | None:
    owners = [i for i, big in enumerate(sub.cells) if cell <= big]
    return owners[0] if len(owners) == 1 else None


def is_common_refinement(sub: RegularSubdivision, s1: RegularSubdivision, s2: RegularSubdivision) -> bool:
    """Does ``sub`` coincide with the common refinement of ``s1`` and ``s2``?

    When ``sub`` refines both, each cell sits in a unique pair (C1, C2) whose
    intersection is full-dimensional, and every such pair is reached.  So the
    cell count matches the number of full-dimensional pairs exactly when the
    cell-to-pair map is injective.
    """
    if not (refines(sub, s1) and refines(sub, s2)):
        return False
    pairs = set()
    for c in sub.cells:
        p = (_cell_of(s1, c), _cell_of(s2, c))
        if None in p or p in pairs:
            return False
        pairs.add(p)
    return True


def full_dimensional_pairs(s1: RegularSubdivision, s2: RegularSubdivision) -> int:
    """Count pairs of maximal cells whose intersection is full-dimensional (LP)."""
    P = s1.polytope
    count = 0
    for c1 in s1.cells:
        for c2 in s2.cells:
            if _interiors_meet(P, sorted(c1), sorted(c2)):
                count += 1
    return count


def _interiors_meet(P: VPolytope, c1: list[int], c2: list[int]) -> bool:
    n1, n2 = len(c1), len(c2)
    width = n1 + n2
    cons = []
    for k in range(width):
        cons.append(gt([int(i == k) for i in range(width)]))
    cons.append(eq([1] * n1 + [0] * n2, 1))
    cons.append(eq([0] * n1 + [1] * n2, 1))
    for col in range(P.ambient):
        cons.append(eq([P.vertices[i][col] for i in c1] + [-P.vertices[i][col] for i in c2]))
    return lp_optimize(cons, [0] * width).feasible


def is_coherent(P: VPolytope, w1: Sequence, w2: Sequence) -> bool:
    """Is ``w1 + w2`` a coherent decomposition?"""
    w1, w2 = weight(w1, P), weight(w2, P)
    total = regular_subdivision(P, add(w1, w2))
    return is_common_refinement(total, regular_subdivision(P, w1), regular_subdivision(P, w2))


def is_coherent_by_pairs(P: VPolytope, w1: Sequence, w2: Sequence) -> bool:
    """The same test with the full-dimensional pairs counted by LP."""
    w1, w2 = weight(w1, P), weight(w2, P)
    s1, s2 = regular_subdivision(P, w1), regular_subdivision(P, w2)
    total = regular_subdivision(P, add(w1, w2))
    return refines(total, s1) and refines(total, s2) and len(total.cells) == full_dimensional_pairs(s1, s2)


def coherency_index(P: VPolytope, w: Sequence, wref: Sequence):
    """Largest lambda with ``(w - lambda wref, lambda wref)`` coherent.

    Returns ``POS_INF`` when ``wref`` is affine.
    """
    w, wref = weight(w, P), weight(wref, P)
    xs = tight_span(P, w).vertices
    refs = tight_span(P, wref).vertices
    V = P.vertices
    denoms = []
    for xr in refs:
        denoms.append([(i, dot(v, xr) + wref[i]) for i, v in enumerate(V)])
    best = None
    for x in xs:
        num = [dot(v, x) + w[i] for i, v in enumerate(V)]
        inner_max = None
        for den in denoms:
            ratios = [num[i] / d for i, d in den if d != 0]
            val = min(ratios) if ratios else POS_INF
            if inner_max is None or val > inner_max:
                inner_max = val
        if best is None or inner_max < best:
            best = inner_max
    return best


def gkz_vector(P: VPolytope, sub: RegularSubdivision) -> tuple[Fraction, ...]:
    if not is_triangulation(sub):
        raise ValueError("GKZ vectors are defined for triangulations")
    out = [Fraction(0)] * P.n
    for c in sub.cells:
        vol = simplex_volume(P, sorted(c))
        for i in c:
            out[i] += vol
    return tuple(out)


def cells_cover(sub: RegularSubdivision) -> bool:
    """Cell volumes add up to the volume of P."""
    P = sub.polytope
    total = sum((P.sub(c).volume for c in sub.cells), Fraction(0))
    return total == P.volume

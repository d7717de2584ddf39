"""Polytopes given by vertices, kept in homogeneous position.

A :class:`VPolytope` lives in an affine hyperplane that misses the origin, so
every linear functional restricts to an affine one on it and split
hyperplanes can be taken linear.  ``embed`` brings arbitrary point sets into
that position by prepending a coordinate 1.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from . import dd
from .exact import affine_rank, det, dot, pivot_columns, rank, rat, rat_vector, solve_affine
from .lp import LinConstraint, eq, ge, gt, lp_optimize

Point = tuple[Fraction, ...]


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _in_hull(p: Sequence[Fraction], others: Sequence[Sequence[Fraction]]) -> bool:
    """Is ``p`` a convex combination of ``others``?"""
    if not others:
        return False
    n = len(others)
    cons = [ge([int(i == j) for j in range(n)]) for i in range(n)]
    cons.append(eq([1] * n, 1))
    for c in range(len(p)):
        cons.append(eq([u[c] for u in others], p[c]))
    return lp_optimize(cons, [0] * n).feasible


def is_homogeneous(points: Sequence[Sequence]) -> bool:
    """True when the points lie on an affine hyperplane avoiding the origin."""
    pts = [rat_vector(p) for p in points]
    if not pts:
        return False
    x, _ = solve_affine(pts, [Fraction(1)] * len(pts))
    return x is not None


@dataclass(frozen=True)
class Hyperplane:
    """The linear hyperplane ``normal . x = 0``."""

    normal: Point

    def __post_init__(self):
        object.__setattr__(self, "normal", rat_vector(self.normal))
        if not any(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x)


@dataclass(frozen=True)
class Facet:
    normal: Point  # inner normal, zero on the facet
    vertices: frozenset[int]


@dataclass(frozen=True)
class FaceLattice:
    """Faces of a polytope as vertex-index sets, graded by dimension.

    ``faces[k]`` lists the k-dimensional faces for ``0 <= k <= dim``; the
    top entry is the polytope itself.
    """

    faces: tuple[tuple[frozenset[int], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.faces[:-1])

    def all_faces(self) -> list[frozenset[int]]:
        return [f for level in self.faces for f in level]


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple[Point, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        verts = tuple(rat_vector(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        if len({len(v) for v in verts}) != 1:
            raise ValueError("vertices have different lengths")
        if len(set(verts)) != len(verts):
            raise ValueError("repeated vertex")
        if not is_homogeneous(verts):
            raise ValueError("vertices must span an affine hyperplane missing the origin; use embed()")
        if check:
            for i, v in enumerate(verts):
                if _in_hull(v, verts[:i] + verts[i + 1:]):
                    raise ValueError(f"point {i} is not a vertex of the convex hull")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def ambient(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def dim(self) -> int:
        return rank(self.vertices) - 1

    @cached_property
    def linear_chart(self) -> tuple[int, ...]:
        """Columns of V spanning its column space (d+1 of them)."""
        return tuple(pivot_columns(self.vertices))

    @cached_property
    def chart(self) -> tuple[int, ...]:
        """First d coordinates that parametrize aff P; volumes are measured here."""
        base = self.vertices[0]
        diffs = [[a - b for a, b in zip(v, base)] for v in self.vertices[1:]]
        return tuple(pivot_columns(diffs)) if diffs else ()

    @cached_property
    def reduced(self) -> tuple[Point, ...]:
        """Vertices restricted to the linear chart (full column rank)."""
        return tuple(tuple(v[j] for j in self.linear_chart) for v in self.vertices)

    def lift_normal(self, a: Sequence[Fraction]) -> Point:
        """Turn a functional on the linear chart into one on the ambient space."""
        out = [Fraction(0)] * self.ambient
        for j, x in zip(self.linear_chart, a):
            out[j] = rat(x)
        return tuple(out)

    def sub(self, indices: Iterable[int]) -> "VPolytope":
        """Polytope spanned by a subset of the vertices (no re-validation needed)."""
        return VPolytope(tuple(self.vertices[i] for i in sorted(indices)), check=False)

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        if self.dim == 0:
            return ()
        rays = dd.extreme_rays(self.reduced)
        out = []
        for a, zeros in rays:
            verts = frozenset(_bits(zeros))
            if verts:
                out.append(Facet(self.lift_normal(a), verts))
        return tuple(sorted(out, key=lambda f: sorted(f.vertices)))

    @cached_property
    def face_lattice(self) -> FaceLattice:
        return face_lattice(self.vertices, [f.vertices for f in self.facets])

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(edges(self))

    @cached_property
    def volume(self) -> Fraction:
        return volume(self)

    @cached_property
    def centroid(self) -> Point:
        return centroid(self)


def embed(points: Sequence[Sequence]) -> VPolytope:
    """Homogenize a point set (prepend 1 if needed) and drop non-vertices."""
    pts = [rat_vector(p) for p in points]
    if not pts:
        raise ValueError("cannot embed an empty point set")
    if len({len(p) for p in pts}) != 1:
        raise ValueError("points have different lengths")
    if not is_homogeneous(pts):
        pts = [(Fraction(1),) + p for p in pts]
    seen: list[Point] = []
    for p in pts:
        if p not in seen:
            seen.append(p)
    kept = list(seen)
    i = 0
    while i < len(kept):
        if _in_hull(kept[i], kept[:i] + kept[i + 1:]):
            del kept[i]
        else:
            i += 1
    return VPolytope(tuple(kept), check=False)


def is_edge(P: VPolytope, i: int, j: int) -> bool:
    """LP oracle: some functional is constant on v_i, v_j and larger elsewhere."""
    V = P.reduced
    vi, vj = V[i], V[j]
    cons: list[LinConstraint] = [eq([a - b for a, b in zip(vi, vj)])]
    for k, u in enumerate(V):
        if k != i and k != j:
            cons.append(gt([a - b for a, b in zip(vi, u)]))
    return lp_optimize(cons, [0] * len(vi)).feasible


def edges(P: VPolytope, method: str = "facets") -> list[tuple[int, int]]:
    """1-faces as sorted index pairs.

    ``"facets"`` reads the edges off the facet incidences: a pair is an edge
    iff the vertices on all facets containing both are just those two.
    ``"lp"`` runs the strict-LP oracle per pair; it is much slower and serves
    as a cross-check.
    """
    n = P.n
    if n < 2:
        return []
    if method == "lp":
        return [(i, j) for i in range(n) for j in range(i + 1, n) if is_edge(P, i, j)]
    if method != "facets":
        raise ValueError(f"unknown edge method {method!r}")
    if P.dim == 1:
        return [(0, 1)]
    inc = [_mask(f.vertices) for f in P.facets]
    full = (1 << n) - 1
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            pair = (1 << i) | (1 << j)
            common = full
            for m in inc:
                if m & pair == pair:
                    common &= m
            if common == pair:
                out.append((i, j))
    return out


def face_lattice(vertices: Sequence[Sequence], facet_incidences: Iterable[Iterable[int]]) -> FaceLattice:
    """Close the facet incidence sets under intersection and grade by dimension."""
    pts = [rat_vector(v) for v in vertices]
    n = len(pts)
    full = (1 << n) - 1
    facets = {_mask(f) for f in facet_incidences} - {full}
    found = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facets:
                c = a & b
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    found.discard(0)
    found.add(full)
    top = affine_rank(pts)
    levels: list[list[frozenset[int]]] = [[] for _ in range(top + 1)]
    for m in found:
        idx = _bits(m)
        k = affine_rank([pts[i] for i in idx])
        levels[k].append(frozenset(idx))
    return FaceLattice(tuple(tuple(sorted(level, key=sorted)) for level in levels))


def pulling_triangulation(P: VPolytope) -> list[tuple[int, ...]]:
    """Triangulate P by recursively pulling the lowest-index vertex of each face."""
    lattice = P.face_lattice
    d = lattice.dim
    masks = [[_mask(f) for f in level] for level in lattice.faces]
    memo: dict[int, list[tuple[int, ...]]] = {}

    def tri(face: int, k: int) -> list[tuple[int, ...]]:
        if k == 0:
            return [(face.bit_length() - 1,)]
        if face in memo:
            return memo[face]
        p = (face & -face).bit_length() - 1
        out = []
        for g in masks[k - 1]:
            if g & face == g and not (g >> p) & 1:
                out.extend(tuple(sorted(s + (p,))) for s in tri(g, k - 1))
        memo[face] = out
        return out

    return tri((1 << P.n) - 1, d)


def simplex_volume(P: VPolytope, simplex: Sequence[int]) -> Fraction:
    """Chart volume of the simplex spanned by the given vertices of P."""
    pts = [[P.vertices[i][c] for c in P.chart] for i in simplex]
    if len(pts) == 1:
        return Fraction(1)
    base = pts[0]
    m = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    if len(m) != len(m[0]):
        raise ValueError("simplex does not have d+1 vertices")
    return abs(det(m)) / factorial(len(m))


def volume(P: VPolytope) -> Fraction:
    """d-dimensional volume in the chart coordinates; 1 for a point."""
    if P.dim == 0:
        return Fraction(1)
    return sum((simplex_volume(P, s) for s in pulling_triangulation(P)), Fraction(0))


def centroid(P: VPolytope) -> Point:
    """Centre of mass, in ambient coordinates."""
    if P.dim == 0:
        return P.vertices[0]
    total = Fraction(0)
    acc = [Fraction(0)] * P.ambient
    for s in pulling_triangulation(P):
        vol = simplex_volume(P, s)
        total += vol
        for i in s:
            for c, x in enumerate(P.vertices[i]):
                acc[c] += vol * x
    k = len(s)
    return tuple(x / (total * k) for x in acc)


def relint_meets(P: VPolytope, planes: Sequence) -> bool:
    """Do the linear hyperplanes have a common point in the relative interior?

    Strictly positive convex combinations are rescaled so that every
    coefficient is at least 1, which turns the test into a plain feasibility
    problem in ``mu = lambda - 1 >= 0``.
    """
    if not planes:
        raise ValueError("need at least one hyperplane")
    normals = [p.normal if isinstance(p, Hyperplane) else Hyperplane(p).normal for p in planes]
    n = P.n
    cons = [ge([int(i == j) for j in range(n)]) for i in range(n)]
    for a in normals:
        vals = [dot(a, v) for v in P.vertices]
        cons.append(eq(vals, -sum(vals, Fraction(0))))
    return lp_optimize(cons, [0] * n).feasible


# -- H-descriptions ---------------------------------------------------------


@dataclass(frozen=True)
class HPolyhedron:
    """``{x : E x = e, G x >= g}``."""

    equations: tuple[LinConstraint, ...] = ()
    inequalities: tuple[LinConstraint, ...] = ()
    width: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        widths = {len(c.coeffs) for c in self.equations + self.inequalities}
        if self.width is not None:
            widths.add(self.width)
        if len(widths) != 1:
            raise ValueError("constraints have inconsistent widths")
        object.__setattr__(self, "width", widths.pop())
        if any(c.rel != "=" for c in self.equations):
            raise ValueError("equations must use '='")
        if any(c.rel != ">=" for c in self.inequalities):
            raise ValueError("inequalities must use '>='")

    def contains(self, x: Sequence) -> bool:
        x = rat_vector(x)
        return all(c.holds(x) for c in self.equations + self.inequalities)


@dataclass(frozen=True)
class DualDescription:
    feasible: bool
    vertices: tuple[Point, ...] = ()
    rays: tuple[Point, ...] = ()
    vertex_incidences: tuple[frozenset[int], ...] = field(default=())
    ray_incidences: tuple[frozenset[int], ...] = field(default=())
    n_inequalities: int = 0

    @property
    def bounded(self) -> bool:
        return not self.rays

    def face_lattice(self) -> FaceLattice:
        """Face lattice of a bounded polyhedron from inequality incidences."""
        if not self.bounded:
            raise ValueError("face lattice is only computed for bounded polyhedra")
        inc = [frozenset(i for i, s in enumerate(self.vertex_incidences) if k in s)
               for k in range(self.n_inequalities)]
        return face_lattice(self.vertices, inc)


def dual_description(h: HPolyhedron) -> DualDescription:
    """Vertices and extreme rays of a pointed polyhedron.

    The equations are solved first; the remaining parameters are homogenized
    with an extra coordinate t >= 0 and handed to the double description
    method.  Generators with t > 0 are vertices, those with t = 0 rays.
    """
    N = h.width
    E = [c.coeffs for c in h.equations]
    e = [c.rhs for c in h.equations]
    if E:
        x0, basis = solve_affine(E, e)
        if x0 is None:
            return DualDescription(False, n_inequalities=len(h.inequalities))
    else:
        x0 = (Fraction(0),) * N
        basis = [tuple(Fraction(int(i == j)) for i in range(N)) for j in range(N)]
    k = len(basis)
    rows = []
    for c in h.inequalities:
        gn = [dot(c.coeffs, [b[i] for i in range(N)]) for b in basis]
        rows.append(gn + [dot(c.coeffs, x0) - c.rhs])
    rows.append([Fraction(0)] * k + [Fraction(1)])
    if rank(rows) < k + 1:
        raise ValueError("polyhedron has a nontrivial lineality space")
    m = len(h.inequalities)
    verts, rays = [], []
    for r, zeros in dd.extreme_rays(rows):
        t = r[-1]
        tight = frozenset(i for i in _bits(zeros) if i < m)
        z = r[:-1]
        point = tuple(sum((Fraction(zj) * b[i] for zj, b in zip(z, basis)), Fraction(0)) for i in range(N))
        if t > 0:
            verts.append((tuple(x + p / t for x, p in zip(x0, point)), tight))
        else:
            rays.append((point, tight))
    if not verts:
        return DualDescription(False, n_inequalities=m)
    verts.sort()
    rays.sort()
    return DualDescription(
        True,
        tuple(v for v, _ in verts),
        tuple(r for r, _ in rays),
        tuple(s for _, s in verts),
        tuple(s for _, s in rays),
        m,
    )

"""Splits of polytopes: enumeration, weights, compatibility, decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from itertools import combinations, product
from typing import Sequence

import networkx as nx

from .complex import SimplicialComplex, flag_complex
from .exact import dot, nullspace, primitive, rank, rat_vector, solve_affine
from .lp import eq, ge, gt, lp_optimize
from .parallel import pmap
from .polytope import HPolyhedron, Hyperplane, VPolytope, relint_meets
from .subdivision import (
    add,
    coherency_index,
    is_coherent,
    regular_subdivision,
    refines,
    scale,
    tight_span,
    weight,
)


@dataclass(frozen=True, eq=False)
class Split:
    """A split given by an oriented linear hyperplane.

    ``plus`` holds the vertices with ``normal . v >= 0``, ``minus`` those
    with ``normal . v <= 0``; the wall vertices are in both.  Two splits are
    equal when they cut the vertex set the same way.
    """

    normal: tuple[Fraction, ...]
    plus: frozenset[int]
    minus: frozenset[int]

    @property
    def wall(self) -> frozenset[int]:
        return self.plus & self.minus

    @property
    def hyperplane(self) -> Hyperplane:
        return Hyperplane(self.normal)

    def _key(self):
        return (self.plus, self.minus)

    def __eq__(self, other) -> bool:
        return isinstance(other, Split) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def sort_key(self):
        return (sorted(self.plus), sorted(self.minus))

    def __repr__(self) -> str:
        return f"Split(plus={sorted(self.plus)}, minus={sorted(self.minus)})"


SplitSystem = tuple[Split, ...]


def make_split(P: VPolytope, normal: Sequence) -> Split | None:
    """Orient and validate a hyperplane; ``None`` unless it defines a split.

    Orientation: the lowest-index vertex off the hyperplane is on the plus
    side, and the normal is scaled to a primitive integer vector.
    """
    a = primitive(rat_vector(normal))
    vals = [dot(a, v) for v in P.vertices]
    off = next((i for i, x in enumerate(vals) if x != 0), None)
    if off is None:
        return None
    if vals[off] < 0:
        a = tuple(-x for x in a)
        vals = [-x for x in vals]
    if not any(x < 0 for x in vals):
        return None
    for i, j in P.edges:
        if vals[i] * vals[j] < 0:
            return None
    plus = frozenset(i for i, x in enumerate(vals) if x >= 0)
    minus = frozenset(i for i, x in enumerate(vals) if x <= 0)
    return Split(tuple(Fraction(x) for x in a), plus, minus)


def _candidate_normals(P: VPolytope) -> set[tuple[int, ...]]:
    """Normals of all hyperplanes spanned by d independent vertices (in the chart)."""
    V = P.reduced
    D = len(V[0])
    d = D - 1
    found: set[tuple[int, ...]] = set()

    def reduce(rows, vec):
        vec = list(vec)
        for p, row in rows:
            f = vec[p]
            if f:
                vec = [x - f * y for x, y in zip(vec, row)]
        return vec

    def normal_of(rows):
        # rows are in echelon form with unit pivots; fill the single free column
        pivots = {p for p, _ in rows}
        free = next(c for c in range(D) if c not in pivots)
        # back-substitute to a fully reduced basis
        full = []
        for p, row in sorted(rows, reverse=True):
            for q, other in full:
                f = row[q]
                if f:
                    row = [x - f * y for x, y in zip(row, other)]
            full.append((p, row))
        x = [Fraction(0)] * D
        x[free] = Fraction(1)
        for p, row in full:
            x[p] = -row[free]
        a = primitive(x)
        return a if next(c for c in a if c) > 0 else tuple(-c for c in a)

    def dfs(start, rows):
        if len(rows) == d:
            found.add(normal_of(rows))
            return
        need = d - len(rows)
        for i in range(start, len(V) - need + 1):
            r = reduce(rows, V[i])
            p = next((c for c, x in enumerate(r) if x), None)
            if p is None:
                continue
            inv = 1 / r[p]
            r = [x * inv for x in r]
            dfs(i + 1, rows + [(p, r)])

    if d == 0:
        return found
    dfs(0, [])
    return found


@lru_cache(maxsize=256)
def enumerate_splits(P: VPolytope) -> SplitSystem:
    """All splits of P, sorted by their (plus, minus) vertex sets."""
    out = set()
    for a in _candidate_normals(P):
        s = make_split(P, P.lift_normal(a))
        if s is not None:
            out.add(s)
    return tuple(sorted(out, key=Split.sort_key))


def vertex_split(P: VPolytope, v: int) -> Split | None:
    """The split through the neighbours of ``v``, if they span a hyperplane."""
    nbrs = [j for e in P.edges if v in e for j in e if j != v]
    pts = [P.reduced[j] for j in nbrs]
    if not pts or rank(pts) != P.dim:
        return None
    ns = nullspace(pts)
    if len(ns) != 1:
        return None
    s = make_split(P, P.lift_normal(ns[0]))
    if s is None or v in s.wall:
        return None
    return s


def split_weight(P: VPolytope, S: Split) -> tuple[Fraction, ...]:
    return tuple(dot(S.normal, v) if i in S.plus else Fraction(0) for i, v in enumerate(P.vertices))


def is_compatible(P: VPolytope, S1: Split, S2: Split) -> bool:
    return not relint_meets(P, [S1.hyperplane, S2.hyperplane])


def _sign_vector(system: Sequence[Split], cell) -> tuple | None:
    out = []
    for S in system:
        if cell <= S.plus:
            out.append(1)
        elif cell <= S.minus:
            out.append(-1)
        else:
            return None
    return tuple(out)


def is_weakly_compatible(P: VPolytope, system: Sequence[Split]) -> bool:
    """Is the sum of the split weights coherent?

    Equivalently the subdivision of the sum refines every split and no two of
    its cells share a sign vector; that is the test run here.
    """
    system = list(system)
    if not system:
        raise ValueError("empty split system")
    total = regular_subdivision(P, add(*[split_weight(P, S) for S in system]))
    seen = set()
    for c in total.cells:
        sv = _sign_vector(system, c)
        if sv is None or sv in seen:
            return False
        seen.add(sv)
    return True


def weakly_compatible_iterated(P: VPolytope, system: Sequence[Split]) -> bool:
    """Same question answered by chaining pairwise coherence of partial sums."""
    weights = [split_weight(P, S) for S in system]
    acc = weights[0]
    for w in weights[1:]:
        if not is_coherent(P, acc, w):
            return False
        acc = add(acc, w)
    return True


def count_regions(P: VPolytope, system: Sequence[Split]) -> int:
    """Number of sign vectors whose region meets the interior of P (one LP each)."""
    n = P.n
    count = 0
    for signs in product((1, -1), repeat=len(system)):
        cons = [gt([int(i == j) for j in range(n)]) for i in range(n)]
        cons.append(eq([1] * n, 1))
        for s, S in zip(signs, system):
            cons.append(gt([s * dot(S.normal, v) for v in P.vertices]))
        if lp_optimize(cons, [0] * n).feasible:
            count += 1
    return count


def weakly_compatible_by_regions(P: VPolytope, system: Sequence[Split]) -> bool:
    total = regular_subdivision(P, add(*[split_weight(P, S) for S in system]))
    for S in system:
        two = regular_subdivision(P, split_weight(P, S))
        if not refines(total, two):
            return False
    return len(total.cells) == count_regions(P, system)


@dataclass(frozen=True)
class SplitDecomposition:
    terms: tuple[tuple[Split, Fraction], ...]
    remainder: tuple[Fraction, ...]

    def reconstruct(self, P: VPolytope) -> tuple[Fraction, ...]:
        parts = [scale(lam, split_weight(P, S)) for S, lam in self.terms]
        return add(self.remainder, *parts) if parts else self.remainder

    def coefficients(self) -> dict[Split, Fraction]:
        return dict(self.terms)

    def remainder_mod_affine(self, P: VPolytope) -> tuple[Fraction, ...]:
        """Remainder minus the affine function agreeing with it on an affine basis.

        The basis is the lexicographically first affinely independent set of
        vertices, so the result is a canonical representative; it is zero
        exactly when the remainder is affine.
        """
        basis: list[int] = []
        for i, v in enumerate(P.vertices):
            if rank([P.vertices[j] for j in basis] + [v]) > len(basis):
                basis.append(i)
        x, _ = solve_affine([P.vertices[i] for i in basis], [self.remainder[i] for i in basis])
        return tuple(r - dot(v, x) for r, v in zip(self.remainder, P.vertices))


def _index_against(P: VPolytope, w, S: Split):
    return coherency_index(P, w, split_weight(P, S))


def split_decomposition(P: VPolytope, w: Sequence, jobs: int | None = None) -> SplitDecomposition:
    """``w = w0 + sum lambda_S w_S`` with ``lambda_S`` the coherency indices."""
    w = weight(w, P)
    system = enumerate_splits(P)
    lams = pmap(partial(_index_against, P, w), system, jobs)
    terms = [(S, lam) for S, lam in zip(system, lams) if lam != 0]
    splits_part = add(*[scale(lam, split_weight(P, S)) for S, lam in terms]) if terms else (Fraction(0),) * P.n
    remainder = tuple(a - b for a, b in zip(w, splits_part))
    if terms and not is_coherent(P, remainder, splits_part):
        raise RuntimeError("split decomposition failed its coherence check")
    if not is_split_prime(P, remainder):
        raise RuntimeError("split decomposition remainder is not split prime")
    return SplitDecomposition(tuple(terms), remainder)


def is_split_prime(P: VPolytope, w: Sequence) -> bool:
    w = weight(w, P)
    return all(coherency_index(P, w, split_weight(P, S)) == 0 for S in enumerate_splits(P))


def _compatible_pair(P: VPolytope, system: Sequence[Split], pair: tuple[int, int]) -> bool:
    return is_compatible(P, system[pair[0]], system[pair[1]])


def compatibility_graph(P: VPolytope, system: Sequence[Split] | None = None, jobs: int | None = None) -> nx.Graph:
    """Nodes are split indices; edges join compatible pairs."""
    if system is None:
        system = enumerate_splits(P)
    system = tuple(system)
    pairs = list(combinations(range(len(system)), 2))
    g = nx.Graph()
    g.add_nodes_from(range(len(system)))
    for pair, ok in zip(pairs, pmap(partial(_compatible_pair, P, system), pairs, jobs)):
        if ok:
            g.add_edge(*pair)
    return g


def split_complex(P: VPolytope, jobs: int | None = None) -> SimplicialComplex:
    """Clique complex of the compatibility graph; vertices are split indices."""
    return flag_complex(compatibility_graph(P, jobs=jobs))


def weak_split_faces(P: VPolytope, k: int) -> list[tuple[int, ...]]:
    """Weakly compatible sets of at most ``k`` splits, as sorted index tuples.

    Candidates of size m are grown from weakly compatible sets of size m - 1
    (subsets of weakly compatible sets stay weakly compatible), and every
    candidate is tested on its own.
    """
    system = enumerate_splits(P)
    faces: list[tuple[int, ...]] = []
    level = [(i,) for i in range(len(system))]
    size = 1
    while level and size <= k:
        faces.extend(level)
        if size == k:
            break
        have = set(level)
        nxt = []
        for f in level:
            for j in range(f[-1] + 1, len(system)):
                cand = f + (j,)
                if all(cand[:i] + cand[i + 1:] in have for i in range(len(cand))):
                    if is_weakly_compatible(P, [system[i] for i in cand]):
                        nxt.append(cand)
        level = nxt
        size += 1
    return faces


def split_polyhedron(P: VPolytope) -> HPolyhedron:
    """Outer approximation of the secondary polytope by the split inequalities.

    Coordinates are indexed by the vertices of P; volumes and centroids are
    measured in the chart of P.
    """
    n = P.n
    d = P.dim
    vol = P.volume
    c = P.centroid
    eqs = [eq([1] * n, (d + 1) * vol)]
    for col in range(P.ambient):
        eqs.append(eq([v[col] for v in P.vertices], (d + 1) * vol * c[col]))
    ineqs = []
    for S in enumerate_splits(P):
        half = P.sub(S.plus)
        coeffs = [dot(S.normal, v) if i in S.plus else Fraction(0) for i, v in enumerate(P.vertices)]
        rhs = dot(S.normal, half.centroid) * (d + 1) * half.volume
        ineqs.append(ge(coeffs, rhs))
    return HPolyhedron(tuple(eqs), tuple(ineqs), width=n)


def tree_from_compatible(P: VPolytope, system: Sequence[Split]) -> nx.Graph:
    """Tight span of a compatible split system as a tree.

    Nodes are cell indices of the refinement with attribute ``point`` (the
    tight-span vertex) and ``cell``; each edge carries the index of the split
    whose wall it crosses.
    """
    system = list(system)
    if not system:
        raise ValueError("empty split system")
    for S, T in combinations(system, 2):
        if not is_compatible(P, S, T):
            raise ValueError("split system is not pairwise compatible")
    w = add(*[split_weight(P, S) for S in system])
    ts = tight_span(P, w)
    g = ts.graph()
    for i, (pt, cell) in enumerate(zip(ts.vertices, ts.cells)):
        g.nodes[i]["point"] = pt
        g.nodes[i]["cell"] = cell
    for i, j in g.edges:
        a, b = ts.cells[i], ts.cells[j]
        crossing = [k for k, S in enumerate(system)
                    if (a <= S.plus and b <= S.minus) or (a <= S.minus and b <= S.plus)]
        if len(crossing) != 1:
            raise RuntimeError("tight-span edge is not crossed by exactly one split")
        g.edges[i, j]["split"] = crossing[0]
    if not nx.is_tree(g) or g.number_of_edges() != len(system):
        raise RuntimeError("tight span of a compatible system is not a tree")
    return g

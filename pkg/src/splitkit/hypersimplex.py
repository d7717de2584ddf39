"""Hypersimplices Delta(k, n) and their (A, B; mu) splits; split metrics.

Ground-set labels are 1-based (``A`` is a subset of ``{1..n}``) while
vertex indices of the polytope are 0-based positions in the lexicographic
list of k-subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import networkx as nx

from .exact import rat
from .polytope import VPolytope
from .splits import Split, make_split, split_weight, tree_from_compatible


def _check_kn(k: int, n: int) -> None:
    if n < 2 or not 1 <= k <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= k <= n-1, got k={k}, n={n}")


@lru_cache(maxsize=64)
def vertex_sets(k: int, n: int) -> tuple[frozenset[int], ...]:
    """k-subsets of {1..n} in lexicographic order (the vertex order)."""
    _check_kn(k, n)
    return tuple(frozenset(c) for c in combinations(range(1, n + 1), k))


@lru_cache(maxsize=64)
def hypersimplex(k: int, n: int) -> VPolytope:
    verts = tuple(tuple(Fraction(int(i in X)) for i in range(1, n + 1)) for X in vertex_sets(k, n))
    return VPolytope(verts, check=False)


def vertex_index(k: int, n: int) -> dict[frozenset[int], int]:
    return {X: i for i, X in enumerate(vertex_sets(k, n))}


@dataclass(frozen=True)
class ABSplit:
    """The split ``mu * x(A) = (k - mu) * x(B)`` of Delta(k, n), canonical form."""

    A: frozenset[int]
    B: frozenset[int]
    mu: int
    k: int
    n: int

    def __repr__(self) -> str:
        return f"({''.join(map(str, sorted(self.A)))},{''.join(map(str, sorted(self.B)))};{self.mu})"

    def flipped(self) -> tuple[frozenset[int], frozenset[int], int]:
        return self.B, self.A, self.k - self.mu

    def sort_key(self):
        return (sorted(self.A), self.mu)


def ab_split(A: Iterable[int], mu: int, k: int, n: int, B: Iterable[int] | None = None) -> ABSplit:
    """Validate and canonicalize (A, B; mu); ``B`` defaults to the complement."""
    _check_kn(k, n)
    A = frozenset(A)
    ground = frozenset(range(1, n + 1))
    B = ground - A if B is None else frozenset(B)
    if A & B or A | B != ground or not A or not B:
        raise ValueError("A and B must partition {1..n} into nonempty parts")
    if not 1 <= mu <= k - 1:
        raise ValueError(f"mu must lie in 1..{k - 1}")
    if not k - mu + 1 <= len(A) <= n - mu - 1:
        raise ValueError(f"#A = {len(A)} violates {k - mu + 1} <= #A <= {n - mu - 1}")
    if sorted(B) < sorted(A):
        A, B, mu = B, A, k - mu
    return ABSplit(A, B, mu, k, n)


@lru_cache(maxsize=64)
def enumerate_ab_splits(k: int, n: int) -> tuple[ABSplit, ...]:
    _check_kn(k, n)
    out = set()
    for mu in range(1, k):
        for size in range(k - mu + 1, n - mu):
            for A in combinations(range(1, n + 1), size):
                out.add(ab_split(A, mu, k, n))
    return tuple(sorted(out, key=ABSplit.sort_key))


def split_count(k: int, n: int) -> int:
    """Closed-form number of splits of Delta(k, n)."""
    _check_kn(k, n)
    if 2 * k > n:
        k = n - k
    return (k - 1) * (2 ** (n - 1) - (n + 1)) - sum((k - i) * comb(n, i) for i in range(2, k))


def ab_compatible(k: int, n: int, s: ABSplit, t: ABSplit) -> bool:
    A, B, mu = s.A, s.B, s.mu
    C, D, nu = t.A, t.B, t.mu
    return (len(A & C) <= k - mu - nu or len(A & D) <= nu - mu
            or len(B & C) <= mu - nu or len(B & D) <= mu + nu - k)


def ab_normal(s: ABSplit) -> tuple[Fraction, ...]:
    return tuple(Fraction(s.mu if i in s.A else -(s.k - s.mu)) for i in range(1, s.n + 1))


def ab_to_split(k: int, n: int, s: ABSplit) -> Split:
    if (s.k, s.n) != (k, n):
        raise ValueError("split belongs to a different hypersimplex")
    out = make_split(hypersimplex(k, n), ab_normal(s))
    if out is None:
        raise RuntimeError(f"{s!r} does not cut Delta({k},{n}) as a split")
    return out


def split_to_ab(k: int, n: int, S: Split) -> ABSplit:
    """Recover (A, B; mu) from a geometric split of Delta(k, n)."""
    for s in enumerate_ab_splits(k, n):
        if ab_to_split(k, n, s) == S:
            return s
    raise ValueError("not a split of this hypersimplex")


def ab_weight(k: int, n: int, s: ABSplit) -> tuple[Fraction, ...]:
    return split_weight(hypersimplex(k, n), ab_to_split(k, n, s))


# -- metrics ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteMetric:
    """Metric on {1..n}; ``d`` maps pairs (i, j) with i < j to distances."""

    n: int
    d: tuple[tuple[tuple[int, int], Fraction], ...]

    def __post_init__(self):
        table = {}
        for (i, j), x in self.d:
            i, j = min(i, j), max(i, j)
            table[(i, j)] = rat(x)
        for i, j in combinations(range(1, self.n + 1), 2):
            if (i, j) not in table:
                raise ValueError(f"missing distance for pair ({i},{j})")
            if table[(i, j)] < 0:
                raise ValueError("distances must be nonnegative")
        object.__setattr__(self, "d", tuple(sorted(table.items())))
        for a, b, c in combinations(range(1, self.n + 1), 3):
            x, y, z = self(a, b), self(a, c), self(b, c)
            if x > y + z or y > x + z or z > x + y:
                raise ValueError(f"triangle inequality fails on {a},{b},{c}")

    def __call__(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        return dict(self.d)[(min(i, j), max(i, j))]

    @classmethod
    def from_upper(cls, n: int, rows: Sequence[Sequence]) -> "FiniteMetric":
        """Build from an upper-triangle listing: ``rows[i]`` holds d(i+1, j) for j > i+1."""
        pairs = []
        for i, row in enumerate(rows):
            for off, x in enumerate(row):
                pairs.append(((i + 1, i + 2 + off), rat(x)))
        return cls(n, tuple(pairs))

    def upper(self) -> list[list[Fraction]]:
        return [[self(i, j) for j in range(i + 1, self.n + 1)] for i in range(1, self.n)]

    def pair_values(self) -> tuple[Fraction, ...]:
        return tuple(self(i, j) for i, j in combinations(range(1, self.n + 1), 2))


def metric_to_weight(delta: FiniteMetric) -> tuple[Fraction, ...]:
    """Weight on Delta(2, n): the vertex e_i + e_j gets -delta(i, j)."""
    return tuple(-delta(*sorted(X)) for X in vertex_sets(2, delta.n))


def split_metric(A: Iterable[int], B: Iterable[int]) -> FiniteMetric:
    A, B = frozenset(A), frozenset(B)
    n = len(A) + len(B)
    if A & B or A | B != frozenset(range(1, n + 1)):
        raise ValueError("A and B must partition {1..n}")
    if len(A) < 2 or len(B) < 2:
        raise ValueError("both parts need at least two points")
    pairs = tuple(((i, j), Fraction(int((i in A) != (j in A)))) for i, j in combinations(range(1, n + 1), 2))
    return FiniteMetric(n, pairs)


def weakly_compatible_k2(partitions: Sequence[tuple[Iterable[int], Iterable[int]]]) -> bool:
    """Four-point test: no quartet on which the system shows all three 2|2 splits."""
    parts = [(frozenset(a), frozenset(b)) for a, b in partitions]
    if not parts:
        return True
    points = sorted(parts[0][0] | parts[0][1])
    for quad in combinations(points, 4):
        m0 = quad[0]
        seen = set()
        for a, b in parts:
            side = a if m0 in a else b
            with_m0 = [m for m in quad[1:] if m in side]
            if len(with_m0) == 1:
                seen.add(with_m0[0])
        if len(seen) == 3:
            return False
    return True


def thrackle_system(n: int) -> tuple[ABSplit, ...]:
    """Interval splits ({i..j}, rest; 1) of Delta(2, n), up to complement."""
    if n < 4:
        raise ValueError("thrackle system needs n >= 4")
    out = set()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if j - i < n - 2:
                out.add(ab_split(range(i, j + 1), 1, 2, n))
    return tuple(sorted(out, key=ABSplit.sort_key))


def labeled_tree(n: int, system: Sequence[ABSplit]) -> nx.Graph:
    """Leaf-labelled tree of a compatible system of (A, B; 1) splits of Delta(2, n).

    Internal nodes are ``("node", i)`` for the tight-span vertices; leaves are
    the integers 1..n.  Internal edges carry the ABSplit they realize.
    """
    system = list(system)
    for s in system:
        if (s.k, s.n, s.mu) != (2, n, 1):
            raise ValueError("labeled_tree needs (A,B;1) splits of Delta(2,n)")
    P = hypersimplex(2, n)
    geo = [ab_to_split(2, n, s) for s in system]
    core = tree_from_compatible(P, geo)
    index = vertex_index(2, n)
    tree = nx.Graph()
    for v, data in core.nodes(data=True):
        tree.add_node(("node", v), point=data["point"])
    for u, v, data in core.edges(data=True):
        tree.add_edge(("node", u), ("node", v), split=system[data["split"]])
    for i in range(1, n + 1):
        star = {index[frozenset((i, j))] for j in range(1, n + 1) if j != i}
        owners = [v for v, data in core.nodes(data=True) if star <= data["cell"]]
        if len(owners) != 1:
            raise RuntimeError(f"leaf {i} has no unique attachment node")
        tree.add_edge(("node", owners[0]), i)
    return tree


def tree_splits(n: int, tree: nx.Graph) -> tuple[ABSplit, ...]:
    """Read the (A, B; 1) splits off the internal edges of a leaf-labelled tree."""
    out = set()
    for u, v in tree.edges:
        if isinstance(u, int) or isinstance(v, int):
            continue
        g = tree.copy()
        g.remove_edge(u, v)
        side = nx.node_connected_component(g, u)
        A = {x for x in side if isinstance(x, int)}
        out.add(ab_split(A, 1, 2, n))
    return tuple(sorted(out, key=ABSplit.sort_key))

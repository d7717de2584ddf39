"""Exact rational scalars and linear algebra.

Every scalar in splitkit is a :class:`fractions.Fraction`.  Matrices are plain
row-major lists of lists; nothing here mutates its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterable, Sequence

Rat = Fraction
Matrix = list[list[Fraction]]


@total_ordering
class _PositiveInfinity:
    """Order-only stand-in for +inf.  Arithmetic on it is an error by design."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "POS_INF"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("splitkit.POS_INF")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __reduce__(self):
        return (_PositiveInfinity, ())


POS_INF = _PositiveInfinity()


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently smuggle rounding into the exact
    pipeline.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x) -> str:
    if x is POS_INF:
        return "inf"
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in xs)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[rat(x) for x in row] for row in rows]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [rat(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = to_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    """Row rank over the rationals."""
    if not m or not len(m[0]):
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], cols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0}; one vector per free column."""
    if cols is None:
        cols = len(m[0]) if m else 0
    if not m:
        return [tuple(Fraction(int(i == j)) for i in range(cols)) for j in range(cols)]
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for row, p in zip(r, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_affine(m: Sequence[Sequence], b: Sequence) -> tuple[tuple[Fraction, ...] | None, list[tuple[Fraction, ...]]]:
    """Solve ``m x = b``.

    Returns ``(particular, nullspace_basis)``; ``particular`` is ``None`` when
    the system is inconsistent.  The particular solution has every free
    variable set to zero, so it is canonical for a given matrix.
    """
    if len(b) != len(m):
        raise ValueError("right-hand side length must match the row count")
    cols = len(m[0]) if m else 0
    aug = [list(row) + [rv] for row, rv in zip(m, b)]
    if not aug:
        return tuple([Fraction(0)] * cols), nullspace([], cols)
    r, pivots = rref(aug)
    if cols in pivots:
        return None, nullspace(m, cols)
    x = [Fraction(0)] * cols
    for row, p in zip(r, pivots):
        x[p] = row[cols]
    return tuple(x), nullspace(m, cols)


def pivot_columns(m: Sequence[Sequence]) -> list[int]:
    """Lexicographically first set of columns spanning the column space."""
    if not m:
        return []
    return rref(m)[1]


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[rat(a) - rat(b) for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def det(m: Sequence[Sequence]) -> Fraction:
    a = to_matrix(m)
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


# -- Smith normal form ------------------------------------------------------


def _dense_snf(a: list[list[int]]) -> list[int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Unit pivots are peeled off on a sparse representation first (boundary
    matrices are dominated by them); the small remainder goes through the
    dense algorithm.
    """
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for i, row in enumerate(m):
        entries = {}
        for j, x in enumerate(row):
            if x:
                if isinstance(x, Fraction):
                    if x.denominator != 1:
                        raise ValueError("smith_normal_form needs an integer matrix")
                    x = x.numerator
                entries[j] = int(x)
                col_rows.setdefault(j, set()).add(i)
        if entries:
            rows[i] = entries
    units = 0
    while True:
        pivot = None
        for i in sorted(rows, key=lambda r: len(rows[r])):
            for j, x in rows[i].items():
                if x in (1, -1):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        prow = rows.pop(i)
        p = prow[j]
        for c in prow:
            col_rows[c].discard(i)
        for r in list(col_rows.get(j, ())):
            row = rows[r]
            f = row[j] * p
            for c, x in prow.items():
                v = row.get(c, 0) - f * x
                if v:
                    if c not in row:
                        col_rows[c].add(r)
                    row[c] = v
                elif c in row:
                    del row[c]
                    col_rows[c].discard(r)
            if not row:
                del rows[r]
        col_rows.pop(j, None)
        units += 1
    rest_cols = sorted({c for row in rows.values() for c in row})
    dense = [[row.get(c, 0) for c in rest_cols] for row in rows.values()]
    return [1] * units + _dense_snf(dense)

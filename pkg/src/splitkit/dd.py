"""Double description method on integer data.

``extreme_rays(A)`` returns the extreme rays of the pointed cone
``{y : A y >= 0}``.  Rays are kept as primitive integer vectors and zero sets
as bitmasks over the rows of ``A``, so adjacency tests are pure bit logic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .exact import primitive, rank, rref


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _prim(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def extreme_rays(rows: Sequence[Sequence]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of ``{y : A y >= 0}`` with their zero-set bitmasks.

    ``A`` must have full column rank (the cone is then pointed).  The result
    is sorted by ray for determinism.
    """
    A = [primitive(r) for r in rows]
    m = len(A)
    if m == 0:
        raise ValueError("empty constraint matrix")
    D = len(A[0])
    if rank(A) != D:
        raise ValueError("cone is not pointed: constraint matrix lacks full column rank")

    basis: list[int] = []
    for i in range(m):
        if rank([A[j] for j in basis] + [A[i]]) > len(basis):
            basis.append(i)
            if len(basis) == D:
                break
    B = [A[i] for i in basis]
    aug = [list(row) + [Fraction(int(i == j)) for j in range(D)] for i, row in enumerate(B)]
    red, _ = rref(aug)
    inverse_cols = [[red[i][D + j] for i in range(D)] for j in range(D)]
    rays: list[tuple[tuple[int, ...], int]] = []
    full = 0
    for i in basis:
        full |= 1 << i
    for j, col in enumerate(inverse_cols):
        r = primitive(col)
        rays.append((r, full & ~(1 << basis[j])))

    remaining = [i for i in range(m) if i not in set(basis)]
    while remaining:
        # fewest satisfied generators first
        best = None
        for i in remaining:
            vals = [_dot(A[i], r) for r, _ in rays]
            sat = sum(1 for v in vals if v >= 0)
            if best is None or sat < best[0]:
                best = (sat, i, vals)
        _, idx, vals = best
        remaining.remove(idx)
        bit = 1 << idx
        pos = [(rays[k], vals[k]) for k in range(len(rays)) if vals[k] > 0]
        neg = [(rays[k], vals[k]) for k in range(len(rays)) if vals[k] < 0]
        if not neg:
            rays = [(r, z | bit) if v == 0 else (r, z) for (r, z), v in zip(rays, vals)]
            continue
        new: list[tuple[tuple[int, ...], int]] = []
        masks = [z for _, z in rays]
        for (p, zp), vp in pos:
            for (q, zq), vq in neg:
                common = zp & zq
                if common.bit_count() < D - 2:
                    continue
                adjacent = True
                for z in masks:
                    if z & common == common and z != zp and z != zq:
                        adjacent = False
                        break
                if adjacent:
                    r = _prim([vp * b - vq * a for a, b in zip(p, q)])
                    new.append((r, common | bit))
        kept = [(r, z | bit) if v == 0 else (r, z) for (r, z), v in zip(rays, vals) if v >= 0]
        rays = kept + new
    rays.sort()
    return rays

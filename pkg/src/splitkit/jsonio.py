"""JSON encodings of the library's values.

Rationals are strings ``"p/q"`` (``"p"`` for integers); plain JSON integers
are accepted on input.  Floats are refused.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .complex import HomologyResult, SimplicialComplex
from .exact import POS_INF, rat, rat_str
from .hypersimplex import ABSplit, FiniteMetric, ab_split
from .lp import LinConstraint
from .matroid import Matroid
from .polytope import DualDescription, HPolyhedron, VPolytope, embed, is_homogeneous
from .splits import Split, SplitDecomposition
from .subdivision import RegularSubdivision, TightSpan


def _rat_in(x) -> Fraction:
    if isinstance(x, float):
        raise ValueError(f"floating-point value {x!r} is not allowed; use a string like \"1/3\"")
    return rat(x)


def rats(xs) -> list[str]:
    return [rat_str(x) for x in xs]


def load(source: str) -> Any:
    """Parse inline JSON, a file path, or the name of a bundled data file."""
    text = source.strip()
    if text[:1] in "[{":
        return json.loads(text)
    path = Path(source)
    if path.exists():
        return json.loads(path.read_text())
    bundled = resources.files("splitkit") / "data" / path.name
    if bundled.is_file():
        return json.loads(bundled.read_text())
    raise FileNotFoundError(f"no such file: {source}")


def polytope_in(obj) -> tuple[VPolytope, bool]:
    """Read a polytope; the flag reports whether a coordinate 1 was prepended."""
    pts = obj["vertices"] if isinstance(obj, dict) else obj
    pts = [[_rat_in(x) for x in p] for p in pts]
    if not pts:
        raise ValueError("polytope has no vertices")
    embedded = not is_homogeneous(pts)
    return embed(pts), embedded


def polytope_out(P: VPolytope) -> dict:
    return {"vertices": [rats(v) for v in P.vertices]}


def weight_in(obj) -> tuple[Fraction, ...]:
    vals = obj["weight"] if isinstance(obj, dict) else obj
    return tuple(_rat_in(x) for x in vals)


def constraint_in(obj) -> LinConstraint:
    return LinConstraint(tuple(_rat_in(x) for x in obj["coeffs"]), obj.get("rel", ">="), _rat_in(obj.get("rhs", 0)))


def constraint_out(c: LinConstraint) -> dict:
    return {"coeffs": rats(c.coeffs), "rel": c.rel, "rhs": rat_str(c.rhs)}


def hpolyhedron_in(obj) -> HPolyhedron:
    return HPolyhedron(tuple(constraint_in(c) for c in obj.get("equations", [])),
                       tuple(constraint_in(c) for c in obj.get("inequalities", [])))


def hpolyhedron_out(h: HPolyhedron) -> dict:
    return {"equations": [constraint_out(c) for c in h.equations],
            "inequalities": [constraint_out(c) for c in h.inequalities]}


def dual_out(dd: DualDescription) -> dict:
    out = {"feasible": dd.feasible, "bounded": dd.bounded,
           "vertices": [rats(v) for v in dd.vertices], "rays": [rats(r) for r in dd.rays]}
    if dd.feasible and dd.bounded:
        out["f_vector"] = list(dd.face_lattice().f_vector)
    return out


def split_out(S: Split) -> dict:
    return {"normal": rats(S.normal), "plus": sorted(S.plus), "minus": sorted(S.minus)}


def subdivision_out(sub: RegularSubdivision) -> dict:
    return {"cells": [sorted(c) for c in sub.cells]}


def tight_span_out(ts: TightSpan) -> dict:
    return {
        "vertices": [rats(v) for v in ts.vertices],
        "poset": [{"face": sorted(f), "dual": sorted(d)} for f, d in ts.faces],
    }


def decomposition_out(dec: SplitDecomposition) -> dict:
    return {"terms": [{"split": split_out(S), "lambda": rat_str(lam)} for S, lam in dec.terms],
            "remainder": rats(dec.remainder)}


def ab_in(obj, k: int | None = None, n: int | None = None) -> ABSplit:
    k = obj.get("k", k)
    n = obj.get("n", n)
    if k is None or n is None:
        raise ValueError("ABSplit needs k and n")
    return ab_split(obj["A"], int(obj["mu"]), int(k), int(n), obj.get("B"))


def ab_out(s: ABSplit) -> dict:
    return {"A": sorted(s.A), "B": sorted(s.B), "mu": s.mu, "k": s.k, "n": s.n}


def metric_in(obj) -> FiniteMetric:
    return FiniteMetric.from_upper(int(obj["n"]), [[_rat_in(x) for x in row] for row in obj["d"]])


def metric_out(m: FiniteMetric) -> dict:
    return {"n": m.n, "d": [rats(row) for row in m.upper()]}


def matroid_in(obj) -> Matroid:
    return Matroid(int(obj["n"]), int(obj["k"]), frozenset(frozenset(b) for b in obj["bases"]))


def matroid_out(M: Matroid) -> dict:
    return {"n": M.n, "k": M.k, "bases": [list(b) for b in M.sorted_bases()]}


def complex_in(obj) -> SimplicialComplex:
    facets = obj["facets"] if isinstance(obj, dict) else obj
    return SimplicialComplex.from_facets(facets)


def complex_out(c: SimplicialComplex) -> dict:
    return {"facets": sorted(sorted(f) for f in c.facets)}


def homology_out(h: HomologyResult) -> list[dict]:
    return [{"dim": g.dim, "rank": g.rank, "torsion": list(g.torsion)} for g in h.groups]


def scalar_out(x) -> str:
    return "inf" if x is POS_INF else rat_str(x)

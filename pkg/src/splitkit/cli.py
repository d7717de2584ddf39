"""Command-line front end: ``splitkit VERB [SUBVERB] ...``, JSON on stdout.

Exit status is 0 on success, 1 for domain or input errors (message on
stderr) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from typing import Sequence

import networkx as nx

from . import jsonio as J
from .complex import f_vector, graph_stats, reduced_homology
from .exact import rat_str
from .hypersimplex import (
    ab_compatible,
    enumerate_ab_splits,
    hypersimplex,
    labeled_tree,
    metric_to_weight,
    split_count,
    split_metric,
    split_to_ab,
    vertex_sets,
)
from .matroid import is_matroid_subdivision, matroid_polytope, pair_matroid, split_matroid
from .parallel import resolve_jobs
from .polytope import dual_description
from .splits import (
    compatibility_graph,
    enumerate_splits,
    is_compatible,
    is_weakly_compatible,
    split_complex,
    split_decomposition,
    split_polyhedron,
    vertex_split,
    weak_split_faces,
)
from .subdivision import coherency_index, is_triangulation, regular_subdivision, tight_span


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _polytope(args) -> tuple:
    P, embedded = J.polytope_in(J.load(args.polytope))
    return P, {"embedded": embedded}


def _weight(source: str, P) -> tuple:
    w = J.weight_in(J.load(source))
    if len(w) != P.n:
        raise ValueError(f"weight has {len(w)} entries but the polytope has {P.n} vertices")
    return w


# -- hypersimplex -----------------------------------------------------------


def cmd_hs_vertices(args):
    verts = [sorted(X) for X in vertex_sets(args.k, args.n)]
    if args.count:
        return {"count": len(verts)}
    return {"k": args.k, "n": args.n, "vertices": verts}


def cmd_hs_splits(args):
    splits = enumerate_ab_splits(args.k, args.n)
    if args.count:
        return {"count": len(splits)}
    return {"count": len(splits), "splits": [J.ab_out(s) for s in splits]}


def cmd_hs_compat(args):
    if (args.s is None) != (args.t is None):
        raise UsageError("give both --s and --t, or neither")
    if args.s is not None:
        s = J.ab_in(J.load(args.s), args.k, args.n)
        t = J.ab_in(J.load(args.t), args.k, args.n)
        return {"s": J.ab_out(s), "t": J.ab_out(t), "compatible": ab_compatible(args.k, args.n, s, t)}
    splits = enumerate_ab_splits(args.k, args.n)
    edges = [[i, j] for i, j in combinations(range(len(splits)), 2)
             if ab_compatible(args.k, args.n, splits[i], splits[j])]
    g = nx.Graph()
    g.add_nodes_from(range(len(splits)))
    g.add_edges_from(edges)
    return {"splits": [J.ab_out(s) for s in splits], "edges": edges, "stats": graph_stats(g)}


def cmd_hs_count(args):
    return {"count": split_count(args.k, args.n)}


# -- general splits ---------------------------------------------------------


def cmd_splits_enumerate(args):
    P, rep = _polytope(args)
    splits = enumerate_splits(P)
    rep["count"] = len(splits)
    if not args.count:
        rep["vertex_splits"] = sum(1 for v in range(P.n) if vertex_split(P, v) is not None)
        rep["splits"] = [J.split_out(S) for S in splits]
    return rep


def cmd_splits_compat(args):
    P, rep = _polytope(args)
    splits = enumerate_splits(P)
    if (args.i is None) != (args.j is None):
        raise UsageError("give both -i and -j, or neither")
    if args.i is not None:
        for x in (args.i, args.j):
            if not 0 <= x < len(splits):
                raise ValueError(f"split index {x} out of range (0..{len(splits) - 1})")
        rep["compatible"] = is_compatible(P, splits[args.i], splits[args.j])
        return rep
    g = compatibility_graph(P, splits, jobs=args.jobs)
    rep["edges"] = sorted([sorted(e) for e in g.edges])
    rep["stats"] = graph_stats(g)
    return rep


def cmd_splits_weak(args):
    P, rep = _polytope(args)
    splits = enumerate_splits(P)
    if args.set is not None:
        idx = _ints(args.set)
        if not idx or any(not 0 <= i < len(splits) for i in idx):
            raise ValueError("--set needs split indices in range")
        rep["weakly_compatible"] = is_weakly_compatible(P, [splits[i] for i in idx])
        return rep
    faces = weak_split_faces(P, args.max_size)
    rep["faces"] = [list(f) for f in faces]
    counts = {}
    for f in faces:
        counts[len(f)] = counts.get(len(f), 0) + 1
    rep["counts"] = [counts[s] for s in sorted(counts)]
    return rep


def cmd_splits_complex(args):
    P, rep = _polytope(args)
    c = split_complex(P, jobs=args.jobs)
    rep["f_vector"] = list(f_vector(c))
    rep["facets"] = sorted(sorted(f) for f in c.facets)
    rep["facet_census"] = {str(k): v for k, v in c.facet_census().items()}
    if args.homology:
        rep["homology"] = J.homology_out(reduced_homology(c))
    return rep


def cmd_splits_polyhedron(args):
    P, rep = _polytope(args)
    h = split_polyhedron(P)
    rep["polyhedron"] = J.hpolyhedron_out(h)
    if args.vertices:
        rep["dual"] = J.dual_out(dual_description(h))
    return rep


# -- weights ----------------------------------------------------------------


def cmd_subdivide(args):
    P, rep = _polytope(args)
    sub = regular_subdivision(P, _weight(args.weight, P))
    rep.update(J.subdivision_out(sub))
    rep["triangulation"] = is_triangulation(sub)
    return rep


def cmd_tightspan(args):
    P, rep = _polytope(args)
    rep.update(J.tight_span_out(tight_span(P, _weight(args.weight, P))))
    return rep


def cmd_decompose(args):
    P, rep = _polytope(args)
    dec = split_decomposition(P, _weight(args.weight, P), jobs=args.jobs)
    rep.update(J.decomposition_out(dec))
    rep["remainder_mod_affine"] = J.rats(dec.remainder_mod_affine(P))
    return rep


def cmd_alpha(args):
    P, rep = _polytope(args)
    rep["alpha"] = J.scalar_out(coherency_index(P, _weight(args.weight, P), _weight(args.ref, P)))
    return rep


# -- matroids ---------------------------------------------------------------


def cmd_matroid_check(args):
    P = hypersimplex(args.k, args.n)
    sub = regular_subdivision(P, _weight(args.weight, P))
    return {"cells": [sorted(c) for c in sub.cells], "matroidal": is_matroid_subdivision(sub)}


def cmd_matroid_split(args):
    s = J.ab_in(J.load(args.split), args.k, args.n)
    return {"split": J.ab_out(s), "matroids": [J.matroid_out(M) for M in split_matroid(args.k, args.n, s)]}


def cmd_matroid_pair(args):
    s = J.ab_in(J.load(args.s), args.k, args.n)
    t = J.ab_in(J.load(args.t), args.k, args.n)
    M = pair_matroid(args.k, args.n, s, t)
    rep = {"matroid": J.matroid_out(M), "bases": len(M.bases)}
    if args.f_vector:
        rep["f_vector"] = list(matroid_polytope(M).face_lattice.f_vector)
    return rep


# -- complexes and metrics --------------------------------------------------


def cmd_complex_fvector(args):
    return {"f_vector": list(f_vector(J.complex_in(J.load(args.complex))))}


def cmd_complex_homology(args):
    return {"homology": J.homology_out(reduced_homology(J.complex_in(J.load(args.complex))))}


def cmd_metric_weight(args):
    m = J.metric_in(J.load(args.metric))
    return {"n": m.n, "weight": J.rats(metric_to_weight(m))}


def cmd_metric_splitmetric(args):
    return J.metric_out(split_metric(_ints(args.A), _ints(args.B)))


def cmd_metric_tree(args):
    m = J.metric_in(J.load(args.metric))
    P = hypersimplex(2, m.n)
    dec = split_decomposition(P, metric_to_weight(m), jobs=args.jobs)
    terms = [(split_to_ab(2, m.n, S), lam) for S, lam in dec.terms]
    rep = {"terms": [{"split": J.ab_out(s), "lambda": rat_str(lam)} for s, lam in terms],
           "remainder": J.rats(dec.remainder), "remainder_mod_affine": J.rats(dec.remainder_mod_affine(P))}
    if not terms:
        rep["tree"] = None
        return rep
    pairs_ok = all(ab_compatible(2, m.n, s, t) for (s, _), (t, _) in combinations(terms, 2))
    if not pairs_ok:
        rep["tree"] = None
        rep["note"] = "split support is not pairwise compatible"
        return rep
    tree = labeled_tree(m.n, [s for s, _ in terms])

    def name(v):
        return v if isinstance(v, int) else f"n{v[1]}"

    lengths = {s: lam for s, lam in terms}
    edges = []
    for u, v, data in sorted(tree.edges(data=True), key=lambda e: (str(name(e[0])), str(name(e[1])))):
        entry = {"ends": [name(u), name(v)]}
        if "split" in data:
            entry["split"] = J.ab_out(data["split"])
            entry["length"] = rat_str(lengths[data["split"]])
        edges.append(entry)
    rep["tree"] = {"nodes": sorted((name(v) for v in tree.nodes), key=str), "edges": edges}
    return rep


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $SPLITKIT_JOBS or 1)")

    parser = argparse.ArgumentParser(prog="splitkit", description=__doc__.splitlines()[0], parents=[common])
    verbs = parser.add_subparsers(dest="verb", required=True)

    def leaf(sub, name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def kn(p):
        p.add_argument("-k", type=int, required=True)
        p.add_argument("-n", type=int, required=True)

    hs = verbs.add_parser("hypersimplex", help="closed-form split theory of Delta(k,n)").add_subparsers(
        dest="sub", required=True)
    p = leaf(hs, "vertices", cmd_hs_vertices, "k-subsets in vertex order")
    kn(p)
    p.add_argument("--count", action="store_true")
    p = leaf(hs, "splits", cmd_hs_splits, "all (A,B;mu) splits")
    kn(p)
    p.add_argument("--count", action="store_true")
    p = leaf(hs, "compat", cmd_hs_compat, "combinatorial compatibility")
    kn(p)
    p.add_argument("--s", help="ABSplit JSON, e.g. '{\"A\":[1,2,6],\"mu\":2}'")
    p.add_argument("--t", help="second ABSplit JSON")
    p = leaf(hs, "count", cmd_hs_count, "closed-form split count")
    kn(p)

    sp = verbs.add_parser("splits", help="splits of a polytope given by points").add_subparsers(
        dest="sub", required=True)
    p = leaf(sp, "enumerate", cmd_splits_enumerate, "all splits")
    p.add_argument("polytope")
    p.add_argument("--count", action="store_true")
    p = leaf(sp, "compat", cmd_splits_compat, "compatibility of two splits or the whole graph")
    p.add_argument("polytope")
    p.add_argument("-i", type=int)
    p.add_argument("-j", type=int)
    p = leaf(sp, "weak", cmd_splits_weak, "weak compatibility")
    p.add_argument("polytope")
    p.add_argument("--set", help="comma-separated split indices to test")
    p.add_argument("--max-size", type=int, default=3, help="size cap for weak face enumeration")
    p = leaf(sp, "complex", cmd_splits_complex, "split complex")
    p.add_argument("polytope")
    p.add_argument("--homology", action="store_true")
    p = leaf(sp, "polyhedron", cmd_splits_polyhedron, "split polyhedron")
    p.add_argument("polytope")
    p.add_argument("--vertices", action="store_true", help="also compute vertices and f-vector")

    for name, func, help_text in (("subdivide", cmd_subdivide, "regular subdivision of a weight"),
                                  ("tightspan", cmd_tightspan, "tight span of a weight"),
                                  ("decompose", cmd_decompose, "split decomposition of a weight")):
        p = leaf(verbs, name, func, help_text)
        p.add_argument("-p", "--polytope", required=True)
        p.add_argument("-w", "--weight", required=True)
    p = leaf(verbs, "alpha", cmd_alpha, "coherency index of a weight against a reference weight")
    p.add_argument("-p", "--polytope", required=True)
    p.add_argument("-w", "--weight", required=True)
    p.add_argument("--ref", required=True)

    mt = verbs.add_parser("matroid", help="matroid subdivisions of hypersimplices").add_subparsers(
        dest="sub", required=True)
    p = leaf(mt, "check", cmd_matroid_check, "is the subdivision of a weight matroidal")
    kn(p)
    p.add_argument("-w", "--weight", required=True)
    p = leaf(mt, "split", cmd_matroid_split, "the two matroids of a split")
    kn(p)
    p.add_argument("--split", required=True)
    p = leaf(mt, "pair", cmd_matroid_pair, "matroid of two compatible splits")
    kn(p)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--f-vector", action="store_true")

    cx = verbs.add_parser("complex", help="simplicial complexes").add_subparsers(dest="sub", required=True)
    p = leaf(cx, "fvector", cmd_complex_fvector, "f-vector")
    p.add_argument("complex")
    p = leaf(cx, "homology", cmd_complex_homology, "reduced integral homology")
    p.add_argument("complex")

    me = verbs.add_parser("metric", help="finite metrics and Delta(2,n)").add_subparsers(dest="sub", required=True)
    p = leaf(me, "weight", cmd_metric_weight, "weight on Delta(2,n)")
    p.add_argument("metric")
    p = leaf(me, "splitmetric", cmd_metric_splitmetric, "metric of a split A|B")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p = leaf(me, "tree", cmd_metric_tree, "split decomposition and tree of a metric")
    p.add_argument("metric")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.jobs = resolve_jobs(args.jobs)
        result = args.func(args)
    except UsageError as exc:
        print(f"splitkit: usage error: {exc}", file=err)
        return 2
    except (ValueError, KeyError, TypeError, RuntimeError, OSError) as exc:
        print(f"splitkit: error: {exc}", file=err)
        return 1
    if args.pretty:
        text = json.dumps(result, indent=2)
    else:
        text = json.dumps(result, separators=(",", ":"))
    print(text, file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

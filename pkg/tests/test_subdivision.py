from fractions import Fraction
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from splitkit import POS_INF
from splitkit.exact import dot
from splitkit.hypersimplex import hypersimplex
from splitkit.polytope import VPolytope, embed
from splitkit.splits import enumerate_splits, split_weight, weak_split_faces
from splitkit.subdivision import (
    RegularSubdivision,
    add,
    cells_cover,
    coherency_index,
    dual_graph,
    full_dimensional_pairs,
    gkz_vector,
    interior_faces,
    is_affine,
    is_coherent,
    is_coherent_by_pairs,
    is_foldable,
    is_triangulation,
    refines,
    regular_subdivision,
    same_subdivision,
    scale,
    tight_span,
    trivial_subdivision,
    walls,
)

from conftest import CUBE, HEXAGON, W1, W2, W3

SQUARE_PYRAMID = [[0, 0, 0], [2, 0, 0], [2, 2, 0], [0, 2, 0], [1, 1, 1]]
POLYTOPES = {
    "hexagon": VPolytope(HEXAGON),
    "cube": embed(CUBE),
    "octahedron": hypersimplex(2, 4),
    "pyramid": embed(SQUARE_PYRAMID),
}


def weights_for(P, lo=0, hi=4):
    return st.lists(st.fractions(lo, hi, max_denominator=3), min_size=P.n, max_size=P.n).map(tuple)


def polytope_and_weight():
    return st.sampled_from(sorted(POLYTOPES)).flatmap(
        lambda name: st.tuples(st.just(POLYTOPES[name]), weights_for(POLYTOPES[name])))


def affine_weight(P, coeffs):
    return tuple(dot(coeffs, v) for v in P.vertices)


# -- regular subdivisions ---------------------------------------------------


def test_hexagon_w1_cells(hexagon):
    sub = regular_subdivision(hexagon, W1)
    assert sub.cell_sets() == {frozenset({0, 1, 4, 5}), frozenset({1, 2, 3, 4})}


def test_octahedron_indicator_weight(octahedron):
    # vertex e1+e2 is the first 2-subset
    w = [1, 0, 0, 0, 0, 0]
    sub = regular_subdivision(octahedron, w)
    assert len(sub.cells) == 2
    assert sub.cell_sets() == oracles.lower_cells(octahedron.vertices, w)


@given(st.sampled_from(sorted(POLYTOPES)), st.data())
def test_affine_weight_gives_one_cell(name, data):
    P = POLYTOPES[name]
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=P.ambient, max_size=P.ambient))
    sub = regular_subdivision(P, affine_weight(P, coeffs))
    assert sub.cell_sets() == {frozenset(range(P.n))}


@given(polytope_and_weight())
def test_cells_match_brute_force_lower_hull(pw):
    P, w = pw
    assert regular_subdivision(P, w).cell_sets() == oracles.lower_cells(P.vertices, w)


@given(st.lists(st.integers(0, 3), min_size=10, max_size=10))
def test_cells_match_brute_force_d25(w):
    P = hypersimplex(2, 5)
    assert regular_subdivision(P, w).cell_sets() == oracles.lower_cells(P.vertices, w)


@given(polytope_and_weight())
def test_cells_cover_and_tight_span_duality(pw):
    P, w = pw
    sub = regular_subdivision(P, w)
    assert cells_cover(sub)
    ts = tight_span(P, w)
    assert len(ts.vertices) == len(sub.cells)
    for x, cell in zip(ts.vertices, ts.cells):
        vals = [dot(v, x) + wi for v, wi in zip(P.vertices, sub.weight)]
        assert all(val >= 0 for val in vals)
        assert {i for i, val in enumerate(vals) if val == 0} == set(cell)


@given(polytope_and_weight())
def test_tight_span_dimension_bound(pw):
    P, w = pw
    # vertices of P lie on the boundary, so interior faces have dimension >= 1
    assert tight_span(P, w).dim <= P.dim - 1


# -- tight spans ----------------------------------------------------------------


@pytest.mark.parametrize("w,end", [(W1, (1, -1, 0)), (W2, (1, 0, -1)), (W3, (1, -1, -1))])
def test_hexagon_tight_spans_are_segments(hexagon, w, end):
    ts = tight_span(hexagon, w)
    assert set(ts.vertices) == {(0, 0, 0), end}
    assert ts.dim == 1
    assert ts.graph().number_of_edges() == 1


def test_affine_weight_tight_span_is_a_point(hexagon):
    ts = tight_span(hexagon, affine_weight(hexagon, (1, 2, 3)))
    assert len(ts.vertices) == 1 and ts.faces == ()


@given(polytope_and_weight(), st.data())
def test_equivalent_weights_have_equal_posets(pw, data):
    P, w = pw
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=P.ambient, max_size=P.ambient))
    shifted = add(w, affine_weight(P, coeffs))
    assert same_subdivision(P, w, shifted)
    a, b = tight_span(P, w), tight_span(P, shifted)
    assert a.faces == b.faces
    # tight-span vertices move by the negated linear functional
    for x, y in zip(a.vertices, b.vertices):
        assert all(dot(v, y) == dot(v, x) - dot(v, coeffs) for v in P.vertices)


# -- refinement and coherence -------------------------------------------------


def test_refines_examples(hexagon):
    s = regular_subdivision(hexagon, W1)
    assert refines(s, s)
    assert refines(s, trivial_subdivision(hexagon))
    assert refines(regular_subdivision(hexagon, add(W1, W3)), s)
    with pytest.raises(ValueError):
        refines(s, trivial_subdivision(embed(CUBE)))


def test_hexagon_coherence(hexagon):
    assert not is_coherent(hexagon, W1, W2)
    assert is_coherent(hexagon, W1, W3)
    assert is_coherent(hexagon, W2, W3)
    assert is_coherent(hexagon, W1, [0] * 6)
    for a, b in [(W1, W2), (W1, W3), (W2, W3)]:
        assert is_coherent(hexagon, a, b) == is_coherent_by_pairs(hexagon, a, b)


@given(polytope_and_weight(), st.data())
def test_coherence_shortcut_matches_pair_count(pw, data):
    P, w1 = pw
    w2 = data.draw(weights_for(P))
    assert is_coherent(P, w1, w2) == is_coherent_by_pairs(P, w1, w2)


@settings(max_examples=15)
@given(st.sampled_from(["hexagon", "cube"]), st.data())
def test_full_dimensional_pairs_match_float_oracle(name, data):
    P = POLYTOPES[name]
    s1 = regular_subdivision(P, data.draw(weights_for(P)))
    s2 = regular_subdivision(P, data.draw(weights_for(P)))
    oracle = sum(oracles.interiors_meet_float(P.vertices, sorted(a), sorted(b)) for a in s1.cells for b in s2.cells)
    assert full_dimensional_pairs(s1, s2) == oracle


@given(polytope_and_weight())
def test_zero_summand_is_coherent(pw):
    P, w = pw
    assert is_coherent(P, w, (0,) * P.n)
    assert is_coherent(P, w, w)


# -- coherency index ------------------------------------------------------------


def test_index_of_split_weight_against_itself(hexagon):
    for S in enumerate_splits(hexagon):
        ws = split_weight(hexagon, S)
        assert coherency_index(hexagon, ws, ws) == 1
        assert is_coherent(hexagon, add(ws, scale(-1, ws)), ws)
        assert not is_coherent(hexagon, add(ws, scale(-2, ws)), scale(2, ws))


def test_index_trivial_weight_against_split_is_zero(hexagon):
    for S in enumerate_splits(hexagon):
        assert coherency_index(hexagon, [0] * 6, split_weight(hexagon, S)) == 0


def test_index_against_affine_reference_is_infinite(hexagon):
    assert coherency_index(hexagon, W1, [0] * 6) is POS_INF
    assert coherency_index(hexagon, W1, affine_weight(hexagon, (1, 1, 0))) is POS_INF


def _coherent_at(P, w, wref, lam):
    return is_coherent(P, add(w, scale(-lam, wref)), scale(lam, wref))


@pytest.mark.parametrize("w,wref,expect", [(W3, W1, 0), (add(W1, W3), W1, 1), (add(W1, W3), W3, 1)])
def test_hexagon_index_by_bisection(hexagon, w, wref, expect):
    alpha = coherency_index(hexagon, w, wref)
    assert alpha == expect
    # independent search for the threshold on a dyadic grid
    lo, hi = Fraction(0), Fraction(8)
    assert not _coherent_at(hexagon, w, wref, hi)
    for _ in range(20):
        mid = (lo + hi) / 2
        if _coherent_at(hexagon, w, wref, mid):
            lo = mid
        else:
            hi = mid
    assert lo <= alpha <= hi
    assert _coherent_at(hexagon, w, wref, alpha)


@given(polytope_and_weight(), st.data())
def test_index_bracketing(pw, data):
    P, w = pw
    system = enumerate_splits(P)
    S = data.draw(st.sampled_from(system))
    ws = split_weight(P, S)
    alpha = coherency_index(P, w, ws)
    assert alpha >= 0
    for lam in (alpha / 2, alpha):
        assert _coherent_at(P, w, ws, lam)
    above = alpha * 2 if alpha > 0 else Fraction(1, 7)
    assert not _coherent_at(P, w, ws, above)


@given(polytope_and_weight(), st.data())
def test_same_subdivision_matches_index_criterion(pw, data):
    P, w = pw
    v = data.draw(weights_for(P))
    same = same_subdivision(P, w, v)
    if is_affine(P, w) or is_affine(P, v):
        assert same == (is_affine(P, w) and is_affine(P, v))
        return
    assert same == (coherency_index(P, w, v) > 0 and coherency_index(P, v, w) > 0)


def test_same_subdivision_examples(hexagon):
    assert same_subdivision(hexagon, W1, W1)
    assert same_subdivision(hexagon, W1, add(W1, affine_weight(hexagon, (2, -1, 5))))
    assert not same_subdivision(hexagon, W1, W2)


# -- interior faces, walls, triangulations ------------------------------------


def test_interior_faces_examples(hexagon, octahedron):
    assert interior_faces(trivial_subdivision(hexagon), 1) == []
    assert interior_faces(trivial_subdivision(octahedron), 2) == []
    assert interior_faces(regular_subdivision(hexagon, W1), 1) == [frozenset({1, 4})]
    S = enumerate_splits(octahedron)
    sub = regular_subdivision(octahedron, add(split_weight(octahedron, S[0]), split_weight(octahedron, S[1])))
    assert len(sub.cells) == 4
    axis = interior_faces(sub, 2)
    assert len(axis) == 1 and len(axis[0]) == 2
    with pytest.raises(ValueError):
        interior_faces(sub, 0)


def test_walls_and_dual_graph(hexagon):
    sub = regular_subdivision(hexagon, W1)
    assert walls(sub) == [(0, 1, frozenset({1, 4}))]
    assert dual_graph(sub).number_of_edges() == 1


def test_triangulation_predicates(octahedron):
    simplex = embed([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    t = trivial_subdivision(simplex)
    assert is_triangulation(t) and is_foldable(t)
    assert not is_triangulation(trivial_subdivision(octahedron))
    with pytest.raises(ValueError):
        is_foldable(trivial_subdivision(octahedron))


# -- GKZ vectors ----------------------------------------------------------------


def test_gkz_unit_square(square):
    # lifting vertices 1 and 3 cuts along the diagonal 2-4
    sub = regular_subdivision(square, [1, 0, 1, 0])
    assert sub.cell_sets() == {frozenset({0, 1, 3}), frozenset({1, 2, 3})}
    assert gkz_vector(square, sub) == (Fraction(1, 2), 1, Fraction(1, 2), 1)


def test_gkz_simplex_is_constant():
    P = embed([[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 1]])
    assert gkz_vector(P, trivial_subdivision(P)) == (P.volume,) * 4


def test_gkz_requires_triangulation(octahedron):
    with pytest.raises(ValueError):
        gkz_vector(octahedron, trivial_subdivision(octahedron))


def test_gkz_hexagon_matches_shoelace(hexagon):
    pts = [v[1:] for v in hexagon.vertices]
    for tri in oracles.polygon_triangulations(6):
        sub = RegularSubdivision(hexagon, (Fraction(0),) * 6, tuple(sorted(tri, key=sorted)))
        expect = [sum(oracles.shoelace([pts[i] for i in sorted(t)]) for t in tri if v in t) for v in range(6)]
        assert list(gkz_vector(hexagon, sub)) == expect


# -- zonotopal tight spans --------------------------------------------------------


@pytest.mark.parametrize("P", [embed(CUBE), hypersimplex(2, 5), VPolytope(HEXAGON)], ids=["cube", "d25", "hexagon"])
def test_weakly_compatible_two_faces_are_even(P):
    system = enumerate_splits(P)
    for face in weak_split_faces(P, 3):
        w = add(*[split_weight(P, system[i]) for i in face])
        ts = tight_span(P, w)
        sub = regular_subdivision(P, w)
        for f, dual in ts.faces:
            if f in interior_faces(sub, 2):
                assert len(dual) % 2 == 0

import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from splitkit.exact import rank
from splitkit.hypersimplex import hypersimplex, split_to_ab
from splitkit.polytope import VPolytope, dual_description, embed
from splitkit.splits import (
    compatibility_graph,
    count_regions,
    enumerate_splits,
    is_compatible,
    is_split_prime,
    is_weakly_compatible,
    make_split,
    split_complex,
    split_decomposition,
    split_polyhedron,
    split_weight,
    tree_from_compatible,
    vertex_split,
    weak_split_faces,
    weakly_compatible_by_regions,
    weakly_compatible_iterated,
)
from splitkit.subdivision import (
    RegularSubdivision,
    add,
    gkz_vector,
    is_triangulation,
    regular_subdivision,
    same_subdivision,
    scale,
)

from conftest import CUBE, HEXAGON, W1

SIMPLEX = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
PYRAMID = [[0, 0, 0], [2, 0, 0], [2, 2, 0], [0, 2, 0], [1, 1, 1]]


def as_pairs(system):
    return {frozenset([S.plus, S.minus]) for S in system}


# -- enumeration ------------------------------------------------------------


def test_simplex_has_no_splits():
    assert enumerate_splits(embed(SIMPLEX)) == ()


def test_octahedron_three_splits(octahedron):
    assert len(enumerate_splits(octahedron)) == 3


def test_cube_splits(cube):
    system = enumerate_splits(cube)
    assert len(system) == 14
    vsplits = {vertex_split(cube, v) for v in range(8)}
    assert None not in vsplits and len(vsplits) == 8 and vsplits <= set(system)


@pytest.mark.parametrize("pts", [HEXAGON, CUBE, PYRAMID, [list(v) for v in hypersimplex(2, 4).vertices]],
                         ids=["hexagon", "cube", "pyramid", "octahedron"])
def test_enumeration_matches_lifting_oracle(pts):
    P = embed(pts)
    assert as_pairs(enumerate_splits(P)) == oracles.splits(P.vertices)


@settings(max_examples=20)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=5, max_size=7, unique_by=tuple))
def test_enumeration_matches_lifting_oracle_random(pts):
    P = embed(pts)
    assume(P.dim == 3)
    assert as_pairs(enumerate_splits(P)) == oracles.splits(P.vertices)


@pytest.mark.parametrize("P", [VPolytope(HEXAGON), embed(CUBE), hypersimplex(2, 5), embed(PYRAMID)],
                         ids=["hexagon", "cube", "d25", "pyramid"])
def test_split_invariants(P):
    E = P.edges
    for S in enumerate_splits(P):
        assert S.plus | S.minus == frozenset(range(P.n))
        assert S.plus - S.minus and S.minus - S.plus
        assert not any((i in S.plus - S.minus and j in S.minus - S.plus) or
                       (j in S.plus - S.minus and i in S.minus - S.plus) for i, j in E)
        assert rank([P.vertices[i] for i in S.wall]) == P.dim
        assert regular_subdivision(P, split_weight(P, S)).cell_sets() == {S.plus, S.minus}
        assert all(split_weight(P, S)[i] == 0 for i in S.wall)


def test_make_split_rejects_edge_cutting_plane(hexagon):
    # x = 1/2 cuts the edge from (0,0) to (1,0)
    assert make_split(hexagon, (-1, 2, 0)) is None


# -- vertex splits ----------------------------------------------------------------


def test_vertex_split_cube_corner(cube):
    for v in range(8):
        S = vertex_split(cube, v)
        side = S.plus if v in S.plus - S.minus else S.minus
        assert side - S.wall == {v}


def test_vertex_split_octahedron_is_reflection(octahedron):
    S = vertex_split(octahedron, 0)
    assert S in enumerate_splits(octahedron)
    assert len(S.wall) == 4


def test_vertex_split_simplex_none():
    P = embed(SIMPLEX)
    assert all(vertex_split(P, v) is None for v in range(4))


# -- split weights ------------------------------------------------------------


def test_octahedron_split_gives_two_square_pyramids(octahedron):
    for S in enumerate_splits(octahedron):
        cells = regular_subdivision(octahedron, split_weight(octahedron, S)).cells
        assert sorted(len(c) for c in cells) == [5, 5]
        assert all(len(P.facets) == 5 for P in (octahedron.sub(c) for c in cells))


def test_hexagon_split_equivalent_to_w1(hexagon):
    S = next(S for S in enumerate_splits(hexagon) if {S.plus, S.minus} == {frozenset({0, 1, 4, 5}), frozenset({1, 2, 3, 4})})
    assert same_subdivision(hexagon, split_weight(hexagon, S), W1)


# -- compatibility --------------------------------------------------------------


def test_octahedron_splits_pairwise_incompatible(octahedron):
    system = enumerate_splits(octahedron)
    assert not any(is_compatible(octahedron, S, T) for S, T in combinations(system, 2))


def test_hexagon_noncrossing_diagonals(hexagon):
    system = enumerate_splits(hexagon)
    # diagonal walls are vertex pairs; two diagonals are compatible iff they do not cross
    def crosses(a, b):
        (i, j), (k, m) = sorted(a), sorted(b)
        return len({i, j, k, m}) == 4 and (i < k < j) != (i < m < j)
    for S, T in combinations(system, 2):
        assert is_compatible(hexagon, S, T) == (not crosses(S.wall, T.wall))


@pytest.mark.parametrize("P", [VPolytope(HEXAGON), embed(CUBE), hypersimplex(2, 5)], ids=["hexagon", "cube", "d25"])
def test_compatibility_symmetric_and_irreflexive(P):
    system = enumerate_splits(P)
    for S in system:
        assert not is_compatible(P, S, S)
    for S, T in combinations(system, 2):
        assert is_compatible(P, S, T) == is_compatible(P, T, S)


def test_compatibility_graph_parallel_matches_serial(cube):
    g1 = compatibility_graph(cube, jobs=1)
    g2 = compatibility_graph(cube, jobs=2)
    assert sorted(g1.edges) == sorted(g2.edges)


# -- weak compatibility ---------------------------------------------------------


def test_octahedron_weak_compatibility(octahedron):
    system = enumerate_splits(octahedron)
    assert not is_weakly_compatible(octahedron, system)
    for pair in combinations(system, 2):
        assert is_weakly_compatible(octahedron, pair)


def test_hypersimplex_pairs_weakly_compatible():
    for k, n in [(2, 5), (3, 6)]:
        P = hypersimplex(k, n)
        system = enumerate_splits(P)
        pairs = list(combinations(system, 2))
        if len(pairs) > 150:
            pairs = random.Random(5).sample(pairs, 150)
        assert all(is_weakly_compatible(P, pair) for pair in pairs)


def test_empty_system_is_rejected(cube):
    with pytest.raises(ValueError):
        is_weakly_compatible(cube, [])


@pytest.mark.parametrize("P", [embed(CUBE), hypersimplex(2, 5), VPolytope(HEXAGON), hypersimplex(2, 4)],
                         ids=["cube", "d25", "hexagon", "octahedron"])
def test_weak_compatibility_three_ways(P):
    system = enumerate_splits(P)
    rnd = random.Random(11)
    subsets = [list(c) for k in (1, 2, 3) for c in combinations(system, k)]
    if len(subsets) > 60:
        subsets = rnd.sample(subsets, 60)
    for sub in subsets:
        a = is_weakly_compatible(P, sub)
        assert a == weakly_compatible_iterated(P, sub) == weakly_compatible_by_regions(P, sub)


def test_region_count_single_split(hexagon):
    S = enumerate_splits(hexagon)[0]
    assert count_regions(hexagon, [S]) == 2


@pytest.mark.parametrize("P", [embed(CUBE), VPolytope(HEXAGON), hypersimplex(2, 5)], ids=["cube", "hexagon", "d25"])
def test_compatible_implies_weakly_compatible(P):
    system = enumerate_splits(P)
    g = compatibility_graph(P)
    for clique in nx.enumerate_all_cliques(g):
        if len(clique) > 3:
            break
        assert is_weakly_compatible(P, [system[i] for i in clique])


@pytest.mark.parametrize("P", [embed(CUBE), VPolytope(HEXAGON), hypersimplex(2, 5), hypersimplex(2, 4)],
                         ids=["cube", "hexagon", "d25", "octahedron"])
def test_dimension_bounds(P):
    bound = P.n - P.dim - 2
    assert split_complex(P).dim <= bound
    faces = weak_split_faces(P, bound + 2)
    assert max(len(f) for f in faces) - 1 <= bound


@pytest.mark.parametrize("P", [embed(CUBE), VPolytope(HEXAGON), hypersimplex(2, 5)], ids=["cube", "hexagon", "d25"])
def test_full_weak_faces_give_triangulations(P):
    top = P.n - P.dim - 1
    system = enumerate_splits(P)
    for f in weak_split_faces(P, top):
        if len(f) == top:
            sub = regular_subdivision(P, add(*[split_weight(P, system[i]) for i in f]))
            assert is_triangulation(sub)


@pytest.mark.parametrize("P", [embed(CUBE), hypersimplex(2, 5)], ids=["cube", "d25"])
def test_weak_faces_are_linearly_independent_mod_affine(P):
    system = enumerate_splits(P)
    coords = [list(col) for col in zip(*P.vertices)]
    for f in weak_split_faces(P, 3):
        rows = coords + [list(split_weight(P, system[i])) for i in f]
        assert rank(rows) == P.dim + 1 + len(f)


# -- split complex ------------------------------------------------------------------


def test_octahedron_split_complex(octahedron):
    c = split_complex(octahedron)
    assert c.f_vector() == (3,)
    assert sorted(weak_split_faces(octahedron, 2)) == [(0,), (0, 1), (0, 2), (1,), (1, 2), (2,)]


def test_hexagon_split_complex(hexagon):
    assert split_complex(hexagon).f_vector() == (9, 21, 14)


def test_split_complex_is_clique_complex(cube):
    g = compatibility_graph(cube)
    c = split_complex(cube)
    faces = {tuple(sorted(f)) for k in range(c.dim + 1) for f in c.faces(k)}
    assert faces == {tuple(sorted(q)) for q in oracles.cliques(g)}


# -- split decomposition --------------------------------------------------------------


def test_decompose_single_split_weight(hexagon):
    for S in enumerate_splits(hexagon):
        dec = split_decomposition(hexagon, split_weight(hexagon, S))
        assert dec.coefficients() == {S: 1}
        assert not any(dec.remainder)


def test_decompose_compatible_combination(hexagon):
    system = enumerate_splits(hexagon)
    S, T = next((S, T) for S, T in combinations(system, 2) if is_compatible(hexagon, S, T))
    w = add(scale(2, split_weight(hexagon, S)), scale(3, split_weight(hexagon, T)))
    dec = split_decomposition(hexagon, w)
    assert dec.coefficients() == {S: 2, T: 3}
    assert not any(dec.remainder)


def test_decompose_hexagon_w1_plus_w3(hexagon):
    dec = split_decomposition(hexagon, [0, 0, 3, 4, 2, 0])
    assert sorted(dec.coefficients().values()) == [1, 1]
    assert not any(dec.remainder_mod_affine(hexagon))
    assert any(dec.remainder)  # the exact remainder is affine, not zero


def test_decompose_tree_metric_on_d25():
    # caterpillar: leaves 1,2 on a, 3 on b, 4,5 on c; internal edges a-b and b-c
    tree = [(1, "a"), (2, "a"), ("a", "b"), (3, "b"), ("b", "c"), (4, "c"), (5, "c")]
    lengths = [1, 2, 3, 1, 5, 2, 1]
    d = oracles.tree_metric(tree, lengths)
    P = hypersimplex(2, 5)
    w = [-d[X] for X in combinations(range(1, 6), 2)]
    dec = split_decomposition(P, w)
    found = {repr(split_to_ab(2, 5, S)): lam for S, lam in dec.terms}
    # only the interior edges appear, weighted by their lengths
    assert found == {"(12,345;1)": 3, "(123,45;1)": 5}
    assert not any(dec.remainder_mod_affine(P))


@settings(max_examples=25)
@given(st.sampled_from(["hexagon", "cube", "d25"]), st.data())
def test_decomposition_is_exact(name, data):
    P = {"hexagon": VPolytope(HEXAGON), "cube": embed(CUBE), "d25": hypersimplex(2, 5)}[name]
    w = data.draw(st.lists(st.fractions(-3, 3, max_denominator=4), min_size=P.n, max_size=P.n))
    dec = split_decomposition(P, w)
    assert dec.reconstruct(P) == tuple(w)
    assert all(lam > 0 for _, lam in dec.terms)
    assert is_split_prime(P, dec.remainder)


def test_split_prime_examples(octahedron, hexagon):
    S = enumerate_splits(hexagon)[0]
    assert not is_split_prime(hexagon, split_weight(hexagon, S))
    assert not is_split_prime(octahedron, [1, 0, 0, 0, 0, 0])
    assert is_split_prime(hexagon, [1, 1, 1, 1, 1, 1])


# -- split polyhedron -----------------------------------------------------------------


def test_hexagon_split_polyhedron_is_secondary_polytope(hexagon):
    dd = dual_description(split_polyhedron(hexagon))
    assert dd.feasible and dd.bounded
    assert len(dd.vertices) == 14
    assert dd.face_lattice().f_vector == (14, 21, 9)
    gkz = set()
    for tri in oracles.polygon_triangulations(6):
        sub = RegularSubdivision(hexagon, (Fraction(0),) * 6, tuple(sorted(tri, key=sorted)))
        gkz.add(gkz_vector(hexagon, sub))
    assert gkz == set(dd.vertices)


def test_octahedron_split_polyhedron_is_triangle(octahedron):
    dd = dual_description(split_polyhedron(octahedron))
    assert dd.bounded and dd.face_lattice().f_vector == (3, 3)


def test_unsplittable_split_polyhedron_is_a_point():
    P = embed(SIMPLEX)
    h = split_polyhedron(P)
    assert h.inequalities == ()
    x = [P.volume] * 4
    assert h.contains(x)


def test_split_polyhedron_equations_hold_for_gkz(cube):
    h = split_polyhedron(cube)
    S = enumerate_splits(cube)
    faces = [f for f in weak_split_faces(cube, 4) if len(f) == 4]
    for f in faces[:5]:
        sub = regular_subdivision(cube, add(*[split_weight(cube, S[i]) for i in f]))
        assert h.contains(gkz_vector(cube, sub))


# -- trees from compatible systems ------------------------------------------------------


def test_tree_single_split(hexagon):
    S = enumerate_splits(hexagon)[0]
    g = tree_from_compatible(hexagon, [S])
    assert g.number_of_nodes() == 2 and g.number_of_edges() == 1


def test_tree_compatible_pair_is_path(hexagon):
    system = enumerate_splits(hexagon)
    pair = next((S, T) for S, T in combinations(system, 2) if is_compatible(hexagon, S, T))
    g = tree_from_compatible(hexagon, pair)
    assert sorted(d for _, d in g.degree()) == [1, 1, 2]
    assert sorted(data["split"] for _, _, data in g.edges(data=True)) == [0, 1]


def test_tree_rejects_incompatible(octahedron):
    with pytest.raises(ValueError):
        tree_from_compatible(octahedron, enumerate_splits(octahedron)[:2])

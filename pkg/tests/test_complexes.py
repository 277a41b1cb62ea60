"""Neighborhood complexes, the common-neighbor operator, and the retract."""

from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from nbcomplex import (Graph, ParseError, ResourceCapError, SimplicialComplex,
                       closed_set_poset, closure, common_neighbors,
                       complete_graph, cycle_graph, facet_list_text,
                       gnp_sample, lovasz_retract, neighborhood_complex,
                       neighborliness, parse_facet_list, path_graph)

from test_graphs import small_graphs


def subsets(n):
    return st.sets(st.integers(0, n - 1)) if n else st.just(set())


# ---------------------------------------------------------------------------
# SimplicialComplex basics


def test_from_faces_keeps_only_maximal_faces():
    c = SimplicialComplex.from_faces(4, [(0, 1), (1,), (0, 1, 2), (3,)])
    assert c.facets == ((0, 1, 2), (3,))
    assert c.dimension == 2
    assert c.f_vector() == (4, 3, 1)


def test_empty_complex_conventions():
    c = SimplicialComplex.from_faces(3, [])
    assert c.dimension == -1
    assert c.f_vector() == ()
    assert not c.is_face(())
    assert c.component_count() == 0


def test_is_face_and_k_faces():
    c = SimplicialComplex.from_faces(4, [(0, 1, 2), (2, 3)])
    assert c.is_face(())
    assert c.is_face((0, 2))
    assert c.is_face([2, 0])
    assert not c.is_face((0, 3))
    assert c.k_faces(1) == [(0, 1), (0, 2), (1, 2), (2, 3)]
    assert c.k_faces(5) == []
    assert c.vertices() == (0, 1, 2, 3)


def test_component_count_unions_overlapping_facets():
    c = SimplicialComplex.from_faces(6, [(0, 1), (1, 2), (3, 4), (5,)])
    assert c.component_count() == 3


def test_facet_text_round_trip_and_errors():
    c = SimplicialComplex.from_faces(4, [(0, 1, 2), (2, 3)])
    text = facet_list_text(c)
    assert text.splitlines()[0] == "dim 2"
    assert parse_facet_list(text) == c
    with pytest.raises(ParseError) as err:
        parse_facet_list("dim 2\n0 1 2\n0 q\n")
    assert "line 3" in str(err.value)
    with pytest.raises(ParseError):
        parse_facet_list("0 1 2\n")
    with pytest.raises(ParseError):
        parse_facet_list("dim 1\n0 0\n")
    with pytest.raises(ParseError):
        parse_facet_list("dim 3\n0 1 2\n")  # header disagrees with facets


# ---------------------------------------------------------------------------
# the common-neighbor operator


def test_common_neighbors_of_empty_set_is_everything():
    g = cycle_graph(5)
    assert common_neighbors(g, []) == frozenset(range(5))


def test_common_neighbors_examples():
    g = path_graph(4)  # 0-1-2-3
    assert common_neighbors(g, [0]) == frozenset({1})
    assert common_neighbors(g, [0, 2]) == frozenset({1})
    assert common_neighbors(g, [0, 3]) == frozenset()


@settings(max_examples=50)
@given(small_graphs(6).flatmap(
    lambda g: st.tuples(st.just(g), subsets(max(g.n, 1)), subsets(max(g.n, 1)))))
def test_common_neighbors_reverses_inclusion(data):
    g, s, t = data
    s = {v for v in s if v < g.n}
    t = {v for v in t if v < g.n}
    if s <= t:
        assert common_neighbors(g, t) <= common_neighbors(g, s)


@settings(max_examples=50)
@given(small_graphs(6).flatmap(
    lambda g: st.tuples(st.just(g), subsets(max(g.n, 1)))))
def test_common_neighbors_applied_thrice_equals_once(data):
    g, s = data
    s = {v for v in s if v < g.n}
    once = common_neighbors(g, s)
    thrice = common_neighbors(g, common_neighbors(g, once))
    assert thrice == once


@settings(max_examples=50)
@given(small_graphs(6).flatmap(
    lambda g: st.tuples(st.just(g), subsets(max(g.n, 1)))))
def test_closure_is_extensive_and_idempotent(data):
    g, s = data
    s = {v for v in s if v < g.n}
    if s and not common_neighbors(g, s):
        with pytest.raises(ValueError):
            closure(g, s)
        return
    cl = closure(g, s)
    if s:
        assert s <= cl
    assert closure(g, cl) == cl


# ---------------------------------------------------------------------------
# neighborhood complexes of known graphs


@pytest.mark.parametrize("m", range(2, 7))
def test_complete_graph_complex_is_a_simplex_boundary(m):
    c = neighborhood_complex(complete_graph(m))
    assert c.dimension == m - 2
    assert c.f_vector() == tuple(math.comb(m, k + 1) for k in range(m - 1))
    assert c.facets == tuple(
        itertools.combinations(range(m), m - 1))


def test_edgeless_graph_has_empty_complex():
    assert neighborhood_complex(Graph.from_edges(4, [])).dimension == -1


def test_single_edge_complex_is_two_points():
    c = neighborhood_complex(complete_graph(2))
    assert c.facets == ((0,), (1,))
    assert c.component_count() == 2


def test_five_cycle_complex_is_a_five_cycle():
    c = neighborhood_complex(cycle_graph(5))
    assert c.f_vector() == (5, 5)
    assert c.component_count() == 1
    assert c.facets == ((0, 2), (0, 3), (1, 3), (1, 4), (2, 4))


@settings(max_examples=40)
@given(small_graphs(6))
def test_every_facet_is_somebodys_neighborhood(g):
    c = neighborhood_complex(g)
    hoods = {g.neighbors(v) for v in range(g.n) if g.neighbors(v)}
    for f in c.facets:
        assert frozenset(f) in hoods
    # and every neighborhood is a face
    for h in hoods:
        assert c.is_face(sorted(h))


# ---------------------------------------------------------------------------
# neighborliness


def test_neighborliness_values():
    assert neighborliness(complete_graph(5)) == 4
    assert neighborliness(cycle_graph(5)) == 1
    assert neighborliness(path_graph(3)) == 1
    assert neighborliness(Graph.from_edges(2, [])) == 0
    assert neighborliness(Graph.from_edges(1, [])) == 0
    with pytest.raises(ValueError):
        neighborliness(Graph.from_edges(0, []))


def test_neighborliness_cap_reports_best_level_finished():
    with pytest.raises(ResourceCapError) as err:
        neighborliness(complete_graph(12), work_cap=20)
    assert err.value.best == 1


def test_neighborliness_bounds_small_face_counts():
    # every i-set with i <= neighborliness is a face of the complex
    g = gnp_sample(9, 0.7, 555)
    i = neighborliness(g)
    c = neighborhood_complex(g)
    for k in range(i):
        assert len(c.k_faces(k)) == math.comb(g.n, k + 1)


# ---------------------------------------------------------------------------
# closed-set poset


def test_triangle_poset_is_six_sets_in_two_ranks():
    p = closed_set_poset(complete_graph(3))
    assert p.elements == ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2))
    assert p.height == 1
    assert p.covers == ((0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5))


def test_poset_orders_by_strict_inclusion():
    p = closed_set_poset(complete_graph(4))
    assert len(p.elements) == 14
    assert p.height == 2
    sets = p.element_sets()
    for lo, hi in p.covers:
        assert sets[lo] < sets[hi]
        # Hasse: nothing strictly between
        assert not any(sets[lo] < s < sets[hi] for s in sets)


def test_poset_of_edgeless_graph_is_empty():
    p = closed_set_poset(Graph.from_edges(3, []))
    assert p.elements == () and p.covers == () and p.height == -1


def test_poset_elements_are_closed_under_intersection():
    g = gnp_sample(10, 0.5, 808)
    sets = set(closed_set_poset(g).element_sets())
    for a in sets:
        for b in sets:
            if a & b:
                assert a & b in sets
    for v in range(g.n):
        if g.neighbors(v):
            assert g.neighbors(v) in sets


def test_poset_caps():
    with pytest.raises(ResourceCapError):
        closed_set_poset(complete_graph(20))
    with pytest.raises(ResourceCapError):
        closed_set_poset(gnp_sample(14, 0.5, 12), vertex_cap=16, element_cap=10)


def test_poset_json_shape():
    d = closed_set_poset(complete_graph(3)).to_json_dict()
    assert set(d) == {"elements", "covers", "height"}
    assert d["height"] == 1
    assert [0, 1] in d["elements"]


# ---------------------------------------------------------------------------
# the order-complex retract


def test_triangle_retract_is_a_hexagon():
    r = lovasz_retract(closed_set_poset(complete_graph(3)))
    assert r.f_vector() == (6, 6)
    assert r.component_count() == 1


def test_tetrahedron_retract_has_24_top_chains():
    r = lovasz_retract(closed_set_poset(complete_graph(4)))
    assert r.f_vector() == (14, 36, 24)
    assert r.dimension == 2


def test_five_cycle_retract_is_a_ten_cycle():
    r = lovasz_retract(closed_set_poset(cycle_graph(5)))
    assert r.f_vector() == (10, 10)
    assert r.component_count() == 1


def test_retract_of_empty_poset_is_empty():
    r = lovasz_retract(closed_set_poset(Graph.from_edges(2, [])))
    assert r.dimension == -1


def test_retract_chain_cap():
    with pytest.raises(ResourceCapError):
        lovasz_retract(closed_set_poset(complete_graph(8)), chain_cap=10)


@settings(max_examples=25)
@given(small_graphs(6))
def test_retract_facets_are_maximal_chains(g):
    p = closed_set_poset(g)
    sets = p.element_sets()
    r = lovasz_retract(p)
    assert r.ground_set == len(sets)
    for f in r.facets:
        chain = [sets[i] for i in f]
        for a, b in itertools.combinations(chain, 2):
            assert a < b or b < a

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paritygraph import CanonicalForm, Graph, Hypergraph, InputError, canonical_form, is_isomorphic, restrict
from paritygraph.errors import InstanceTooLarge
from paritygraph.hypergraph import isomorphism
from paritygraph.oracle import brute_is_isomorphic

from cases import BOWTIE_A, BOWTIE_B, MIXED, petersen
from strategies import graphs, hypergraphs


def test_json_is_sorted_and_round_trips():
    h = Hypergraph([5, 1], [(3, 1), (2, 1, 3)])
    data = h.to_json()
    assert data == {"vertices": [1, 2, 3, 5], "edges": [[1, 2, 3], [1, 3]]}
    assert Hypergraph.from_json(json.loads(json.dumps(data))) == h


@pytest.mark.parametrize("bad", [
    {"vertices": [1]},
    {"edges": [[1, 1]]},
    {"edges": [[]]},
    {"edges": [[-1, 2]]},
    {"edges": "12"},
])
def test_from_json_rejects_malformed(bad):
    with pytest.raises(InputError):
        Hypergraph.from_json(bad)


def test_graph_rejects_hyperedges():
    with pytest.raises(InputError):
        Graph((), [(1, 2, 3)])


def test_restrict_keeps_endpoints_only():
    g = Graph.from_edges([(1, 2), (2, 3), (3, 4)])
    r = restrict(g, [(2, 3)])
    assert r.vertices == {2, 3} and isinstance(r, Graph)
    with pytest.raises(InputError):
        restrict(g, [(1, 4)])


def test_canonical_form_on_symmetric_graph_is_fast():
    p = petersen()
    f = canonical_form(p)
    shuffled = p.relabel({v: 11 - v for v in p.vertices})
    assert canonical_form(shuffled) == f


def test_degree_profile_distinguishes_bowties():
    assert not is_isomorphic(BOWTIE_A, BOWTIE_B)


def test_vertex_cap():
    with pytest.raises(InstanceTooLarge):
        canonical_form(Graph.from_edges([(i, i + 1) for i in range(70)]))


def test_canonical_form_is_hashable_and_ignores_labeling():
    a = canonical_form(MIXED)
    b = CanonicalForm(a.num_vertices, a.edges, None)
    assert a == b and hash(a) == hash(b)


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=6), st.data())
def test_canonical_form_invariant_under_relabeling(g, data):
    perm = data.draw(st.permutations(sorted(g.vertices)))
    h = g.relabel(dict(zip(sorted(g.vertices), perm)))
    assert canonical_form(g) == canonical_form(h)
    mapping = isomorphism(g, h)
    assert mapping is not None
    assert g.relabel(mapping) == h


@settings(max_examples=80, deadline=None)
@given(graphs(max_vertices=6), graphs(max_vertices=6))
def test_isomorphism_matches_brute_force_on_graphs(g1, g2):
    assert is_isomorphic(g1, g2) == brute_is_isomorphic(g1, g2)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_vertices=5, max_edges=5), hypergraphs(max_vertices=5, max_edges=5))
def test_isomorphism_matches_brute_force_on_hypergraphs(h1, h2):
    assert is_isomorphic(h1, h2) == brute_is_isomorphic(h1, h2)

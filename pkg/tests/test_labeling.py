from __future__ import annotations


import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paritygraph import (
    Hypergraph,
    InputError,
    LoopLabeling,
    SearchOptions,
    canonical_form,
    compile_hypergraph,
    constraint_space_basis,
    cycle_basis,
    default_basis,
    in_span,
    induced_graph,
    is_loop_labeling,
    preimage,
    search_labelings,
)
from paritygraph.compiled import iter_bases
from paritygraph.errors import ResourceGuardError, UnsupportedLayoutError
from paritygraph.gf2 import EdgeIndex, classify_basis, dim_formula, is_simple_cycle
from paritygraph.oracle import brute_preimage, generate_corpus, has_connected_cycle_space, is_cycle_edge_graph
from paritygraph.rect import cycle_edge_restriction

from cases import (
    CHAIN3,
    CHAIN3_HUB,
    CHAIN3_SPREAD,
    PAIR,
    PAIR_L1,
    PAIR_L2,
    STAIRS7,
    STAIRS7_HIGH,
    STAIRS7_LOW,
    max_degree,
)
from strategies import graphs


def test_pair_labelings_induce_graphs_of_different_size():
    assert len(induced_graph(PAIR, PAIR_L1).vertices) == 6
    assert len(induced_graph(PAIR, PAIR_L2).vertices) == 5
    assert is_loop_labeling(PAIR, PAIR_L1)


def test_second_pair_labeling_misses_the_cycle_space():
    # the image of the larger edge has odd degree at integers 1 and 3
    assert not is_loop_labeling(PAIR, PAIR_L2)


def test_triangle_labeling():
    h = Hypergraph(range(1, 4), [(1, 2, 3)])
    g = induced_graph(h, {1: (1, 2), 2: (2, 3), 3: (1, 3)})
    assert g.edges == {frozenset(p) for p in [(1, 2), (2, 3), (1, 3)]}


def test_injectivity_required():
    bad = dict(PAIR_L1)
    bad[7] = bad[6]
    assert not is_loop_labeling(PAIR, bad)
    assert not is_loop_labeling(PAIR, {1: (1, 2)})
    assert not is_loop_labeling(PAIR, {**PAIR_L1, 1: (1, 1)})


def test_missing_label_is_an_error():
    with pytest.raises(InputError):
        induced_graph(PAIR, {1: (1, 2)})


def test_labeling_json_round_trip():
    lab = LoopLabeling(PAIR_L1)
    assert LoopLabeling.from_json(lab.to_json()) == lab
    with pytest.raises(InputError):
        LoopLabeling.from_json({"labels": [1, 2]})


def test_chain_labelings_spread_and_hub():
    spread = induced_graph(CHAIN3, CHAIN3_SPREAD)
    hub = induced_graph(CHAIN3, CHAIN3_HUB)
    assert is_loop_labeling(CHAIN3, CHAIN3_SPREAD) and is_loop_labeling(CHAIN3, CHAIN3_HUB)
    assert dim_formula(spread) == dim_formula(hub) == 3
    assert max_degree(spread) == 3 and max_degree(hub) == 4
    assert len(hub.adjacency()[3]) == 4


def test_chain_preimage_has_both_degree_profiles():
    res = preimage(CHAIN3)
    assert res.exhaustive and len(res) >= 2
    assert canonical_form(induced_graph(CHAIN3, CHAIN3_SPREAD)) in res.forms
    assert canonical_form(induced_graph(CHAIN3, CHAIN3_HUB)) in res.forms


def test_stairs_labelings():
    low = induced_graph(STAIRS7, STAIRS7_LOW)
    high = induced_graph(STAIRS7, STAIRS7_HIGH)
    for lab in (STAIRS7_LOW, STAIRS7_HIGH):
        assert is_loop_labeling(STAIRS7, lab)
    assert dim_formula(low) == dim_formula(high) == 7
    assert max_degree(low) == 5 and len(high.adjacency()[3]) == 6
    found = {canonical_form(induced_graph(STAIRS7, lab)) for lab in search_labelings(STAIRS7)}
    assert {canonical_form(low), canonical_form(high)} <= found


def test_single_square_gives_four_cycle():
    sq = Hypergraph(range(1, 5), [(1, 2, 3, 4)])
    labs = search_labelings(sq)
    assert len(labs) == 3  # cyclic orders of four vertices
    for lab in labs:
        g = induced_graph(sq, lab)
        assert len(g.vertices) == 4 and is_simple_cycle(g.edges)
    assert len(preimage(sq)) == 1


def test_small_edges_rejected():
    with pytest.raises(InputError):
        search_labelings(Hypergraph(range(1, 4), [(1, 2)]))
    with pytest.raises(InputError):
        search_labelings(Hypergraph(range(1, 6), [(1, 2, 3)]))


def test_unsupported_when_no_private_vertex_order():
    h = Hypergraph(range(1, 7), [(1, 2, 3, 4), (3, 4, 5, 6), (1, 2, 5, 6)])
    with pytest.raises(UnsupportedLayoutError):
        search_labelings(h)


def test_label_guard():
    with pytest.raises(ResourceGuardError):
        search_labelings(CHAIN3, SearchOptions(max_labels=5))


def test_result_cap_marks_truncation():
    res = preimage(CHAIN3, SearchOptions(max_results=1))
    assert not res.exhaustive and len(res) == 1


def check_search_outputs(p: Hypergraph) -> list[LoopLabeling]:
    labs = search_labelings(p)
    for lab in labs:
        assert is_loop_labeling(p, lab)
        g = induced_graph(p, lab)
        assert dim_formula(g) == len(p.edges)
        index = EdgeIndex.of(g)
        images = [index.vector(lab.image(e)) for e in p.edges]
        basis = cycle_basis(g)
        for img in images:
            assert is_simple_cycle(img.edges())
            assert in_span(basis, img) is not None
        from paritygraph.gf2 import rank
        assert rank([v.bits for v in images]) == len(p.edges)
    return labs


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=6, min_edges=3, max_edges=9))
def test_source_graph_is_recovered(g):
    core = cycle_edge_restriction(g)
    if not core.edges:
        return
    basis = default_basis(g)
    p = compile_hypergraph(g, basis)
    labs = check_search_outputs(p.hypergraph)
    found = {canonical_form(induced_graph(p, lab)) for lab in labs}
    assert canonical_form(core) in found


@settings(max_examples=25, deadline=None)
@given(graphs(max_vertices=6, min_edges=3, max_edges=8), st.data())
def test_weakly_fundamental_bases_recover_source(g, data):
    space = constraint_space_basis(g)
    if space.dim == 0:
        return
    bases = [b for b in iter_bases(space) if classify_basis(b).is_weakly_fundamental]
    b = data.draw(st.sampled_from(bases))
    p = compile_hypergraph(g, b)
    try:
        labs = check_search_outputs(p.hypergraph)
    except UnsupportedLayoutError:
        return
    found = {canonical_form(induced_graph(p, lab)) for lab in labs}
    assert canonical_form(cycle_edge_restriction(g)) in found


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_preimage_invariant_under_relabeling(data):
    h = data.draw(st.sampled_from([CHAIN3, PAIR, Hypergraph(range(1, 6), [(1, 2, 3, 4), (1, 4, 5)])]))
    perm = data.draw(st.permutations(sorted(h.vertices)))
    moved = h.relabel(dict(zip(sorted(h.vertices), perm)))
    assert preimage(h).forms == preimage(moved).forms


@pytest.mark.slow
def test_preimage_matches_corpus_scan_for_small_graphs():
    corpus = generate_corpus(6, 6)
    checked = 0
    for g in corpus:
        if not is_cycle_edge_graph(g) or not has_connected_cycle_space(g):
            continue
        p = compile_hypergraph(g, cycle_basis(g))
        fast = preimage(p).forms
        slow = brute_preimage(p, len(p.vertices), generate_corpus(len(p.vertices), len(p.vertices)))
        assert fast == slow, g
        checked += 1
    assert checked > 5

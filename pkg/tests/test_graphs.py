"""Graph construction, components, isomorphism and the gcd-decomposition."""

import random

import pytest

from circdepth.graphs import (
    CirculantSpec,
    CompleteSpec,
    CubicCirculantSpec,
    CycleSpec,
    GraphSpecError,
    IsomorphismSizeError,
    LadderSpec,
    PathSpec,
    StarSpec,
    UnionSpec,
    build_graph,
    connected_components,
    davis_domke_decompose,
    find_isomorphism,
    graph_from_edges,
    induced_subgraph,
    is_isomorphic,
    moebius_ladder,
    parse_graph_spec,
    prism,
    spec_display_name,
    spec_to_string,
)

from conftest import random_graph


def test_circulant_7_13():
    g = build_graph(CirculantSpec(7, (1, 3)))
    assert g.num_vertices == 7
    assert g.edge_count == 14
    assert g.is_regular(4)


def test_path_2():
    g = build_graph(PathSpec(2))
    assert g.num_vertices == 2
    assert g.edge_count == 1


def test_ladder_b2_exact_edges():
    g = build_graph(LadderSpec("B", 2))
    want = {
        frozenset(e)
        for e in [("x1", "y1"), ("x1", "x2"), ("y1", "y2"), ("x2", "y2"), ("y2", "y3")]
    }
    assert g.edge_labels() == want


def test_cubic_circulant_8_24():
    g = build_graph(CubicCirculantSpec(4, 2))
    assert g.num_vertices == 8
    assert g.edge_count == 12
    assert g.is_regular(3)


def test_cubic_circulant_rejects_bad_parameters():
    with pytest.raises(GraphSpecError):
        CubicCirculantSpec(4, 4)
    with pytest.raises(GraphSpecError):
        CubicCirculantSpec(1, 1)
    with pytest.raises(GraphSpecError):
        CirculantSpec(7, (1, 4))  # 4 > floor(7/2)


@pytest.mark.parametrize("q,shifts", [(7, (1, 3)), (9, (2, 4)), (8, (1, 4)), (6, (3,)), (10, (2, 5))])
def test_circulant_regularity(q, shifts):
    g = build_graph(CirculantSpec(q, shifts))
    degree = 2 * len(shifts) - 1 if q == 2 * max(shifts) else 2 * len(shifts)
    assert g.is_regular(degree)


def test_cubic_circulants_are_3_regular():
    for n in range(2, 8):
        for a in range(1, n):
            assert build_graph(CubicCirculantSpec(n, a)).is_regular(3)


@pytest.mark.parametrize("n", range(2, 7))
def test_ladder_vertex_edge_counts(n):
    a = build_graph(LadderSpec("A", n))
    assert (a.num_vertices, a.edge_count) == (2 * n, 3 * n - 2)
    b = build_graph(LadderSpec("B", n))
    assert (b.num_vertices, b.edge_count) == (2 * n + 1, 3 * n - 1)
    c = build_graph(LadderSpec("C", n))
    assert (c.num_vertices, c.edge_count) == (2 * n + 2, 3 * n)
    d = build_graph(LadderSpec("D", n))
    assert (d.num_vertices, d.edge_count) == (2 * n + 2, 3 * n)


def test_ladder_degenerate_members():
    assert is_isomorphic(build_graph(LadderSpec("A", 1)), build_graph(PathSpec(2)))
    assert is_isomorphic(build_graph(LadderSpec("B", 1)), build_graph(PathSpec(3)))
    assert is_isomorphic(build_graph(LadderSpec("C", 1)), build_graph(StarSpec(4)))
    assert is_isomorphic(build_graph(LadderSpec("D", 1)), build_graph(PathSpec(4)))
    b0 = build_graph(LadderSpec("B", 0))
    assert b0.num_vertices == 1 and b0.edge_count == 0


def test_components_cubic_4_2():
    comps = connected_components(build_graph(CubicCirculantSpec(4, 2)))
    assert [c.num_vertices for _, c in comps] == [4, 4]


def test_components_path_and_union():
    assert len(connected_components(build_graph(PathSpec(5)))) == 1
    g = build_graph(UnionSpec((PathSpec(2), PathSpec(3))))
    comps = connected_components(g)
    assert sorted(c.num_vertices for _, c in comps) == [2, 3]
    # original (prefixed) labels retained on the pieces
    all_labels = {lab for _, c in comps for lab in c.labels}
    assert all_labels == set(g.labels)


def test_iso_examples():
    assert is_isomorphic(
        build_graph(CirculantSpec(4, (1, 2))), build_graph(CompleteSpec(4))
    )
    assert is_isomorphic(build_graph(PathSpec(3)), build_graph(StarSpec(3)))
    assert not is_isomorphic(
        build_graph(CycleSpec(6)),
        build_graph(UnionSpec((CycleSpec(3), CycleSpec(3)))),
    )


def test_iso_reflexive_symmetric_on_random_corpus():
    rng = random.Random(7)
    graphs = [random_graph(rng, rng.randint(1, 12)) for _ in range(25)]
    for g in graphs:
        assert is_isomorphic(g, g)
    for _ in range(40):
        g, h = rng.choice(graphs), rng.choice(graphs)
        assert is_isomorphic(g, h) == is_isomorphic(h, g)
        # degree-sequence refutation always agrees
        if g.degree_sequence() != h.degree_sequence():
            assert not is_isomorphic(g, h)


def test_iso_witness_is_an_isomorphism():
    rng = random.Random(11)
    for _ in range(15):
        g = random_graph(rng, 8)
        perm = list(range(8))
        rng.shuffle(perm)
        h = graph_from_edges(
            [f"w{i}" for i in range(8)], [(perm[u], perm[v]) for u, v in g.edges()]
        )
        iso = find_isomorphism(g, h)
        assert iso is not None
        for u, v in g.edges():
            assert h.has_edge(iso[u], iso[v])


def test_iso_size_limit():
    g = build_graph(PathSpec(25))
    with pytest.raises(IsomorphismSizeError, match="too large"):
        is_isomorphic(g, g)


def test_induced_subgraph():
    c4 = build_graph(CycleSpec(4))
    assert induced_subgraph(c4, 0b0011).edge_count == 1
    assert induced_subgraph(c4, 0b0101).edge_count == 0
    k4 = build_graph(CompleteSpec(4))
    assert is_isomorphic(induced_subgraph(k4, 0b1101), build_graph(CompleteSpec(3)))
    sub = induced_subgraph(c4, 0b1010)
    assert sub.labels == ("x2", "x4")


def test_davis_domke_examples():
    rep = davis_domke_decompose(4, 2)
    assert (rep.t, rep.parity, rep.copy_count) == (2, "even", 2)
    assert rep.component_spec == CirculantSpec(4, (1, 2))

    rep = davis_domke_decompose(5, 2)
    assert (rep.t, rep.parity, rep.copy_count) == (2, "odd", 1)
    assert rep.component_spec == CirculantSpec(10, (2, 5))

    rep = davis_domke_decompose(3, 1)
    assert (rep.t, rep.parity, rep.copy_count) == (1, "even", 1)
    assert rep.component_spec == CirculantSpec(6, (1, 3))


def test_davis_domke_report_invariants():
    for n, a in [(4, 2), (6, 3), (6, 4), (8, 2)]:
        rep = davis_domke_decompose(n, a)
        comp = build_graph(rep.component_spec)
        assert rep.copy_count * comp.num_vertices == 2 * n
        assert len(rep.witness_isos) == rep.copy_count
        for witness in rep.witness_isos:
            assert sorted(witness) == sorted(comp.labels)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_moebius_form_matches_circulant(n):
    assert is_isomorphic(moebius_ladder(n), build_graph(CubicCirculantSpec(n, 1)))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_prism_form_matches_circulant(n):
    assert is_isomorphic(prism(n), build_graph(CubicCirculantSpec(n, 2)))


def test_spec_grammar_round_trip():
    for text in [
        "path:4",
        "cycle:5",
        "star:9",
        "complete:6",
        "circulant:7:1,3",
        "cubic:5:2",
        "ladderA:3",
        "ladderB:0",
        "ladderC:2",
        "ladderD:4",
        "union:(path:2;path:3)",
        "union:(cubic:3:1;union:(path:2;star:4))",
    ]:
        assert spec_to_string(parse_graph_spec(text)) == text


def test_spec_grammar_rejects_garbage():
    for text in ["moon:3", "path", "cubic:5", "circulant:7:", "union:path:2", "path:x"]:
        with pytest.raises(GraphSpecError):
            parse_graph_spec(text)


def test_display_names():
    assert spec_display_name(parse_graph_spec("cubic:5:2")) == "C_10(2,5)"
    assert spec_display_name(parse_graph_spec("ladderA:4")) == "A_4"
    assert spec_display_name(parse_graph_spec("circulant:7:1,3")) == "C_7(1,3)"

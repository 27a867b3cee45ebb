import pytest

from oChroma import config
from oChroma.errors import GenusError, ModeError, NotOColourableError, PreconditionError, PatternError
from oChroma.colour_engine import (
    o_colour, detect_case, merge_two_edge_cut, merge_cut_vertex, merge_flype, split_flype,
    chain_search, case2_recolour, CASE1,
    EngineTrace, TraceStep, BASE, TWO_EDGE_CUT, CUT_VERTEX, LOOP_ANCHOR, FALLBACK, CASE2, CASE3,
    CASE1_FLYPE, CASE2_I, CASE2_II, CASE2_III, CASE3_CHAIN,
)
from oChroma.catalog_io import builtin
from oChroma.families import small_family
from oChroma.ocycle import alternating_colouring, chi_o, is_o_colourable, validate_o_colouring
from oChroma.operations import COLOURED, SKIPPED, sweep_engine
from oChroma.orientation import OrientationAssignment, enumerate_assignments, is_vogwoc
from oChroma.plane_graph import faces, find_separations
from oChroma.transforms import smooth, split_two_edge_cut, split_cut_vertex


def assert_valid(graph, sigma, colouring):
    assert validate_o_colouring(graph, sigma, colouring.edge_colours)
    assert colouring.palette == tuple(range(colouring.size))


def test_fig7a_trace_matches_golden(fig7a, golden_dir):
    colouring, trace = o_colour(fig7a.graph, fig7a.orientations['default'])
    assert trace.to_text() == (golden_dir / 'engine_fig7a.trace').read_text()
    assert colouring.size == trace.palette_size == 2


def test_two_vertex_base(fig7b):
    for sigma in enumerate_assignments(fig7b.graph):
        colouring, trace = o_colour(fig7b.graph, sigma)
        assert_valid(fig7b.graph, sigma, colouring)
        assert trace.tags() == [BASE]


def test_loop_anchor(fig7c):
    graph, sigma = fig7c.graph, fig7c.orientations['default']
    colouring, trace = o_colour(graph, sigma)
    assert_valid(graph, sigma, colouring)
    assert trace.tags() == [LOOP_ANCHOR, BASE]
    colours = colouring.edge_colours
    assert colours[0] == colours[3]
    assert colours[1] == colours[2] != colours[0]


def test_two_edge_cut(edge_sum):
    colouring, trace = o_colour(edge_sum.graph, edge_sum.sigma, allow_fallback=False)
    assert_valid(edge_sum.graph, edge_sum.sigma, colouring)
    assert trace.tags() == [TWO_EDGE_CUT, BASE, BASE]
    assert [step.depth for step in trace.steps] == [0, 1, 1]


def test_cut_vertex(vertex_sum):
    colouring, trace = o_colour(vertex_sum.graph, vertex_sum.sigma, allow_fallback=False)
    assert_valid(vertex_sum.graph, vertex_sum.sigma, colouring)
    assert trace.tags()[0] == CUT_VERTEX
    assert trace.fallback_count == 0


def test_merge_two_edge_cut(edge_sum):
    split = split_two_edge_cut(edge_sum.graph, edge_sum.joined, edge_sum.sigma)
    merged = merge_two_edge_cut(edge_sum.graph, edge_sum.sigma, split,
                                alternating_colouring(split.g1), alternating_colouring(split.g2))
    assert validate_o_colouring(edge_sum.graph, edge_sum.sigma, merged.edge_colours)
    first, second = edge_sum.joined
    assert merged.edge_colours[first] == merged.edge_colours[second]


def test_merge_cut_vertex(vertex_sum):
    split = split_cut_vertex(vertex_sum.graph, vertex_sum.sigma, vertex_sum.joined)
    merged = merge_cut_vertex(vertex_sum.graph, vertex_sum.sigma, split,
                              alternating_colouring(split.g1), alternating_colouring(split.g2))
    assert validate_o_colouring(vertex_sum.graph, vertex_sum.sigma, merged.edge_colours)
    assert merged.size == 2


def test_catalog_orientations(request):
    for name in ('whitehead', 'star6', 'star8'):
        entry = request.getfixturevalue(name)
        for sigma in entry.orientations.values():
            colouring, trace = o_colour(entry.graph, sigma)
            assert_valid(entry.graph, sigma, colouring)
            assert trace.palette_size == colouring.size


def test_every_star6_orientation(star6):
    for sigma in enumerate_assignments(star6.graph):
        assert is_vogwoc(star6.graph, sigma)
        colouring, trace = o_colour(star6.graph, sigma)
        assert_valid(star6.graph, sigma, colouring)
        assert is_o_colourable(star6.graph, sigma)
        assert trace.steps


@pytest.mark.slow
def test_every_star8_orientation(star8):
    for sigma in enumerate_assignments(star8.graph):
        colouring, trace = o_colour(star8.graph, sigma)
        assert_valid(star8.graph, sigma, colouring)
        assert trace.palette_size == colouring.size


def test_polyhedra_have_no_frame(star6):
    assert detect_case(star6.graph, star6.orientations['orbit1']).kind == CASE3


def test_merge_flype(whitehead):
    graph = whitehead.graph
    merged = 0
    for sigma in enumerate_assignments(graph):
        match = detect_case(graph, sigma)
        if match.kind != CASE1:
            continue
        try:
            split = split_flype(graph, sigma, match)
            _, col1 = chi_o(split.g1, split.sigma1)
            _, col2 = chi_o(split.g2, split.sigma2)
            colouring = merge_flype(graph, sigma, split, col1, col2)
        except (GenusError, NotOColourableError, PatternError):
            continue
        assert validate_o_colouring(graph, sigma, colouring.edge_colours)
        top, bottom = split.link1
        assert col1.edge_colours[top] != col1.edge_colours[bottom]
        with pytest.raises(PatternError):
            merge_flype(graph, sigma, split, [0] * split.g1.edge_count, col2)
        merged += 1
    assert merged


def test_chain_search_lifts_a_smoothed_colouring(star6):
    graph, sigma = star6.graph, star6.orientations['orbit7']
    lifted = []
    for vertex in range(graph.vertex_count):
        small, small_sigma = smooth(graph, sigma, vertex)
        if not is_o_colourable(small, small_sigma):
            continue
        _, sub = chi_o(small, small_sigma)
        try:
            lifted.append(chain_search(graph, sigma, vertex, sub))
        except PatternError:
            continue
    assert lifted
    for colouring in lifted:
        assert validate_o_colouring(graph, sigma, colouring.edge_colours)


def test_case2_recolour_needs_a_straddling_frame(star6):
    match = detect_case(star6.graph, star6.orientations['orbit1'])
    assert match.kind != CASE2
    with pytest.raises(PatternError):
        case2_recolour(star6.graph, star6.orientations['orbit1'], match, ())


def test_preconditions(fig7b, fig7c, two_bouquets):
    with pytest.raises(ModeError):
        abstract = fig7b.graph.abstract()
        o_colour(abstract, OrientationAssignment(abstract, (0, 0)))
    with pytest.raises(PreconditionError):
        o_colour(fig7c.graph, OrientationAssignment(fig7c.graph, (1, 0)))
    graph, sigma = two_bouquets
    with pytest.raises(PreconditionError):
        o_colour(graph, sigma)


def test_fallback_setting(monkeypatch):
    monkeypatch.setenv('OCHROMA_ENGINE_FALLBACK', '0')
    assert not config.fallback_enabled()
    monkeypatch.setenv('OCHROMA_ENGINE_FALLBACK', '1')
    assert config.fallback_enabled()


def test_trace_text():
    trace = EngineTrace([
        TraceStep(0, TWO_EDGE_CUT, (3, 4), 3),
        TraceStep(1, FALLBACK, None, 2, detail='PatternError'),
        TraceStep(1, LOOP_ANCHOR, 2, 3, new_colour=True),
    ])
    assert trace.to_text() == (
        "two_edge_cut pivot=3,4 palette=3\n"
        "  fallback_exhaustive pivot=- palette=2 PatternError\n"
        "  loop_anchor pivot=2 palette=3 +colour\n"
    )
    assert trace.fallback_count == 1
    assert len(trace.new_colour_events) == 1


@pytest.mark.slow
def test_engine_agrees_with_exhaustive_search_on_small_family():
    fallbacks = 0
    for graph in small_family():
        for result in sweep_engine(graph, jobs=1):
            sigma = OrientationAssignment(graph, result.bits)
            if result.status == SKIPPED:
                assert not is_vogwoc(graph, sigma)
                continue
            assert (result.status == COLOURED) == is_o_colourable(graph, sigma), result.message
            if result.status == COLOURED:
                assert_valid(graph, sigma, result.colouring)
                fallbacks += result.trace.fallback_count
    # reported, not bounded
    print(f"fallback steps over the small family: {fallbacks}")


def test_engine_on_three_vertex_medial_graphs():
    for graph in small_family(3):
        for sigma in enumerate_assignments(graph):
            if not is_vogwoc(graph, sigma):
                continue
            colouring, _ = o_colour(graph, sigma)
            assert_valid(graph, sigma, colouring)


def test_reinsertion_example_has_no_separations():
    entry = builtin('reinsertion')
    graph, sigma = entry.graph, entry.orientations['default']
    assert (graph.vertex_count, graph.edge_count, len(faces(graph))) == (17, 34, 19)
    assert not find_separations(graph)
    assert is_vogwoc(graph, sigma)
    assert sigma.bits[4] == 1 and sum(sigma.bits) == 1


@pytest.mark.slow
def test_reinsertion_example_records_new_colours():
    entry = builtin('reinsertion')
    graph, sigma = entry.graph, entry.orientations['default']
    colouring, trace = o_colour(graph, sigma, allow_fallback=True)
    assert_valid(graph, sigma, colouring)
    assert trace.palette_size == colouring.size >= 2
    assert trace.tags()[0] in (CASE1_FLYPE, CASE2_I, CASE2_II, CASE2_III, CASE3_CHAIN, FALLBACK)
    for step in trace.new_colour_events:
        assert step.tag in (LOOP_ANCHOR, CASE2_II, CASE2_III, CASE3_CHAIN)
    reinsertions = [step for step in trace.steps if step.detail.startswith(('removed=', 'chain'))]
    assert all(isinstance(step.new_colour, bool) for step in reinsertions)
    assert trace.to_text().count('+colour') == len(trace.new_colour_events)
    print(f"reinsertions: {len(reinsertions)}, new colours: {len(trace.new_colour_events)}")

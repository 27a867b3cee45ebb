import itertools

import networkx as nx
import pytest

from oChroma.errors import NotOColourableError, ValidationError
from oChroma.ocycle import (
    enumerate_o_cycles, enumerate_decompositions, cycle_usage, chi_o, is_o_colourable,
    validate_o_colouring, explain_o_colouring, ocolouring_from_edge_colours,
    alternating_colouring, exact_colouring, intersection_graph, min_colours, step_options,
)
from oChroma.orientation import OrientationAssignment, enumerate_assignments

STAR6_TABLES = {
    'orbit1': (11, 3),
    'orbit2': (11, 3),
    'orbit3': (9, 4),
    'orbit4': (11, 5),
    'orbit5': (7, 2),
    'orbit6': (9, 4),
    'orbit7': (18, 11),
}


def brute_force_decompositions(graph, cycles):
    found = []
    everything = frozenset(range(graph.edge_count))
    for size in range(1, len(cycles) + 1):
        for chosen in itertools.combinations(cycles, size):
            edges = [e for cycle in chosen for e in cycle.edges]
            if len(edges) == graph.edge_count and frozenset(edges) == everything:
                found.append(frozenset(chosen))
    return found


def test_double_loop_bouquet(fig7a):
    graph, sigma = fig7a.graph, fig7a.orientations['default']
    cycles = enumerate_o_cycles(graph, sigma)
    assert [c.edges for c in cycles] == [frozenset({0}), frozenset({1})]
    assert [c.label() for c in cycles] == ['(1,1)', '(1,1)']
    assert len(enumerate_decompositions(graph, sigma)) == 1
    assert chi_o(graph, sigma)[0] == 2


def test_step_options_leave_by_the_other_cell(fig7b):
    graph, sigma = fig7b.graph, fig7b.orientations['default']
    arrival = 0 ^ 1
    options = step_options(graph, sigma, 0)
    assert arrival not in options
    assert not any(sigma.same_cell(arrival, d) for d in options)


@pytest.mark.parametrize('orbit', sorted(STAR6_TABLES))
def test_star6_orbit_tables(star6, orbit):
    sigma = star6.orientations[orbit]
    cycles = enumerate_o_cycles(star6.graph, sigma)
    decompositions = enumerate_decompositions(star6.graph, sigma)
    assert (len(cycles), len(decompositions)) == STAR6_TABLES[orbit]


def test_star6_hamiltonian_pair_needs_two_colours(star6):
    sigma = star6.orientations['orbit1']
    decompositions = enumerate_decompositions(star6.graph, sigma)
    assert [min_colours(d)[0] for d in decompositions] == [3, 2, 2]
    assert [len(d.cycles) for d in decompositions] == [3, 2, 2]
    k, witness = chi_o(star6.graph, sigma)
    assert k == 2
    assert sorted(c.length for c in witness.cycles) == [6, 6]


@pytest.mark.parametrize('orbit', ['orbit1', 'orbit3', 'orbit5', 'orbit6'])
def test_decompositions_match_brute_force(star6, orbit):
    sigma = star6.orientations[orbit]
    cycles = enumerate_o_cycles(star6.graph, sigma)
    expected = brute_force_decompositions(star6.graph, cycles)
    found = [frozenset(d.cycles) for d in enumerate_decompositions(star6.graph, sigma)]
    assert sorted(map(sorted, found)) == sorted(map(sorted, expected))


def test_star8_table(star8):
    sigma = star8.orientations['ex42']
    cycles = enumerate_o_cycles(star8.graph, sigma)
    assert sorted(c.length for c in cycles) == [3, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 7]
    decompositions = enumerate_decompositions(star8.graph, sigma)
    assert len(decompositions) == 4
    usage = cycle_usage(cycles, decompositions)
    assert all(usage[c] == [] for c in cycles if c.length == 7)


def test_whitehead_example(whitehead):
    graph, sigma = whitehead.graph, whitehead.orientations['ex41']
    cycles = enumerate_o_cycles(graph, sigma)
    assert len(cycles) == 5
    assert max(c.length for c in cycles) == 4
    assert len(enumerate_decompositions(graph, sigma)) == 1
    k, witness = chi_o(graph, sigma)
    assert k == 3
    assert validate_o_colouring(graph, sigma, witness.edge_colours)


def test_cycles_are_vertex_simple_o_walks(star8):
    sigma = star8.orientations['ex42']
    for cycle in enumerate_o_cycles(star8.graph, sigma):
        assert len(set(cycle.vertices)) == cycle.length
        darts = cycle.darts
        for before, after in zip(darts, darts[1:] + darts[:1]):
            assert not sigma.same_cell(before ^ 1, after)


def test_decompositions_are_sorted(star6):
    decompositions = enumerate_decompositions(star6.graph, star6.orientations['orbit7'])
    keys = [d.sort_key() for d in decompositions]
    assert keys == sorted(keys)


def test_chi_witness_is_valid_for_every_star6_orientation(star6):
    for sigma in enumerate_assignments(star6.graph):
        k, witness = chi_o(star6.graph, sigma)
        assert witness.size == k <= 3
        assert validate_o_colouring(star6.graph, sigma, witness.edge_colours)


def test_not_o_colourable(fig7c):
    sigma = OrientationAssignment(fig7c.graph, (1, 0))
    assert not is_o_colourable(fig7c.graph, sigma)
    with pytest.raises(NotOColourableError):
        chi_o(fig7c.graph, sigma)


def test_validation_messages(fig7b):
    graph, sigma = fig7b.graph, fig7b.orientations['default']
    assert explain_o_colouring(graph, sigma, (0, 0, 0, 0)) == "vertex 0 sees 1 colours, expected exactly 2"
    assert "edges" in explain_o_colouring(graph, sigma, (0, 1))
    assert not validate_o_colouring(graph, sigma, {0: 0, 1: 1})
    with pytest.raises(ValidationError):
        ocolouring_from_edge_colours(graph, sigma, (0, 0, 1, 1))


def test_alternating_colouring_suits_every_orientation(fig7b):
    colours = alternating_colouring(fig7b.graph)
    for sigma in enumerate_assignments(fig7b.graph):
        assert validate_o_colouring(fig7b.graph, sigma, colours)
    colouring = ocolouring_from_edge_colours(fig7b.graph, fig7b.orientations['default'], colours)
    assert colouring.size == 2
    assert len(colouring.cycles) == 2


def test_normalized_colouring(whitehead):
    graph, sigma = whitehead.graph, whitehead.orientations['ex41']
    _, witness = chi_o(graph, sigma)
    shifted = ocolouring_from_edge_colours(graph, sigma, [c + 5 for c in witness.edge_colours])
    assert shifted.palette == (5, 6, 7)
    assert shifted.normalized().palette == (0, 1, 2)


def test_exact_colouring():
    triangle = nx.complete_graph(3)
    colours = exact_colouring(triangle)
    assert len(set(colours.values())) == 3
    assert exact_colouring(triangle, limit=2) is None
    path = nx.path_graph(3)
    assert exact_colouring(path, fixed={1: 0}, forbidden={0: {1}}) == {0: 2, 1: 0, 2: 1}


def test_min_colours_uses_intersection_graph(star6):
    sigma = star6.orientations['orbit5']
    decomposition = enumerate_decompositions(star6.graph, sigma)[0]
    conflicts = intersection_graph(decomposition.cycles)
    k, colouring = min_colours(decomposition)
    assert k >= max(len(c) for c in nx.find_cliques(conflicts))
    assert validate_o_colouring(star6.graph, sigma, colouring.edge_colours)

import itertools

import pytest

from oChroma.catalog_io import parse_pd, BORROMEAN_PD, WHITEHEAD_PD, builtin_cubic
from oChroma.ocycle import enumerate_o_cycles, enumerate_decompositions
from oChroma.orientation import assignment_count
from oChroma.symmetry import (
    automorphisms, map_automorphisms, orbits, burnside_count, act, assignment_permutation,
    find_isomorphism, is_isomorphic, PRESERVING, REVERSING,
)


def brute_force_vertex_automorphisms(graph):
    """Vertex permutations preserving edge multiplicities."""
    def multiplicities(mapping):
        counts = {}
        for e in range(graph.edge_count):
            u, v = (mapping[w] for w in graph.edge_ends(e))
            key = (min(u, v), max(u, v))
            counts[key] = counts.get(key, 0) + 1
        return counts

    target = multiplicities(range(graph.vertex_count))
    return [p for p in itertools.permutations(range(graph.vertex_count)) if multiplicities(p) == target]


def test_star6_group_and_orbits(star6):
    group = map_automorphisms(star6.graph)
    assert len(group) == 48
    classes = orbits(star6.graph, group)
    assert len(classes) == 7
    assert sum(orbit.size for orbit in classes) == 64
    assert burnside_count(star6.graph, group) == 7


def test_octahedron_automorphisms_match_brute_force(star6):
    found = sorted({a.vertex_map for a in automorphisms(star6.graph)})
    assert found == sorted(brute_force_vertex_automorphisms(star6.graph))


def test_senses(star6):
    senses = {a.sense for a in map_automorphisms(star6.graph)}
    assert senses == {PRESERVING, REVERSING}


def test_catalog_orbits_are_distinct(star6):
    orbit_of = {}
    for number, orbit in enumerate(orbits(star6.graph)):
        for index in orbit.members:
            orbit_of[index] = number
    seen = {orbit_of[sigma.to_index()] for sigma in star6.orientations.values()}
    assert len(seen) == 7


def test_action_preserves_tables(star6):
    sigma = star6.orientations['orbit4']
    cycles = len(enumerate_o_cycles(star6.graph, sigma))
    decompositions = len(enumerate_decompositions(star6.graph, sigma))
    for automorphism in map_automorphisms(star6.graph)[:12]:
        image = act(automorphism, sigma)
        assert len(enumerate_o_cycles(star6.graph, image)) == cycles
        assert len(enumerate_decompositions(star6.graph, image)) == decompositions


def test_assignment_permutation_is_a_bijection(star6):
    for automorphism in map_automorphisms(star6.graph)[:6]:
        permutation = assignment_permutation(star6.graph, automorphism)
        assert sorted(permutation) == list(range(assignment_count(star6.graph)))


def test_group_operations(star6):
    group = map_automorphisms(star6.graph)
    identity = next(a for a in group if a.is_identity())
    for a in group[:5]:
        assert a.compose(a.inverse()) == identity
        assert a.compose(identity) == a


def test_petersen_automorphisms(petersen):
    assert len(automorphisms(petersen)) == 120


def test_pd_codes_match_catalog(star6, whitehead):
    assert is_isomorphic(parse_pd(BORROMEAN_PD), star6.graph)
    assert is_isomorphic(parse_pd(WHITEHEAD_PD), whitehead.graph)


def test_isomorphism_respects_orientation(star6):
    first, second = star6.orientations['orbit1'], star6.orientations['orbit7']
    assert find_isomorphism(star6.graph, star6.graph, first, first) is not None
    assert not is_isomorphic(star6.graph, star6.graph, first, second)


def test_size_mismatch(star6, star8):
    assert find_isomorphism(star6.graph, star8.graph) is None

import itertools
import random
from collections import Counter, deque

import networkx as nx
import pytest

from oChroma.catalog_io import builtin
from oChroma.errors import GenusError
from oChroma.families import medial_graph, random_base_graph, random_instances, small_family
from oChroma.ocycle import enumerate_decompositions, enumerate_o_cycles
from oChroma.orientation import enumerate_assignments
from oChroma.plane_graph import CUT_VERTEX, TWO_EDGE_CUT, faces, find_separations
from oChroma.symmetry import PRESERVING, REVERSING, automorphisms, is_isomorphic, map_automorphisms

RANDOM = list(random_instances(200, max_vertices=6, seed=20240917))
CATALOG = [builtin(name) for name in ('fig7a', 'fig7b', 'fig7c', 'whitehead', 'star6', 'star8')]


def reachable(graph, removed_vertex=None, removed_edges=()):
    """Whether the graph stays connected without `removed_vertex` and `removed_edges`."""
    nodes = [v for v in range(graph.vertex_count) if v != removed_vertex]
    neighbours = {v: [] for v in nodes}
    for e in range(graph.edge_count):
        u, v = graph.edge_ends(e)
        if e in removed_edges or removed_vertex in (u, v):
            continue
        neighbours[u].append(v)
        neighbours[v].append(u)
    seen = {nodes[0]}
    queue = deque(seen)
    while queue:
        for w in neighbours[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(nodes)


def brute_force_separations(graph):
    cut_vertices = [v for v in range(graph.vertex_count)
                    if graph.vertex_count > 1 and not reachable(graph, removed_vertex=v)]
    plain = [e for e in range(graph.edge_count) if not graph.is_loop(e)]
    cuts = [pair for pair in itertools.combinations(plain, 2) if not reachable(graph, removed_edges=pair)]
    return cut_vertices, cuts


def brute_force_cycles(graph, sigma):
    """Edge sets of every o-cycle, walked from every dart."""
    found = set()

    def grow(path, visited):
        arrival = path[-1] ^ 1
        here = graph.endpoint[arrival]
        for dart in range(graph.dart_count):
            if graph.endpoint[dart] != here or dart == arrival or sigma.same_cell(dart, arrival):
                continue
            target = graph.endpoint[dart ^ 1]
            if target == graph.endpoint[path[0]]:
                if not sigma.same_cell(dart ^ 1, path[0]):
                    found.add(frozenset(d >> 1 for d in path + [dart]))
            elif target not in visited:
                grow(path + [dart], visited | {target})

    for start in range(graph.dart_count):
        source, target = graph.endpoint[start], graph.endpoint[start ^ 1]
        if source == target:
            if not sigma.same_cell(start, start ^ 1):
                found.add(frozenset({start >> 1}))
            continue
        grow([start], {source, target})
    return found


def exact_covers(graph, cycles):
    """Every subset of pairwise edge-disjoint cycles covering all edges, by include/exclude recursion."""
    masks = [sum(1 << e for e in c.edges) for c in cycles]
    full = (1 << graph.edge_count) - 1
    covers = []

    def choose(i, used, chosen):
        if used == full:
            covers.append(frozenset(chosen))
            return
        if i == len(cycles):
            return
        if not masks[i] & used:
            choose(i + 1, used | masks[i], chosen + [cycles[i]])
        choose(i + 1, used, chosen)

    choose(0, 0, [])
    return covers


def brute_force_vertex_maps(graph):
    """Vertex permutations preserving every edge multiplicity, with their dart-level multiplicity."""
    bundles = Counter(tuple(sorted(graph.edge_ends(e))) for e in range(graph.edge_count))
    maps = {}
    for perm in itertools.permutations(range(graph.vertex_count)):
        image = Counter(tuple(sorted((perm[u], perm[w]))) for (u, w), k in bundles.items() for _ in range(k))
        if image != bundles:
            continue
        count = 1
        for (u, w), k in bundles.items():
            count *= _factorial(k) * (2 ** k if u == w else 1)
        maps[perm] = count
    return maps


def _factorial(k):
    return 1 if k < 2 else k * _factorial(k - 1)


def _rotation_step(graph, dart, backwards):
    order = graph.rotation[graph.endpoint[dart]]
    return order[(order.index(dart) + (-1 if backwards else 1)) % len(order)]


def propagated_map(graph, image, reversing):
    """The map automorphism sending dart 0 to `image`, grown along rotations and twins, or None."""
    dart_map = {0: image}
    stack = [0]
    while stack:
        dart = stack.pop()
        target = dart_map[dart]
        for source, source_image in ((dart ^ 1, target ^ 1),
                                     (_rotation_step(graph, dart, False), _rotation_step(graph, target, reversing))):
            if source in dart_map:
                if dart_map[source] != source_image:
                    return None
            else:
                dart_map[source] = source_image
                stack.append(source)
    if len(set(dart_map.values())) != graph.dart_count:
        return None
    return tuple(dart_map[d] for d in range(graph.dart_count))


def test_medial_of_k4_is_the_octahedron(star6):
    octahedron = medial_graph(nx.complete_graph(4))
    assert (octahedron.vertex_count, octahedron.edge_count) == (6, 12)
    assert is_isomorphic(octahedron, star6.graph)


def test_medial_of_a_single_edge_is_a_double_loop(fig7a):
    graph = medial_graph(nx.path_graph(2))
    assert [graph.is_loop(e) for e in range(graph.edge_count)] == [True, True]
    assert is_isomorphic(graph, fig7a.graph)


def test_medial_graph_euler():
    graph = medial_graph(nx.cycle_graph(3))
    assert (graph.vertex_count, graph.edge_count, len(faces(graph))) == (3, 6, 5)
    with pytest.raises(GenusError):
        medial_graph(nx.complete_graph(5))


def test_random_base_graph_is_connected_and_planar():
    rng = random.Random(7)
    for size in range(1, 7):
        base = random_base_graph(rng, size)
        assert nx.is_connected(base)
        assert nx.check_planarity(base)[0]
        assert base.number_of_edges() <= size


def test_generators_are_seeded():
    first = [(g.endpoint, s.bits) for g, s in random_instances(5, seed=3)]
    again = [(g.endpoint, s.bits) for g, s in random_instances(5, seed=3)]
    assert first == again
    assert all(graph.vertex_count <= 6 for graph, _ in RANDOM)


def test_small_family():
    family = small_family()
    assert all(1 <= graph.vertex_count <= 6 for graph in family)
    assert any(graph.vertex_count == 6 for graph in family)
    assert len(small_family(3)) == 5


@pytest.mark.parametrize('position', range(0, len(RANDOM), 10))
def test_separations_match_brute_force(position):
    for graph, _ in RANDOM[position:position + 10]:
        separations = find_separations(graph)
        cut_vertices, cuts = brute_force_separations(graph)
        assert [s.pivot for s in separations if s.kind == CUT_VERTEX] == cut_vertices
        assert [s.pivot for s in separations if s.kind == TWO_EDGE_CUT] == cuts
        for separation in separations:
            sides = set(separation.side_of.values())
            assert len(sides) >= 2
            assert separation.side(min(separation.side_of)) == 1


def test_catalog_separations_match_brute_force():
    for entry in CATALOG:
        separations = find_separations(entry.graph)
        cut_vertices, cuts = brute_force_separations(entry.graph)
        assert [s.pivot for s in separations if s.kind == CUT_VERTEX] == cut_vertices
        assert [s.pivot for s in separations if s.kind == TWO_EDGE_CUT] == cuts


@pytest.mark.parametrize('position', range(0, len(RANDOM), 10))
def test_o_cycles_and_decompositions_match_brute_force(position):
    for graph, sigma in RANDOM[position:position + 10]:
        cycles = enumerate_o_cycles(graph, sigma)
        assert {c.edges for c in cycles} == brute_force_cycles(graph, sigma)
        assert len({c.edges for c in cycles}) == len(cycles)
        decompositions = enumerate_decompositions(graph, sigma, cycles)
        found = [frozenset(d.cycles) for d in decompositions]
        expected = exact_covers(graph, cycles)
        assert len(found) == len(set(found)) == len(expected)
        assert set(found) == set(expected)
        keys = [d.sort_key() for d in decompositions]
        assert keys == sorted(keys)


def test_catalog_cycles_match_brute_force():
    for entry in CATALOG:
        for sigma in entry.orientations.values():
            cycles = enumerate_o_cycles(entry.graph, sigma)
            assert {c.edges for c in cycles} == brute_force_cycles(entry.graph, sigma)
            expected = exact_covers(entry.graph, cycles)
            assert len(enumerate_decompositions(entry.graph, sigma, cycles)) == len(expected)


def test_whitehead_decompositions_over_every_orientation(whitehead):
    for sigma in enumerate_assignments(whitehead.graph):
        cycles = enumerate_o_cycles(whitehead.graph, sigma)
        found = {frozenset(d.cycles) for d in enumerate_decompositions(whitehead.graph, sigma, cycles)}
        assert found == set(exact_covers(whitehead.graph, cycles))


def check_automorphisms(graph):
    group = automorphisms(graph)
    expected = brute_force_vertex_maps(graph)
    assert {a.vertex_map for a in group} == set(expected)
    assert len(group) == sum(expected.values())

    compatible = {}
    for image in range(graph.dart_count):
        for reversing in (False, True):
            dart_map = propagated_map(graph, image, reversing)
            if dart_map is not None:
                compatible[dart_map] = REVERSING if reversing else PRESERVING
    assert {a.dart_map: a.sense for a in map_automorphisms(graph)} == compatible


@pytest.mark.parametrize('name', ['fig7a', 'fig7b', 'fig7c', 'whitehead', 'star6', 'star8'])
def test_catalog_automorphisms_match_brute_force(name):
    check_automorphisms(builtin(name).graph)


def test_family_automorphisms_match_brute_force():
    for graph in small_family(5):
        check_automorphisms(graph)

"""
Small 4-regular plane multigraphs for sweeps and randomized checks.

Every connected 4-regular plane graph is the medial graph of a connected
plane graph: one vertex per edge of the plane graph, one edge per corner.
Loops come from leaves of the plane graph and parallel edges from its
short faces, so medial graphs of small simple plane graphs already cover
the multigraph cases the engine has to handle.
"""

import logging
import random

import networkx as nx

from oChroma.errors import GenusError
from oChroma.orientation import OrientationAssignment, assignment_count
from oChroma.plane_graph import build_graph

logger = logging.getLogger(__name__)


def medial_graph(base):
    """
    Medial graph of a connected planar networkx graph.

    Base edge i becomes medial vertex i. The corner after base dart d in the
    rotation at its vertex becomes medial edge d, joining the two base edges
    of that corner.

    Args:
        base (nx.Graph): Connected planar graph with at least one edge

    Returns:
        PlaneGraph: The embedded medial graph

    Raises:
        GenusError: `base` is not planar
    """
    planar, embedding = nx.check_planarity(base)
    if not planar:
        raise GenusError("medial graphs need a planar base graph")
    edges = list(base.edges())
    dart_of = {}
    for i, (u, v) in enumerate(edges):
        dart_of[(u, v)] = 2 * i
        dart_of[(v, u)] = 2 * i + 1

    following, preceding = {}, {}
    for vertex in base.nodes:
        darts = [dart_of[(vertex, w)] for w in reversed(list(embedding.neighbors_cw_order(vertex)))]
        for position, dart in enumerate(darts):
            following[dart] = darts[(position + 1) % len(darts)]
            preceding[dart] = darts[position - 1]

    endpoints = [(d >> 1, following[d] >> 1) for d in range(2 * len(edges))]
    rotations = []
    for i in range(len(edges)):
        a, b = 2 * i, 2 * i + 1
        rotations.append((2 * preceding[b] + 1, 2 * a, 2 * preceding[a] + 1, 2 * b))
    return build_graph(endpoints, rotations)


def random_base_graph(rng, edge_count):
    """
    Random connected planar graph with `edge_count` edges: a random tree
    plus random chords that keep it planar.
    """
    nodes = rng.randint(2, edge_count + 1)
    base = nx.Graph()
    base.add_nodes_from(range(nodes))
    for child in range(1, nodes):
        base.add_edge(child, rng.randrange(child))
    attempts = 0
    while base.number_of_edges() < edge_count and attempts < 10 * edge_count:
        u, v = rng.sample(range(nodes), 2)
        attempts += 1
        if base.has_edge(u, v):
            continue
        base.add_edge(u, v)
        if not nx.check_planarity(base)[0]:
            base.remove_edge(u, v)
    return base


def random_instances(count, max_vertices=6, seed=0):
    """
    Seeded random oriented 4-regular plane graphs.

    Yields:
        tuple: (PlaneGraph, OrientationAssignment) with at most `max_vertices` vertices
    """
    rng = random.Random(seed)
    for _ in range(count):
        graph = medial_graph(random_base_graph(rng, rng.randint(1, max_vertices)))
        index = rng.randrange(assignment_count(graph))
        yield graph, OrientationAssignment.from_index(graph, index)


def small_family(max_vertices=6):
    """
    Medial graphs of every connected graph in the networkx atlas with at
    most `max_vertices` edges, in atlas order.
    """
    family = []
    for base in nx.graph_atlas_g():
        if not 0 < base.number_of_edges() <= max_vertices or not nx.is_connected(base):
            continue
        family.append(medial_graph(base))
    logger.debug("small family: %d graphs up to %d vertices", len(family), max_vertices)
    return family

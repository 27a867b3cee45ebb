"""
Dart-based 4-regular multigraphs with an optional rotation system.

Edge k owns darts 2k and 2k+1: dart 2k sits at the first endpoint of the
edge and dart 2k+1 at the second. A loop puts both darts at one vertex.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx

from oChroma.errors import (
    DegreeError, RotationError, GenusError, ModeError, DisconnectedError,
)

logger = logging.getLogger(__name__)

EMBEDDED = 'embedded'
ABSTRACT = 'abstract'

CUT_VERTEX = 'cut_vertex'
TWO_EDGE_CUT = 'two_edge_cut'


def twin(dart):
    return dart ^ 1


class PlaneGraph:
    """
    Immutable multigraph with a fixed vertex degree.

    Attributes:
        vertex_count (int): Number of vertices
        edge_count (int): Number of edges
        endpoint (tuple): Vertex of each dart
        rotation (tuple): Counterclockwise dart order per vertex, None for abstract graphs
        degree (int): Common vertex degree (4, or 3 for cubic graphs)
    """

    def __init__(self, vertex_count, edge_count, endpoint, rotation=None, degree=4):
        self.vertex_count = vertex_count
        self.edge_count = edge_count
        self.endpoint = tuple(endpoint)
        self.rotation = tuple(tuple(r) for r in rotation) if rotation is not None else None
        self.degree = degree

        darts_at = [[] for _ in range(vertex_count)]
        for dart, vertex in enumerate(self.endpoint):
            darts_at[vertex].append(dart)
        self._darts_at = tuple(tuple(d) for d in darts_at)

        self._position = {}
        if self.rotation is not None:
            for vertex, order in enumerate(self.rotation):
                for index, dart in enumerate(order):
                    self._position[dart] = (vertex, index)

    @property
    def mode(self):
        return EMBEDDED if self.rotation is not None else ABSTRACT

    @property
    def embedded(self):
        return self.rotation is not None

    @property
    def dart_count(self):
        return 2 * self.edge_count

    def darts_at(self, vertex):
        """Darts at a vertex, in rotation order when embedded, ascending otherwise."""
        if self.rotation is not None:
            return self.rotation[vertex]
        return self._darts_at[vertex]

    def head(self, dart):
        """Vertex at the far end of a dart."""
        return self.endpoint[dart ^ 1]

    def edge_ends(self, edge):
        return self.endpoint[2 * edge], self.endpoint[2 * edge + 1]

    def is_loop(self, edge):
        return self.endpoint[2 * edge] == self.endpoint[2 * edge + 1]

    def edges_at(self, vertex):
        """Distinct edges incident to a vertex, ascending."""
        return tuple(sorted({d >> 1 for d in self._darts_at[vertex]}))

    def loops_at(self, vertex):
        return tuple(e for e in self.edges_at(vertex) if self.is_loop(e))

    def _require_embedded(self):
        if self.rotation is None:
            raise ModeError("operation needs an embedded graph (no rotation system given)")

    def rotation_next(self, dart):
        """Dart following `dart` counterclockwise at its vertex."""
        self._require_embedded()
        vertex, index = self._position[dart]
        order = self.rotation[vertex]
        return order[(index + 1) % len(order)]

    def face_successor(self, dart):
        return self.rotation_next(dart ^ 1)

    def reflected(self):
        """Same graph with every rotation reversed (a mirror image of the embedding)."""
        if self.rotation is None:
            return self
        rotation = [tuple(reversed(order)) for order in self.rotation]
        return self.__class__(self.vertex_count, self.edge_count, self.endpoint, rotation, self.degree)

    def abstract(self):
        """Same graph without its rotation system."""
        return self.__class__(self.vertex_count, self.edge_count, self.endpoint, None, self.degree)

    def to_networkx(self):
        """
        Convert to a networkx MultiGraph keyed by edge id.

        Returns:
            nx.MultiGraph: Vertices 0..V-1, one keyed edge per graph edge
        """
        multigraph = nx.MultiGraph()
        multigraph.add_nodes_from(range(self.vertex_count))
        for e in range(self.edge_count):
            u, v = self.edge_ends(e)
            multigraph.add_edge(u, v, key=e)
        return multigraph

    def _key(self):
        return (self.degree, self.vertex_count, self.endpoint, self.rotation)

    def __eq__(self, other):
        return isinstance(other, PlaneGraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"{self.__class__.__name__}(V={self.vertex_count}, E={self.edge_count}, "
                f"mode={self.mode})")


class CubicGraph(PlaneGraph):
    """Three-regular graph sharing the dart model of PlaneGraph."""

    def __init__(self, vertex_count, edge_count, endpoint, rotation=None, degree=3):
        super().__init__(vertex_count, edge_count, endpoint, rotation, degree)


def build_graph(edge_endpoints, rotations=None, degree=4, vertex_count=None):
    """
    Validate an edge list and optional rotations and build the graph.

    Args:
        edge_endpoints (list): (u, v) vertex pair per edge; edge k gets darts 2k at u and 2k+1 at v
        rotations (list): Optional counterclockwise dart order per vertex
        degree (int): Required vertex degree, 4 for plane graphs and 3 for cubic graphs
        vertex_count (int): Number of vertices; inferred from the edge list when omitted

    Returns:
        PlaneGraph: The validated graph (CubicGraph when degree is 3)

    Raises:
        DegreeError: A vertex has the wrong degree or an edge names an unknown vertex
        RotationError: A rotation does not list exactly the darts at its vertex
        GenusError: The rotation system is not spherical in some component
    """
    edge_endpoints = [tuple(pair) for pair in edge_endpoints]
    if vertex_count is None:
        vertex_count = 1 + max((max(pair) for pair in edge_endpoints), default=-1)

    endpoint = []
    for e, pair in enumerate(edge_endpoints):
        if len(pair) != 2:
            raise DegreeError(f"edge {e} must have exactly two endpoints")
        for vertex in pair:
            if not 0 <= vertex < vertex_count:
                raise DegreeError(f"edge {e} references unknown vertex {vertex}")
        endpoint.extend(pair)

    counts = [0] * vertex_count
    for vertex in endpoint:
        counts[vertex] += 1
    for vertex, count in enumerate(counts):
        if count != degree:
            raise DegreeError(f"vertex {vertex} has degree {count}, expected {degree}")

    if rotations is not None:
        rotations = [tuple(r) for r in rotations]
        if len(rotations) != vertex_count:
            raise RotationError(f"{len(rotations)} rotations given for {vertex_count} vertices")
        for vertex, order in enumerate(rotations):
            incident = sorted(d for d, w in enumerate(endpoint) if w == vertex)
            if sorted(order) != incident:
                raise RotationError(
                    f"rotation at vertex {vertex} lists darts {list(order)}, incident darts are {incident}"
                )

    graph_class = CubicGraph if degree == 3 else PlaneGraph
    graph = graph_class(vertex_count, len(edge_endpoints), endpoint, rotations, degree)
    if rotations is not None:
        _check_euler(graph)
    return graph


def _face_cycles(graph):
    seen = set()
    cycles = []
    for start in range(graph.dart_count):
        if start in seen:
            continue
        cycle = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            cycle.append(dart)
            dart = graph.face_successor(dart)
        cycles.append(tuple(cycle))
    return cycles


def _check_euler(graph):
    face_component = {}
    for cycle in _face_cycles(graph):
        vertex = graph.endpoint[cycle[0]]
        face_component.setdefault(vertex, []).append(cycle)

    for component in components(graph):
        members = set(component)
        edges = {e for e in range(graph.edge_count) if graph.endpoint[2 * e] in members}
        faces = sum(
            len(cycles) for vertex, cycles in face_component.items() if vertex in members
        )
        characteristic = len(members) - len(edges) + faces
        if characteristic != 2:
            raise GenusError(
                f"rotation system is not spherical: V-E+F = {len(members)}-{len(edges)}+{faces}"
                f" = {characteristic} on the component of vertex {min(members)}"
            )


def faces(graph):
    """
    Trace the faces of an embedded graph.

    Args:
        graph (PlaneGraph): Embedded graph

    Returns:
        list: One tuple of darts per face; dart d is followed by rotation_next(twin(d))

    Raises:
        ModeError: The graph has no rotation system
    """
    if not graph.embedded:
        raise ModeError("faces are only defined for embedded graphs")
    return _face_cycles(graph)


def components(graph):
    """Vertex lists of the connected components, ordered by smallest vertex."""
    found = [sorted(c) for c in nx.connected_components(graph.to_networkx())]
    return sorted(found, key=lambda c: c[0])


def is_connected(graph):
    return graph.vertex_count == 0 or len(components(graph)) == 1


@dataclass
class Separation:
    """
    A cut-vertex or a 2-edge cut with its two sides.

    Side 1 is the side holding the smallest vertex not in the pivot.
    """
    kind: str
    pivot: object
    side_of: dict = field(default_factory=dict)

    def side(self, vertex):
        return self.side_of.get(vertex, 0)

    def vertices(self, side):
        return sorted(v for v, s in self.side_of.items() if s == side)


def _sides(pieces):
    pieces = sorted((sorted(p) for p in pieces), key=lambda p: p[0])
    side_of = {}
    for index, piece in enumerate(pieces, start=1):
        for vertex in piece:
            side_of[vertex] = index
    return side_of


def _loopless(graph):
    multigraph = graph.to_networkx()
    multigraph.remove_edges_from(list(nx.selfloop_edges(multigraph, keys=True)))
    return multigraph


def cut_vertex_sides(graph, vertex):
    """
    Components of G - vertex as a side map, or None when vertex is not a cut-vertex.
    """
    multigraph = _loopless(graph)
    multigraph.remove_node(vertex)
    pieces = list(nx.connected_components(multigraph))
    if len(pieces) < 2:
        return None
    return _sides(pieces)


def articulation_points(graph):
    simple = nx.Graph(_loopless(graph))
    return sorted(nx.articulation_points(simple))


def two_edge_cuts(graph):
    """
    All pairs of edges whose removal disconnects a connected graph.

    Returns:
        list: Sorted (e, f) pairs with e < f
    """
    base = _loopless(graph)
    cuts = set()
    for e in range(graph.edge_count):
        if graph.is_loop(e):
            continue
        u, v = graph.edge_ends(e)
        reduced = base.copy()
        reduced.remove_edge(u, v, key=e)
        for a, b in nx.bridges(reduced):
            keys = list(reduced[a][b])
            if len(keys) == 1:
                f = keys[0]
                cuts.add((min(e, f), max(e, f)))
    return sorted(cuts)


def two_edge_cut_sides(graph, cut):
    reduced = _loopless(graph)
    for e in cut:
        u, v = graph.edge_ends(e)
        reduced.remove_edge(u, v, key=e)
    return _sides(nx.connected_components(reduced))


def find_separations(graph):
    """
    Find every cut-vertex and every 2-edge cut of a connected graph.

    Args:
        graph (PlaneGraph): Connected graph

    Returns:
        list: Separation records, cut-vertices first, each group in ascending order

    Raises:
        DisconnectedError: The graph is not connected
    """
    if not is_connected(graph):
        raise DisconnectedError("find_separations needs a connected graph")

    separations = []
    for vertex in articulation_points(graph):
        separations.append(Separation(CUT_VERTEX, vertex, cut_vertex_sides(graph, vertex)))
    for cut in two_edge_cuts(graph):
        separations.append(Separation(TWO_EDGE_CUT, cut, two_edge_cut_sides(graph, cut)))
    logger.debug("found %d separations in %r", len(separations), graph)
    return separations

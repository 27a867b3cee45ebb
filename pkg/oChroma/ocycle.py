"""
O-cycles, decompositions of the edge set into o-cycles, and o-colourings.

An o-walk leaves every vertex through the cell it did not arrive in. An
o-cycle is a closed o-walk that visits no vertex twice.
"""

import logging
from collections import defaultdict

import networkx as nx

from oChroma.errors import NotOColourableError, ValidationError

logger = logging.getLogger(__name__)


class OCycle:
    """
    A canonical o-cycle.

    Attributes:
        darts (tuple): Departure dart at each visited vertex, in traversal order
        vertices (tuple): Visited vertices, starting at the smallest
        edges (frozenset): Edge ids on the cycle
    """
    __slots__ = ('darts', 'vertices', 'edges')

    def __init__(self, darts, vertices):
        self.darts = tuple(darts)
        self.vertices = tuple(vertices)
        self.edges = frozenset(d >> 1 for d in self.darts)

    @classmethod
    def from_darts(cls, graph, darts):
        """
        Canonicalize a closed walk given by its departure darts.

        The canonical form minimizes (vertex sequence, dart sequence) over
        every starting point and both directions.
        """
        darts = tuple(darts)
        backward = tuple(d ^ 1 for d in reversed(darts))
        best = None
        for sequence in (darts, backward):
            for shift in range(len(sequence)):
                rotated = sequence[shift:] + sequence[:shift]
                key = (tuple(graph.endpoint[d] for d in rotated), rotated)
                if best is None or key < best:
                    best = key
        return cls(best[1], best[0])

    @property
    def length(self):
        return len(self.darts)

    @property
    def vertex_set(self):
        return frozenset(self.vertices)

    def closed_vertices(self):
        return self.vertices + self.vertices[:1]

    def label(self, base=1):
        """Closed vertex tuple such as (1,2,3,1)."""
        return '(' + ','.join(str(v + base) for v in self.closed_vertices()) + ')'

    def sort_key(self):
        return (self.closed_vertices(), self.darts)

    def departures(self, graph, vertex):
        """Darts by which the cycle can leave `vertex`, in either direction."""
        backward = tuple(d ^ 1 for d in reversed(self.darts))
        return sorted(d for d in self.darts + backward if graph.endpoint[d] == vertex)

    def walk(self, graph, dart):
        """
        The cycle traversed starting with `dart`, as (closed vertices, darts).

        Raises:
            ValueError: `dart` does not leave a vertex of the cycle along it
        """
        for sequence in (self.darts, tuple(d ^ 1 for d in reversed(self.darts))):
            if dart in sequence:
                shift = sequence.index(dart)
                rotated = sequence[shift:] + sequence[:shift]
                vertices = tuple(graph.endpoint[d] for d in rotated)
                return vertices + vertices[:1], rotated
        raise ValueError(f"dart {dart} is not on {self!r}")

    def __eq__(self, other):
        return isinstance(other, OCycle) and self.darts == other.darts

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return hash(self.darts)

    def __repr__(self):
        return f"OCycle{self.label()}"


class Decomposition:
    """
    Edge-disjoint o-cycles covering every edge.

    Attributes:
        graph (PlaneGraph): The decomposed graph
        cycles (tuple): Sorted OCycle values
    """

    def __init__(self, graph, cycles):
        self.graph = graph
        self.cycles = tuple(sorted(cycles))
        self.usage = {}
        for index, cycle in enumerate(self.cycles):
            for edge in cycle.edges:
                self.usage[edge] = index

    def sort_key(self):
        """
        Order decompositions by the two cycles through the smallest vertex.

        The leading cycle is walked from that vertex along its smaller
        departure dart and the other one along its larger departure dart.
        Cycles away from the smallest vertex break the remaining ties.
        """
        if not self.cycles:
            return ()
        root = min(v for cycle in self.cycles for v in cycle.vertices)
        through = sorted(
            (c for c in self.cycles if root in c.vertex_set),
            key=lambda c: c.walk(self.graph, c.departures(self.graph, root)[0]))
        key = [through[0].walk(self.graph, through[0].departures(self.graph, root)[0])]
        key += sorted(c.walk(self.graph, c.departures(self.graph, root)[-1]) for c in through[1:])
        key += [c.sort_key() for c in self.cycles if root not in c.vertex_set]
        return tuple(key)

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def __eq__(self, other):
        return isinstance(other, Decomposition) and self.cycles == other.cycles

    def __hash__(self):
        return hash(self.cycles)

    def __repr__(self):
        return f"Decomposition({', '.join(c.label() for c in self.cycles)})"


class OColouring:
    """
    A decomposition into o-cycles with a colour per cycle.

    Attributes:
        graph (PlaneGraph): The coloured graph
        cycles (tuple): Sorted OCycle values
        colours (tuple): Colour of each cycle
        edge_colours (tuple): Colour of each edge
    """

    def __init__(self, graph, cycles, colours):
        pairs = sorted(zip(cycles, colours), key=lambda pair: pair[0].sort_key())
        self.graph = graph
        self.cycles = tuple(c for c, _ in pairs)
        self.colours = tuple(k for _, k in pairs)
        edge_colours = [None] * graph.edge_count
        for cycle, colour in pairs:
            for edge in cycle.edges:
                edge_colours[edge] = colour
        self.edge_colours = tuple(edge_colours)

    @property
    def palette(self):
        return tuple(sorted(set(self.colours)))

    @property
    def size(self):
        return len(set(self.colours))

    @property
    def decomposition(self):
        return Decomposition(self.graph, self.cycles)

    def normalized(self):
        """Same colouring with colours renamed to 0..k-1 in ascending order."""
        rename = {colour: index for index, colour in enumerate(self.palette)}
        return OColouring(self.graph, self.cycles, [rename[c] for c in self.colours])

    def __repr__(self):
        return f"OColouring(k={self.size}, cycles={len(self.cycles)})"


def step_options(graph, sigma, incoming_dart):
    """
    Darts an o-walk may leave by after travelling along `incoming_dart`.

    Args:
        graph (PlaneGraph): The graph
        sigma (OrientationAssignment): Orientation
        incoming_dart (int): Dart just traversed; the walk arrives on its twin

    Returns:
        frozenset: The two darts of the cell not holding the arrival dart
    """
    return frozenset(sigma.other_cell(incoming_dart ^ 1))


def enumerate_o_cycles(graph, sigma):
    """
    Enumerate every o-cycle of an oriented graph.

    Each cycle is grown from its smallest vertex with a depth-first search
    that only visits larger vertices. Loops count as cycles of length one
    when their darts lie in different cells.

    Returns:
        list: Canonical OCycle values in sort order
    """
    found = set()
    for start in range(graph.vertex_count):
        for first in graph.darts_at(start):
            edge = first >> 1
            if graph.is_loop(edge):
                if not sigma.same_cell(2 * edge, 2 * edge + 1):
                    found.add(OCycle.from_darts(graph, (2 * edge,)))
                continue
            if graph.head(first) < start:
                continue
            _extend(graph, sigma, start, first, [first], {start, graph.head(first)}, found)
    return sorted(found)


def _extend(graph, sigma, start, first, path, visited, found):
    for dart in step_options(graph, sigma, path[-1]):
        if graph.is_loop(dart >> 1):
            continue
        target = graph.head(dart)
        if target == start:
            if not sigma.same_cell(dart ^ 1, first):
                found.add(OCycle.from_darts(graph, path + [dart]))
            continue
        if target < start or target in visited:
            continue
        visited.add(target)
        path.append(dart)
        _extend(graph, sigma, start, first, path, visited, found)
        path.pop()
        visited.discard(target)


def iter_decompositions(graph, sigma, cycles=None):
    """
    Yield every exact cover of the edge set by o-cycles, in search order.

    The search always branches on the lowest uncovered edge.
    """
    if cycles is None:
        cycles = enumerate_o_cycles(graph, sigma)
    by_edge = defaultdict(list)
    for cycle in cycles:
        for edge in cycle.edges:
            by_edge[edge].append(cycle)

    covered = [False] * graph.edge_count
    chosen = []

    def search(lowest):
        while lowest < graph.edge_count and covered[lowest]:
            lowest += 1
        if lowest == graph.edge_count:
            yield Decomposition(graph, chosen)
            return
        for cycle in by_edge.get(lowest, ()):
            if any(covered[e] for e in cycle.edges):
                continue
            for e in cycle.edges:
                covered[e] = True
            chosen.append(cycle)
            yield from search(lowest + 1)
            chosen.pop()
            for e in cycle.edges:
                covered[e] = False

    yield from search(0)


def enumerate_decompositions(graph, sigma, cycles=None):
    """
    List every decomposition of the edge set into o-cycles.

    Returns:
        list: Decomposition values in Decomposition.sort_key order
    """
    return sorted(iter_decompositions(graph, sigma, cycles), key=Decomposition.sort_key)


def cycle_usage(cycles, decompositions):
    """
    Map each cycle to the indices of the decompositions it takes part in.
    """
    usage = {cycle: [] for cycle in cycles}
    for index, decomposition in enumerate(decompositions):
        for cycle in decomposition.cycles:
            usage.setdefault(cycle, []).append(index)
    return usage


def intersection_graph(cycles):
    """networkx graph on cycle indices, joining cycles that share a vertex."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(cycles)))
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if cycles[i].vertex_set & cycles[j].vertex_set:
                graph.add_edge(i, j)
    return graph


def exact_colouring(graph, fixed=None, forbidden=None, limit=None):
    """
    Minimum proper vertex colouring by backtracking with a clique lower bound.

    Args:
        graph (nx.Graph): Conflict graph
        fixed (dict): Nodes whose colour is given in advance
        forbidden (dict): Node -> set of colours it must avoid
        limit (int): Largest palette size worth trying

    Returns:
        dict: Colour per node, or None when no colouring within `limit` exists
    """
    fixed = dict(fixed or {})
    forbidden = forbidden or {}
    nodes = [n for n in graph.nodes if n not in fixed]
    if graph.number_of_nodes() == 0:
        return {}
    lower = max(len(clique) for clique in nx.find_cliques(graph))
    lower = max(lower, 1 + max(fixed.values(), default=-1))
    upper = graph.number_of_nodes() + len(fixed) + sum(len(f) for f in forbidden.values())
    if limit is not None:
        upper = min(upper, limit)
    order = sorted(nodes, key=lambda n: (-graph.degree(n), n))

    for k in range(lower, upper + 1):
        colours = dict(fixed)
        if _colour_nodes(graph, order, 0, colours, forbidden, k):
            return colours
    return None


def _colour_nodes(graph, order, position, colours, forbidden, k):
    if position == len(order):
        return True
    node = order[position]
    used = {colours[n] for n in graph.neighbors(node) if n in colours}
    used |= forbidden.get(node, set())
    for colour in range(k):
        if colour in used:
            continue
        colours[node] = colour
        if _colour_nodes(graph, order, position + 1, colours, forbidden, k):
            return True
        del colours[node]
    return False


def min_colours(decomposition):
    """
    Smallest palette that colours a decomposition properly.

    Args:
        decomposition (Decomposition): A valid decomposition

    Returns:
        tuple: (k, OColouring) with an optimal witness
    """
    cycles = decomposition.cycles
    colours = exact_colouring(intersection_graph(cycles))
    colouring = OColouring(decomposition.graph, cycles, [colours[i] for i in range(len(cycles))])
    return colouring.size, colouring


def chi_o(graph, sigma):
    """
    O-chromatic index with a witness colouring.

    Returns:
        tuple: (k, OColouring)

    Raises:
        NotOColourableError: No decomposition exists
    """
    best = None
    for decomposition in iter_decompositions(graph, sigma):
        k, colouring = min_colours(decomposition)
        if best is None or k < best[0] or (k == best[0] and decomposition.sort_key() < best[2]):
            best = (k, colouring, decomposition.sort_key())
    if best is None:
        raise NotOColourableError("the oriented graph has no decomposition into o-cycles")
    return best[0], best[1]


def is_o_colourable(graph, sigma):
    for _ in iter_decompositions(graph, sigma):
        return True
    return False


def _as_colour_list(graph, edge_colour_map):
    if isinstance(edge_colour_map, dict):
        if set(edge_colour_map) != set(range(graph.edge_count)):
            return None
        return [edge_colour_map[e] for e in range(graph.edge_count)]
    colours = list(edge_colour_map)
    if len(colours) != graph.edge_count or any(c is None for c in colours):
        return None
    return colours


def explain_o_colouring(graph, sigma, edge_colour_map):
    """
    Describe the first reason an edge colouring is not an o-colouring.

    Returns:
        str: The reason, or None when the colouring is valid
    """
    colours = _as_colour_list(graph, edge_colour_map)
    if colours is None:
        return f"colouring must assign a colour to each of the {graph.edge_count} edges"
    for vertex in range(graph.vertex_count):
        seen = {colours[d >> 1] for d in graph.darts_at(vertex)}
        if len(seen) != 2:
            return f"vertex {vertex} sees {len(seen)} colours, expected exactly 2"
        for cell in sigma.cells(vertex):
            if colours[cell[0] >> 1] == colours[cell[1] >> 1]:
                return f"cell {cell} at vertex {vertex} is monochromatic"
    return None


def colour_class_cycles(graph, colours):
    """
    Walk each colour class of a locally valid colouring into its cycles.

    Returns:
        list: (OCycle, colour) pairs
    """
    seen = set()
    result = []
    for start in range(graph.dart_count):
        if start >> 1 in seen or start & 1:
            continue
        colour = colours[start >> 1]
        darts = []
        dart = start
        while True:
            darts.append(dart)
            seen.add(dart >> 1)
            arrival = dart ^ 1
            vertex = graph.endpoint[arrival]
            dart = next(d for d in graph.darts_at(vertex)
                        if d != arrival and colours[d >> 1] == colour)
            if dart == start:
                break
        result.append((OCycle.from_darts(graph, darts), colour))
    return result


def validate_o_colouring(graph, sigma, edge_colour_map):
    """
    Check an edge colouring against the o-colouring conditions.

    Every vertex must see exactly two colours with both colours in each
    cell, and every colour class must split into vertex-disjoint o-cycles.

    Args:
        graph (PlaneGraph): The graph
        sigma (OrientationAssignment): Orientation
        edge_colour_map (dict or list): Colour per edge id

    Returns:
        bool: True for a valid o-colouring
    """
    if explain_o_colouring(graph, sigma, edge_colour_map) is not None:
        return False
    colours = _as_colour_list(graph, edge_colour_map)
    per_colour = defaultdict(set)
    for cycle, colour in colour_class_cycles(graph, colours):
        if len(set(cycle.vertices)) != cycle.length or per_colour[colour] & cycle.vertex_set:
            return False
        per_colour[colour] |= cycle.vertex_set
    return True


def ocolouring_from_edge_colours(graph, sigma, edge_colour_map):
    """
    Turn a valid edge colouring into an OColouring.

    Raises:
        ValidationError: The colouring is not an o-colouring
    """
    reason = explain_o_colouring(graph, sigma, edge_colour_map)
    if reason is not None:
        raise ValidationError(reason)
    colours = _as_colour_list(graph, edge_colour_map)
    pairs = colour_class_cycles(graph, colours)
    return OColouring(graph, [c for c, _ in pairs], [k for _, k in pairs])


def alternating_colouring(graph):
    """
    Two-colour a two-vertex graph made of four parallel edges.

    Colours alternate around the rotation of vertex 0, which puts both
    colours in every pair of rotation-consecutive darts at both vertices.
    """
    colours = [None] * graph.edge_count
    for index, dart in enumerate(graph.darts_at(0)):
        colours[dart >> 1] = index % 2
    return tuple(colours)

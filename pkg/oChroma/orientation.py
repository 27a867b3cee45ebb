"""
Vertex orientations: the split of the darts at each vertex into two cells.
"""

import itertools
import logging
from collections import namedtuple
from functools import lru_cache

from oChroma.errors import ModeError, OrientationError, DisconnectedError
from oChroma.plane_graph import articulation_points, cut_vertex_sides, is_connected

logger = logging.getLogger(__name__)

PLAIN = 'plain'
TRANSVERSE = 'transverse'
NONTRANSVERSE = 'nontransverse'


class Orientation(namedtuple('Orientation', ['vertex', 'cells'])):
    """
    Cell partition at one vertex.

    Attributes:
        vertex (int): The oriented vertex
        cells (tuple): Two dart pairs, each sorted, the pair holding the smaller dart first
    """
    __slots__ = ()

    @classmethod
    def from_pairs(cls, vertex, first, second):
        cells = sorted((tuple(sorted(first)), tuple(sorted(second))))
        return cls(vertex, tuple(cells))

    def cell_index(self, dart):
        return 0 if dart in self.cells[0] else 1

    def other_cell(self, dart):
        return self.cells[1 - self.cell_index(dart)]

    def partner(self, dart):
        """The other dart in the cell of `dart`."""
        cell = self.cells[self.cell_index(dart)]
        return cell[1] if cell[0] == dart else cell[0]

    def same_partition(self, pairs):
        return {frozenset(p) for p in pairs} == {frozenset(c) for c in self.cells}


@lru_cache(maxsize=256)
def orientation_table(graph):
    return tuple(tuple(admissible_orientations(graph, v)) for v in range(graph.vertex_count))


def admissible_orientations(graph, vertex):
    """
    List the admissible cell partitions at a vertex, in bit order.

    Embedded vertices get the two partitions into rotation-consecutive pairs,
    the one holding the first two darts of the rotation first. A vertex with
    two loops keeps only the partition that pairs darts of different loops.
    Abstract vertices get all three pairings of their sorted darts.

    Args:
        graph (PlaneGraph): The graph
        vertex (int): Vertex id

    Returns:
        list: Orientation values; the list index is the orientation bit
    """
    if not graph.embedded:
        a, b, c, d = graph.darts_at(vertex)
        return [
            Orientation.from_pairs(vertex, (a, b), (c, d)),
            Orientation.from_pairs(vertex, (a, c), (b, d)),
            Orientation.from_pairs(vertex, (a, d), (b, c)),
        ]

    r0, r1, r2, r3 = graph.rotation[vertex]
    options = [
        Orientation.from_pairs(vertex, (r0, r1), (r2, r3)),
        Orientation.from_pairs(vertex, (r1, r2), (r3, r0)),
    ]
    if len(graph.loops_at(vertex)) == 2:
        options = [o for o in options if all((c[0] ^ 1) != c[1] for c in o.cells)]
    return options


def loop_darts(graph, vertex):
    return [(2 * e, 2 * e + 1) for e in graph.loops_at(vertex)]


class OrientationAssignment:
    """
    An admissible orientation at every vertex, stored as one bit (trit in
    abstract mode) per vertex.

    Attributes:
        graph (PlaneGraph): The oriented graph
        bits (tuple): Index into admissible_orientations per vertex
    """

    def __init__(self, graph, bits):
        table = orientation_table(graph)
        bits = tuple(int(b) for b in bits)
        if len(bits) != graph.vertex_count:
            raise OrientationError(f"{len(bits)} orientation bits given for {graph.vertex_count} vertices")
        for vertex, bit in enumerate(bits):
            if not 0 <= bit < len(table[vertex]):
                raise OrientationError(
                    f"vertex {vertex} has {len(table[vertex])} admissible orientations, got bit {bit}"
                )
        self.graph = graph
        self.bits = bits
        self.orientations = tuple(table[v][b] for v, b in enumerate(bits))
        self._cell = {}
        for orientation in self.orientations:
            for index, cell in enumerate(orientation.cells):
                for dart in cell:
                    self._cell[dart] = index

    @property
    def radices(self):
        return tuple(len(options) for options in orientation_table(self.graph))

    def orientation(self, vertex):
        return self.orientations[vertex]

    def cells(self, vertex):
        return self.orientations[vertex].cells

    def same_cell(self, first, second):
        return self._cell[first] == self._cell[second]

    def partner(self, dart):
        return self.orientations[self.graph.endpoint[dart]].partner(dart)

    def other_cell(self, dart):
        return self.orientations[self.graph.endpoint[dart]].other_cell(dart)

    def to_index(self):
        """Mixed-radix index with vertex 0 as the least significant digit."""
        index = 0
        for bit, radix in zip(reversed(self.bits), reversed(self.radices)):
            index = index * radix + bit
        return index

    @classmethod
    def from_index(cls, graph, index):
        radices = [len(options) for options in orientation_table(graph)]
        total = assignment_count(graph)
        if not 0 <= index < total:
            raise OrientationError(f"orientation index {index} out of range 0..{total - 1}")
        bits = []
        for radix in radices:
            bits.append(index % radix)
            index //= radix
        return cls(graph, bits)

    @classmethod
    def from_cells(cls, graph, cells):
        """
        Build an assignment from explicit cell partitions.

        Args:
            graph (PlaneGraph): The graph
            cells (list): Per vertex, a pair of dart pairs

        Raises:
            OrientationError: Some partition is not admissible at its vertex
        """
        table = orientation_table(graph)
        bits = []
        for vertex, pairs in enumerate(cells):
            for bit, option in enumerate(table[vertex]):
                if option.same_partition(pairs):
                    bits.append(bit)
                    break
            else:
                raise OrientationError(f"cells {pairs} are not admissible at vertex {vertex}")
        return cls(graph, bits)

    def __eq__(self, other):
        return (isinstance(other, OrientationAssignment)
                and self.graph == other.graph and self.bits == other.bits)

    def __hash__(self):
        return hash((self.graph, self.bits))

    def __repr__(self):
        return f"OrientationAssignment(bits={''.join(str(b) for b in self.bits)})"


def assignment_count(graph):
    count = 1
    for options in orientation_table(graph):
        count *= len(options)
    return count


def enumerate_assignments(graph):
    """
    Iterate over every orientation assignment in index order.

    Yields:
        OrientationAssignment: Assignments with index 0, 1, 2, ...
    """
    table = orientation_table(graph)
    ranges = [range(len(options)) for options in reversed(table)]
    for reversed_bits in itertools.product(*ranges):
        yield OrientationAssignment(graph, tuple(reversed(reversed_bits)))


def classify(graph, sigma, vertex):
    """
    Classify a vertex as plain, transverse or nontransverse.

    Loop-anchors are transverse when the loop darts lie in different cells.
    A vertex with two loops has only its transverse orientation. A cut-vertex
    is transverse when each cell reaches both sides and nontransverse when
    each cell stays on one side.

    Args:
        graph (PlaneGraph): Embedded graph
        sigma (OrientationAssignment): Orientation of the graph
        vertex (int): Vertex to classify

    Returns:
        str: PLAIN, TRANSVERSE or NONTRANSVERSE
    """
    if not graph.embedded:
        raise ModeError("classify needs an embedded graph")

    loops = loop_darts(graph, vertex)
    if len(loops) == 2:
        return TRANSVERSE
    if len(loops) == 1:
        a, b = loops[0]
        return NONTRANSVERSE if sigma.same_cell(a, b) else TRANSVERSE

    sides = cut_vertex_sides(graph, vertex)
    if sides is None:
        return PLAIN
    return _cut_vertex_kind(graph, sigma, vertex, sides)


def _cut_vertex_kind(graph, sigma, vertex, sides):
    spans = [{sides[graph.head(d)] for d in cell} for cell in sigma.cells(vertex)]
    if all(len(span) == 2 for span in spans):
        return TRANSVERSE
    if all(len(span) == 1 for span in spans):
        return NONTRANSVERSE
    return PLAIN


def offending_vertices(graph, sigma):
    """Vertices that are nontransverse cut-vertices or nontransverse loop-anchors."""
    bad = set()
    for vertex in articulation_points(graph):
        sides = cut_vertex_sides(graph, vertex)
        if _cut_vertex_kind(graph, sigma, vertex, sides) != TRANSVERSE:
            bad.add(vertex)
    for vertex in range(graph.vertex_count):
        loops = loop_darts(graph, vertex)
        if len(loops) == 1 and sigma.same_cell(*loops[0]):
            bad.add(vertex)
    return sorted(bad)


def is_vogwoc(graph, sigma):
    """
    Check that every cut-vertex and every loop-anchor is transversely oriented.

    Args:
        graph (PlaneGraph): Connected embedded graph
        sigma (OrientationAssignment): Orientation of the graph

    Returns:
        bool: True when no nontransverse cut-vertex or loop-anchor exists

    Raises:
        ModeError: The graph is abstract
        DisconnectedError: The graph is not connected
    """
    if not graph.embedded:
        raise ModeError("is_vogwoc needs an embedded graph")
    if not is_connected(graph):
        raise DisconnectedError("is_vogwoc needs a connected graph")
    return not offending_vertices(graph, sigma)

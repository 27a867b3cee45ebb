"""
Graph surgeries and the cubic/quartic correspondence.

Every surgery rebuilds a fresh graph through _Assembler and reports, for
each new edge, the old edges it stands for so colourings can be carried
back and forth.
"""

import logging
from collections import namedtuple

from oChroma.errors import (
    ModeError, GenusError, RotationError, DoubleLoopError, LoopAnchorError,
    NotOneFactorError, PreconditionError, ValidationError,
)
from oChroma.plane_graph import (
    build_graph, components, cut_vertex_sides, two_edge_cut_sides, Separation,
)
from oChroma.orientation import OrientationAssignment
from oChroma.ocycle import OColouring, explain_o_colouring, ocolouring_from_edge_colours

logger = logging.getLogger(__name__)

Smoothing = namedtuple('Smoothing', ['graph', 'sigma', 'origins', 'strands'])
Sum = namedtuple('Sum', ['graph', 'sigma', 'joined', 'origins'])
Split = namedtuple('Split', ['g1', 'sigma1', 'g2', 'sigma2', 'origin1', 'origin2', 'link1', 'link2'])
Suppression = namedtuple('Suppression', ['graph', 'sigma', 'origins', 'circles', 'removed', 'vertices'])
DigonReduction = namedtuple(
    'DigonReduction', ['graph', 'vertices', 'digon_edges', 'through', 'link', 'origins', 'edge_count']
)

COLOURS3 = (0, 1, 2)


class _Assembler:
    """
    Incremental builder for a new graph made of pieces of old ones.

    Vertices are registered with a rotation of slot references; an edge is
    the pairing of two slots. Slot (tag, d) usually names the position of
    dart d of some source graph.
    """

    def __init__(self, degree=4):
        self.degree = degree
        self._slots = []
        self._cells = []
        self._vertex_of = {}
        self._edges = []
        self.origins = []
        self.dart_of = {}

    def add_vertex(self, slots, cells=None):
        index = len(self._slots)
        self._slots.append(list(slots))
        self._cells.append(cells)
        for slot in slots:
            self._vertex_of[slot] = index
        return index

    def copy_vertex(self, tag, graph, vertex, sigma=None, reflect=False):
        order = list(graph.darts_at(vertex))
        if reflect:
            order.reverse()
        cells = None
        if sigma is not None:
            cells = [[(tag, d) for d in cell] for cell in sigma.cells(vertex)]
        return self.add_vertex([(tag, d) for d in order], cells)

    def add_edge(self, first, second, origin=()):
        self._edges.append((first, second))
        self.origins.append(tuple(origin))
        return len(self._edges) - 1

    def copy_edge(self, tag, edge, origin=None):
        return self.add_edge((tag, 2 * edge), (tag, 2 * edge + 1), (edge,) if origin is None else origin)

    def build(self, embedded=True):
        self.dart_of = {}
        endpoints = []
        for k, (first, second) in enumerate(self._edges):
            endpoints.append((self._vertex_of[first], self._vertex_of[second]))
            self.dart_of[first] = 2 * k
            self.dart_of[second] = 2 * k + 1
        unmatched = [s for slots in self._slots for s in slots if s not in self.dart_of]
        if unmatched:
            raise RotationError(f"slots {unmatched} were never joined by an edge")

        rotations = None
        if embedded:
            rotations = [[self.dart_of[s] for s in slots] for slots in self._slots]
        graph = build_graph(endpoints, rotations, degree=self.degree, vertex_count=len(self._slots))

        sigma = None
        if all(cells is not None for cells in self._cells):
            sigma = OrientationAssignment.from_cells(
                graph, [[[self.dart_of[s] for s in cell] for cell in cells] for cells in self._cells]
            )
        return graph, sigma


def normalized_rotation(graph, sigma, vertex):
    """Rotation (p, q, r, s) at a vertex, started so the cells are {p,q} and {r,s}."""
    r = tuple(graph.rotation[vertex])
    if sigma.same_cell(r[0], r[1]):
        return r
    return r[1:] + r[:1]


def _smooth(graph, sigma, vertex):
    if not graph.embedded:
        raise ModeError("smoothing needs an embedded graph")
    loops = graph.loops_at(vertex)
    if len(loops) == 2:
        raise DoubleLoopError(f"vertex {vertex} carries two loops; smoothing it leaves no graph")

    assembler = _Assembler()
    for w in range(graph.vertex_count):
        if w != vertex:
            assembler.copy_vertex(0, graph, w, sigma)
    at_vertex = set(graph.edges_at(vertex))
    for e in range(graph.edge_count):
        if e not in at_vertex:
            assembler.copy_edge(0, e)

    if loops:
        f, g = [d for d in graph.darts_at(vertex) if d >> 1 != loops[0]]
        strands = (assembler.add_edge((0, f ^ 1), (0, g ^ 1), (f >> 1, g >> 1)),)
    else:
        p, q, r, s = normalized_rotation(graph, sigma, vertex)
        strands = (
            assembler.add_edge((0, q ^ 1), (0, r ^ 1), (q >> 1, r >> 1)),
            assembler.add_edge((0, s ^ 1), (0, p ^ 1), (s >> 1, p >> 1)),
        )
    smoothed, smoothed_sigma = assembler.build()
    return Smoothing(smoothed, smoothed_sigma, tuple(assembler.origins), strands)


def smooth(graph, sigma, vertex):
    """
    Smooth an oriented vertex.

    A plain vertex with rotation (p, q, r, s) and cells {p,q},{r,s} is
    removed and its edges are spliced along q-r and s-p. A loop-anchor loses
    its loop and its two remaining edges become one edge.

    Args:
        graph (PlaneGraph): Embedded graph
        sigma (OrientationAssignment): Orientation
        vertex (int): Vertex to smooth

    Returns:
        tuple: (smoothed graph, restricted orientation); vertices above `vertex` shift down by one

    Raises:
        DoubleLoopError: The vertex carries two loops
    """
    result = _smooth(graph, sigma, vertex)
    return result.graph, result.sigma


def connect_sum_edge(g1, e, g2, f, pairing=0, sigma1=None, sigma2=None):
    """
    Connected sum over edge e of g1 and edge f of g2.

    Both edges are cut and their ends cross-joined: pairing 0 joins the ends
    of darts (2e, 2f) and (2e+1, 2f+1), pairing 1 joins (2e, 2f+1) and
    (2e+1, 2f). The second summand is mirrored when that is needed to keep
    the result planar.

    Returns:
        Sum: graph, orientation (when both are given), the two new edge ids, edge origins
    """
    if pairing not in (0, 1):
        raise ValueError("pairing must be 0 or 1")
    embedded = g1.embedded and g2.embedded
    partners = (2 * f, 2 * f + 1) if pairing == 0 else (2 * f + 1, 2 * f)

    for reflect in (False, True) if embedded else (False,):
        assembler = _Assembler()
        for v in range(g1.vertex_count):
            assembler.copy_vertex(1, g1, v, sigma1)
        for v in range(g2.vertex_count):
            assembler.copy_vertex(2, g2, v, sigma2, reflect)
        for k in range(g1.edge_count):
            if k != e:
                assembler.copy_edge(1, k, ((1, k),))
        joined = (
            assembler.add_edge((1, 2 * e), (2, partners[0]), ((1, e), (2, f))),
            assembler.add_edge((1, 2 * e + 1), (2, partners[1]), ((1, e), (2, f))),
        )
        for k in range(g2.edge_count):
            if k != f:
                assembler.copy_edge(2, k, ((2, k),))
        try:
            graph, sigma = assembler.build(embedded)
        except GenusError:
            if reflect:
                raise
            continue
        return Sum(graph, sigma, joined, tuple(assembler.origins))


def connect_sum_vertex(g1, sigma1, e, g2, sigma2, f, transverse=True):
    """
    Vertex sum: cut edge e of g1 and edge f of g2 and join all four ends to a new vertex.

    The new vertex is the last vertex of the result. Its cells each reach
    both summands in the transverse form and stay inside one summand in
    the nontransverse form.

    Returns:
        Sum: graph, orientation, the new vertex id, edge origins
    """
    last_error = None
    for reflect in (False, True):
        for order in ((0, 1, 2, 3), (0, 1, 3, 2)):
            assembler = _Assembler()
            for v in range(g1.vertex_count):
                assembler.copy_vertex(1, g1, v, sigma1)
            for v in range(g2.vertex_count):
                assembler.copy_vertex(2, g2, v, sigma2, reflect)
            rotation = [('hub', i) for i in order]
            if transverse:
                cells = [[rotation[1], rotation[2]], [rotation[3], rotation[0]]]
            else:
                cells = [[rotation[0], rotation[1]], [rotation[2], rotation[3]]]
            hub = assembler.add_vertex(rotation, cells)
            for k in range(g1.edge_count):
                if k != e:
                    assembler.copy_edge(1, k, ((1, k),))
            for k in range(g2.edge_count):
                if k != f:
                    assembler.copy_edge(2, k, ((2, k),))
            assembler.add_edge(('hub', 0), (1, 2 * e), ((1, e),))
            assembler.add_edge(('hub', 1), (1, 2 * e + 1), ((1, e),))
            assembler.add_edge(('hub', 2), (2, 2 * f), ((2, f),))
            assembler.add_edge(('hub', 3), (2, 2 * f + 1), ((2, f),))
            try:
                graph, sigma = assembler.build()
            except GenusError as exc:
                last_error = exc
                continue
            return Sum(graph, sigma, hub, tuple(assembler.origins))
    raise last_error


def _half(graph, sigma, members, internal, link_darts, link_origin):
    assembler = _Assembler()
    for v in members:
        assembler.copy_vertex(0, graph, v, sigma)
    for e in internal:
        assembler.copy_edge(0, e)
    link = assembler.add_edge((0, link_darts[0]), (0, link_darts[1]), link_origin)
    half, half_sigma = assembler.build(graph.embedded)
    return half, half_sigma, tuple(assembler.origins), link


def split_two_edge_cut(graph, cut, sigma=None):
    """
    Split a graph at a 2-edge cut {e, f}.

    Each side keeps its vertices and internal edges and gains one edge
    joining its ends of e and f, which is a loop when those ends coincide.

    Args:
        graph (PlaneGraph): The graph
        cut (Separation or tuple): The cut, as a Separation or an edge pair
        sigma (OrientationAssignment): Optional orientation to restrict

    Returns:
        Split: both halves, their orientations, edge origins and the new edge of each half
    """
    if isinstance(cut, Separation):
        pair, side_of = cut.pivot, cut.side_of
    else:
        pair, side_of = tuple(cut), two_edge_cut_sides(graph, cut)
    e, f = pair

    halves = []
    for side in (1, 2):
        members = sorted(v for v, s in side_of.items() if s == side)
        internal = [
            k for k in range(graph.edge_count)
            if k not in pair and side_of[graph.endpoint[2 * k]] == side
        ]
        de = 2 * e if side_of[graph.endpoint[2 * e]] == side else 2 * e + 1
        df = 2 * f if side_of[graph.endpoint[2 * f]] == side else 2 * f + 1
        halves.append(_half(graph, sigma, members, internal, (de, df), (e, f)))
    (g1, s1, o1, l1), (g2, s2, o2, l2) = halves
    return Split(g1, s1, g2, s2, o1, o2, l1, l2)


def split_cut_vertex(graph, sigma, vertex):
    """
    Split a graph at a cut-vertex.

    Each side keeps its vertices and internal edges; its two edges at the
    cut-vertex are merged into one edge.

    Returns:
        Split: both halves, their orientations, edge origins and the merged edge of each half

    Raises:
        PreconditionError: The vertex is not a cut-vertex
    """
    side_of = cut_vertex_sides(graph, vertex)
    if side_of is None:
        raise PreconditionError(f"vertex {vertex} is not a cut-vertex")

    at_vertex = set(graph.edges_at(vertex))
    halves = []
    for side in (1, 2):
        members = sorted(v for v, s in side_of.items() if s == side)
        internal = [
            k for k in range(graph.edge_count)
            if k not in at_vertex and side_of[graph.endpoint[2 * k]] == side
        ]
        darts = [d for d in graph.darts_at(vertex) if side_of[graph.head(d)] == side]
        halves.append(_half(graph, sigma, members, internal,
                            (darts[0] ^ 1, darts[1] ^ 1), (darts[0] >> 1, darts[1] >> 1)))
    (g1, s1, o1, l1), (g2, s2, o2, l2) = halves
    return Split(g1, s1, g2, s2, o1, o2, l1, l2)


def remove_cycle(graph, sigma, cycle_edges):
    """
    Delete the edges of an o-cycle and suppress the vertices it passed through.

    At each suppressed vertex the two surviving edges become one. Strands
    that close up without meeting a surviving vertex are reported as free
    circles.

    Returns:
        Suppression: the reduced graph, its orientation, the old-edge chain behind each new edge,
        the free circles, the removed edges and the suppressed vertices
    """
    removed = frozenset(cycle_edges)
    on_cycle = set()
    for e in removed:
        on_cycle.update(graph.edge_ends(e))
    link = {}
    for w in on_cycle:
        rest = [d for d in graph.darts_at(w) if d >> 1 not in removed]
        if len(rest) != 2:
            raise PreconditionError(f"edges {sorted(removed)} do not pass vertex {w} exactly once")
        link[rest[0]], link[rest[1]] = rest[1], rest[0]

    def walk(start):
        chain = []
        dart = start
        while True:
            chain.append(dart >> 1)
            far = dart ^ 1
            if graph.endpoint[far] not in on_cycle:
                return chain, far
            dart = link[far]
            if dart == start:
                return chain, None

    assembler = _Assembler()
    kept = [v for v in range(graph.vertex_count) if v not in on_cycle]
    for v in kept:
        assembler.copy_vertex(0, graph, v, sigma)

    done = set()
    circles = []
    for e in range(graph.edge_count):
        if e in removed or e in done:
            continue
        forward, end = walk(2 * e)
        if end is None:
            done.update(forward)
            circles.append(tuple(sorted(set(forward))))
            continue
        backward, start = walk(2 * e + 1)
        chain = tuple(sorted(set(forward) | set(backward)))
        done.update(chain)
        assembler.add_edge((0, start), (0, end), chain)

    reduced, reduced_sigma = assembler.build(graph.embedded)
    return Suppression(reduced, reduced_sigma, tuple(assembler.origins), tuple(circles),
                       removed, tuple(sorted(on_cycle)))


def lift_after_removal(graph, suppression, colours):
    """
    Carry a colouring of the reduced graph back and colour the removed cycle.

    Free circles take the smallest colour in use; the removed cycle takes
    the smallest colour not seen at any of its vertices.

    Returns:
        tuple: (edge colours of `graph`, whether the cycle needed a colour outside the palette)
    """
    result = [None] * graph.edge_count
    for k, chain in enumerate(suppression.origins):
        for e in chain:
            result[e] = colours[k]
    circle_colour = min(colours, default=0)
    for circle in suppression.circles:
        for e in circle:
            result[e] = circle_colour

    palette = {c for c in result if c is not None}
    blocked = {
        result[d >> 1]
        for w in suppression.vertices
        for d in graph.darts_at(w)
        if d >> 1 not in suppression.removed
    }
    colour = 0
    while colour in blocked:
        colour += 1
    for e in suppression.removed:
        result[e] = colour
    return tuple(result), colour not in palette


def component_subgraphs(graph, sigma=None):
    """
    Split a graph into its connected components.

    Returns:
        list: (subgraph, orientation, old edge id per new edge) per component
    """
    pieces = []
    for members in components(graph):
        member_set = set(members)
        assembler = _Assembler(graph.degree)
        for v in members:
            assembler.copy_vertex(0, graph, v, sigma)
        edges = [k for k in range(graph.edge_count) if graph.endpoint[2 * k] in member_set]
        for k in edges:
            assembler.copy_edge(0, k)
        sub, sub_sigma = assembler.build(graph.embedded)
        pieces.append((sub, sub_sigma, tuple(edges)))
    return pieces


def tait_expand(graph, sigma):
    """
    Expand every oriented vertex into an edge of a cubic graph.

    Vertex v becomes x = 2v holding the darts of one cell and y = 2v+1
    holding the other, joined by new edge E+v. Old edge ids are kept.

    Args:
        graph (PlaneGraph): Graph without loops
        sigma (OrientationAssignment): Orientation

    Returns:
        tuple: (CubicGraph, frozenset of the new edge ids, which form a 1-factor)

    Raises:
        LoopAnchorError: The graph has a loop
    """
    for v in range(graph.vertex_count):
        if graph.loops_at(v):
            raise LoopAnchorError(f"vertex {v} carries a loop and cannot be expanded")

    assembler = _Assembler(degree=3)
    for v in range(graph.vertex_count):
        if graph.embedded:
            r = graph.rotation[v]
            start = 0 if sigma.same_cell(r[0], r[1]) else 1
            first = (r[start], r[(start + 1) % 4])
            second = (r[(start + 2) % 4], r[(start + 3) % 4])
        else:
            first, second = sigma.cells(v)
        assembler.add_vertex([(0, first[0]), (0, first[1]), ('new', v, 0)])
        assembler.add_vertex([(0, second[0]), (0, second[1]), ('new', v, 1)])
    for e in range(graph.edge_count):
        assembler.copy_edge(0, e)
    for v in range(graph.vertex_count):
        assembler.add_edge(('new', v, 0), ('new', v, 1))
    cubic, _ = assembler.build(graph.embedded)
    factor = frozenset(range(graph.edge_count, graph.edge_count + graph.vertex_count))
    return cubic, factor


def is_one_factor(cubic, factor):
    hits = [0] * cubic.vertex_count
    for e in factor:
        if not 0 <= e < cubic.edge_count or cubic.is_loop(e):
            return False
        for v in cubic.edge_ends(e):
            hits[v] += 1
    return all(h == 1 for h in hits)


def contraction_edges(cubic, factor):
    """Edges of the cubic graph that survive contraction, in new-edge order."""
    return [e for e in range(cubic.edge_count) if e not in factor]


def tait_contract(cubic, factor):
    """
    Contract a 1-factor of a cubic graph into oriented 4-valent vertices.

    The vertex made from factor edge f lists the two darts after f at its
    first end, then the two darts after f at its second end; each pair is
    a cell. New vertices follow the factor edges in id order.

    Returns:
        tuple: (PlaneGraph, OrientationAssignment)

    Raises:
        NotOneFactorError: `factor` is not a perfect matching
    """
    factor = frozenset(factor)
    if not is_one_factor(cubic, factor):
        raise NotOneFactorError(f"edges {sorted(factor)} are not a 1-factor")

    assembler = _Assembler(degree=4)
    for f in sorted(factor):
        sides = []
        for dart in (2 * f, 2 * f + 1):
            if cubic.embedded:
                after = cubic.rotation_next(dart)
                sides.append([after, cubic.rotation_next(after)])
            else:
                sides.append([d for d in cubic.darts_at(cubic.endpoint[dart]) if d != dart])
        slots = [(0, d) for d in sides[0] + sides[1]]
        assembler.add_vertex(slots, [slots[:2], slots[2:]])
    for e in contraction_edges(cubic, factor):
        assembler.copy_edge(0, e)
    return assembler.build(cubic.embedded)


def find_digons(cubic):
    """Vertex pairs (x, y), x < y, joined by exactly two parallel edges."""
    digons = []
    for x in range(cubic.vertex_count):
        counts = {}
        for e in cubic.edges_at(x):
            u, v = cubic.edge_ends(e)
            other = v if u == x else u
            if other > x:
                counts[other] = counts.get(other, 0) + 1
        digons.extend((x, y) for y, n in sorted(counts.items()) if n == 2)
    return digons


def reduce_digon(cubic, digon):
    """
    Replace a digon and its two outside edges by a single edge.

    Args:
        cubic (CubicGraph): Cubic graph
        digon (tuple): Two vertices joined by exactly two parallel edges

    Returns:
        DigonReduction: the reduced graph and what is needed to lift colourings back

    Raises:
        PreconditionError: The vertices are not a digon, or form the 2-vertex theta graph
    """
    x, y = digon
    shared = [e for e in cubic.edges_at(x) if set(cubic.edge_ends(e)) == {x, y} and x != y]
    if len(shared) == 3:
        raise PreconditionError("the 2-vertex theta graph has no smaller reduction")
    if len(shared) != 2:
        raise PreconditionError(f"vertices {x} and {y} do not form a digon")

    outer_x = next(d for d in cubic.darts_at(x) if d >> 1 not in shared)
    outer_y = next(d for d in cubic.darts_at(y) if d >> 1 not in shared)
    dropped = set(shared) | {outer_x >> 1, outer_y >> 1}

    assembler = _Assembler(degree=3)
    for v in range(cubic.vertex_count):
        if v not in (x, y):
            assembler.copy_vertex(0, cubic, v)
    for e in range(cubic.edge_count):
        if e not in dropped:
            assembler.copy_edge(0, e)
    link = assembler.add_edge((0, outer_x ^ 1), (0, outer_y ^ 1), (outer_x >> 1, outer_y >> 1))
    reduced, _ = assembler.build(cubic.embedded)
    return DigonReduction(reduced, (x, y), tuple(shared), (outer_x >> 1, outer_y >> 1), link,
                          tuple(assembler.origins), cubic.edge_count)


def lift_digon_colouring(reduction, colours):
    """
    Lift a 3-edge-colouring of a reduced graph through one digon reduction.

    Both outside edges take the colour of the joining edge; the digon
    edges take the other two colours in ascending order.
    """
    result = [None] * reduction.edge_count
    for k, origin in enumerate(reduction.origins):
        for e in origin:
            result[e] = colours[k]
    through = colours[reduction.link]
    rest = [c for c in COLOURS3 if c != through]
    for e, c in zip(reduction.digon_edges, rest):
        result[e] = c
    return tuple(result)


def perfect_matchings(cubic):
    """
    Enumerate the perfect matchings of a cubic graph.

    Backtracks on the smallest unmatched vertex, trying its edges in id order.

    Yields:
        frozenset: Edge ids of one matching
    """
    matched = [False] * cubic.vertex_count
    chosen = []

    def search():
        try:
            u = matched.index(False)
        except ValueError:
            yield frozenset(chosen)
            return
        matched[u] = True
        for e in cubic.edges_at(u):
            if cubic.is_loop(e):
                continue
            a, b = cubic.edge_ends(e)
            w = b if a == u else a
            if matched[w]:
                continue
            matched[w] = True
            chosen.append(e)
            yield from search()
            chosen.pop()
            matched[w] = False
        matched[u] = False

    yield from search()


def is_proper_edge_colouring(cubic, colours):
    if len(colours) != cubic.edge_count:
        return False
    for v in range(cubic.vertex_count):
        seen = [colours[d >> 1] for d in cubic.darts_at(v)]
        if len(set(seen)) != cubic.degree:
            return False
    return True


def three_edge_colourings(cubic):
    """
    Enumerate the proper 3-edge-colourings of a cubic graph by backtracking in edge order.

    Yields:
        tuple: Colour in {0, 1, 2} per edge
    """
    if any(cubic.is_loop(e) for e in range(cubic.edge_count)):
        return
    colours = [None] * cubic.edge_count
    used = [set() for _ in range(cubic.vertex_count)]

    def search(e):
        if e == cubic.edge_count:
            yield tuple(colours)
            return
        u, v = cubic.edge_ends(e)
        for c in COLOURS3:
            if c in used[u] or c in used[v]:
                continue
            colours[e] = c
            used[u].add(c)
            used[v].add(c)
            yield from search(e + 1)
            used[u].discard(c)
            used[v].discard(c)
            colours[e] = None

    yield from search(0)


def lift_to_o_colouring(cubic, factor, edge_colouring):
    """
    Contract a 1-factor and keep the colours of the surviving edges.

    Returns:
        OColouring: A colouring of tait_contract(cubic, factor) with the same palette

    Raises:
        ValidationError: The edge colouring is not proper
    """
    edge_colouring = tuple(edge_colouring)
    if not is_proper_edge_colouring(cubic, edge_colouring):
        raise ValidationError("edge colouring is not a proper 3-edge-colouring")
    graph, sigma = tait_contract(cubic, factor)
    colours = [edge_colouring[e] for e in contraction_edges(cubic, frozenset(factor))]
    return ocolouring_from_edge_colours(graph, sigma, colours)


def push_to_edge_colouring(cubic, factor, colouring):
    """
    Turn an o-colouring with at most three colours into a 3-edge-colouring.

    Each factor edge takes the colour missing at its contracted vertex.

    Args:
        cubic (CubicGraph): Cubic graph
        factor (frozenset): 1-factor used for the contraction
        colouring (OColouring or sequence): Colours of the contracted graph's edges

    Returns:
        tuple: Colour per cubic edge

    Raises:
        ValidationError: The colouring is invalid or uses more than three colours
    """
    factor = frozenset(factor)
    graph, sigma = tait_contract(cubic, factor)
    colours = list(colouring.edge_colours if isinstance(colouring, OColouring) else colouring)
    reason = explain_o_colouring(graph, sigma, colours)
    if reason is not None:
        raise ValidationError(reason)
    palette = sorted(set(colours))
    if len(palette) > 3:
        raise ValidationError(f"o-colouring uses {len(palette)} colours, at most 3 allowed")
    if not set(palette) <= set(COLOURS3):
        rename = {c: i for i, c in enumerate(palette)}
        colours = [rename[c] for c in colours]

    result = [None] * cubic.edge_count
    for c, e in zip(colours, contraction_edges(cubic, factor)):
        result[e] = c
    for f in factor:
        x = cubic.endpoint[2 * f]
        around = {result[d >> 1] for d in cubic.darts_at(x) if d >> 1 != f}
        missing = [c for c in COLOURS3 if c not in around]
        if len(missing) != 1:
            raise ValidationError(f"factor edge {f} has no unique missing colour")
        result[f] = missing[0]
    if not is_proper_edge_colouring(cubic, result):
        raise ValidationError("pushed colouring is not proper")
    return tuple(result)

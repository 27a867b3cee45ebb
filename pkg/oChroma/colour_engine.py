"""
Constructive o-colouring of vertex-oriented graphs without nontransverse
cut-vertices or loop-anchors.

The engine reduces a graph step by step: base graphs, cut-vertices,
loop-anchors, 2-edge cuts, then the three vertex patterns (flype frame,
straddling frame, neither). Every step colours smaller graphs, merges the
results and checks them; a step whose assumptions fail hands over to an
exhaustive decomposition search so a colouring always comes back.
"""

import itertools
import logging
from collections import namedtuple
from dataclasses import dataclass, field

import networkx as nx

from oChroma import config
from oChroma.errors import (
    OChromaError, ModeError, PreconditionError, ValidationError, PatternError, GenusError,
)
from oChroma.plane_graph import (
    articulation_points, components, faces, is_connected, two_edge_cuts, _sides,
)
from oChroma.orientation import is_vogwoc, offending_vertices
from oChroma.ocycle import (
    OColouring, chi_o, colour_class_cycles, exact_colouring, explain_o_colouring,
    intersection_graph, ocolouring_from_edge_colours, alternating_colouring,
    validate_o_colouring,
)
from oChroma.transforms import (
    Split, _Assembler, _smooth, normalized_rotation, split_cut_vertex, split_two_edge_cut,
    remove_cycle, lift_after_removal, component_subgraphs,
)

logger = logging.getLogger(__name__)

BASE = 'base'
TWO_EDGE_CUT = 'two_edge_cut'
CUT_VERTEX = 'cut_vertex'
LOOP_ANCHOR = 'loop_anchor'
CASE1_FLYPE = 'case1_flype'
CASE2_I = 'case2_i'
CASE2_II = 'case2_ii'
CASE2_III = 'case2_iii'
CASE3_CHAIN = 'case3_chain'
FALLBACK = 'fallback_exhaustive'

CASE1 = 'case1'
CASE2 = 'case2'
CASE3 = 'case3'

CaseMatch = namedtuple('CaseMatch', ['kind', 'vertex', 'top', 'bottom', 'side_of'])
OTriple = namedtuple('OTriple', ['p1', 'p2', 'p3'])
ChainDecomposition = namedtuple('ChainDecomposition', ['cycles', 'groups'])


@dataclass
class TraceStep:
    """One reduction performed by the engine."""
    depth: int
    tag: str
    pivot: object = None
    palette: int = 0
    detail: str = ''
    new_colour: bool = False

    def to_text(self):
        line = f"{'  ' * self.depth}{self.tag} pivot={_pivot_text(self.pivot)} palette={self.palette}"
        if self.detail:
            line += f" {self.detail}"
        if self.new_colour:
            line += " +colour"
        return line


@dataclass
class EngineTrace:
    """
    Record of the reductions behind one o-colouring, in the order they started.

    Attributes:
        steps (list): TraceStep values, children indented one level deeper
        palette_size (int): Colours in the final colouring
    """
    steps: list = field(default_factory=list)
    palette_size: int = 0

    @property
    def fallback_count(self):
        return sum(1 for step in self.steps if step.tag == FALLBACK)

    @property
    def new_colour_events(self):
        return [step for step in self.steps if step.new_colour]

    def tags(self):
        return [step.tag for step in self.steps]

    def to_text(self):
        return ''.join(step.to_text() + '\n' for step in self.steps)


def _pivot_text(pivot):
    if pivot is None:
        return '-'
    if isinstance(pivot, (tuple, list)):
        return ','.join(str(p) for p in pivot)
    return str(pivot)


def _palette(colours):
    return len(set(colours))


def _pullback(edge_count, origins, colours, result=None):
    """Give every old edge the colour of the new edge standing for it."""
    result = list(result) if result is not None else [None] * edge_count
    for k, origin in enumerate(origins):
        for e in origin:
            result[e] = colours[k]
    return result


def _smallest_outside(blocked):
    colour = 0
    while colour in blocked:
        colour += 1
    return colour


def _as_colours(colouring):
    if isinstance(colouring, OColouring):
        return tuple(colouring.edge_colours)
    return tuple(colouring)


def _pieces_vogwoc(graph, sigma):
    """is_vogwoc for every component of a possibly disconnected graph."""
    for sub, sub_sigma, _ in component_subgraphs(graph, sigma):
        if not is_vogwoc(sub, sub_sigma):
            return False
    return True


def _offending(graph, sigma):
    """Nontransverse cut-vertices and loop-anchors over all components."""
    bad = []
    for members, (sub, sub_sigma, _) in zip(components(graph), component_subgraphs(graph, sigma)):
        bad.extend(members[w] for w in offending_vertices(sub, sub_sigma))
    return sorted(bad)


def _merge_two_edge_cut(graph, split, col1, col2):
    a = col1[split.link1]
    b = col2[split.link2]
    rename = {b: a}
    spare = (c for c in itertools.count() if c != a)
    for colour in sorted(set(col2) - {b}):
        rename[colour] = next(spare)
    result = _pullback(graph.edge_count, split.origin1, col1)
    return tuple(_pullback(graph.edge_count, split.origin2, [rename[c] for c in col2], result))


def merge_two_edge_cut(graph, sigma, split, colouring1, colouring2):
    """
    Combine colourings of the two halves of a 2-edge cut.

    The second half's colours are permuted so its new edge takes the colour
    of the first half's new edge; both cut edges then carry that colour.

    Args:
        graph (PlaneGraph): The graph that was split
        sigma (OrientationAssignment): Its orientation
        split (Split): Result of split_two_edge_cut
        colouring1 (OColouring or sequence): Colouring of split.g1
        colouring2 (OColouring or sequence): Colouring of split.g2

    Returns:
        OColouring: A colouring of `graph`
    """
    colours = _merge_two_edge_cut(graph, split, _as_colours(colouring1), _as_colours(colouring2))
    return ocolouring_from_edge_colours(graph, sigma, colours)


def _merge_cut_vertex(graph, split, col1, col2):
    a = col1[split.link1]
    second = [c for c in sorted(set(col1)) if c != a]
    c2 = second[0] if second else _smallest_outside({a})
    rename = {col2[split.link2]: c2}
    spare = (c for c in itertools.count() if c != c2)
    for colour in sorted(set(col2) - {col2[split.link2]}):
        rename[colour] = next(spare)
    result = _pullback(graph.edge_count, split.origin1, col1)
    return tuple(_pullback(graph.edge_count, split.origin2, [rename[c] for c in col2], result))


def merge_cut_vertex(graph, sigma, split, colouring1, colouring2):
    """
    Combine colourings of the two sides of a transverse cut-vertex.

    The cut-vertex sees colour c1 on the edges of one side and a second
    colour c2 of the first side's palette on the edges of the other.

    Args:
        graph (PlaneGraph): The graph that was split
        sigma (OrientationAssignment): Its orientation
        split (Split): Result of split_cut_vertex
        colouring1 (OColouring or sequence): Colouring of split.g1
        colouring2 (OColouring or sequence): Colouring of split.g2

    Returns:
        OColouring: A colouring of `graph`
    """
    colours = _merge_cut_vertex(graph, split, _as_colours(colouring1), _as_colours(colouring2))
    return ocolouring_from_edge_colours(graph, sigma, colours)


def _frame(graph, vertex, top):
    """Bottom edge and sides closing a frame around `vertex` with `top`, or None."""
    reduced = graph.to_networkx()
    reduced.remove_node(vertex)
    u, w = graph.edge_ends(top)
    reduced.remove_edge(u, w, key=top)
    if reduced.number_of_nodes() == 0 or not nx.is_connected(reduced):
        return None
    for a, b in sorted(tuple(sorted(pair)) for pair in nx.bridges(reduced)):
        keys = list(reduced[a][b])
        if len(keys) != 1:
            continue
        bottom = keys[0]
        rest = reduced.copy()
        rest.remove_edge(a, b, key=bottom)
        pieces = list(nx.connected_components(rest))
        if len(pieces) != 2:
            continue
        side_of = _sides(pieces)
        if side_of[u] == side_of[w]:
            continue
        reach = [side_of[graph.head(d)] for d in graph.darts_at(vertex)]
        if sorted(reach) != [1, 1, 2, 2]:
            continue
        return bottom, side_of
    return None


def detect_case(graph, sigma):
    """
    Look for a vertex framed by a top and a bottom edge.

    Removing the vertex and the two edges must leave two pieces, each
    reached by two of the vertex's edges. When each cell of the vertex stays
    inside one piece the frame is a flype frame; when each cell reaches both
    pieces it is a straddling frame.

    Args:
        graph (PlaneGraph): Loopless 3-edge-connected graph without cut-vertices
        sigma (OrientationAssignment): Orientation

    Returns:
        CaseMatch: The first flype frame, else the first straddling frame, else kind CASE3
    """
    straddling = None
    for vertex in range(graph.vertex_count):
        at_vertex = set(graph.edges_at(vertex))
        for top in range(graph.edge_count):
            if top in at_vertex:
                continue
            found = _frame(graph, vertex, top)
            if found is None:
                continue
            bottom, side_of = found
            cells = sigma.cells(vertex)
            if all(len({side_of[graph.head(d)] for d in cell}) == 1 for cell in cells):
                logger.debug("flype frame at vertex %d, edges %d/%d", vertex, top, bottom)
                return CaseMatch(CASE1, vertex, top, bottom, side_of)
            if straddling is None:
                straddling = CaseMatch(CASE2, vertex, top, bottom, side_of)
    if straddling is not None:
        logger.debug("straddling frame at vertex %d", straddling.vertex)
        return straddling
    return CaseMatch(CASE3, None, None, None, None)


def _flype_half(graph, sigma, match, side):
    v = match.vertex
    members = sorted(w for w, s in match.side_of.items() if s == side)
    member_set = set(members)
    inner = [d for d in graph.darts_at(v) if graph.head(d) in member_set]
    ends = {}
    for tag, edge in (('top', match.top), ('bottom', match.bottom)):
        ends[tag] = 2 * edge if graph.endpoint[2 * edge] in member_set else 2 * edge + 1

    rotation = list(graph.rotation[v])
    start = next(i for i in range(4) if rotation[i] not in inner and rotation[(i + 1) % 4] not in inner)
    last_error = None
    for order in (('top', 'bottom'), ('bottom', 'top')):
        slots = [(0, d) for d in rotation]
        slots[start] = (order[0],)
        slots[(start + 1) % 4] = (order[1],)
        assembler = _Assembler()
        for w in members:
            assembler.copy_vertex(0, graph, w, sigma)
        assembler.add_vertex(slots, [[(0, d) for d in inner], [('top',), ('bottom',)]])
        for e in range(graph.edge_count):
            if e in (match.top, match.bottom):
                continue
            if all(w in member_set or w == v for w in graph.edge_ends(e)):
                assembler.copy_edge(0, e)
        links = (
            assembler.add_edge(('top',), (0, ends['top']), (match.top,)),
            assembler.add_edge(('bottom',), (0, ends['bottom']), (match.bottom,)),
        )
        try:
            half, half_sigma = assembler.build()
        except GenusError as exc:
            last_error = exc
            continue
        return half, half_sigma, tuple(assembler.origins), links
    raise last_error


def split_flype(graph, sigma, match):
    """
    Split a flype frame into its two sides.

    Each side keeps its vertices and gets a copy of the framed vertex that
    holds the side's own cell plus the side's ends of the top and bottom
    edges, which form the copy's second cell.

    Returns:
        Split: halves with link1/link2 the (top, bottom) edge ids of each half

    Raises:
        PatternError: The match is not a flype frame
    """
    if match.kind != CASE1:
        raise PatternError(f"{match.kind} match is not a flype frame")
    g1, s1, o1, l1 = _flype_half(graph, sigma, match, 1)
    g2, s2, o2, l2 = _flype_half(graph, sigma, match, 2)
    return Split(g1, s1, g2, s2, o1, o2, l1, l2)


def _merge_flype(graph, split, col1, col2):
    x, y = col1[split.link1[0]], col1[split.link1[1]]
    if x == y:
        raise PatternError("top and bottom edges share a colour at the framed vertex")
    rename = {col2[split.link2[0]]: x, col2[split.link2[1]]: y}
    spare = (c for c in itertools.count() if c not in (x, y))
    for colour in sorted(set(col2) - set(rename)):
        rename[colour] = next(spare)
    result = _pullback(graph.edge_count, split.origin1, col1)
    return tuple(_pullback(graph.edge_count, split.origin2, [rename[c] for c in col2], result))


def merge_flype(graph, sigma, split, colouring1, colouring2):
    """
    Combine colourings of the two sides of a flype frame.

    The top and bottom edges are distinct colours x and y in the first
    side; the second side's colours are permuted to agree on them.

    Returns:
        OColouring: A colouring of `graph`

    Raises:
        PatternError: The first side gives top and bottom the same colour
    """
    colours = _merge_flype(graph, split, _as_colours(colouring1), _as_colours(colouring2))
    return ocolouring_from_edge_colours(graph, sigma, colours)


class _Engine:
    """Recursive colouring with a shared trace."""

    def __init__(self, allow_fallback=True):
        self.allow_fallback = allow_fallback
        self.trace = EngineTrace()

    def _step(self, depth, tag, pivot=None, detail=''):
        step = TraceStep(depth, tag, pivot, detail=detail)
        self.trace.steps.append(step)
        logger.debug("%s%s at %s", '  ' * depth, tag, _pivot_text(pivot))
        return step

    def colour(self, graph, sigma, depth=0):
        """Edge colours of an o-colouring of `graph`, which may be disconnected."""
        if graph.vertex_count == 0:
            return ()
        if not is_connected(graph):
            result = [None] * graph.edge_count
            for sub, sub_sigma, edges in component_subgraphs(graph, sigma):
                for e, c in zip(edges, self.colour(sub, sub_sigma, depth)):
                    result[e] = c
            return tuple(result)

        mark = len(self.trace.steps)
        try:
            if not is_vogwoc(graph, sigma):
                raise PatternError(f"vertices {offending_vertices(graph, sigma)} are oriented nontransversely")
            colours = self._reduce(graph, sigma, depth)
            reason = explain_o_colouring(graph, sigma, colours)
            if reason is not None:
                raise ValidationError(reason)
            return colours
        except OChromaError as exc:
            if not self.allow_fallback:
                raise
            del self.trace.steps[mark:]
            logger.info("falling back to exhaustive search on %r: %s", graph, exc)
            step = self._step(depth, FALLBACK, None, detail=type(exc).__name__)
            _, witness = chi_o(graph, sigma)
            step.palette = witness.size
            return tuple(witness.edge_colours)

    def _recurse(self, graph, child, child_sigma, depth):
        if child.vertex_count >= graph.vertex_count:
            raise PatternError(
                f"reduction did not shrink the graph ({child.vertex_count} >= {graph.vertex_count} vertices)"
            )
        return self.colour(child, child_sigma, depth)

    def _reduce(self, graph, sigma, depth):
        if graph.vertex_count == 1:
            step = self._step(depth, BASE, 0)
            colours = [None] * graph.edge_count
            for colour, e in enumerate(sorted(graph.loops_at(0))):
                colours[e] = colour
            step.palette = 2
            return tuple(colours)

        if graph.vertex_count == 2 and graph.edge_count == 4 and not any(
                graph.is_loop(e) for e in range(4)):
            step = self._step(depth, BASE, (0, 1))
            step.palette = 2
            return alternating_colouring(graph)

        cut_vertices = articulation_points(graph)
        if cut_vertices:
            vertex = cut_vertices[0]
            step = self._step(depth, CUT_VERTEX, vertex)
            split = split_cut_vertex(graph, sigma, vertex)
            col1 = self._recurse(graph, split.g1, split.sigma1, depth + 1)
            col2 = self._recurse(graph, split.g2, split.sigma2, depth + 1)
            colours = _merge_cut_vertex(graph, split, col1, col2)
            step.palette = _palette(colours)
            return colours

        anchors = [v for v in range(graph.vertex_count) if graph.loops_at(v)]
        if anchors:
            return self._loop_anchor(graph, sigma, anchors[0], depth)

        cuts = two_edge_cuts(graph)
        if cuts:
            step = self._step(depth, TWO_EDGE_CUT, cuts[0])
            split = split_two_edge_cut(graph, cuts[0], sigma)
            col1 = self._recurse(graph, split.g1, split.sigma1, depth + 1)
            col2 = self._recurse(graph, split.g2, split.sigma2, depth + 1)
            colours = _merge_two_edge_cut(graph, split, col1, col2)
            step.palette = _palette(colours)
            return colours

        match = detect_case(graph, sigma)
        if match.kind == CASE1:
            step = self._step(depth, CASE1_FLYPE, (match.vertex, match.top, match.bottom))
            split = split_flype(graph, sigma, match)
            col1 = self._recurse(graph, split.g1, split.sigma1, depth + 1)
            col2 = self._recurse(graph, split.g2, split.sigma2, depth + 1)
            colours = _merge_flype(graph, split, col1, col2)
            step.palette = _palette(colours)
            return colours
        if match.kind == CASE2:
            return self._case2(graph, sigma, match, depth)
        return self._case3(graph, sigma, depth)

    def _loop_anchor(self, graph, sigma, vertex, depth):
        step = self._step(depth, LOOP_ANCHOR, vertex)
        smoothing = _smooth(graph, sigma, vertex)
        sub = self._recurse(graph, smoothing.graph, smoothing.sigma, depth + 1)
        colours = _pullback(graph.edge_count, smoothing.origins, sub)
        strand = sub[smoothing.strands[0]]
        others = [c for c in sorted(set(sub)) if c != strand]
        loop_colour = others[0] if others else _smallest_outside({strand})
        step.new_colour = not others
        for e in graph.loops_at(vertex):
            colours[e] = loop_colour
        step.palette = _palette(colours)
        return tuple(colours)

    def _case2(self, graph, sigma, match, depth):
        v = match.vertex
        smoothing = _smooth(graph, sigma, v)
        p, q, r, s = normalized_rotation(graph, sigma, v)
        side = match.side_of
        if side[graph.head(q)] != side[graph.head(r)] or side[graph.head(s)] != side[graph.head(p)]:
            raise PatternError(f"smoothing vertex {v} joins edges from different sides")
        step = self._step(depth, CASE2_I, v)
        sub = list(self._recurse(graph, smoothing.graph, smoothing.sigma, depth + 1))
        colours = self._case2_recolour(graph, sigma, match, smoothing, sub, depth, step)
        step.palette = _palette(colours)
        return colours

    def _case2_recolour(self, graph, sigma, match, smoothing, sub, depth, step):
        v = match.vertex
        small = smoothing.graph
        p, q, r, s = normalized_rotation(graph, sigma, v)
        qr_side = match.side_of[graph.head(q)]
        n_qr, n_sp = smoothing.strands
        index_of = {origin[0]: k for k, origin in enumerate(smoothing.origins) if len(origin) == 1}
        top = index_of[match.top]
        c1, c2, c3 = sub[n_sp], sub[n_qr], sub[top]
        palette = set(sub)

        def old(w):
            return w + 1 if w >= v else w

        def inside(k, which):
            return all(match.side_of[old(w)] == which for w in small.edge_ends(k))

        if c1 != c2:
            step.tag = CASE2_I
        elif c2 != c3:
            step.tag = CASE2_II
            c = _smallest_outside({c2, c3})
            step.new_colour = c not in palette
            step.detail = f"swap={c2}/{c}"
            for k in range(small.edge_count):
                if inside(k, qr_side) and sub[k] in (c2, c):
                    sub[k] = c if sub[k] == c2 else c2
        else:
            step.tag = CASE2_III
            cycles = colour_class_cycles(small, sub)
            frame = next(cycle for cycle, _ in cycles if top in cycle.edges)
            target = None
            for strand, which in ((n_qr, qr_side), (n_sp, 3 - qr_side)):
                if strand not in frame.edges:
                    target = (strand, which)
                    break
            if target is None:
                return self._remove_and_recolour(graph, sigma, smoothing, cycles, frame, v, depth, step)
            strand, which = target
            interior = [
                cycle for cycle, _ in cycles
                if cycle != frame and all(match.side_of[old(w)] == which for w in cycle.vertices)
            ]
            forbidden = {}
            for index, cycle in enumerate(interior):
                if cycle.vertex_set & frame.vertex_set or strand in cycle.edges:
                    forbidden[index] = {c3}
            recoloured = exact_colouring(intersection_graph(interior), forbidden=forbidden)
            if recoloured is None:
                raise PatternError(f"interior cycles at vertex {v} cannot avoid colour {c3}")
            for index, cycle in enumerate(interior):
                for k in cycle.edges:
                    sub[k] = recoloured[index]
            step.detail = f"recoloured={len(interior)}"
            step.new_colour = not set(sub) <= palette

        return tuple(_pullback(graph.edge_count, smoothing.origins, sub))

    def _remove_and_recolour(self, graph, sigma, smoothing, cycles, frame, v, depth, step):
        """Remove one o-cycle other than `frame`, colour the rest, put the cycle back."""
        def old(w):
            return w + 1 if w >= v else w

        for cycle, _ in sorted(cycles, key=lambda pair: pair[0].sort_key()):
            if cycle == frame:
                continue
            edges = {e for k in cycle.edges for e in smoothing.origins[k]}
            found = self._try_removal(graph, sigma, edges, depth, step,
                                      f"removed={_pivot_text(sorted(old(w) for w in cycle.vertices))}")
            if found is not None:
                return found
        raise PatternError(f"no o-cycle can be removed at vertex {v}")

    def _try_removal(self, graph, sigma, edges, depth, step, detail):
        try:
            suppression = remove_cycle(graph, sigma, edges)
        except PreconditionError:
            return None
        if not _pieces_vogwoc(suppression.graph, suppression.sigma):
            return None
        sub = self._recurse(graph, suppression.graph, suppression.sigma, depth + 1)
        colours, grew = lift_after_removal(graph, suppression, sub)
        step.detail = detail
        step.new_colour = grew
        return colours

    def _case3_vertex(self, graph, sigma):
        preferred = set()
        for face in faces(graph):
            if len(face) != 3 or len({graph.endpoint[d] for d in face}) != 3:
                continue
            for i, dart in enumerate(face):
                arrival = face[i - 1] ^ 1
                if not sigma.same_cell(arrival, dart):
                    preferred.add(graph.endpoint[dart])
        rest = [w for w in range(graph.vertex_count) if w not in preferred]
        for vertex in sorted(preferred) + rest:
            smoothing = _smooth(graph, sigma, vertex)
            if _pieces_vogwoc(smoothing.graph, smoothing.sigma):
                return vertex, smoothing
        raise PatternError("no vertex smooths to a graph with transverse cut-vertices")

    def _case3(self, graph, sigma, depth):
        v, smoothing = self._case3_vertex(graph, sigma)
        step = self._step(depth, CASE3_CHAIN, v)
        sub = list(self._recurse(graph, smoothing.graph, smoothing.sigma, depth + 1))
        colours = self._lift_smoothed(graph, sigma, v, smoothing, sub, depth, step)
        step.palette = _palette(colours)
        return colours

    def _lift_smoothed(self, graph, sigma, v, smoothing, sub, depth, step):
        small = smoothing.graph
        n_qr, n_sp = smoothing.strands
        x = sub[n_qr]

        if sub[n_sp] != x:
            step.detail = 'lift'
            return tuple(_pullback(graph.edge_count, smoothing.origins, sub))

        cycles = colour_class_cycles(small, sub)
        strand_cycle = next(cycle for cycle, _ in cycles if n_qr in cycle.edges)
        if n_sp not in strand_cycle.edges:
            blocked = {x}
            for w in strand_cycle.vertices:
                blocked.update(sub[d >> 1] for d in small.darts_at(w) if d >> 1 not in strand_cycle.edges)
            colour = _smallest_outside(blocked)
            step.detail = 'recolour'
            step.new_colour = colour not in sub
            for k in strand_cycle.edges:
                sub[k] = colour
            return tuple(_pullback(graph.edge_count, smoothing.origins, sub))

        return self._split_strand_cycle(graph, sigma, v, smoothing, sub, strand_cycle, cycles, depth, step)

    def _split_strand_cycle(self, graph, sigma, v, smoothing, sub, strand_cycle, cycles, depth, step):
        colours = _pullback(graph.edge_count, smoothing.origins, sub)
        on_c0 = {e for k in strand_cycle.edges for e in smoothing.origins[k]}
        darts = {}
        for e in on_c0:
            for d in (2 * e, 2 * e + 1):
                darts.setdefault(graph.endpoint[d], []).append(d)

        p, q, r, s = normalized_rotation(graph, sigma, v)
        first = _walk_piece(graph, darts, v, r)
        arrival = first[-1] ^ 1
        remaining = sorted(d for d in (p, q, s) if d != arrival)
        second = _walk_piece(graph, darts, v, remaining[0])

        if not sigma.same_cell(r, arrival):
            # both halves already pass v through different cells
            piece_edges = {d >> 1 for d in second}
            blocked = {colours[first[0] >> 1]}
            for d in second[1:]:
                w = graph.endpoint[d]
                blocked.update(colours[a >> 1] for a in graph.darts_at(w) if a >> 1 not in piece_edges)
            colour = _smallest_outside(blocked)
            for e in piece_edges:
                colours[e] = colour
            step.detail = 'split'
            step.new_colour = colour not in sub
            return tuple(colours)

        others = []
        for cycle, _ in sorted(cycles, key=lambda pair: pair[0].sort_key()):
            if cycle == strand_cycle:
                continue
            others.append({e for k in cycle.edges for e in smoothing.origins[k]})

        for edges in others:
            found = self._try_removal(graph, sigma, edges, depth, step,
                                      f"removed={_pivot_text(sorted(_vertices_of(graph, edges)))}")
            if found is not None:
                return found

        for chain in chain_decompositions(graph, v, first, second, others):
            found = self._chain_search(graph, sigma, v, chain, depth, step)
            if found is not None:
                return found
        raise PatternError(f"no o-triple through vertex {v} leaves a graph with transverse cut-vertices")

    def _chain_search(self, graph, sigma, v, chain, depth, step):
        c1, c2, c3 = chain.cycles
        triples = o_triples(graph, sigma, v, c1, c2, c3)
        on_c1 = {graph.endpoint[d] for d in c1} - {v}
        on_c2 = set(c2)
        index = 0
        while index < len(triples):
            triple = triples[index]
            cycle_darts = triple.p1 + triple.p2 + triple.p3
            edges = {d >> 1 for d in cycle_darts}
            suppression = remove_cycle(graph, sigma, edges)
            if _pieces_vogwoc(suppression.graph, suppression.sigma):
                sub = self._recurse(graph, suppression.graph, suppression.sigma, depth + 1)
                colours, grew = lift_after_removal(graph, suppression, sub)
                step.detail = f"chain triple={index + 1}/{len(triples)}"
                step.new_colour = grew
                return colours

            kept = [w for w in range(graph.vertex_count) if w not in suppression.vertices]
            z = kept[_offending(suppression.graph, suppression.sigma)[0]]
            ahead = None
            if z in on_c1:
                ahead = next((j for j in range(index + 1, len(triples))
                              if triples[j].p1[0] == triple.p1[0] and _terminal(graph, triples[j].p1) == z), None)
            elif z in on_c2:
                ahead = next((j for j in range(index + 1, len(triples))
                              if triples[j].p1 == triple.p1 and _terminal(graph, triples[j].p2) == z), None)
            following = index + 1 if ahead is None else ahead
            assert following > index
            index = following
        return None

    def run(self, graph, sigma):
        return self.colour(graph, sigma, 0)


def _vertices_of(graph, edges):
    return {w for e in edges for w in graph.edge_ends(e)}


def _terminal(graph, darts):
    return graph.endpoint[darts[-1] ^ 1]


def _walk_piece(graph, darts, vertex, start):
    """Follow a closed walk from `vertex` out along `start` until it returns to `vertex`."""
    walk = [start]
    dart = start
    while graph.endpoint[dart ^ 1] != vertex:
        arrival = dart ^ 1
        dart = next(d for d in darts[graph.endpoint[arrival]] if d != arrival)
        walk.append(dart)
    return walk


def chain_decompositions(graph, vertex, first, second, others):
    """
    Chains C1, C2, C3 linking the two halves of a split o-cycle through one other o-cycle.

    Args:
        graph (PlaneGraph): The graph
        vertex (int): The vertex both halves pass through
        first (list): Departure darts of the first half, starting at `vertex`
        second (list): Departure darts of the second half
        others (list): Edge sets of the remaining o-cycles

    Returns:
        list: ChainDecomposition values, one per middle cycle meeting both halves
    """
    meet = nx.Graph()
    vertex_sets = {
        'first': {graph.endpoint[d] for d in first} - {vertex},
        'second': {graph.endpoint[d] for d in second} - {vertex},
    }
    for index, edges in enumerate(others):
        vertex_sets[index] = _vertices_of(graph, edges)
    meet.add_nodes_from(vertex_sets)
    for a, b in itertools.combinations(vertex_sets, 2):
        if vertex_sets[a] & vertex_sets[b]:
            meet.add_edge(a, b)

    chains = []
    for middle in sorted(n for n in nx.common_neighbors(meet, 'first', 'second')):
        edges = others[middle]
        darts = {}
        for e in edges:
            for d in (2 * e, 2 * e + 1):
                darts.setdefault(graph.endpoint[d], []).append(d)
        groups = (
            sorted(vertex_sets['first'] & vertex_sets[middle]),
            sorted(vertex_sets[middle] & vertex_sets['second']),
        )
        chains.append(ChainDecomposition((first, darts, second), groups))
    return chains


def o_triples(graph, sigma, vertex, c1, c2, c3):
    """
    Every o-cycle made of a path along C1 from `vertex`, a path along C2 and a path along C3 back.

    Args:
        graph (PlaneGraph): The graph
        sigma (OrientationAssignment): Orientation
        vertex (int): Start and end vertex
        c1 (list): Departure darts of C1 from `vertex`
        c2 (dict): Darts of C2 at each of its vertices
        c3 (list): Departure darts of C3 from `vertex`

    Returns:
        list: OTriple values ordered by the lengths of their first and second paths
    """
    c3_next = {}
    c3_prev = {}
    for d in c3:
        c3_next[graph.endpoint[d]] = d
        c3_prev[graph.endpoint[d ^ 1]] = d ^ 1

    found = []
    for start in sorted({c1[0], c1[-1] ^ 1}):
        p1 = _walk_piece(graph, _dart_table(graph, c1), vertex, start)
        for cut in range(1, len(p1)):
            path1 = tuple(p1[:cut])
            x = _terminal(graph, path1)
            if x not in c2:
                continue
            seen = {vertex} | {graph.endpoint[d ^ 1] for d in path1}
            outgoing = [d for d in c2[x] if not sigma.same_cell(d, path1[-1] ^ 1)]
            if len(outgoing) != 1:
                continue
            path2 = []
            dart = outgoing[0]
            while True:
                path2.append(dart)
                y = graph.endpoint[dart ^ 1]
                if y in seen:
                    break
                seen.add(y)
                if y in c3_next:
                    path3 = _follow_back(graph, sigma, vertex, y, dart ^ 1, c3_next, c3_prev, seen)
                    if path3 is not None and not sigma.same_cell(path1[0], path3[-1] ^ 1):
                        found.append(OTriple(path1, tuple(path2), path3))
                dart = next(d for d in c2[y] if d != dart ^ 1)
    found.sort(key=lambda t: (len(t.p1), len(t.p2), t.p1[0], t.p1, t.p2))
    return found


def _dart_table(graph, walk):
    table = {}
    for d in walk:
        table.setdefault(graph.endpoint[d], []).append(d)
        table.setdefault(graph.endpoint[d ^ 1], []).append(d ^ 1)
    return table


def _follow_back(graph, sigma, vertex, y, arrival, c3_next, c3_prev, seen):
    """Path along C3 from y to `vertex`, leaving y through the cell opposite `arrival`."""
    options = [d for d in (c3_next.get(y), c3_prev.get(y)) if d is not None
               and not sigma.same_cell(d, arrival)]
    if len(options) != 1:
        return None
    forward = options[0] == c3_next.get(y)
    path = []
    dart = options[0]
    while True:
        path.append(dart)
        w = graph.endpoint[dart ^ 1]
        if w == vertex:
            return tuple(path)
        if w in seen or w == y:
            return None
        dart = c3_next[w] if forward else c3_prev[w]


def case2_recolour(graph, sigma, match, subcolouring, allow_fallback=True):
    """
    Turn a colouring of the graph smoothed at a straddling frame into a colouring of the graph.

    With strand colours c1, c2 and frame colour c3: distinct strand colours
    lift directly; c1 == c2 != c3 swaps c2 with a third colour on the side of
    one strand first; c1 == c2 == c3 recolours the cycles inside one side, or
    when both strands lie on the frame's cycle removes another cycle and
    colours the smaller graph.

    Args:
        graph (PlaneGraph): The framed graph
        sigma (OrientationAssignment): Orientation
        match (CaseMatch): A straddling frame from detect_case
        subcolouring (OColouring or sequence): Colouring of smooth(graph, sigma, match.vertex)

    Returns:
        OColouring: A colouring of `graph`
    """
    if match.kind != CASE2:
        raise PatternError(f"{match.kind} match is not a straddling frame")
    engine = _Engine(allow_fallback)
    smoothing = _smooth(graph, sigma, match.vertex)
    step = engine._step(0, CASE2_I, match.vertex)
    colours = engine._case2_recolour(graph, sigma, match, smoothing,
                                     list(_as_colours(subcolouring)), 0, step)
    return ocolouring_from_edge_colours(graph, sigma, colours)


def chain_search(graph, sigma, vertex, smoothed_colouring, allow_fallback=True):
    """
    Lift a colouring of the graph smoothed at `vertex` when no frame pattern applies.

    Strands of different colours lift directly. Strands of one colour on
    different cycles recolour one cycle. Strands on one cycle split it into
    two halves through `vertex`; the search then removes another o-cycle
    or an o-cycle threaded along the chain of halves and middle cycle,
    skipping ahead past candidates whose removal leaves a nontransverse
    cut-vertex, and colours the smaller graph.

    Returns:
        OColouring: A colouring of `graph`

    Raises:
        PatternError: No candidate cycle works
    """
    engine = _Engine(allow_fallback)
    smoothing = _smooth(graph, sigma, vertex)
    sub = list(_as_colours(smoothed_colouring))
    step = engine._step(0, CASE3_CHAIN, vertex)
    colours = engine._lift_smoothed(graph, sigma, vertex, smoothing, sub, 0, step)
    return ocolouring_from_edge_colours(graph, sigma, colours)


def o_colour(graph, sigma, allow_fallback=None):
    """
    O-colour a connected vertex-oriented graph whose cut-vertices and loop-anchors are transverse.

    Args:
        graph (PlaneGraph): Connected embedded graph
        sigma (OrientationAssignment): Orientation
        allow_fallback (bool): Permit exhaustive search when a reduction fails;
            defaults to the OCHROMA_ENGINE_FALLBACK setting

    Returns:
        tuple: (OColouring with colours 0..k-1, EngineTrace)

    Raises:
        ModeError: The graph is abstract
        PreconditionError: The graph is disconnected or has a nontransverse cut-vertex or loop-anchor
    """
    if not graph.embedded:
        raise ModeError("the colouring engine needs an embedded graph")
    if not is_connected(graph):
        raise PreconditionError("the colouring engine needs a connected graph")
    bad = offending_vertices(graph, sigma)
    if bad:
        raise PreconditionError(f"vertices {bad} are nontransverse cut-vertices or loop-anchors")

    if allow_fallback is None:
        allow_fallback = config.fallback_enabled()
    engine = _Engine(allow_fallback)
    colours = engine.run(graph, sigma)
    if not validate_o_colouring(graph, sigma, colours):
        raise ValidationError("engine produced an invalid colouring")
    colouring = ocolouring_from_edge_colours(graph, sigma, colours).normalized()
    engine.trace.palette_size = colouring.size
    logger.info("o-coloured %r with %d colours (%d fallbacks)",
                graph, colouring.size, engine.trace.fallback_count)
    return colouring, engine.trace

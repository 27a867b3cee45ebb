"""
VOG and PD text formats plus the built-in catalog of graphs and orientations.

VOG records, one per line, '#' starting a comment:
    V n              vertex count
    E m              edge count
    e id u v         edge id with dart 2*id at u and 2*id+1 at v
    r v d0 d1 ...    counterclockwise rotation at v
    o v b            orientation bit at v
    c id k           colour k on edge id
"""

import logging
import re
from collections import namedtuple

from oChroma.errors import (
    VogSyntaxError, VogSemanticError, LabelError, NonQuadrivalentError, UnknownNameError,
    InputError,
)
from oChroma.plane_graph import build_graph
from oChroma.orientation import OrientationAssignment

logger = logging.getLogger(__name__)

Builtin = namedtuple('Builtin', ['name', 'graph', 'orientations'])

_FIELDS = {'V': 1, 'E': 1, 'e': 3, 'o': 2, 'c': 2}


def _records(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword, values = tokens[0], tokens[1:]
        if keyword not in _FIELDS and keyword != 'r':
            raise VogSyntaxError(f"unknown record '{keyword}'", number)
        if keyword in _FIELDS and len(values) != _FIELDS[keyword]:
            raise VogSyntaxError(f"record '{keyword}' takes {_FIELDS[keyword]} fields, got {len(values)}", number)
        try:
            numbers = [int(v) for v in values]
        except ValueError:
            raise VogSyntaxError(f"non-integer field in '{line}'", number)
        if any(n < 0 for n in numbers):
            raise VogSyntaxError(f"negative field in '{line}'", number)
        yield number, keyword, numbers


def parse_vog(text):
    """
    Parse a VOG document.

    Args:
        text (str): Document text

    Returns:
        tuple: (PlaneGraph, OrientationAssignment or None)

    Raises:
        VogSyntaxError: A record cannot be tokenized
        VogSemanticError: Counts, ids, rotations or orientations are inconsistent
    """
    header = {}
    edges = {}
    rotations = {}
    bits = {}
    last_line = 0
    for number, keyword, values in _records(text):
        last_line = number
        if keyword in ('V', 'E'):
            if keyword in header:
                raise VogSemanticError(f"duplicate '{keyword}' record", number)
            header[keyword] = values[0]
            continue
        if 'V' not in header or 'E' not in header:
            raise VogSemanticError("'V' and 'E' must precede other records", number)
        n, m = header['V'], header['E']
        if keyword == 'e':
            edge, u, v = values
            if edge >= m or edge in edges:
                raise VogSemanticError(f"bad or duplicate edge id {edge}", number)
            if u >= n or v >= n:
                raise VogSemanticError(f"edge {edge} references unknown vertex", number)
            edges[edge] = (u, v)
        elif keyword == 'r':
            if not values:
                raise VogSyntaxError("rotation record needs a vertex", number)
            vertex, darts = values[0], tuple(values[1:])
            if vertex >= n or vertex in rotations:
                raise VogSemanticError(f"bad or duplicate rotation for vertex {vertex}", number)
            if any(d >= 2 * m for d in darts):
                raise VogSemanticError(f"rotation at vertex {vertex} names an unknown dart", number)
            rotations[vertex] = (darts, number)
        elif keyword == 'o':
            vertex, bit = values
            if vertex >= n or vertex in bits:
                raise VogSemanticError(f"bad or duplicate orientation for vertex {vertex}", number)
            bits[vertex] = (bit, number)
        elif keyword == 'c':
            edge, _ = values
            if edge >= m:
                raise VogSemanticError(f"colour for unknown edge {edge}", number)

    if 'V' not in header or 'E' not in header:
        raise VogSemanticError("missing 'V' or 'E' record", last_line or None)
    n, m = header['V'], header['E']
    if len(edges) != m:
        raise VogSemanticError(f"expected {m} edge records, found {len(edges)}", last_line or None)
    degree = 2 * m // n if n else 4
    if n and (2 * m % n or degree not in (3, 4)):
        raise VogSemanticError(f"{n} vertices and {m} edges give no regular degree 3 or 4", last_line or None)

    for vertex, (darts, number) in rotations.items():
        if len(darts) != degree:
            raise VogSemanticError(f"rotation at vertex {vertex} lists {len(darts)} darts, expected {degree}", number)
    if rotations and len(rotations) != n:
        missing = min(set(range(n)) - set(rotations))
        raise VogSemanticError(f"missing rotation record for vertex {missing}", last_line or None)

    ordered = None
    if rotations:
        ordered = [rotations[v][0] for v in range(n)]
    graph = build_graph([edges[e] for e in range(m)], ordered, degree=degree, vertex_count=n)

    sigma = None
    if bits:
        if len(bits) != n:
            missing = min(set(range(n)) - set(bits))
            raise VogSemanticError(f"missing orientation record for vertex {missing}", last_line or None)
        try:
            sigma = OrientationAssignment(graph, [bits[v][0] for v in range(n)])
        except InputError as exc:
            raise VogSemanticError(str(exc), last_line or None)
    return graph, sigma


def write_vog(graph, sigma=None, colours=None):
    """
    Write the canonical VOG document of a graph.

    Records are grouped as V, E, e, r, o, c and sorted by id inside each group.

    Returns:
        str: Document text ending in a newline
    """
    lines = [f"V {graph.vertex_count}", f"E {graph.edge_count}"]
    for e in range(graph.edge_count):
        u, v = graph.edge_ends(e)
        lines.append(f"e {e} {u} {v}")
    if graph.embedded:
        for v in range(graph.vertex_count):
            lines.append(f"r {v} " + ' '.join(str(d) for d in graph.rotation[v]))
    if sigma is not None:
        for v, bit in enumerate(sigma.bits):
            lines.append(f"o {v} {bit}")
    if colours is not None:
        for e, colour in enumerate(colours):
            lines.append(f"c {e} {colour}")
    return '\n'.join(lines) + '\n'


def canonical_vog(text):
    graph, sigma = parse_vog(text)
    return write_vog(graph, sigma, parse_colouring(text) or None)


def parse_colouring(text, edge_count=None):
    """
    Read the 'c' records of a document.

    Returns:
        tuple: Colour per edge id, or an empty tuple when there are no 'c' records

    Raises:
        VogSemanticError: Some edge is coloured twice or left uncoloured
    """
    colours = {}
    for number, keyword, values in _records(text):
        if keyword != 'c':
            continue
        edge, colour = values
        if edge in colours:
            raise VogSemanticError(f"edge {edge} coloured twice", number)
        colours[edge] = colour
    if not colours:
        return ()
    size = edge_count if edge_count is not None else max(colours) + 1
    if set(colours) != set(range(size)):
        missing = sorted(set(range(size)) - set(colours))
        raise VogSemanticError(f"colouring leaves edges {missing} uncoloured")
    return tuple(colours[e] for e in range(size))


def write_colouring(colours):
    return ''.join(f"c {e} {colour}\n" for e, colour in enumerate(colours))


def parse_orientation(text, graph):
    """
    Read the 'o' records of a document as an orientation of `graph`.
    """
    bits = {}
    for number, keyword, values in _records(text):
        if keyword != 'o':
            continue
        vertex, bit = values
        if vertex >= graph.vertex_count or vertex in bits:
            raise VogSemanticError(f"bad or duplicate orientation for vertex {vertex}", number)
        bits[vertex] = bit
    if len(bits) != graph.vertex_count:
        raise VogSemanticError(f"orientation lists {len(bits)} of {graph.vertex_count} vertices")
    return OrientationAssignment(graph, [bits[v] for v in range(graph.vertex_count)])


_CROSSING = re.compile(r'X\s*\[([^\]]*)\]')


def parse_pd(text):
    """
    Build the projection graph of a PD code.

    Crossings become vertices in order of appearance and strand labels
    become edges in ascending label order. The first occurrence of a label
    holds the edge's even dart; each crossing's entries give its rotation.
    Over/under information is not used.

    Args:
        text (str): Lines or a PD[...] list of X[a,b,c,d] entries

    Returns:
        PlaneGraph: The 4-regular projection graph

    Raises:
        NonQuadrivalentError: A crossing does not list four labels
        LabelError: A label does not occur exactly twice
    """
    crossings = []
    for match in _CROSSING.finditer(text):
        entries = [t.strip() for t in match.group(1).split(',') if t.strip()]
        if len(entries) != 4:
            raise NonQuadrivalentError(f"crossing X[{match.group(1)}] has {len(entries)} entries, expected 4")
        try:
            crossings.append([int(t) for t in entries])
        except ValueError:
            raise LabelError(f"crossing X[{match.group(1)}] has a non-integer label")
    if not crossings:
        raise LabelError("PD code contains no crossings")

    occurrences = {}
    for vertex, labels in enumerate(crossings):
        for slot, label in enumerate(labels):
            occurrences.setdefault(label, []).append((vertex, slot))
    for label, places in sorted(occurrences.items()):
        if len(places) != 2:
            raise LabelError(f"label {label} occurs {len(places)} times, expected 2")

    edge_of_label = {label: k for k, label in enumerate(sorted(occurrences))}
    endpoints = []
    dart_at = {}
    for label in sorted(occurrences):
        k = edge_of_label[label]
        (u, su), (v, sv) = occurrences[label]
        endpoints.append((u, v))
        dart_at[(u, su)] = 2 * k
        dart_at[(v, sv)] = 2 * k + 1
    rotations = [[dart_at[(v, s)] for s in range(4)] for v in range(len(crossings))]
    return build_graph(endpoints, rotations, vertex_count=len(crossings))


WHITEHEAD_PD = "X[1,2,3,4] X[5,6,7,1] X[4,8,9,5] X[2,10,8,3] X[10,7,6,9]"
BORROMEAN_PD = "X[1,2,3,4] X[1,7,5,6] X[5,10,8,9] X[3,11,8,12] X[2,6,9,11] X[4,12,10,7]"


def _labelled(pairs):
    return [(u - 1, v - 1) for u, v in pairs]


def _bits(pattern):
    return tuple(int(ch) for ch in pattern)


_CATALOG = {
    'fig7a': {
        'edges': [(0, 0), (0, 0)],
        'rotations': [(0, 1, 2, 3)],
        'orientations': {'default': (0,)},
    },
    'fig7b': {
        'edges': [(0, 1)] * 4,
        'rotations': [(0, 2, 4, 6), (1, 7, 5, 3)],
        'orientations': {'default': (0, 0)},
    },
    'fig7c': {
        'edges': [(0, 0), (0, 1), (0, 1), (1, 1)],
        'rotations': [(2, 0, 1, 4), (6, 3, 5, 7)],
        'orientations': {'default': (0, 0)},
    },
    'whitehead': {
        'edges': _labelled([(1, 2), (2, 3), (3, 4), (4, 5), (5, 3),
                            (3, 1), (1, 2), (2, 5), (5, 4), (4, 1)]),
        'rotations': [(19, 11, 12, 0), (1, 13, 2, 14), (10, 4, 9, 3), (18, 6, 17, 5), (8, 16, 7, 15)],
        'orientations': {'ex41': (1, 0, 0, 0, 1)},
    },
    'star8': {
        'edges': _labelled([(1, 2), (1, 5), (1, 6), (1, 7), (2, 3), (2, 6), (2, 7), (3, 4),
                            (3, 7), (3, 8), (4, 5), (4, 7), (4, 8), (5, 6), (5, 8), (6, 8)]),
        'rotations': [(2, 4, 0, 6), (1, 10, 8, 12), (18, 14, 16, 9), (24, 20, 22, 15),
                      (28, 26, 3, 21), (27, 30, 11, 5), (23, 7, 13, 17), (31, 29, 25, 19)],
        'orientations': {'ex42': (0, 1, 1, 1, 0, 1, 1, 1)},
    },
    'star6': {
        'edges': _labelled([(1, 2), (1, 4), (1, 5), (1, 6), (2, 3), (2, 5),
                            (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6)]),
        'rotations': [(0, 4, 2, 6), (1, 12, 8, 10), (9, 18, 14, 16),
                      (3, 20, 15, 22), (5, 11, 17, 21), (7, 23, 19, 13)],
        'orientations': {
            'orbit1': _bits('111111'),
            'orbit2': _bits('011111'),
            'orbit3': _bits('101111'),
            'orbit4': _bits('001111'),
            'orbit5': _bits('101011'),
            'orbit6': _bits('100101'),
            'orbit7': _bits('001101'),
        },
    },
    'reinsertion': {
        'edges': [(0, 1), (1, 2), (2, 3), (3, 0), (0, 1), (1, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 3), (3, 2),
                  (2, 4), (4, 9), (9, 10), (10, 11), (11, 12), (12, 0), (12, 13), (13, 10), (10, 6), (6, 14),
                  (14, 8), (8, 15), (15, 16), (16, 12), (16, 11), (11, 13), (13, 9), (9, 5), (5, 14), (14, 7),
                  (7, 15), (15, 16)],
        'rotations': [(35, 0, 8, 7), (9, 1, 10, 2), (3, 24, 4, 23), (6, 22, 5, 21), (11, 26, 12, 25),
                      (13, 59, 14, 60), (15, 41, 16, 42), (17, 64, 18, 63), (45, 19, 46, 20), (57, 28, 58, 27),
                      (39, 30, 40, 29), (54, 32, 53, 31), (34, 51, 33, 36), (37, 55, 38, 56), (61, 43, 62, 44),
                      (48, 66, 47, 65), (52, 50, 67, 49)],
        # vertex 4 carries the pattern; the other bits are free
        'orientations': {'default': _bits('00001000000000000')},
    },
}

_CUBIC = {
    'k4': {
        'edges': [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        'rotations': [(0, 2, 4), (6, 1, 8), (10, 3, 7), (9, 5, 11)],
    },
    'cube': {
        'edges': [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
                  (0, 4), (1, 5), (2, 6), (3, 7)],
        'rotations': [(0, 16, 7), (2, 18, 1), (4, 20, 3), (6, 22, 5),
                      (8, 15, 17), (10, 9, 19), (21, 12, 11), (13, 23, 14)],
    },
    'prism': {
        'edges': [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        'rotations': [(0, 12, 5), (2, 14, 1), (4, 16, 3), (13, 6, 11), (8, 7, 15), (10, 9, 17)],
    },
    'k33': {
        'edges': [(i, j) for i in range(3) for j in range(3, 6)],
        'rotations': None,
    },
    'petersen': {
        'edges': [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                  (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        'rotations': None,
    },
}


def builtin_names():
    return sorted(_CATALOG)


def cubic_names():
    return sorted(_CUBIC)


def builtin(name):
    """
    Load a built-in 4-regular plane graph with its named orientations.

    Args:
        name (str): fig7a, fig7b, fig7c, whitehead, star8, star6 or reinsertion

    Returns:
        Builtin: name, graph and a dict of OrientationAssignment values by name

    Raises:
        UnknownNameError: No such built-in
    """
    if name not in _CATALOG:
        raise UnknownNameError(f"unknown built-in graph '{name}' (choose from {', '.join(builtin_names())})")
    entry = _CATALOG[name]
    graph = build_graph(entry['edges'], entry['rotations'])
    orientations = {
        key: OrientationAssignment(graph, bits) for key, bits in entry['orientations'].items()
    }
    return Builtin(name, graph, orientations)


def builtin_cubic(name):
    """
    Load a built-in cubic graph: k4, cube and prism are embedded, k33 and petersen abstract.

    Raises:
        UnknownNameError: No such built-in
    """
    if name not in _CUBIC:
        raise UnknownNameError(f"unknown built-in cubic graph '{name}' (choose from {', '.join(cubic_names())})")
    entry = _CUBIC[name]
    return build_graph(entry['edges'], entry['rotations'], degree=3)

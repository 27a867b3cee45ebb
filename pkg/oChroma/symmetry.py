"""
Graph automorphisms and their action on orientation assignments.
"""

import itertools
import logging
from collections import namedtuple, defaultdict
from fractions import Fraction

from networkx.algorithms.isomorphism import MultiGraphMatcher

from oChroma.errors import CompatibilityError
from oChroma.orientation import OrientationAssignment, assignment_count, orientation_table

logger = logging.getLogger(__name__)

PRESERVING = 'preserving'
REVERSING = 'reversing'

Orbit = namedtuple('Orbit', ['representative', 'size', 'members'])


class Automorphism:
    """
    A graph automorphism given on vertices and on darts.

    Attributes:
        graph (PlaneGraph): The graph acted on
        vertex_map (tuple): Image of each vertex
        dart_map (tuple): Image of each dart
        sense (str): PRESERVING or REVERSING when rotations map to rotations, else None
    """

    def __init__(self, graph, vertex_map, dart_map, sense=None):
        self.graph = graph
        self.vertex_map = tuple(vertex_map)
        self.dart_map = tuple(dart_map)
        self.sense = sense

    @property
    def map_compatible(self):
        return self.sense is not None

    def compose(self, other):
        """self after other."""
        dart_map = [self.dart_map[other.dart_map[d]] for d in range(len(self.dart_map))]
        vertex_map = [self.vertex_map[other.vertex_map[v]] for v in range(len(self.vertex_map))]
        return Automorphism(self.graph, vertex_map, dart_map,
                            _map_sense(self.graph, self.graph, dart_map, vertex_map))

    def inverse(self):
        dart_map = [0] * len(self.dart_map)
        for d, image in enumerate(self.dart_map):
            dart_map[image] = d
        vertex_map = [0] * len(self.vertex_map)
        for v, image in enumerate(self.vertex_map):
            vertex_map[image] = v
        return Automorphism(self.graph, vertex_map, dart_map, self.sense)

    def is_identity(self):
        return all(d == image for d, image in enumerate(self.dart_map))

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.dart_map == other.dart_map

    def __hash__(self):
        return hash(self.dart_map)

    def __repr__(self):
        return f"Automorphism(vertices={self.vertex_map}, sense={self.sense})"


def _dart_at(graph, edge, vertex):
    return 2 * edge if graph.endpoint[2 * edge] == vertex else 2 * edge + 1


def _bundles(graph):
    bundles = defaultdict(list)
    for e in range(graph.edge_count):
        u, v = graph.edge_ends(e)
        bundles[(min(u, v), max(u, v))].append(e)
    return bundles


def _dart_maps(g1, g2, vertex_map):
    """Every dart bijection lying over a vertex bijection."""
    target = _bundles(g2)
    choices = []
    for (u, w), edges in sorted(_bundles(g1).items()):
        iu, iw = vertex_map[u], vertex_map[w]
        images = target.get((min(iu, iw), max(iu, iw)), [])
        if len(images) != len(edges):
            return
        options = []
        for perm in itertools.permutations(images):
            if u == w:
                for flips in itertools.product((0, 1), repeat=len(edges)):
                    options.append([
                        pair
                        for e, image, flip in zip(edges, perm, flips)
                        for pair in ((2 * e, 2 * image + flip), (2 * e + 1, 2 * image + 1 - flip))
                    ])
            else:
                options.append([
                    pair
                    for e, image in zip(edges, perm)
                    for pair in ((_dart_at(g1, e, u), _dart_at(g2, image, iu)),
                                 (_dart_at(g1, e, w), _dart_at(g2, image, iw)))
                ])
        choices.append(options)

    for combination in itertools.product(*choices):
        dart_map = [None] * g1.dart_count
        for option in combination:
            for source, image in option:
                dart_map[source] = image
        yield tuple(dart_map)


def _cyclic_equal(first, second):
    if len(first) != len(second):
        return False
    doubled = tuple(second) + tuple(second)
    return any(doubled[i:i + len(first)] == tuple(first) for i in range(len(second)))


def _map_sense(g1, g2, dart_map, vertex_map):
    if not (g1.embedded and g2.embedded):
        return None
    senses = set()
    for v in range(g1.vertex_count):
        image = [dart_map[d] for d in g1.rotation[v]]
        target = g2.rotation[vertex_map[v]]
        if _cyclic_equal(image, target):
            senses.add(PRESERVING)
        elif _cyclic_equal(list(reversed(image)), target):
            senses.add(REVERSING)
        else:
            return None
    if len(senses) > 1:
        return None
    return senses.pop() if senses else PRESERVING


def _vertex_maps(g1, g2):
    matcher = MultiGraphMatcher(g1.to_networkx(), g2.to_networkx())
    for mapping in matcher.isomorphisms_iter():
        yield tuple(mapping[v] for v in range(g1.vertex_count))


def automorphisms(graph):
    """
    The full automorphism group of the underlying multigraph.

    Vertex maps come from networkx's multigraph matcher and are expanded
    over permutations of parallel edges and flips of loops. Each element
    records whether it maps rotations to rotations, directly or mirrored.

    Returns:
        list: Automorphism values sorted by dart map
    """
    group = []
    for vertex_map in _vertex_maps(graph, graph):
        for dart_map in _dart_maps(graph, graph, vertex_map):
            group.append(Automorphism(graph, vertex_map, dart_map,
                                      _map_sense(graph, graph, dart_map, vertex_map)))
    group.sort(key=lambda a: a.dart_map)
    logger.debug("automorphism group of %r has order %d", graph, len(group))
    return group


def map_automorphisms(graph):
    """Automorphisms that may act on orientations of this graph."""
    group = automorphisms(graph)
    if not graph.embedded:
        return group
    return [a for a in group if a.map_compatible]


def act(automorphism, sigma):
    """
    Push an orientation assignment forward along an automorphism.

    Raises:
        CompatibilityError: The automorphism does not respect the embedding
    """
    graph = sigma.graph
    if graph.embedded and not automorphism.map_compatible:
        raise CompatibilityError("automorphism does not map rotations to rotations")
    cells = [None] * graph.vertex_count
    for v in range(graph.vertex_count):
        cells[automorphism.vertex_map[v]] = [
            [automorphism.dart_map[d] for d in cell] for cell in sigma.cells(v)
        ]
    return OrientationAssignment.from_cells(graph, cells)


def assignment_permutation(graph, automorphism):
    """
    The action of one automorphism on assignment indices.

    Returns:
        list: Image index of every assignment index
    """
    table = orientation_table(graph)
    bit_images = []
    for v in range(graph.vertex_count):
        image_vertex = automorphism.vertex_map[v]
        images = []
        for option in table[v]:
            pairs = [[automorphism.dart_map[d] for d in cell] for cell in option.cells]
            bit = next(b for b, o in enumerate(table[image_vertex]) if o.same_partition(pairs))
            images.append(bit)
        bit_images.append((image_vertex, images))

    radices = [len(options) for options in table]
    weights = [1] * graph.vertex_count
    for v in range(1, graph.vertex_count):
        weights[v] = weights[v - 1] * radices[v - 1]

    permutation = []
    for index in range(assignment_count(graph)):
        image = 0
        rest = index
        for v in range(graph.vertex_count):
            bit = rest % radices[v]
            rest //= radices[v]
            image_vertex, images = bit_images[v]
            image += images[bit] * weights[image_vertex]
        permutation.append(image)
    return permutation


def orbits(graph, group=None):
    """
    Partition all orientation assignments into orbits.

    Args:
        graph (PlaneGraph): The graph
        group (list): Automorphisms to use; defaults to map_automorphisms(graph)

    Returns:
        list: Orbit(representative, size, members) sorted by representative index;
        the representative is the member with the smallest index
    """
    if group is None:
        group = map_automorphisms(graph)
    total = assignment_count(graph)
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for automorphism in group:
        for index, image in enumerate(assignment_permutation(graph, automorphism)):
            a, b = find(index), find(image)
            if a != b:
                parent[max(a, b)] = min(a, b)

    classes = defaultdict(list)
    for index in range(total):
        classes[find(index)].append(index)
    result = []
    for members in sorted(classes.values()):
        result.append(Orbit(OrientationAssignment.from_index(graph, members[0]), len(members), tuple(members)))
    return result


def burnside_count(graph, group=None):
    """
    Orbit count from the average number of fixed assignments.

    Returns:
        Fraction: Exact average; equals the orbit count for a group
    """
    if group is None:
        group = map_automorphisms(graph)
    fixed = 0
    for automorphism in group:
        fixed += sum(1 for i, image in enumerate(assignment_permutation(graph, automorphism)) if i == image)
    return Fraction(fixed, len(group))


def find_isomorphism(g1, g2, sigma1=None, sigma2=None, allow_reflection=True):
    """
    Look for an isomorphism between two graphs, optionally respecting
    rotations and orientations.

    Returns:
        tuple: Dart map from g1 to g2, or None
    """
    if (g1.vertex_count, g1.edge_count) != (g2.vertex_count, g2.edge_count):
        return None
    check_embedding = g1.embedded and g2.embedded
    for vertex_map in _vertex_maps(g1, g2):
        for dart_map in _dart_maps(g1, g2, vertex_map):
            if check_embedding:
                sense = _map_sense(g1, g2, dart_map, vertex_map)
                if sense is None or (sense == REVERSING and not allow_reflection):
                    continue
            if sigma1 is not None and sigma2 is not None:
                if not all(
                    sigma2.orientation(vertex_map[v]).same_partition(
                        [[dart_map[d] for d in cell] for cell in sigma1.cells(v)])
                    for v in range(g1.vertex_count)
                ):
                    continue
            return dart_map
    return None


def is_isomorphic(g1, g2, sigma1=None, sigma2=None, allow_reflection=True):
    return find_isomorphism(g1, g2, sigma1, sigma2, allow_reflection) is not None

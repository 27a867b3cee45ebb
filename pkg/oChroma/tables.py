"""
Published o-cycle and decomposition tables for the catalog orientations.

Cycles are written as printed, starting anywhere and in either direction.
Decomposition rows are in published order with each cycle in canonical form.
The catalog orientation bits are the ones whose analysis reproduces these
tables; `oChroma.operations.search_orientations` finds them again.
"""

from collections import namedtuple

from oChroma.errors import UnknownNameError
from oChroma.ocycle import enumerate_decompositions, enumerate_o_cycles

Table = namedtuple('Table', ['graph', 'orientation', 'cycles', 'decompositions'])

# star6 cycle lists, as printed.
STAR6_CYCLES = {
    'orbit1': [
        '1,2,6,3,5,4,1', '1,4,5,2,3,6,1', '1,5,2,3,4,6,1', '1,2,6,4,3,5,1', '1,4,5,3,6,1',
        '1,5,2,3,6,1', '1,2,6,3,5,1', '1,5,3,4,6,1', '2,5,4,6,2', '1,2,3,4,1', '1,5,3,6,1',
    ],
    'orbit2': [
        '1,2,6,3,5,4,1', '1,5,2,3,4,6,1', '1,4,3,2,5,1', '1,2,3,4,6,1', '1,5,2,3,6,1',
        '1,5,3,4,6,1', '1,4,3,5,1', '1,2,3,4,1', '1,2,3,6,1', '1,5,3,6,1', '2,5,4,6,2',
    ],
    'orbit3': [
        '1,4,5,3,6,1', '1,5,3,4,6,1', '1,2,3,4,1', '1,2,5,4,1', '1,5,3,6,1',
        '2,5,4,6,2', '2,3,4,6,2', '1,2,5,1', '2,3,6,2',
    ],
    'orbit4': [
        '1,2,3,4,6,1', '1,5,3,4,6,1', '1,2,5,4,6,1', '2,5,4,6,2', '1,2,5,4,1', '1,4,3,5,1',
        '1,2,3,4,1', '1,2,3,6,1', '1,5,3,6,1', '2,3,4,6,2', '2,3,6,2',
    ],
    'orbit5': [
        '1,2,3,4,1', '2,5,4,6,2', '1,5,3,6,1', '1,4,6,1', '1,2,5,1', '2,3,6,2', '3,4,5,3',
    ],
    'orbit6': [
        '1,2,3,4,1', '2,5,4,6,2', '1,5,3,6,1', '1,5,4,6,1', '2,5,3,6,2',
        '1,2,3,5,1', '1,4,3,6,1', '1,2,5,4,1', '2,3,4,6,2',
    ],
    'orbit7': [
        '1,2,5,3,4,6,1', '1,2,3,4,6,1', '1,2,5,3,4,1', '1,2,5,3,6,1', '1,2,5,4,6,1', '2,5,3,4,6,2',
        '1,5,3,4,6,1', '1,2,3,4,1', '2,5,4,6,2', '1,2,3,6,1', '1,4,3,5,1', '1,5,3,6,1',
        '1,5,4,6,1', '1,2,5,4,1', '2,5,3,6,2', '2,3,4,6,2', '2,3,6,2', '1,4,5,1',
    ],
}

STAR6_DECOMPOSITIONS = {
    'orbit1': [
        ('(1,2,3,4,1)', '(1,5,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,6,3,5,4,1)', '(1,5,2,3,4,6,1)'),
        ('(1,2,6,4,3,5,1)', '(1,4,5,2,3,6,1)'),
    ],
    'orbit2': [
        ('(1,2,3,4,1)', '(1,5,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,3,6,1)', '(1,4,3,5,1)', '(2,5,4,6,2)'),
        ('(1,2,6,3,5,4,1)', '(1,5,2,3,4,6,1)'),
    ],
    'orbit3': [
        ('(1,2,3,4,1)', '(1,5,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,5,1)', '(1,4,5,3,6,1)', '(2,3,4,6,2)'),
        ('(1,2,5,4,1)', '(1,5,3,6,1)', '(2,3,4,6,2)'),
        ('(1,2,5,4,1)', '(1,5,3,4,6,1)', '(2,3,6,2)'),
    ],
    'orbit4': [
        ('(1,2,3,4,1)', '(1,5,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,3,6,1)', '(1,4,3,5,1)', '(2,5,4,6,2)'),
        ('(1,2,5,4,1)', '(1,5,3,6,1)', '(2,3,4,6,2)'),
        ('(1,2,5,4,1)', '(1,5,3,4,6,1)', '(2,3,6,2)'),
        ('(1,2,5,4,6,1)', '(1,4,3,5,1)', '(2,3,6,2)'),
    ],
    'orbit5': [
        ('(1,2,3,4,1)', '(1,5,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,5,1)', '(1,4,6,1)', '(2,3,6,2)', '(3,4,5,3)'),
    ],
    'orbit6': [
        ('(1,2,3,4,1)', '(1,5,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,3,4,1)', '(1,5,4,6,1)', '(2,5,3,6,2)'),
        ('(1,2,3,5,1)', '(1,4,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,5,4,1)', '(1,5,3,6,1)', '(2,3,4,6,2)'),
    ],
    'orbit7': [
        ('(1,2,3,4,1)', '(1,5,3,6,1)', '(2,5,4,6,2)'),
        ('(1,2,3,4,1)', '(1,5,4,6,1)', '(2,5,3,6,2)'),
        ('(1,2,3,4,6,1)', '(1,4,5,1)', '(2,5,3,6,2)'),
        ('(1,2,3,6,1)', '(1,4,3,5,1)', '(2,5,4,6,2)'),
        ('(1,2,3,6,1)', '(1,4,5,1)', '(2,5,3,4,6,2)'),
        ('(1,2,5,3,4,1)', '(1,5,4,6,1)', '(2,3,6,2)'),
        ('(1,2,5,3,4,6,1)', '(1,4,5,1)', '(2,3,6,2)'),
        ('(1,2,5,3,6,1)', '(1,4,5,1)', '(2,3,4,6,2)'),
        ('(1,2,5,4,1)', '(1,5,3,6,1)', '(2,3,4,6,2)'),
        ('(1,2,5,4,1)', '(1,5,3,4,6,1)', '(2,3,6,2)'),
        ('(1,2,5,4,6,1)', '(1,4,3,5,1)', '(2,3,6,2)'),
    ],
}

STAR8_CYCLES = [
    '1,2,3,4,5,8,6,1', '1,2,6,1', '1,2,6,5,1', '1,5,8,3,7,1', '1,5,8,3,4,7,1', '1,6,8,4,7,1',
    '1,5,6,8,4,7,1', '2,6,5,4,8,3,7,2', '2,3,4,7,2', '2,3,7,2', '3,4,5,8,3', '4,5,6,8,4',
]

# star8 decompositions in published order.
STAR8_DECOMPOSITIONS = [
    ('(1,2,6,1)', '(1,5,8,3,7,1)', '(2,3,4,7,2)', '(4,5,6,8,4)'),
    ('(1,2,6,1)', '(1,5,8,3,4,7,1)', '(2,3,7,2)', '(4,5,6,8,4)'),
    ('(1,2,6,1)', '(1,5,6,8,4,7,1)', '(2,3,7,2)', '(3,4,5,8,3)'),
    ('(1,2,6,5,1)', '(1,6,8,4,7,1)', '(2,3,7,2)', '(3,4,5,8,3)'),
]

PUBLISHED = dict(
    [(orbit, Table('star6', orbit, STAR6_CYCLES[orbit], STAR6_DECOMPOSITIONS[orbit]))
     for orbit in sorted(STAR6_CYCLES)]
    + [('ex42', Table('star8', 'ex42', STAR8_CYCLES, STAR8_DECOMPOSITIONS))]
)


def published(graph_name):
    """
    Published tables of one catalog graph.

    Raises:
        UnknownNameError: No table was published for the graph
    """
    tables = [table for table in PUBLISHED.values() if table.graph == graph_name]
    if not tables:
        names = sorted({table.graph for table in PUBLISHED.values()})
        raise UnknownNameError(f"no published tables for '{graph_name}' (choose from {', '.join(names)})")
    return tables


def canonical_label(printed):
    """Label of a printed vertex cycle such as 2,6,5,1,2: smallest rotation over both directions."""
    ring = [int(v) for v in printed.strip('()').split(',')][:-1]
    forms = []
    for sequence in (ring, ring[::-1]):
        for shift in range(len(sequence)):
            forms.append(sequence[shift:] + sequence[:shift])
    best = min(forms)
    return '(' + ','.join(str(v) for v in best + best[:1]) + ')'


def table_of(graph, sigma):
    """
    The table an orientation produces.

    Returns:
        tuple: (sorted cycle labels, decomposition rows in enumeration order)
    """
    cycles = enumerate_o_cycles(graph, sigma)
    decompositions = enumerate_decompositions(graph, sigma, cycles)
    return (sorted(c.label() for c in cycles),
            [tuple(c.label() for c in d.cycles) for d in decompositions])


def reproduces(graph, sigma, table):
    cycles, rows = table_of(graph, sigma)
    return (cycles == sorted(canonical_label(p) for p in table.cycles)
            and rows == list(table.decompositions))

import pytest

from oChroma.errors import UnknownNameError
from oChroma.ocycle import enumerate_o_cycles, enumerate_decompositions, cycle_usage
from oChroma.operations import cmd_regenerate, search_orientations
from oChroma.tables import (
    PUBLISHED, STAR6_CYCLES, STAR6_DECOMPOSITIONS, STAR8_CYCLES, STAR8_DECOMPOSITIONS,
    canonical_label, published, reproduces, table_of,
)
from oChroma.utils import TSV


def labels(decompositions):
    return [tuple(c.label() for c in d.cycles) for d in decompositions]


def usage_of(cycles, decompositions, label):
    usage = cycle_usage(cycles, decompositions)
    return next(indices for cycle, indices in usage.items() if cycle.label() == label)


def test_canonical_label():
    assert canonical_label('1,4,3,2,5,1') == '(1,4,3,2,5,1)'
    assert canonical_label('2,6,5,1,2') == '(1,2,6,5,1)'
    assert canonical_label('(4,6,5,4)') == '(4,5,6,4)'


@pytest.mark.parametrize('orbit', sorted(STAR6_CYCLES))
def test_star6_cycle_lists(star6, orbit):
    cycles = enumerate_o_cycles(star6.graph, star6.orientations[orbit])
    assert sorted(c.label() for c in cycles) == sorted(canonical_label(p) for p in STAR6_CYCLES[orbit])
    lengths = {canonical_label(p): p.count(',') for p in STAR6_CYCLES[orbit]}
    assert all(c.length == lengths[c.label()] for c in cycles)


@pytest.mark.parametrize('orbit', sorted(STAR6_DECOMPOSITIONS))
def test_star6_decompositions_in_published_order(star6, orbit):
    decompositions = enumerate_decompositions(star6.graph, star6.orientations[orbit])
    assert labels(decompositions) == STAR6_DECOMPOSITIONS[orbit]


def test_star6_cycle_usage(star6):
    sigma = star6.orientations['orbit1']
    cycles = enumerate_o_cycles(star6.graph, sigma)
    decompositions = enumerate_decompositions(star6.graph, sigma)
    assert usage_of(cycles, decompositions, '(2,5,4,6,2)') == [0]

    sigma = star6.orientations['orbit7']
    cycles = enumerate_o_cycles(star6.graph, sigma)
    decompositions = enumerate_decompositions(star6.graph, sigma)
    assert usage_of(cycles, decompositions, '(2,3,6,2)') == [5, 6, 9, 10]
    assert usage_of(cycles, decompositions, '(1,4,5,1)') == [2, 4, 6, 7]


def test_star8_table(star8):
    sigma = star8.orientations['ex42']
    cycles = enumerate_o_cycles(star8.graph, sigma)
    assert sorted(c.label() for c in cycles) == sorted(canonical_label(p) for p in STAR8_CYCLES)
    decompositions = enumerate_decompositions(star8.graph, sigma)
    assert labels(decompositions) == STAR8_DECOMPOSITIONS
    assert usage_of(cycles, decompositions, '(1,2,6,1)') == [0, 1, 2]
    assert usage_of(cycles, decompositions, '(2,3,7,2)') == [1, 2, 3]
    assert usage_of(cycles, decompositions, '(3,4,5,8,3)') == [2, 3]
    assert usage_of(cycles, decompositions, '(1,2,3,4,5,8,6,1)') == []


def test_catalog_bits_reproduce_every_table(request):
    for name, table in PUBLISHED.items():
        entry = request.getfixturevalue(table.graph)
        assert reproduces(entry.graph, entry.orientations[name], table)


def test_table_of_lists_rows_in_enumeration_order(star6):
    cycles, rows = table_of(star6.graph, star6.orientations['orbit5'])
    assert len(cycles) == 7
    assert rows == STAR6_DECOMPOSITIONS['orbit5']


def test_search_recovers_star6_bits(star6):
    for orbit in ('orbit1', 'orbit7'):
        found = search_orientations(star6.graph, PUBLISHED[orbit], jobs=2)
        assert star6.orientations[orbit] in found
    assert not reproduces(star6.graph, star6.orientations['orbit2'], PUBLISHED['orbit1'])


def test_regenerate_star6_report():
    report = cmd_regenerate('star6', TSV, jobs=2)
    rows = [line.split('\t') for line in report.splitlines() if line.startswith('orbit')]
    assert [row[0] for row in rows] == sorted(STAR6_CYCLES)
    assert all(row[-1] == 'ok' for row in rows)


@pytest.mark.slow
def test_regenerate_star8_report():
    report = cmd_regenerate('star8', TSV)
    assert "ex42\t01110111\t" in report
    assert report.rstrip().endswith('\tok')


def test_published_names():
    assert [table.orientation for table in published('star8')] == ['ex42']
    with pytest.raises(UnknownNameError):
        published('fig7a')

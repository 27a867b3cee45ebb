import pytest

from oChroma.errors import VogSyntaxError, VogSemanticError, LabelError, NonQuadrivalentError, UnknownNameError
from oChroma.catalog_io import (
    parse_vog, write_vog, canonical_vog, parse_colouring, write_colouring, parse_orientation, parse_pd,
    builtin, builtin_names, builtin_cubic, cubic_names, BORROMEAN_PD,
)
from oChroma.plane_graph import CubicGraph

FIG7A = """\
# two loops at one vertex
V 1
E 2
e 0 0 0
e 1 0 0
r 0 0 1 2 3
o 0 0
"""


def test_parse_fig7a_document():
    graph, sigma = parse_vog(FIG7A)
    assert (graph.vertex_count, graph.edge_count) == (1, 2)
    assert graph.rotation == ((0, 1, 2, 3),)
    assert sigma.bits == (0,)


def test_write_is_canonical():
    assert write_vog(*parse_vog(FIG7A)) == "V 1\nE 2\ne 0 0 0\ne 1 0 0\nr 0 0 1 2 3\no 0 0\n"
    shuffled = "E 2\nV 1\no 0 0\nr 0 0 1 2 3\ne 1 0 0\ne 0 0 0\n"
    assert canonical_vog(shuffled) == write_vog(*parse_vog(FIG7A))


def test_missing_rotation_record():
    text = "V 2\nE 4\ne 0 0 1\ne 1 0 1\ne 2 0 1\ne 3 0 1\nr 0 0 2 4 6\n"
    with pytest.raises(VogSemanticError, match="missing rotation record for vertex 1"):
        parse_vog(text)


def test_abstract_document():
    graph, sigma = parse_vog("V 2\nE 4\ne 0 0 1\ne 1 0 1\ne 2 0 1\ne 3 0 1\n")
    assert not graph.embedded
    assert sigma is None


def test_syntax_errors_carry_line_numbers():
    with pytest.raises(VogSyntaxError) as excinfo:
        parse_vog("V 1\nE 2\ne 0 0\n")
    assert excinfo.value.line == 3
    with pytest.raises(VogSyntaxError):
        parse_vog("V 1\nE two\n")
    with pytest.raises(VogSyntaxError):
        parse_vog("Q 1\n")


def test_wrong_dart_count():
    text = "V 1\nE 2\ne 0 0 0\ne 1 0 0\nr 0 0 1 2\n"
    with pytest.raises(VogSemanticError):
        parse_vog(text)


@pytest.mark.parametrize('name', ['fig7b', 'fig7c', 'whitehead', 'star6', 'star8', 'reinsertion'])
def test_catalog_round_trip(name):
    entry = builtin(name)
    sigma = next(iter(entry.orientations.values()))
    graph, parsed = parse_vog(write_vog(entry.graph, sigma))
    assert graph == entry.graph
    assert parsed == sigma


def test_cubic_round_trip():
    cube = builtin_cubic('cube')
    graph, sigma = parse_vog(write_vog(cube))
    assert isinstance(graph, CubicGraph)
    assert graph == cube
    assert sigma is None


def test_colouring_records():
    text = write_colouring((0, 1, 1, 0))
    assert text == "c 0 0\nc 1 1\nc 2 1\nc 3 0\n"
    assert parse_colouring(text) == (0, 1, 1, 0)
    assert parse_colouring("V 1\n") == ()
    with pytest.raises(VogSemanticError):
        parse_colouring("c 0 0\nc 0 1\n")
    with pytest.raises(VogSemanticError):
        parse_colouring("c 0 0\nc 2 1\n", edge_count=3)


def test_orientation_records(star6):
    sigma = parse_orientation("o 0 1\no 1 1\no 2 1\no 3 1\no 4 1\no 5 1\n", star6.graph)
    assert sigma == star6.orientations['orbit1']
    with pytest.raises(VogSemanticError):
        parse_orientation("o 0 1\n", star6.graph)


def test_parse_pd():
    graph = parse_pd(BORROMEAN_PD)
    assert (graph.vertex_count, graph.edge_count) == (6, 12)
    assert graph.embedded
    bracketed = parse_pd("PD[" + BORROMEAN_PD.replace(' ', ', ') + "]")
    assert bracketed == graph


def test_pd_errors():
    with pytest.raises(LabelError):
        parse_pd("X[1,2,3,4] X[1,2,3,5]")
    with pytest.raises(NonQuadrivalentError):
        parse_pd("X[1,2,3]")
    with pytest.raises(LabelError):
        parse_pd("nothing here")


def test_builtins():
    assert builtin_names() == ['fig7a', 'fig7b', 'fig7c', 'reinsertion', 'star6', 'star8', 'whitehead']
    assert cubic_names() == ['cube', 'k33', 'k4', 'petersen', 'prism']
    assert sorted(builtin('star6').orientations) == ['orbit%d' % i for i in range(1, 8)]
    assert list(builtin('whitehead').orientations) == ['ex41']
    assert not builtin_cubic('petersen').embedded
    with pytest.raises(UnknownNameError):
        builtin('star10')
    with pytest.raises(UnknownNameError):
        builtin_cubic('k5')

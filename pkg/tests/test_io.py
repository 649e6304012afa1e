import pytest
from hypothesis import given

from conftest import graphs
from kpfree.errors import GraphFormatError
from kpfree.io import (
    format_dimacs,
    format_edge_list,
    parse_dimacs,
    parse_edge_list,
    read_graph,
    write_graph,
)


def test_edge_list_with_comments():
    g = parse_edge_list("# triangle\n3 3\n0 1\n1 2 # spoke\n\n0 2\n")
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n0 3\n", 2),
        ("3 2\n0 1\n1 0\n", 3),
        ("3 1\n1 1\n", 2),
        ("3 1\n0 x\n", 2),
        ("3 1\n0 1 2\n", 2),
        ("", 1),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_edge_count_mismatch():
    with pytest.raises(GraphFormatError, match="declares 2 edges"):
        parse_edge_list("3 2\n0 1\n")


def test_dimacs():
    g = parse_dimacs("c comment\np edge 3 2\ne 1 2\ne 2 3\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, line",
    [("e 1 2\n", 1), ("p edge 2 1\ne 1 3\n", 2), ("p edge 2 1\nx\n", 2), ("c only\n", 1)],
)
def test_dimacs_errors(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line


@given(graphs())
def test_round_trips(g):
    assert parse_edge_list(format_edge_list(g)) == g
    assert parse_dimacs(format_dimacs(g)) == g


def test_read_write_by_suffix(tmp_path):
    g = parse_edge_list("4 2\n0 1\n2 3\n")
    for name in ("g.el", "g.col"):
        write_graph(g, tmp_path / name)
        assert read_graph(tmp_path / name) == g
    assert (tmp_path / "g.col").read_text().startswith("p edge 4 2")

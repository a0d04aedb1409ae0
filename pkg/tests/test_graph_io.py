"""Matrix Market and edge-list parsing."""

import io

import pytest

from fillorder.graph_io import ParseError, dump_edge_list, dump_matrix_market, load_graph
from fillorder.instances import erdos_renyi


def test_mm_pattern_symmetric_path():
    text = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n3 2\n"
    g = load_graph(io.StringIO(text))
    assert g.n == 3 and g.m == 2
    assert g.adjacency == ((1,), (0, 2), (1,))


def test_mm_general_symmetrized_and_diagonal_dropped():
    text = ("%%MatrixMarket matrix coordinate pattern general\n"
            "3 3 3\n1 2\n2 1\n2 2\n")
    g = load_graph(text_stream := io.StringIO(text))
    assert g.m == 1 and set(g.neighbors(0)) == {1}


def test_mm_real_values_ignored():
    text = ("%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 1\n2 1 3.5\n")
    g = load_graph(io.StringIO(text))
    assert g.m == 1


def test_mm_empty_pattern_gives_isolated_vertices():
    text = "%%MatrixMarket matrix coordinate pattern symmetric\n4 4 0\n"
    g = load_graph(io.StringIO(text))
    assert g.n == 4 and g.m == 0


def test_mm_non_square_rejected():
    text = "%%MatrixMarket matrix coordinate pattern general\n2 3 0\n"
    with pytest.raises(ParseError):
        load_graph(io.StringIO(text))


def test_mm_out_of_range_reports_line():
    text = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n4 1\n"
    with pytest.raises(ParseError) as e:
        load_graph(io.StringIO(text))
    assert "line 3" in str(e.value)


def test_edge_list_dedup_and_self_loop():
    g = load_graph(io.StringIO("0 1\n1 0\n1 1\n"), fmt="edge-list")
    assert g.n == 2 and g.m == 1


def test_edge_list_comments_and_declared_n():
    g = load_graph(io.StringIO("# n = 5\n0 1  # an edge\n\n2 3\n"), fmt="edge-list")
    assert g.n == 5 and g.m == 2


def test_edge_list_bad_line_number():
    with pytest.raises(ParseError) as e:
        load_graph(io.StringIO("0 1\nnope\n"), fmt="edge-list")
    assert "line 2" in str(e.value)


def test_round_trip_both_formats():
    g = erdos_renyi(20, 0.2, seed=1)
    for dumper, fmt in ((dump_edge_list, "edge-list"), (dump_matrix_market, "auto")):
        buf = io.StringIO()
        dumper(g, buf)
        g2 = load_graph(io.StringIO(buf.getvalue()), fmt=fmt)
        assert g2.adjacency == g.adjacency and g2.n == g.n

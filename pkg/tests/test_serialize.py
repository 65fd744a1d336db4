from fractions import Fraction

import pytest

from stepgraphon import DomainError, StepKernel, complete_graph
from stepgraphon.constructions import binary_coloring
from stepgraphon.serialize import (
    format_rational,
    kernel_from_dict,
    kernel_to_dict,
    load_graph,
    load_kernel,
    parse_graph_text,
    parse_rational,
    save_graph,
    save_kernel,
    template_from_dict,
    template_to_dict,
)

F = Fraction


def test_rational_round_trip():
    for x in (F(0), F(3), F(-3), F(1, 2), F(-22, 7)):
        assert parse_rational(format_rational(x)) == x
    assert format_rational(F(2, 4)) == "1/2"
    assert format_rational(F(4, 2)) == "2"
    with pytest.raises(DomainError):
        parse_rational("one half")
    with pytest.raises(DomainError):
        parse_rational("1/0")


def test_kernel_round_trip(tmp_path):
    w = StepKernel(
        [F(1, 3), F(2, 3)], [[F(-1, 2), F(1)], [F(1), F(0)]]
    )
    again = kernel_from_dict(kernel_to_dict(w))
    assert again.part_sizes == w.part_sizes
    assert again.values == w.values
    path = tmp_path / "kernel.json"
    save_kernel(w, path)
    assert load_kernel(path).values == w.values


def test_kernel_dict_validation():
    with pytest.raises(DomainError):
        kernel_from_dict({"sizes": ["1"]})
    with pytest.raises(DomainError):
        kernel_from_dict(
            {"sizes": ["1"], "values": [["-1/2"]], "graphon": True}
        )


def test_template_round_trip():
    t = binary_coloring(2)
    again = template_from_dict(template_to_dict(t))
    assert again.k == t.k
    assert [c.values for c in again.colors] == [c.values for c in t.colors]


def test_graph_text_round_trip(tmp_path):
    g = complete_graph(4)
    path = tmp_path / "graph.txt"
    save_graph(g, path)
    assert load_graph(path).edges == g.edges


def test_graph_text_validation():
    with pytest.raises(DomainError):
        parse_graph_text("")
    with pytest.raises(DomainError):
        parse_graph_text("2 1\n")
    with pytest.raises(DomainError):
        parse_graph_text("3 2\n0 1\n0 1\n")
    with pytest.raises(DomainError):
        parse_graph_text("2 1\nx y\n")

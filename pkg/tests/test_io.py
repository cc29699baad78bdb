"""Edge-list and GML ingestion."""

from pathlib import Path

import numpy as np
import pytest

from blockfactor.errors import DanglingEdgeError, GraphParseError
from blockfactor.graphs import Graph
from blockfactor.io import (
    load_edgelist,
    load_gml,
    load_graph,
    load_labels,
    parse_gml,
    parse_gml_items,
    save_gml,
    save_labels,
)

DATA = Path(__file__).parent.parent / "src" / "blockfactor" / "data"


class TestEdgelist:
    def test_triangle(self, tmp_path):
        p = tmp_path / "k3.txt"
        p.write_text("0 1\n1 2\n2 0\n")
        g = load_edgelist(p)
        assert g.n == 3 and g.edges == ((0, 1), (0, 2), (1, 2))

    def test_comments_and_blank_lines(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("# header\n\n0 1  # trailing comment\n")
        assert load_edgelist(p).edges == ((0, 1),)

    def test_parse_error_reports_line(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("0 1\n0 1 2\n")
        with pytest.raises(GraphParseError) as exc:
            load_edgelist(p)
        assert exc.value.line == 2

    def test_non_integer_token(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("0 x\n")
        with pytest.raises(GraphParseError):
            load_edgelist(p)

    def test_load_graph_dispatches_on_suffix(self, tmp_path):
        p = tmp_path / "k3.edges"
        p.write_text("0 1\n1 2\n2 0\n")
        g, labels = load_graph(p)
        assert g.n == 3 and labels is None


class TestGml:
    def test_karate_fixture_counts(self):
        g, labels = load_gml(DATA / "karate.gml")
        assert g.n == 34
        assert g.num_edges == 78
        assert set(labels.tolist()) == {0, 1}

    def test_minimal_document(self):
        g, labels = parse_gml(
            'graph [ node [ id 10 value 1 label "a" ] node [ id 20 value 0 ] '
            "edge [ source 10 target 20 ] ]"
        )
        assert g.n == 2 and g.edges == ((0, 1),)
        assert labels.tolist() == [1, 0]
        assert g.node_names == ("a", "20")

    def test_unknown_keys_ignored(self):
        g, _ = parse_gml(
            'Creator "test" graph [ directed 0 sprawl 3.5 '
            "node [ id 0 w 2 ] node [ id 1 ] edge [ source 0 target 1 weight 7 ] ]"
        )
        assert g.edges == ((0, 1),)

    def test_nested_unknown_block_ignored(self):
        g, _ = parse_gml(
            "graph [ node [ id 0 graphics [ x 1 y 2 ] ] node [ id 1 ] "
            "edge [ source 0 target 1 ] ]"
        )
        assert g.n == 2

    def test_duplicate_node_id(self):
        with pytest.raises(GraphParseError):
            parse_gml("graph [ node [ id 0 ] node [ id 0 ] ]")

    def test_dangling_edge(self):
        with pytest.raises(DanglingEdgeError):
            parse_gml("graph [ node [ id 0 ] edge [ source 0 target 9 ] ]")

    def test_directed_flag_and_duplicates_collapse(self):
        nodes, pairs, directed = parse_gml_items(
            "graph [ directed 1 node [ id 0 ] node [ id 1 ] "
            "edge [ source 0 target 1 ] edge [ source 1 target 0 ] ]"
        )
        assert directed and len(pairs) == 2
        g, _ = parse_gml(
            "graph [ directed 1 node [ id 0 ] node [ id 1 ] "
            "edge [ source 0 target 1 ] edge [ source 1 target 0 ] ]"
        )
        assert g.edges == ((0, 1),)

    def test_partial_values_become_minus_one(self):
        _, labels = parse_gml(
            "graph [ node [ id 0 value 1 ] node [ id 1 ] ]"
        )
        assert labels.tolist() == [1, -1]

    def test_save_load_round_trip(self, tmp_path):
        g = Graph.from_edges(3, [(0, 1), (1, 2)], node_names=["x", "y", "z"])
        labels = np.array([0, 1, -1])
        p = tmp_path / "g.gml"
        save_gml(g, p, labels=labels)
        g2, labels2 = load_gml(p)
        assert g2.edges == g.edges
        assert g2.node_names == g.node_names
        assert labels2.tolist() == [0, 1, -1]


class TestLabelsFile:
    def test_round_trip_plain(self, tmp_path):
        p = tmp_path / "labels.txt"
        save_labels(np.array([0, 1, 1]), p)
        assert load_labels(p).tolist() == [0, 1, 1]

    def test_round_trip_with_names(self, tmp_path):
        p = tmp_path / "labels.txt"
        save_labels(np.array([1, 0]), p, names=["a", "b"])
        assert p.read_text() == "a\t1\nb\t0\n"
        assert load_labels(p).tolist() == [1, 0]

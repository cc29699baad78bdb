"""Graph file ingestion: whitespace edge lists and a small GML subset."""

import re
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import DanglingEdgeError, GraphParseError
from .graphs import Graph, symmetrize_directed

__all__ = [
    "load_graph",
    "load_edgelist",
    "save_edgelist",
    "read_edge_pairs",
    "parse_gml_items",
    "parse_gml",
    "load_gml",
    "save_gml",
    "load_labels",
    "save_labels",
]

PathLike = Union[str, Path]


def read_edge_pairs(path: PathLike) -> list[tuple[int, int]]:
    """Raw ordered integer pairs from a whitespace edge list.

    Lines are `i j` with 0-based ids; `#` starts a comment.  No
    symmetrization or self-loop filtering happens here.
    """
    pairs = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphParseError(
                    f"expected two integers, got {len(parts)} tokens", line=lineno
                )
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError(f"non-integer token in {parts!r}", line=lineno)
            if a < 0 or b < 0:
                raise GraphParseError(f"negative node id in ({a}, {b})", line=lineno)
            pairs.append((a, b))
    return pairs


def load_edgelist(path: PathLike) -> Graph:
    """Undirected simple graph from an edge list (node count = max id + 1).

    Self loops are dropped and duplicate/reciprocal pairs collapse, same
    as ``symmetrize_directed``.
    """
    return symmetrize_directed(read_edge_pairs(path))


def save_edgelist(g: Graph, path: PathLike) -> None:
    """One `i j` line per edge, i < j, sorted. Reloading recovers the edge set."""
    with open(path, "w") as fh:
        for i, j in g.edges:
            fh.write(f"{i} {j}\n")


_GML_TOKEN = re.compile(r'"[^"]*"|\[|\]|[^\s\[\]"]+')


def _tokenize_gml(text: str) -> list[tuple[str, int]]:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for m in _GML_TOKEN.finditer(line):
            tokens.append((m.group(0), lineno))
    return tokens


def _parse_gml_list(tokens, pos):
    """Parse key/value pairs until the closing bracket; returns (items, pos)."""
    items = []
    while pos < len(tokens):
        tok, lineno = tokens[pos]
        if tok == "]":
            return items, pos + 1
        key = tok
        pos += 1
        if pos >= len(tokens):
            raise GraphParseError(f"key {key!r} has no value", line=lineno)
        val, vline = tokens[pos]
        if val == "[":
            sub, pos = _parse_gml_list(tokens, pos + 1)
            items.append((key, sub, lineno))
        elif val == "]":
            raise GraphParseError(f"key {key!r} has no value", line=vline)
        else:
            if val.startswith('"'):
                parsed = val[1:-1]
            else:
                try:
                    parsed = int(val)
                except ValueError:
                    try:
                        parsed = float(val)
                    except ValueError:
                        parsed = val
            items.append((key, parsed, lineno))
            pos += 1
    return items, pos


def parse_gml_items(text: str) -> tuple[list[dict], list[tuple[int, int]], bool]:
    """Low-level GML read: node field dicts, raw edge pairs (in declaration
    order, re-indexed 0..n-1), and the directed flag.

    Unknown keys inside node/edge blocks are kept in the field dicts;
    unknown keys elsewhere are ignored.
    """
    tokens = _tokenize_gml(text)
    items, _ = _parse_gml_list(tokens, 0)
    graph_item = next((v for k, v, _ in items if k == "graph" and isinstance(v, list)), None)
    if graph_item is None:
        raise GraphParseError("no 'graph [ ... ]' block found")

    id_to_index: dict[int, int] = {}
    nodes: list[dict] = []
    raw_edges: list[tuple[int, int, int]] = []
    directed = False

    for key, val, lineno in graph_item:
        if key == "directed" and not isinstance(val, list):
            directed = bool(int(val))
        elif key == "node" and isinstance(val, list):
            fields = {k: v for k, v, _ in val if not isinstance(v, list)}
            if "id" not in fields:
                raise GraphParseError("node block without id", line=lineno)
            nid = int(fields["id"])
            if nid in id_to_index:
                raise GraphParseError(f"duplicate node id {nid}", line=lineno)
            id_to_index[nid] = len(id_to_index)
            nodes.append(fields)
        elif key == "edge" and isinstance(val, list):
            fields = {k: v for k, v, _ in val if not isinstance(v, list)}
            if "source" not in fields or "target" not in fields:
                raise GraphParseError("edge block without source/target", line=lineno)
            raw_edges.append((int(fields["source"]), int(fields["target"]), lineno))

    pairs = []
    for src, tgt, lineno in raw_edges:
        if src not in id_to_index:
            raise DanglingEdgeError(f"edge references undeclared node id {src}", line=lineno)
        if tgt not in id_to_index:
            raise DanglingEdgeError(f"edge references undeclared node id {tgt}", line=lineno)
        pairs.append((id_to_index[src], id_to_index[tgt]))
    return nodes, pairs, directed


def parse_gml(text: str) -> tuple[Graph, Optional[np.ndarray]]:
    """Parse the node/edge/value GML subset used by the benchmark fixtures.

    Nodes are indexed in declaration order.  A per-node integer ``value``
    becomes the ground-truth label vector (-1 where missing); if no node
    carries one, labels are None.  Directed files are symmetrized; self
    loops are dropped.
    """
    nodes, pairs, _ = parse_gml_items(text)
    g = symmetrize_directed(pairs, n=len(nodes))
    if any("label" in f for f in nodes):
        names = tuple(str(f.get("label", f["id"])) for f in nodes)
        g = Graph(n=g.n, edges=g.edges, node_names=names)
    if any("value" in f for f in nodes):
        labels = np.array([int(f.get("value", -1)) for f in nodes], dtype=np.int64)
    else:
        labels = None
    return g, labels


def load_gml(path: PathLike) -> tuple[Graph, Optional[np.ndarray]]:
    with open(path) as fh:
        return parse_gml(fh.read())


def save_gml(g: Graph, path: PathLike, labels: Optional[np.ndarray] = None) -> None:
    """Write the same GML subset the parser reads (ids 0..n-1)."""
    lines = ["graph ["]
    for i in range(g.n):
        parts = [f"  node [ id {i}"]
        if labels is not None and labels[i] >= 0:
            parts.append(f"value {int(labels[i])}")
        if g.node_names is not None:
            parts.append(f'label "{g.node_names[i]}"')
        lines.append(" ".join(parts) + " ]")
    for i, j in g.edges:
        lines.append(f"  edge [ source {i} target {j} ]")
    lines.append("]")
    Path(path).write_text("\n".join(lines) + "\n")


def load_labels(path: PathLike) -> np.ndarray:
    """Integer labels, one per line, `#` comments allowed."""
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(int(line.split("\t")[-1]))
            except ValueError:
                raise GraphParseError(f"non-integer label {line!r}", line=lineno)
    return np.array(out, dtype=np.int64)


def save_labels(labels: np.ndarray, path: PathLike, names=None) -> None:
    """One label per line; `name<TAB>label` when node names are given."""
    with open(path, "w") as fh:
        for i, lab in enumerate(labels):
            if names is not None:
                fh.write(f"{names[i]}\t{int(lab)}\n")
            else:
                fh.write(f"{int(lab)}\n")


def load_graph(
    path: PathLike, fmt: Optional[str] = None
) -> tuple[Graph, Optional[np.ndarray]]:
    """Load a graph file plus ground-truth labels when the file carries them.

    ``fmt`` is 'gml' or 'edgelist'; inferred from the suffix when omitted.
    """
    path = Path(path)
    if fmt is None:
        fmt = "gml" if path.suffix.lower() == ".gml" else "edgelist"
    if fmt == "gml":
        return load_gml(path)
    if fmt == "edgelist":
        return load_edgelist(path), None
    raise ValueError(f"unknown graph format {fmt!r}")

"""Graph ingestion and export: DIMACS ``.col`` edge lists and graph6 strings."""

from __future__ import annotations

import logging
import os
from typing import Iterable

import networkx as nx

from holebound.graph import Graph, GraphInputError

logger = logging.getLogger(__name__)

DIMACS_EXTENSIONS = (".col", ".dimacs")
GRAPH6_EXTENSIONS = (".g6", ".graph6")


class GraphFormatError(ValueError):
    """Raised when a graph file or string cannot be parsed."""


def parse_dimacs(lines: Iterable[str]) -> Graph:
    """
    Parses a DIMACS edge-format graph.

    Accepts ``c`` comment lines, one ``p edge N M`` (or ``p col N M``) problem
    line and ``e u v`` edge lines with 1-based ids. Loops and repeated edges are
    rejected with the offending line number.
    """
    n = None
    declared_edges = 0
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: second problem line")
            if len(tokens) != 4 or tokens[1].lower() not in ("edge", "col"):
                raise GraphFormatError(f"line {lineno}: expected 'p edge N M', got {line!r}")
            n, declared_edges = _int_token(tokens[2], lineno), _int_token(tokens[3], lineno)
        elif kind == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before the problem line")
            if len(tokens) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e u v', got {line!r}")
            u, v = _int_token(tokens[1], lineno), _int_token(tokens[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {lineno}: vertex out of range 1..{n} in {line!r}")
            if u == v:
                raise GraphFormatError(f"line {lineno}: loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(
                    f"line {lineno}: duplicate edge {key[0]}-{key[1]} (first on line {seen[key]})"
                )
            seen[key] = lineno
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {kind!r}")

    if n is None:
        raise GraphFormatError("missing problem line 'p edge N M'")
    if declared_edges != len(edges):
        logger.warning("DIMACS header declares %d edges, found %d", declared_edges, len(edges))
    return Graph(n, edges)


def _int_token(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected an integer, got {token!r}") from None
    if value < 0:
        raise GraphFormatError(f"line {lineno}: negative value {value}")
    return value


def format_dimacs(graph: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    lines.append(f"p edge {graph.n} {graph.num_edges}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def _to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges())
    return g


def to_graph6(graph: Graph) -> str:
    """Encodes ``graph`` as a graph6 string without header or trailing newline."""
    return nx.to_graph6_bytes(_to_networkx(graph), header=False).decode("ascii").strip()


def from_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else text
    data = data.strip()
    if not data:
        raise GraphFormatError("empty graph6 string")
    try:
        g = nx.from_graph6_bytes(data)
    except (ValueError, nx.NetworkXError) as e:
        raise GraphFormatError(f"invalid graph6 string: {e}") from e
    try:
        return Graph(g.number_of_nodes(), g.edges())
    except GraphInputError as e:
        raise GraphFormatError(f"invalid graph6 string: {e}") from e


def read_graph(path: str) -> Graph:
    """Reads a graph file, choosing the format by extension."""
    ext = os.path.splitext(path)[1].lower()
    with open(path, "r", encoding="ascii") as f:
        if ext in DIMACS_EXTENSIONS:
            return parse_dimacs(f)
        if ext in GRAPH6_EXTENSIONS:
            for line in f:
                if line.strip():
                    return from_graph6(line)
            raise GraphFormatError(f"{path}: no graph6 line found")
    raise GraphFormatError(f"{path}: unknown graph file extension {ext!r}")


def write_graph(graph: Graph, path: str) -> None:
    ext = os.path.splitext(path)[1].lower()
    if ext in DIMACS_EXTENSIONS:
        text = format_dimacs(graph)
    elif ext in GRAPH6_EXTENSIONS:
        text = to_graph6(graph) + "\n"
    else:
        raise GraphFormatError(f"{path}: unknown graph file extension {ext!r}")
    with open(path, "w", encoding="ascii") as f:
        f.write(text)

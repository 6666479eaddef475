"""Graph files: edge lists and JSON.

Edge list::

    # comments are allowed on load, never written
    n m
    i j        (m lines, 0 <= i < j < n, ascending)

JSON carries the same edges plus vertex coordinates as ``p/q`` strings, so
indicator-model adjacency can be re-derived from the file alone.
"""

import json
from enum import StrEnum
from fractions import Fraction
from pathlib import Path
from typing import TextIO

import numpy as np

from src.contracts.schema_parser import validate_document
from src.core.exceptions import ValidationError

from .sampled_graph import SampledGraph


class GraphFormat(StrEnum):
    EDGELIST = "edgelist"
    JSON = "json"


def write_edgelist(graph: SampledGraph, stream: TextIO) -> None:
    edges = graph.edges()
    stream.write(f"{graph.n} {len(edges)}\n")
    for i, j in edges:
        stream.write(f"{i} {j}\n")


def read_edgelist(stream: TextIO, source: str = "<stream>") -> SampledGraph:
    """Parse an edge list; edges must be ascending with i < j.

    Raises:
        ValidationError: On malformed headers, edges or counts.
    """
    rows: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValidationError(f"{source}:{lineno}: expected two integers, got {line!r}")
        try:
            rows.append((lineno, int(fields[0]), int(fields[1])))
        except ValueError as e:
            raise ValidationError(f"{source}:{lineno}: not an integer pair: {line!r}") from e

    if not rows:
        raise ValidationError(f"{source}: missing 'n m' header")
    _, n, m = rows[0]
    edges = [(i, j) for _, i, j in rows[1:]]
    if n < 0 or m < 0:
        raise ValidationError(f"{source}: negative header values {n} {m}")
    if len(edges) != m:
        raise ValidationError(f"{source}: header announces {m} edges, found {len(edges)}")
    previous = (-1, -1)
    for (lineno, i, j), edge in zip(rows[1:], edges, strict=True):
        if not 0 <= i < j < n:
            raise ValidationError(f"{source}:{lineno}: edge {i} {j} needs 0 <= i < j < {n}")
        if edge <= previous:
            raise ValidationError(f"{source}:{lineno}: edges must be strictly ascending")
        previous = edge
    return SampledGraph.from_edges(n, edges)


def graph_to_dict(graph: SampledGraph) -> dict:
    return {
        "n": graph.n,
        "edges": [list(edge) for edge in graph.edges()],
        "coords": None if graph.coords is None else [str(c) for c in graph.coords],
        "blocks": None if graph.blocks is None else [int(b) for b in graph.blocks],
        "seed": graph.seed,
        "model": graph.descriptor,
    }


def write_json(graph: SampledGraph, stream: TextIO) -> None:
    json.dump(graph_to_dict(graph), stream, separators=(",", ":"))
    stream.write("\n")


def graph_from_dict(data: dict) -> SampledGraph:
    validate_document(data, "graph.schema.json")
    n = data["n"]
    edges = [(i, j) for i, j in data["edges"]]
    if any(not 0 <= i < j < n for i, j in edges):
        raise ValidationError(f"edges must satisfy 0 <= i < j < {n}", "edges")
    coords = data.get("coords")
    blocks = data.get("blocks")
    return SampledGraph.from_edges(
        n,
        edges,
        coords=None if coords is None else [Fraction(c) for c in coords],
        blocks=None if blocks is None else np.asarray(blocks, dtype=np.int64),
        seed=data.get("seed"),
        descriptor=data.get("model"),
    )


def read_json(stream: TextIO, source: str = "<stream>") -> SampledGraph:
    try:
        data = json.load(stream)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{source}: invalid JSON: {e}") from e
    return graph_from_dict(data)


def write_graph(graph: SampledGraph, stream: TextIO, fmt: GraphFormat | str) -> None:
    if GraphFormat(fmt) is GraphFormat.JSON:
        write_json(graph, stream)
    else:
        write_edgelist(graph, stream)


def detect_format(path: Path) -> GraphFormat:
    return GraphFormat.JSON if path.suffix.lower() == ".json" else GraphFormat.EDGELIST


def load_graph(path: str | Path, fmt: GraphFormat | str | None = None) -> SampledGraph:
    """Read a graph file; the format defaults to the file extension.

    Raises:
        ValidationError: If the file cannot be read or parsed.
    """
    path = Path(path)
    fmt = GraphFormat(fmt) if fmt else detect_format(path)
    try:
        with path.open(encoding="utf-8") as stream:
            if fmt is GraphFormat.JSON:
                return read_json(stream, str(path))
            return read_edgelist(stream, str(path))
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}", "path") from e

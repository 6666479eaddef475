"""gen: sample a graph and write it."""

import io
import logging
from pathlib import Path
from typing import Any

from src.core.exceptions import ValidationError
from src.observability import traced_command
from src.sampling.graph_io import GraphFormat, write_graph

from .base import BaseCommand, build_model
from .result import CommandResult
from .validation import validated_command

logger = logging.getLogger(__name__)


class GenCommand(BaseCommand):
    """Sample n vertices from a model; output is byte-identical for a fixed seed."""

    @property
    def name(self) -> str:
        return "gen"

    @property
    def description(self) -> str:
        return "Sample a graph from a model and write it as an edge list or JSON"

    @traced_command()
    @validated_command
    def execute(self, **params: Any) -> CommandResult:
        model = build_model(params, self.config)
        graph = model.sample(params["n"], params["seed"])
        fmt = GraphFormat(params.get("format", GraphFormat.EDGELIST))

        buffer = io.StringIO()
        write_graph(graph, buffer, fmt)
        text = buffer.getvalue()

        data = {**graph.summary(), **model.summary(), "format": str(fmt)}
        out = params.get("out")
        if out is None:
            return CommandResult.ok(data, output=text)

        path = Path(out)
        try:
            path.write_text(text, encoding="utf-8", newline="\n")
        except OSError as e:
            raise ValidationError(f"cannot write {path}: {e}", "out") from e
        logger.info("Wrote %d vertices, %d edges to %s", graph.n, graph.edge_count, path)
        return CommandResult.ok({**data, "out": str(path)})

"""Report rendering: line-oriented text through Jinja2 templates, or JSON.

Every report object exposes ``summary()``; the text templates receive the
keys of that dict as variables.
"""

import json
from enum import StrEnum
from functools import lru_cache
from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from src.observability.serializers import safe_serialize

TEMPLATES_DIR = Path(__file__).parent / "templates"


class ReportFormat(StrEnum):
    TEXT = "text"
    JSON = "json"


def _tojson_filter(value: object) -> str:
    return json.dumps(safe_serialize(value), sort_keys=True)


def _fmt_filter(value: float | None, digits: int = 6) -> str:
    if value is None:
        return "-"
    return f"{value:.{digits}g}"


@lru_cache(maxsize=1)
def get_template_env() -> Environment:
    """Jinja2 environment over the report templates directory."""
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATES_DIR)),
        autoescape=False,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        undefined=StrictUndefined,
    )
    env.filters["tojson"] = _tojson_filter
    env.filters["fmt"] = _fmt_filter
    return env


def render_text(template_name: str, **context) -> str:
    """Render ``{template_name}.txt.j2``.

    Raises:
        jinja2.TemplateNotFound: If the template doesn't exist.
    """
    return get_template_env().get_template(f"{template_name}.txt.j2").render(**context)


def render_json(data: object) -> str:
    return json.dumps(safe_serialize(data), indent=2, sort_keys=True) + "\n"


def render_report(template_name: str, data: dict, fmt: ReportFormat | str = ReportFormat.TEXT) -> str:
    """Render a command's report data as text or JSON."""
    if ReportFormat(fmt) is ReportFormat.JSON:
        return render_json(data)
    return render_text(template_name, **data)

"""File formats: rational strings, kernel/template JSON, graph text files."""

from __future__ import annotations

import json
from fractions import Fraction

from .core import ColoringTemplate, SimpleGraph, StepKernel
from .errors import DomainError

__all__ = [
    "format_rational",
    "parse_rational",
    "kernel_to_dict",
    "kernel_from_dict",
    "template_to_dict",
    "template_from_dict",
    "load_kernel",
    "save_kernel",
    "load_template",
    "load_graph",
    "save_graph",
    "parse_graph_text",
]


def format_rational(x: Fraction) -> str:
    """Lowest-terms "p/q" string, or plain "n" for integers; sign on the numerator."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational {text!r}") from exc


def kernel_to_dict(w: StepKernel) -> dict:
    return {
        "sizes": [format_rational(s) for s in w.part_sizes],
        "values": [[format_rational(v) for v in row] for row in w.values],
        "graphon": w.graphon_flag,
    }


def kernel_from_dict(data: dict) -> StepKernel:
    try:
        sizes = [parse_rational(s) for s in data["sizes"]]
        values = [[parse_rational(v) for v in row] for row in data["values"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed kernel JSON: {exc}") from exc
    kernel = StepKernel(sizes, values)
    if data.get("graphon") and not kernel.graphon_flag:
        raise DomainError("kernel declared a graphon but has values outside [0,1]")
    return kernel


def template_to_dict(t: ColoringTemplate) -> dict:
    return {"k": t.k, "colors": [kernel_to_dict(c) for c in t.colors]}


def template_from_dict(data: dict) -> ColoringTemplate:
    try:
        colors = [kernel_from_dict(c) for c in data["colors"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed template JSON: {exc}") from exc
    return ColoringTemplate(colors)


def load_kernel(path) -> StepKernel:
    with open(path) as fh:
        return kernel_from_dict(json.load(fh))


def save_kernel(w: StepKernel, path) -> None:
    with open(path, "w") as fh:
        json.dump(kernel_to_dict(w), fh, indent=2)
        fh.write("\n")


def load_template(path) -> ColoringTemplate:
    with open(path) as fh:
        return template_from_dict(json.load(fh))


def parse_graph_text(text: str) -> SimpleGraph:
    """Plain text graph: first line "n m", then m lines "u v" (0-based)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DomainError("empty graph file")
    try:
        n, m = map(int, lines[0].split())
        edges = set()
        for ln in lines[1 : m + 1]:
            u, v = map(int, ln.split())
            edges.add((u, v))
    except ValueError as exc:
        raise DomainError(f"malformed graph file: {exc}") from exc
    if len(lines) - 1 != m:
        raise DomainError(f"expected {m} edge lines, found {len(lines) - 1}")
    if len(edges) != m:
        raise DomainError("duplicate edges in graph file")
    return SimpleGraph(n, edges)


def load_graph(path) -> SimpleGraph:
    with open(path) as fh:
        return parse_graph_text(fh.read())


def save_graph(g: SimpleGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.vertex_count} {g.edge_count}\n")
        for u, v in g.edge_list():
            fh.write(f"{u} {v}\n")

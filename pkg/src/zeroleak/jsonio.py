"""Canonical JSON encoding and strict decoding for every file format.

Output bytes are deterministic: sorted keys, two-space indent, UTF-8, one
trailing newline.  Probabilities and leakage values travel as "p/q" strings so
nothing is rounded in transit.  Decoders reject unknown keys; a loose file is
better refused than half-read.
"""

from __future__ import annotations

import json

from .errors import DomainError
from .graphs import Graph, VertexSetFamily, make_graph
from .leakage import BoundsReport, GuessBudget, StochasticMapping, make_mapping
from .rationals import bits_display, format_ratio, parse_ratio


def canonical_json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def load_json_file(path: str, what: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise DomainError("unreadable_file", f"cannot read {what} file {path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise DomainError("bad_json", f"{what} file {path} is not valid JSON: {exc}")


def _require_keys(obj, required: set[str], optional: set[str], what: str, code: str) -> None:
    if not isinstance(obj, dict):
        raise DomainError(code, f"{what} must be a JSON object")
    missing = required - obj.keys()
    if missing:
        raise DomainError(code, f"{what} is missing keys: {', '.join(sorted(missing))}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise DomainError(code, f"{what} has unknown keys: {', '.join(sorted(unknown))}")


def graph_to_obj(g: Graph) -> dict:
    obj: dict = {"n": g.vertex_count, "edges": [list(e) for e in sorted(g.edges)]}
    if g.labels is not None:
        obj["labels"] = list(g.labels)
    return obj


def graph_from_obj(obj) -> Graph:
    _require_keys(obj, {"n", "edges"}, {"labels"}, "graph", "bad_graph_json")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError("bad_graph_json", f'"n" must be a nonnegative integer, got {n!r}')
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise DomainError("bad_graph_json", '"edges" must be a list of vertex pairs')
    pairs = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in e):
            raise DomainError("bad_graph_json", f"edge {e!r} must be a pair of integers")
        pairs.append((e[0], e[1]))
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise DomainError("bad_graph_json", '"labels" must be a list of strings')
    return make_graph(n, pairs, labels)


def mapping_to_obj(m: StochasticMapping) -> dict:
    return {
        "t": m.t,
        "codewords": list(m.codewords),
        "rows": [[format_ratio(e) for e in row] for row in m.rows],
    }


def mapping_from_obj(obj) -> StochasticMapping:
    _require_keys(obj, {"t", "codewords", "rows"}, set(), "mapping", "bad_mapping_json")
    t = obj["t"]
    if not isinstance(t, int) or isinstance(t, bool):
        raise DomainError("bad_mapping_json", f'"t" must be an integer, got {t!r}')
    codewords = obj["codewords"]
    if not isinstance(codewords, list) or not all(isinstance(c, str) for c in codewords):
        raise DomainError("bad_mapping_json", '"codewords" must be a list of strings')
    rows = obj["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DomainError("bad_mapping_json", '"rows" must be a list of lists')
    parsed = [[parse_ratio(e) if isinstance(e, str) else _reject_entry(e) for e in row] for row in rows]
    return make_mapping(t, codewords, parsed)


def _reject_entry(e):
    raise DomainError("bad_mapping_json", f'probability {e!r} must be a "p/q" string')


def family_to_obj(f: VertexSetFamily) -> dict:
    return {"sets": [list(s) for s in f.sets], "mult": list(f.multiplicities)}


def bounds_to_obj(report: BoundsReport) -> dict:
    return {
        "lower": format_ratio(report.lower.log2_of),
        "upper": format_ratio(report.upper.log2_of),
        "lower_bits": bits_display(report.lower.log2_of),
        "upper_bits": bits_display(report.upper.log2_of),
        "tight": report.tight,
        "provenance": dict(report.provenance),
    }


def parse_budget_spec(text: str) -> GuessBudget:
    """Parse a budget argument: const:c, poly:d, exp:p/q, or table:PATH."""
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise DomainError("bad_budget_spec", f"budget {text!r} must look like kind:value")
    if kind == "const":
        return GuessBudget.constant(_parse_int(rest, "constant budget count"))
    if kind == "poly":
        return GuessBudget.polynomial(_parse_int(rest, "polynomial budget degree"))
    if kind == "exp":
        return GuessBudget.exponential(parse_ratio(rest))
    if kind == "table":
        obj = load_json_file(rest, "budget table")
        _require_keys(obj, {"values"}, {"growth"}, "budget table", "bad_budget_spec")
        values = obj["values"]
        if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
            raise DomainError("bad_budget_spec", '"values" must be a list of integers')
        growth = obj.get("growth")
        if growth is not None and not isinstance(growth, str):
            raise DomainError("bad_budget_spec", '"growth" must be a "p/q" string or null')
        return GuessBudget.table(values, None if growth is None else parse_ratio(growth))
    raise DomainError("bad_budget_spec", f"unknown budget kind {kind!r}")


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DomainError("bad_budget_spec", f"{what} must be an integer, got {text!r}")

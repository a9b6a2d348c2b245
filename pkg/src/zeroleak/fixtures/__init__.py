"""Named example graphs, shipped as JSON and backed by parametric builders.

`fixture:NAME` on the command line resolves here.  Shipped files win over the
parametric patterns c<n> (cycle), k<n> (complete), e<n> (edgeless), p<n>
(path), so the two sources can never disagree about a shipped name.
"""

from __future__ import annotations

import json
from importlib import resources

from ..errors import DomainError
from ..graphs import Graph, make_graph
from ..jsonio import graph_from_obj

SHIPPED = (
    "c5",
    "c7",
    "e1",
    "e2",
    "e3",
    "e5",
    "fig1",
    "fig1_theta",
    "k2",
    "k3",
    "k4",
    "k5",
    "p3",
    "petersen",
)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("bad_fixture_size", f"a cycle needs at least 3 vertices, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("bad_fixture_size", f"a complete graph needs at least 1 vertex, got {n}")
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def edgeless_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("bad_fixture_size", f"an edgeless graph needs at least 1 vertex, got {n}")
    return make_graph(n, [])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("bad_fixture_size", f"a path needs at least 1 vertex, got {n}")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    # outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return make_graph(10, edges)


def quality_pair_graph() -> Graph:
    """Four sources in two confusable quality pairs; the rest are distinguishable."""
    labels = ("VH", "H", "VL", "L")
    return make_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)], labels)


def quality_pair_adversary() -> Graph:
    """Adversary closeness for the quality pairs: a guess is good within a pair."""
    labels = ("VH", "H", "VL", "L")
    return make_graph(4, [(0, 1), (2, 3)], labels)


def _load_shipped(name: str) -> Graph:
    text = resources.files("zeroleak.fixtures").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return graph_from_obj(json.loads(text))


def resolve_fixture(name: str) -> Graph:
    """Look up a fixture by name: shipped file first, then a parametric pattern."""
    if name in SHIPPED:
        return _load_shipped(name)
    kind, digits = name[:1], name[1:]
    if digits.isdigit():
        n = int(digits)
        if kind == "c":
            return cycle_graph(n)
        if kind == "k":
            return complete_graph(n)
        if kind == "e":
            return edgeless_graph(n)
        if kind == "p":
            return path_graph(n)
    raise DomainError("unknown_fixture", f"no fixture named {name!r}", {"known": list(SHIPPED)})


def fixture_corpus() -> tuple[tuple[str, Graph], ...]:
    """Every shipped fixture, by name, in name order."""
    return tuple((name, resolve_fixture(name)) for name in SHIPPED)

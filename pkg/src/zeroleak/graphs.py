"""Finite simple graphs, graph products, and independent-set machinery.

Vertices are 0-based indices.  Length-t source sequences are identified with
vertices of the t-fold OR power through a big-endian base-|V| encoding, so
tuple and index views of a sequence are interchangeable everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .budget import AUTOMORPHISM_VERTEX_CAP, WorkMeter
from .errors import DomainError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with optional distinct vertex labels."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 0:
            raise DomainError("bad_vertex_count", f"vertex_count must be a nonnegative integer, got {n!r}")
        for edge in self.edges:
            if len(edge) != 2:
                raise DomainError("bad_edge", f"edge {edge!r} is not a pair")
            u, v = edge
            if u == v:
                raise DomainError("self_loop", f"self-loop at vertex {u}")
            if not (0 <= u < v < n):
                raise DomainError("bad_edge", f"edge {edge!r} out of range or not normalized for n={n}")
        if self.labels is not None:
            if len(self.labels) != n:
                raise DomainError("bad_labels", f"expected {n} labels, got {len(self.labels)}")
            if len(set(self.labels)) != n:
                raise DomainError("bad_labels", "labels must be pairwise distinct")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return (min(u, v), max(u, v)) in self.edges


def make_graph(n: int, edges, labels=None) -> Graph:
    """Build a Graph from any iterable of vertex pairs; (u,v) and (v,u) collapse."""
    normalized = set()
    for pair in edges:
        u, v = pair
        if not isinstance(u, int) or not isinstance(v, int):
            raise DomainError("bad_edge", f"edge endpoints must be integers, got {pair!r}")
        if u == v:
            raise DomainError("self_loop", f"self-loop at vertex {u}")
        normalized.add((min(u, v), max(u, v)))
    label_tuple = tuple(labels) if labels is not None else None
    return Graph(n, frozenset(normalized), label_tuple)


@lru_cache(maxsize=None)
def adjacency(g: Graph) -> tuple[frozenset[int], ...]:
    """Neighbor sets, one frozenset per vertex."""
    sets: list[set[int]] = [set() for _ in range(g.vertex_count)]
    for u, v in g.edges:
        sets[u].add(v)
        sets[v].add(u)
    return tuple(frozenset(s) for s in sets)


def _require_nonempty(g: Graph) -> None:
    if g.vertex_count == 0:
        raise DomainError("empty_graph", "operation requires a graph with at least one vertex")


@dataclass(frozen=True)
class SequenceVertex:
    """A length-t symbol tuple fused with its canonical product-graph index.

    The index is the big-endian base-`base` reading of `symbols`, matching the
    vertex numbering produced by iterated graph products.
    """

    symbols: tuple[int, ...]
    base: int
    encoded_index: int

    def __post_init__(self):
        if self.base < 1:
            raise DomainError("bad_base", f"alphabet size must be >= 1, got {self.base}")
        if len(self.symbols) < 1:
            raise DomainError("bad_sequence", "a sequence vertex needs at least one symbol")
        for s in self.symbols:
            if not (0 <= s < self.base):
                raise DomainError("bad_sequence", f"symbol {s} out of range for alphabet size {self.base}")
        if self.encoded_index != encode_symbols(self.symbols, self.base):
            raise DomainError(
                "bad_sequence",
                f"encoded_index {self.encoded_index} does not match symbols {self.symbols}",
            )

    @classmethod
    def from_symbols(cls, symbols, base: int) -> "SequenceVertex":
        symbols = tuple(symbols)
        return cls(symbols, base, encode_symbols(symbols, base))

    @classmethod
    def from_index(cls, index: int, t: int, base: int) -> "SequenceVertex":
        return cls(decode_index(index, t, base), base, index)


def encode_symbols(symbols, base: int) -> int:
    value = 0
    for s in symbols:
        value = value * base + s
    return value


def decode_index(index: int, t: int, base: int) -> tuple[int, ...]:
    if t < 1:
        raise DomainError("bad_sequence", f"sequence length must be >= 1, got {t}")
    if base < 1:
        raise DomainError("bad_base", f"alphabet size must be >= 1, got {base}")
    if not (0 <= index < base**t):
        raise DomainError("bad_sequence", f"index {index} out of range for base {base}, t={t}")
    out = []
    for _ in range(t):
        index, r = divmod(index, base)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True)
class Hypergraph:
    """Vertex list plus a deduplicated family of nonempty hyperedges.

    Vertex ids are plain integers: base-graph indices at t=1, encoded sequence
    indices for t > 1.  Multiplicities never live here; multisets of vertex
    sets are VertexSetFamily's job.
    """

    vertex_ids: tuple[int, ...]
    hyperedges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(set(self.vertex_ids)) != len(self.vertex_ids):
            raise DomainError("bad_hypergraph", "duplicate vertex ids")
        vertex_set = set(self.vertex_ids)
        seen = set()
        for edge in self.hyperedges:
            if len(edge) == 0:
                raise DomainError("bad_hypergraph", "empty hyperedge")
            if len(set(edge)) != len(edge):
                raise DomainError("bad_hypergraph", f"repeated vertex inside hyperedge {edge!r}")
            if not set(edge) <= vertex_set:
                raise DomainError("bad_hypergraph", f"hyperedge {edge!r} leaves the vertex set")
            key = frozenset(edge)
            if key in seen:
                raise DomainError("bad_hypergraph", f"duplicate hyperedge {edge!r}")
            seen.add(key)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_ids)


def make_hypergraph(vertex_ids, hyperedges) -> Hypergraph:
    """Sort and deduplicate raw input into a canonical Hypergraph."""
    vertices = tuple(sorted(set(vertex_ids)))
    dedup = {frozenset(e) for e in hyperedges if len(e) > 0}
    edges = tuple(sorted(tuple(sorted(e)) for e in dedup))
    return Hypergraph(vertices, edges)


@dataclass(frozen=True)
class VertexSetFamily:
    """Multiset of vertex sets: parallel lists of sets and positive counts.

    Used for b-fold colorings and coverings.  A set may be empty: trimming an
    over-provisioned coloring can hollow out a color class, and dropping it
    would break the multiset size accounting.
    """

    sets: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.sets) != len(self.multiplicities):
            raise DomainError("bad_family", "sets and multiplicities must be parallel")
        seen = set()
        for s in self.sets:
            if tuple(sorted(set(s))) != s:
                raise DomainError("bad_family", f"set {s!r} must be sorted and duplicate-free")
            if s in seen:
                raise DomainError("bad_family", f"duplicate set {s!r}; raise its multiplicity instead")
            seen.add(s)
        for m in self.multiplicities:
            if not isinstance(m, int) or m < 1:
                raise DomainError("bad_family", f"multiplicity {m!r} must be a positive integer")

    @property
    def size(self) -> int:
        """Total multiset cardinality m (sum of multiplicities)."""
        return sum(self.multiplicities)

    def coverage(self, vertex: int) -> int:
        return sum(m for s, m in zip(self.sets, self.multiplicities) if vertex in s)


def make_family(occurrences) -> VertexSetFamily:
    """Collapse a list of vertex sets (with repetition) into a VertexSetFamily."""
    counts: dict[tuple[int, ...], int] = {}
    for occ in occurrences:
        key = tuple(sorted(set(occ)))
        counts[key] = counts.get(key, 0) + 1
    keys = sorted(counts)
    return VertexSetFamily(tuple(keys), tuple(counts[k] for k in keys))


# ---------------------------------------------------------------------------
# Graph products
# ---------------------------------------------------------------------------

def or_product(g: Graph, h: Graph) -> Graph:
    """Disjunctive product: pair vertices adjacent iff adjacent in either slot.

    Vertex (i, j) is encoded as i*|V(h)| + j, so iterating the product keeps
    the big-endian sequence encoding.
    """
    _require_nonempty(g)
    _require_nonempty(h)
    nh = h.vertex_count
    n = g.vertex_count * nh
    edges = set()
    for a in range(n):
        i1, j1 = divmod(a, nh)
        for b in range(a + 1, n):
            i2, j2 = divmod(b, nh)
            if g.has_edge(i1, i2) or h.has_edge(j1, j2):
                edges.add((a, b))
    return Graph(n, frozenset(edges))


def and_product(g: Graph, h: Graph) -> Graph:
    """Strong-style product: distinct pairs adjacent iff every slot is equal or adjacent.

    The all-slots-equal pair is the same vertex, so the result stays simple.
    """
    _require_nonempty(g)
    _require_nonempty(h)
    nh = h.vertex_count
    n = g.vertex_count * nh
    edges = set()
    for a in range(n):
        i1, j1 = divmod(a, nh)
        for b in range(a + 1, n):
            i2, j2 = divmod(b, nh)
            if (i1 == i2 or g.has_edge(i1, i2)) and (j1 == j2 or h.has_edge(j1, j2)):
                edges.add((a, b))
    return Graph(n, frozenset(edges))


@lru_cache(maxsize=None)
def or_power(g: Graph, t: int) -> Graph:
    if t < 1:
        raise DomainError("bad_power", f"power t must be >= 1, got {t}")
    _require_nonempty(g)
    result = g
    for _ in range(t - 1):
        result = or_product(result, g)
    return result


@lru_cache(maxsize=None)
def and_power(g: Graph, t: int) -> Graph:
    if t < 1:
        raise DomainError("bad_power", f"power t must be >= 1, got {t}")
    _require_nonempty(g)
    result = g
    for _ in range(t - 1):
        result = and_product(result, g)
    return result


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """The vertex together with its neighbors."""
    if not (0 <= v < g.vertex_count):
        raise DomainError("vertex_out_of_range", f"vertex {v} out of range for n={g.vertex_count}")
    return adjacency(g)[v] | {v}


# ---------------------------------------------------------------------------
# Maximal independent sets
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def maximal_independent_sets(g: Graph) -> tuple[tuple[int, ...], ...]:
    """All maximal independent sets, sorted lexicographically by member list.

    Runs pivoting Bron-Kerbosch on the complement graph (maximal cliques of
    the complement are exactly the maximal independent sets).  Pivot choice is
    the lowest-index vertex with the most complement-neighbors inside P, so
    output and work are deterministic.
    """
    _require_nonempty(g)
    n = g.vertex_count
    adj = adjacency(g)
    full = frozenset(range(n))
    # complement neighborhoods; self excluded
    co = [full - adj[v] - {v} for v in range(n)]
    meter = WorkMeter("mis_enumeration")
    found: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        meter.spend(1)
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = -1
        best = -1
        for u in sorted(p | x):
            score = len(p & co[u])
            if score > best:
                best = score
                pivot = u
        for v in sorted(p - co[pivot]):
            expand(r | {v}, p & co[v], x & co[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(n)), set())
    return tuple(sorted(found))


def independence_number(g: Graph) -> int:
    return max(len(s) for s in maximal_independent_sets(g))


def mis_of_or_power(g: Graph, t: int) -> tuple[tuple[int, ...], ...]:
    """Maximal independent sets of the t-fold OR power, built as products.

    Every maximal independent set of the power factors into one maximal
    independent set per coordinate, so the family is the full Cartesian
    product, |MIS|**t sets, each encoded through the sequence numbering.
    """
    if t < 1:
        raise DomainError("bad_power", f"power t must be >= 1, got {t}")
    base_sets = maximal_independent_sets(g)
    n = g.vertex_count
    meter = WorkMeter("mis_enumeration")
    alpha = max(len(s) for s in base_sets)
    meter.check_size(len(base_sets) ** t * alpha**t, "product MIS family")
    out = []
    for combo in itertools.product(base_sets, repeat=t):
        members = tuple(sorted(encode_symbols(symbols, n) for symbols in itertools.product(*combo)))
        out.append(members)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# Vertex transitivity
# ---------------------------------------------------------------------------

def is_vertex_transitive(g: Graph) -> bool:
    """Brute-force orbit check: some automorphism sends vertex 0 to every vertex.

    Backtracking over degree-compatible images; hard vertex cap keeps the
    permutation search at desk scale.
    """
    _require_nonempty(g)
    n = g.vertex_count
    if n > AUTOMORPHISM_VERTEX_CAP:
        from .errors import ResourceBudgetError

        raise ResourceBudgetError("automorphism_vertices", AUTOMORPHISM_VERTEX_CAP)
    adj = adjacency(g)
    degrees = [len(adj[v]) for v in range(n)]
    if len(set(degrees)) > 1:
        return False  # vertex-transitive graphs are regular
    if n == 1:
        return True

    def extend(image: list[int | None], used: set[int]) -> bool:
        try:
            i = image.index(None)
        except ValueError:
            return True
        for w in range(n):
            if w in used or degrees[w] != degrees[i]:
                continue
            ok = True
            for j, wj in enumerate(image):
                if wj is None or j == i:
                    continue
                if (j in adj[i]) != (wj in adj[w]):
                    ok = False
                    break
            if ok:
                image[i] = w
                used.add(w)
                if extend(image, used):
                    return True
                image[i] = None
                used.remove(w)
        return False

    for target in range(1, n):
        image: list[int | None] = [None] * n
        image[0] = target
        if not extend(image, {target}):
            return False
    return True


# ---------------------------------------------------------------------------
# Associated hypergraph
# ---------------------------------------------------------------------------

def associated_hypergraph(T, theta: Graph, t: int) -> Hypergraph:
    """Hypergraph on T whose hyperedges are the nonempty traces of closed
    neighborhoods of the t-fold AND power of theta.

    T is expected to be a maximal independent set of the companion confusion
    graph's OR power (the caller validates that); here T only needs to be a
    nonempty set of in-range sequence indices.
    """
    _require_nonempty(theta)
    if t < 1:
        raise DomainError("bad_power", f"power t must be >= 1, got {t}")
    members = tuple(sorted(set(T)))
    if not members:
        raise DomainError("empty_vertex_set", "T must be nonempty")
    total = theta.vertex_count**t
    for v in members:
        if not (0 <= v < total):
            raise DomainError("vertex_out_of_range", f"sequence index {v} out of range for |V|^t={total}")
    product = and_power(theta, t)
    member_set = set(members)
    edges = set()
    for x in range(total):
        trace = member_set & closed_neighborhood(product, x)
        if trace:
            edges.add(tuple(sorted(trace)))
    return Hypergraph(members, tuple(sorted(edges)))

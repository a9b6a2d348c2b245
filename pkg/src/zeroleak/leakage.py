"""Leakage of zero-error schemes and guessing-adversary bounds.

A scheme for t source symbols is a row-stochastic matrix over codewords whose
columns only mix sources that are never confusable, i.e. each codeword's
support is independent in the t-fold OR power of the confusion graph.  The
adversary's advantage is measured multiplicatively and reported as the exact
rational whose log2 is the leakage in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .budget import AUTOMORPHISM_VERTEX_CAP
from .errors import DomainError, ZeroleakError
from .graphs import (
    Graph,
    VertexSetFamily,
    associated_hypergraph,
    independence_number,
    is_vertex_transitive,
    make_family,
    maximal_independent_sets,
    mis_of_or_power,
    or_power,
)
from .programs import (
    covering_number,
    fractional_chromatic,
    fractional_covering,
    fractional_packing,
    maximin_eta,
)
from .rationals import bits_display


@dataclass(frozen=True)
class LeakageValue:
    """A leakage stated as the exact rational it is the log2 of."""

    log2_of: Fraction

    def __post_init__(self):
        if not isinstance(self.log2_of, Fraction) or self.log2_of < 1:
            raise DomainError("bad_leakage_value", f"leakage must be log2 of a rational >= 1, got {self.log2_of!r}")

    @property
    def bits(self) -> float:
        return bits_display(self.log2_of)


@dataclass(frozen=True)
class StochasticMapping:
    """Row-stochastic map from length-t source sequences to named codewords.

    Rows are indexed by the big-endian sequence encoding; entries are exact
    rationals in [0, 1] and every row sums to one.
    """

    t: int
    codewords: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not isinstance(self.t, int) or self.t < 1:
            raise DomainError("bad_mapping", f"t must be a positive integer, got {self.t!r}")
        if len(self.codewords) == 0:
            raise DomainError("bad_mapping", "a mapping needs at least one codeword")
        if len(set(self.codewords)) != len(self.codewords):
            raise DomainError("bad_mapping", "codeword names must be pairwise distinct")
        for name in self.codewords:
            if not isinstance(name, str) or not name:
                raise DomainError("bad_mapping", f"codeword name {name!r} must be a nonempty string")
        if len(self.rows) == 0:
            raise DomainError("bad_mapping", "a mapping needs at least one source row")
        for x, row in enumerate(self.rows):
            if len(row) != len(self.codewords):
                raise DomainError("bad_mapping", f"row {x} has {len(row)} entries for {len(self.codewords)} codewords")
            total = Fraction(0)
            for e in row:
                if not isinstance(e, Fraction) or e < 0 or e > 1:
                    raise DomainError("bad_mapping", f"row {x} entry {e!r} outside [0, 1]")
                total += e
            if total != 1:
                raise DomainError("bad_mapping", f"row {x} sums to {total}, not 1")

    @property
    def source_count(self) -> int:
        return len(self.rows)

    def support(self, codeword_index: int) -> frozenset[int]:
        """Sources given positive probability of this codeword."""
        return frozenset(x for x in range(len(self.rows)) if self.rows[x][codeword_index] > 0)


def make_mapping(t: int, codewords, rows) -> StochasticMapping:
    """Coerce nested row data (ints, strings, Fractions) into a StochasticMapping."""
    try:
        frozen = tuple(tuple(Fraction(e) for e in row) for row in rows)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DomainError("bad_mapping", f"unparseable probability entry: {exc}")
    return StochasticMapping(t, tuple(codewords), frozen)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a zero-error check; falsy when a confusable pair shares a codeword."""

    ok: bool
    witness: tuple[str, int, int] | None

    def __post_init__(self):
        if self.ok != (self.witness is None):
            raise DomainError("bad_validation_report", "ok must mean exactly: no witness")

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class BoundsReport:
    """Two-sided leakage bounds with a note for where each side came from."""

    lower: LeakageValue
    upper: LeakageValue
    tight: bool
    provenance: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if self.lower.log2_of > self.upper.log2_of:
            raise DomainError("bad_bounds", f"lower {self.lower.log2_of} exceeds upper {self.upper.log2_of}")
        if self.tight != (self.lower.log2_of == self.upper.log2_of):
            raise DomainError("bad_bounds", "tight flag must mirror lower == upper")


def validate_mapping(m: StochasticMapping, gamma: Graph) -> ValidationReport:
    """Zero-error check: no codeword may cover two confusable source sequences.

    The witness, when present, is the first offense in codeword order, pairs
    scanned in ascending order inside each support.
    """
    expected = gamma.vertex_count ** m.t
    if m.source_count != expected:
        raise DomainError(
            "dimension_mismatch",
            f"mapping has {m.source_count} rows but the graph gives {expected} length-{m.t} sequences",
        )
    product = or_power(gamma, m.t)
    for j, name in enumerate(m.codewords):
        support = sorted(m.support(j))
        for a in range(len(support)):
            for b in range(a + 1, len(support)):
                if product.has_edge(support[a], support[b]):
                    return ValidationReport(False, (name, support[a], support[b]))
    return ValidationReport(True, None)


def maximal_leakage(m: StochasticMapping) -> LeakageValue:
    """Sum over codewords of the largest per-source probability, exactly."""
    total = Fraction(0)
    for j in range(len(m.codewords)):
        total += max(row[j] for row in m.rows)
    return LeakageValue(total)


class OptimalLeakage(NamedTuple):
    t: int
    value: LeakageValue
    witness: StochasticMapping
    witness_value: LeakageValue
    matches: bool


def optimal_leakage_t(gamma: Graph, t: int) -> OptimalLeakage:
    """Least maximal leakage over zero-error schemes for t symbols.

    The optimum is the reciprocal of the maximin split weight on the OR power.
    A witness scheme is built from the optimal split: codeword per positive
    weight set T, P(T | x) = kappa_T / coverage(x); its measured leakage is
    reported alongside so a gap would be visible rather than silent.
    """
    product = or_power(gamma, t)
    split = maximin_eta(product)
    if split.value <= 0:
        raise ZeroleakError("internal_error", "maximin split weight came back nonpositive")
    value = LeakageValue(Fraction(1) / split.value)

    chosen = [(s, w) for s, w in zip(split.sets, split.weights) if w > 0]
    names = tuple("+".join(str(v) for v in s) for s, _ in chosen)
    coverage = [Fraction(0)] * product.vertex_count
    for s, w in chosen:
        for x in s:
            coverage[x] += w
    rows = tuple(
        tuple(w / coverage[x] if x in set(s) else Fraction(0) for s, w in chosen)
        for x in range(product.vertex_count)
    )
    witness = StochasticMapping(t, names, rows)
    witness_value = maximal_leakage(witness)
    return OptimalLeakage(t, value, witness, witness_value, witness_value.log2_of == value.log2_of)


def leakage_rate(gamma: Graph) -> LeakageValue:
    """Per-symbol optimal leakage in the long run: log2 of the fractional chromatic number."""
    return LeakageValue(fractional_chromatic(gamma).value)


class FoldedColoring(NamedTuple):
    b: int
    family: VertexSetFamily


def b_fold_coloring_from_weights(gamma: Graph, weights) -> FoldedColoring:
    """Turn fractional set weights into a b-fold coloring covering each vertex exactly b times.

    Weights sit on the maximal independent sets in their canonical order and
    must cover every vertex to total weight at least one.  b is the least
    common denominator; over-coverage is trimmed per vertex, largest classes
    first, and a class trimmed to nothing stays in the family so the size
    accounting (m classes, each worth 1/b) remains honest.
    """
    sets = maximal_independent_sets(gamma)
    weight_list = [Fraction(w) for w in weights]
    if len(weight_list) != len(sets):
        raise DomainError(
            "dimension_mismatch",
            f"{len(weight_list)} weights for {len(sets)} maximal independent sets",
        )
    if any(w < 0 for w in weight_list):
        raise DomainError("infeasible_weights", "weights must be nonnegative")
    for x in range(gamma.vertex_count):
        if sum(w for s, w in zip(sets, weight_list) if x in s) < 1:
            raise DomainError("infeasible_weights", f"vertex {x} is covered to total weight < 1")

    b = math.lcm(*(w.denominator for w in weight_list))
    occurrences: list[set[int]] = []
    for s, w in zip(sets, weight_list):
        copies = w * b
        occurrences.extend(set(s) for _ in range(int(copies)))

    for x in range(gamma.vertex_count):
        holding = [k for k, occ in enumerate(occurrences) if x in occ]
        for k in sorted(holding, key=lambda k: (-len(occurrences[k]), k))[: len(holding) - b]:
            occurrences[k].remove(x)

    return FoldedColoring(b, make_family(occurrences))


def optimal_scalar_mapping(gamma: Graph) -> StochasticMapping:
    """Deterministic-size optimal scheme for one symbol from an optimal fractional coloring.

    Each of the m color classes becomes a codeword sent with probability 1/b
    by its members, so the measured leakage is m/b, the fractional chromatic
    number itself.
    """
    coloring = fractional_chromatic(gamma)
    b, family = b_fold_coloring_from_weights(gamma, coloring.weights)
    if any(len(s) == 0 for s in family.sets):
        raise ZeroleakError("internal_error", "optimal coloring produced an empty color class")

    names: list[str] = []
    columns: list[tuple[int, ...]] = []
    for s, mult in zip(family.sets, family.multiplicities):
        base = "+".join(str(v) for v in s)
        if mult == 1:
            names.append(base)
            columns.append(s)
        else:
            for k in range(1, mult + 1):
                names.append(f"{base}#{k}")
                columns.append(s)
    rows = tuple(
        tuple(Fraction(1, b) if x in s else Fraction(0) for s in columns)
        for x in range(gamma.vertex_count)
    )
    return StochasticMapping(1, tuple(names), rows)


def merge_codewords(m: StochasticMapping, y1: str, y2: str, gamma: Graph) -> StochasticMapping:
    """Merge two codewords into one by adding their columns.

    Allowed exactly when the union of the two supports is independent in the
    OR power, so the merged codeword still never covers a confusable pair.
    Merging can only shrink the leakage.
    """
    if y1 == y2:
        raise DomainError("bad_merge", "cannot merge a codeword with itself")
    try:
        j1 = m.codewords.index(y1)
    except ValueError:
        raise DomainError("unknown_codeword", f"no codeword named {y1!r}")
    try:
        j2 = m.codewords.index(y2)
    except ValueError:
        raise DomainError("unknown_codeword", f"no codeword named {y2!r}")
    expected = gamma.vertex_count ** m.t
    if m.source_count != expected:
        raise DomainError(
            "dimension_mismatch",
            f"mapping has {m.source_count} rows but the graph gives {expected} length-{m.t} sequences",
        )
    product = or_power(gamma, m.t)
    union = sorted(m.support(j1) | m.support(j2))
    for a in range(len(union)):
        for b in range(a + 1, len(union)):
            if product.has_edge(union[a], union[b]):
                raise DomainError(
                    "not_mergeable",
                    f"sources {union[a]} and {union[b]} are confusable but would share the merged codeword",
                    {"u": union[a], "v": union[b]},
                )
    lo, hi = min(j1, j2), max(j1, j2)
    names = list(m.codewords)
    names[lo] = f"({y1}&{y2})"
    del names[hi]
    rows = []
    for row in m.rows:
        merged = list(row)
        merged[lo] = row[j1] + row[j2]
        del merged[hi]
        rows.append(tuple(merged))
    return StochasticMapping(m.t, tuple(names), tuple(rows))


# ---------------------------------------------------------------------------
# Guessing budgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GuessBudget:
    """How many guesses the adversary may spend at block length t.

    Kinds: a constant count, a polynomial t**degree, an exponential
    ceil(base**t), or an explicit per-t table with an optionally declared
    growth base.  The growth base 1 marks a subexponential budget.
    """

    kind: str
    count: int | None = None
    degree: int | None = None
    base: Fraction | None = None
    values: tuple[int, ...] | None = None
    growth: Fraction | None = None

    def __post_init__(self):
        if self.kind == "constant":
            if not isinstance(self.count, int) or self.count < 1:
                raise DomainError("bad_budget", f"constant budget needs a count >= 1, got {self.count!r}")
        elif self.kind == "polynomial":
            if not isinstance(self.degree, int) or self.degree < 0:
                raise DomainError("bad_budget", f"polynomial budget needs a degree >= 0, got {self.degree!r}")
        elif self.kind == "exponential":
            if not isinstance(self.base, Fraction) or self.base < 1:
                raise DomainError("bad_budget", f"exponential budget needs a rational base >= 1, got {self.base!r}")
        elif self.kind == "table":
            if not self.values:
                raise DomainError("bad_budget", "table budget needs at least one value")
            for g in self.values:
                if not isinstance(g, int) or g < 1:
                    raise DomainError("bad_budget", f"table entries must be integers >= 1, got {g!r}")
            if self.growth is not None and (not isinstance(self.growth, Fraction) or self.growth < 1):
                raise DomainError("bad_budget", f"declared growth must be a rational >= 1, got {self.growth!r}")
        else:
            raise DomainError("bad_budget", f"unknown budget kind {self.kind!r}")

    @classmethod
    def constant(cls, count: int) -> "GuessBudget":
        return cls("constant", count=count)

    @classmethod
    def polynomial(cls, degree: int) -> "GuessBudget":
        return cls("polynomial", degree=degree)

    @classmethod
    def exponential(cls, base) -> "GuessBudget":
        return cls("exponential", base=Fraction(base))

    @classmethod
    def table(cls, values, growth=None) -> "GuessBudget":
        return cls("table", values=tuple(values), growth=None if growth is None else Fraction(growth))

    def guesses(self, t: int) -> int:
        if not isinstance(t, int) or t < 1:
            raise DomainError("bad_power", f"block length t must be >= 1, got {t!r}")
        if self.kind == "constant":
            return self.count
        if self.kind == "polynomial":
            return t**self.degree
        if self.kind == "exponential":
            p, q = self.base.numerator, self.base.denominator
            return -((-(p**t)) // (q**t))
        if t > len(self.values):
            raise DomainError(
                "budget_table_range",
                f"table budget covers t up to {len(self.values)}, asked for t={t}",
                {"t": t, "length": len(self.values)},
            )
        return self.values[t - 1]

    def sigma_is_zero(self) -> bool:
        """Whether the budget grows subexponentially (zero exponential rate)."""
        if self.kind in ("constant", "polynomial"):
            return True
        if self.kind == "exponential":
            return self.base == 1
        if self.growth is None:
            raise DomainError("undeclared_growth", "table budget has no declared growth base")
        return self.growth == 1


def _budget_fits(budget: GuessBudget, beta: Fraction, cap_at: Callable[[int], int]) -> bool:
    """Whether guesses(t) stays within the per-t cap for every t.

    cap_at(t) is the exact cap; beta is its per-step growth floor, so
    cap_at(t) >= ceil(beta**t) and cap_at never decreases.  Table budgets are
    checked entry by entry against the exact cap; a constant budget only needs
    the first cap; polynomial and exponential budgets are screened against the
    growth floor.
    """
    if budget.kind == "constant":
        return budget.count <= cap_at(1)
    if budget.kind == "exponential":
        return budget.base <= beta
    if budget.kind == "polynomial":
        if budget.degree == 0:
            return True
        if beta <= 1:
            return False
        p, q, d = beta.numerator, beta.denominator, budget.degree
        t = 1
        while True:
            if t**d * q**t > p**t:
                return False
            # once per-step growth of t**d dips under beta, induction closes it
            if (t + 1) ** d * q <= p * t**d:
                return True
            t += 1
    return all(g <= cap_at(t) for t, g in enumerate(budget.values, start=1))


def _require_same_vertices(gamma: Graph, theta: Graph) -> None:
    if gamma.vertex_count != theta.vertex_count or gamma.labels != theta.labels:
        raise DomainError(
            "vertex_set_mismatch",
            "confusion and adversary graphs must share one vertex set (count and labels)",
        )


def multi_guess_bounds(gamma: Graph, budget: GuessBudget) -> BoundsReport:
    """Bounds on the optimal leakage rate against a multi-guess adversary.

    Admissible budgets never exceed the independent sets available, i.e.
    guesses(t) <= alpha**t.  The rate then sits between log2(n/alpha) and
    log2 of the fractional chromatic number; a subexponential budget is worth
    no more than a single guess, which lifts the lower side to the upper.
    """
    n = gamma.vertex_count
    alpha = independence_number(gamma)
    if not _budget_fits(budget, Fraction(alpha), lambda t: alpha**t):
        raise DomainError(
            "inadmissible_budget",
            f"budget exceeds the {alpha}**t independent vertices available",
            {"alpha": alpha},
        )
    chi = fractional_chromatic(gamma).value
    provenance: list[tuple[str, str]] = []
    try:
        sigma_zero = budget.sigma_is_zero()
    except DomainError:
        sigma_zero = False
        provenance.append(("growth", "undeclared_table_growth"))
    if sigma_zero:
        lower = chi
        provenance.append(("lower", "single_guess_equivalence_sigma_zero"))
    else:
        lower = Fraction(n, alpha)
        provenance.append(("lower", "alphabet_over_independence_ratio"))
    provenance.append(("upper", "fractional_chromatic"))
    if n <= AUTOMORPHISM_VERTEX_CAP and is_vertex_transitive(gamma):
        provenance.append(("structure", "vertex_transitive"))
    return BoundsReport(
        LeakageValue(lower),
        LeakageValue(chi),
        lower == chi,
        tuple(provenance),
    )


def _max_fractional_covering(gamma: Graph, theta: Graph) -> Fraction:
    best = Fraction(0)
    for T in maximal_independent_sets(gamma):
        value = fractional_covering(associated_hypergraph(T, theta, 1)).value
        best = max(best, value)
    return best


def approx_guess_bounds(gamma: Graph, theta: Graph) -> BoundsReport:
    """Bounds on the leakage rate against one approximate guess per block.

    The adversary wins by naming any vertex adjacent to the truth in theta.
    Lower side: fractional packing of theta against the hardest covering
    number of a neighborhood-trace hypergraph, floored at zero bits.  Upper
    side: the plain single-guess rate.
    """
    _require_same_vertices(gamma, theta)
    packing = fractional_packing(theta).value
    kf_max = _max_fractional_covering(gamma, theta)
    raw = packing / kf_max
    provenance: list[tuple[str, str]] = [("lower", "packing_over_max_covering")]
    if raw < 1:
        provenance.append(("lower_floor", "clamped_to_zero_bits"))
    chi = fractional_chromatic(gamma).value
    provenance.append(("upper", "fractional_chromatic"))
    lower = max(raw, Fraction(1))
    return BoundsReport(LeakageValue(lower), LeakageValue(chi), lower == chi, tuple(provenance))


def multi_approx_guess_bounds(gamma: Graph, theta: Graph, budget: GuessBudget) -> BoundsReport:
    """Approximate-guess bounds when the adversary may guess several times.

    The per-t cap is the largest covering number over neighborhood-trace
    hypergraphs of the t-fold powers; its growth floor is the best fractional
    covering value at t = 1.  The rate bounds are those of the single
    approximate guess, and a subexponential budget collapses to it outright.
    """
    _require_same_vertices(gamma, theta)
    kf_max = _max_fractional_covering(gamma, theta)

    def cap_at(t: int) -> int:
        return max(
            covering_number(associated_hypergraph(T, theta, t))
            for T in mis_of_or_power(gamma, t)
        )

    if not _budget_fits(budget, kf_max, cap_at):
        raise DomainError(
            "inadmissible_budget",
            "budget exceeds the approximate guesses the adversary graph can tell apart",
        )
    packing = fractional_packing(theta).value
    raw = packing / kf_max
    provenance: list[tuple[str, str]] = [("lower", "packing_over_max_covering")]
    if raw < 1:
        provenance.append(("lower_floor", "clamped_to_zero_bits"))
    chi = fractional_chromatic(gamma).value
    provenance.append(("upper", "fractional_chromatic"))
    try:
        if budget.sigma_is_zero():
            provenance.append(("budget", "collapses_to_single_approx_guess"))
    except DomainError:
        provenance.append(("growth", "undeclared_table_growth"))
    lower = max(raw, Fraction(1))
    return BoundsReport(LeakageValue(lower), LeakageValue(chi), lower == chi, tuple(provenance))

"""Independent cross-checks: guessing adversaries, prior grids, seeded trials.

Everything here re-derives a quantity by a second route (guess enumeration,
grid search over priors, random valid schemes) and compares it against the LP
answer.  Priors live on the base alphabet; a length-t sequence gets the
product of its symbol masses.  Checks return plain report dicts with "p/q"
strings so they can be emitted as JSON unchanged; status is "pass", "fail",
or "estimate" when a finite grid could not certify either way.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .budget import WorkMeter
from .errors import DomainError
from .graphs import (
    Graph,
    and_power,
    closed_neighborhood,
    decode_index,
    independence_number,
    mis_of_or_power,
    or_power,
)
from .leakage import (
    GuessBudget,
    StochasticMapping,
    maximal_leakage,
    merge_codewords,
    validate_mapping,
)
from .programs import fractional_chromatic, fractional_packing, maximin_eta
from .rationals import format_ratio


@dataclass(frozen=True)
class GuessFamily:
    """The candidate sets an adversary can bet on with one shot.

    Sets contain sequence indices.  For the multi-guess kind every g-subset of
    sequences is allowed, so the family stays implicit (sets is None) and is
    evaluated by top-g sums instead of enumeration.
    """

    kind: str
    t: int
    g: int
    sets: tuple[frozenset[int], ...] | None

    @classmethod
    def singleton(cls, gamma: Graph, t: int) -> "GuessFamily":
        total = gamma.vertex_count**t
        return cls("singleton", t, 1, tuple(frozenset({x}) for x in range(total)))

    @classmethod
    def multi_guess(cls, gamma: Graph, t: int, g: int) -> "GuessFamily":
        total = gamma.vertex_count**t
        if not (1 <= g <= total):
            raise DomainError("bad_guess_count", f"need 1 <= g <= {total}, got {g}")
        return cls("multi", t, g, None)

    @classmethod
    def approx(cls, theta: Graph, t: int) -> "GuessFamily":
        product = and_power(theta, t)
        hoods = sorted({closed_neighborhood(product, x) for x in range(product.vertex_count)}, key=sorted)
        return cls("approx", t, 1, tuple(hoods))

    @classmethod
    def multi_approx(cls, theta: Graph, t: int, g: int) -> "GuessFamily":
        product = and_power(theta, t)
        hoods = sorted({closed_neighborhood(product, x) for x in range(product.vertex_count)}, key=sorted)
        if not (1 <= g <= len(hoods)):
            raise DomainError("bad_guess_count", f"need 1 <= g <= {len(hoods)}, got {g}")
        meter = WorkMeter("guess_family")
        meter.check_size(math.comb(len(hoods), g), "multi approximate guess family")
        unions = sorted(
            {frozenset().union(*combo) for combo in itertools.combinations(hoods, g)},
            key=sorted,
        )
        return cls("multi_approx", t, g, tuple(unions))


@dataclass(frozen=True)
class DistributionGrid:
    """All priors on n symbols with denominator dividing r, plus the uniform one."""

    resolution: int
    points: tuple[tuple[Fraction, ...], ...]

    @property
    def alphabet_size(self) -> int:
        return len(self.points[0])


def distribution_grid(n: int, r: int) -> DistributionGrid:
    if n < 1 or r < 1:
        raise DomainError("bad_grid", f"need n >= 1 and r >= 1, got n={n}, r={r}")
    meter = WorkMeter("distribution_grid")
    meter.check_size(math.comb(r + n - 1, n - 1), "distribution grid")
    points = {tuple(Fraction(1, n) for _ in range(n))}
    for cuts in itertools.combinations(range(r + n - 1), n - 1):
        ks = []
        prev = -1
        for c in cuts:
            ks.append(c - prev - 1)
            prev = c
        ks.append(r + n - 2 - prev)
        points.add(tuple(Fraction(k, r) for k in ks))
    return DistributionGrid(r, tuple(sorted(points)))


# ---------------------------------------------------------------------------
# The guessing-advantage ratio
# ---------------------------------------------------------------------------

def _alphabet_size(m: StochasticMapping) -> int:
    """Recover n with n**t = source_count; the mapping must cover a full power."""
    total, t = m.source_count, m.t
    n = round(total ** (1 / t))
    for candidate in (n - 1, n, n + 1):
        if candidate >= 1 and candidate**t == total:
            return candidate
    raise DomainError("dimension_mismatch", f"{total} rows is not a t={t} power of an alphabet size")


def _integer_view(m: StochasticMapping) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Rows scaled to integers by the common denominator of all entries."""
    d = math.lcm(*(e.denominator for row in m.rows for e in row))
    return d, tuple(tuple(int(e * d) for e in row) for row in m.rows)


def _sequence_weights(ks, t: int, n: int) -> list[int]:
    """Product prior over sequences from integer symbol masses, unnormalized."""
    weights = []
    for x in range(n**t):
        w = 1
        for s in decode_index(x, t, n):
            w *= ks[s]
        weights.append(w)
    return weights


def _top_sum(values, g: int) -> int:
    return sum(sorted(values, reverse=True)[:g])


def _rho_from_ints(scaled, d: int, fam: GuessFamily, weights) -> Fraction:
    """rho at a sequence prior proportional to `weights` (zeros allowed).

    Numerator and denominator are both linear in the prior, so only the
    proportions matter and everything stays in integers until the end.
    """
    columns = range(len(scaled[0]))
    if fam.kind == "multi":
        num = sum(_top_sum([weights[x] * scaled[x][j] for x in range(len(weights))], fam.g) for j in columns)
        den = _top_sum(weights, fam.g)
    elif fam.kind == "singleton":
        num = sum(max(weights[x] * scaled[x][j] for x in range(len(weights))) for j in columns)
        den = max(weights)
    else:
        num = sum(max(sum(weights[x] * scaled[x][j] for x in s) for s in fam.sets) for j in columns)
        den = max(sum(weights[x] for x in s) for s in fam.sets)
    return Fraction(num, d * den)


def rho_fixed_px(m: StochasticMapping, px, fam: GuessFamily) -> Fraction:
    """Posterior-over-prior guessing advantage at a full-support symbol prior."""
    if fam.t != m.t:
        raise DomainError("dimension_mismatch", f"family is for t={fam.t}, mapping for t={m.t}")
    n = _alphabet_size(m)
    probs = [Fraction(p) for p in px]
    if len(probs) != n:
        raise DomainError("dimension_mismatch", f"{len(probs)} prior entries for alphabet size {n}")
    if sum(probs) != 1:
        raise DomainError("bad_distribution", "prior must sum to 1")
    if any(p <= 0 for p in probs):
        raise DomainError("zero_mass_symbol", "prior must give every symbol positive mass")
    scale = math.lcm(*(p.denominator for p in probs))
    ks = [int(p * scale) for p in probs]
    d, scaled = _integer_view(m)
    return _rho_from_ints(scaled, d, fam, _sequence_weights(ks, m.t, n))


def worst_case_rho(m: StochasticMapping, fam: GuessFamily, grid: DistributionGrid) -> Fraction:
    """Largest rho over the prior grid, boundary points included."""
    if fam.t != m.t:
        raise DomainError("dimension_mismatch", f"family is for t={fam.t}, mapping for t={m.t}")
    n = _alphabet_size(m)
    if grid.alphabet_size != n:
        raise DomainError("dimension_mismatch", f"grid is over {grid.alphabet_size} symbols, alphabet has {n}")
    d, scaled = _integer_view(m)
    best = None
    for px in grid.points:
        scale = math.lcm(*(p.denominator for p in px))
        ks = [int(p * scale) for p in px]
        value = _rho_from_ints(scaled, d, fam, _sequence_weights(ks, m.t, n))
        if best is None or value > best:
            best = value
    return best


def generate_valid_mapping(
    gamma: Graph,
    t: int,
    r: int,
    rng: random.Random,
    duplicate_codebook: bool = False,
) -> StochasticMapping:
    """Random zero-error scheme: codewords are the maximal independent sets.

    Each source sequence splits r probability units uniformly at random among
    the codewords whose set contains it.  With duplicate_codebook each set
    appears twice, which leaves the scheme mergeable on purpose.
    """
    if r < 1:
        raise DomainError("bad_grid", f"need r >= 1, got {r}")
    sets = mis_of_or_power(gamma, t)
    names = []
    columns = []
    for s in sets:
        base = "+".join(str(v) for v in s)
        if duplicate_codebook:
            names.extend([f"{base}#1", f"{base}#2"])
            columns.extend([frozenset(s), frozenset(s)])
        else:
            names.append(base)
            columns.append(frozenset(s))
    total = gamma.vertex_count**t
    rows = []
    for x in range(total):
        containing = [j for j, s in enumerate(columns) if x in s]
        counts = [0] * len(columns)
        for _ in range(r):
            counts[containing[rng.randrange(len(containing))]] += 1
        rows.append(tuple(Fraction(c, r) for c in counts))
    return StochasticMapping(t, tuple(names), tuple(rows))


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def verify_eta_duality(gamma: Graph, t: int) -> dict:
    """The maximin split weight must be the exact reciprocal of the chromatic LP."""
    product = or_power(gamma, t)
    chi = fractional_chromatic(product).value
    eta = maximin_eta(product).value
    lhs = eta * chi
    return {
        "check": "duality",
        "status": "pass" if lhs == 1 else "fail",
        "witness": {"t": t, "chi_f": format_ratio(chi), "eta": format_ratio(eta)},
        "lhs": format_ratio(lhs),
        "rhs": "1/1",
    }


def verify_packing_reciprocity(theta: Graph, grid: DistributionGrid) -> dict:
    """Grid-search the minimax neighborhood mass against 1 over the packing LP.

    The grid can only overshoot the true minimum, so a strictly smaller grid
    value is a hard failure, equality is a pass, and a larger value is only an
    estimate (the grid was too coarse).  A witness with a zero coordinate is
    flagged: full-support priors only reach it in closure.
    """
    packing = fractional_packing(theta).value
    target = Fraction(1) / packing
    n = theta.vertex_count
    if grid.alphabet_size != n:
        raise DomainError("dimension_mismatch", f"grid is over {grid.alphabet_size} symbols, graph has {n}")
    hoods = [closed_neighborhood(theta, x) for x in range(n)]
    best = None
    best_px = None
    for px in grid.points:
        value = max(sum(px[v] for v in hood) for hood in hoods)
        if best is None or value < best:
            best = value
            best_px = px
    if best < target:
        status = "fail"
    elif best == target:
        status = "pass"
    else:
        status = "estimate"
    return {
        "check": "packing",
        "status": status,
        "witness": {
            "r": grid.resolution,
            "px": [format_ratio(p) for p in best_px],
            "closure": any(p == 0 for p in best_px),
        },
        "lhs": format_ratio(best),
        "rhs": format_ratio(target),
    }


def verify_multi_guess_floor(
    gamma: Graph,
    budget: GuessBudget,
    t: int,
    grid: DistributionGrid,
    trials: int = 100,
    seed: int = 0,
) -> dict:
    """Random valid schemes never beat the alphabet-over-independence floor.

    At the uniform prior a g-guess adversary's advantage is at least
    (n/alpha)**t for every zero-error scheme.  Schemes are drawn with row
    denominators at the grid resolution; the budget must be admissible at t.
    """
    if trials < 1:
        raise DomainError("bad_trials", f"need at least one trial, got {trials}")
    n = gamma.vertex_count
    alpha = independence_number(gamma)
    g = budget.guesses(t)
    if g > alpha**t:
        raise DomainError(
            "inadmissible_budget",
            f"g(t)={g} exceeds the {alpha}**{t} independent vertices available",
            {"alpha": alpha, "t": t},
        )
    floor = Fraction(n, alpha) ** t
    rng = random.Random(seed)
    fam = GuessFamily.multi_guess(gamma, t, g)
    uniform = [1] * (n**t)
    worst = None
    bad_trial = None
    for trial in range(trials):
        m = generate_valid_mapping(gamma, t, grid.resolution, rng)
        d, scaled = _integer_view(m)
        value = _rho_from_ints(scaled, d, fam, uniform)
        if worst is None or value < worst:
            worst = value
            if value < floor:
                bad_trial = trial
                break
    witness: dict = {"t": t, "g": g, "trials": trials, "seed": seed}
    if bad_trial is not None:
        witness["trial"] = bad_trial
    return {
        "check": "multi-guess-floor",
        "status": "fail" if bad_trial is not None else "pass",
        "witness": witness,
        "lhs": format_ratio(worst),
        "rhs": format_ratio(floor),
    }


def _first_mergeable_pair(m: StochasticMapping, product: Graph):
    supports = [m.support(j) for j in range(len(m.codewords))]
    for j1 in range(len(m.codewords)):
        for j2 in range(j1 + 1, len(m.codewords)):
            union = sorted(supports[j1] | supports[j2])
            if not any(
                product.has_edge(union[a], union[b])
                for a in range(len(union))
                for b in range(a + 1, len(union))
            ):
                return j1, j2
    return None


def verify_mergeability_closure(gamma: Graph, t: int, trials: int, seed: int = 0, r: int = 4) -> dict:
    """Merging to a fixpoint never raises leakage and ends with nothing mergeable.

    Trials start from schemes with a doubled codebook so merges exist; each
    merge step must keep the scheme valid and keep leakage non-increasing.
    """
    if trials < 1:
        raise DomainError("bad_trials", f"need at least one trial, got {trials}")
    rng = random.Random(seed)
    product = or_power(gamma, t)
    worst_step = Fraction(0)
    merges = 0
    failure = None
    for trial in range(trials):
        m = generate_valid_mapping(gamma, t, r, rng, duplicate_codebook=True)
        value = maximal_leakage(m).log2_of
        while True:
            pair = _first_mergeable_pair(m, product)
            if pair is None:
                break
            merged = merge_codewords(m, m.codewords[pair[0]], m.codewords[pair[1]], gamma)
            merged_value = maximal_leakage(merged).log2_of
            merges += 1
            worst_step = max(worst_step, merged_value / value)
            if merged_value > value or not validate_mapping(merged, gamma):
                failure = trial
                break
            m, value = merged, merged_value
        if failure is not None:
            break
    witness: dict = {"t": t, "trials": trials, "seed": seed, "r": r, "merges": merges}
    if failure is not None:
        witness["trial"] = failure
    return {
        "check": "merge-closure",
        "status": "fail" if failure is not None else "pass",
        "witness": witness,
        "lhs": format_ratio(worst_step),
        "rhs": "1/1",
    }

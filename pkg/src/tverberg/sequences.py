"""Point sequences and the growth-dominance calculus over exact rationals.

A sequence is a d-by-n grid of positive rationals whose columns are points.
The central tool is the growth ratio of consecutive coordinate rows between
two positions; comparing such ratios against a threshold q classifies how
pairs of coordinates dominate each other, which in turn yields a total order
on coordinates that the filling machinery consumes.

All public indices are 1-based: coordinates run over 1..dim and positions
over 1..length, matching the usual combinatorial conventions for partitioned
ground sets.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, NamedTuple, Optional, Sequence

from .exact import Scalar, ScalarLike, scalar, scalar_str, solve_linear, Matrix


class NotDominantError(ValueError):
    """The sequence does not classify consistently; no dominance profile exists."""


class Relation(enum.Enum):
    """How coordinate t relates to coordinate s under the threshold q."""

    PRECEDES = "precedes"
    SUCCEEDED_BY = "succeeded_by"
    LEFT_SIMILAR = "left_similar"
    RIGHT_SIMILAR = "right_similar"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class PointSequence:
    """Immutable d-dimensional sequence of n points, stored by coordinate rows."""

    rows: tuple

    def __init__(self, rows: Sequence[Sequence[ScalarLike]]):
        data = tuple(tuple(scalar(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("a sequence needs at least one row and one position")
        if any(len(row) != len(data[0]) for row in data):
            raise ValueError("coordinate rows have unequal lengths")
        object.__setattr__(self, "rows", data)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows[0])

    @property
    def is_positive(self) -> bool:
        return all(x > 0 for row in self.rows for x in row)

    def row(self, t: int) -> tuple:
        if not 1 <= t <= self.dim:
            raise IndexError(f"coordinate {t} out of range 1..{self.dim}")
        return self.rows[t - 1]

    def entry(self, t: int, i: int) -> Fraction:
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} out of range 1..{self.length}")
        return self.row(t)[i - 1]

    def point(self, i: int) -> tuple:
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} out of range 1..{self.length}")
        return tuple(row[i - 1] for row in self.rows)

    def subsequence(self, positions: Sequence[int]) -> "PointSequence":
        cols = [self.point(i) for i in positions]
        return PointSequence([[col[t] for col in cols] for t in range(self.dim)])

    def strided(self, step: int) -> "PointSequence":
        return self.subsequence(range(step, self.length + 1, step))


def sequence_to_json(points: PointSequence) -> dict:
    return {
        "d": points.dim,
        "n": points.length,
        "points": [[scalar_str(x) for x in points.point(i)] for i in range(1, points.length + 1)],
    }


def sequence_from_json(payload: dict) -> PointSequence:
    try:
        d, n, cols = payload["d"], payload["n"], payload["points"]
    except (KeyError, TypeError) as exc:
        raise ValueError("sequence payload needs keys 'd', 'n', 'points'") from exc
    if len(cols) != n or any(len(col) != d for col in cols):
        raise ValueError("sequence payload shape does not match its declared d and n")
    return PointSequence([[scalar(col[t]) for col in cols] for t in range(d)])


# ---------------------------------------------------------------------------
# generators


def gen_moment_curve(d: int, params: Sequence[ScalarLike]) -> PointSequence:
    """Points (t, t^2, ..., t^d) for each parameter t."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    values = [scalar(p) for p in params]
    if not values:
        raise ValueError("at least one parameter is required")
    return PointSequence([[v**t for v in values] for t in range(1, d + 1)])


def gen_power_sequence(base: ScalarLike, exponents: Sequence[Sequence[int]]) -> PointSequence:
    """Rows base**e(t,i) for an integer exponent table.

    The exponent gaps e(t+1,i) - e(t,i) must be strictly increasing in i, so
    every consecutive-row ratio sequence strictly grows.
    """
    q_base = scalar(base)
    if q_base <= 1:
        raise ValueError("base must exceed 1")
    table = [tuple(int(e) for e in row) for row in exponents]
    if not table or any(len(row) != len(table[0]) for row in table):
        raise ValueError("exponent table must be rectangular and nonempty")
    for t in range(len(table) - 1):
        gaps = [hi - lo for lo, hi in zip(table[t], table[t + 1])]
        if any(b <= a for a, b in zip(gaps, gaps[1:])):
            raise ValueError(
                f"exponent gaps between rows {t + 1} and {t + 2} must strictly increase"
            )
    return PointSequence([[q_base**e for e in row] for row in table])


def uniform_exponents(rows: int, length: int) -> list:
    """The schedule e(t, i) = t * i."""
    return [[t * i for i in range(1, length + 1)] for t in range(1, rows + 1)]


def _ceil_log(base: Fraction, value: Fraction) -> int:
    """Smallest integer c >= 0 with base**c >= value."""
    c = 0
    power = Fraction(1)
    while power < value:
        power *= base
        c += 1
    return c


def chain_exponents(rows: int, length: int, base: ScalarLike, q: ScalarLike) -> list:
    """Exponent schedule whose coordinates form a strictly dominated chain.

    Row 1 is constant (all ones); row t >= 2 uses the multiplier
    D1 * (length+1)**(t-2) with D1 one more than the base-log of q, which is
    enough head room for every later row to dominate every earlier one by a
    factor above q at all positions.
    """
    if rows < 1 or length < 1:
        raise ValueError("rows and length must be positive")
    d1 = _ceil_log(scalar(base), scalar(q)) + 1
    multipliers = [0] + [d1 * (length + 1) ** (t - 2) for t in range(2, rows + 1)]
    return [[m * i for i in range(1, length + 1)] for m in multipliers]


def default_threshold(d: int, r: int) -> Fraction:
    """The stock dominance threshold for r classes in dimension d."""
    return Fraction(factorial(r * (d + 1)) + 1)


def lift(points: PointSequence) -> PointSequence:
    """Prepend the all-ones coordinate row."""
    return PointSequence(((Fraction(1),) * points.length,) + points.rows)


def ordered_lift(points: PointSequence, q: ScalarLike):
    """Lift the points and sort the coordinate rows by growth speed.

    Returns (ordered, row_coords) where ordered is the lifted sequence with
    rows rearranged slowest-first and row_coords[k] is the 0-based lifted
    coordinate sitting at ordered position k.  Raises ValueError when the
    lifted rows cannot be totally ordered at threshold q.
    """
    lifted = lift(points)
    perm = order_permutation(lifted, q)
    ordered = PointSequence([lifted.rows[t - 1] for t in perm])
    return ordered, tuple(t - 1 for t in perm)


class SuperDominantSequence(NamedTuple):
    points: PointSequence  # the d-dimensional points (ones row stripped)
    lifted: PointSequence  # points with the ones row on top
    witness: PointSequence  # the long dominant sequence the lifted one strides
    q: Fraction


def gen_super_dominant(d: int, r: int, q: Optional[ScalarLike] = None, base: ScalarLike = 2) -> SuperDominantSequence:
    """Construct a verified super-dominant lifted sequence for (d, r).

    Builds a dominant witness of length (d+1) * n on a chain schedule, then
    takes every (d+1)-th column.  The witness is checked with is_dominant; a
    failure would be a construction bug and raises.
    """
    from .partitions import tverberg_number

    threshold = scalar(q) if q is not None else default_threshold(d, r)
    n = tverberg_number(r, d)
    span = (d + 1) * n
    witness = gen_power_sequence(base, chain_exponents(d + 1, span, base, threshold))
    if not is_dominant(witness, threshold):
        raise AssertionError("chain witness failed its dominance check")
    lifted = witness.strided(d + 1)
    if any(x != 1 for x in lifted.row(1)):
        raise AssertionError("chain witness lost its ones row")
    points = PointSequence(lifted.rows[1:])
    return SuperDominantSequence(points, lifted, witness, threshold)


# ---------------------------------------------------------------------------
# growth predicates


def is_q_increasing(row: Sequence[ScalarLike], q: ScalarLike) -> bool:
    """All entries positive and each consecutive ratio above q."""
    values = [scalar(x) for x in row]
    threshold = scalar(q)
    if any(x <= 0 for x in values):
        return False
    return all(b > threshold * a for a, b in zip(values, values[1:]))


def is_pseudo_geometric(a: PointSequence, q: ScalarLike) -> bool:
    """Every pair of coordinate rows has a q-increasing ratio in one direction."""
    if a.dim < 2:
        raise ValueError("pseudo-geometric needs at least two coordinate rows")
    if not a.is_positive:
        return False
    threshold = scalar(q)
    for t, s in combinations(range(a.dim), 2):
        ratio = [a.rows[t][i] / a.rows[s][i] for i in range(a.length)]
        if not (
            is_q_increasing(ratio, threshold)
            or is_q_increasing([1 / x for x in ratio], threshold)
        ):
            return False
    return True


def order_permutation(a: PointSequence, q: ScalarLike) -> tuple:
    """Rows sorted from slowest to fastest growth, as 1-based row indices.

    Requires a pseudo-geometric sequence; the result perm satisfies: reordering
    rows as a.rows[perm[0]-1], a.rows[perm[1]-1], ... yields an ordered
    sequence (each consecutive-row ratio q-increasing).
    """
    threshold = scalar(q)
    if not is_pseudo_geometric(a, threshold):
        raise NotDominantError("sequence is not pseudo-geometric; rows cannot be ordered")

    def faster(t: int, s: int) -> bool:
        ratio = [a.rows[t][i] / a.rows[s][i] for i in range(a.length)]
        return is_q_increasing(ratio, threshold)

    ranks = sorted(range(a.dim), key=lambda t: sum(faster(t, s) for s in range(a.dim) if s != t))
    perm = tuple(t + 1 for t in ranks)
    reordered = PointSequence([a.rows[t - 1] for t in perm])
    if not is_ordered(reordered, threshold):
        raise ValueError("pairwise growth comparisons do not form a total order")
    return perm


def is_ordered(a: PointSequence, q: ScalarLike) -> bool:
    """Positive, with every consecutive-coordinate ratio sequence q-increasing."""
    if not a.is_positive:
        return False
    threshold = scalar(q)
    return all(
        growth_ratio(a, t, i, i + 1) > threshold
        for t in range(1, a.dim)
        for i in range(1, a.length)
    )


def growth_ratio(a: PointSequence, t: int, i: int, j: int) -> Fraction:
    """Increase of the row-(t+1) over row-t ratio from position i to position j."""
    if not 1 <= t < a.dim:
        raise IndexError(f"coordinate {t} out of range 1..{a.dim - 1}")
    return (a.entry(t + 1, j) * a.entry(t, i)) / (a.entry(t, j) * a.entry(t + 1, i))


class _RatioTable:
    """Cached consecutive-row ratios; growth_ratio(t,i,j) = ratio(t,j)/ratio(t,i)."""

    def __init__(self, a: PointSequence):
        self.ratios = [
            [a.rows[t][i] / a.rows[t - 1][i] for i in range(a.length)]
            for t in range(1, a.dim)
        ]
        self._memo: dict = {}

    def f(self, t: int, i: int, j: int) -> Fraction:
        key = (t, i, j)
        got = self._memo.get(key)
        if got is None:
            row = self.ratios[t - 1]
            got = self._memo[key] = row[j - 1] / row[i - 1]
        return got


def classify_pair(a: PointSequence, q: ScalarLike, t: int, s: int, _table: Optional[_RatioTable] = None) -> Relation:
    """Classify how coordinate t relates to coordinate s.

    For every i < j < k two fractions are compared against [1/q, q]:
    the early-window fraction growth(t,i,j)/growth(s,j,k) and the late-window
    fraction growth(t,j,k)/growth(s,i,j).  A consistent verdict across all
    triples yields one of four relations:

    * both low:   t precedes s (s's growth swamps t's in both windows);
    * both high:  t is succeeded by s, i.e. s precedes t;
    * early high, late low:  left-similar (the earlier window always wins);
    * early low, late high:  right-similar (the later window always wins).

    The two right-similar inequalities used here mirror the left-similar pair,
    i.e. growth(t,j,k) > q*growth(s,i,j) and growth(s,j,k) > q*growth(t,i,j).
    This symmetric reading keeps the classification invariant under swapping
    t with s, so left and right similarity are mirror images of each other.

    Any fraction landing inside [1/q, q], or a verdict that flips between
    triples, classifies as inconsistent.
    """
    if a.length < 3:
        raise ValueError("classification needs at least three positions")
    if t == s:
        raise ValueError("coordinates must be distinct")
    for c in (t, s):
        if not 1 <= c < a.dim:
            raise IndexError(f"coordinate {c} out of range 1..{a.dim - 1}")
    threshold = scalar(q)
    table = _table if _table is not None else _RatioTable(a)
    early_state = late_state = None
    for i, j, k in combinations(range(1, a.length + 1), 3):
        for which, top, bottom in (
            ("early", table.f(t, i, j), table.f(s, j, k)),
            ("late", table.f(t, j, k), table.f(s, i, j)),
        ):
            if top > threshold * bottom:
                state = "high"
            elif threshold * top < bottom:
                state = "low"
            else:
                return Relation.INCONSISTENT
            if which == "early":
                if early_state is None:
                    early_state = state
                elif early_state != state:
                    return Relation.INCONSISTENT
            else:
                if late_state is None:
                    late_state = state
                elif late_state != state:
                    return Relation.INCONSISTENT
    return {
        ("low", "low"): Relation.PRECEDES,
        ("high", "high"): Relation.SUCCEEDED_BY,
        ("high", "low"): Relation.LEFT_SIMILAR,
        ("low", "high"): Relation.RIGHT_SIMILAR,
    }[(early_state, late_state)]


@dataclass(frozen=True, eq=False)
class DominanceProfile:
    """Pairwise relations on coordinates 1..gaps plus the induced total order.

    `classes` lists the similarity classes from least to most dominant;
    `kinds` holds each class's shared relation (left/right similar, or None
    for singletons).  `order` is the full total order, least dominant first:
    similarity classes are concatenated in dominance order, right-similar
    classes ascending by coordinate index and left-similar ones descending.
    """

    gaps: int
    relations: dict
    classes: tuple
    kinds: tuple
    order: tuple
    _rank: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        self._rank.update({t: pos for pos, t in enumerate(self.order)})

    def relation(self, t: int, s: int) -> Relation:
        return self.relations[(t, s)]

    def max_of(self, coordinates) -> int:
        """The most dominant coordinate among the given ones."""
        items = list(coordinates)
        if not items:
            raise ValueError("max_of needs at least one coordinate")
        return max(items, key=self._rank.__getitem__)


def dominance_profile(a: PointSequence, q: ScalarLike) -> DominanceProfile:
    """Classify all coordinate pairs and assemble the total dominance order.

    Raises NotDominantError if the sequence is not ordered, any pair is
    inconsistent, similarity fails to be transitive with a uniform kind, or
    the precedence between similarity classes is not a total order.
    """
    threshold = scalar(q)
    gaps = a.dim - 1
    if gaps < 1:
        raise ValueError("a profile needs at least two coordinate rows")
    if not is_ordered(a, threshold):
        raise NotDominantError("sequence is not ordered with q-increasing ratios")
    table = _RatioTable(a)
    relations = {}
    for t in range(1, gaps + 1):
        for s in range(t + 1, gaps + 1):
            rel = classify_pair(a, threshold, t, s, _table=table)
            if rel is Relation.INCONSISTENT:
                raise NotDominantError(f"coordinates ({t}, {s}) classify inconsistently")
            relations[(t, s)] = rel
            relations[(s, t)] = {
                Relation.PRECEDES: Relation.SUCCEEDED_BY,
                Relation.SUCCEEDED_BY: Relation.PRECEDES,
                Relation.LEFT_SIMILAR: Relation.LEFT_SIMILAR,
                Relation.RIGHT_SIMILAR: Relation.RIGHT_SIMILAR,
            }[rel]

    # Union similarity classes, then check each is uniform in kind.
    parent = list(range(gaps + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (t, s), rel in relations.items():
        if rel in (Relation.LEFT_SIMILAR, Relation.RIGHT_SIMILAR):
            parent[find(t)] = find(s)
    groups: dict = {}
    for t in range(1, gaps + 1):
        groups.setdefault(find(t), []).append(t)
    classes = [tuple(sorted(members)) for members in groups.values()]
    kinds = []
    for members in classes:
        kind = None
        for t, s in combinations(members, 2):
            rel = relations[(t, s)]
            if rel not in (Relation.LEFT_SIMILAR, Relation.RIGHT_SIMILAR):
                raise NotDominantError(f"similarity is not transitive at ({t}, {s})")
            if kind is None:
                kind = rel
            elif kind is not rel:
                raise NotDominantError(f"similarity class {members} mixes kinds")
        kinds.append(kind)

    # Precedence between classes must be total and consistent.
    def class_precedes(members_a, members_b) -> bool:
        verdicts = {relations[(t, s)] for t in members_a for s in members_b}
        if verdicts == {Relation.PRECEDES}:
            return True
        if verdicts == {Relation.SUCCEEDED_BY}:
            return False
        raise NotDominantError(
            f"classes {members_a} and {members_b} do not compare consistently"
        )

    scored = []
    for idx, members in enumerate(classes):
        score = sum(
            class_precedes(other, members)
            for j, other in enumerate(classes)
            if j != idx
        )
        scored.append((score, idx))
    scored.sort()
    if [score for score, _ in scored] != list(range(len(classes))):
        raise NotDominantError("class precedence is not a total order")
    ordered_classes = []
    ordered_kinds = []
    order = []
    for _, idx in scored:
        members, kind = classes[idx], kinds[idx]
        ordered_classes.append(members)
        ordered_kinds.append(kind)
        block = sorted(members, reverse=(kind is Relation.LEFT_SIMILAR))
        order.extend(block)
    return DominanceProfile(
        gaps=gaps,
        relations=relations,
        classes=tuple(ordered_classes),
        kinds=tuple(ordered_kinds),
        order=tuple(order),
    )


def is_dominant(a: PointSequence, q: ScalarLike) -> bool:
    """True when the sequence is ordered and every coordinate pair classifies."""
    try:
        dominance_profile(a, q)
    except NotDominantError:
        return False
    return True


def is_super_dominant(a: PointSequence, q: ScalarLike, witness: PointSequence) -> bool:
    """True when a is the dim-strided subsequence of the dominant witness."""
    step = a.dim
    if witness.dim != a.dim or witness.length != step * a.length:
        return False
    for i in range(1, a.length + 1):
        if a.point(i) != witness.point(i * step):
            return False
    return is_dominant(witness, q)


def growth_product(a: PointSequence, assignments) -> Fraction:
    """Product of growth_ratio(a, s, i, j) over assignments {s: (i, j)}."""
    result = Fraction(1)
    for s, (i, j) in sorted(assignments.items()):
        result *= growth_ratio(a, s, i, j)
    return result


def product_config_admissible(assignments, tau: int) -> bool:
    """Check the hypotheses under which a growth product clears the gap.

    assignments maps coordinates s to position pairs (i_s, j_s); tau must be
    the most dominant assigned coordinate.  Admissible means both position
    families are weakly increasing in s and the tau pair is spread by at
    least the number of assigned coordinates.  On a dominant sequence an
    admissible product exceeds q when i_tau < j_tau and stays below 1/q when
    i_tau > j_tau.
    """
    if tau not in assignments:
        raise ValueError("tau must be one of the assigned coordinates")
    i_tau, j_tau = assignments[tau]
    if abs(i_tau - j_tau) < len(assignments):
        return False
    pairs = [assignments[s] for s in sorted(assignments)]
    return all(
        early[0] <= late[0] and early[1] <= late[1]
        for early, late in zip(pairs, pairs[1:])
    )


# ---------------------------------------------------------------------------
# zero-pinned combinations


def combination_row(a: PointSequence, alphas: Sequence[ScalarLike]) -> tuple:
    """The length-n row sum_t alphas[t] * row(t)."""
    if len(alphas) != a.dim:
        raise ValueError("one coefficient per coordinate row is required")
    coeffs = [scalar(x) for x in alphas]
    return tuple(
        sum(coeffs[t] * a.rows[t][i] for t in range(a.dim)) for i in range(a.length)
    )


def solve_prescribed_zeros(
    a: PointSequence,
    zero_positions: Sequence[int],
    normalization: tuple,
) -> tuple:
    """Coefficients alpha with the combination zero at the given positions.

    Takes dim-1 zero positions plus one (position, value) normalization pin;
    the resulting square system is solved exactly.
    """
    zeros = sorted(int(j) for j in zero_positions)
    if len(zeros) != a.dim - 1:
        raise ValueError(f"expected {a.dim - 1} zero positions, got {len(zeros)}")
    if len(set(zeros)) != len(zeros):
        raise ValueError("zero positions must be distinct")
    pin_pos, pin_value = int(normalization[0]), scalar(normalization[1])
    for j in zeros + [pin_pos]:
        if not 1 <= j <= a.length:
            raise IndexError(f"position {j} out of range 1..{a.length}")
    if pin_pos in zeros:
        raise ValueError("normalization position collides with a zero position")
    rows = [[a.entry(t, j) for t in range(1, a.dim + 1)] for j in zeros]
    rows.append([a.entry(t, pin_pos) for t in range(1, a.dim + 1)])
    rhs = [Fraction(0)] * len(zeros) + [pin_value]
    return solve_linear(Matrix(rows), rhs)


@dataclass(frozen=True)
class PinnedCombinationReport:
    """Outcome of checking a zero-pinned combination against its growth bounds."""

    combination: tuple
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_pinned_combination(
    a: PointSequence,
    q: ScalarLike,
    alphas: Sequence[ScalarLike],
    zero_positions: Sequence[int],
    depth: int = 1,
) -> PinnedCombinationReport:
    """Check sign structure and dominant-term bounds of a pinned combination.

    For positions at distance more than `depth` from the neighbouring zeros,
    the region's own term must dominate: with X the local term's magnitude and
    N the two neighbouring terms' magnitudes,

        (1 - 2/q**depth) * X  <  X - N  <=  |b_i|  <  X.

    The middle comparison admits equality: when every term other than the
    local one is an immediate neighbour (three coordinate rows, middle
    region), the residual equals X - N exactly.

    The combination must vanish exactly at the prescribed zeros, keep a
    constant sign between consecutive zeros, flip sign across each zero, and
    its coefficients must alternate in sign.  Violations are reported as
    strings; an empty report means every check passed.
    """
    threshold = scalar(q)
    if threshold <= 3:
        raise ValueError("the bounds need q > 3")
    if depth < 1:
        raise ValueError("depth must be a positive integer")
    zeros = sorted(int(j) for j in zero_positions)
    if len(zeros) != a.dim - 1 or len(set(zeros)) != len(zeros):
        raise ValueError("zero positions must be distinct and one fewer than dim")
    if any(b - x < 3 for x, b in zip(zeros, zeros[1:])):
        raise ValueError("zero positions must be more than 2 apart")
    if not a.is_positive:
        raise ValueError("sequence entries must be positive")
    coeffs = [scalar(x) for x in alphas]
    if len(coeffs) != a.dim:
        raise ValueError("one coefficient per coordinate row is required")
    b = combination_row(a, coeffs)
    violations = []

    signs = [(x > 0) - (x < 0) for x in coeffs]
    if 0 in signs:
        violations.append("coefficient-zero: some alpha vanishes")
    elif any(u * v != -1 for u, v in zip(signs, signs[1:])):
        violations.append("coefficient-signs: alphas do not alternate")

    zero_set = set(zeros)
    for i in range(1, a.length + 1):
        value = b[i - 1]
        if i in zero_set and value != 0:
            violations.append(f"missing-zero: position {i} is {scalar_str(value)}")
        if i not in zero_set and value == 0:
            violations.append(f"unexpected-zero: position {i}")

    # Sign pattern: constant between zeros, flipping across each zero.
    boundaries = [0] + zeros + [a.length + 1]
    region_signs = []
    for lo, hi in zip(boundaries, boundaries[1:]):
        inside = [(b[i - 1] > 0) - (b[i - 1] < 0) for i in range(lo + 1, hi) if b[i - 1] != 0]
        if inside and any(s != inside[0] for s in inside):
            violations.append(f"sign-change: inside positions {lo + 1}..{hi - 1}")
        region_signs.append(inside[0] if inside else 0)
    for idx, (u, v) in enumerate(zip(region_signs, region_signs[1:])):
        if u and v and u != -v:
            violations.append(f"no-flip: across zero at position {zeros[idx]}")

    slack = 1 - 2 / threshold**depth
    for t in range(1, a.dim + 1):
        lo = zeros[t - 2] if t >= 2 else None
        hi = zeros[t - 1] if t <= len(zeros) else None
        start = (lo + depth + 1) if lo is not None else 1
        stop = (hi - depth - 1) if hi is not None else a.length
        for i in range(max(start, 1), min(stop, a.length) + 1):
            own = abs(coeffs[t - 1] * a.entry(t, i))
            neighbours = Fraction(0)
            if t >= 2:
                neighbours += abs(coeffs[t - 2] * a.entry(t - 1, i))
            if t <= a.dim - 1:
                neighbours += abs(coeffs[t] * a.entry(t + 1, i))
            value = abs(b[i - 1])
            if not (slack * own < own - neighbours <= value < own):
                violations.append(f"bound: coordinate {t}, position {i}")
    return PinnedCombinationReport(combination=b, violations=tuple(violations))


# ---------------------------------------------------------------------------
# monochromatic search


def monochromatic_subsequence(
    n_target: int,
    arity: int,
    coloring: Callable,
    universe: int,
) -> Optional[list]:
    """First (lexicographically) n_target indices in 1..universe all of whose
    arity-subsets share one color, or None when no such subsequence exists.

    The coloring is called on strictly increasing index tuples; returned
    colors only need to support equality.
    """
    if n_target < 0 or arity < 1:
        raise ValueError("target length must be >= 0 and arity >= 1")
    if universe < n_target:
        raise ValueError("universe is smaller than the target length")
    if n_target == 0:
        return []
    chosen: list = []
    state = {"color": None, "fixed_at": None}

    def admissible(candidate: int) -> bool:
        if len(chosen) + 1 < arity:
            return True
        for head in combinations(chosen, arity - 1):
            color = coloring(tuple(head) + (candidate,))
            if state["color"] is None:
                state["color"] = color
                state["fixed_at"] = (len(chosen), candidate)
            elif color != state["color"]:
                return False
        return True

    def reset_if_fixed_here(candidate: int):
        if state["fixed_at"] == (len(chosen), candidate):
            state["color"] = None
            state["fixed_at"] = None

    def extend(start: int) -> bool:
        if len(chosen) == n_target:
            return True
        for candidate in range(start, universe + 1):
            if universe - candidate + 1 < n_target - len(chosen):
                return False
            if admissible(candidate):
                chosen.append(candidate)
                if extend(candidate + 1):
                    return True
                chosen.pop()
            reset_if_fixed_here(candidate)
        return False

    return chosen if extend(1) else None

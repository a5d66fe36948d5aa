"""Partitions of point sequences and the common-point linear system.

A partition splits positions 1..n into r disjoint nonempty classes.  For
n = (r-1)(d+1)+1 points in d dimensions the classes' convex hulls share a
point exactly when a square linear system has an all-positive solution; this
module builds that system, decides the property along two independent routes
(direct solve and determinant signs), and enumerates partitions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from .exact import (
    DimensionError,
    Matrix,
    ScalarLike,
    SingularMatrixError,
    det_sign,
    rank,
    scalar,
    solve_linear,
)
from .sequences import PointSequence


class DegeneratePointsError(ValueError):
    """The partition's system is singular; the points are too special."""


class CertificateMismatchError(RuntimeError):
    """The solve route and the determinant-sign route disagree (a bug)."""


def tverberg_number(r: int, d: int) -> int:
    """Smallest n that always admits an r-fold common-point partition."""
    if r < 1 or d < 1:
        raise ValueError("need r >= 1 and d >= 1")
    return (r - 1) * (d + 1) + 1


def blocks(d: int, r: int) -> tuple:
    """Consecutive windows of r positions overlapping in their endpoints.

    Window s (1-based, s = 1..d+1) covers (s-1)(r-1)+1 .. s(r-1)+1; windows
    jointly cover 1..tverberg_number(r, d).
    """
    return tuple(
        tuple(range((s - 1) * (r - 1) + 1, s * (r - 1) + 2)) for s in range(1, d + 2)
    )


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty classes covering positions 1..n exactly."""

    n: int
    classes: tuple

    def __init__(self, n: int, classes: Sequence[Sequence[int]]):
        normalized = tuple(tuple(sorted(int(i) for i in cls)) for cls in classes)
        if any(not cls for cls in normalized):
            raise ValueError("classes must be nonempty")
        seen: list = sorted(i for cls in normalized for i in cls)
        if seen != list(range(1, n + 1)):
            raise ValueError(f"classes must cover 1..{n} exactly once")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "classes", normalized)

    @property
    def r(self) -> int:
        return len(self.classes)

    def canonical(self) -> "Partition":
        """Classes reordered by smallest member; the unlabeled normal form."""
        return Partition(self.n, sorted(self.classes, key=min))

    def is_proper(self, d: int) -> bool:
        return all(len(cls) <= d + 1 for cls in self.classes)

    def class_of(self, i: int) -> int:
        """1-based index of the class containing position i."""
        for m, cls in enumerate(self.classes, start=1):
            if i in cls:
                return m
        raise KeyError(f"position {i} is not covered")


def partition_to_json(partition: Partition) -> dict:
    return {"n": partition.n, "classes": [list(cls) for cls in partition.classes]}


def partition_from_json(payload: dict) -> Partition:
    try:
        return Partition(payload["n"], payload["classes"])
    except (KeyError, TypeError) as exc:
        raise ValueError("partition payload needs keys 'n' and 'classes'") from exc


def is_rainbow(partition: Partition, d: int) -> bool:
    """Each class meets each window of blocks(d, r) in exactly one position."""
    r = partition.r
    if partition.n != tverberg_number(r, d):
        return False
    windows = blocks(d, r)
    return all(
        sum(1 for i in cls if i in window) == 1
        for cls in partition.classes
        for window in windows
    )


def enumerate_proper_partitions(n: int, r: int, max_size: int) -> list:
    """All unlabeled partitions of 1..n into r classes of size <= max_size.

    Classes come out ordered by smallest member; the listing is deterministic
    (restricted-growth order).
    """
    results: list = []
    classes: list = []

    def place(i: int):
        remaining = n - i + 1
        if remaining == 0:
            if len(classes) == r:
                results.append(Partition(n, [tuple(cls) for cls in classes]))
            return
        missing = r - len(classes)
        if remaining < missing:
            return
        capacity = sum(max_size - len(cls) for cls in classes) + missing * max_size
        if remaining > capacity:
            return
        for cls in classes:
            if len(cls) < max_size:
                cls.append(i)
                place(i + 1)
                cls.pop()
        if len(classes) < r:
            classes.append([i])
            place(i + 1)
            classes.pop()

    place(1)
    return results


def enumerate_rainbow(d: int, r: int) -> list:
    """All rainbow partitions for n = tverberg_number(r, d), in listing order."""
    n = tverberg_number(r, d)
    return [
        p for p in enumerate_proper_partitions(n, r, d + 1) if is_rainbow(p, d)
    ]


# ---------------------------------------------------------------------------
# the common-point system


class TverbergSystem(NamedTuple):
    """Square system: per class, an affine-combination row block; shared point.

    column_map names each column ("alpha", i) or ("z", t); row_map names each
    row (m, t) with t = 0 the combination-sums-to-one row of class m.
    """

    matrix: Matrix
    rhs: tuple
    column_map: tuple
    row_map: tuple


def build_system(points: PointSequence, partition: Partition) -> TverbergSystem:
    """The r(d+1)-square system whose solution is (alpha_1..alpha_n, z_1..z_d).

    Row block of class m demands sum(alpha_i) = 1 and sum(alpha_i p_i) = z
    over i in the class; the z columns carry -1 so the same z serves every
    block.  All-positive alphas certify the common point z.
    """
    d, n = points.dim, points.length
    r = partition.r
    if partition.n != n:
        raise DimensionError(f"partition covers 1..{partition.n}, points have n={n}")
    if n != tverberg_number(r, d):
        raise DimensionError(
            f"square system needs n = (r-1)(d+1)+1; got n={n}, r={r}, d={d}"
        )
    size = r * (d + 1)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for m0, cls in enumerate(partition.classes):
        base = m0 * (d + 1)
        for i in cls:
            rows[base][i - 1] = Fraction(1)
            for t in range(1, d + 1):
                rows[base + t][i - 1] = points.entry(t, i)
        for t in range(1, d + 1):
            rows[base + t][n + t - 1] = Fraction(-1)
    rhs = tuple(
        Fraction(1) if t == 0 else Fraction(0)
        for _ in range(r)
        for t in range(d + 1)
    )
    column_map = tuple(
        [("alpha", i) for i in range(1, n + 1)] + [("z", t) for t in range(1, d + 1)]
    )
    row_map = tuple((m, t) for m in range(1, r + 1) for t in range(d + 1))
    return TverbergSystem(Matrix(rows), rhs, column_map, row_map)


@dataclass(frozen=True)
class TverbergVerdict:
    """Outcome of the common-point decision for one partition."""

    is_tverberg: bool
    reason: str
    alphas: Optional[tuple] = None
    z: Optional[tuple] = None
    base_sign: Optional[int] = None
    det_signs: Optional[tuple] = None


def decide_tverberg(
    points: PointSequence, partition: Partition, cross_check: bool = True
) -> TverbergVerdict:
    """Decide whether the classes' convex hulls share a point.

    Solves the square system and demands every alpha strictly positive.  With
    cross_check on, the determinant-sign route is run as well (alpha_i is a
    ratio of two determinants, so positivity shows in matching signs) and any
    disagreement raises CertificateMismatchError.

    The criterion is meant for points in strong general position; partitions
    with an oversized class are rejected outright, since their hull
    intersection is empty for such points.  A singular system raises
    DegeneratePointsError.
    """
    d, n = points.dim, points.length
    if not partition.is_proper(d):
        return TverbergVerdict(False, "improper")
    system = build_system(points, partition)
    try:
        solution = solve_linear(system.matrix, system.rhs)
    except SingularMatrixError as exc:
        raise DegeneratePointsError(
            "singular system; the points are degenerate for this partition"
        ) from exc
    alphas, z = solution[:n], solution[n:]
    if all(a > 0 for a in alphas):
        verdict, reason = True, "certified"
    elif any(a == 0 for a in alphas):
        verdict, reason = False, "boundary-coefficient"
    else:
        verdict, reason = False, "negative-coefficient"
    base_sign = det_signs = None
    if cross_check:
        base_sign = det_sign(system.matrix)
        det_signs = tuple(
            det_sign(system.matrix.with_column(col, system.rhs)) for col in range(n)
        )
        for alpha, sign in zip(alphas, det_signs):
            if ((alpha > 0) - (alpha < 0)) != sign * base_sign:
                raise CertificateMismatchError(
                    "solve route and determinant route disagree on a coefficient sign"
                )
        if (all(s == base_sign for s in det_signs)) != verdict:
            raise CertificateMismatchError(
                "determinant route disagrees with the positivity verdict"
            )
    return TverbergVerdict(verdict, reason, alphas, z, base_sign, det_signs)


def enumerate_tverberg(points: PointSequence, cross_check: bool = False) -> list:
    """All proper partitions whose hulls share a point, in listing order.

    The class count r is forced by n = (r-1)(d+1)+1; a length that fits no r
    raises DimensionError.

    A partition with a singular system is kept out of the result only when
    the classes' affine hulls provably have empty intersection (so the hulls
    cannot share a point either); any other singularity is a genuine
    degeneracy and the error propagates.
    """
    d, n = points.dim, points.length
    if (n - 1) % (d + 1) != 0:
        raise DimensionError(f"n={n} fits no class count for d={d}")
    r = (n - 1) // (d + 1) + 1
    found = []
    for p in enumerate_proper_partitions(n, r, d + 1):
        try:
            if decide_tverberg(points, p, cross_check=cross_check).is_tverberg:
                found.append(p)
        except DegeneratePointsError:
            if affine_intersection_dim(points, p.classes) != -1:
                raise
    return found


# ---------------------------------------------------------------------------
# general position


def affine_intersection_dim(points: PointSequence, subsets: Sequence[Sequence[int]]) -> int:
    """Dimension of the intersection of the subsets' affine hulls; -1 if empty.

    Works over one combined system: affine weights per subset, all forced to
    produce the same point.  The intersection dimension is the solution-space
    dimension minus the weight-space slack (weights describing one point are
    unique only up to each hull's own degeneracies).
    """
    d = points.dim
    groups = [tuple(sorted(set(int(i) for i in sub))) for sub in subsets]
    if not groups or any(not g for g in groups):
        raise ValueError("need at least one nonempty subset")
    var_count = sum(len(g) for g in groups) + d
    offsets = []
    acc = 0
    for g in groups:
        offsets.append(acc)
        acc += len(g)
    x_base = acc
    rows = []
    rhs_rows = []
    for g, off in zip(groups, offsets):
        row = [Fraction(0)] * var_count
        for k in range(len(g)):
            row[off + k] = Fraction(1)
        rows.append(row)
        rhs_rows.append(Fraction(1))
        for t in range(1, d + 1):
            row = [Fraction(0)] * var_count
            for k, i in enumerate(g):
                row[off + k] = points.entry(t, i)
            row[x_base + t - 1] = Fraction(-1)
            rows.append(row)
            rhs_rows.append(Fraction(0))
    coeff_rank = rank(Matrix(rows))
    augmented = Matrix([row + [b] for row, b in zip(rows, rhs_rows)])
    if rank(augmented) > coeff_rank:
        return -1
    solution_dim = var_count - coeff_rank
    slack = 0
    for g in groups:
        lifted = Matrix([[Fraction(1)] + list(points.point(i)) for i in g])
        hull_dim = rank(lifted) - 1
        slack += len(g) - 1 - hull_dim
    return solution_dim - slack


def _disjoint_families(n: int, k: int):
    """Unlabeled families of k disjoint nonempty subsets of 1..n."""
    seen = set()
    assignment = [0] * (n + 1)  # 0 = unused, 1..k = subset label

    def emit():
        family = [[] for _ in range(k)]
        for i in range(1, n + 1):
            if assignment[i]:
                family[assignment[i] - 1].append(i)
        if all(family):
            key = frozenset(frozenset(g) for g in family)
            if key not in seen and len(key) == k:
                seen.add(key)
                yield tuple(tuple(g) for g in family)

    def walk(i):
        if i > n:
            yield from emit()
            return
        for label in range(k + 1):
            assignment[i] = label
            yield from walk(i + 1)
        assignment[i] = 0

    yield from walk(1)


def is_strong_general_position(points: PointSequence, r: int) -> bool:
    """Every family of up to r disjoint subsets has the expected hull overlap.

    Expected: the intersection of the affine hulls loses exactly the summed
    codimensions, floored at empty, i.e.
    d - dim(intersection) == min(d + 1, sum of (d - hull_dim)) with the empty
    intersection counted as dimension -1.  Exponential in n; intended for
    small instances.
    """
    d, n = points.dim, points.length
    for k in range(1, r + 1):
        for family in _disjoint_families(n, k):
            total_codim = 0
            for g in family:
                lifted = Matrix([[Fraction(1)] + list(points.point(i)) for i in g])
                total_codim += d - (rank(lifted) - 1)
            expected = min(d + 1, total_codim)
            if d - affine_intersection_dim(points, family) != expected:
                return False
    return True


# ---------------------------------------------------------------------------
# invariance


def apply_affine(
    points: PointSequence,
    linear: Matrix,
    shift: Sequence[ScalarLike],
) -> PointSequence:
    """Map every point through x -> linear @ x + shift."""
    d = points.dim
    if linear.rows != d or linear.cols != d:
        raise DimensionError("linear part must be d x d")
    if len(shift) != d:
        raise DimensionError("shift must have one entry per coordinate")
    offsets = [scalar(s) for s in shift]
    cols = []
    for i in range(1, points.length + 1):
        image = linear.mul_vec(points.point(i))
        cols.append([x + s for x, s in zip(image, offsets)])
    return PointSequence([[col[t] for col in cols] for t in range(d)])


def transform_invariance_check(
    points: PointSequence,
    lifted_map: Matrix,
    partition: Partition,
) -> bool:
    """Whether the verdict survives an invertible map of lifted coordinates.

    lifted_map is (d+1)-square, acts on vectors (1, p), and must keep the
    leading 1 in place (first row (1, 0, ..., 0)), which makes it an affine
    change of coordinates on the points themselves.
    """
    d = points.dim
    if lifted_map.rows != d + 1 or lifted_map.cols != d + 1:
        raise DimensionError("lifted map must be (d+1)-square")
    if lifted_map[0] != (Fraction(1),) + (Fraction(0),) * d:
        raise ValueError("lifted map must fix the leading-one coordinate")
    if det_sign(lifted_map) == 0:
        raise ValueError("lifted map must be invertible")
    shift = [lifted_map[t][0] for t in range(1, d + 1)]
    linear = Matrix([row[1:] for row in tuple(lifted_map)[1:]])
    before = decide_tverberg(points, partition)
    after = decide_tverberg(apply_affine(points, linear, shift), partition)
    return before.is_tverberg == after.is_tverberg

"""Partitions, the common-point system, and the two decision routes."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tverberg.exact import DimensionError, Matrix, det, det_sign
from tverberg.partitions import (
    CertificateMismatchError,
    DegeneratePointsError,
    Partition,
    affine_intersection_dim,
    apply_affine,
    blocks,
    build_system,
    decide_tverberg,
    enumerate_proper_partitions,
    enumerate_rainbow,
    enumerate_tverberg,
    is_rainbow,
    is_strong_general_position,
    partition_from_json,
    partition_to_json,
    transform_invariance_check,
    tverberg_number,
)
from tverberg.sequences import PointSequence, gen_moment_curve

from oracle_utils import labeled_proper_partitions


def radon_line() -> PointSequence:
    return gen_moment_curve(1, [1, 2, 3])


def test_tverberg_number_values():
    assert tverberg_number(2, 1) == 3
    assert tverberg_number(2, 2) == 4
    assert tverberg_number(3, 1) == 5
    assert tverberg_number(3, 2) == 7
    assert tverberg_number(2, 3) == 5
    with pytest.raises(ValueError):
        tverberg_number(0, 1)


def test_blocks_cover_with_shared_endpoints():
    assert blocks(1, 2) == ((1, 2), (2, 3))
    assert blocks(1, 3) == ((1, 2, 3), (3, 4, 5))
    assert blocks(2, 3) == ((1, 2, 3), (3, 4, 5), (5, 6, 7))
    for d, r in ((1, 2), (2, 2), (2, 3), (3, 2)):
        windows = blocks(d, r)
        assert len(windows) == d + 1
        assert all(len(w) == r for w in windows)
        assert sorted(set(i for w in windows for i in w)) == list(
            range(1, tverberg_number(r, d) + 1)
        )


def test_partition_validation_and_accessors():
    p = Partition(3, [[2], [3, 1]])
    assert p.classes == ((2,), (1, 3))
    assert p.r == 2
    assert p.class_of(3) == 2
    assert p.canonical().classes == ((1, 3), (2,))
    assert p.is_proper(1)
    assert not Partition(3, [[1, 2, 3]]).is_proper(1)
    with pytest.raises(ValueError):
        Partition(3, [[1, 2], [2, 3]])
    with pytest.raises(ValueError):
        Partition(4, [[1, 2], [3]])
    with pytest.raises(ValueError):
        Partition(2, [[1, 2], []])


def test_partition_json_round_trip():
    p = Partition(5, [[3], [1, 4], [2, 5]])
    assert partition_from_json(partition_to_json(p)) == p
    with pytest.raises(ValueError):
        partition_from_json({"n": 3})


def test_rainbow_frozen_cases():
    assert is_rainbow(Partition(3, [[2], [1, 3]]), 1)
    assert not is_rainbow(Partition(3, [[1], [2, 3]]), 1)
    assert [p.classes for p in enumerate_rainbow(1, 2)] == [((1, 3), (2,))]
    assert [p.classes for p in enumerate_rainbow(1, 3)] == [
        ((1, 4), (2, 5), (3,)),
        ((1, 5), (2, 4), (3,)),
    ]


def test_rainbow_classes_hit_every_window():
    for d, r in ((2, 2), (3, 2), (2, 3)):
        found = enumerate_rainbow(d, r)
        assert found, f"no rainbow partitions at d={d}, r={r}"
        for p in found:
            for cls in p.classes:
                for window in blocks(d, r):
                    assert len(set(cls) & set(window)) == 1


@given(st.integers(3, 7), st.integers(2, 3), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_enumeration_matches_labeled_oracle(n, r, max_size):
    ours = enumerate_proper_partitions(n, r, max_size)
    expected = {
        frozenset(cls for cls in labeled)
        for labeled in labeled_proper_partitions(n, r, max_size)
    }
    assert {frozenset(frozenset(c) for c in p.classes) for p in ours} == expected
    assert len(ours) == len(expected)  # no duplicates in the listing


def test_enumeration_is_deterministic():
    first = enumerate_proper_partitions(5, 2, 4)
    second = enumerate_proper_partitions(5, 2, 4)
    assert [p.classes for p in first] == [p.classes for p in second]
    assert all(p.canonical() == p for p in first)


# ---------------------------------------------------------------------------
# system construction


def test_build_system_shape_and_layout():
    points = radon_line()
    p = Partition(3, [[1, 3], [2]])
    system = build_system(points, p)
    assert system.matrix.rows == system.matrix.cols == 4
    assert system.rhs == (1, 0, 1, 0)
    assert system.column_map == (("alpha", 1), ("alpha", 2), ("alpha", 3), ("z", 1))
    assert system.row_map == ((1, 0), (1, 1), (2, 0), (2, 1))
    expected = Matrix(
        [
            [1, 0, 1, 0],
            [1, 0, 3, -1],
            [0, 1, 0, 0],
            [0, 2, 0, -1],
        ]
    )
    assert system.matrix == expected


def test_build_system_rejects_wrong_count():
    points = gen_moment_curve(1, [1, 2, 3, 4])
    with pytest.raises(DimensionError):
        build_system(points, Partition(4, [[1, 3], [2, 4]]))


def test_decide_radon_middle_point():
    verdict = decide_tverberg(radon_line(), Partition(3, [[1, 3], [2]]))
    assert verdict.is_tverberg
    assert verdict.reason == "certified"
    assert verdict.alphas == (Fraction(1, 2), 1, Fraction(1, 2))
    assert verdict.z == (2,)
    assert verdict.base_sign is not None
    assert all(s == verdict.base_sign for s in verdict.det_signs)


def test_decide_radon_wrong_split():
    verdict = decide_tverberg(radon_line(), Partition(3, [[1, 2], [3]]))
    assert not verdict.is_tverberg
    assert verdict.reason == "negative-coefficient"


def test_decide_rejects_oversized_class():
    points = gen_moment_curve(1, [1, 2, 3, 4, 5])
    verdict = decide_tverberg(points, Partition(5, [[1, 2, 3], [4, 5]]))
    assert not verdict.is_tverberg
    assert verdict.reason == "improper"
    assert verdict.alphas is None


def test_decide_boundary_point():
    # the singleton class sits exactly on an endpoint of the other class's
    # segment, so one coefficient of the solution vanishes
    points = PointSequence([[1, 1, 3]])
    verdict = decide_tverberg(points, Partition(3, [[1, 3], [2]]))
    assert not verdict.is_tverberg
    assert verdict.reason == "boundary-coefficient"
    assert verdict.alphas == (1, 1, 0)


def test_decide_raises_on_degenerate_points():
    points = PointSequence([[1, 1, 3]])  # repeated point on the line
    with pytest.raises(DegeneratePointsError):
        decide_tverberg(points, Partition(3, [[1, 2], [3]]))


def test_moment_curve_radon_is_interlacing():
    for d in (1, 2, 3):
        n = tverberg_number(2, d)
        points = gen_moment_curve(d, list(range(1, n + 1)))
        found = enumerate_tverberg(points)
        odd = tuple(range(1, n + 1, 2))
        even = tuple(range(2, n + 1, 2))
        assert [p.classes for p in found] == [(odd, even)]


def test_enumerate_survives_parallel_secants():
    # equally spaced parabola parameters make the 1-4 and 2-3 secants
    # parallel: that partition's system is singular, but its affine hulls
    # are provably disjoint, so enumeration can still discard it
    points = gen_moment_curve(2, [1, 2, 3, 4])
    with pytest.raises(DegeneratePointsError):
        decide_tverberg(points, Partition(4, [[1, 4], [2, 3]]))
    assert affine_intersection_dim(points, [[1, 4], [2, 3]]) == -1
    found = enumerate_tverberg(points)
    assert [p.classes for p in found] == [((1, 3), (2, 4))]


def test_enumerate_rejects_incompatible_length():
    with pytest.raises(DimensionError):
        enumerate_tverberg(gen_moment_curve(2, [1, 2, 3]))


def test_cross_check_runs_both_routes():
    points = radon_line()
    lazy = decide_tverberg(points, Partition(3, [[1, 3], [2]]), cross_check=False)
    assert lazy.det_signs is None and lazy.base_sign is None
    eager = decide_tverberg(points, Partition(3, [[1, 3], [2]]), cross_check=True)
    assert eager.det_signs is not None
    assert eager.is_tverberg == lazy.is_tverberg


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_decide_agrees_with_cramer_on_random_lines(data):
    values = data.draw(
        st.lists(
            st.integers(-30, 30).map(Fraction), min_size=3, max_size=3, unique=True
        )
    )
    points = PointSequence([values])
    p = Partition(3, data.draw(st.sampled_from([[[1, 3], [2]], [[1, 2], [3]], [[2, 3], [1]]])))
    try:
        verdict = decide_tverberg(points, p, cross_check=True)
    except DegeneratePointsError:
        return
    def relint(cls):
        lo = min(values[i - 1] for i in cls)
        hi = max(values[i - 1] for i in cls)
        return lo, hi

    # all-alphas-positive matches intersecting relative interiors, and a
    # singleton's relative interior is the point itself
    (a_lo, a_hi), (b_lo, b_hi) = relint(p.classes[0]), relint(p.classes[1])
    if a_lo == a_hi and b_lo == b_hi:
        overlap = a_lo == b_lo
    elif a_lo == a_hi:
        overlap = b_lo < a_lo < b_hi
    elif b_lo == b_hi:
        overlap = a_lo < b_lo < a_hi
    else:
        overlap = max(a_lo, b_lo) < min(a_hi, b_hi)
    assert verdict.is_tverberg == overlap


# ---------------------------------------------------------------------------
# affine hull intersections


def square_points() -> PointSequence:
    return PointSequence([[0, 2, 0, 2], [0, 2, 2, 0]])


def test_affine_intersection_crossing_segments():
    points = square_points()
    assert affine_intersection_dim(points, [[1, 2], [3, 4]]) == 0
    assert affine_intersection_dim(points, [[1, 2]]) == 1
    assert affine_intersection_dim(points, [[1]]) == 0


def test_affine_intersection_empty_and_nested():
    points = PointSequence([[0, 1, 0, 1], [0, 0, 1, 1]])  # unit square corners
    assert affine_intersection_dim(points, [[1, 2], [3, 4]]) == -1  # parallel sides
    assert affine_intersection_dim(points, [[1, 2, 3], [4]]) == 0
    # a line inside the full plane: the intersection is the line itself
    assert affine_intersection_dim(points, [[1, 2, 3], [1, 4]]) == 1


def test_affine_intersection_point_on_line():
    points = PointSequence([[0, 2, 1], [0, 2, 1]])
    assert affine_intersection_dim(points, [[1, 2], [3]]) == 0
    far = PointSequence([[0, 2, 5], [0, 2, 1]])
    assert affine_intersection_dim(far, [[1, 2], [3]]) == -1


def test_strong_general_position_examples():
    assert is_strong_general_position(radon_line(), 2)
    # the square has two pairs of parallel sides, which is exactly the kind
    # of coincidence the property forbids
    assert not is_strong_general_position(square_points(), 2)
    quad = PointSequence([[0, 3, 1, 4], [0, 1, 3, 5]])
    assert is_strong_general_position(quad, 2)
    collinear_triple = PointSequence([[0, 1, 2, 0], [0, 1, 2, 1]])
    assert not is_strong_general_position(collinear_triple, 2)
    repeated = PointSequence([[1, 1, 3]])
    assert not is_strong_general_position(repeated, 2)


def test_moment_curve_strong_general_position_depends_on_parameters():
    # equally spaced parameters give parallel secants (1+4 = 2+3), while
    # parameters with distinct pairwise sums avoid every such coincidence
    assert not is_strong_general_position(gen_moment_curve(2, [1, 2, 3, 4]), 2)
    assert is_strong_general_position(gen_moment_curve(2, [1, 2, 4, 8]), 2)
    assert is_strong_general_position(gen_moment_curve(1, [1, 2, 3]), 2)
    assert is_strong_general_position(gen_moment_curve(3, [1, 2, 4, 8, 16]), 2)


# ---------------------------------------------------------------------------
# affine invariance


def test_apply_affine_moves_points():
    points = square_points()
    moved = apply_affine(points, Matrix([[0, -1], [1, 0]]), [10, 0])
    assert moved.point(2) == (Fraction(8), Fraction(2))


def test_verdict_survives_affine_maps():
    points = gen_moment_curve(2, [1, 2, 4, 8])
    lifted_map = Matrix([[1, 0, 0], [7, "2/3", 1], ["-1/2", 0, -5]])
    assert det(lifted_map) != 0
    for classes in ([[1, 3], [2, 4]], [[1, 2], [3, 4]], [[1], [2, 3, 4]]):
        assert transform_invariance_check(points, lifted_map, Partition(4, classes))


def test_transform_invariance_rejects_bad_maps():
    p = Partition(4, [[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        transform_invariance_check(
            square_points(), Matrix([[1, 0, 0], [0, 1, 1], [0, 1, 1]]), p
        )
    with pytest.raises(ValueError):
        # moves the leading-one coordinate
        transform_invariance_check(
            square_points(), Matrix([[1, 2, 0], [0, 1, 0], [0, 0, 1]]), p
        )


def test_det_sign_route_columns_match_cramer():
    # spot-check the determinant identity behind the cross-check
    points = radon_line()
    p = Partition(3, [[1, 3], [2]])
    system = build_system(points, p)
    base = det(system.matrix)
    verdict = decide_tverberg(points, p)
    for col in range(3):
        numerator = det(system.matrix.with_column(col, system.rhs))
        assert verdict.alphas[col] == numerator / base

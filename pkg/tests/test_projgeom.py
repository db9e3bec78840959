from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintics.errors import InputError
from quintics.exactalg import QQ, DenseMatrix, PrimeField, kernel
from quintics.projgeom import (
    Conic,
    ProjLine,
    ProjPoint,
    collinear,
    conic_line_second_point,
    conic_through,
    hausdorff,
    incident,
    line_through,
    on_common_conic,
    tangent,
    veronese,
)
from quintics.sampling import (
    apply_transform_to_point,
    conic_from_line_pair,
    random_projective_transform,
    sample_generic,
)

FP = PrimeField(65521)


def pt(*coords, field=QQ):
    return ProjPoint(field, coords)


def ln(*coeffs, field=QQ):
    return ProjLine(field, coeffs)


# --- incidence -------------------------------------------------------------

def test_incident_examples():
    z_axis_line = ln(0, 0, 1)  # the line z = 0
    assert not incident(pt(0, 0, 1), z_axis_line)
    assert incident(pt(1, 0, 0), z_axis_line)
    assert incident(pt(1, 1, 1), ln(1, -1, 0))


def test_collinear_examples():
    assert collinear(pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0))
    assert not collinear(pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1))
    # determinant of [[1,0,1],[0,1,1],[1,1,2]] vanishes
    assert collinear(pt(1, 0, 1), pt(0, 1, 1), pt(1, 1, 2))
    with pytest.raises(InputError):
        collinear(pt(1, 0, 0), pt(1, 0, 0), pt(0, 0, 1))


def test_point_normalization_canonical():
    assert pt(2, 4, 6) == pt(1, 2, 3)
    assert pt(0, 3, 6).coords == (0, 1, 2)
    with pytest.raises(InputError):
        pt(0, 0, 0)


# --- conics ----------------------------------------------------------------

def _points_on_standard_conic(params):
    # the conic x*y = z^2 carries the rational points (s^2, t^2, s*t)
    return [pt(s * s, t * t, s * t) for s, t in params]


def test_six_points_on_conic():
    pts = _points_on_standard_conic([(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, 3)])
    assert on_common_conic(pts)


def test_five_on_conic_plus_generic_point_off():
    pts = _points_on_standard_conic([(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)])
    pts.append(pt(1, 1, 1))  # x*y - z^2 = 0 at (1,1,1): 1 - 1 = 0, so pick off-conic
    assert Conic(QQ, (0, 0, -1, 1, 0, 0)).contains(pt(1, 1, 1))
    pts[-1] = pt(1, 2, 3)  # 2 - 9 != 0
    # independent oracle: 6x6 Veronese determinant via kernel dimension
    m = DenseMatrix(QQ, [veronese(q) for q in pts], 6)
    assert kernel(m).dim == 0
    assert not on_common_conic(pts)


def test_three_collinear_plus_three_on_explicit_line_pair():
    l1 = ln(0, 0, 1)
    l2 = ln(1, 0, 0)
    trio1 = [pt(1, 0, 0), pt(1, 1, 0), pt(1, 2, 0)]
    trio2 = [pt(0, 1, 1), pt(0, 1, 2), pt(0, 1, 3)]
    pts = trio1 + trio2
    assert on_common_conic(pts)
    pair = conic_from_line_pair(l1, l2)
    assert all(pair.contains(q) for q in pts)
    assert pair.is_degenerate()


def test_three_collinear_plus_three_generic_lie_on_no_conic():
    # a conic through three collinear points must contain their line, so it
    # exists exactly when the remaining three points are collinear as well
    trio = [pt(1, 0, 0), pt(1, 1, 0), pt(1, 2, 0)]
    generic = [pt(0, 0, 1), pt(1, 1, 1), pt(1, 2, 5)]
    assert not collinear(*generic)
    assert not on_common_conic(trio + generic)


def test_tangency_discriminant_unit_circle_family():
    # conic x^2 + y^2 - z^2 against the vertical lines x = alpha * z:
    # tangency happens exactly at alpha = 1 (and -1)
    circle = Conic(QQ, (1, 1, -1, 0, 0, 0))
    assert tangent(circle, ln(1, 0, -1))
    assert not tangent(circle, ln(1, 0, -2))


def test_tangency_discriminant_pencil_family():
    # family a x^2 + a y^2 + b xy - a z^2 with a = 1, b = 1, line x = 2 z:
    # the discriminant value is (b*2)^2 - 4*4 + 4 = 4b^2 - 12, nonzero for b = 1
    conic = Conic(QQ, (1, 1, -1, 1, 0, 0))
    assert not tangent(conic, ln(1, 0, -2))


def test_tangency_matches_closed_form_over_pencil_sweep():
    # tangency of a x^2 + a y^2 + b xy - a z^2 against x = alpha z happens
    # exactly when (b alpha)^2 - 4 a^2 alpha^2 + 4 a^2 vanishes
    for a in range(1, 4):
        for b in range(0, 4):
            conic = Conic(QQ, (a, a, -a, b, 0, 0))
            for alpha in range(1, 4):
                formula_zero = (b * alpha) ** 2 - 4 * a * a * alpha * alpha \
                    + 4 * a * a == 0
                assert tangent(conic, ln(1, 0, -alpha)) == formula_zero


def test_secant_line_is_not_tangent():
    circle = Conic(QQ, (1, 1, -1, 0, 0, 0))
    secant = line_through(pt(1, 0, 1), pt(0, 1, 1))
    assert not tangent(circle, secant)


def test_line_inside_conic_rejected():
    pair = conic_from_line_pair(ln(0, 0, 1), ln(1, 0, 0))
    with pytest.raises(InputError):
        tangent(pair, ln(0, 0, 1))


def test_conic_line_second_point():
    circle = Conic(QQ, (1, 1, -1, 0, 0, 0))
    chord = line_through(pt(1, 0, 1), pt(0, 1, 1))
    other = conic_line_second_point(circle, chord, pt(1, 0, 1))
    assert other == pt(0, 1, 1)
    tangent_line = ln(1, 0, -1)  # touches at (1, 0, 1)
    assert conic_line_second_point(circle, tangent_line, pt(1, 0, 1)) is None


def test_conic_through_five_points():
    pts = _points_on_standard_conic([(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)])
    conic = conic_through(pts)
    assert conic is not None
    assert all(conic.contains(q) for q in pts)
    assert not conic.is_degenerate()


# --- samplers ----------------------------------------------------------------

def test_sample_type1_single_point():
    cfg = sample_generic(1, FP, 7)
    assert len(cfg.points) == 1 and not cfg.lines and not cfg.conics


def test_sample_type4_four_collinear_over_qq():
    cfg = sample_generic(4, QQ, 1)
    assert len(cfg.points) == 4
    base = line_through(cfg.points[0], cfg.points[1])
    assert all(incident(q, base) for q in cfg.points)


def test_sample_type24_on_nondegenerate_conic():
    cfg = sample_generic(24, FP, 3)
    assert on_common_conic(cfg.points)
    conic = conic_through(list(cfg.points[:5]))
    assert conic is not None and not conic.is_degenerate()
    assert all(conic.contains(q) for q in cfg.points)


def test_sampler_exhaustion_over_tiny_field():
    from quintics.errors import SamplingError

    # a projective line over GF(5) has six points; ten distinct ones cannot exist
    with pytest.raises(SamplingError):
        sample_generic(10, PrimeField(5), 0)


def test_on_common_conic_requires_six_distinct_points():
    pts5 = _points_on_standard_conic([(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)])
    with pytest.raises(InputError):
        on_common_conic(pts5)
    with pytest.raises(InputError):
        on_common_conic(pts5 + [pts5[0], pts5[1]])


def test_incident_field_mismatch():
    from quintics.errors import FieldMismatchError

    with pytest.raises(FieldMismatchError):
        incident(pt(1, 0, 0), ProjLine(FP, (0, 0, 1)))


def test_intersect_ambient_mismatch():
    from quintics.exactalg import SubspaceBasis, intersect as isect

    a = SubspaceBasis(QQ, 3, ((1, 0, 0),))
    b = SubspaceBasis(QQ, 4, ((1, 0, 0, 0),))
    with pytest.raises(InputError):
        isect(a, b)


def test_sampler_determinism():
    a = sample_generic(19, FP, 123)
    b = sample_generic(19, FP, 123)
    assert a == b
    c = sample_generic(19, FP, 124)
    assert a != c
    d = sample_generic(38, QQ, 11)
    e = sample_generic(38, QQ, 11)
    assert d == e


def test_predicates_are_projectively_invariant():
    for seed in range(3):
        m = random_projective_transform(QQ, seed)
        trio = [pt(1, 0, 1), pt(0, 1, 1), pt(1, 1, 2)]  # collinear
        image = [apply_transform_to_point(m, q) for q in trio]
        assert collinear(*image)
        conic_pts = _points_on_standard_conic(
            [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, 3)])
        image6 = [apply_transform_to_point(m, q) for q in conic_pts]
        assert on_common_conic(image6)


# --- metric ------------------------------------------------------------------

def test_hausdorff_identical_sets():
    k = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))]
    assert hausdorff(k, k).value == 0


def test_hausdorff_sums_both_deviations():
    # both directional maxima contribute: the distance is their SUM
    assert hausdorff([(0,)], [(1,)]).value == 2


def test_hausdorff_one_sided_example():
    assert hausdorff([(0,), (1,)], [(0,)]).value == 1


def test_hausdorff_rejects_empty_and_offchart():
    with pytest.raises(InputError):
        hausdorff([], [(0,)])
    with pytest.raises(InputError):
        hausdorff([ProjPoint(QQ, (1, 0, 0))], [(0, 0)])


coord = st.integers(min_value=-20, max_value=20).map(Fraction)
point2 = st.tuples(coord, coord)
finite_set = st.lists(point2, min_size=1, max_size=5)


@settings(max_examples=150, deadline=None)
@given(finite_set, finite_set)
def test_hausdorff_symmetry(k, l):
    assert hausdorff(k, l).value == hausdorff(l, k).value


@settings(max_examples=150, deadline=None)
@given(finite_set, finite_set, finite_set)
def test_hausdorff_triangle_inequality(k, l, m):
    assert hausdorff(k, m).value <= hausdorff(k, l).value + hausdorff(l, m).value


@settings(max_examples=100, deadline=None)
@given(finite_set, finite_set)
def test_hausdorff_zero_iff_equal(k, l):
    value = hausdorff(k, l).value
    assert (value == 0) == (set(k) == set(l))

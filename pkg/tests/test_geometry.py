from fractions import Fraction as F
from itertools import product
import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from limsup_annuli.errors import InvalidParameterError
from limsup_annuli.formulas import ExponentProfile
from limsup_annuli.geometry import (
    INF,
    Annulus,
    Ball,
    QuasiAnnulus,
    RationalPoint,
    Rect,
    RectAnnulus,
    annulus_family,
    contains,
    cube_corner_certificate,
    in_rect_annulus,
    in_unit_cube,
    inscribed_cube,
    membership_scan,
    rect_annulus,
    rect_annulus_decompose,
    shape_from_json,
    shape_to_json,
    shifted_rect,
    union_volume,
)
from limsup_annuli.verify import decomposition_check, default_point, sandwich_check

small = st.fractions(min_value=0, max_value=1, max_denominator=64)


# -- primitive shapes ------------------------------------------------------

def test_ball_is_open():
    b = Ball((F(1, 2),), F(1, 4))
    assert contains(b, (F(1, 2),))
    assert not contains(b, (F(3, 4),))


def test_rect_is_closed():
    r = Rect((F(1, 2), F(1, 2)), (F(1, 4), F(1, 8)))
    assert contains(r, (F(3, 4), F(5, 8)))
    assert not r.contains_interior((F(3, 4), F(1, 2)))
    assert r.volume() == F(1, 8)


def test_annulus_strict_on_both_radii():
    a = Annulus((F(0), F(0)), F(1, 2), F(1, 4))
    assert not contains(a, (F(1, 4), F(0)))
    assert contains(a, (F(1, 3), F(0)))
    assert not contains(a, (F(1, 2), F(0)))
    with pytest.raises(InvalidParameterError):
        Annulus((0,), F(1, 4), F(1, 2))


def test_quasi_annulus_euclidean_boundary():
    qa = QuasiAnnulus((F(0), F(0)), F(5), 2)
    assert not contains(qa, (F(3), F(4)))      # on the circle
    assert contains(qa, (F(4), F(4)))
    assert not contains(qa, (F(3), F(3)))


def test_quasi_annulus_irrational_norm():
    qa = QuasiAnnulus((F(0), F(0)), F(1), F(3, 2))
    # |x|^1.5 + |y|^1.5 vs 1 at (0.7, 0.7): 2*0.7^1.5 ~ 1.171 > 1
    assert contains(qa, (F(7, 10), F(7, 10)))
    assert not contains(qa, (F(1, 2), F(1, 2)))


def test_rational_point_validation():
    with pytest.raises(InvalidParameterError):
        RationalPoint((3,), 2)
    with pytest.raises(InvalidParameterError):
        RationalPoint((1,), 0)
    assert RationalPoint((2, 4), 6).is_coprime() is False
    assert RationalPoint((1, 4), 6).is_coprime()


# -- families --------------------------------------------------------------

def test_annulus_family_exact_radii():
    a = annulus_family(RationalPoint((1, 1), 2), 1, 1)
    assert (a.r_out, a.r_in) == (F(1, 4), F(1, 8))
    assert a.flags == ()


def test_annulus_family_degenerate_and_rounded():
    a = annulus_family(RationalPoint((0,), 1), 1, 1)
    assert a.r_in == 0 and "degenerate" in a.flags
    b = annulus_family(RationalPoint((1,), 2), F(1, 2), 1)
    assert "rounded-outward" in b.flags
    assert b.r_out > F(1) / (2 * mpmath.sqrt(2) * F(1)) if False else b.r_out ** 2 * 8 >= 1


def test_shifted_rect_values():
    prof = ExponentProfile.uniform(2, 1, 1)
    p = RationalPoint((0, 0), 2)
    r = shifted_rect(p, prof, 0, 1)
    assert r.center == (F(3, 16), F(0))
    assert r.radii == (F(1, 16), F(1, 4))
    m = shifted_rect(p, prof, 0, -1)
    assert m.center == (F(-3, 16), F(0))
    second = shifted_rect(p, prof, 1, -1)
    assert second.center == (F(0), F(-3, 16))
    assert second.radii == (F(1, 4), F(1, 16))


def test_decompose_order_and_area():
    prof = ExponentProfile.uniform(2, 1, 1)
    p = RationalPoint((1, 1), 2)
    rects = rect_annulus_decompose(p, prof)
    assert len(rects) == 4
    assert [r.center for r in rects[:2]] == [(F(11, 16), F(1, 2)), (F(5, 16), F(1, 2))]
    assert union_volume(rects) == rect_annulus(p, prof).volume() == F(3, 16)
    prof3 = ExponentProfile.uniform(3, 1, 1)
    p3 = RationalPoint((1, 1, 1), 2)
    assert union_volume(rect_annulus_decompose(p3, prof3)) == F(7, 64)


@settings(max_examples=60)
@given(st.integers(1, 3), st.integers(2, 7), st.integers(0, 6))
def test_mirror_symmetry(n, q, a):
    prof = ExponentProfile.uniform(n, 1, 2)
    c = min(a, q)
    p = RationalPoint((c,) * n, q)
    for j in range(n):
        plus, minus = shifted_rect(p, prof, j, 1), shifted_rect(p, prof, j, -1)
        assert plus.radii == minus.radii
        assert plus.center[j] + minus.center[j] == 2 * p.center[j]


def brute_in_rect_annulus(x, c, outer, inner):
    d = [abs(a - b) for a, b in zip(x, c)]
    return all(di < o for di, o in zip(d, outer)) and any(di > r for di, r in zip(d, inner))


@settings(max_examples=200)
@given(st.lists(small, min_size=2, max_size=2), st.integers(1, 6))
def test_in_rect_annulus_matches_rational_brute(x, q):
    prof = ExponentProfile(2, (1, 2), (1, 1))
    for pv in product(range(q + 1), repeat=2):
        p = RationalPoint(pv, q)
        ra = rect_annulus(p, prof)
        assert in_rect_annulus(x, p, prof) == brute_in_rect_annulus(
            x, p.center, ra.outer_radii, ra.inner_radii)


@settings(max_examples=100)
@given(st.lists(small, min_size=2, max_size=2))
def test_in_rect_annulus_irrational_against_mpmath(x):
    prof = ExponentProfile(2, (F(1, 2), F(1, 3)), (F(1, 2), 1))
    p = RationalPoint((1, 2), 3)
    with mpmath.workprec(300):
        d = [abs(mpmath.mpf(a.numerator) / a.denominator - mpmath.mpf(c.numerator) / c.denominator)
             for a, c in zip(x, p.center)]
        outer = [mpmath.mpf(3) ** -(1 + mpmath.mpf(t.numerator) / t.denominator) for t in prof.tau_psi]
        cut = [mpmath.mpf(3) ** -(1 + mpmath.mpf(t.numerator) / t.denominator
                                  + mpmath.mpf(f.numerator) / f.denominator)
               for t, f in zip(prof.tau_psi, prof.tau_phi)]
        inner = [o - k for o, k in zip(outer, cut)]
        ref = all(a < o for a, o in zip(d, outer)) and any(a > r for a, r in zip(d, inner))
    assert in_rect_annulus(x, p, prof) == ref


def test_membership_scan_example():
    prof = ExponentProfile.uniform(1, 1, 1)
    got = membership_scan((F(3, 16),), prof, 2)
    assert [(pt.p, pt.q) for pt in got] == [((0,), 1), ((1,), 1), ((0,), 2)]


@settings(max_examples=80)
@given(st.lists(small, min_size=2, max_size=2), st.integers(1, 6), st.booleans())
def test_membership_scan_against_all_points(x, Q, coprime):
    prof = ExponentProfile(2, (1, F(1, 2)), (1, 2))
    expected = []
    for q in range(1, Q + 1):
        for pv in product(range(q + 1), repeat=2):
            pt = RationalPoint(pv, q)
            if coprime and not pt.is_coprime():
                continue
            if in_rect_annulus(x, pt, prof):
                expected.append(pt)
    assert membership_scan(x, prof, Q, coprime) == expected


# -- inscribed cube --------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("rho", [1, 2, 3])
def test_corrected_cube_certificate(n, rho):
    cert = cube_corner_certificate(n, rho, "corrected")
    assert cert.passed and cert.tight_as_designed()


def test_uncorrected_cube_constants_fail():
    cert = cube_corner_certificate(2, 2, "uncorrected")
    assert not cert.inf_ok and not cert.rho_ok and not cert.passed


@pytest.mark.parametrize("n, rho", [(2, 2), (3, 2), (2, F(3, 2)), (4, 5)])
def test_cube_corners_numerically(n, rho):
    """Independent float check of the corrected cube at unit radius."""
    s = n ** (-1 / float(rho))
    off, half = (1 + s) / 2, (1 - s) / 2
    for signs in product((1, -1), repeat=n):
        corner = [off + sg * half for sg in signs]
        assert max(corner) <= 1 + 1e-12
        assert sum(c ** float(rho) for c in corner) >= 1 - 1e-12


@settings(max_examples=50)
@given(st.integers(2, 3), st.fractions(min_value=F(1, 2), max_value=F(6), max_denominator=8),
       st.lists(st.fractions(min_value=0, max_value=1, max_denominator=1 << 20), min_size=3, max_size=3))
def test_inscribed_cube_points_lie_in_quasi_annulus(n, rho, u):
    p = RationalPoint((1,) * n, 2)
    r = F(1, 8)
    cube = inscribed_cube(p, r, rho)
    qa = QuasiAnnulus(p.center, r, rho)
    # map u into the closed cube; the cube is strictly inside except on shared faces
    x = tuple(c - cube.radius + 2 * cube.radius * ui for c, ui in zip(cube.center, u[:n]))
    d = [abs(a - b) for a, b in zip(x, p.center)]
    assert max(d) <= r
    if max(d) < r:
        assert contains(qa, x) or sum(float(v) ** float(rho) for v in d) >= float(r) ** float(rho) - 1e-15


def test_inscribed_cube_sign_choice():
    cube = inscribed_cube(RationalPoint((1, 0), 1), F(1, 4), 2)
    assert cube.center[0] < 1 and cube.center[1] > 0
    assert in_unit_cube(cube)
    with pytest.raises(InvalidParameterError):
        inscribed_cube(RationalPoint((1, 0), 1), F(1, 4), 2, signs=(1, 1))
    with pytest.raises(InvalidParameterError):
        inscribed_cube(RationalPoint((1,), 2), F(1, 4), INF)


# -- serialization ---------------------------------------------------------

shapes = st.one_of(
    st.builds(lambda c, r: Ball((c, c), r), small, st.fractions(0, 1)),
    st.builds(lambda c, r: Ball((c,), r, F(3, 2)), small, st.fractions(0, 1)),
    st.builds(lambda c, a, b: Rect((c, c), (a, b)), small, st.fractions(0, 1), st.fractions(0, 1)),
    st.builds(lambda c, r: Annulus((c,), r + 1, r), small, st.fractions(0, 1)),
    st.builds(lambda c, r: RectAnnulus((c, c), (r + 1, r + 2), (r, r)), small, st.fractions(0, 1)),
    st.builds(lambda c, r: QuasiAnnulus((c, c), r + 1, 2, flags=("clipped",)), small, st.fractions(0, 1)),
)


@given(shapes)
def test_json_round_trip(shape):
    text = shape_to_json(shape)
    back = shape_from_json(text)
    assert back == shape
    assert shape_to_json(back) == text


def test_json_layout():
    text = shape_to_json(Annulus((F(1, 2),), F(1, 4), F(1, 8)))
    assert text == ('{"center":["1/2"],"kind":"annulus","meta":{"flags":[]},'
                    '"norm":"inf","radii":["1/4","1/8"]}')


# -- Monte Carlo certificates (small) --------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_decomposition_small(n):
    rep = decomposition_check(ExponentProfile.uniform(n, 1, 1), default_point(n, 3), 5000, seed=1)
    assert rep.clean and rep.details["area_union"] == rep.details["area_annulus"]


def test_sandwich_small():
    prof = ExponentProfile(2, (1, 2), (2, 1))
    rep = sandwich_check(prof, default_point(2, 3), 4000, seed=2)
    assert rep.clean


def test_monte_carlo_rejects_irrational_radii():
    with pytest.raises(InvalidParameterError):
        decomposition_check(ExponentProfile.uniform(2, F(1, 2), 1), default_point(2, 2), 10, 0)

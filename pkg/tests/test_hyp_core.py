import pytest
from hypothesis import assume, given, settings, strategies as st
from mpmath import mp

from src.FluteType.exceptions import DomainError
from src.FluteType.modules.hyp_core import (
    BoundaryPoint,
    Geodesic,
    MobiusMap,
    cayley_chord,
    cross_ratio,
    disjoint_geodesic_distance,
    shear_of_edge,
)
from tests.conftest import close

INF = BoundaryPoint.infinity()

# four increasing reals, pairwise at least 1e-3 apart
ordered_quads = st.lists(
    st.integers(min_value=-100_000, max_value=100_000), min_size=4, max_size=4, unique=True,
).map(lambda xs: [mp.mpf(x) / 1000 for x in sorted(xs)])


@pytest.mark.parametrize("points, expected", [
    ((-3, -1, 1, 3), mp.mpf(1) / 3),
    ((-1, 0, 1, INF), 1),
    ((-1, 0.5, 1, INF), 3),
])
def test_cross_ratio_examples(points, expected):
    assert close(cross_ratio(*points), expected)


def test_cross_ratio_coincident_points():
    with pytest.raises(DomainError):
        cross_ratio(0, 0, 1, 2)
    with pytest.raises(DomainError):
        cross_ratio(INF, 1, 2, "inf")


@given(ordered_quads)
def test_cross_ratio_reciprocal_on_reversal(q):
    a, b, c, d = q
    assert close(cross_ratio(a, b, c, d) * cross_ratio(a, d, c, b), 1)


@given(ordered_quads, st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_cross_ratio_mobius_invariant(q, a, b, c, d):
    assume(a * d - b * c > 0)
    f = MobiusMap(a, b, c, d)
    images = [f(x) for x in q]
    assume(len(set(images)) == 4)
    assert close(cross_ratio(*images), cross_ratio(*q), rel=1e-25)


@pytest.mark.parametrize("g1, g2, expected", [
    ((-1, 1), (-3, 3), mp.log(3)),
    ((-1, 1), (-mp.e, mp.e), 1),
])
def test_disjoint_distance_examples(g1, g2, expected):
    assert close(disjoint_geodesic_distance(Geodesic(*g1), Geodesic(*g2)), expected)


@given(ordered_quads)
def test_disjoint_distance_matches_cosh_formula(q):
    # nested pair (b, c) inside (a, d)
    a, b, c, d = q
    rho = disjoint_geodesic_distance(Geodesic(b, c), Geodesic(a, d))
    cosh_rho = abs(1 + 2 * (b - d) * (c - a) / ((b - c) * (a - d)))
    assert close(mp.cosh(rho), cosh_rho, rel=1e-20)


def test_intersecting_geodesics_rejected():
    with pytest.raises(DomainError):
        disjoint_geodesic_distance(Geodesic(-1, 1), Geodesic(0, 2))


@pytest.mark.parametrize("points, expected", [
    ((-3, -1, 1, 3), mp.log(mp.mpf(1) / 3)),
    ((-1, 0, 1, INF), 0),
])
def test_shear_examples(points, expected):
    assert close(shear_of_edge(*points), expected, abs_tol=mp.mpf(10) ** -35)


def test_shear_rejects_crossed_quadrilateral():
    with pytest.raises(DomainError):
        shear_of_edge(-1, 0, 1, 0.5)


@settings(max_examples=1000)
@given(ordered_quads)
def test_shear_exponential_is_sinh_squared_of_half_distance(q):
    a, b, c, d = q
    rho = disjoint_geodesic_distance(Geodesic(b, c), Geodesic(d, a))
    assert close(mp.exp(shear_of_edge(a, b, c, d)), mp.sinh(rho / 2) ** 2, rel=1e-30)


def test_mobius_from_three_points():
    f = MobiusMap.from_three_points(-2, 5, 7)
    assert f(-2).value == 0
    assert close(f(5).value, 1)
    assert f(7).is_infinite
    assert f.compose(f.inverse())(3).value == 3


def test_mobius_rejects_orientation_reversal():
    with pytest.raises(DomainError):
        MobiusMap(0, 1, 1, 0)


def test_geodesic_endpoints_must_differ():
    with pytest.raises(DomainError):
        Geodesic(INF, None)
    assert Geodesic(0, 1).shares_endpoint_with(Geodesic(1, INF)) == 1


@pytest.mark.parametrize("x, y, expected", [
    (0, INF, 2),
    (1, -1, 2),
    (0, 1, mp.sqrt(2)),
    (3, 3, 0),
])
def test_cayley_chord(x, y, expected):
    assert close(cayley_chord(x, y), expected, abs_tol=mp.mpf(10) ** -35)

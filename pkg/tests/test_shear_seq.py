import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from src.data_schema.surface import FluteDescriptor
from src.FluteType.exceptions import DomainError
from src.FluteType.modules.shear_seq import (
    asinh_inv_sinh,
    eta_length,
    even_shear,
    log_coth,
    log_sinh,
    odd_shear,
    shear_sequence,
)
from src.tools.general_tools import ulp
from tests.conftest import close

SQUARE_CUFF = 2 * mp.asinh(1)

cuff_pairs = st.tuples(
    st.floats(min_value=2, max_value=200, allow_nan=False),
    st.floats(min_value=0, max_value=200, allow_nan=False),
).map(lambda t: (mp.mpf(t[0]), mp.mpf(t[0]) + mp.mpf(t[1])))

nondecreasing_lengths = st.lists(
    st.floats(min_value=0, max_value=5, allow_nan=False), min_size=3, max_size=12,
).map(lambda steps: [mp.mpf("0.1") + mp.fsum(steps[: i + 1]) for i in range(len(steps))])


def test_eta_of_square_cuffs():
    assert close(eta_length(SQUARE_CUFF, SQUARE_CUFF), SQUARE_CUFF)


def test_eta_of_length_four():
    assert close(eta_length(4, 4), 2 * mp.asinh(1 / mp.sinh(2)))


def test_eta_of_long_cuffs_is_exponentially_small():
    expected = 2 * mp.exp(-20) + 2 * mp.exp(-30)
    assert close(eta_length(40, 60), expected, rel=1e-8)


def test_eta_of_huge_cuffs_does_not_underflow():
    assert eta_length(mp.exp(20), mp.exp(20)) > 0


@pytest.mark.parametrize("la, lb", [(0, 1), (1, -2)])
def test_eta_rejects_nonpositive(la, lb):
    with pytest.raises(DomainError):
        eta_length(la, lb)


def test_even_shear_examples():
    assert abs(even_shear(SQUARE_CUFF)) < mp.mpf(10) ** -30
    assert close(even_shear(2 * mp.asinh(mp.e)), 2)


def test_even_shear_small_eta():
    eta = mp.mpf("1e-6")
    with mp.workprec(256):
        expected = mp.log(mp.sinh(eta / 2) ** 2)
    assert close(even_shear(eta), expected, rel=1e-25)


def test_odd_shear_examples():
    # each term is asinh(1/(2 sqrt 2)) = log sqrt 2
    assert close(odd_shear(SQUARE_CUFF, SQUARE_CUFF, 0), mp.log(2))
    assert close(odd_shear("0.1", "0.1", 5), 2 * mp.asinh(1 / mp.sinh(mp.mpf("0.1"))) + 5)


def test_odd_shear_huge_offset_is_additive():
    offset = -mp.mpf(10) ** 30 / 2
    base = odd_shear(1, 1, 0)
    assert float(odd_shear(1, 1, offset) - offset) == pytest.approx(float(base), rel=1e-6)


@pytest.mark.parametrize("x", ["1e-8", "0.3", "0.5", "1", "40"])
def test_log_sinh_against_direct_formula(x):
    x = mp.mpf(x)
    with mp.workprec(256):
        expected = mp.log(mp.sinh(x))
    assert close(log_sinh(x), expected, rel=1e-30)


def test_asinh_identity_on_log_grid():
    # 10^4 points, log-spaced over [1e-4, 50]
    lo, hi = mp.log(mp.mpf("1e-4")), mp.log(50)
    for j in range(10_000):
        x = mp.exp(lo + (hi - lo) * j / 9999)
        with mp.workprec(mp.prec + 64):
            oracle = mp.asinh(1 / mp.sinh(x))
        assert abs(asinh_inv_sinh(x) - oracle) <= 2 * ulp(oracle)


def test_inequalities_on_grid():
    for j in range(1, 1001):
        x = mp.mpf(j) / 20
        coth_half = mp.exp(asinh_inv_sinh(x))
        assert coth_half > 2 / x
        if x <= mp.mpf("4.8"):
            assert 1 / coth_half > x / 5
            assert 1 / (coth_half * mp.sinh(x / 2)) > 1 / (1 + x)


@given(cuff_pairs)
def test_eta_bracket(pair):
    la, lb = pair
    eta = eta_length(la, lb)
    assert 2 * mp.exp(-lb / 2) <= eta <= 5 * mp.exp(-la / 2)


@given(nondecreasing_lengths)
def test_telescoping_lower_bound(lengths):
    s = shear_sequence(FluteDescriptor.from_lengths(lengths))
    for n in range(2, len(lengths)):
        lhs = s.at(2 * n) + s.at(2 * n - 1) - s.offsets[n - 1]
        rhs = mp.log(s.eta.at(n)) - mp.log(s.eta.at(n - 1))
        assert lhs > rhs


def test_shear_sequence_layout():
    s = shear_sequence(FluteDescriptor.from_lengths([2, 2, 4, 4], [1, 2, 3, 4], True))
    assert len(s) == 6
    assert s.at(1) == 0
    assert s.offsets == (1, -1, 2, -2)
    assert s.provenance == ("normalization", "even", "odd-half-even-k", "even", "odd-half-odd-k", "even")


def test_zero_twist_provenance():
    s = shear_sequence(FluteDescriptor.from_lengths([1, 2, 3]))
    assert s.provenance == ("normalization", "even", "odd-zero-twist", "even")
    assert all(a == 0 for a in s.offsets)


def test_adding_a_late_half_twist_changes_one_shear():
    lengths = [1, 2, 3, 4, 5]
    before = shear_sequence(FluteDescriptor.from_lengths(lengths, [2], True))
    after = shear_sequence(FluteDescriptor.from_lengths(lengths, [2, 4], True))
    changed = [i for i in range(1, len(before) + 1) if before.at(i) != after.at(i)]
    assert changed == [7]
    assert close(after.at(7) - before.at(7), -2)


def test_needs_two_cuffs():
    with pytest.raises(DomainError):
        shear_sequence(FluteDescriptor.from_lengths([1]))


def test_log_coth_rejects_zero():
    with pytest.raises(DomainError):
        log_coth(0)

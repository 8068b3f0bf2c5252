"""Kernel tests: soundness of enclosures against independent oracles."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from counterlab import numkernel as nk
from counterlab.numkernel import Order


# ---------------------------------------------------------------------------
# independent oracles


def oracle_exp_bracket(x, terms=80):
    """Plain Taylor bracket around e**x for |x| <= 2, no argument reduction.

    Tail after N terms is below 2*|x|**(N+1)/(N+1)! once terms decay.
    """
    x = F(x)
    assert abs(x) <= 2
    s = F(1)
    t = F(1)
    for j in range(1, terms + 1):
        t *= x / j
        s += t
    tail = 2 * abs(t)
    return s - tail, s + tail


def oracle_cbrt_bisect(y, steps=200):
    """Bisection on t**3 = y for y >= 0."""
    y = F(y)
    lo, hi = F(0), max(F(1), y)
    for _ in range(steps):
        m = (lo + hi) / 2
        if m ** 3 <= y:
            lo = m
        else:
            hi = m
    return lo, hi


def oracle_atan_bracket(x, terms=400):
    """Alternating Gregory series bracket, |x| < 1."""
    x = F(x)
    assert abs(x) < 1
    s = F(0)
    sign = 1
    power = x
    last = None
    for k in range(terms):
        term = power / (2 * k + 1)
        s += sign * term
        power *= x * x
        sign = -sign
        last = abs(term)
    return s - last, s + last


def test_exp_of_one_against_taylor_oracle():
    lo, hi = oracle_exp_bracket(1)
    e = nk.exp_of_rat(1, 128)
    assert e.lower() <= hi and lo <= e.upper()
    # the kernel enclosure must contain the oracle bracket's center
    assert e.contains((lo + hi) / 2) or (lo <= e.mid_fraction() <= hi)
    assert e.rad_fraction() <= F(1, 2 ** 100)


def test_exp_zero_is_one_exact():
    e = nk.exp_of_rat(0, 60)
    assert e.is_exact() and e.mid_fraction() == 1
    assert e.rad_fraction() <= F(1, 2 ** 50)


def test_exp_radius_bound_at_stated_precision():
    # radius <= 2**(-p+2) * e**upper(x) for exact inputs
    for x, p in [(0, 60), (1, 60), (F(1, 3), 90), (-2, 128), (F(7, 5), 200)]:
        e = nk.exp_of_rat(x, p)
        upper_e = oracle_exp_bracket(min(F(x), 2))[1] if x <= 2 else None
        bound = F(4, 2 ** p) * (upper_e if upper_e else e.upper())
        assert e.rad_fraction() <= bound


def test_exp_monotone_containment_of_wide_interval():
    x = nk.Enclosure.from_bounds(F(2, 5), F(3, 5), 96)
    e = nk.enclose_exp(x)
    lo04 = oracle_exp_bracket(F(2, 5))[0]
    hi06 = oracle_exp_bracket(F(3, 5))[1]
    assert e.lower() <= lo04 and hi06 <= e.upper()


def test_cbrt_exact_cube():
    c = nk.cbrt_of_rat(8, 60)
    assert c.contains(2)
    assert c.rad_fraction() <= F(1, 2 ** 50)


def test_cbrt_odd_symmetry():
    c = nk.cbrt_of_rat(-1, 80)
    assert c.contains(-1)
    a = nk.enclose_cbrt(nk.Enclosure.from_bounds(F(2), F(3), 80))
    b = nk.enclose_cbrt(nk.Enclosure.from_bounds(F(-3), F(-2), 80))
    assert a.lower() == -b.upper() and a.upper() == -b.lower()


def test_cbrt_of_two_against_bisection_oracle():
    lo, hi = oracle_cbrt_bisect(2)
    c = nk.cbrt_of_rat(2, 128)
    assert c.lower() <= hi and lo <= c.upper()
    assert hi - lo < F(1, 2 ** 150)  # oracle is tight enough to pin the value
    assert c.contains(lo) or c.contains(hi) or (lo <= c.lower() <= hi)


def test_atan_zero():
    a = nk.atan_of_rat(0, 64)
    assert a.is_exact() and a.mid_fraction() == 0


def test_atan_one_is_quarter_pi():
    lo, hi = oracle_atan_bracket(F(9, 10))  # sanity for the oracle itself
    assert lo < hi
    a = nk.atan_of_rat(1, 128)
    pi = nk.enclose_pi(128)
    quarter = pi.scale(F(1, 4))
    # enclosures of equal values must overlap
    assert nk.compare(a, quarter) is Order.OVERLAP
    assert a.rad_fraction() < F(1, 2 ** 100)
    assert abs(a.mid_fraction() - F("0.785398163397448309615660845819875721")) < F(1, 10 ** 30)


def test_atan_large_argument_near_half_pi():
    a = nk.atan_of_rat(10 ** 6, 96)
    assert a.lower() > F("1.57")
    assert a.upper() < F("1.5708")
    # oracle: atan(1e6) = pi/2 - atan(1e-6), and atan(y) in (y - y^3/3, y)
    pi = nk.enclose_pi(160)
    y = F(1, 10 ** 6)
    hi = pi.upper() / 2 - (y - y ** 3 / 3)
    lo = pi.lower() / 2 - y
    assert a.upper() <= hi + F(1, 2 ** 80) and lo - F(1, 2 ** 80) <= a.lower()


def test_compare_trivia():
    mk = nk.Enclosure.from_bounds
    assert nk.compare(mk(F(9, 10), F(11, 10)), mk(F(19, 10), F(21, 10))) is Order.CERTAINLY_LESS
    assert nk.compare(mk(F(1, 2), F(3, 2)), mk(F(7, 10), F(17, 10))) is Order.OVERLAP


def test_compare_exp_one_exceeds_27_tenths():
    e = nk.exp_of_rat(1, 20)
    assert nk.compare(e, nk.exact(F(27, 10), 20)) is Order.CERTAINLY_GREATER


def test_invalid_precision_rejected():
    with pytest.raises(ValueError):
        nk.enclose_exp(nk.exact(1), 0)


# ---------------------------------------------------------------------------
# property sweeps


def test_soundness_sweep_high_precision_inside_low():
    rng = random.Random(7)
    checked = 0
    for _ in range(10_000):
        num = rng.randint(-40, 40)
        den = rng.randint(1, 40)
        x = F(num, den)
        p = rng.choice([24, 48, 96])
        op = rng.choice(["exp", "cbrt", "atan"])
        if op == "exp":
            lo_e, hi_e = nk.exp_of_rat(x, p), nk.exp_of_rat(x, 2 * p + 30)
        elif op == "cbrt":
            lo_e, hi_e = nk.cbrt_of_rat(x, p), nk.cbrt_of_rat(x, 2 * p + 30)
        else:
            lo_e, hi_e = nk.atan_of_rat(x, p), nk.atan_of_rat(x, 2 * p + 30)
        assert lo_e.lower() <= hi_e.lower() and hi_e.upper() <= lo_e.upper()
        checked += 1
    assert checked == 10_000


def test_monotone_refinement_of_radius():
    rng = random.Random(11)
    for _ in range(300):
        x = F(rng.randint(-30, 30), rng.randint(1, 30))
        p = rng.choice([32, 64, 128])
        for fn in (nk.exp_of_rat, nk.cbrt_of_rat, nk.atan_of_rat):
            assert fn(x, 2 * p).rad_fraction() <= fn(x, p).rad_fraction()


@given(
    a=st.fractions(min_value=-1000, max_value=1000, max_denominator=997),
    b=st.fractions(min_value=-1000, max_value=1000, max_denominator=997),
    c=st.fractions(min_value=-1000, max_value=1000, max_denominator=997),
)
@settings(max_examples=200, deadline=None)
def test_rat_field_axioms(a, b, c):
    assert a + (-a) == 0
    if a != 0:
        assert a * (1 / a) == 1
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(
    lo1=st.fractions(min_value=-50, max_value=50, max_denominator=64),
    w1=st.fractions(min_value=0, max_value=3, max_denominator=64),
    lo2=st.fractions(min_value=-50, max_value=50, max_denominator=64),
    w2=st.fractions(min_value=0, max_value=3, max_denominator=64),
    pick1=st.fractions(min_value=0, max_value=1, max_denominator=97),
    pick2=st.fractions(min_value=0, max_value=1, max_denominator=97),
)
@settings(max_examples=200, deadline=None)
def test_enclosure_arithmetic_soundness(lo1, w1, lo2, w2, pick1, pick2):
    """Whatever points the operands contain, results contain their image."""
    x = nk.Enclosure.from_bounds(lo1, lo1 + w1, 64)
    y = nk.Enclosure.from_bounds(lo2, lo2 + w2, 64)
    px = lo1 + pick1 * w1
    py = lo2 + pick2 * w2
    assert (x + y).contains(px + py)
    assert (x - y).contains(px - py)
    assert (x * y).contains(px * py)
    assert x.pow_int(3).contains(px ** 3)
    assert x.pow_int(4).contains(px ** 4)
    if y.excludes_zero():
        assert (x / y).contains(px / py)


def test_iroot_exactness():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randint(0, 10 ** 24)
        k = rng.randint(1, 9)
        r = nk.iroot(n, k)
        assert r ** k <= n < (r + 1) ** k


def test_sin_cos_pythagoras_and_parity():
    pi = nk.enclose_pi(128)
    for num, den in [(1, 4), (1, 3), (-2, 5), (3, 7)]:
        ang = pi.scale(F(num, den))
        s, c = nk.enclose_sin_cos(ang)
        one = s * s + c * c
        assert one.contains(1)
        s2, _ = nk.enclose_sin_cos(-ang)
        assert nk.compare(s, -s2) is Order.OVERLAP

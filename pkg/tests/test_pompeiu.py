"""Pompeiu construction tests: monotonicity, dense zeros, nonconstancy."""

import random
from fractions import Fraction as F

import pytest

from counterlab import expalg as ea
from counterlab import numkernel as nk
from counterlab import pompeiu as pm
from counterlab.errors import PrecisionError
from counterlab.numkernel import Order


@pytest.fixture(scope="module")
def builder():
    return pm.PompeiuBuilder()


# ---------------------------------------------------------------------------
# the inner map g


def test_g_monotone_pair(builder):
    a = builder.eval_g(F(1, 4), 96)
    b = builder.eval_g(F(3, 4), 96)
    assert nk.compare(a, b) is Order.CERTAINLY_LESS


def test_g_bounded_by_one(builder):
    v = builder.eval_g(builder.q(1), 96)
    assert -1 <= v.lower() and v.upper() <= 1


def test_g_spread_lower_bound(builder):
    # g(1) - g(0) >= (cbrt(1-q1) + cbrt(q1))/2 - 2^-63, certified
    g0 = builder.eval_g(0, 96)
    g1 = builder.eval_g(1, 96)
    q1 = builder.q(1)
    bound = (
        nk.cbrt_of_rat(1 - q1, 96).lower() + nk.cbrt_of_rat(q1, 96).lower()
    ) / 2 - F(1, 2 ** 63)
    assert (g1 - g0).lower() >= bound > 0


def test_g_rejects_outside_domain(builder):
    with pytest.raises(ValueError):
        builder.eval_g(F(3, 2), 64)


def test_g_strictly_increasing_random(builder):
    rng = random.Random(1)
    for _ in range(30):
        y1 = F(rng.randint(0, 2 ** 20), 2 ** 20)
        y2 = F(rng.randint(0, 2 ** 20), 2 ** 20)
        if y1 == y2:
            continue
        y1, y2 = min(y1, y2), max(y1, y2)
        assert (
            nk.compare(builder.eval_g(y1, 96), builder.eval_g(y2, 96))
            is Order.CERTAINLY_LESS
        )


# ---------------------------------------------------------------------------
# f


def test_f_grid_strictly_increasing(builder):
    vals = [builder.eval_f(x, 48) for x in (-2, -1, 0, 1, 2)]
    for a, b in zip(vals, vals[1:]):
        assert nk.compare(a, b) is Order.CERTAINLY_LESS


def test_f_inversion_roundtrip(builder):
    for x in (F(0), F(3, 7), F(-12, 5)):
        ft = builder.eval_f(x, 64)
        g_back = builder.eval_g_enclosure(ft, 80)
        w = builder.chart(x, 80)
        assert abs(g_back.mid_fraction() - w.mid_fraction()) <= F(1, 2 ** 40)


def test_f_range_within_unit_interval(builder):
    for x in (-(10 ** 6), 10 ** 6):
        v = builder.eval_f(x, 48)
        assert 0 < v.lower() and v.upper() < 1


def test_f_monotone_random_pairs(builder):
    rng = random.Random(2)
    for _ in range(40):
        x = F(rng.randint(-10 ** 4, 10 ** 4), rng.randint(1, 1000))
        y = x + F(rng.randint(1, 10 ** 4), rng.randint(1, 1000))
        p = builder.certify_increasing(x, y, precision_cap=512)
        assert p <= 512


# ---------------------------------------------------------------------------
# dense zeros


def test_dense_zero_certificates_exact(builder):
    for n in range(1, 101):
        point = builder.dense_zero_point(n)
        assert builder.derivative_certificate(point) == pm.EXACT_ZERO


def test_dense_zero_points_distinct(builder):
    xs = [builder.dense_zero_x(n, 96) for n in range(1, 51)]
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            assert nk.compare(xs[i], xs[j]) is not Order.OVERLAP


def test_dense_zero_really_preimage(builder):
    # f(x_n) must come back to q_n
    for n in (1, 2, 5):
        x = builder.dense_zero_x(n, 96)
        ft = builder.eval_f_enclosure(x, 64)
        q = builder.q(n)
        assert ft.lower() - F(1, 2 ** 40) <= q <= ft.upper() + F(1, 2 ** 40)


def test_density_probe_on_grid(builder):
    # every width-1/10 interval on a coarse grid of (-5,5) holds a dense zero
    rng = random.Random(3)
    for _ in range(12):
        a = F(rng.randint(-50, 49), 10)
        n, q = builder.dense_zero_in(a, a + F(1, 10))
        x = builder.dense_zero_x(n, 96)
        assert a < x.lower() and x.upper() < a + F(1, 10)
        assert builder.q(n) == q


# ---------------------------------------------------------------------------
# derivative certificates


def test_certificate_one_sided_at_rational(builder):
    cert = builder.derivative_certificate(F(1, 3), 96)
    assert cert not in (pm.EXACT_ZERO, pm.UNRESOLVED)
    assert cert.upper() > 0
    assert cert.lower() <= 0  # one-sided: cannot exclude zero here


def test_certificate_two_sided_at_quadratic(builder):
    qp = pm.QuadraticPoint(F(1, 2), F(1, 1024), builder)
    cert = builder.derivative_certificate(qp, 96)
    assert cert not in (pm.EXACT_ZERO, pm.UNRESOLVED)
    assert cert.excludes_zero() and cert.lower() > 0


def test_fd_consistency_at_rational(builder):
    rng = random.Random(4)
    h = F(1, 2 ** 24)
    c_slack = F(2 ** 20)
    for _ in range(5):
        x = F(rng.randint(-3, 3), 7)  # never a q_n preimage
        cert = builder.derivative_certificate(x, 96)
        f1 = builder.eval_f(x + h, 80)
        f2 = builder.eval_f(x - h, 80)
        fd = (f1 - f2).scale(F(1, 2 * h))
        assert fd.upper() <= cert.upper() + c_slack * h
        assert fd.lower() >= -c_slack * h


def test_fd_decay_at_dense_zeros(builder):
    for n in range(1, 11):
        x = builder.dense_zero_x(n, 160)
        mids = []
        for h in (F(1, 2 ** 10), F(1, 2 ** 14), F(1, 2 ** 18)):
            lo = builder.eval_f(x.lower() - h, 80)
            hi = builder.eval_f(x.upper() + h, 80)
            fd = (hi - lo).scale(F(1, 2 * h))
            mids.append(fd.mid_fraction())
        assert mids[0] >= mids[1] >= mids[2]


# ---------------------------------------------------------------------------
# nonconstancy witnesses


def test_nonconstancy_exp(builder):
    wit = builder.nonconstancy_witness((0, 1), ea.ExpSum({1: 1}), 96)
    assert wit.fprime.excludes_zero()
    assert wit.phi_factor.excludes_zero()
    assert wit.chain_rule_product().excludes_zero()
    assert wit.two_point[2] in (Order.CERTAINLY_LESS, Order.CERTAINLY_GREATER)


def test_nonconstancy_phi1_everywhere(builder):
    phi = ea.make_phi_alpha(1)
    for interval in ((-3, -2), (0, F(1, 2)), (5, 7)):
        wit = builder.nonconstancy_witness(interval, phi, 96)
        assert wit.chain_rule_product().excludes_zero()
        a, b = F(interval[0]), F(interval[1])
        assert a < wit.x0.lower() and wit.x0.upper() < b


def test_nonconstancy_combo(builder):
    phi = ea.make_phi_alpha(2) - ea.make_phi_alpha(1).scale(3)
    wit = builder.nonconstancy_witness((1, 2), phi, 96)
    assert wit.chain_rule_product().excludes_zero()


def test_nonconstancy_rejects_zero(builder):
    with pytest.raises(ValueError):
        builder.nonconstancy_witness((0, 1), ea.EXPSUM_ZERO, 64)


# ---------------------------------------------------------------------------
# Stone-Weierstrass conditions


def test_sw_positive_everywhere(builder):
    gens = pm.FreeGeneratorSet(2)
    verdict, payload = builder.stone_weierstrass_check(gens, F(-7, 3), 4, 96)
    assert verdict == "conditions-hold"
    assert payload["F(x0)"].lower() > 0


def test_sw_zero_one_certified(builder):
    gens = pm.FreeGeneratorSet(1)
    verdict, _ = builder.stone_weierstrass_check(gens, 0, 1, 96)
    assert verdict == "conditions-hold"


def test_sw_equal_points_rejected(builder):
    gens = pm.FreeGeneratorSet(1)
    with pytest.raises(ValueError):
        builder.stone_weierstrass_check(gens, 1, 1, 64)


def test_generators_distinct():
    gens = pm.FreeGeneratorSet(4)
    vals = [gens.value(i, 96) for i in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            assert nk.compare(vals[i], vals[j]) is not Order.OVERLAP

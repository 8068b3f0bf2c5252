"""Tests for the separately-continuous family and its blow-up certificates."""

import random
from fractions import Fraction as F

import pytest

from counterlab import numkernel as nk
from counterlab import sepcont as sc
from counterlab.expalg import PolynomialNC


def test_eval_sep_diagonal_value():
    f = sc.SepFunction(2)
    assert sc.eval_sep(f, [1, 1]) == F(1, 2)  # 1/(n t^n) with n=2, t=1


def test_eval_sep_zero_coordinate():
    f = sc.SepFunction(3)
    assert sc.eval_sep(f, [5, 0, 7]) == 0


def test_eval_sep_origin_case_split():
    f = sc.SepFunction(4)
    assert sc.eval_sep(f, [0, 0, 0, 0]) == 0


def test_eval_sep_homogeneity():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(2, 5)
        f = sc.SepFunction(n)
        pt = [F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        if all(x == 0 for x in pt):
            continue
        lam = F(rng.randint(1, 5), rng.randint(1, 3))
        scaled = [lam * x for x in pt]
        assert sc.eval_sep(f, scaled) == sc.eval_sep(f, pt) / lam ** n


def test_eval_sep_diagonal_identity_random():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(2, 5)
        f = sc.SepFunction(n)
        t = F(rng.choice([-7, -3, -1, 1, 2, 9]), rng.randint(1, 6))
        assert sc.eval_sep(f, [t] * n) == 1 / (n * t ** n)


def test_dimension_validation():
    with pytest.raises(ValueError):
        sc.SepFunction(1)


# ---------------------------------------------------------------------------
# normal forms


def test_make_phi_c_terms():
    g = sc.make_phi_c(1)
    assert g.terms == {((F(1), 1),): F(1), ((F(1), -1),): F(-1)}
    with pytest.raises(ValueError):
        sc.make_phi_c(0)


def test_phi_c_zero_at_origin():
    g = sc.make_phi_c(F(3, 2))
    v = sc.eval_form(g, 0)
    assert v.contains(0)


def test_phi_c_even_in_x():
    g = sc.make_phi_c(F(2, 3))
    a = sc.eval_form(g, F(5, 4))
    b = sc.eval_form(g, F(-5, 4))
    assert a.lower() == b.lower() and a.upper() == b.upper()


def test_expand_poly_identity():
    p = PolynomialNC(1, {(1,): 1})
    assert sc.expand_poly(p, [1]) == sc.make_phi_c(1)


def test_expand_poly_square_hand_expansion():
    p = PolynomialNC(1, {(2,): 1})
    out = sc.expand_poly(p, [1])
    assert out.terms == {
        ((F(1), 2),): F(1),
        (): F(-2),
        ((F(1), -2),): F(1),
    }
    # cross-check numerically at x = 1, 2
    for x in (1, 2):
        lhs = sc.eval_form(out, x)
        phi = sc.eval_form(sc.make_phi_c(1), x)
        rhs = phi * phi
        assert lhs.lower() <= rhs.upper() and rhs.lower() <= lhs.upper()


def test_expand_poly_product_multisets():
    p = PolynomialNC(2, {(1, 1): 1})
    out = sc.expand_poly(p, [1, 2])
    assert set(out.terms) == {
        ((F(1), 1), (F(2), 1)),
        ((F(1), 1), (F(2), -1)),
        ((F(1), -1), (F(2), 1)),
        ((F(1), -1), (F(2), -1)),
    }
    assert out.terms[((F(1), 1), (F(2), 1))] == 1
    assert out.terms[((F(1), 1), (F(2), -1))] == -1


def test_expand_poly_rejects_duplicate_params():
    p = PolynomialNC(2, {(1, 1): 1})
    with pytest.raises(ValueError):
        sc.expand_poly(p, [1, 1])


def test_normal_form_evaluation_homomorphism():
    rng = random.Random(3)
    for _ in range(20):
        arity = rng.randint(1, 3)
        cs = sorted(rng.sample([F(k, 4) for k in range(1, 13)], arity))
        monos = {}
        for _ in range(rng.randint(1, 3)):
            expo = tuple(rng.randint(0, 2) for _ in range(arity))
            if any(expo):
                monos[expo] = F(rng.choice([-2, -1, 1, 3]))
        if not monos:
            continue
        p = PolynomialNC(arity, monos)
        form = sc.expand_poly(p, cs)
        for x in (F(1, 2), F(1), F(2)):
            lhs = sc.eval_form(form, x, 128)
            rhs = None
            for expo, coeff in p.monomials.items():
                term = nk.exact(coeff, 128)
                for c, e in zip(cs, expo):
                    term = term * sc.eval_form(sc.make_phi_c(c), x, 128).pow_int(e)
                rhs = term if rhs is None else rhs + term
            assert lhs.lower() <= rhs.upper() and rhs.lower() <= lhs.upper()


# ---------------------------------------------------------------------------
# dominance


def test_dominance_phi_blows_up():
    assert sc.dominance_verdict(sc.make_phi_c(1)) == sc.BLOWS_UP


def test_dominance_square_blows_up_and_grows():
    p = PolynomialNC(1, {(2,): 1})
    form = sc.expand_poly(p, [1])
    assert sc.dominance_verdict(form) == sc.BLOWS_UP
    v = sc.eval_form(form, 30)
    assert v.lower() > 10 ** 20  # e^60-ish dominates


def test_dominance_empty_form_zero():
    assert sc.dominance_verdict(sc.PowerExpForm()) == sc.ZERO


def test_dominance_decaying_form_bounded():
    form = sc.PowerExpForm([(((F(1), -1),), 5)])  # 5 e^-|x|
    assert sc.dominance_verdict(form) == sc.BOUNDED


def test_dominance_implies_monotone_growth():
    rng = random.Random(4)
    for _ in range(10):
        arity = rng.randint(1, 2)
        cs = sorted(rng.sample([F(1), F(2), F(1, 2), F(3)], arity))
        monos = {}
        for _ in range(rng.randint(1, 3)):
            expo = tuple(rng.randint(0, 2) for _ in range(arity))
            if any(expo):
                monos[expo] = F(rng.choice([-2, 1, 3]))
        if not monos:
            continue
        form = sc.expand_poly(PolynomialNC(arity, monos), cs)
        if sc.dominance_verdict(form) != sc.BLOWS_UP:
            continue
        prev = None
        for x in [2 ** k for k in range(1, 11)]:
            v = sc.eval_form(form, x, 96)
            # dyadic bounds only: these values reach e**(2**30)-scale and
            # must never be materialized as plain rationals
            lo = v.lower_dy() if v.lower_dy().man >= 0 else -v.upper_dy()
            if prev is not None and x >= 8:
                assert prev < lo
            prev = lo


def test_random_nonzero_polynomials_always_blow_up():
    # the executable core of the freeness argument for this family
    rng = random.Random(5)
    for _ in range(50):
        arity = rng.randint(1, 3)
        cs = sorted(rng.sample([F(k, 6) for k in range(1, 19)], arity))
        monos = {}
        for _ in range(rng.randint(1, 4)):
            expo = tuple(rng.randint(0, 3) for _ in range(arity))
            if any(expo):
                monos[expo] = F(rng.choice([-5, -2, -1, 1, 2, 4]))
        if not monos:
            continue
        form = sc.expand_poly(PolynomialNC(arity, monos), cs)
        assert not form.is_zero()
        assert sc.dominance_verdict(form) == sc.BLOWS_UP


# ---------------------------------------------------------------------------
# diagonal blow-up witnesses


def test_blowup_witness_phi1_reaches_million():
    sep = sc.SepFunction(2)
    t, val = sc.diagonal_blowup_witness(sep, sc.make_phi_c(1), 10 ** 6)
    assert t <= F(1, 8)  # phi(1/(2 t^2)) needs t below 1/8 to clear 1e6
    assert val.lower() >= 10 ** 6


def test_blowup_witness_value_at_t_one_too_small():
    # phi_1(1/2) = e^(1/2) - e^(-1/2) ~ 1.0422 < 1e6: the witness must refine
    v = sc.eval_form(sc.make_phi_c(1), F(1, 2))
    assert v.upper() < 2
    assert abs(v.mid_fraction() - F("1.0422")) < F(1, 1000)


def test_blowup_witness_threshold_zero():
    sep = sc.SepFunction(2)
    t, val = sc.diagonal_blowup_witness(sep, sc.make_phi_c(1), 0)
    assert t == 1 and val.excludes_zero()


def test_blowup_witness_requires_blowup_form():
    sep = sc.SepFunction(2)
    with pytest.raises(ValueError):
        sc.diagonal_blowup_witness(sep, sc.PowerExpForm(), 10)


# ---------------------------------------------------------------------------
# separate continuity probes


def test_probe_zero_section_is_identically_zero():
    sep = sc.SepFunction(3)
    out = sc.separate_continuity_probe(sep, [2, 0, 5], axis=0, radii=[F(1, 2), F(1, 8)])
    assert all(osc == 0 for _, osc in out)


def test_probe_along_axis_at_origin():
    sep = sc.SepFunction(2)
    out = sc.separate_continuity_probe(sep, [0, 0], axis=1, radii=[F(1, 4)])
    assert out[0][1] == 0


def test_probe_oscillation_decays():
    sep = sc.SepFunction(2)
    radii = [F(1, 2 ** k) for k in range(2, 11)]
    out = sc.separate_continuity_probe(sep, [1, 1], axis=0, radii=radii)
    oscs = [osc for _, osc in out]
    assert all(a >= b for a, b in zip(oscs, oscs[1:]))
    assert oscs[-1] <= F(1, 1000)

"""Separately continuous but discontinuous functions, and their free algebra.

The base function x1...xn / (x1^(2n) + ... + xn^(2n)) is evaluated exactly
over the rationals.  Polynomial combinations of the generators
e**|x|**c - e**(-|x|**c) normalize to sums D * exp(sum m |x|**gamma); the
growth order of exponent multisets decides blow-up along the diagonal, and
a dyadic point certifies any requested blow-up threshold.

Powers gamma are rational so multiset equality stays decidable; every
witness in sight uses freely chosen parameters, so nothing is lost.
"""

from fractions import Fraction

from . import numkernel as nk
from .errors import BudgetExceeded
from .expalg import PolynomialNC  # noqa: F401  (re-exported companion type)

BLOWS_UP = "blows-up"
BOUNDED = "bounded"
ZERO = "zero"


class SepFunction:
    """The n-variable product-over-powers function, n >= 2."""

    __slots__ = ("n",)

    def __init__(self, n):
        n = int(n)
        if n < 2:
            raise ValueError("dimension must be >= 2")
        self.n = n

    def __call__(self, point):
        return eval_sep(self, point)


def eval_sep(f, point):
    """Exact rational value; 0 at the origin by the defining case split."""
    point = [Fraction(x) for x in point]
    if len(point) != f.n:
        raise ValueError("point has wrong dimension")
    if all(x == 0 for x in point):
        return Fraction(0)
    num = Fraction(1)
    for x in point:
        num *= x
    den = sum(x ** (2 * f.n) for x in point)
    return num / den


class PowerExpForm:
    """Canonical sum of D * exp(sum over gamma of m * |x|**gamma) terms.

    A term is keyed by its exponent multiset: a sorted tuple of
    (gamma, multiplicity) with rational gamma > 0 and nonzero integer
    multiplicity.  The empty multiset is the constant term e**0.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for expo, coeff in items:
            expo = _norm_expo(expo)
            coeff = Fraction(coeff)
            if coeff:
                clean[expo] = clean.get(expo, Fraction(0)) + coeff
        self.terms = {e: c for e, c in sorted(clean.items()) if c}

    def __repr__(self):
        if not self.terms:
            return "PowerExpForm(0)"
        bits = []
        for expo, coeff in self.terms.items():
            inner = " + ".join("%d*|x|^%s" % (m, g) for g, m in expo) or "0"
            bits.append("%s*e^(%s)" % (coeff, inner))
        return "PowerExpForm(" + " + ".join(bits) + ")"

    def __eq__(self, other):
        return isinstance(other, PowerExpForm) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return PowerExpForm(merged)

    def __neg__(self):
        return PowerExpForm({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_expos(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return PowerExpForm(out)

    def pow(self, k):
        acc = PowerExpForm({(): 1})
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc


def _norm_expo(expo):
    if isinstance(expo, dict):
        items = expo.items()
    else:
        items = expo
    clean = {}
    for g, m in items:
        g = Fraction(g)
        m = int(m)
        if g <= 0:
            raise ValueError("powers must be positive")
        if m:
            clean[g] = clean.get(g, 0) + m
    return tuple(sorted((g, m) for g, m in clean.items() if m))


def _add_expos(e1, e2):
    merged = dict(e1)
    for g, m in e2:
        merged[g] = merged.get(g, 0) + m
    return tuple(sorted((g, m) for g, m in merged.items() if m))


def make_phi_c(c):
    """The generator e**|x|**c - e**(-|x|**c)."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    return PowerExpForm([(((c, 1),), 1), (((c, -1),), -1)])


def expand_poly(p, cs):
    """Exact normal form of p(phi_c1, ..., phi_cp)."""
    cs = [Fraction(c) for c in cs]
    if len(set(cs)) != len(cs):
        raise ValueError("parameters must be pairwise distinct")
    if p.arity != len(cs):
        raise ValueError("arity mismatch")
    gens = [make_phi_c(c) for c in cs]
    out = PowerExpForm()
    for expo, coeff in p.monomials.items():
        term = PowerExpForm({(): coeff})
        for g, e in zip(gens, expo):
            if e:
                term = term * g.pow(e)
        out = out + term
    return out


def _growth_key(expo):
    """Sort key realizing the growth order at infinity.

    Multisets compare lexicographically on multiplicities at descending
    powers: exp(sum m |x|^g) / exp(sum m' |x|^g) diverges iff at the largest
    power where they differ the multiplicity difference is positive.
    """

    class _K:
        __slots__ = ("e",)

        def __init__(self, e):
            self.e = dict(e)

        def __lt__(self, other):
            gs = sorted(set(self.e) | set(other.e), reverse=True)
            for g in gs:
                a, b = self.e.get(g, 0), other.e.get(g, 0)
                if a != b:
                    return a < b
            return False

        def __eq__(self, other):
            return self.e == other.e

    return _K(expo)


def dominance_verdict(form):
    """BLOWS_UP iff the growth-maximal term has a positive leading power.

    Exact: the maximal exponent multiset is unique by canonicality, so its
    term dominates every other and decides |form(x)| as x -> infinity.
    """
    if form.is_zero():
        return ZERO
    top = max(form.terms, key=_growth_key)
    if top and top[-1][1] > 0:  # largest power has positive multiplicity
        return BLOWS_UP
    return BOUNDED


def eval_form(form, x, precision=96):
    """Enclosure of form(x) at a rational point (depends on |x| only)."""
    x = abs(Fraction(x))
    acc = nk.Enclosure(nk.D_ZERO, nk.D_ZERO, precision)
    for expo, coeff in form.terms.items():
        arg = nk.Enclosure(nk.D_ZERO, nk.D_ZERO, precision + 8)
        for g, m in expo:
            if x == 0:
                continue
            powed = nk.nth_root_of_rat(x ** g.numerator, g.denominator, precision + 8)
            arg = arg + powed.scale(m)
        term = nk.enclose_exp(arg, precision + 8).scale(coeff)
        acc = acc + term
    return acc


def diagonal_blowup_witness(sep, form, threshold, precision=96, j_cap=64):
    """A dyadic t = 2**-j with |form(1/(n t**n))| certified >= threshold.

    Demonstrates discontinuity at the origin: along the diagonal the base
    function takes the value 1/(n t**n), which the form blows up.
    """
    if dominance_verdict(form) != BLOWS_UP:
        raise ValueError("form does not blow up; no witness exists")
    threshold = Fraction(threshold)
    n = sep.n
    for j in range(j_cap + 1):
        t = Fraction(1, 1 << j)
        arg = 1 / (n * t ** n)
        val = eval_form(form, arg, precision)
        lo, hi = val.lower_dy(), val.upper_dy()
        mag_lo = lo if lo.man >= 0 else (-hi if hi.man <= 0 else nk.D_ZERO)
        if threshold == 0:
            if val.excludes_zero():
                return t, val
            continue
        if nk._cmp_frac_dy(threshold, mag_lo) <= 0:
            return t, val
    raise BudgetExceeded("no dyadic witness within cap", budget=j_cap, last_tried=j_cap)


def separate_continuity_probe(sep, point, axis, radii, grid=8):
    """Oscillation bounds of the axis-i section around a point.

    For each radius r, the exact max of |f(point perturbed by d) - f(point)|
    over the grid d in {+-r k/grid}.  Numeric evidence for separate
    continuity, not a proof.
    """
    point = [Fraction(x) for x in point]
    if not 0 <= axis < sep.n:
        raise ValueError("axis out of range")
    base = eval_sep(sep, point)
    out = []
    for r in radii:
        r = Fraction(r)
        worst = Fraction(0)
        for k in range(1, grid + 1):
            for sgn in (1, -1):
                q = list(point)
                q[axis] += sgn * r * k / grid
                worst = max(worst, abs(eval_sep(sep, q) - base))
        out.append((r, worst))
    return out


__all__ = [
    "SepFunction",
    "eval_sep",
    "PowerExpForm",
    "make_phi_c",
    "expand_poly",
    "dominance_verdict",
    "eval_form",
    "diagonal_blowup_witness",
    "separate_continuity_probe",
    "BLOWS_UP",
    "BOUNDED",
    "ZERO",
    "PolynomialNC",
]

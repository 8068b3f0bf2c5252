"""Exact symbolic calculus for finite exponential sums a_1 e**(b_1 x) + ...

Exponents and coefficients are rational, which keeps exponent collection
decidable; every witness construction downstream only ever needs freely
chosen rational parameters.  The zero function is the empty sum.
"""

from fractions import Fraction

from . import numkernel as nk
from .errors import NoBracket, PrecisionError

POS = "+"
NEG = "-"
ZERO_FUNCTION = "zero-function"


class ExpSum:
    """Canonical finite map exponent -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for b, a in items:
            b = Fraction(b)
            a = Fraction(a)
            if a:
                clean[b] = clean.get(b, Fraction(0)) + a
        self.terms = {b: a for b, a in sorted(clean.items()) if a}

    def __repr__(self):
        if not self.terms:
            return "ExpSum(0)"
        bits = ["%s*e^(%sx)" % (a, b) for b, a in self.terms.items()]
        return "ExpSum(" + " + ".join(bits) + ")"

    def __eq__(self, other):
        return isinstance(other, ExpSum) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        merged = dict(self.terms)
        for b, a in other.terms.items():
            merged[b] = merged.get(b, Fraction(0)) + a
        return ExpSum(merged)

    def __neg__(self):
        return ExpSum({b: -a for b, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return ExpSum({b: a * c for b, a in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for b1, a1 in self.terms.items():
            for b2, a2 in other.terms.items():
                k = b1 + b2
                out[k] = out.get(k, Fraction(0)) + a1 * a2
        return ExpSum(out)

    def pow(self, e):
        if e < 0:
            raise ValueError("negative power of an ExpSum")
        acc = ExpSum({0: 1})
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc


EXPSUM_ZERO = ExpSum()
EXPSUM_ONE = ExpSum({0: 1})


def make_phi_alpha(alpha):
    """The odd surjective generator e**(a x) - e**(-a x), a > 0."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return ExpSum({alpha: 1, -alpha: -1})


def eval_expsum(f, x, precision=nk.DEFAULT_PRECISION):
    """Enclosure of f(x) at an exact rational x."""
    x = Fraction(x)
    if not f.terms:
        return nk.Enclosure(nk.D_ZERO, nk.D_ZERO, precision)
    w = precision + 8
    acc = None
    for b, a in f.terms.items():
        t = nk.exp_of_rat(b * x, w).scale(a)
        acc = t if acc is None else acc + t
    return nk.Enclosure.from_bounds_dy(acc.lower_dy(), acc.upper_dy(), precision)


def eval_expsum_enclosure(f, x, precision=None):
    """Enclosure of f over an enclosure argument."""
    p = precision or x.prec
    if not f.terms:
        return nk.Enclosure(nk.D_ZERO, nk.D_ZERO, p)
    acc = None
    for b, a in f.terms.items():
        t = nk.enclose_exp(x.scale(b), p + 8).scale(a)
        acc = t if acc is None else acc + t
    return nk.Enclosure.from_bounds_dy(acc.lower_dy(), acc.upper_dy(), p)


def derivative(f):
    """Term-wise derivative; constant terms drop out."""
    return ExpSum({b: a * b for b, a in f.terms.items() if b})


def asymptotic_sign(f):
    """(sign at +inf, sign at -inf), read off the extreme exponents.

    Exact: the largest exponent dominates at +inf, the smallest at -inf.
    """
    if not f.terms:
        return ZERO_FUNCTION
    exps = sorted(f.terms)
    hi, lo = exps[-1], exps[0]
    at_pos = POS if f.terms[hi] > 0 else NEG
    at_neg = POS if f.terms[lo] > 0 else NEG
    return at_pos, at_neg


_OFFSETS = (
    Fraction(1, 2),
    Fraction(7, 16),
    Fraction(9, 16),
    Fraction(3, 8),
    Fraction(5, 8),
    Fraction(5, 16),
    Fraction(11, 16),
)


def _certified_sign(g, y, x, precision_cap):
    """Sign of g(x) - y, or None if unresolved below the precision cap."""
    p = 64
    while True:
        e = eval_expsum(g, x, p)
        s = e.shift(-y).sign()
        if s:
            return s
        if p >= precision_cap:
            return None
        p *= 2


def solve_value(g, y, precision=nk.DEFAULT_PRECISION, precision_cap=4096):
    """Certified enclosure of an x with g(x) = y.

    Requires opposite tail signs, which guarantee surjectivity.  Brackets by
    doubling |x| until the sign change is certified, then bisects on dyadic
    points; a bisection point whose sign cannot be resolved (it may be an
    exact root) is replaced by a nearby off-center probe.
    """
    y = Fraction(y)
    sgn = asymptotic_sign(g)
    if sgn == ZERO_FUNCTION or sgn[0] == sgn[1]:
        raise NoBracket("tail signs do not straddle every value")
    increasing = sgn == (POS, NEG)
    lo, hi = Fraction(-1), Fraction(1)
    for _ in range(80):
        slo = _certified_sign(g, y, lo, precision_cap)
        shi = _certified_sign(g, y, hi, precision_cap)
        want_lo, want_hi = (-1, 1) if increasing else (1, -1)
        if slo == want_lo and shi == want_hi:
            break
        if slo is None or shi is None:
            # an endpoint sits on the root; nudge it outward
            lo, hi = lo * 2 - 1, hi * 2 + 1
            continue
        if slo != want_lo:
            lo *= 2
        if shi != want_hi:
            hi *= 2
    else:
        raise NoBracket("no certified bracket found while doubling")
    want_lo = -1 if increasing else 1
    target = Fraction(1, 1 << (precision + 1))
    while hi - lo > target:
        width = hi - lo
        for off in _OFFSETS:
            m = lo + width * off
            s = _certified_sign(g, y, m, precision_cap)
            if s is not None:
                break
        else:
            raise PrecisionError("all bisection probes unresolved")
        if s == want_lo or s == 0:
            lo = m
        else:
            hi = m
    return nk.Enclosure.from_bounds(lo, hi, precision)


class PolynomialNC:
    """Multivariate polynomial with rational coefficients, no constant term.

    Monomials are exponent tuples; the zero exponent tuple is rejected.
    """

    __slots__ = ("arity", "monomials")

    def __init__(self, arity, monomials):
        self.arity = arity
        clean = {}
        items = monomials.items() if isinstance(monomials, dict) else monomials
        for expo, coeff in items:
            expo = tuple(int(e) for e in expo)
            if len(expo) != arity:
                raise ValueError("monomial arity mismatch")
            if any(e < 0 for e in expo):
                raise ValueError("negative exponent")
            coeff = Fraction(coeff)
            if not any(expo):
                if coeff:
                    raise ValueError("constant term not allowed")
                continue
            if coeff:
                clean[expo] = clean.get(expo, Fraction(0)) + coeff
        self.monomials = {e: c for e, c in sorted(clean.items()) if c}

    def is_zero(self):
        return not self.monomials

    def apply_scalars(self, values):
        """Evaluate at scalars (Fractions), exactly."""
        out = Fraction(0)
        for expo, coeff in self.monomials.items():
            term = coeff
            for v, e in zip(values, expo):
                term *= Fraction(v) ** e
            out += term
        return out


def compose_polynomial(p, gens):
    """Exact expansion of p(g_1, ..., g_N) in the ExpSum ring."""
    if p.arity != len(gens):
        raise ValueError("arity of polynomial != number of generators")
    out = EXPSUM_ZERO
    pow_cache = [{} for _ in gens]

    def gpow(i, e):
        if e not in pow_cache[i]:
            pow_cache[i][e] = gens[i].pow(e)
        return pow_cache[i][e]

    for expo, coeff in p.monomials.items():
        term = ExpSum({0: coeff})
        for i, e in enumerate(expo):
            if e:
                term = term * gpow(i, e)
        out = out + term
    return out


class DependencyWitness:
    """Nonzero rational vector c with sum(c_i * f_i) = 0."""

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    def __repr__(self):
        return "DependencyWitness(%s)" % (self.coeffs,)

    def __eq__(self, other):
        return isinstance(other, DependencyWitness) and self.coeffs == other.coeffs


INDEPENDENT = "independent"


def independence_certificate(fs):
    """Exact rational rank test over the union of exponents.

    Returns INDEPENDENT, or a DependencyWitness normalized to a primitive
    integer vector whose first nonzero entry is positive.
    """
    if not fs:
        raise ValueError("empty function list")
    exponents = sorted({b for f in fs for b in f.terms})
    rows = [[f.terms.get(b, Fraction(0)) for b in exponents] for f in fs]
    n = len(fs)
    m = len(exponents)
    # Gauss elimination tracking the combination matrix
    combo = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rank_rows = []
    for i in range(n):
        row = rows[i][:]
        comb = combo[i][:]
        for piv_col, piv_row, piv_comb in rank_rows:
            factor = row[piv_col] / piv_row[piv_col]
            if factor:
                row = [r - factor * p for r, p in zip(row, piv_row)]
                comb = [c - factor * q for c, q in zip(comb, piv_comb)]
        lead = next((j for j in range(m) if row[j]), None)
        if lead is None:
            return DependencyWitness(_normalize(comb))
        rank_rows.append((lead, row, comb))
    return INDEPENDENT


def _normalize(vec):
    from math import gcd

    dens = 1
    for v in vec:
        dens = dens * v.denominator // gcd(dens, v.denominator)
    ints = [int(v * dens) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    first = next((v for v in ints if v), 1)
    if first < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]


__all__ = [
    "ExpSum",
    "EXPSUM_ZERO",
    "EXPSUM_ONE",
    "PolynomialNC",
    "make_phi_alpha",
    "eval_expsum",
    "eval_expsum_enclosure",
    "derivative",
    "asymptotic_sign",
    "solve_value",
    "compose_polynomial",
    "independence_certificate",
    "DependencyWitness",
    "INDEPENDENT",
    "POS",
    "NEG",
    "ZERO_FUNCTION",
]

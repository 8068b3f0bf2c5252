"""A strictly increasing differentiable function whose derivative vanishes
on a dense set, with certified derivative and nonconstancy witnesses.

The inner map g(y) = sum 2**-n * cbrt(y - q_n) over an enumeration (q_n) of
the rationals in (0,1) is strictly increasing with g'(q_n) = +inf, so its
inverse is differentiable with derivative zero exactly on the dense image
of (q_n).  Composing with an affine arctan chart pulls this back to all of
the real line: f = g^{-1} after the chart, taking values in (0,1).

Derivative enclosures at a point need an upper bound on the series
g'(t) = sum 2**-n (t - q_n)**(-2/3) / 3, which no truncation gives for an
arbitrary t (the q_n come arbitrarily close).  At tagged quadratic
coordinates t = r + s*sqrt(2) an effective irrationality constant
|t - p/q| >= C/q**2 turns the tail into a convergent geometric bound, so
those points carry two-sided, zero-excluding certificates; plain rational
points get the sound one-sided enclosure [0, upper] instead.
"""

from fractions import Fraction

from . import enumq
from . import expalg
from . import numkernel as nk
from .errors import BudgetExceeded, PrecisionError

EXACT_ZERO = "exact-zero"
UNRESOLVED = "unresolved"

_HALF = Fraction(1, 2)


class DenseZeroPoint:
    """The preimage of q_n under the chart: f' vanishes here by construction."""

    __slots__ = ("n", "q", "builder")

    def __init__(self, n, q, builder):
        self.n = n
        self.q = q
        self.builder = builder

    def __repr__(self):
        return "DenseZeroPoint(n=%d, q=%s)" % (self.n, self.q)

    def enclosure(self, precision=nk.DEFAULT_PRECISION):
        return self.builder.dense_zero_x(self.n, precision)


class QuadraticPoint:
    """The preimage of t0 = r + s*sqrt(2); carries the effective constant."""

    __slots__ = ("r", "s", "builder")

    def __init__(self, r, s, builder):
        self.r = Fraction(r)
        self.s = Fraction(s)
        if self.s == 0:
            raise ValueError("coordinate must be irrational: s != 0")
        self.builder = builder

    def __repr__(self):
        return "QuadraticPoint(t0 = %s + %s sqrt2)" % (self.r, self.s)

    def t_enclosure(self, precision=nk.DEFAULT_PRECISION):
        rt2 = nk.sqrt_of_rat(2, precision + 8)
        return rt2.scale(self.s).shift(self.r)

    def irrationality_constant(self):
        """C with |t0 - p/q| >= C / q**2 for every rational p/q.

        From |sqrt2 - U/V| >= 1/(4 V**2) (|2V^2 - U^2| >= 1) after clearing
        the denominators of r and s.
        """
        a2 = self.r.denominator
        b1, b2 = abs(self.s.numerator), self.s.denominator
        return Fraction(1, 4 * b2 * a2 * a2 * b1)

    def enclosure(self, precision=nk.DEFAULT_PRECISION):
        return self.builder.chart_preimage(self.t_enclosure(precision + 16), precision)


class PompeiuBuilder:
    """Shared state: the rational enumeration and evaluation caches."""

    def __init__(self):
        self._qs = []
        self._qgen = enumq.unit_rationals()
        self._frames = {}

    # -- the rational enumeration of (0,1) ---------------------------------

    def q(self, n):
        while len(self._qs) < n:
            self._qs.append(next(self._qgen))
        return self._qs[n - 1]

    def qs(self, upto):
        self.q(upto)
        return self._qs[:upto]

    def q_index(self, fr):
        """Index of a rational of (0,1) in the enumeration (exact count)."""
        from math import gcd

        fr = Fraction(fr)
        den = fr.denominator
        phis = _totients_upto(den)
        n = sum(phis[2:den])
        n += sum(1 for p in range(1, fr.numerator) if gcd(p, den) == 1)
        return n + 1

    # -- the increasing inner map g ----------------------------------------

    def eval_g(self, y, precision=nk.DEFAULT_PRECISION):
        """Enclosure of g(y) for rational y in [0,1]; the truncation tail
        |sum_{n>N} 2**-n cbrt(y-q_n)| <= 2**-N is added to the radius.

        Runs on plain integers: each cube root is a directed integer root
        scaled by 2**s, and the weighted terms accumulate with floor/ceil
        shifts, so only one enclosure is built at the end.
        """
        y = Fraction(y)
        if not 0 <= y <= 1:
            raise ValueError("g is evaluated on [0,1]")
        w = precision + 6
        n_terms = w + 2
        s = w + 10
        lo_acc = 0
        hi_acc = 0
        for n in range(1, n_terms + 1):
            d = y - self.q(n)
            num, den = d.numerator, d.denominator
            if num == 0:
                continue
            a = -num if num < 0 else num
            r = nk.iroot((a * den * den) << (3 * s), 3)
            # cbrt(|d|) * 2**s lies in [r/den, (r+1)/den]
            clo, chi = r // den, -((-(r + 1)) // den)
            if num < 0:
                clo, chi = -chi, -clo
            lo_acc += clo >> n  # arithmetic shift floors for either sign
            hi_acc += -((-chi) >> n)
        # floor/ceil shift slack: one unit of 2**-s per term and side
        lo = Fraction(lo_acc - n_terms, 1 << s)
        hi = Fraction(hi_acc + n_terms, 1 << s)
        tail = Fraction(1, 1 << n_terms)
        return nk.Enclosure.from_bounds(lo - tail, hi + tail, precision)

    def eval_g_enclosure(self, t, precision=nk.DEFAULT_PRECISION):
        """g over an enclosure coordinate: monotone image of the endpoints."""
        a = self.eval_g(t.lower(), precision)
        b = self.eval_g(t.upper(), precision)
        return a.hull(b)

    def g_frame(self, precision=nk.DEFAULT_PRECISION):
        """(g(0), g(1), midpoint, spread) enclosures, cached per precision."""
        key = ((precision // 64) + 1) * 64
        if key not in self._frames:
            g0 = self.eval_g(0, key + 16)
            g1 = self.eval_g(1, key + 16)
            mid = (g0 + g1).scale(_HALF)
            spread = g1 - g0
            self._frames[key] = (g0, g1, mid, spread)
        return self._frames[key]

    # -- the arctan chart ----------------------------------------------------

    def chart(self, x, precision=nk.DEFAULT_PRECISION):
        """A(x) = mid + spread * atan(x)/pi, an increasing map R -> (g0, g1)."""
        g0, g1, mid, spread = self.g_frame(precision)
        at = nk.atan_of_rat(x, precision + 16)
        pi = nk.enclose_pi(precision + 16)
        return mid + spread * (at / pi)

    def chart_enclosure(self, x, precision=nk.DEFAULT_PRECISION):
        g0, g1, mid, spread = self.g_frame(precision)
        at = nk.enclose_atan(x, precision + 16)
        pi = nk.enclose_pi(precision + 16)
        return mid + spread * (at / pi)

    def chart_preimage(self, t, precision=nk.DEFAULT_PRECISION):
        """x with A(x) = g(t), from an enclosure of the coordinate t."""
        g0, g1, mid, spread = self.g_frame(precision)
        gt = self.eval_g_enclosure(t, precision + 16)
        ratio = (gt - mid) / spread  # in (-1/2, 1/2)
        pi = nk.enclose_pi(precision + 16)
        return nk.enclose_tan(pi * ratio, precision)

    # -- f itself ------------------------------------------------------------

    def eval_f(self, x, precision=nk.DEFAULT_PRECISION, precision_cap=4096):
        """Enclosure of f(x) in (0,1) for rational x, by certified bisection."""
        x = Fraction(x)
        w_target = self.chart(x, precision + 24)
        lo, hi = Fraction(0), Fraction(1)
        target = Fraction(1, 1 << precision)
        level = 0
        while hi - lo > target:
            width = hi - lo
            decided = None
            level += 1
            gp = max(64, level + 48)
            while decided is None:
                for off in _OFFSETS:
                    m = lo + width * off
                    val = self.eval_g(m, gp)
                    order = nk.compare(val, w_target)
                    if order is not nk.Order.OVERLAP:
                        decided = (m, order)
                        break
                else:
                    gp *= 2
                    if gp > precision_cap:
                        raise PrecisionError("bisection stalled on overlap")
            m, order = decided
            if order is nk.Order.CERTAINLY_LESS:
                lo = m
            else:
                hi = m
        return nk.Enclosure.from_bounds(lo, hi, precision)

    def eval_f_enclosure(self, x, precision=nk.DEFAULT_PRECISION):
        """f over an enclosure argument, via monotonicity."""
        a = self.eval_f(x.lower(), precision)
        b = self.eval_f(x.upper(), precision)
        return a.hull(b)

    def certify_increasing(self, x, y, precision_cap=512):
        """Certificate that f(x) < f(y) for rationals x < y."""
        x, y = Fraction(x), Fraction(y)
        if not x < y:
            raise ValueError("need x < y")
        p = 24
        while p <= precision_cap:
            fx = self.eval_f(x, p)
            fy = self.eval_f(y, p)
            if nk.compare(fx, fy) is nk.Order.CERTAINLY_LESS:
                return p
            p *= 2
        raise PrecisionError("monotonicity not separated below the cap")

    # -- dense zeros ---------------------------------------------------------

    def dense_zero_point(self, n, precision=nk.DEFAULT_PRECISION):
        if n < 1:
            raise ValueError("index must be >= 1")
        return DenseZeroPoint(n, self.q(n), self)

    def dense_zero_x(self, n, precision=nk.DEFAULT_PRECISION):
        """Enclosure of the chart preimage of g(q_n)."""
        point = self.q(n)
        g0, g1, mid, spread = self.g_frame(precision)
        gq = self.eval_g(point, precision + 16)
        ratio = (gq - mid) / spread
        pi = nk.enclose_pi(precision + 16)
        return nk.enclose_tan(pi * ratio, precision)

    def dense_zero_in(self, a, b, precision=64):
        """(n, q_n) with the dense zero x_n inside the interval (a, b).

        The witness coordinate is the simplest rational inside the t-image
        of (a,b); its index reports how deep the enumeration must go.
        """
        fa = self.eval_f(a, precision)
        fb = self.eval_f(b, precision)
        tlo, thi = fa.upper(), fb.lower()
        if tlo >= thi:
            raise PrecisionError("t-window collapsed; raise the precision")
        pad = (thi - tlo) / 16
        qstar = enumq.simplest_in(tlo + pad, thi - pad)
        return self.q_index(qstar), qstar

    # -- derivative certificates ----------------------------------------------

    def _gprime_lower(self, t_lo, t_hi, precision):
        """Certified lower bound of g' on [t_lo, t_hi] (truncated sum)."""
        w = precision + 6
        n_terms = min(w + 2, 160)
        total = nk.Enclosure(nk.D_ZERO, nk.D_ZERO, w)
        third = Fraction(1, 3)
        for n in range(1, n_terms + 1):
            qn = self.q(n)
            d = max(abs(t_lo - qn), abs(t_hi - qn))
            if d == 0:
                continue
            c = nk.cbrt_of_rat(d * d, w)
            total = total + c.recip().scale(third / (1 << n))
        return total.lower()

    def _gprime_enclosure_quadratic(self, point, precision):
        """Two-sided enclosure of g'(t0) at a tagged quadratic coordinate."""
        w = precision + 8
        t0 = point.t_enclosure(w + 16)
        c_const = point.irrationality_constant()
        # tail bound: (1/3) C^(-2/3) sum_{n>N} 2^-n (n+1)^(4/3)
        #           <= (7/2) C^(-2/3) 2^(-N/2)  for even N >= 64
        inv_c = 1 / c_const
        c23 = nk.nth_root_of_rat(inv_c * inv_c, 3, 64).upper()
        n_terms = 64
        while Fraction(7, 2) * c23 > Fraction(1, 1 << 40) * (1 << (n_terms // 2)):
            n_terms *= 2
            if n_terms > 4096:
                raise PrecisionError("tail bound will not converge")
        tail = Fraction(7, 2) * c23 / (1 << (n_terms // 2))
        third = Fraction(1, 3)
        total = nk.Enclosure(nk.D_ZERO, nk.D_ZERO, w)
        for n in range(1, n_terms + 1):
            diff = t0.shift(-self.q(n))
            sq = diff * diff
            if not sq.excludes_zero():
                raise PrecisionError("coordinate too close to q_n at this precision")
            c = nk.enclose_cbrt(sq, w)
            total = total + c.recip().scale(third / (1 << n))
        # true g' lies in [partial, partial + tail]
        return total.shift(tail / 2).widen(tail / 2)

    def derivative_certificate(self, point, precision=nk.DEFAULT_PRECISION):
        """EXACT_ZERO at dense zeros; a zero-excluding enclosure of f' at
        tagged quadratic points; the one-sided enclosure [0, ub] at plain
        rationals; UNRESOLVED when the bound collapses."""
        if isinstance(point, DenseZeroPoint):
            return EXACT_ZERO
        if isinstance(point, QuadraticPoint):
            gp = self._gprime_enclosure_quadratic(point, precision)
            if gp.lower() <= 0:
                return UNRESOLVED
            x0 = point.enclosure(precision)
            aprime = self._chart_slope(x0, precision)
            return aprime / gp
        x = Fraction(point)
        ft = self.eval_f(x, max(48, precision // 2))
        lower = self._gprime_lower(ft.lower(), ft.upper(), precision)
        if lower <= 0:
            return UNRESOLVED
        aprime = self._chart_slope(nk.exact(x, precision), precision)
        ub = aprime.upper() / lower
        return nk.Enclosure.from_bounds(0, ub, precision)

    def _chart_slope(self, x, precision):
        """A'(x) = spread / (pi (1 + x^2)), positive everywhere."""
        g0, g1, mid, spread = self.g_frame(precision)
        pi = nk.enclose_pi(precision + 8)
        one = nk.exact(1, precision + 8)
        return spread / (pi * (one + x * x))

    # -- nonconstancy ---------------------------------------------------------

    def nonconstancy_witness(
        self, interval, phi, precision=nk.DEFAULT_PRECISION, budget=24
    ):
        """A tagged point of the interval where (phi o f)' is provably nonzero.

        Scans quadratic coordinates across the t-image of the interval,
        skipping candidates where either chain-rule factor's enclosure meets
        zero; certifies both factors and corroborates with a two-point value
        separation.
        """
        if phi.is_zero():
            raise ValueError("phi must be nonzero")
        a, b = Fraction(interval[0]), Fraction(interval[1])
        if not a < b:
            raise ValueError("degenerate interval")
        dphi = expalg.derivative(phi)
        fa = self.eval_f(a, 64)
        fb = self.eval_f(b, 64)
        tlo, thi = fa.upper(), fb.lower()
        if tlo >= thi:
            raise PrecisionError("t-window collapsed")
        width = thi - tlo
        # power-of-two irrational step keeps the effective constant healthy
        wbits = max(1, width.denominator.bit_length() - width.numerator.bit_length() + 1)
        s = Fraction(1, 2 ** (wbits + 7))
        tried = 0
        for j in (8, 24, 40, 56, 16, 48, 4, 60, 12, 28, 36, 52):
            if tried >= budget:
                break
            tried += 1
            r = _round_to_grid(tlo + width * Fraction(j, 64), 1024)
            point = QuadraticPoint(r, s, self)
            t0 = point.t_enclosure(precision + 16)
            if not (tlo < t0.lower() and t0.upper() < thi):
                continue
            # factor 2: phi'(f(x0)) = phi'(t0)
            phi_factor = expalg.eval_expsum_enclosure(dphi, t0, precision)
            if not phi_factor.excludes_zero():
                continue
            fprime = self.derivative_certificate(point, precision)
            if fprime in (EXACT_ZERO, UNRESOLVED) or not fprime.excludes_zero():
                continue
            x0 = point.enclosure(precision)
            if not (a < x0.lower() and x0.upper() < b):
                continue
            two_point = self._two_point_separation(phi, x0, a, b, precision)
            return NonconstancyWitness(point, x0, fprime, phi_factor, two_point)
        raise BudgetExceeded(
            "no certified witness on the candidate grid", budget=budget, last_tried=tried
        )

    def _two_point_separation(self, phi, x0, a, b, precision):
        """Rationals p1 < p2 near x0 with (phi o f)(p1) != (phi o f)(p2)."""
        mid = x0.mid_fraction()
        delta = min(b - mid, mid - a) / 4
        for _ in range(8):
            p1 = _round_to_grid(mid - delta, 1 << 24)
            p2 = _round_to_grid(mid + delta, 1 << 24)
            if not (a < p1 < p2 < b):
                delta /= 2
                continue
            v1 = expalg.eval_expsum_enclosure(phi, self.eval_f(p1, 64), 96)
            v2 = expalg.eval_expsum_enclosure(phi, self.eval_f(p2, 64), 96)
            order = nk.compare(v1, v2)
            if order is not nk.Order.OVERLAP:
                return (p1, p2, order)
            delta /= 2
        raise PrecisionError("two-point separation failed")

    # -- Stone-Weierstrass conditions -----------------------------------------

    def stone_weierstrass_check(
        self, gens, x0, x1, precision=nk.DEFAULT_PRECISION, precision_cap=2048
    ):
        """Conditions of the density lemma for F = exp(r f), first r in H.

        (a) F(x0) != 0 -- automatic, the exponential is positive;
        (b) F(x0) != F(x1) -- certified by enclosure separation (f and the
        exponential are both one-to-one)."""
        x0, x1 = Fraction(x0), Fraction(x1)
        if x0 == x1:
            raise ValueError("need two distinct points")
        r = gens.value(0, precision + 8)
        p = precision
        while p <= precision_cap:
            f0 = self.eval_f(x0, p)
            f1 = self.eval_f(x1, p)
            e0 = nk.enclose_exp(r * f0, p)
            e1 = nk.enclose_exp(r * f1, p)
            if not e0.lower() > 0:
                return ("failed", "a")  # pragma: no cover - positivity is structural
            if nk.compare(e0, e1) is not nk.Order.OVERLAP:
                return ("conditions-hold", {"F(x0)": e0, "F(x1)": e1})
            p *= 2
        raise PrecisionError("values not separated below the precision cap")


class NonconstancyWitness:
    __slots__ = ("point", "x0", "fprime", "phi_factor", "two_point")

    def __init__(self, point, x0, fprime, phi_factor, two_point):
        self.point = point
        self.x0 = x0
        self.fprime = fprime
        self.phi_factor = phi_factor
        self.two_point = two_point

    def chain_rule_product(self):
        return self.fprime * self.phi_factor


class FreeGeneratorSet:
    """Square roots of distinct primes as an assumed Q-independent set."""

    PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)

    def __init__(self, count):
        if not 1 <= count <= len(self.PRIMES):
            raise ValueError("unsupported generator count")
        self.primes = self.PRIMES[:count]

    def value(self, i, precision=nk.DEFAULT_PRECISION):
        return nk.sqrt_of_rat(self.primes[i], precision)


_OFFSETS = (
    Fraction(1, 2),
    Fraction(7, 16),
    Fraction(9, 16),
    Fraction(3, 8),
    Fraction(5, 8),
)


def _round_to_grid(fr, max_den):
    """Nearest rational with denominator max_den (keeps constants small)."""
    fr = Fraction(fr)
    return Fraction(round(fr * max_den), max_den)


def _totients_upto(n):
    phis = list(range(n))
    for p in range(2, n):
        if phis[p] == p:  # p prime
            for m in range(p, n, p):
                phis[m] -= phis[m] // p
    return phis


__all__ = [
    "PompeiuBuilder",
    "DenseZeroPoint",
    "QuadraticPoint",
    "NonconstancyWitness",
    "FreeGeneratorSet",
    "EXACT_ZERO",
    "UNRESOLVED",
]

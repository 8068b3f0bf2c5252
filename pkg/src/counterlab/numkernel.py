"""Certified scalar arithmetic.

Two number kinds live here:

* ``Rat`` -- exact arbitrary-precision rationals.  Backed by the standard
  library ``fractions.Fraction``, which already guarantees lowest terms and
  a positive denominator.

* ``Enclosure`` -- a binary midpoint-radius interval [mid-rad, mid+rad]
  guaranteed to contain the true real value.  Midpoint and radius are dyadic
  (integer mantissa times a power of two), so halving, bisection and dyadic
  grids are exact, and values as large as e**(2**30) cost only a big exponent
  field, never a big mantissa.  Every operation is sound: the returned
  interval contains the exact image of its inputs.

Elementary functions (exp, atan, cbrt, n-th roots, sin/cos/tan on
(-pi/2, pi/2)) are computed from argument reduction plus exact-rational
Taylor partial sums with explicit tail bounds, rounded outward.  No floating
point is involved anywhere.
"""

from enum import Enum
from fractions import Fraction
from math import isqrt

from .errors import PrecisionError

Rat = Fraction

DEFAULT_PRECISION = 128

_ONE = Fraction(1)
_RAD_BITS = 16  # radius mantissas are kept short; rounded up, never down


class Order(Enum):
    CERTAINLY_LESS = "certainly-less"
    CERTAINLY_GREATER = "certainly-greater"
    OVERLAP = "overlap"


# ---------------------------------------------------------------------------
# dyadic layer: values man * 2**exp with int man, exp


class Dyadic:
    __slots__ = ("man", "exp")

    def __init__(self, man, exp=0):
        if man == 0:
            exp = 0
        else:
            t = (man & -man).bit_length() - 1
            if t:
                man >>= t
                exp += t
        self.man = man
        self.exp = exp

    def __repr__(self):
        return "Dyadic(%d, %d)" % (self.man, self.exp)

    def __bool__(self):
        return self.man != 0

    @property
    def top(self):
        """Exponent e with 2**(e-1) <= |self| < 2**e (0 for zero)."""
        return self.exp + self.man.bit_length() if self.man else None

    def as_fraction(self):
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def __neg__(self):
        return Dyadic(-self.man, self.exp)

    def __abs__(self):
        return Dyadic(abs(self.man), self.exp)

    def _cmp(self, other):
        a, b = self, other
        sa = (a.man > 0) - (a.man < 0)
        sb = (b.man > 0) - (b.man < 0)
        if sa != sb:
            return -1 if sa < sb else 1
        if sa == 0:
            return 0
        if a.top != b.top:
            return sa if a.top > b.top else -sa
        e = min(a.exp, b.exp)
        am = a.man << (a.exp - e)
        bm = b.man << (b.exp - e)
        return (am > bm) - (am < bm)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        return isinstance(other, Dyadic) and self._cmp(other) == 0

    def __hash__(self):
        return hash((self.man, self.exp))


D_ZERO = Dyadic(0)
D_ONE = Dyadic(1)


def _round_dy(d, prec, up):
    """Round to at most prec mantissa bits, directed (up = toward +inf)."""
    b = d.man.bit_length()
    if b <= prec:
        return d
    s = b - prec
    if up:
        return Dyadic(-((-d.man) >> s), d.exp + s)
    return Dyadic(d.man >> s, d.exp + s)


def _dy_add(a, b, prec, up):
    """Directed rounded sum with bounded work.

    When the operands' scales are more than prec+8 bits apart the smaller
    one is absorbed into a one-ulp bump in the rounding direction.
    """
    if not a.man:
        return _round_dy(b, prec, up)
    if not b.man:
        return _round_dy(a, prec, up)
    gap = a.top - b.top
    if gap < 0:
        a, b = b, a
        gap = -gap
    if gap > prec + 8:
        r = _round_dy(a, prec, up)
        if (b.man > 0) == up:
            # nudge one ulp toward the rounding direction; |b| < ulp here
            step = 1 if up else -1
            return Dyadic(r.man + step, r.exp) if r.man else Dyadic(step, b.top)
        return r
    e = min(a.exp, b.exp)
    m = Dyadic((a.man << (a.exp - e)) + (b.man << (b.exp - e)), e)
    return _round_dy(m, prec, up)


def _dy_mul(a, b, prec, up):
    return _round_dy(Dyadic(a.man * b.man, a.exp + b.exp), prec, up)


def _dy_half(d):
    return Dyadic(d.man, d.exp - 1)


def _frac_dy(fr, prec, up):
    """Directed conversion Fraction -> Dyadic with prec significant bits."""
    num, den = fr.numerator, fr.denominator
    if num == 0:
        return D_ZERO
    if den == 1:
        return _round_dy(Dyadic(num, 0), prec, up)
    d2 = (den & -den).bit_length() - 1
    if den == (1 << d2):
        return _round_dy(Dyadic(num, -d2), prec, up)
    s = prec + den.bit_length() + 2
    if up:
        q = -((-num << s) // den)
    else:
        q = (num << s) // den
    return _round_dy(Dyadic(q, -s), prec, up)


def _dy_recip(d, prec, up):
    """Directed 1/d for nonzero dyadic d, bounded work."""
    if not d.man:
        raise ZeroDivisionError("dyadic reciprocal of zero")
    s = prec + d.man.bit_length() + 2
    if up:
        q = -((-(1 << s)) // d.man)
    else:
        q = (1 << s) // d.man
    return _round_dy(Dyadic(q, -s - d.exp), prec, up)


def _cmp_frac_dy(fr, d):
    """Compare an exact rational against a dyadic without huge shifts."""
    sf = (fr > 0) - (fr < 0)
    sd = (d.man > 0) - (d.man < 0)
    if sf != sd:
        return -1 if sf < sd else 1
    if sf == 0:
        return 0
    ftop = fr.numerator.bit_length() - fr.denominator.bit_length()
    if ftop + 2 < d.top:
        return -sf
    if ftop - 2 > d.top:
        return sf
    # scales comparable; cross-multiply exactly
    if d.exp >= 0:
        lhs = fr.numerator
        rhs = (d.man << d.exp) * fr.denominator
    else:
        lhs = fr.numerator << -d.exp
        rhs = d.man * fr.denominator
    return (lhs > rhs) - (lhs < rhs)


def iroot(n, k):
    """Floor k-th root of a non-negative integer."""
    if n < 0:
        raise ValueError("iroot of negative")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


# ---------------------------------------------------------------------------
# enclosures


class Enclosure:
    """Midpoint-radius interval with a working bit count.

    Immutable; all operations are pure, so values can be shared freely
    across threads with no coordination.
    """

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad=D_ZERO, prec=DEFAULT_PRECISION):
        if rad.man < 0:
            raise ValueError("negative radius")
        self.mid = mid
        self.rad = rad
        self.prec = prec

    def __repr__(self):
        m, r = self.mid, self.rad
        if m.man and abs(m.exp) > 4096:
            return "Enclosure(man=%s..., exp=%d)" % (str(m.man)[:12], m.exp)
        return "Enclosure(%s +- %s)" % (
            float(m.as_fraction()),
            float(r.as_fraction()) if r.man else 0.0,
        )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rat(fr, prec=DEFAULT_PRECISION):
        fr = Fraction(fr)
        lo = _frac_dy(fr, prec, up=False)
        if _cmp_frac_dy(fr, lo) == 0:
            return Enclosure(lo, D_ZERO, prec)
        hi = _frac_dy(fr, prec, up=True)
        return Enclosure.from_bounds_dy(lo, hi, prec)

    @staticmethod
    def from_bounds_dy(lo, hi, prec=DEFAULT_PRECISION):
        if lo > hi:
            raise ValueError("crossed bounds")
        mid = _dy_half(_dy_add(lo, hi, prec + 16, up=False))
        # sound radius: max distance from mid to either bound, rounded up
        r1 = _dy_add(hi, -mid, _RAD_BITS, up=True)
        r2 = _dy_add(mid, -lo, _RAD_BITS, up=True)
        rad = r1 if r1 >= r2 else r2
        if rad.man < 0:
            rad = D_ZERO
        return Enclosure(mid, rad, prec)

    @staticmethod
    def from_bounds(lo, hi, prec=DEFAULT_PRECISION):
        """Enclosure of [lo, hi] from exact rational bounds."""
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError("crossed bounds")
        return Enclosure.from_bounds_dy(
            _frac_dy(lo, prec + 8, up=False), _frac_dy(hi, prec + 8, up=True), prec
        )

    # -- views -------------------------------------------------------------

    def lower_dy(self):
        return _dy_add(self.mid, -self.rad, self.prec + _RAD_BITS + 8, up=False)

    def upper_dy(self):
        return _dy_add(self.mid, self.rad, self.prec + _RAD_BITS + 8, up=True)

    def mid_fraction(self):
        return self.mid.as_fraction()

    def rad_fraction(self):
        return self.rad.as_fraction()

    def lower(self):
        return self.lower_dy().as_fraction()

    def upper(self):
        return self.upper_dy().as_fraction()

    def contains(self, fr):
        fr = Fraction(fr)
        return (
            _cmp_frac_dy(fr, self.lower_dy()) >= 0
            and _cmp_frac_dy(fr, self.upper_dy()) <= 0
        )

    def contains_enclosure(self, other):
        return (
            self.lower_dy() <= other.lower_dy()
            and other.upper_dy() <= self.upper_dy()
        )

    def excludes_zero(self):
        return self.sign() != 0

    def is_exact(self):
        return self.rad.man == 0

    def sign(self):
        """-1, 0 (straddles or zero), +1, judged from certified bounds."""
        if self.lower_dy().man > 0:
            return 1
        if self.upper_dy().man < 0:
            return -1
        return 0

    # -- arithmetic --------------------------------------------------------

    def _p(self, other):
        return max(self.prec, getattr(other, "prec", 0))

    def __neg__(self):
        return Enclosure(-self.mid, self.rad, self.prec)

    def __add__(self, other):
        if not isinstance(other, Enclosure):
            return NotImplemented
        p = self._p(other)
        w = p + 8
        lo = _dy_add(self.lower_dy(), other.lower_dy(), w, up=False)
        hi = _dy_add(self.upper_dy(), other.upper_dy(), w, up=True)
        return Enclosure.from_bounds_dy(lo, hi, p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Enclosure):
            return NotImplemented
        p = self._p(other)
        w = p + 8
        cands_lo = []
        cands_hi = []
        for x in (self.lower_dy(), self.upper_dy()):
            for y in (other.lower_dy(), other.upper_dy()):
                cands_lo.append(_dy_mul(x, y, w, up=False))
                cands_hi.append(_dy_mul(x, y, w, up=True))
        return Enclosure.from_bounds_dy(min(cands_lo), max(cands_hi), p)

    def scale(self, fr):
        """Scaling by an exact rational."""
        fr = Fraction(fr)
        if fr == 0:
            return Enclosure(D_ZERO, D_ZERO, self.prec)
        if fr == 1:
            return self
        w = self.prec + 8
        a = _dy_mul_frac(self.lower_dy(), fr, w, up=fr < 0)
        b = _dy_mul_frac(self.upper_dy(), fr, w, up=fr > 0)
        lo, hi = (a, b) if fr > 0 else (b, a)
        return Enclosure.from_bounds_dy(lo, hi, self.prec)

    def shift(self, fr):
        """Translation by an exact rational."""
        return self + Enclosure.from_rat(fr, self.prec)

    def recip(self):
        s = self.sign()
        if s == 0:
            raise PrecisionError("reciprocal of interval containing zero")
        w = self.prec + 8
        lo = _dy_recip(self.upper_dy(), w, up=False)
        hi = _dy_recip(self.lower_dy(), w, up=True)
        return Enclosure.from_bounds_dy(lo, hi, self.prec)

    def __truediv__(self, other):
        if not isinstance(other, Enclosure):
            return NotImplemented
        return self * other.recip()

    def pow_int(self, e):
        """Interval integer power (repeated squaring, directed rounding)."""
        if e < 0:
            return self.recip().pow_int(-e)
        p = self.prec
        if e == 0:
            return Enclosure(D_ONE, D_ZERO, p)
        w = p + 8 + 2 * e.bit_length()
        lo, hi = self.lower_dy(), self.upper_dy()
        if lo.man >= 0 or e % 2 == 1:
            return Enclosure.from_bounds_dy(
                _dy_pow(lo, e, w, up=False), _dy_pow(hi, e, w, up=True), p
            )
        if hi.man <= 0:
            # even power of a non-positive interval: t**e is decreasing there
            return Enclosure.from_bounds_dy(
                _dy_pow(hi, e, w, up=False), _dy_pow(lo, e, w, up=True), p
            )
        m = -lo if -lo > hi else hi
        return Enclosure.from_bounds_dy(D_ZERO, _dy_pow(m, e, w, up=True), p)

    def hull(self, other):
        lo = min(self.lower_dy(), other.lower_dy())
        hi = max(self.upper_dy(), other.upper_dy())
        return Enclosure.from_bounds_dy(lo, hi, self._p(other))

    def widen(self, fr):
        """Add a non-negative rational to the radius."""
        fr = Fraction(fr)
        if fr < 0:
            raise ValueError("widen by negative amount")
        extra = _frac_dy(fr, _RAD_BITS, up=True)
        rad = _dy_add(self.rad, extra, _RAD_BITS, up=True)
        return Enclosure(self.mid, rad, self.prec)


def _dy_mul_frac(d, fr, prec, up):
    num, den = fr.numerator, fr.denominator
    m = Dyadic(d.man * num, d.exp)
    if den == 1:
        return _round_dy(m, prec, up)
    return _dy_mul(m, _frac_dy(Fraction(1, den), prec + 4, up == (m.man > 0)), prec, up)


def _dy_pow(d, e, prec, up):
    """Directed d**e for e >= 1; sign handled via |d| when e is even."""
    neg = d.man < 0
    base = -d if neg else d
    out_neg = neg and (e % 2 == 1)
    # directed rounding must track the sign of the final result
    dirn = up != out_neg
    acc = None
    b = base
    ee = e
    while ee:
        if ee & 1:
            acc = b if acc is None else _dy_mul(acc, b, prec, dirn)
        ee >>= 1
        if ee:
            b = _dy_mul(b, b, prec, dirn)
    return -acc if out_neg else acc


E_ZERO = Enclosure(D_ZERO, D_ZERO, DEFAULT_PRECISION)


def exact(fr, prec=DEFAULT_PRECISION):
    """Enclosure of a rational; radius zero when dyadic, one ulp otherwise."""
    return Enclosure.from_rat(fr, prec)


def compare(a, b):
    """Certified order of two enclosures.

    CERTAINLY_LESS iff upper(a) < lower(b); OVERLAP never misorders,
    it only signals insufficient precision.
    """
    if a.upper_dy() < b.lower_dy():
        return Order.CERTAINLY_LESS
    if a.lower_dy() > b.upper_dy():
        return Order.CERTAINLY_GREATER
    return Order.OVERLAP


# ---------------------------------------------------------------------------
# exp


def _exp_dy_bounds(r, w):
    """Dyadic bounds for e**r, r an exact Fraction, relative error < 2**-w."""
    if r == 0:
        return D_ONE, D_ONE
    ar = abs(r)
    k = max(0, ar.numerator.bit_length() - ar.denominator.bit_length() + 3)
    r2 = r / (1 << k) if k else r
    wk = w + 2 * k + 10
    # Taylor sum of r2**j / j!; |r2| <= 1/4 so |tail_N| <= 2 |t_{N+1}|
    s = _ONE
    term = _ONE
    j = 0
    bound = Fraction(1, 1 << (wk + 2))
    while True:
        j += 1
        term *= r2 / j
        s += term
        if abs(term) < bound:
            break
    t = 2 * abs(term)
    dlo = _frac_dy(s - t, wk, up=False)
    dhi = _frac_dy(s + t, wk, up=True)
    for _ in range(k):
        dlo = _dy_mul(dlo, dlo, wk, up=False)
        dhi = _dy_mul(dhi, dhi, wk, up=True)
    return dlo, dhi


def _dy_to_frac_arg(d):
    """Dyadic -> Fraction for transcendental arguments (guarded size)."""
    if d.man and abs(d.exp) > (1 << 22):
        raise PrecisionError("argument exponent too large to materialize")
    return d.as_fraction()


def enclose_exp(x, precision=None):
    """Enclosure of e**t over t in x (monotone image of the endpoints)."""
    if precision is not None and precision <= 0:
        raise ValueError("precision must be positive")
    p = precision or x.prec
    w = p + 8
    lo, _ = _exp_dy_bounds(_dy_to_frac_arg(x.lower_dy()), w)
    _, hi = _exp_dy_bounds(_dy_to_frac_arg(x.upper_dy()), w)
    return Enclosure.from_bounds_dy(lo, hi, p)


def exp_of_rat(fr, precision=DEFAULT_PRECISION):
    lo, hi = _exp_dy_bounds(Fraction(fr), precision + 8)
    return Enclosure.from_bounds_dy(lo, hi, precision)


# ---------------------------------------------------------------------------
# roots


def _nthroot_frac_bounds(fr, k, w):
    """Rational bounds for fr**(1/k), fr >= 0, by directed integer roots."""
    if fr < 0:
        raise ValueError("root of negative")
    if fr == 0:
        return Fraction(0), Fraction(0)
    num, den = fr.numerator, fr.denominator
    s = w + 4
    m = (num * den ** (k - 1)) << (k * s)
    r = iroot(m, k)
    scale = den << s
    if r ** k == m:
        v = Fraction(r, scale)
        return v, v
    return Fraction(r, scale), Fraction(r + 1, scale)


def enclose_nth_root(x, k, precision=None):
    """Enclosure of t**(1/k) over x; odd k is total, even k needs x >= 0."""
    p = precision or x.prec
    w = p + 8
    lo, hi = x.lower(), x.upper()
    if k % 2 == 0 and lo < 0:
        raise ValueError("even root of negative interval")
    if lo < 0:
        blo = -_nthroot_frac_bounds(-lo, k, w)[1]
    else:
        blo = _nthroot_frac_bounds(lo, k, w)[0]
    if hi < 0:
        bhi = -_nthroot_frac_bounds(-hi, k, w)[0]
    else:
        bhi = _nthroot_frac_bounds(hi, k, w)[1]
    return Enclosure.from_bounds(blo, bhi, p)


def enclose_cbrt(x, precision=None):
    """Cube root; total and odd, cbrt(-x) = -cbrt(x) exactly."""
    return enclose_nth_root(x, 3, precision)


def cbrt_of_rat(fr, precision=DEFAULT_PRECISION):
    fr = Fraction(fr)
    if fr < 0:
        return -cbrt_of_rat(-fr, precision)
    lo, hi = _nthroot_frac_bounds(fr, 3, precision + 8)
    return Enclosure.from_bounds(lo, hi, precision)


def sqrt_of_rat(fr, precision=DEFAULT_PRECISION):
    fr = Fraction(fr)
    if fr < 0:
        raise ValueError("sqrt of negative rational")
    lo, hi = _nthroot_frac_bounds(fr, 2, precision + 8)
    return Enclosure.from_bounds(lo, hi, precision)


def nth_root_of_rat(fr, k, precision=DEFAULT_PRECISION):
    fr = Fraction(fr)
    if fr < 0:
        if k % 2 == 0:
            raise ValueError("even root of negative rational")
        return -nth_root_of_rat(-fr, k, precision)
    lo, hi = _nthroot_frac_bounds(fr, k, precision + 8)
    return Enclosure.from_bounds(lo, hi, precision)


# ---------------------------------------------------------------------------
# atan and pi


def _atan_series_bounds(y, w):
    """Bounds for atan(y); requires |y| <= 5/9 (terms strictly decreasing)."""
    if y == 0:
        return Fraction(0), Fraction(0)
    neg = y < 0
    ay = abs(y)
    s = Fraction(0)
    power = ay
    k = 0
    bound = Fraction(1, 1 << (w + 4))
    y2 = ay * ay
    sign = 1
    while True:
        term = power / (2 * k + 1)
        s += sign * term
        if term < bound:
            break
        power *= y2
        k += 1
        sign = -sign
    lo, hi = s - term, s + term
    if neg:
        lo, hi = -hi, -lo
    return lo, hi


_pi_cache = {}


def pi_bounds(w):
    """Exact rational bounds on pi with error below 2**-w (Machin formula)."""
    key = ((w // 64) + 1) * 64
    if key not in _pi_cache:
        alo, ahi = _atan_series_bounds(Fraction(1, 5), key + 12)
        blo, bhi = _atan_series_bounds(Fraction(1, 239), key + 12)
        _pi_cache[key] = (16 * alo - 4 * bhi, 16 * ahi - 4 * blo)
    return _pi_cache[key]


def enclose_pi(precision=DEFAULT_PRECISION):
    lo, hi = pi_bounds(precision + 8)
    return Enclosure.from_bounds(lo, hi, precision)


def _atan_frac_bounds(x, w):
    if x < 0:
        lo, hi = _atan_frac_bounds(-x, w)
        return -hi, -lo
    if x > 1:
        plo, phi = pi_bounds(w + 4)
        slo, shi = _atan_frac_bounds(1 / x, w + 4)
        return plo / 2 - shi, phi / 2 - slo
    if 2 * x > 1:
        # atan(x) = pi/4 + atan((x-1)/(x+1)); reduced argument in (-1/3, 0]
        plo, phi = pi_bounds(w + 4)
        slo, shi = _atan_series_bounds((x - 1) / (x + 1), w + 4)
        return plo / 4 + slo, phi / 4 + shi
    return _atan_series_bounds(x, w)


def enclose_atan(x, precision=None):
    """Enclosure of atan(t) for t in x (atan is monotone)."""
    p = precision or x.prec
    w = p + 8
    lo_d, hi_d = x.lower_dy(), x.upper_dy()
    # clamp astronomically large arguments against the pi/2 asymptote
    big = 1 << 16
    plo, phi = pi_bounds(w + 4)
    if lo_d.man > 0 and lo_d.top > big:
        lo = _atan_frac_bounds(Fraction(1 << big), w)[0]
    elif lo_d.man < 0 and (-lo_d).top > big:
        lo = -phi / 2
    else:
        lo = _atan_frac_bounds(lo_d.as_fraction(), w)[0]
    if hi_d.man > 0 and hi_d.top > big:
        hi = phi / 2
    elif hi_d.man < 0 and (-hi_d).top > big:
        hi = _atan_frac_bounds(-Fraction(1 << big), w)[1]
    else:
        hi = _atan_frac_bounds(hi_d.as_fraction(), w)[1]
    return Enclosure.from_bounds(lo, hi, p)


def atan_of_rat(fr, precision=DEFAULT_PRECISION):
    lo, hi = _atan_frac_bounds(Fraction(fr), precision + 8)
    return Enclosure.from_bounds(lo, hi, precision)


# ---------------------------------------------------------------------------
# sin / cos / tan on (-pi/2, pi/2)


def _sincos_frac_bounds(x, w):
    """Bounds for (sin x, cos x); intended for |x| < 1.6."""
    bound = Fraction(1, 1 << (w + 4))
    x2 = x * x
    s = x
    term = x
    k = 0
    while True:
        k += 1
        term *= -x2 / ((2 * k) * (2 * k + 1))
        s += term
        if abs(term) < bound and x2 <= (2 * k + 2) * (2 * k + 3):
            break
    t = 2 * abs(term)
    sin_b = (s - t, s + t)
    c = _ONE
    term = _ONE
    k = 0
    while True:
        k += 1
        term *= -x2 / ((2 * k - 1) * (2 * k))
        c += term
        if abs(term) < bound and x2 <= (2 * k + 1) * (2 * k + 2):
            break
    t = 2 * abs(term)
    cos_b = (c - t, c + t)
    return sin_b, cos_b


def enclose_sin_cos(x, precision=None):
    """Enclosures of sin and cos over x: midpoint series value, Lipschitz 1."""
    p = precision or x.prec
    m = x.mid_fraction()
    r = x.rad_fraction()
    (slo, shi), (clo, chi) = _sincos_frac_bounds(m, p + 8)
    sin_e = Enclosure.from_bounds(slo - r, shi + r, p)
    cos_e = Enclosure.from_bounds(clo - r, chi + r, p)
    return sin_e, cos_e


def enclose_tan(x, precision=None):
    """tan over x; requires cos certifiably nonzero on x."""
    p = precision or x.prec
    s, c = enclose_sin_cos(x, p)
    if not c.excludes_zero():
        raise PrecisionError("tan: cosine enclosure straddles zero")
    return s / c


__all__ = [
    "Rat",
    "Dyadic",
    "Enclosure",
    "Order",
    "compare",
    "exact",
    "E_ZERO",
    "DEFAULT_PRECISION",
    "enclose_exp",
    "exp_of_rat",
    "enclose_cbrt",
    "cbrt_of_rat",
    "sqrt_of_rat",
    "nth_root_of_rat",
    "enclose_nth_root",
    "enclose_atan",
    "atan_of_rat",
    "enclose_pi",
    "pi_bounds",
    "enclose_sin_cos",
    "enclose_tan",
    "iroot",
]

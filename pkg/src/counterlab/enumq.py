"""Deterministic enumerations of rationals and of rational intervals.

Rationals are enumerated by *height*: a reduced fraction p/q (q >= 1) has
height max(|p|, q), and fractions are ordered by (height, q, p).  Intervals
(p, p+d) are enumerated through index pairs (i, j) ordered by (i*j, i),
where i indexes p among all rationals and j indexes d among the positive
ones.  Both orders are platform-independent and bijective, and keep the
index of "simple" intervals small, which is what the Cantor carver needs.
"""

from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "rat_at",
    "pos_rat_at",
    "interval_at",
    "intervals_upto",
    "unit_rationals",
    "rat_index",
    "simplest_in",
]


def _heights():
    # Reduced fractions of height h, ordered by (denominator, numerator).
    yield 1, [(-1, 1), (0, 1), (1, 1)]
    h = 2
    while True:
        batch = []
        for q in range(1, h):
            if gcd(h, q) == 1:
                batch.append((-h, q))
                batch.append((h, q))
        for p in range(-(h - 1), h):
            if p != 0 and gcd(abs(p), h) == 1:
                batch.append((p, h))
        batch.sort(key=lambda t: (t[1], t[0]))
        yield h, batch
        h += 1


_rats = []
_pos_rats = []
_height_gen = _heights()


def _extend_rats(upto):
    while len(_rats) < upto:
        _, batch = next(_height_gen)
        for p, q in batch:
            fr = Fraction(p, q)
            _rats.append(fr)
            if p > 0:
                _pos_rats.append(fr)


def rat_at(i):
    """The i-th rational (1-based) in height order."""
    if i < 1:
        raise ValueError("index must be >= 1")
    _extend_rats(i)
    return _rats[i - 1]


def pos_rat_at(j):
    """The j-th positive rational (1-based) in height order."""
    if j < 1:
        raise ValueError("index must be >= 1")
    while len(_pos_rats) < j:
        _extend_rats(len(_rats) + 256)
    return _pos_rats[j - 1]


def rat_index(fr):
    """Inverse of rat_at.  Exact, by counting smaller fractions."""
    fr = Fraction(fr)
    p, q = fr.numerator, fr.denominator
    h = max(abs(p), q)
    if h == 1:
        return {Fraction(-1): 1, Fraction(0): 2, Fraction(1): 3}[fr]
    n = sum(_count_height(hh) for hh in range(1, h))
    # within height h, order is (q, p)
    for qq in range(1, h + 1):
        lo, hi = (-h, h) if qq < h else (-(h - 1), h - 1)
        for pp in range(lo, hi + 1):
            if max(abs(pp), qq) != h or pp == 0 or gcd(abs(pp), qq) != 1:
                continue
            n += 1
            if pp == p and qq == q:
                return n
    raise AssertionError("fraction not found in its own height class")


def _count_height(h):
    if h == 1:
        return 3
    c = 0
    for q in range(1, h):
        if gcd(h, q) == 1:
            c += 2
    for p in range(1, h):
        if gcd(p, h) == 1:
            c += 2
    return c


# ---------------------------------------------------------------------------
# interval pairing: pairs (i, j) ordered by (i*j, i)

_pair_i = []
_pair_j = []


def _extend_pairs(upto):
    k = _pair_i[-1] * _pair_j[-1] if _pair_i else 0
    while len(_pair_i) < upto:
        k += 1
        r = isqrt(k)
        small = [d for d in range(1, r + 1) if k % d == 0]
        divs = small + [k // d for d in reversed(small) if d * d != k]
        for i in divs:
            _pair_i.append(i)
            _pair_j.append(k // i)


def interval_at(n):
    """The n-th open rational interval (left, right), n >= 1.

    A fixed bijection onto {(p, q) in Q^2 : p < q}.
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    _extend_pairs(n)
    left = rat_at(_pair_i[n - 1])
    return left, left + pos_rat_at(_pair_j[n - 1])


def intervals_upto(n):
    """Materialize intervals 1..n as a list of (left, right) pairs."""
    _extend_pairs(n)
    return [
        (rat_at(_pair_i[t]), rat_at(_pair_i[t]) + pos_rat_at(_pair_j[t]))
        for t in range(n)
    ]


def unit_rationals():
    """Enumerate Q intersected with the open interval (0, 1), height order.

    Height of p/q with 0 < p < q is q, so this is simply denominators
    ascending, coprime numerators ascending within each.
    """
    q = 2
    while True:
        for p in range(1, q):
            if gcd(p, q) == 1:
                yield Fraction(p, q)
        q += 1


def simplest_in(lo, hi):
    """Simplest rational (smallest denominator, then smallest |numerator|)
    in the closed interval [lo, hi].  Stern-Brocot style search."""
    lo = Fraction(lo)
    hi = Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    den = 1
    while True:
        # smallest numerator p with lo <= p/den <= hi
        p_min = -((-lo.numerator * den) // lo.denominator)  # ceil(lo*den)
        p_max = (hi.numerator * den) // hi.denominator  # floor(hi*den)
        if p_min <= p_max:
            cands = sorted(range(p_min, p_max + 1), key=lambda p: (abs(p), p))
            return Fraction(cands[0], den)
        den += 1

"""Measurable everywhere-surjective functions built on disjoint Cantor sets.

A fixed enumeration (I_n) of all open rational intervals drives a carver
that places a middle-thirds Cantor set C_n inside each I_n, refined into
removed-gap pieces of earlier sets until it is disjoint from all of them
as a *set* (the carrier intervals may nest; an interval enumeration hits
every sub-interval of every earlier carrier, so carrier disjointness is
unattainable -- each nesting instead carries an exact gap certificate).

Points of C_n are addressed by eventually periodic left/right digit
streams.  The bijection to the reals reads the stream as a binary value t
and applies tan(pi(t - 1/2)); the countably many boundary codes (the two
constant streams and the all-ones tails) are re-indexed against the
eventually-zero codes by an explicit interleaved shift so the map stays
injective with an inverse on every rational target.
"""

import math
import threading
from enum import Enum
from fractions import Fraction

from . import enumq
from . import expalg
from . import numkernel as nk
from .errors import BudgetExceeded, PrecisionError

_THIRD = Fraction(1, 3)


class Certainty(Enum):
    EXACT = "exact"
    ZERO_UP_TO_HORIZON = "zero-up-to-horizon"


def enumerate_interval(n):
    """The n-th open rational interval of the fixed bijection (left, right)."""
    return enumq.interval_at(n)


# ---------------------------------------------------------------------------
# middle-thirds geometry in carrier coordinates


def _ternary_walk(tau, max_steps=200_000):
    """Greedy left/right digits of a local coordinate in [0,1].

    Returns ("in", prefix, period) when tau lies in the middle-thirds set
    (the digit stream of a rational is eventually periodic, found by cycle
    detection) or ("gap", step_count) when the walk exits into a removed
    middle third.
    """
    t = Fraction(tau)
    if not 0 <= t <= 1:
        raise ValueError("local coordinate outside [0,1]")
    digits = []
    seen = {}
    while len(digits) <= max_steps:
        if t in seen:
            i = seen[t]
            return "in", tuple(digits[:i]), tuple(digits[i:])
        seen[t] = len(digits)
        t3 = 3 * t
        if t3 <= 1:
            digits.append(0)
            t = t3
        elif t3 >= 2:
            digits.append(1)
            t = t3 - 2
        else:
            return "gap", len(digits), None
    raise BudgetExceeded("ternary walk did not resolve", budget=max_steps)


def _cantor_hits(u, v, a, b):
    """Whether the middle-thirds set on [u,v] meets [a,b].  Exact.

    Runs on plain integers in carrier coordinates: the interval [A/D, B/D]
    is rescaled by 3 at every descent, so no rational arithmetic is needed.
    """
    a = max(a, u)
    b = min(b, v)
    if a > b:
        return False
    if a == b:
        tau = (a - u) / (v - u)
        return _ternary_walk(tau)[0] == "in"
    p, q, r = a - u, b - u, v - u
    x = p.denominator * q.denominator * r.denominator
    big_a = p.numerator * (x // p.denominator)
    big_b = q.numerator * (x // q.denominator)
    big_d = r.numerator * (x // r.denominator)
    while True:
        if big_a <= 0 or big_b >= big_d:
            return True  # component endpoints belong to the set
        a3, b3 = 3 * big_a, 3 * big_b
        if b3 <= big_d:
            big_a, big_b = a3, b3
        elif a3 >= 2 * big_d:
            big_a, big_b = a3 - 2 * big_d, b3 - 2 * big_d
        elif a3 <= big_d <= b3 or a3 <= 2 * big_d <= b3:
            return True  # a generation endpoint lies inside [a,b]
        else:
            return False  # [a,b] sits inside the open removed third


def _free_gap_piece(u, v, a, b):
    """An open sub-interval of (a,b) inside a removed gap of the set on [u,v].

    Requires [a,b] inside [u,v] with a < b.  Terminates because a positive
    length interval cannot fit inside arbitrarily deep components.
    """
    while True:
        d = (v - u) / 3
        g1, g2 = u + d, v - d
        lo, hi = max(a, g1), min(b, g2)
        if lo < hi:
            return lo, hi
        if b <= g1:
            v = g1
        elif a >= g2:
            u = g2
        else:  # pragma: no cover - excluded by the case analysis above
            raise AssertionError("unreachable descent state")


class CantorSet:
    """Middle-thirds Cantor set on a closed rational carrier interval."""

    __slots__ = ("index", "base")

    def __init__(self, index, base):
        u, v = Fraction(base[0]), Fraction(base[1])
        if u >= v:
            raise ValueError("degenerate carrier")
        self.index = index
        self.base = (u, v)

    def __repr__(self):
        return "CantorSet(%d, [%s, %s])" % (self.index, self.base[0], self.base[1])

    def length(self):
        return self.base[1] - self.base[0]

    def local(self, x):
        u, v = self.base
        return (Fraction(x) - u) / (v - u)

    def unlocal(self, tau):
        u, v = self.base
        return u + (v - u) * Fraction(tau)

    def contains_point(self, x):
        u, v = self.base
        x = Fraction(x)
        if not u <= x <= v:
            return False
        return _ternary_walk(self.local(x))[0] == "in"

    def digits_of(self, x):
        kind, prefix, period = _ternary_walk(self.local(x))
        if kind != "in":
            raise ValueError("point not in the set")
        return prefix, period

    def meets_interval(self, a, b):
        u, v = self.base
        return _cantor_hits(u, v, Fraction(a), Fraction(b))

    def generation_components(self, g):
        """The 2**g closed component intervals of generation g."""
        u, v = self.base
        comps = [(u, v)]
        for _ in range(g):
            nxt = []
            for lo, hi in comps:
                d = (hi - lo) / 3
                nxt.append((lo, lo + d))
                nxt.append((hi - d, hi))
            comps = nxt
        return comps

    def cover_length(self, g):
        """Exact total length of the generation-g cover: len * (2/3)**g."""
        return self.length() * Fraction(2, 3) ** g


# ---------------------------------------------------------------------------
# the carver


class CantorCarver:
    """Materializes the deterministic family C_1, C_2, ... on demand.

    Single-writer: extension is locked; readers may freely share any
    horizon snapshot.  For every pair k < n the carved sets are disjoint,
    witnessed either by disjoint carriers or by a recorded gap certificate
    (carrier of n inside an open removed gap of C_k).
    """

    _GRID = 4  # cells of width 1/4 for carrier overlap queries

    def __init__(self):
        self.sets = []
        self.certificates = {}  # n -> list of (k, gap_lo, gap_hi)
        self._cells = {}
        self._fb = []  # outward float carrier bounds, a sound prefilter
        self._lock = threading.Lock()

    def horizon(self):
        return len(self.sets)

    def extend_to(self, n):
        with self._lock:
            while len(self.sets) < n:
                self._carve_next()
        return self

    def set_at(self, k):
        if k < 1:
            raise ValueError("index must be >= 1")
        self.extend_to(k)
        return self.sets[k - 1]

    def _cells_of(self, lo, hi):
        first = (lo.numerator * self._GRID) // lo.denominator
        last = (hi.numerator * self._GRID) // hi.denominator
        return range(first, last + 1)

    def _overlapping(self, lo, hi):
        """Indices (ascending) of carved sets whose carrier meets [lo, hi]."""
        lof = math.nextafter(float(lo), -math.inf)
        hif = math.nextafter(float(hi), math.inf)
        out = set()
        for c in self._cells_of(lo, hi):
            out.update(self._cells.get(c, ()))
        hits = []
        for k in sorted(out):
            uo, vo = self._fb[k - 1]
            if hif < uo or vo < lof:  # certainly disjoint (outward floats)
                continue
            u, v = self.sets[k - 1].base
            if not (hi < u or v < lo):
                hits.append(k)
        return hits

    def _candidate_pool(self, lo, hi):
        out = set()
        for c in self._cells_of(lo, hi):
            out.update(self._cells.get(c, ()))
        return sorted(out)

    def _carve_next(self):
        n = len(self.sets) + 1
        left, right = enumq.interval_at(n)
        third = (right - left) / 3
        lo, hi = left + third, right - third
        certs = []
        cleared = set()
        # one pool query per carve: refinements only shrink the candidate,
        # so the pool stays complete; sets proven disjoint from the current
        # candidate stay disjoint forever and are cleared permanently
        pool = self._candidate_pool(lo, hi)
        for _ in range(n):  # at most n-1 refinements
            lof = math.nextafter(float(lo), -math.inf)
            hif = math.nextafter(float(hi), math.inf)
            hit = None
            for k in pool:
                if k in cleared:
                    continue
                uo, vo = self._fb[k - 1]
                if hif < uo or vo < lof:
                    continue  # certainly disjoint now; cheap skip, not final
                ck = self.sets[k - 1]
                u, v = ck.base
                a, b = max(lo, u), min(hi, v)
                if a > b:
                    cleared.add(k)
                    continue
                if a == b:
                    if ck.contains_point(a):
                        hit = (k, "point", a)
                        break
                    cleared.add(k)
                    continue
                if ck.meets_interval(a, b):
                    hit = (k, "interval", (a, b))
                    break
                cleared.add(k)
            if hit is None:
                break
            k, kind, payload = hit
            ck = self.sets[k - 1]
            if kind == "point":
                # carriers touch in a single set point: slide off it
                x = payload
                if hi == x:
                    hi = (lo + x) / 2
                else:
                    lo = (x + hi) / 2
            else:
                a, b = payload
                g1, g2 = _free_gap_piece(ck.base[0], ck.base[1], a, b)
                w = (g2 - g1) / 3
                lo, hi = g1 + w, g2 - w
                certs.append((k, g1, g2))
            cleared.add(k)
        else:
            raise AssertionError("carver exceeded its refinement bound")
        cs = CantorSet(n, (lo, hi))
        self.sets.append(cs)
        self._fb.append(
            (math.nextafter(float(lo), -math.inf), math.nextafter(float(hi), math.inf))
        )
        if certs:
            self.certificates[n] = certs
        for c in self._cells_of(lo, hi):
            self._cells.setdefault(c, []).append(n)

    def disjointness_evidence(self, k, n):
        """Exact certificate that C_k and C_n are disjoint (k < n).

        Either the carriers are disjoint intervals, or the carrier of n
        avoids C_k entirely (re-checked from scratch, not from the stored
        certificate).
        """
        if not 1 <= k < n <= len(self.sets):
            raise ValueError("need carved indices k < n")
        (uk, vk) = self.sets[k - 1].base
        (un, vn) = self.sets[n - 1].base
        if vn < uk or vk < un:
            return "carriers-disjoint"
        if not self.sets[k - 1].meets_interval(un, vn):
            return "carrier-in-gap"
        return None


_shared_carver = CantorCarver()


def shared_carver():
    return _shared_carver


def carve(n, carver=None):
    """The n-th carved Cantor set of the shared deterministic family."""
    c = carver or _shared_carver
    return c.set_at(n)


# ---------------------------------------------------------------------------
# addresses


class CantorAddress:
    """(set index, digit stream) with an eventually periodic stream.

    Canonical form: the period is primitive, the prefix does not end with
    the period's last digit, and all-ones tails are excluded except the
    designated right endpoint (the corresponding points are re-indexed by
    the boundary shift instead).
    """

    __slots__ = ("set_index", "prefix", "period")

    def __init__(self, set_index, prefix, period, _internal=False):
        if set_index < 1:
            raise ValueError("set index must be >= 1")
        prefix, period = _canonical_code(prefix, period)
        if not _internal and period == (1,) and prefix:
            raise ValueError("non-canonical address: all-ones tail")
        self.set_index = set_index
        self.prefix = prefix
        self.period = period

    def __repr__(self):
        return "CantorAddress(C_%d, %s|%s...)" % (
            self.set_index,
            "".join(map(str, self.prefix)),
            "".join(map(str, self.period)),
        )

    def __eq__(self, other):
        return (
            isinstance(other, CantorAddress)
            and self.set_index == other.set_index
            and self.prefix == other.prefix
            and self.period == other.period
        )

    def __hash__(self):
        return hash((self.set_index, self.prefix, self.period))

    def binary_value(self):
        """The stream read as a binary expansion: an exact rational in [0,1]."""
        return _code_binary_value(self.prefix, self.period)

    def local_point(self):
        """The stream read as a middle-thirds path: local coordinate in [0,1]."""
        p, per = self.prefix, self.period
        np_, l = len(p), len(per)
        val = sum(2 * d * Fraction(1, 3) ** (i + 1) for i, d in enumerate(p))
        pv = sum(2 * d * Fraction(1, 3) ** (j + 1) for j, d in enumerate(per))
        val += Fraction(1, 3) ** np_ * pv * Fraction(3 ** l, 3 ** l - 1)
        return val

    def digit(self, i):
        """0-based digit of the stream."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]


def _canonical_code(prefix, period):
    prefix = tuple(int(d) for d in prefix)
    period = tuple(int(d) for d in period)
    if not period:
        raise ValueError("empty period")
    if any(d not in (0, 1) for d in prefix + period):
        raise ValueError("digits must be 0 or 1")
    l = len(period)
    for d in range(1, l + 1):
        if l % d == 0 and period[:d] * (l // d) == period:
            period = period[:d]
            break
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1],) + period[:-1]
    return prefix, period


def _code_binary_value(prefix, period):
    np_, l = len(prefix), len(period)
    val = sum(d * Fraction(1, 2) ** (i + 1) for i, d in enumerate(prefix))
    pv = sum(d * Fraction(1, 2) ** (j + 1) for j, d in enumerate(period))
    val += Fraction(1, 2) ** np_ * pv * Fraction(2 ** l, 2 ** l - 1)
    return val


# ---------------------------------------------------------------------------
# the bijection to the reals

# dyadics other than 1/2, breadth-first: 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ...


def _dyadic_at(j):
    if j < 1:
        raise ValueError("index must be >= 1")
    k = 2
    while (1 << k) - 2 < j:
        k += 1
    offset = j - ((1 << (k - 1)) - 2)
    return Fraction(2 * offset - 1, 1 << k)


def _dyadic_index(t):
    num, den = t.numerator, t.denominator
    k = den.bit_length() - 1
    if den != (1 << k) or k < 2:
        raise ValueError("not an admissible dyadic")
    return ((1 << (k - 1)) - 2) + (num + 1) // 2


def _anomalous_index(prefix):
    # prefixes end in 0; order by (length, binary value)
    l = len(prefix)
    val = int("".join(map(str, prefix)), 2) if prefix else 0
    return ((1 << (l - 1)) - 1) + val // 2 + 1


def _tanval(t, precision):
    """tan(pi (t - 1/2)) for rational t in (0,1), escalating as needed."""
    t = Fraction(t)
    p = precision
    for _ in range(12):
        try:
            ang = nk.enclose_pi(p + 16).scale(t - Fraction(1, 2))
            return nk.enclose_tan(ang, p)
        except PrecisionError:
            p *= 2
    raise PrecisionError("tan evaluation stalled at t=%s" % t)


def _code_value(prefix, period, precision):
    """The re-indexed bijection value of a digit stream (any stream)."""
    if period == (0,):
        if not prefix:
            return nk.exact(-1, precision)  # sigma_1 -> tan at 1/4
        if prefix == (1,):
            return nk.exact(0, precision)  # the fixed center code
        t = _code_binary_value(prefix, period)
        return _tanval(_dyadic_at(2 * _dyadic_index(t)), precision)
    if period == (1,):
        if not prefix:
            return _tanval(_dyadic_at(3), precision)  # sigma_2, designated
        i = 2 + _anomalous_index(prefix)
        return _tanval(_dyadic_at(2 * i - 1), precision)
    return _tanval(_code_binary_value(prefix, period), precision)


def phi_map(address, precision=nk.DEFAULT_PRECISION):
    """Value of the set's bijection to the reals at a canonical address."""
    return _code_value(address.prefix, address.period, precision)


def phi_inverse(n, y, precision=nk.DEFAULT_PRECISION):
    """A canonical address of C_n whose bijection value encloses y.

    Rational y values hit the re-indexed codes exactly for y in {0, 1, -1};
    any other rational target has an irrational preimage coordinate, which
    is approximated by a (1,0)-periodic code to within the precision budget.
    """
    y = Fraction(y)
    if y == 0:
        return CantorAddress(n, (1,), (0,))
    if y == -1:
        return CantorAddress(n, (), (0,))
    if y == 1:
        return CantorAddress(n, (0, 1), (0,))
    d = max(80, precision // 2 + 40)
    w = d + 40
    for _ in range(8):
        pi = nk.enclose_pi(w)
        tstar = nk.atan_of_rat(y, w) / pi
        tstar = tstar.shift(Fraction(1, 2))
        lo = tstar.lower()
        if tstar.rad_fraction() < Fraction(1, 1 << (d + 6)):
            m = (lo.numerator << d) // lo.denominator
            bits = tuple((m >> (d - 1 - i)) & 1 for i in range(d))
            return CantorAddress(n, bits, (1, 0))
        w *= 2
    raise PrecisionError("could not stabilize the inverse coordinate")


def address_to_point(address, precision=nk.DEFAULT_PRECISION, carver=None):
    """Enclosure of the point of C_n the address names (it is exact)."""
    return nk.exact(address_point(address, carver), precision)


def address_point(address, carver=None):
    """The named point as an exact rational."""
    cs = carve(address.set_index, carver)
    return cs.unlocal(address.local_point())


# ---------------------------------------------------------------------------
# the measurable everywhere-surjective function


class MesFunction:
    """f(x) = phi_n(x) on C_n, zero elsewhere, evaluated to a finite horizon.

    Membership in the union of all C_n is not decidable from finitely many
    carved sets, so evaluation reports ZERO_UP_TO_HORIZON for points missing
    every materialized set; every theorem-level check only needs finitely
    many of them.  Instances with equal horizons agree everywhere.
    """

    __slots__ = ("horizon_n", "carver")

    def __init__(self, horizon, carver=None):
        self.carver = carver or _shared_carver
        self.carver.extend_to(horizon)
        self.horizon_n = horizon

    def eval(self, x, precision=nk.DEFAULT_PRECISION):
        """(enclosure, certainty) of f at an exact rational point."""
        x = Fraction(x)
        # the carver grid returns every carved set whose carrier contains x
        for k in self.carver._overlapping(x, x):
            if k > self.horizon_n:
                continue
            cs = self.carver.sets[k - 1]
            u, v = cs.base
            if u <= x <= v:
                kind, prefix, period = _ternary_walk(cs.local(x))
                if kind == "in":
                    val = _code_value(prefix, period, precision)
                    return val, Certainty.EXACT
        return nk.exact(0, precision), Certainty.ZERO_UP_TO_HORIZON


def mes_eval(f, x, precision=nk.DEFAULT_PRECISION):
    return f.eval(x, precision)


_interval_cache = []


def _interval_table(upto):
    while len(_interval_cache) < upto:
        n = len(_interval_cache) + 1
        left, right = enumq.interval_at(n)
        _interval_cache.append((left, right, float(left), float(right)))
    return _interval_cache


def find_subinterval_index(interval, scan_budget=2_000_000):
    """Least k with I_k inside the given open interval."""
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if a >= b:
        raise ValueError("empty interval")
    af, bf = float(a), float(b)
    chunk = 4096
    n = 0
    while n < scan_budget:
        table = _interval_table(min(n + chunk, scan_budget))
        for k in range(n, len(table)):
            left, right, lf, rf = table[k]
            if lf >= af - 1e-9 and rf <= bf + 1e-9:  # float prefilter
                if left >= a and right <= b:
                    return k + 1
        n = len(table)
        chunk *= 2
    raise BudgetExceeded(
        "no enumerated subinterval found", budget=scan_budget, last_tried=n
    )


class Witness:
    """A verified everywhere-surjectivity record."""

    __slots__ = (
        "interval",
        "target",
        "set_index",
        "address",
        "point",
        "value",
    )

    def __init__(self, interval, target, set_index, address, point, value):
        self.interval = interval
        self.target = target
        self.set_index = set_index
        self.address = address
        self.point = point
        self.value = value

    def verified(self, tolerance=Fraction(1, 1 << 40)):
        a, b = self.interval
        if not a < self.point < b:
            return False
        err = abs(self.value.mid_fraction() - self.target) + self.value.rad_fraction()
        return err <= tolerance

    def to_record(self, digits=40):
        return {
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "target": str(self.target),
            "set_index": self.set_index,
            "address_prefix": "".join(str(self.address.digit(i)) for i in range(digits)),
            "verified_value": _dec(self.value.mid_fraction(), 30),
            "radius": _dec(self.value.rad_fraction(), 45),
        }


def _dec(fr, places):
    sign = "-" if fr < 0 else ""
    fr = abs(Fraction(fr))
    scaled = (fr * 10 ** places).__floor__()
    whole, frac = divmod(scaled, 10 ** places)
    return "%s%d.%0*d" % (sign, whole, places, frac)


def surjectivity_witness(
    f, interval, y, precision=nk.DEFAULT_PRECISION, scan_budget=2_000_000
):
    """A verified point of the interval where f attains (an enclosure of) y.

    Scans the enumeration for the first I_k inside the interval, extends the
    carver to k, and round-trips y through the bijection of C_k.
    """
    y = Fraction(y)
    k = find_subinterval_index(interval, scan_budget)
    f.carver.extend_to(k)
    addr = phi_inverse(k, y, precision)
    point = address_point(addr, f.carver)
    horizon = max(f.horizon_n, k)
    val, certainty = MesFunction(horizon, f.carver).eval(point, precision)
    if certainty is not Certainty.EXACT:
        raise AssertionError("witness point escaped its own Cantor set")
    return Witness((Fraction(interval[0]), Fraction(interval[1])), y, k, addr, point, val)


def lineable_eval(g, f, x, precision=nk.DEFAULT_PRECISION):
    """(g o f)(x) with the horizon certainty of the inner evaluation."""
    inner, certainty = f.eval(x, precision)
    return expalg.eval_expsum_enclosure(g, inner, precision), certainty


def lineable_witness(g, f, interval, y, precision=nk.DEFAULT_PRECISION):
    """A verified witness that g o f attains y inside the interval.

    Solves g(z) = y first (g is surjective: opposite tails), then produces
    a surjectivity witness for z and re-verifies the composition.
    """
    if g.is_zero():
        raise ValueError("zero function cannot witness surjectivity")
    z = expalg.solve_value(g, Fraction(y), max(64, precision // 2))
    z_mid = z.mid_fraction()
    wit = surjectivity_witness(f, interval, z_mid, precision)
    comp = expalg.eval_expsum_enclosure(g, wit.value, precision)
    return wit, comp


class SequenceMember:
    """h_n = h/n for h = g o f; scaling an enclosure by 1/n is exact."""

    __slots__ = ("g", "f", "n")

    def __init__(self, g, f, n):
        if n < 1:
            raise ValueError("member index must be >= 1")
        self.g = g
        self.f = f
        self.n = n

    def eval(self, x, precision=nk.DEFAULT_PRECISION):
        val, certainty = lineable_eval(self.g, self.f, x, precision)
        return val.scale(Fraction(1, self.n)), certainty

    def witness(self, interval, y, precision=nk.DEFAULT_PRECISION):
        """Surjectivity of h/n: route the scaled target through h."""
        wit, comp = lineable_witness(
            self.g, self.f, interval, Fraction(y) * self.n, precision
        )
        return wit, comp.scale(Fraction(1, self.n))


def sequence_member(g, f, n):
    return SequenceMember(g, f, n)


__all__ = [
    "Certainty",
    "enumerate_interval",
    "CantorSet",
    "CantorCarver",
    "shared_carver",
    "carve",
    "CantorAddress",
    "phi_map",
    "phi_inverse",
    "address_to_point",
    "address_point",
    "MesFunction",
    "mes_eval",
    "find_subinterval_index",
    "surjectivity_witness",
    "Witness",
    "lineable_eval",
    "lineable_witness",
    "SequenceMember",
    "sequence_member",
]

"""Exact step-function calculus on [0,1] and the typewriter family.

Step functions are finite partitions of [0,1] into half-open rational cells
[a, b) (the last cell closed at 1), constant on each cell.  Functions equal
almost everywhere are identified by this canonicalization: closed-interval
indicators lose only finitely many points, which is invisible to every
integral computed here.  All arithmetic is exact.
"""

from fractions import Fraction

from .errors import WindowViolation

_ZERO = Fraction(0)
_ONE = Fraction(1)


class StepFunction:
    """Canonical piecewise-constant function on [0,1].

    ``cells`` is a tuple of (left, value); cell i spans [left_i, left_{i+1})
    and the last cell spans [left_k, 1].  Lefts start at 0 and increase.
    """

    __slots__ = ("cells",)

    def __init__(self, cells):
        cleaned = []
        prev_left = None
        for left, value in cells:
            left = Fraction(left)
            value = Fraction(value)
            if prev_left is not None and left <= prev_left:
                raise ValueError("cell boundaries must increase")
            if prev_left is None and left != 0:
                raise ValueError("first cell must start at 0")
            if left >= 1:
                raise ValueError("cell beyond the unit interval")
            if cleaned and cleaned[-1][1] == value:
                prev_left = left
                continue  # merge equal neighbours
            cleaned.append((left, value))
            prev_left = left
        if not cleaned:
            raise ValueError("empty cell list")
        self.cells = tuple(cleaned)

    def __repr__(self):
        return "StepFunction(%s)" % (list(self.cells),)

    def __eq__(self, other):
        return isinstance(other, StepFunction) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def constant(v):
        return StepFunction([(0, v)])

    @staticmethod
    def indicator(a, b):
        """Indicator of [a,b) clipped to [0,1]; empty support gives 0."""
        a = max(Fraction(a), _ZERO)
        b = min(Fraction(b), _ONE)
        if a >= b:
            return STEP_ZERO
        cells = []
        if a > 0:
            cells.append((_ZERO, _ZERO))
        cells.append((a, _ONE))
        if b < 1:
            cells.append((b, _ZERO))
        return StepFunction(cells)

    # -- evaluation and measure ----------------------------------------------

    def value_at(self, x):
        x = Fraction(x)
        if not _ZERO <= x <= _ONE:
            raise ValueError("point outside [0,1]")
        out = self.cells[0][1]
        for left, value in self.cells:
            if left <= x:
                out = value
            else:
                break
        return out

    def breaks(self):
        return [left for left, _ in self.cells] + [_ONE]

    def pieces(self):
        """Iterate (left, right, value) with exact endpoints."""
        bs = self.breaks()
        for i, (left, value) in enumerate(self.cells):
            yield left, bs[i + 1], value

    def integral(self):
        return sum((r - l) * v for l, r, v in self.pieces())

    def max_abs(self):
        return max(abs(v) for _, v in self.cells)

    # -- pointwise algebra -----------------------------------------------------

    def _zip(self, other, op):
        lefts = sorted({l for l, _ in self.cells} | {l for l, _ in other.cells})
        cells = [(l, op(self.value_at(l), other.value_at(l))) for l in lefts]
        return StepFunction(cells)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    def __neg__(self):
        return StepFunction([(l, -v) for l, v in self.cells])

    def scale(self, c):
        c = Fraction(c)
        return StepFunction([(l, c * v) for l, v in self.cells])

    def abs(self):
        return StepFunction([(l, abs(v)) for l, v in self.cells])


STEP_ZERO = StepFunction([(0, 0)])


def rho(f, g):
    """The convergence-in-measure metric: integral of |f-g|/(1+|f-g|).

    The integrand is constant on each cell of the common refinement, so the
    value is an exact rational.
    """
    d = (f - g).abs()
    return sum((r - l) * v / (1 + v) for l, r, v in d.pieces())


def measure_exceed(f, alpha):
    """Lebesgue measure of {x : |f(x)| > alpha}, exact."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return sum((r - l) for l, r, v in f.pieces() if abs(v) > alpha)


# ---------------------------------------------------------------------------
# typewriter sequences


class TypewriterIndex:
    """n = 2**k + j with 0 <= j < 2**k; the unique dyadic decomposition."""

    __slots__ = ("n", "k", "j")

    def __init__(self, n):
        if n < 1:
            raise ValueError("index must be >= 1")
        self.n = n
        self.k = n.bit_length() - 1
        self.j = n - (1 << self.k)

    def support(self):
        k, j = self.k, self.j
        return Fraction(j, 1 << k), Fraction(j + 1, 1 << k)


def typewriter(n):
    """The n-th typewriter indicator: 1 on [j 2^-k, (j+1) 2^-k)."""
    a, b = TypewriterIndex(n).support()
    return StepFunction.indicator(a, b)


def translate_dilate(n, t):
    """T_n(2(x - t)) as a step function on [0,1], exact endpoints.

    Requires 0 < t < 1/2, which keeps supports inside [0,1] before clipping.
    """
    t = Fraction(t)
    if not _ZERO < t < Fraction(1, 2):
        raise ValueError("shift must lie in (0, 1/2)")
    a, b = TypewriterIndex(n).support()
    return StepFunction.indicator(t + a / 2, t + b / 2)


class TDCombo:
    """Linear combination sum(c_v * T_{n, t_v}) with increasing shifts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = [(Fraction(c), Fraction(t)) for c, t in parts]
        if not parts:
            raise ValueError("empty combination")
        shifts = [t for _, t in parts]
        if sorted(shifts) != shifts or len(set(shifts)) != len(shifts):
            raise ValueError("shifts must be strictly increasing")
        if any(c == 0 for c, _ in parts):
            raise ValueError("zero coefficient")
        if not all(_ZERO < t < Fraction(1, 2) for t in shifts):
            raise ValueError("shifts must lie in (0, 1/2)")
        self.parts = tuple(parts)

    def member(self, n):
        out = STEP_ZERO
        for c, t in self.parts:
            out = out + translate_dilate(n, t).scale(c)
        return out

    def window(self):
        """The interval where F_n(x) = c_s T_n(2(x - t_s)): open-left, closed-right."""
        ts = self.parts[-1][1]
        lo = ts if len(self.parts) == 1 else max(ts, self.parts[-2][1] + Fraction(1, 2))
        return lo, ts + Fraction(1, 2)


def in_measure_report(combo, n_max, alphas):
    """Exact (n, alpha, measure) table for the exceedance sets of F_n."""
    rows = []
    for n in range(1, n_max + 1):
        f = combo.member(n)
        for alpha in alphas:
            rows.append((n, Fraction(alpha), measure_exceed(f, alpha)))
    return rows


def nonconvergence_witness(combo, x0, horizon):
    """Indices per generation where (F_n(x0)) attains c_s and 0.

    Valid only strictly inside the combo's window, where the last translate
    is the only one contributing; every generation k >= 1 has one cell
    covering x0 and another missing it, so the gap |c_s| repeats forever.
    The window's right endpoint is excluded: half-open cells drop it, and
    the ambient space identifies functions equal almost everywhere.
    """
    x0 = Fraction(x0)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    lo, hi = combo.window()
    if not lo < x0 < hi:
        raise WindowViolation("x0 outside the single-translate window", window=(lo, hi))
    cs, ts = combo.parts[-1]
    y0 = 2 * (x0 - ts)  # in (0, 1)
    witnesses = []
    for k in range(1, horizon + 1):
        cells = 1 << k
        j_hit = (y0 * cells).__floor__()
        j_miss = 0 if j_hit != 0 else 1
        n_hit = cells + j_hit
        n_miss = cells + j_miss
        v_hit = combo.member(n_hit).value_at(x0)
        v_miss = combo.member(n_miss).value_at(x0)
        assert v_hit == cs and v_miss == 0
        witnesses.append((n_hit, n_miss, abs(cs)))
    return witnesses


def independence_check_td(shifts):
    """Certificate that the translated-dilated families are independent.

    Returns (separating interval at the top shift, sample points, exact
    determinant of the evaluation matrix of {T_{1,t}} at those points).
    """
    shifts = [Fraction(t) for t in shifts]
    if sorted(shifts) != shifts or len(set(shifts)) != len(shifts):
        raise ValueError("shifts must be strictly increasing")
    if not all(_ZERO < t < Fraction(1, 2) for t in shifts):
        raise ValueError("shifts must lie in (0, 1/2)")
    s = len(shifts)
    half = Fraction(1, 2)
    top_lo = shifts[-1] if s == 1 else max(shifts[-1], shifts[-2] + half)
    top_hi = shifts[-1] + half
    assert top_lo < top_hi  # nonempty because shifts are distinct and < 1/2
    samples = []
    for i in range(s):
        lo = shifts[i] if i == 0 else max(shifts[i], shifts[i - 1] + half)
        hi = shifts[i] + half
        samples.append(min((lo + hi) / 2, _ONE))
    fns = [StepFunction.indicator(t, t + half) for t in shifts]
    matrix = [[fns[v].value_at(p) for v in range(s)] for p in samples]
    det = _det(matrix)
    return (top_lo, top_hi), samples, det


def _det(m):
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


__all__ = [
    "StepFunction",
    "STEP_ZERO",
    "rho",
    "measure_exceed",
    "TypewriterIndex",
    "typewriter",
    "translate_dilate",
    "TDCombo",
    "in_measure_report",
    "nonconvergence_witness",
    "independence_check_td",
]

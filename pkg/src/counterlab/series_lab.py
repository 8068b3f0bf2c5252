"""Series families defeating the ratio and root tests, and weighted-c0 work.

Everything a term can be is an exact positive rational, so ratio statistics,
partial sums, block sums and norms are exact.  Divergence is never decided,
only witnessed: every claim ships as an explicit index pair or block whose
sum is verified to exceed the target.
"""

from fractions import Fraction
from math import gcd

from . import numkernel as nk
from .errors import BudgetExceeded

GEOMETRIC_SKEWED = "geometric-skewed"
RATIO_FAIL_CONV = "ratio-fail-conv"
ROOT_FAIL_CONV = "root-fail-conv"
RATIO_FAIL_DIV = "ratio-fail-div"
ROOT_FAIL_DIV = "root-fail-div"

_RATIO_KINDS = (RATIO_FAIL_CONV, RATIO_FAIL_DIV)
_ROOT_KINDS = (ROOT_FAIL_CONV, ROOT_FAIL_DIV)


class ZeroTermEncountered(ArithmeticError):
    def __init__(self, index):
        super().__init__("term %d is zero; ratio undefined" % index)
        self.index = index


class SeqFamily:
    """One named positive sequence.

    kind selects the formula; s parametrizes it (rational s > 1 for the
    ratio kinds, integer s >= 1 for the root kinds so terms stay rational).
    """

    __slots__ = ("kind", "s")

    def __init__(self, kind, s=None):
        if kind == GEOMETRIC_SKEWED:
            if s is not None:
                raise ValueError("geometric-skewed takes no parameter")
        elif kind in _RATIO_KINDS:
            s = Fraction(s)
            if s <= 1:
                raise ValueError("ratio kinds need rational s > 1")
        elif kind in _ROOT_KINDS:
            if s != int(s) or int(s) < 1:
                raise ValueError("root kinds need integer s >= 1 for exact terms")
            s = int(s)
        else:
            raise ValueError("unknown kind %r" % kind)
        self.kind = kind
        self.s = s

    def __repr__(self):
        return "SeqFamily(%s, s=%s)" % (self.kind, self.s)

    def term(self, n):
        if n < 1:
            raise ValueError("index must be >= 1")
        sign = -1 if n % 2 else 1  # (-1)**n
        if self.kind == GEOMETRIC_SKEWED:
            return Fraction(2) ** (-n + sign)
        if self.kind == RATIO_FAIL_CONV:
            return (n * self.s) ** (-n + sign)
        if self.kind == RATIO_FAIL_DIV:
            return (n * self.s) ** (n + sign)
        if self.kind == ROOT_FAIL_CONV:
            return Fraction(1, n ** self.s)
        return Fraction(n ** self.s)

    def is_divergent_kind(self):
        return self.kind in (RATIO_FAIL_DIV, ROOT_FAIL_DIV)


class LinearCombo:
    """sum_j alpha_j * a(n, s_j) over one ratio-test kind, s strictly decreasing."""

    __slots__ = ("kind", "parts")

    def __init__(self, kind, parts):
        if kind not in _RATIO_KINDS:
            raise ValueError("linear combos are built over the ratio kinds")
        parts = [(Fraction(a), Fraction(s)) for a, s in parts]
        if not parts:
            raise ValueError("empty combination")
        ss = [s for _, s in parts]
        if sorted(ss, reverse=True) != ss or len(set(ss)) != len(ss):
            raise ValueError("parameters must be strictly decreasing")
        if any(a == 0 for a, _ in parts):
            raise ValueError("zero coefficient")
        if any(s <= 1 for _, s in parts):
            raise ValueError("parameters must exceed 1")
        self.kind = kind
        self.parts = tuple(parts)

    def __repr__(self):
        return "LinearCombo(%s, %s)" % (self.kind, list(self.parts))

    def term(self, n):
        if n < 1:
            raise ValueError("index must be >= 1")
        sign = -1 if n % 2 else 1
        out = Fraction(0)
        for a, s in self.parts:
            e = (-n + sign) if self.kind == RATIO_FAIL_CONV else (n + sign)
            out += a * (n * s) ** e
        return out

    def dominant(self):
        """(alpha, s) of the asymptotically dominant family."""
        return self.parts[-1] if self.kind == RATIO_FAIL_CONV else self.parts[0]


def term(x, n):
    """Exact term of a family or combo."""
    return x.term(n)


def ratio_stats(x, n_max):
    """Exact extremes of |x_{n+1}/x_n| over n <= n_max.

    Returns (minimum, maximum, argmins, argmaxes); zero terms abort with
    the offending index.
    """
    best_min = best_max = None
    argmins = []
    argmaxes = []
    prev = x.term(1)
    for n in range(1, n_max + 1):
        if prev == 0:
            raise ZeroTermEncountered(n)
        cur = x.term(n + 1)
        r = abs(cur / prev)
        if best_min is None or r < best_min:
            best_min, argmins = r, [n]
        elif r == best_min:
            argmins.append(n)
        if best_max is None or r > best_max:
            best_max, argmaxes = r, [n]
        elif r == best_max:
            argmaxes.append(n)
        prev = cur
    if prev == 0:
        raise ZeroTermEncountered(n_max + 1)
    return best_min, best_max, argmins, argmaxes


_EXACT_RATIO_CUTOFF = 2048


def _term_enclosure(x, n, prec):
    sign = -1 if n % 2 else 1
    if isinstance(x, SeqFamily):
        return nk.exact(x.term(n), prec)
    acc = None
    for a, s in x.parts:
        e = (-n + sign) if x.kind == RATIO_FAIL_CONV else (n + sign)
        t = nk.exact(n * s, prec).pow_int(e).scale(a)
        acc = t if acc is None else acc + t
    return acc


def _enc_abs(e):
    lo, hi = e.lower_dy(), e.upper_dy()
    if lo.man >= 0:
        return e
    if hi.man <= 0:
        return -e
    m = max(-lo, hi)
    return nk.Enclosure.from_bounds_dy(nk.D_ZERO, m, e.prec)


def _certified_ratio_side(x, n, M, want_large, prec=96):
    """True iff |x_{n+1}/x_n| >= M (or <= 1/M) is certified at index n."""
    if n <= _EXACT_RATIO_CUTOFF:
        a = x.term(n)
        b = x.term(n + 1)
        if a == 0:
            return False
        r = abs(b / a)
        return r >= M if want_large else r <= 1 / Fraction(M)
    a = _enc_abs(_term_enclosure(x, n, prec))
    b = _enc_abs(_term_enclosure(x, n + 1, prec))
    if want_large:
        # |b| >= M * |a|, via certified bounds
        return nk.compare(a.scale(M), b) is nk.Order.CERTAINLY_LESS
    return nk.compare(b.scale(M), a) is nk.Order.CERTAINLY_LESS


def ratio_certificate(x, M, eval_budget=10_000):
    """Indices witnessing limsup |x_{n+1}/x_n| = inf and liminf = 0.

    Returns (n_odd, n_even) with the odd-index ratio certified >= M and the
    even-index ratio certified <= 1/M.  The parity asymmetry of the family
    guides the search; candidates start at the analytic estimate and double
    until certified.  Verification is exact rational arithmetic for indices
    up to a few thousand and certified enclosures beyond.
    """
    M = Fraction(M)
    if M <= 0:
        raise ValueError("M must be positive")
    if isinstance(x, SeqFamily):
        if x.kind not in _RATIO_KINDS:
            raise ValueError("ratio certificate needs a ratio-test family")
        kind, s_dom = x.kind, x.s
    else:
        kind, (_, s_dom) = x.kind, x.dominant()
    evals = 0

    def search(start, want_large):
        nonlocal evals
        n = max(2, int(start))
        while True:
            cand = n if (n % 2 == 1) == want_large else n + 1
            evals += 1
            if evals > eval_budget:
                raise BudgetExceeded(
                    "ratio certificate budget exhausted",
                    budget=eval_budget,
                    last_tried=cand,
                )
            if _certified_ratio_side(x, cand, M, want_large):
                return cand
            n = 2 * n + 2

    mf = float(M)
    sf = float(s_dom)
    if kind == RATIO_FAIL_CONV:
        n_odd = search(3.0 * mf / sf, want_large=True)
        n_even = search(0.8 * (mf / sf ** 3) ** (1.0 / 3.0), want_large=False)
    else:
        n_odd = search(0.8 * mf ** (1.0 / 3.0) / sf, want_large=True)
        n_even = search(3.0 * mf / sf, want_large=False)
    return n_odd, n_even


def root_stats(x, n_max, precision=96):
    """Enclosures of the extreme n-th roots |x_n|**(1/n) for n <= n_max."""
    best_min = best_max = None
    argmin = argmax = None
    for n in range(1, n_max + 1):
        t = abs(x.term(n))
        root = (
            nk.Enclosure(nk.D_ZERO, nk.D_ZERO, precision)
            if t == 0
            else nk.nth_root_of_rat(t, n, precision)
        )
        if best_min is None or root.upper() < best_min.upper():
            best_min, argmin = root, n
        if best_max is None or root.lower() > best_max.lower():
            best_max, argmax = root, n
    return best_min, best_max, argmin, argmax


def partial_sums(x, n_upto):
    """Exact prefix sum of the first n_upto terms."""
    return sum((x.term(n) for n in range(1, n_upto + 1)), Fraction(0))


class SingularSample(ValueError):
    """The sampled index matrix was singular; retry with other indices."""

    def __init__(self, indices):
        super().__init__(
            "sample matrix singular at indices %s; retry with other indices"
            % (indices,)
        )
        self.indices = indices


def independence_certificate_series(params, indices, kind=RATIO_FAIL_CONV):
    """Exact nonsingularity of [a(n_i, s_j)] as linear-independence evidence.

    Returns the nonzero determinant; a singular sample raises with a retry
    suggestion and never claims dependence.
    """
    params = [Fraction(s) for s in params]
    if len(params) < 2:
        raise ValueError("need at least two parameters")
    if len(set(params)) != len(params):
        raise ValueError("parameters must be distinct")
    if len(indices) != len(params):
        raise ValueError("need as many sample indices as parameters")
    fams = [SeqFamily(kind, s) for s in params]
    matrix = [[f.term(n) for f in fams] for n in indices]
    det = _det(matrix)
    if det == 0:
        raise SingularSample(tuple(indices))
    return det


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


# ---------------------------------------------------------------------------
# weighted c0((c_n)) and block machinery


HARMONIC = "harmonic"
CONSTANT = "constant"
TABLE = "table"


class WeightedSpace:
    """Positive weights c_n; the norm of a sequence is sup |x_n / c_n|."""

    __slots__ = ("kind", "table")

    def __init__(self, kind, table=None):
        if kind not in (HARMONIC, CONSTANT, TABLE):
            raise ValueError("unknown weight kind %r" % kind)
        if kind == TABLE:
            table = tuple(Fraction(c) for c in table)
            if not table or any(c <= 0 for c in table):
                raise ValueError("table weights must be positive")
        self.kind = kind
        self.table = table

    def weight(self, n):
        if n < 1:
            raise ValueError("index must be >= 1")
        if self.kind == HARMONIC:
            return Fraction(1, n)
        if self.kind == CONSTANT:
            return Fraction(1)
        if n > len(self.table):
            raise BudgetExceeded(
                "weight table exhausted", budget=len(self.table), last_tried=n
            )
        return self.table[n - 1]

    def norm_of_support(self, supported):
        """sup |x_j / c_j| over a finitely-supported {index: value} map."""
        return max(
            (abs(v) / self.weight(j) for j, v in supported.items()),
            default=Fraction(0),
        )


class BlockPartition:
    """Minimal cuts 1 = n_0 < n_1 < ... with block-k weight sum > k."""

    __slots__ = ("space", "cuts", "block_sums")

    def __init__(self, space, cuts, block_sums):
        self.space = space
        self.cuts = tuple(cuts)
        self.block_sums = tuple(block_sums)

    def blocks(self):
        return len(self.cuts) - 1

    def block_range(self, k):
        """Indices of block k as (first, last), inclusive."""
        if not 1 <= k <= self.blocks():
            raise ValueError("block %d not materialized; extend first" % k)
        return self.cuts[k - 1] + 1, self.cuts[k]

    def block_of(self, j):
        if j <= self.cuts[0]:
            raise ValueError("index %d precedes the first block" % j)
        for k in range(1, self.blocks() + 1):
            if j <= self.cuts[k]:
                return k
        raise ValueError("index %d beyond materialized blocks; extend first" % j)


def build_blocks(space, blocks, scan_budget=5_000_000):
    """Materialize the minimal block partition with block sums exceeding k.

    Each n_k is the least index whose block sum exceeds k; the running sums
    are kept as an unreduced numerator over a running lcm so harmonic sums
    stay cheap.
    """
    cuts = [1]
    block_sums = []
    num, den = 0, 1  # running block sum as num/den, den a running lcm
    k = 1
    steps = 0
    j = 1
    while k <= blocks:
        j += 1
        steps += 1
        if steps > scan_budget:
            raise BudgetExceeded(
                "block scan budget exhausted", budget=scan_budget, last_tried=j
            )
        c = space.weight(j)
        new_den = den * c.denominator // gcd(den, c.denominator)
        num = num * (new_den // den) + c.numerator * (new_den // c.denominator)
        den = new_den
        if num > k * den:
            cuts.append(j)
            block_sums.append(Fraction(num, den))
            num, den = 0, 1
            k += 1
    return BlockPartition(space, cuts, block_sums)


def d_seq(space, partition, t, j):
    """d_{j,t} = c_j / k**t on block k.  Exact when k**t is rational,
    otherwise a certified enclosure."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("t must lie in (0,1)")
    k = partition.block_of(j)
    return _div_by_power(space.weight(j), k, t)


def _kt_exact(k, t):
    """k**t as an exact Fraction when possible, else None."""
    p, q = t.numerator, t.denominator
    r = nk.iroot(k ** p, q)
    if r ** q == k ** p:
        return Fraction(r)
    return None

def _div_by_power(c, k, t):
    """c / k**t, exact when k**t is rational."""
    if k == 1:
        return Fraction(c)
    e = _kt_exact(k, t)
    if e is not None:
        return Fraction(c) / e
    root = nk.nth_root_of_rat(Fraction(k) ** t.numerator, t.denominator, 96)
    return nk.exact(c, 96) / root


def _as_enclosure(v, prec=96):
    return v if isinstance(v, nk.Enclosure) else nk.exact(v, prec)


def block_combo_sum(space, partition, combo, k):
    """Exact-structure block sum of sum_v lambda_v d_{.,t_v} over block k.

    Equals (sum of c_j over the block) * sum_v lambda_v / k**t_v; the first
    factor is stored by the partition, so no re-summation is needed.
    """
    csum = partition.block_sums[k - 1]
    acc = None
    for lam, t in combo:
        part = _as_enclosure(_div_by_power(Fraction(lam), k, Fraction(t)))
        acc = part if acc is None else acc + part
    if acc is None:
        raise ValueError("empty combination")
    # all-exact combinations collapse back to a Fraction
    if acc.is_exact():
        return csum * acc.mid_fraction()
    return acc.scale(csum)


def _constant_block_csum(k):
    # constant weights: block k holds exactly k+1 indices
    return Fraction(k + 1)


def _constant_cut(k):
    """n_k for constant weights in closed form: (k+1)(k+2)/2 (minimal cuts)."""
    return (k * k + 3 * k + 2) // 2


def block_divergence_witness(combo, space, M, partition=None, max_doublings=200):
    """A block index k with |block sum of the combo| certified >= M.

    The candidate comes from the lower bound |l1| k^(1-t1) - sum |l_v| k^(1-t_v),
    then the block sum itself is evaluated (exactly in structure) to confirm.
    Constant weights use the closed-form cuts, so k may exceed anything
    materialized; other weights need a partition covering the witness block.
    """
    combo = [(Fraction(l), Fraction(t)) for l, t in combo]
    if not combo:
        raise ValueError("empty combination")
    ts = [t for _, t in combo]
    if sorted(ts) != ts or len(set(ts)) != len(ts):
        raise ValueError("t parameters must be strictly increasing")
    if combo[0][0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    M = Fraction(M)
    k = 1
    for _ in range(max_doublings):
        if space.kind == CONSTANT:
            csum = _constant_block_csum(k)
        else:
            if partition is None or k > partition.blocks():
                raise BudgetExceeded(
                    "witness block beyond materialized partition",
                    budget=None if partition is None else partition.blocks(),
                    last_tried=k,
                )
            csum = partition.block_sums[k - 1]
        acc = None
        for lam, t in combo:
            part = _as_enclosure(_div_by_power(lam, k, t))
            acc = part if acc is None else acc + part
        total = _enc_abs(acc.scale(csum))
        if total.lower() >= M:
            return k, total
        k *= 2
    raise BudgetExceeded("no certified block found", budget=max_doublings, last_tried=k)


def cauchy_failure_witness(x, M, after, space=None, partition=None, scan_budget=100_000):
    """(n, m) with m > n > after and |x_n + ... + x_m| > M, exact.

    x is either a divergent SeqFamily (positive terms, scanned directly) or
    a d-sequence combo given as a list of (lambda, t) over a weighted space.
    """
    M = Fraction(M)
    if isinstance(x, SeqFamily):
        if not x.is_divergent_kind():
            raise ValueError("need a divergent family for a Cauchy failure")
        n = after + 1
        total = Fraction(0)
        m = n - 1
        for _ in range(scan_budget):
            m += 1
            total += x.term(m)
            if total > M and m > n:  # contract wants a genuine pair m > n
                return n, m, total
        raise BudgetExceeded("scan budget exhausted", budget=scan_budget, last_tried=m)
    # combo of d-sequences: take a full block past `after`
    combo = list(x)
    k = 1
    for _ in range(200):
        if space.kind == CONSTANT:
            first, last = _constant_cut(k - 1) + 1, _constant_cut(k)
            csum = _constant_block_csum(k)
        else:
            if partition is None or k > partition.blocks():
                raise BudgetExceeded(
                    "need more materialized blocks", budget=None, last_tried=k
                )
            first, last = partition.block_range(k)
            csum = partition.block_sums[k - 1]
        if first > after:
            acc = None
            for lam, t in combo:
                part = _as_enclosure(_div_by_power(Fraction(lam), k, Fraction(t)))
                acc = part if acc is None else acc + part
            total = _enc_abs(acc.scale(csum))
            if total.lower() > M:
                return first, last, total
        k *= 2
    raise BudgetExceeded("no certified block found", budget=200, last_tried=k)


class PerturbationWitness:
    """The Remark-6.3 sequence: prefix kept, one window raised to eps*c_j/2."""

    __slots__ = ("prefix", "window", "epsilon", "norm_diff", "window_sum")

    def __init__(self, prefix, window, epsilon, norm_diff, window_sum):
        self.prefix = prefix
        self.window = window
        self.epsilon = epsilon
        self.norm_diff = norm_diff
        self.window_sum = window_sum

    def value_at(self, space, j):
        if j <= len(self.prefix):
            return self.prefix[j - 1]
        n, m = self.window
        if n <= j <= m:
            return self.epsilon * space.weight(j) / 2
        return Fraction(0)


def density_perturbation(prefix, epsilon, M, after, space, scan_budget=1_000_000):
    """Perturb a finitely-supported sequence into a Cauchy-failure witness.

    Finds a window n..m past max(support, after) with weight sum > 2M/eps,
    sets x_j = eps*c_j/2 there, keeps the prefix, zero elsewhere.  The
    perturbation norm is then exactly eps/2 < eps while the window sum
    exceeds M.
    """
    prefix = tuple(Fraction(y) for y in prefix)
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    M = Fraction(M)
    start = max(len(prefix), after) + 1
    target = 2 * M / epsilon
    num, den = 0, 1  # running weight sum, unreduced over a running lcm
    m = start - 1
    for _ in range(scan_budget):
        m += 1
        c = space.weight(m)
        new_den = den * c.denominator // gcd(den, c.denominator)
        num = num * (new_den // den) + c.numerator * (new_den // c.denominator)
        den = new_den
        if num * target.denominator > target.numerator * den:
            total = Fraction(num, den)
            window_sum = epsilon * total / 2
            norm = Fraction(0) if m < start else epsilon / 2
            return PerturbationWitness(prefix, (start, m), epsilon, norm, window_sum)
    raise BudgetExceeded("window scan budget exhausted", budget=scan_budget, last_tried=m)


def stronger_than_probe(combo, space, M, support_upto, partition=None):
    """Re-verify a divergence witness for x + y past y's finite support.

    y being finitely supported, any block beyond support_upto sums the same
    for x + y as for x; the returned block index carries a fresh exact
    verification rather than an appeal to the old witness.
    """
    combo = [(Fraction(l), Fraction(t)) for l, t in combo]
    k = 1
    for _ in range(200):
        if space.kind == CONSTANT:
            first, last = _constant_cut(k - 1) + 1, _constant_cut(k)
            csum = _constant_block_csum(k)
        else:
            if partition is None or k > partition.blocks():
                raise BudgetExceeded(
                    "need more materialized blocks", budget=None, last_tried=k
                )
            first, last = partition.block_range(k)
            csum = partition.block_sums[k - 1]
        if first > support_upto:
            acc = None
            for lam, t in combo:
                part = _as_enclosure(_div_by_power(lam, k, t))
                acc = part if acc is None else acc + part
            total = _enc_abs(acc.scale(csum))
            if total.lower() > M:
                return k, (first, last), total
        k *= 2
    raise BudgetExceeded("no certified block found", budget=200, last_tried=k)


__all__ = [
    "GEOMETRIC_SKEWED",
    "RATIO_FAIL_CONV",
    "ROOT_FAIL_CONV",
    "RATIO_FAIL_DIV",
    "ROOT_FAIL_DIV",
    "HARMONIC",
    "CONSTANT",
    "TABLE",
    "SeqFamily",
    "LinearCombo",
    "term",
    "ratio_stats",
    "ratio_certificate",
    "root_stats",
    "partial_sums",
    "independence_certificate_series",
    "SingularSample",
    "ZeroTermEncountered",
    "WeightedSpace",
    "BlockPartition",
    "build_blocks",
    "d_seq",
    "block_combo_sum",
    "block_divergence_witness",
    "cauchy_failure_witness",
    "PerturbationWitness",
    "density_perturbation",
    "stronger_than_probe",
]

"""Command-line verification reports.

One subcommand per counterexample family plus a verify-all runner.  Reports
are JSON on stdout with a stable key order; given identical arguments and
seed two runs emit identical bytes (timings only appear under --timing).
Exit codes: 0 pass, 1 fail, 2 usage error, 3 unresolved (precision or
budget exhausted).
"""

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from . import __version__
from . import cantor_mes as cm
from . import expalg as ea
from . import measure_lab as ml
from . import numkernel as nk
from . import pompeiu as pm
from . import sepcont as sc
from . import series_lab as sl
from . import verify
from .errors import BudgetExceeded, NoBracket, PrecisionError, WindowViolation

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNRESOLVED = 3


def _dec(fr, places=30):
    fr = Fraction(fr)
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    scaled = (fr * 10 ** places).__floor__()
    whole, frac = divmod(scaled, 10 ** places)
    return "%s%d.%0*d" % (sign, whole, places, frac)


def _enc_payload(e):
    return {"mid": _dec(e.mid_fraction()), "radius": _dec(e.rad_fraction(), 45)}


def _parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational: %r" % text)


def _parse_interval(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("interval must be 'left,right'")
    a, b = (_parse_fraction(p) for p in parts)
    if a >= b:
        raise argparse.ArgumentTypeError("interval must satisfy left < right")
    return a, b


class Report:
    def __init__(self, subcommand, parameters, timing=False):
        self.data = {
            "schema": 1,
            "artifact": "counterlab %s" % __version__,
            "subcommand": subcommand,
            "parameters": parameters,
            "checks": [],
            "overall": "pass",
        }
        self.timing = timing

    def add(self, name, status, witness=None):
        t0 = getattr(self, "_t0", None)
        elapsed_ms = int((time.monotonic() - t0) * 1000) if (self.timing and t0) else None
        self.data["checks"].append(
            {
                "name": name,
                "status": status,
                "witness": witness or {},
                "elapsed_ms": elapsed_ms,
            }
        )
        self._t0 = time.monotonic()

    def start(self):
        self._t0 = time.monotonic()

    def finish(self):
        self.data["checks"].sort(key=lambda c: c["name"])
        statuses = {c["status"] for c in self.data["checks"]}
        if "fail" in statuses:
            self.data["overall"] = "fail"
        elif "unresolved" in statuses:
            self.data["overall"] = "unresolved"
        return self.data

    def exit_code(self):
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "unresolved": EXIT_UNRESOLVED}[
            self.data["overall"]
        ]


def _emit(report, args):
    data = report.finish()
    if args.json_compact:
        sys.stdout.write(json.dumps(data, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    return report.exit_code()


# ---------------------------------------------------------------------------
# subcommands


def cmd_mes(args):
    rep = Report(
        "mes",
        {
            "interval": [str(args.interval[0]), str(args.interval[1])],
            "target": str(args.target),
            "precision": args.precision,
            "seed": args.seed,
        },
        args.timing,
    )
    rep.start()
    f = cm.MesFunction(1, cm.shared_carver())
    try:
        w = cm.surjectivity_witness(f, args.interval, args.target, args.precision, args.budget)
        ok = w.verified() and args.interval[0] < w.point < args.interval[1]
        rep.add("surjectivity-witness", "pass" if ok else "fail", w.to_record())
    except BudgetExceeded as exc:
        rep.add("surjectivity-witness", "unresolved", {"error": str(exc), "budget": exc.budget})
    return _emit(rep, args)


def cmd_pompeiu(args):
    rep = Report(
        "pompeiu",
        {
            "dense_zeros": args.dense_zeros,
            "monotone_pairs": args.monotone_pairs,
            "nonconstancy": [str(v) for v in args.nonconstancy] if args.nonconstancy else None,
            "phi": args.phi,
            "precision": args.precision,
            "seed": args.seed,
        },
        args.timing,
    )
    rep.start()
    builder = pm.PompeiuBuilder()
    if args.dense_zeros:
        bad = [
            n
            for n in range(1, args.dense_zeros + 1)
            if builder.derivative_certificate(builder.dense_zero_point(n)) != pm.EXACT_ZERO
        ]
        rep.add("dense-zero-certificates", "pass" if not bad else "fail", {"count": args.dense_zeros})
    if args.monotone_pairs:
        import random

        rng = random.Random(args.seed)
        bad = []
        for _ in range(args.monotone_pairs):
            x = Fraction(rng.randint(-10 ** 4, 10 ** 4), rng.randint(1, 1000))
            y = x + Fraction(rng.randint(1, 10 ** 4), rng.randint(1, 1000))
            try:
                builder.certify_increasing(x, y)
            except PrecisionError:
                bad.append(str(x))
        rep.add("strict-monotonicity", "pass" if not bad else "fail", {"pairs": args.monotone_pairs})
    if args.nonconstancy:
        phi = {
            "exp": ea.ExpSum({1: 1}),
            "phi1": ea.make_phi_alpha(1),
            "combo": ea.make_phi_alpha(2) - ea.make_phi_alpha(1).scale(3),
        }[args.phi]
        try:
            wit = builder.nonconstancy_witness(args.nonconstancy, phi, args.precision)
            rep.add(
                "nonconstancy-witness",
                "pass" if wit.chain_rule_product().excludes_zero() else "fail",
                {
                    "x0": _enc_payload(wit.x0),
                    "fprime": _enc_payload(wit.fprime),
                    "phi_factor": _enc_payload(wit.phi_factor),
                },
            )
        except (BudgetExceeded, PrecisionError) as exc:
            rep.add("nonconstancy-witness", "unresolved", {"error": str(exc)})
    return _emit(rep, args)


def cmd_sepcont(args):
    rep = Report(
        "sepcont",
        {
            "dimension": args.dimension,
            "powers": [str(c) for c in args.powers],
            "threshold": str(args.threshold),
            "precision": args.precision,
            "seed": args.seed,
        },
        args.timing,
    )
    rep.start()
    sep = sc.SepFunction(args.dimension)
    import random

    rng = random.Random(args.seed)
    t = Fraction(rng.randint(1, 9), rng.randint(1, 6))
    ok = sc.eval_sep(sep, [t] * args.dimension) == 1 / (args.dimension * t ** args.dimension)
    rep.add("diagonal-identity", "pass" if ok else "fail", {"t": str(t)})
    p = ea.PolynomialNC(len(args.powers), {tuple([1] * len(args.powers)): 1})
    form = sc.expand_poly(p, args.powers)
    verdict = sc.dominance_verdict(form)
    rep.add("dominance-verdict", "pass" if verdict == sc.BLOWS_UP else "fail", {"verdict": verdict})
    try:
        tval, val = sc.diagonal_blowup_witness(sep, form, args.threshold, args.precision)
        rep.add("diagonal-blowup-witness", "pass", {"t": str(tval), "value": _enc_payload(val)})
    except (BudgetExceeded, ValueError) as exc:
        rep.add("diagonal-blowup-witness", "unresolved", {"error": str(exc)})
    return _emit(rep, args)


_FAMILIES = {
    "geometric-skewed": lambda s: sl.SeqFamily(sl.GEOMETRIC_SKEWED),
    "ratio-fail-conv": lambda s: sl.SeqFamily(sl.RATIO_FAIL_CONV, s),
    "ratio-fail-div": lambda s: sl.SeqFamily(sl.RATIO_FAIL_DIV, s),
    "root-fail-conv": lambda s: sl.SeqFamily(sl.ROOT_FAIL_CONV, s),
    "root-fail-div": lambda s: sl.SeqFamily(sl.ROOT_FAIL_DIV, s),
}


def cmd_series(args):
    rep = Report(
        "series",
        {
            "family": args.family,
            "s": str(args.s) if args.s is not None else None,
            "n": args.n,
            "certificate": str(args.certificate) if args.certificate is not None else None,
            "seed": args.seed,
        },
        args.timing,
    )
    rep.start()
    fam = _FAMILIES[args.family](args.s)
    if args.ratio_stats:
        rmin, rmax, argmins, argmaxes = sl.ratio_stats(fam, args.n)
        rep.add(
            "ratio-stats",
            "pass",
            {
                "min": _dec(rmin, 12),
                "max": _dec(rmax, 12),
                "argmin": argmins[0],
                "argmax": argmaxes[0],
            },
        )
    if args.root_stats:
        rmin, rmax, argmin, argmax = sl.root_stats(fam, args.n)
        rep.add(
            "root-stats",
            "pass",
            {"min": _enc_payload(rmin), "max": _enc_payload(rmax), "argmin": argmin, "argmax": argmax},
        )
    if args.partial_sums:
        s = sl.partial_sums(fam, args.n)
        rep.add("partial-sums", "pass", {"n": args.n, "sum": _dec(s, 30)})
    if args.certificate is not None:
        try:
            combo = (
                fam
                if isinstance(fam, sl.SeqFamily) and fam.kind in (sl.RATIO_FAIL_CONV, sl.RATIO_FAIL_DIV)
                else None
            )
            if combo is None:
                raise ValueError("certificate needs a ratio-test family")
            n_odd, n_even = sl.ratio_certificate(combo, args.certificate, args.budget)
            rep.add("ratio-certificate", "pass", {"n_odd": n_odd, "n_even": n_even})
        except (BudgetExceeded,) as exc:
            rep.add("ratio-certificate", "unresolved", {"error": str(exc)})
        except ValueError as exc:
            rep.add("ratio-certificate", "fail", {"error": str(exc)})
    return _emit(rep, args)


def cmd_blocks(args):
    rep = Report(
        "blocks",
        {
            "weights": args.weights,
            "blocks": args.blocks,
            "d_combo": args.d_combo,
            "target": str(args.target) if args.target is not None else None,
            "seed": args.seed,
        },
        args.timing,
    )
    rep.start()
    space = sl.WeightedSpace(args.weights)
    try:
        part = sl.build_blocks(space, args.blocks)
        wit = {"cuts": list(part.cuts[: min(12, len(part.cuts))])}
        ok = all(part.block_sums[k - 1] > k for k in range(1, part.blocks() + 1))
        rep.add("block-partition", "pass" if ok else "fail", wit)
    except BudgetExceeded as exc:
        rep.add("block-partition", "unresolved", {"error": str(exc)})
        return _emit(rep, args)
    if args.d_combo and args.target is not None:
        combo = _parse_combo(args.d_combo)
        try:
            k, total = sl.block_divergence_witness(combo, space, args.target, part)
            payload = {"block": k}
            payload["sum"] = (
                _enc_payload(total) if isinstance(total, nk.Enclosure) else _dec(total, 12)
            )
            rep.add("block-divergence-witness", "pass", payload)
        except BudgetExceeded as exc:
            rep.add("block-divergence-witness", "unresolved", {"error": str(exc)})
    return _emit(rep, args)


def _parse_combo(text):
    out = []
    for part in text.split(","):
        lam, t = part.split(":")
        out.append((Fraction(lam), Fraction(t)))
    return out


def cmd_typewriter(args):
    rep = Report(
        "typewriter",
        {
            "n": args.n,
            "rho": args.rho,
            "exceed": str(args.exceed) if args.exceed is not None else None,
            "witness": str(args.witness) if args.witness is not None else None,
            "shifts": args.shifts,
            "seed": args.seed,
        },
        args.timing,
    )
    rep.start()
    if args.rho:
        v = ml.rho(ml.typewriter(args.n), ml.STEP_ZERO)
        k = args.n.bit_length() - 1
        ok = v == Fraction(1, 2 ** (k + 1))
        rep.add("rho-value", "pass" if ok else "fail", {"n": args.n, "rho": str(v)})
    if args.exceed is not None:
        v = ml.measure_exceed(ml.typewriter(args.n), args.exceed)
        rep.add("measure-exceed", "pass", {"n": args.n, "measure": str(v)})
    if args.shifts and args.witness is None:
        shifts = [Fraction(t) for t in args.shifts.split(",")]
        window, samples, det = ml.independence_check_td(shifts)
        rep.add(
            "independence",
            "pass" if det != 0 else "fail",
            {"window": [str(window[0]), str(window[1])], "determinant": str(det)},
        )
    if args.witness is not None:
        shifts = [Fraction(t) for t in (args.shifts or "1/4").split(",")]
        combo = ml.TDCombo([(1, t) for t in shifts])
        try:
            wit = ml.nonconvergence_witness(combo, args.witness, 4)
            rep.add(
                "nonconvergence-witness",
                "pass",
                {"pairs": [[nh, nm, str(g)] for nh, nm, g in wit]},
            )
        except WindowViolation as exc:
            rep.add(
                "nonconvergence-witness",
                "fail",
                {"error": str(exc), "window": [str(v) for v in exc.window]},
            )
    return _emit(rep, args)


def cmd_verify_all(args):
    rep = Report(
        "verify-all",
        {
            "seed": args.seed,
            "precision": args.precision,
            "count_scale": args.count_scale,
            "criteria": args.criteria,
        },
        args.timing,
    )
    rep.start()
    wanted = (
        [int(x) for x in args.criteria.split(",")] if args.criteria else range(1, 11)
    )
    for i in wanted:
        name, checks, status = verify.run_criterion(
            i, seed=args.seed, precision=None, scale=args.count_scale
        )
        fails = [c["name"] for c in checks if c["status"] != verify.PASS]
        rep.add(name, status, {"checks": len(checks), "failing": fails[:8]})
    return _emit(rep, args)


def cmd_plot(args):
    rep = Report(
        "plot",
        {"kind": args.kind, "out": args.out, "samples": args.samples, "seed": args.seed},
        args.timing,
    )
    rep.start()
    try:
        rows, header = _plot_rows(args)
    except (BudgetExceeded, PrecisionError) as exc:
        rep.add("plot-emit", "unresolved", {"error": str(exc)})
        return _emit(rep, args)
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        rep.add("plot-emit", "fail", {"error": str(exc)})
        return _emit(rep, args)
    rep.add("plot-emit", "pass", {"rows": len(rows), "path": args.out})
    return _emit(rep, args)


def _plot_rows(args):
    n = args.samples
    if args.kind == "pompeiu-graph":
        builder = pm.PompeiuBuilder()
        rows = []
        for i in range(n):
            x = Fraction(-3) + Fraction(6 * i, n - 1) if n > 1 else Fraction(0)
            v = builder.eval_f(x, 48)
            rows.append([_dec(x, 6), _dec(v.mid_fraction(), 18), _dec(v.rad_fraction(), 24)])
        return rows, ["x", "f_mid", "f_radius"]
    if args.kind == "diagonal-blowup":
        sep = sc.SepFunction(2)
        form = sc.make_phi_c(1)
        rows = []
        for j in range(min(n, 12)):
            t = Fraction(1, 1 << j)
            val = sc.eval_form(form, 1 / (sep.n * t ** sep.n), 96)
            mag = val.lower_dy() if val.lower_dy().man >= 0 else -val.upper_dy()
            bits = mag.top if mag.man else 0
            rows.append([_dec(t, 8), str(bits)])
        return rows, ["t", "log2_lower_bound"]
    if args.kind == "ratio-trace":
        fam = sl.SeqFamily(sl.GEOMETRIC_SKEWED)
        rows = []
        for i in range(1, n + 1):
            r = fam.term(i + 1) / fam.term(i)
            rows.append([str(i), _dec(r, 12)])
        return rows, ["n", "ratio"]
    if args.kind == "rho-decay":
        rows = []
        for i in range(1, n + 1):
            rows.append([str(i), _dec(ml.rho(ml.typewriter(i), ml.STEP_ZERO), 12)])
        return rows, ["n", "rho"]
    if args.kind == "block-sums":
        space = sl.WeightedSpace(sl.CONSTANT)
        part = sl.build_blocks(space, n)
        rows = [
            [str(k), _dec(part.block_sums[k - 1], 6)] for k in range(1, part.blocks() + 1)
        ]
        return rows, ["k", "block_sum"]
    raise AssertionError("unknown plot kind")


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="counterlab",
        description="Construct and verify classical real-analysis counterexamples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--precision", type=int, default=nk.DEFAULT_PRECISION)
        p.add_argument("--budget", type=int, default=2_000_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--count", type=int, default=None)
        p.add_argument("--json-compact", action="store_true")
        p.add_argument("--timing", action="store_true")

    p = sub.add_parser("mes", help="everywhere-surjectivity witness")
    p.add_argument("--interval", type=_parse_interval, required=True)
    p.add_argument("--target", type=_parse_fraction, required=True)
    common(p)
    p.set_defaults(func=cmd_mes)

    p = sub.add_parser("pompeiu", help="dense-zero and nonconstancy checks")
    p.add_argument("--dense-zeros", type=int, default=0)
    p.add_argument("--monotone-pairs", type=int, default=0)
    p.add_argument("--nonconstancy", type=_parse_interval, default=None)
    p.add_argument("--phi", choices=("exp", "phi1", "combo"), default="phi1")
    common(p)
    p.set_defaults(func=cmd_pompeiu)

    p = sub.add_parser("sepcont", help="separately continuous family checks")
    p.add_argument("--dimension", type=int, default=2)
    p.add_argument("--powers", type=lambda t: [_parse_fraction(x) for x in t.split(",")], default=[Fraction(1)])
    p.add_argument("--threshold", type=_parse_fraction, default=Fraction(10 ** 6))
    common(p)
    p.set_defaults(func=cmd_sepcont)

    p = sub.add_parser("series", help="ratio/root test failure families")
    p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p.add_argument("--s", type=_parse_fraction, default=None)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--ratio-stats", action="store_true")
    p.add_argument("--root-stats", action="store_true")
    p.add_argument("--partial-sums", action="store_true")
    p.add_argument("--certificate", type=_parse_fraction, default=None)
    common(p)
    p.set_defaults(func=cmd_series, budget=10_000)

    p = sub.add_parser("blocks", help="weighted block partitions and witnesses")
    p.add_argument("--weights", choices=(sl.HARMONIC, sl.CONSTANT), default=sl.CONSTANT)
    p.add_argument("--blocks", type=int, default=10)
    p.add_argument("--d-combo", type=str, default=None, help="lambda:t,lambda:t,...")
    p.add_argument("--target", type=_parse_fraction, default=None)
    common(p)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("typewriter", help="convergence-in-measure family")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--rho", action="store_true")
    p.add_argument("--exceed", type=_parse_fraction, default=None)
    p.add_argument("--witness", type=_parse_fraction, default=None)
    p.add_argument("--shifts", type=str, default=None)
    common(p)
    p.set_defaults(func=cmd_typewriter)

    p = sub.add_parser("verify-all", help="run the full acceptance battery")
    p.add_argument("--criteria", type=str, default=None, help="comma list, e.g. 1,4,9")
    p.add_argument("--count-scale", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("plot", help="emit CSV plot data")
    p.add_argument(
        "--kind",
        choices=("pompeiu-graph", "diagonal-blowup", "ratio-trace", "rho-decay", "block-sums"),
        required=True,
    )
    p.add_argument("--out", type=str, required=True)
    p.add_argument("--samples", type=int, default=256)
    common(p)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (PrecisionError, BudgetExceeded) as exc:
        sys.stdout.write(
            json.dumps({"schema": 1, "overall": "unresolved", "error": str(exc)}) + "\n"
        )
        return EXIT_UNRESOLVED
    except (NoBracket, WindowViolation, ValueError) as exc:
        sys.stdout.write(
            json.dumps({"schema": 1, "overall": "fail", "error": str(exc)}) + "\n"
        )
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

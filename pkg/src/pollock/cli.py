"""Command-line entry points.

Exit codes: 0 success, 1 a verified negative result (no representation, a
rejected certificate, a failed check), 2 a usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument parsing helpers ---------------------------------------------------------

def _int(text: str) -> int:
    s = text.strip().replace("_", "")
    if not s.lstrip("+-").isdigit():
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    return int(s)


def _positive(text: str) -> int:
    v = _int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(n: int | None = None):
    def parse(text: str) -> tuple[int, ...]:
        vals = tuple(_int(p) for p in text.split(","))
        if n is not None and len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated integers, got {text!r}")
        return vals

    return parse


def _bracket(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("bracket must be 'lo,hi'")
    lo, hi = (_fraction(p) for p in parts)
    if not 0 < lo < hi:
        raise argparse.ArgumentTypeError("bracket needs 0 < lo < hi")
    return lo, hi


def _residue_filter(text: str) -> tuple[int, tuple[int, ...]]:
    """'4:2,3' means m mod 4 in {2, 3}."""
    try:
        mod, res = text.split(":")
        return _positive(mod), _int_list()(res)
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"filter must look like 'MOD:r1,r2', got {text!r}") from None


class Output:
    def __init__(self, fmt: str, path: str | None):
        self.fmt = fmt
        self.path = path
        self.lines: list[str] = []

    def emit(self, text: str, data: dict) -> None:
        self.lines.append(json.dumps(data, sort_keys=True) if self.fmt == "json" else text)

    def flush(self) -> None:
        body = "\n".join(self.lines) + ("\n" if self.lines else "")
        if self.path:
            Path(self.path).write_text(body)
        else:
            sys.stdout.write(body)


# -- subcommands --------------------------------------------------------------------------

def cmd_decompose(args, out: Output) -> int:
    from .decomp import DecomposeOptions, DecompositionFailure, decompose_seven

    if args.n < 7:
        raise UsageError("n must be at least 7")
    opts = DecomposeOptions(mode=args.mode, bracket=args.bracket, search_budget=args.budget)
    try:
        cert = decompose_seven(args.n, opts)
    except DecompositionFailure as exc:
        out.emit(f"failure {exc.kind}: {exc.detail}", {"n": str(args.n), "failure": exc.kind, "detail": exc.detail})
        return NEGATIVE
    if args.cert:
        Path(args.cert).write_text(cert.to_json() + "\n")
    if out.fmt == "json":
        out.lines.append(cert.to_json())
    else:
        out.emit(
            f"n = {cert.n} ({cert.method}) arguments: {' '.join(map(str, cert.arguments))}",
            {},
        )
    return OK


def cmd_verify(args, out: Output) -> int:
    from .decomp import DecompositionCertificate, verify_certificate

    try:
        text = Path(args.certificate).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    try:
        cert = DecompositionCertificate.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        out.emit(f"rejected: unreadable certificate ({exc})", {"ok": False, "failures": [f"unreadable: {exc}"]})
        return NEGATIVE
    report = verify_certificate(cert)
    text = "certificate verified" if report.ok else "rejected: " + "; ".join(report.failures)
    out.emit(text, {"ok": report.ok, "failures": list(report.failures), "n": str(cert.n)})
    return OK if report.ok else NEGATIVE


def cmd_scan_pollock(args, out: Output) -> int:
    from .decomp import min_octahedral_large, pollock_scan

    rep = pollock_scan(args.limit, args.cap)
    cousin = min_octahedral_large(689469562)
    hist = " ".join(f"{k}:{v}" for k, v in sorted(rep.histogram.items()))
    out.emit(
        f"scanned n <= {args.limit}: histogram {hist}; exceeding {args.cap}: {len(rep.exceeding)}; "
        f"689469562 needs {cousin if cousin else '>4'} octahedral numbers",
        {
            "limit": args.limit,
            "histogram": {str(k): v for k, v in rep.histogram.items()},
            "exceeding": rep.exceeding,
            "needing_max": rep.needing_max,
            "min_terms_689469562": cousin,
        },
    )
    return OK if rep.ok else NEGATIVE


def cmd_form_repr(args, out: Output) -> int:
    from .ternary import DiagonalTernaryForm, represent

    form = DiagonalTernaryForm(*args.form)
    if args.m < 1:
        raise UsageError("m must be positive")
    if args.all:
        reps = represent(form, args.m, primitive_only=args.primitive, mode="all")
        out.emit(
            f"{len(reps)} representations" if reps else "no representation",
            {"m": str(args.m), "representations": [r.as_tuple() for r in reps]},
        )
        return OK if reps else NEGATIVE
    rep = represent(form, args.m, primitive_only=args.primitive, mode="first")
    if rep is None:
        out.emit("no representation", {"m": str(args.m), "representation": None})
        return NEGATIVE
    x, y, z = rep.as_tuple()
    out.emit(f"{args.m} = {form.alpha}*{x}^2 + {form.beta}*{y}^2 + {form.gamma}*{z}^2", {"m": str(args.m), "representation": [x, y, z]})
    return OK


def cmd_form_scan(args, out: Output) -> int:
    from .ternary import DiagonalTernaryForm, scan_range

    form = DiagonalTernaryForm(*args.form)
    if args.lo >= args.hi:
        raise UsageError("need lo < hi")
    rep = scan_range(form, args.lo, args.hi, args.filter or (), args.sample, args.seed, not args.nonprimitive)
    if args.records:
        Path(args.records).write_text("".join(line + "\n" for line in rep.lines()))
    out.emit(
        f"tested {rep.tested} values in ({args.lo}, {args.hi}]: {len(rep.failures)} without representation"
        + (f" ({', '.join(map(str, rep.failures[:20]))})" if rep.failures else ""),
        {"lo": str(args.lo), "hi": str(args.hi), "tested": rep.tested, "failures": [str(m) for m in rep.failures]},
    )
    return OK if not rep.failures else NEGATIVE


def cmd_graph_build(args, out: Output) -> int:
    from .qgraph import build_graph, graph_report, save_graph

    try:
        g = build_graph(args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    save_graph(g, args.out_graph)
    rep = graph_report(g)
    out.emit(
        f"{rep.vertices} vertices (expected {rep.expected_vertices}); regular={rep.regular} "
        f"symmetric={rep.symmetric} connected={rep.connected} loops={rep.loops} multi-edges={rep.multi_edges}",
        {k: getattr(rep, k) for k in ("vertices", "expected_vertices", "regular", "symmetric", "connected", "loops", "multi_edges")},
    )
    return OK if rep.vertices == rep.expected_vertices and rep.regular and rep.connected else NEGATIVE


def cmd_graph_good(args, out: Output) -> int:
    from .qgraph import detect_good_vertices, load_graph, save_graph

    g = load_graph(args.graph)
    good = detect_good_vertices(g, tuple(args.norms))
    if args.save:
        save_graph(g, args.graph)
    out.emit(f"{g.num_vertices} vertices, {len(good)} good", {"vertices": g.num_vertices, "good": len(good)})
    return OK


def cmd_graph_walks(args, out: Output) -> int:
    from .qgraph import count_nb_avoiding_walks, load_graph

    g = load_graph(args.graph)

    def progress(step, exponent, counts):
        if args.verbose and step % 500 == 0:
            print(f"step {step}, scale 5^{exponent}", file=sys.stderr)

    w = count_nb_avoiding_walks(g, args.length, args.scale_after, args.checkpoint, args.checkpoint_every, progress)
    exponent = args.length - 1 if args.below is None else args.below
    cert = w.certifies_below(exponent)
    cert_ex = w.certifies_below(exponent, start_excluded=True)
    cert_free = w.certifies_below(exponent, free_start=True)
    out.emit(
        f"length {w.length}: max state count <= {w.max_scaled} * 5^{w.scale_exponent}; "
        f"below 5^{exponent}: {cert} (good starts counted: {cert_ex}; "
        f"unrestricted first move: {cert_free})",
        {
            "length": w.length,
            "max_scaled": str(w.max_scaled),
            "max_scaled_start_excluded": str(w.max_scaled_start_excluded),
            "max_scaled_free_start": str(w.max_scaled_free_start),
            "scale_exponent": w.scale_exponent,
            "below_exponent": exponent,
            "certified": cert,
            "certified_start_excluded": cert_ex,
            "certified_free_start": cert_free,
        },
    )
    return OK if cert else NEGATIVE


def cmd_quat_factor(args, out: Output) -> int:
    from .quat import GENERATOR_NAMES, factor_norm5, format_quaternion, parse_quaternion, standard_associate

    try:
        x = parse_quaternion(args.quaternion)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = x.norm()
    while n > 1 and n % 5 == 0:
        n //= 5
    if n != 1 or x.norm() == 1:
        raise UsageError("quaternion must have norm 5^s with s >= 1")
    if not x.is_proper():
        out.emit("not proper: no reduced word", {"quaternion": args.quaternion, "word": None})
        return NEGATIVE
    std = standard_associate(x)
    word = factor_norm5(std)
    out.emit(
        f"{format_quaternion(std)} = " + " * ".join(f"({GENERATOR_NAMES[l]})" for l in word),
        {"standard": format_quaternion(std), "word": [GENERATOR_NAMES[l] for l in word]},
    )
    return OK


# -- lemma checks ------------------------------------------------------------------------

def lemma_watson(args, out: Output) -> int:
    from .arith import is_prime
    from .cubic import CubicPoly, value_set_mod

    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    vs = value_set_mod(CubicPoly(*args.poly), args.p)
    out.emit(
        f"|f(Z/{args.p})| = {len(vs.values)}; predicted {vs.watson_count if vs.watson_applicable else 'n/a'}; ok={vs.watson_ok}",
        {"p": args.p, "size": len(vs.values), "predicted": vs.watson_count, "ok": vs.watson_ok},
    )
    return OK if vs.watson_ok else NEGATIVE


def lemma_padic(args, out: Output) -> int:
    from .arith import is_prime
    from .cubic import CubicPoly, surjective_on_zp

    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    res = surjective_on_zp(CubicPoly(*args.poly), args.p)
    out.emit(
        f"surjective on Z_{args.p}: {res.surjective} ({res.reason}); mod p^3 brute force agrees: {res.agrees}",
        {"p": args.p, "surjective": res.surjective, "reason": res.reason, "agrees": res.agrees},
    )
    return OK if res.agrees else NEGATIVE


def lemma_octa(args, out: Output) -> int:
    from .cubic import octa_congruence_scan, octa_congruence_solve

    if args.u < 0 or args.v < 0:
        raise UsageError("u and v must be nonnegative")
    classes = octa_congruence_solve(args.n, args.u, args.v)
    ok = len(classes) == 3 and (args.u + args.v > 8 or classes == octa_congruence_scan(args.n, args.u, args.v))
    out.emit(
        f"classes mod 2^{args.u} 3^{args.v + 1}: {classes}",
        {"classes": classes, "ok": ok},
    )
    return OK if ok else NEGATIVE


def lemma_power(args, out: Output) -> int:
    from .arith import NotFound, power_product_in_interval

    try:
        x, y = power_product_in_interval(args.a, args.b, args.lo, args.hi)
    except NotFound:
        out.emit("no product in the interval", {"found": None})
        return NEGATIVE
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.emit(f"{args.a}^{x} * {args.b}^{y} = {args.a**x * args.b**y}", {"exponents": [x, y], "value": str(args.a**x * args.b**y)})
    return OK


def lemma_square_roots(args, out: Output) -> int:
    from .arith import count_sqrt_mod

    bad = [(a, b) for b in range(1, args.limit + 1) for a in range(b) if (lambda c: c[0] > c[1])(count_sqrt_mod(a, b))]
    out.emit(f"moduli b <= {args.limit}: {len(bad)} violations", {"limit": args.limit, "violations": bad[:20]})
    return OK if not bad else NEGATIVE


def lemma_level(args, out: Output) -> int:
    from .bounds import level_sweep, prime_power_side_check

    fails = level_sweep(args.limit)
    pp = [e for e in range(args.max_e + 1) if not prime_power_side_check(e)]
    out.emit(
        f"level inequality for n <= {args.limit}: {len(fails)} failures; prime-power side for e <= {args.max_e}: {len(pp)} failures",
        {"level_failures": fails[:20], "prime_power_failures": pp},
    )
    return OK if not fails and not pp else NEGATIVE


def lemma_note13(args, out: Output) -> int:
    from .ternary import count_three_square_linear_reps

    try:
        rep = count_three_square_linear_reps(args.p, args.q, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.emit(
        f"total {rep.total}, proper {rep.proper} (bound {rep.proper_bound}), "
        f"conditioned {rep.conditioned} (bound {rep.conditioned_bound}); within bounds: {rep.within_bounds}",
        {
            "total": rep.total,
            "proper": rep.proper,
            "proper_bound": rep.proper_bound,
            "conditioned": rep.conditioned,
            "conditioned_bound": rep.conditioned_bound,
            "ok": rep.within_bounds,
        },
    )
    return OK if rep.within_bounds else NEGATIVE


# -- bounds ------------------------------------------------------------------------------

def _iv_str(x) -> list[str]:
    return [f"{float(x.a):.12g}", f"{float(x.b):.12g}"]


def bounds_siegel_product(args, out: Output) -> int:
    from .bounds import siegel_product

    try:
        rep = siegel_product(args.eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lo, hi = _iv_str(rep.bare_product)
    out.emit(
        f"eps = {args.eps}: bare product in [{lo}, {hi}], cutoff prime {rep.cutoff_prime}",
        {"epsilon": str(args.eps), "bare_product": [lo, hi], "value": _iv_str(rep.value), "cutoff_prime": rep.cutoff_prime},
    )
    return OK


def bounds_siegel_pair(args, out: Output) -> int:
    from .bounds import siegel_pair_check

    try:
        res = siegel_pair_check(args.m, args.m2, args.eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if res.violations:
        out.emit("precondition violations: " + "; ".join(res.violations), {"ok": False, "violations": list(res.violations)})
        return NEGATIVE
    out.emit(
        f"pair ({args.m}, {args.m2}): lhs {_iv_str(res.lhs)[0]} >= rhs {_iv_str(res.rhs)[1]}: {res.ok}",
        {"ok": res.ok, "lhs": _iv_str(res.lhs), "rhs": _iv_str(res.rhs)},
    )
    return OK if res.ok else NEGATIVE


def bounds_sum_constant(args, out: Output) -> int:
    from .bounds import PRESETS, mult_bound_product

    if args.preset not in PRESETS:
        raise UsageError(f"unknown preset {args.preset!r}; choose from {', '.join(PRESETS)}")
    rep = mult_bound_product(args.preset, args.p_max)
    if out.fmt == "json":
        out.lines.append(rep.to_json())
    else:
        out.emit(
            f"{rep.preset}: log product {rep.computed_log:.6f} over p <= {rep.p_max} (bound {rep.paper_log_bound}); "
            f"trivial from p = {rep.trivial_from}; satisfied: {rep.satisfied}",
            {},
        )
    return OK if rep.satisfied else NEGATIVE


def bounds_senior_s(args, out: Output) -> int:
    from .bounds import SeniorSumParams, eval_senior_S

    try:
        params = SeniorSumParams.for_m(args.m, args.tau)
        res = eval_senior_S(params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.emit(
        f"m = {args.m}, tau = {args.tau}, s = {params.s}: S = {res.S} over {res.terms} terms; "
        f"log bound {res.log_bound:.3f}; within: {res.within_bound}",
        {"m": str(args.m), "tau": str(args.tau), "s": params.s, "S": str(res.S), "terms": res.terms, "within": res.within_bound},
    )
    return OK if res.within_bound else NEGATIVE


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .decomp import RELAXED_BRACKET

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=_int, default=0)
    common.add_argument("--threads", type=_positive, default=1, help="worker cap (computations here are single-process)")

    parser = argparse.ArgumentParser(prog="pollock", description="Octahedral-number decompositions and their supporting computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="write n as seven positive octahedral numbers")
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--mode", choices=("relaxed", "paper"), default="relaxed")
    p.add_argument("--bracket", type=_bracket, default=None, help=f"'lo,hi' multiples of n^(1/3) (relaxed default {RELAXED_BRACKET[0]},{RELAXED_BRACKET[1]})")
    p.add_argument("--budget", type=_positive, default=64, help="candidate T values to try")
    p.add_argument("--cert", help="also write the certificate to this file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="check a certificate file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan-pollock", parents=[common], help="minimal octahedral counts for all n <= limit")
    p.add_argument("--limit", type=_positive, default=10**6)
    p.add_argument("--cap", type=_positive, default=7)
    p.set_defaults(func=cmd_scan_pollock)

    p = sub.add_parser("form-repr", parents=[common], help="represent m by a diagonal ternary form")
    p.add_argument("--form", type=_int_list(3), default=(83, 91, 99))
    p.add_argument("--m", type=_int, required=True)
    p.add_argument("--primitive", action="store_true")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_form_repr)

    p = sub.add_parser("form-scan", parents=[common], help="test every (or a sample of) m in (lo, hi]")
    p.add_argument("--form", type=_int_list(3), default=(83, 91, 99))
    p.add_argument("--lo", type=_int, required=True)
    p.add_argument("--hi", type=_int, required=True)
    p.add_argument("--filter", type=_residue_filter, action="append", help="MOD:r1,r2 (repeatable)")
    p.add_argument("--sample", type=_positive, default=None)
    p.add_argument("--nonprimitive", action="store_true")
    p.add_argument("--records", help="write one JSON line per tested m")
    p.set_defaults(func=cmd_form_scan)

    p = sub.add_parser("graph-build", parents=[common], help="build the norm-5 graph on norm-r quaternions")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--out", dest="out_graph", required=True)
    p.set_defaults(func=cmd_graph_build)

    p = sub.add_parser("graph-good", parents=[common], help="count good vertices of a saved graph")
    p.add_argument("graph")
    p.add_argument("--norms", type=_int_list(3), default=(83, 91, 99))
    p.add_argument("--save", action="store_true", help="store the good-vertex mask in the graph file")
    p.set_defaults(func=cmd_graph_good)

    p = sub.add_parser("graph-walks", parents=[common], help="bound non-backtracking walks avoiding good vertices")
    p.add_argument("graph")
    p.add_argument("--length", type=_positive, required=True)
    p.add_argument("--scale-after", type=_int, default=None)
    p.add_argument("--below", type=_int, default=None, help="exponent e to certify counts < 5^e (default length - 1)")
    p.add_argument("--checkpoint")
    p.add_argument("--checkpoint-every", type=_positive, default=500)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_graph_walks)

    p = sub.add_parser("quat-factor", parents=[common], help="reduced generator word of a norm-5^s quaternion")
    p.add_argument("quaternion", help="literal such as 1+2i+2j+4k")
    p.set_defaults(func=cmd_quat_factor)

    lemma = sub.add_parser("lemma-check", help="individual lemma checks")
    lsub = lemma.add_subparsers(dest="lemma", required=True)
    p = lsub.add_parser("watson", parents=[common])
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--poly", type=_int_list(3), default=(4, 0, 1), help="a,b,c of (a x^3 + b x^2 + c x) / 6 style cubic")
    p.set_defaults(func=lemma_watson)
    p = lsub.add_parser("padic", parents=[common])
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--poly", type=_int_list(3), default=(4, 0, 1))
    p.set_defaults(func=lemma_padic)
    p = lsub.add_parser("octa", parents=[common])
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--u", type=_int, required=True)
    p.add_argument("--v", type=_int, required=True)
    p.set_defaults(func=lemma_octa)
    p = lsub.add_parser("power", parents=[common])
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_positive, required=True)
    p.add_argument("--lo", type=_fraction, required=True)
    p.add_argument("--hi", type=_fraction, required=True)
    p.set_defaults(func=lemma_power)
    p = lsub.add_parser("square-roots", parents=[common])
    p.add_argument("--limit", type=_positive, default=1000)
    p.set_defaults(func=lemma_square_roots)
    p = lsub.add_parser("level", parents=[common])
    p.add_argument("--limit", type=_positive, default=10**5)
    p.add_argument("--max-e", type=_int, default=27)
    p.set_defaults(func=lemma_level)
    p = lsub.add_parser("note13", parents=[common])
    p.add_argument("--p", type=_int, required=True)
    p.add_argument("--q", type=_int, required=True)
    p.add_argument("--r", type=_int, required=True)
    p.set_defaults(func=lemma_note13)

    bounds = sub.add_parser("bounds", help="numerical constants")
    bsub = bounds.add_subparsers(dest="bound", required=True)
    p = bsub.add_parser("siegel-product", parents=[common])
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 10**6))
    p.set_defaults(func=bounds_siegel_product)
    p = bsub.add_parser("siegel-pair", parents=[common])
    p.add_argument("--m", type=_int, required=True)
    p.add_argument("--m2", type=_int, required=True)
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 10**6))
    p.set_defaults(func=bounds_siegel_pair)
    p = bsub.add_parser("sum-constant", parents=[common])
    p.add_argument("--preset", default="G-SUM")
    p.add_argument("--p-max", type=_positive, default=None)
    p.set_defaults(func=bounds_sum_constant)
    p = bsub.add_parser("senior-s", parents=[common])
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--tau", type=_fraction, required=True)
    p.set_defaults(func=bounds_senior_s)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    random.seed(args.seed)
    out = Output(args.format, args.output)
    try:
        code = args.func(args, out)
    except (UsageError, ValueError) as exc:
        # modules reject malformed inputs with ValueError
        print(f"pollock {args.command}: error: {exc}", file=sys.stderr)
        return USAGE
    out.flush()
    return code


def main(argv: list[str] | None = None) -> int:
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())

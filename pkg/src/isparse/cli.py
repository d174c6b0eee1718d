"""Command-line front end.

Exit codes: 0 success / verified / all checks passed, 1 falsified /
rejected / failed suite, 2 input error.  Exact rationals are authoritative;
decimals in the text output are marked advisory.  Elapsed time is printed
to stderr so that machine reports stay byte-identical across reruns.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .certificate import CertificateFormatError, dumps, loads, verify_certificate
from .classical import Bounds, GapSet, GapUnion, density_point_set, gap_density_bounds, one_sided_densities
from .idensity import (
    WindowFamily,
    classify_point_i_density,
    i_density_enclosure,
    validate_window_family,
)
from .indexsets import Ideal, Squares
from .parsing import (
    ParseError,
    parse_family,
    parse_ideal,
    parse_index_set,
    parse_rational,
    parse_sequence,
    parse_set,
)
from .report import LOWER, TWO_SIDED, UPPER, Enclosure, Report
from .sequences import i_converges, i_liminf, i_limsup
from .sets import Interval, IntervalSet, measure, symdiff
from .sparse import DepthError, i_sparse_falsify, sparse_certify_right, sparse_check_interval_set
from .suites import SUITES, run_suite

REPRODUCE_IDS = ("example-1.7", "section-3-example", "lemma-2.5", "theorem-1.1")


class InputError(ValueError):
    pass


def _interval_set(text: str) -> IntervalSet:
    E = parse_set(text)
    if not isinstance(E, IntervalSet):
        raise InputError(f"expected a finite interval union, got {text!r}")
    return E


def _gap_set(text: str) -> GapSet:
    E = parse_set(text)
    if not isinstance(E, GapSet):
        raise InputError(f"expected a plain gap set such as gapset(c=2), got {text!r}")
    return E


# --- commands ------------------------------------------------------------------


def cmd_measure(args) -> Report:
    E = parse_set(args.set)
    rep = Report(f"measure {args.set}")
    rep.add("set", E)
    if isinstance(E, IntervalSet):
        rep.add("measure", measure(E))
    else:
        rep.add("measure", Enclosure(E.measure_bounds(Interval(0, 1), args.depth) if isinstance(E, GapSet)
                                     else _gap_union_total(E, args.depth), TWO_SIDED))
    return rep


def _gap_union_total(E: GapUnion, depth: int) -> Bounds:
    hull = E.extra.hull()
    lo = min(Fraction(0), hull.lo) if hull else Fraction(0)
    hi = max(Fraction(1), hull.hi) if hull else Fraction(1)
    return E.measure_bounds(Interval(lo, hi), depth)


def cmd_phi(args) -> Report:
    E = _interval_set(args.set)
    P = density_point_set(E)
    rep = Report(f"phi {args.set}")
    rep.add("phi", P)
    rep.add("symdiff_measure", measure(symdiff(E, P)))
    return rep


def cmd_density(args) -> Report:
    E = parse_set(args.set)
    p = parse_rational(args.point)
    rep = Report(f"density {args.set} --point {args.point}")
    if isinstance(E, IntervalSet):
        d = one_sided_densities(E, p)
        for name in d._fields:
            rep.add(name, getattr(d, name))
        return rep
    if not isinstance(E, GapSet):
        raise InputError("densities of gap-set unions are not supported; use idensity")
    b = gap_density_bounds(E, args.depth, p)
    rep.add("right_upper", Enclosure(b.upper, TWO_SIDED))
    rep.add("right_lower", Enclosure(b.lower, TWO_SIDED))
    rep.add("depth", args.depth)
    return rep


def cmd_adens(args) -> Report:
    S = parse_index_set(args.indexset)
    rep = Report(f"adens {args.indexset}")
    rep.add("indexset", S)
    rep.add("density", S.density)
    rep.add("finite", S.is_finite())
    rep.add("in_fin", Ideal.FIN.member(S))
    rep.add("in_d0", Ideal.DENSITY_ZERO.member(S))
    return rep


def cmd_ilimsup(args) -> Report:
    x = parse_sequence(args.sequence)
    I = parse_ideal(args.ideal)
    rep = Report(f"ilimsup {args.sequence} --ideal {I}")
    rep.add("sequence", x)
    rep.add("ideal", str(I))
    rep.add("i_limsup", i_limsup(x, I))
    rep.add("i_liminf", i_liminf(x, I))
    return rep


def cmd_iconv(args) -> Report:
    x = parse_sequence(args.sequence)
    I = parse_ideal(args.ideal)
    L, eps = parse_rational(args.limit), parse_rational(args.eps)
    if eps <= 0:
        raise InputError("--eps must be positive")
    rep = Report(f"iconv {args.sequence} --ideal {I} --limit {args.limit} --eps {args.eps}")
    rep.add("level_set_in_ideal", i_converges(x, I, L, eps))
    lo, hi = i_liminf(x, I), i_limsup(x, I)
    rep.add("converges", lo == hi == L)
    rep.add("i_liminf", lo)
    rep.add("i_limsup", hi)
    return rep


def cmd_idensity(args) -> Report:
    E = parse_set(args.set)
    p = parse_rational(args.point)
    I = parse_ideal(args.ideal)
    specs = args.family or [f"sym(p={args.point})"]
    families = [parse_family(s) for s in specs]
    for W in families:
        if W.center != p:
            raise InputError(f"family {W!r} is not centred at {p}")
        if not validate_window_family(W, I):
            raise InputError(f"family {W!r} does not shrink on a filter set of {I}")
    enc = i_density_enclosure(E, p, I, families, N=args.depth)
    rep = Report(f"idensity {args.set} --point {args.point} --ideal {I}")
    rep.add("upper_i_density", Enclosure(Bounds(enc.upper_lower_bound, 1), LOWER))
    rep.add("lower_i_density", Enclosure(Bounds(0, enc.lower_upper_bound), UPPER))
    if enc.exact_upper is not None:
        rep.add("exact_upper", enc.exact_upper)
        rep.add("exact_lower", enc.exact_lower)
        rep.add("classification", classify_point_i_density(E, p, I).value)
    rep.add("families", [
        {"family": r.family, "i_limsup": Enclosure(r.limsup), "i_liminf": Enclosure(r.liminf)}
        for r in enc.families
    ])
    return rep


def cmd_sparse_check(args) -> Report:
    E = _interval_set(args.set)
    p = parse_rational(args.point)
    rep = Report(f"sparse-check {args.set} --point {args.point}")
    rep.add("right", sparse_check_interval_set(E, p, "right"))
    rep.add("left", sparse_check_interval_set(E, p, "left"))
    return rep


def cmd_sparse_certify(args) -> Report:
    G = _gap_set(args.set)
    eps = parse_rational(args.eps)
    if eps <= 0:
        raise InputError("--eps must be positive")
    rep = Report(f"sparse-certify {args.set} --eps {args.eps} --depth {args.depth}")
    try:
        cert = sparse_certify_right(G, eps, args.depth)
    except DepthError as exc:
        rep.add("certified", False)
        rep.add("reason", str(exc))
        rep.exit_code = 1
        return rep
    text = dumps(cert)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        rep.add("written", args.out)
    v = verify_certificate(cert)
    rep.add("certified", True)
    rep.add("verified", v.ok)
    rep.add("h", cert.h)
    rep.add("start_level", cert.start_level)
    if cert.bad_span_bound is not None:
        rep.add("bad_span_bound", cert.bad_span_bound)
    if not args.out:
        rep.add("certificate", text)
    rep.exit_code = 0 if v.ok else 1
    return rep


def cmd_sparse_verify(args) -> Report:
    try:
        with open(args.file, encoding="utf-8") as fh:
            cert = loads(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    v = verify_certificate(cert)
    rep = Report(f"sparse-verify {args.file}")
    rep.add("accepted", v.ok)
    rep.add("reason", v.reason)
    rep.exit_code = 0 if v.ok else 1
    return rep


def cmd_falsify(args) -> Report:
    A = parse_set(args.set)
    x = parse_rational(args.point)
    I = parse_ideal(args.ideal)
    w = i_sparse_falsify(A, x, I, trials=args.trials, seed=args.seed)
    rep = Report(f"falsify {args.set} --point {args.point} --ideal {I} --trials {args.trials} --seed {args.seed}")
    if w is None:
        status = "unfalsified"
        if isinstance(A, IntervalSet) and classify_point_i_density(A, x, I).value == "I-density 0":
            status = "certified-sparse-via-density-zero"
        rep.add("status", status)
    else:
        rep.add("status", "falsified")
        rep.add("witness", w.B)
        rep.add("union", w.union)
        rep.add("trial", w.trial)
        rep.exit_code = 1
    return rep


def _suite_report(name: str, seed: int, trials, workers: int, command: str) -> Report:
    if trials is None:
        trials = SUITES[name].default_trials
    if trials < 0:
        raise InputError("--trials must be non-negative")
    if workers < 1:
        raise InputError("--workers must be at least 1")
    res = run_suite(name, seed, trials, workers)
    rep = Report(f"{command} --seed {seed} --trials {trials}")
    for k, v in res.as_dict().items():
        rep.add(k, v)
    rep.exit_code = 0 if res.ok else 1
    return rep


def cmd_suite(args) -> Report:
    if args.name not in SUITES:
        raise InputError(f"unknown suite {args.name!r}; choose from {', '.join(sorted(SUITES))}")
    return _suite_report(args.name, args.seed, args.trials, args.workers,
                         f"suite {args.name}")


def _reproduce_gap_example(c: Fraction, depth: int) -> Report:
    G = GapSet(c)
    b = gap_density_bounds(G, depth)
    rep = Report(f"reproduce example-1.7 --c {c} --depth {depth}")
    rep.add("right_upper_density", Enclosure(b.upper, TWO_SIDED))
    rep.add("right_upper_density_at_least", b.upper.lo)
    rep.add("right_upper_density_width", b.upper.width)
    rep.add("right_lower_density", Enclosure(b.lower, TWO_SIDED))
    eps = Fraction(1, 10)
    ok = b.upper.lo == 1 - 1 / c and b.lower.contains(0)
    try:
        cert = sparse_certify_right(G, eps, depth)
        v = verify_certificate(cert)
        rep.add("sparseness_epsilon", eps)
        rep.add("sparseness_h", cert.h)
        rep.add("certificate_accepted", v.ok)
        ok = ok and v.ok
    except DepthError as exc:
        rep.add("certificate_accepted", False)
        rep.add("reason", str(exc))
        ok = False
    rep.exit_code = 0 if ok else 1
    return rep


def _reproduce_upper_i_density(c: Fraction, depth: int) -> Report:
    G = GapSet(c)
    I = Ideal.DENSITY_ZERO
    plain = WindowFamily.right_geometric(0, c)
    odd = WindowFamily.right_geometric(0, c, exception_set=Squares(), exception_window=Interval(0, 1))
    enc = i_density_enclosure(G, 0, I, [plain, odd], N=depth)
    rep = Report(f"reproduce section-3-example --c {c} --depth {depth}")
    rep.add("ideal", str(I))
    rep.add("families", [plain, odd])
    rep.add("valid_under_d0", [validate_window_family(W, I) for W in (plain, odd)])
    rep.add("exceptional_family_valid_under_fin", validate_window_family(odd, Ideal.FIN))
    rep.add("upper_i_density", Enclosure(Bounds(enc.upper_lower_bound, 1), LOWER))
    rep.add("upper_i_density_nonzero", enc.upper_lower_bound > 0)
    rep.exit_code = 0 if enc.upper_lower_bound >= 1 - 1 / c else 1
    return rep


def cmd_reproduce(args) -> Report:
    c = parse_rational(args.c)
    if c <= 1:
        raise InputError("--c must exceed 1")
    if args.id == "example-1.7":
        return _reproduce_gap_example(c, args.depth)
    if args.id == "section-3-example":
        return _reproduce_upper_i_density(c, args.depth)
    suite = "subadditivity" if args.id == "lemma-2.5" else "density-theorem"
    return _suite_report(suite, args.seed, args.trials, args.workers,
                         f"reproduce {args.id}")


# --- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--out", help="write the certificate (sparse-certify) or report here")
    common.add_argument("--depth", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="isparse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, **extra):
        p = sub.add_parser(name, parents=[common])
        for arg in positional:
            p.add_argument(arg)
        for flag, kw in extra.items():
            p.add_argument("--" + flag.replace("_", "-"), dest=flag, **kw)
        p.set_defaults(func=func)
        return p

    add("measure", cmd_measure, "set")
    add("phi", cmd_phi, "set")
    add("density", cmd_density, "set", point={"default": "0"})
    add("adens", cmd_adens, "indexset")
    add("ilimsup", cmd_ilimsup, "sequence", ideal={"default": "fin"})
    add("iconv", cmd_iconv, "sequence", ideal={"default": "fin"}, limit={"required": True},
        eps={"required": True})
    add("idensity", cmd_idensity, "set", point={"default": "0"}, ideal={"default": "d0"},
        family={"action": "append"})
    add("sparse-check", cmd_sparse_check, "set", point={"default": "0"})
    add("sparse-certify", cmd_sparse_certify, "set", eps={"required": True})
    add("sparse-verify", cmd_sparse_verify, "file")
    add("falsify", cmd_falsify, "set", point={"default": "0"}, ideal={"default": "d0"})
    add("suite", cmd_suite, "name")
    rp = add("reproduce", cmd_reproduce, c={"default": "2"})
    rp.add_argument("id", choices=REPRODUCE_IDS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command == "falsify" and args.trials is None:
        args.trials = 200
    if args.depth < 1:
        print("error: --depth must be at least 1", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except (ParseError, InputError, CertificateFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = rep.render(args.format)
    if args.out and args.command != "sparse-certify":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Randomised property suites with deterministic, shardable reports.

Trial ``i`` of suite ``name`` under master seed ``s`` draws everything from
``random.Random(f"{name}:{s}:{i}")``, so the merged report does not depend
on how trials are split across workers.  Merging sums tallies and keeps
failures in trial order, which makes it associative.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import generators as gen
from .certificate import GoodRegion, SparsenessCertificate, verify_certificate
from .classical import GapSet, GapUnion, density_point_set, one_sided_densities
from .idensity import (
    PointDensity,
    Rule,
    WindowFamily,
    classify_point_i_density,
    i_density_enclosure,
    ratio_sequence,
    validate_window_family,
)
from .indexsets import AP, NATURALS, Finite, Ideal, Squares, union_density_incl_excl
from .sequences import i_liminf, i_limsup, seq_add, seq_dominates, seq_negate
from .sets import Interval, complement_within, measure, normalize, symdiff
from .sparse import DepthError, i_sparse_falsify, sparse_certify_right, sparse_check_interval_set, sparse_interior

MAX_FAILURES = 20


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    vacuous: int = 0

    def merge(self, other: "Tally") -> "Tally":
        return Tally(self.passed + other.passed, self.failed + other.failed, self.vacuous + other.vacuous)


@dataclass
class SuiteResult:
    name: str
    seed: int
    trials: int
    checks: dict[str, Tally] = field(default_factory=dict)
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(t.failed for t in self.checks.values())

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def merge(self, other: "SuiteResult") -> "SuiteResult":
        checks = dict(self.checks)
        for k, t in other.checks.items():
            checks[k] = checks.get(k, Tally()).merge(t)
        failures = sorted(self.failures + other.failures)[:MAX_FAILURES]
        return SuiteResult(self.name, self.seed, self.trials, checks, failures)

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "violations": self.violations,
            "checks": {
                k: {"pass": t.passed, "fail": t.failed, "vacuous": t.vacuous}
                for k, t in sorted(self.checks.items())
            },
            "failures": [f"trial {i}: {msg}" for i, msg in self.failures],
        }


class _Recorder:
    """Collects outcomes for one trial."""

    def __init__(self, trial: int, result: SuiteResult):
        self.trial = trial
        self.result = result

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        t = self.result.checks.setdefault(name, Tally())
        if ok:
            t.passed += 1
        else:
            t.failed += 1
            if len(self.result.failures) < MAX_FAILURES:
                self.result.failures.append((self.trial, f"{name}: {detail}"))

    def vacuous(self, name: str) -> None:
        self.result.checks.setdefault(name, Tally()).vacuous += 1


# Each trial function receives (rng, recorder, trial index).

# --- subadditivity and monotonicity --------------------------------------


def _trial_subadditive(rng: random.Random, rec: _Recorder, i: int) -> None:
    x, y = gen.sequence_pair(rng)
    I = gen.ideal(rng)
    sx, sy, sxy = i_limsup(x, I), i_limsup(y, I), i_limsup(seq_add(x, y), I)
    rec.check("subadditive", sxy <= sx + sy, f"{I}: {sxy} > {sx} + {sy} for {x!r}, {y!r}")
    z = seq_add(x, gen.nonnegative_like(rng, x))
    rec.check("dominated-by-construction", seq_dominates(x, z), f"{x!r} not <= {z!r}")
    rec.check("monotone-limsup", i_limsup(x, I) <= i_limsup(z, I), f"{I}: {x!r} vs {z!r}")
    rec.check("monotone-liminf", i_liminf(x, I) <= i_liminf(z, I), f"{I}: {x!r} vs {z!r}")
    if seq_dominates(x, y):
        rec.check("monotone-random-pair", sx <= sy, f"{I}: {sx} > {sy}")
    else:
        rec.vacuous("monotone-random-pair")


# --- density theorem -------------------------------------------------------


def _trial_density_theorem(rng: random.Random, rec: _Recorder, i: int) -> None:
    E = gen.interval_set(rng)
    P = density_point_set(E)
    rec.check("null-difference", measure(symdiff(E, P)) == 0, f"{E!r} vs {P!r}")
    I = gen.ideal(rng)
    ends = sorted(set(E.endpoints()))
    for lo, hi in zip(ends, ends[1:]):
        mid = (lo + hi) / 2
        inside = any(J.lo < mid < J.hi for J in E)
        got = classify_point_i_density(E, mid, I)
        want = PointDensity.ONE if inside else PointDensity.ZERO
        rec.check("segment-classification", got is want, f"{E!r} at {mid}: {got}")
    not_one = [p for p in ends if classify_point_i_density(E, p, I) is not PointDensity.ONE]
    rec.check("exceptions-are-endpoints", len(not_one) == len(ends), f"{E!r}: {not_one}")
    G = sparse_interior(E)
    rec.check("sparse-interior-subset", G.issubset(E), f"{G!r} not in {E!r}")
    rec.check("sparse-interior-full", measure(E - G) == 0, f"{E!r}")


# --- ideal-limsup oracle and duality ----------------------------------------

ORACLE_START = 2500
ORACLE_END = 10_000


def brute_force_limsup(x) -> Fraction:
    """Classical limsup read off the window [2500, 10**4].

    Every exception and finite part sits below 2500 and every residue
    class mod ``x.modulus`` keeps occurring, so the window shows exactly
    the values repeated infinitely often.
    """
    return max(x[n] for n in range(ORACLE_START, ORACLE_END + 1))


def class_tail_limsup(x) -> Fraction:
    """The same value from the class structure of ``x``."""
    vals = set(x.class_values)
    if x.override_set is not None:
        hit = {n % x.modulus for n in range(ORACLE_START, ORACLE_END + 1) if n in x.override_set}
        vals |= {x.override_values[r] for r in hit}
    return max(vals)


def _trial_limsup_oracle(rng: random.Random, rec: _Recorder, i: int) -> None:
    S = gen.null_set(rng) if rng.random() < 0.7 else None
    x = gen.step_sequence(rng, S)
    got = i_limsup(x, Ideal.FIN)
    brute, tail = brute_force_limsup(x), class_tail_limsup(x)
    rec.check("oracle-agree", brute == tail, f"{x!r}: window {brute}, classes {tail}")
    rec.check("fin-limsup", got == brute, f"{x!r}: {got} != {brute}")
    for I in Ideal:
        lo, hi = i_liminf(x, I), -i_limsup(seq_negate(x), I)
        rec.check("duality", lo == hi, f"{I} {x!r}: {lo} != {hi}")


# --- ideals and asymptotic density -------------------------------------------

PREFIX_N = 10_000
PREFIX_TOL = Fraction(1, 100)


def _trial_ideal_axioms(rng: random.Random, rec: _Recorder, i: int) -> None:
    if i % 3 == 0:
        aps = gen.ap_union(rng)
        S = aps[0]
        for a in aps[1:]:
            S = S | a
        ie = union_density_incl_excl(aps)
        rec.check("inclusion-exclusion", S.density == ie, f"{S!r}: {S.density} != {ie}")
    else:
        S = gen.index_set(rng)
    d = S.density
    ratio = Fraction(S.prefix_count(PREFIX_N), PREFIX_N)
    rec.check("prefix-density", abs(ratio - d) <= PREFIX_TOL, f"{S!r}: {d} vs {ratio}")
    T = gen.index_set(rng)
    for I in Ideal:
        if I.member(S):
            rec.check(f"{I}-subset-closed", I.member(S & T), f"{S!r} & {T!r}")
            if I.member(T):
                rec.check(f"{I}-union-closed", I.member(S | T), f"{S!r} | {T!r}")
            else:
                rec.vacuous(f"{I}-union-closed")
        else:
            rec.vacuous(f"{I}-subset-closed")
        k = rng.randint(1, 100)
        rec.check(f"{I}-admissible", I.member(Finite([k])), f"{{{k}}}")
        rec.check(f"{I}-proper", not I.member(NATURALS), "N is a member")
        rec.check(f"{I}-filter-dual", I.filter_member(S) == I.member(~S), f"{S!r}")
    if Ideal.FIN.member(S):
        rec.check("fin-inside-d0", Ideal.DENSITY_ZERO.member(S), f"{S!r}")
    rec.check("d0-means-density-0", Ideal.DENSITY_ZERO.member(S) == (d == 0), f"{S!r}")


# --- sparse family -------------------------------------------------------------

FALSIFY_BUDGET = 200


def _test_point(rng: random.Random, E) -> Fraction:
    ends = E.endpoints()
    if ends and rng.random() < 0.5:
        return rng.choice(ends)
    return gen.rational(rng)


def _right_densities(E, p):
    d = one_sided_densities(E, p)
    return d.right_upper, d.right_lower


def _trial_sparse(rng: random.Random, rec: _Recorder, i: int) -> None:
    A = gen.interval_set(rng)
    x = _test_point(rng, A)
    I = gen.ideal(rng)
    seed = rng.randrange(2**32)
    cls = classify_point_i_density(A, x, I)

    # (a) certified density 0 is never falsified
    witness = i_sparse_falsify(A, x, I, trials=FALSIFY_BUDGET, seed=seed)
    if cls is PointDensity.ZERO:
        rec.check("a-density-zero-unfalsified", witness is None, f"{A!r} at {x}: {witness}")
    else:
        rec.vacuous("a-density-zero-unfalsified")
        rec.check("a-positive-density-falsified", witness is not None, f"{A!r} at {x}")

    # deliberately non-sparse: an interval touching x
    r = Fraction(rng.randint(1, 6), rng.randint(1, 3))
    adj = A | normalize([(x, x + r)] if rng.random() < 0.5 else [(x - r, x)])
    w = i_sparse_falsify(adj, x, I, trials=FALSIFY_BUDGET, seed=seed)
    rec.check("adjacent-witness", w is not None, f"{adj!r} at {x}")

    # (b) subsets of unfalsified sets stay unfalsified
    E = A & gen.interval_set(rng)
    if witness is None:
        w = i_sparse_falsify(E, x, I, trials=FALSIFY_BUDGET, seed=seed + 1)
        rec.check("b-subset-unfalsified", w is None, f"{E!r} inside {A!r} at {x}")
    else:
        rec.vacuous("b-subset-unfalsified")

    # (c) right sparseness is closed under subsets and unions, forces d+ < 1 and d_+ = 0
    Y = gen.interval_set(rng)
    sa, sy = sparse_check_interval_set(A, x), sparse_check_interval_set(Y, x)
    if sa and sy:
        rec.check("c-union-sparse", sparse_check_interval_set(A | Y, x), f"{A!r} | {Y!r} at {x}")
    else:
        rec.vacuous("c-union-sparse")
    if sa:
        rec.check("c-subset-sparse", sparse_check_interval_set(A & Y, x), f"{A!r} & {Y!r} at {x}")
        up, low = _right_densities(A, x)
        rec.check("c-sparse-densities", up < 1 and low == 0, f"{A!r} at {x}: {up}, {low}")
        window = Interval(x - 100, x + 100)
        cu, _ = _right_densities(complement_within(A, window), x)
        rec.check("note-complement-density-one", cu == 1, f"{A!r} at {x}")
    up, low = _right_densities(A, x)
    if up == 0 and low == 0:
        rec.check("c-zero-density-sparse", sa, f"{A!r} at {x}")

    # (d) certified-sparse A and I-d(x, F) = 0 give I-d(x, A | F) = 0
    F = gen.interval_set(rng)
    if cls is PointDensity.ZERO and classify_point_i_density(F, x, I) is PointDensity.ZERO:
        got = classify_point_i_density(A | F, x, I)
        rec.check("d-null-union", got is PointDensity.ZERO, f"{A!r} | {F!r} at {x}: {got}")
    else:
        rec.vacuous("d-null-union")

    # (e) right-sparse iff A | H has d+ < 1 whenever H does, iff A | H has
    # d_+ = 0 whenever H does; the conjunctive variant is tallied as vacuous
    tests = [normalize([]), normalize([(x, x + 1)]), normalize([(x - 1, x)])]
    tests += [gen.interval_set(rng) for _ in range(4)]
    tests += [T.translate(x) for T in tests[3:5]]
    c1 = sparse_check_interval_set(A, x, "right")
    c2 = all(_right_densities(A | H, x)[0] < 1 for H in tests if _right_densities(H, x)[0] < 1)
    c4 = all(_right_densities(A | H, x)[1] == 0 for H in tests if _right_densities(H, x)[1] == 0)
    rec.check("e-equivalent-criteria", c1 == c2 == c4, f"{A!r} at {x}: {c1}, {c2}, {c4}")
    rec.vacuous("e-conjunctive-criterion")

    # GapSet at 0 with a far-away F: adding F leaves the family bounds unchanged
    if i % 25 == 0:
        G = GapSet(rng.choice([Fraction(3, 2), 2, 10]))
        far = normalize([(2, 3)])
        fams = [WindowFamily.right_geometric(0, G.c), WindowFamily.symmetric(0)]
        one = i_density_enclosure(G, 0, I, fams, N=6)
        both = i_density_enclosure(GapUnion(G, far), 0, I, fams, N=6)
        same = (one.upper_lower_bound, one.lower_upper_bound) == (both.upper_lower_bound, both.lower_upper_bound)
        rec.check("d-gapset-far-union", same, f"{G!r}")


# --- i-density properties ------------------------------------------------------


def _random_family(rng: random.Random, p: Fraction, I: Ideal) -> WindowFamily:
    rule = rng.choice(list(Rule))
    c = Fraction(rng.choice([3, 4, 5]), 2) if rule is Rule.RIGHT_GEOMETRIC else None
    extra = {}
    if rng.random() < 0.5:
        X = gen.null_set(rng) if I is Ideal.DENSITY_ZERO else Finite(rng.randint(1, 40) for _ in range(3))
        r = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        extra = {"exception_set": X, "exception_window": Interval(p - r, p + r)}
    return WindowFamily(p, rule, c, **extra)


def _trial_idensity(rng: random.Random, rec: _Recorder, i: int) -> None:
    I = gen.ideal(rng)
    E, F = gen.interval_set(rng), gen.interval_set(rng)
    pts = (E | F).endpoints()
    p = rng.choice(pts) if pts and rng.random() < 0.6 else gen.rational(rng)
    W = _random_family(rng, p, I)
    rec.check("family-valid", validate_window_family(W, I), f"{W!r}")
    N = 12
    xe, xf, xu = (ratio_sequence(S, W, N).step_sequences()[0] for S in (E, F, E | F))
    rec.check("ratio-subadditive", seq_dominates(xu, seq_add(xe, xf)), f"{E!r}, {F!r}, {W!r}")
    rec.check("limsup-subadditive", i_limsup(xu, I) <= i_limsup(xe, I) + i_limsup(xf, I), f"{W!r}")
    rec.check("ratio-monotone", seq_dominates(xe, xu), f"{E!r} in {E | F!r}")
    s = i_limsup(xe, I)
    rec.check("limsup-in-unit", 0 <= s <= 1, f"{s}")
    if W.exception_set is not None:
        plain = WindowFamily(W.center, W.rule, W.c)
        xp = ratio_sequence(E, plain, N).step_sequences()[0]
        same = (i_limsup(xp, I), i_liminf(xp, I)) == (i_limsup(xe, I), i_liminf(xe, I))
        rec.check("exception-irrelevant", same, f"{E!r}, {W!r}")
    else:
        rec.vacuous("exception-irrelevant")
    a = i_density_enclosure(E, p, I, [W], N=N)
    b = i_density_enclosure(E, p, I, [W, WindowFamily.symmetric(p)], N=N)
    rec.check("more-families-monotone", b.upper_lower_bound >= a.upper_lower_bound, f"{E!r} at {p}")
    rec.check("bound-below-exact", a.upper_lower_bound <= a.exact_upper, f"{E!r} at {p}")


# --- certificates --------------------------------------------------------------

GRID = [(Fraction(c), Fraction(e)) for c in ("3/2", "2", "10") for e in ("1/2", "1/10", "1/100")]


def certify_with_retry(c: Fraction, eps: Fraction, depth: int = 8, max_depth: int = 24) -> SparsenessCertificate:
    while True:
        try:
            return sparse_certify_right(GapSet(c), eps, depth)
        except DepthError:
            if depth >= max_depth:
                raise
            depth += 4


def certificate_mutations(cert: SparsenessCertificate) -> list[tuple[str, SparsenessCertificate]]:
    """Twenty single-field edits, each making a false or unsupported claim."""
    c, n0 = cert.c, cert.start_level
    b = lambda n: 1 / c ** (n * n)  # noqa: E731
    regs = list(cert.good_regions)
    first, last = regs[0], regs[-1]
    flip = {"valley": "rising", "rising": "falling", "falling": "valley"}

    def with_region(k, g):
        new = list(regs)
        new[k] = g
        return tuple(new)

    m = cert.mutate
    return [
        ("version", m(version=cert.version + 1)),
        ("point", m(point=Fraction(1))),
        ("side", m(side="left")),
        ("set-kind", m(set_kind="intervalset")),
        ("c", m(c=c + Fraction(1, 2))),
        ("epsilon-halved", m(epsilon=cert.epsilon / 2)),
        ("epsilon-zero", m(epsilon=Fraction(0))),
        ("h-at-span-bound", m(h=1 / cert.bad_span_bound)),
        ("h-zero", m(h=Fraction(0))),
        ("h-below-region", m(h=first.lo)),
        ("start-level", m(start_level=n0 + 1)),
        ("depth", m(depth=cert.depth + 1)),
        ("tail-K", m(tail_K=cert.tail_K + Fraction(1, 10**6))),
        ("tail-theta", m(tail_theta=cert.tail_theta - Fraction(1, 10**6))),
        ("span-bound", m(bad_span_bound=cert.bad_span_bound - Fraction(1, 10**6))),
        ("drop-region", m(good_regions=tuple(regs[:-1]))),
        ("duplicate-region", m(good_regions=(first,) + tuple(regs))),
        ("region-above-block", m(good_regions=with_region(-1, GoodRegion(last.level, last.lo, b(last.level) * c, last.shape)))),
        ("region-below-gap", m(good_regions=with_region(0, GoodRegion(first.level, b(first.level + 1) / c, first.hi, first.shape)))),
        ("region-shape", m(good_regions=with_region(0, GoodRegion(first.level, first.lo, first.hi, flip[first.shape])))),
    ]


def _check_certificate(rec: _Recorder, c: Fraction, eps: Fraction) -> None:
    try:
        cert = certify_with_retry(c, eps)
    except DepthError as exc:
        rec.check("certify", False, str(exc))
        return
    rec.check("certify", True)
    v = verify_certificate(cert)
    rec.check("verify", v.ok, f"c={c} eps={eps}: {v.reason}")
    for name, bad in certificate_mutations(cert):
        rec.check("mutation-rejected", not verify_certificate(bad).ok, f"c={c} eps={eps}: {name} accepted")


def _trial_certificates(rng: random.Random, rec: _Recorder, i: int) -> None:
    if i < len(GRID):
        c, eps = GRID[i]
    else:
        c = Fraction(rng.randint(11, 60), 10)
        eps = Fraction(1, rng.randint(2, 200))
    _check_certificate(rec, c, eps)


# --- registry and runner ---------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    trial: Callable
    default_trials: int
    summary: str


SUITES = {
    s.name: s
    for s in [
        Suite("subadditivity", _trial_subadditive, 1000, "i_limsup subadditive and monotone on step sequences"),
        Suite("density-theorem", _trial_density_theorem, 500, "E and its density points differ by a null set"),
        Suite("limsup-oracle", _trial_limsup_oracle, 500, "Fin-limsup equals the classical limsup; liminf duality"),
        Suite("ideal-axioms", _trial_ideal_axioms, 300, "asymptotic density and ideal closure"),
        Suite("sparse", _trial_sparse, 500, "sparse-family closure properties on interval sets"),
        Suite("idensity", _trial_idensity, 300, "ratio-sequence subadditivity, monotonicity, exceptions"),
        Suite("certificates", _trial_certificates, len(GRID), "sparseness certificates and mutations"),
    ]
}


def _run_range(name: str, seed: int, trials: int, start: int, stop: int) -> SuiteResult:
    suite = SUITES[name]
    result = SuiteResult(name, seed, trials)
    for i in range(start, stop):
        rng = random.Random(f"{name}:{seed}:{i}")
        suite.trial(rng, _Recorder(i, result), i)
    return result


def run_suite(name: str, seed: int = 0, trials: int | None = None, workers: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    trials = SUITES[name].default_trials if trials is None else trials
    if trials < 0:
        raise ValueError("trials must be non-negative")
    if workers <= 1 or trials < 2:
        return _run_range(name, seed, trials, 0, trials)
    bounds = [trials * k // workers for k in range(workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_range, name, seed, trials, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
        parts = [f.result() for f in futures]
    merged = SuiteResult(name, seed, trials)
    for part in parts:
        merged = merged.merge(part)
    return merged


def lemma_suite_sparse(seed: int = 0, trials: int = 500, workers: int = 1) -> SuiteResult:
    return run_suite("sparse", seed, trials, workers)

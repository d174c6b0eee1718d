"""Right-sparseness certificates for gap sets at 0, and their verifier.

A certificate claims: for every interval ``(alpha, beta)`` inside ``(0, h)``
with ``alpha < h * beta`` there is a ``y`` in it with
``|G & (0, y)| < eps * y``.  The verifier re-derives every parameter from
``c``, ``eps`` and the start level using only the interval-set algebra, and
never calls into the code that built the certificate.

Argument checked by :func:`verify_certificate` (levels ``n >= n0``):

* ``M_n = |G & (0, b_n)| < K * b_n`` with ``K = 1 - 1/c + c**-(2 n0 + 1)``;
* on ``G_n = (max(K b_{n+1}/eps, b_{n+1}), min(a_n theta/(1-eps), b_n))``,
  ``theta = 1 - K c**-2n0``, the ratio is below ``eps``: it falls across
  the gap below ``a_n`` and rises across the block above it;
* consecutive ``G_n`` leave closed pieces of multiplicative span at most
  ``beta* = max(K/eps, 1) * max(c (1-eps)/theta, 1)``;
* ``beta* * h < 1`` and ``(max(K b_{n0+1}/eps, b_{n0+1}), h)`` is part of
  ``G_{n0}``, so no admissible ``(alpha, beta)`` fits inside one piece.

Each inequality is monotone in ``n`` through ``c**-2n``, so checking it at
``n0`` covers every deeper level.  The explicit ``good_region`` lines for
``n0..depth`` are re-evaluated pointwise as an extra layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .sets import Interval, intersect, measure, normalize

FORMAT = "isparse-sparseness-certificate"
VERSION = 1


@dataclass(frozen=True)
class GoodRegion:
    level: int
    lo: Fraction
    hi: Fraction
    shape: str  # "valley", "falling" or "rising"


@dataclass(frozen=True)
class SparsenessCertificate:
    c: Fraction
    epsilon: Fraction
    h: Fraction
    depth: int
    start_level: int = 0
    tail_K: Fraction | None = None
    tail_theta: Fraction | None = None
    bad_span_bound: Fraction | None = None
    good_regions: tuple[GoodRegion, ...] = ()
    point: Fraction = Fraction(0)
    side: str = "right"
    set_kind: str = "gapset"
    version: int = VERSION

    @property
    def trivial(self) -> bool:
        return self.epsilon >= 1

    def mutate(self, **changes) -> "SparsenessCertificate":
        return replace(self, **changes)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def dumps(cert: SparsenessCertificate) -> str:
    lines = [
        f"format: {FORMAT}",
        f"version: {cert.version}",
        f"set: {cert.set_kind}",
        f"c: {_fmt(cert.c)}",
        f"point: {_fmt(cert.point)}",
        f"side: {cert.side}",
        f"epsilon: {_fmt(cert.epsilon)}",
        f"depth: {cert.depth}",
        f"start_level: {cert.start_level}",
        f"h: {_fmt(cert.h)}",
    ]
    for name in ("tail_K", "tail_theta", "bad_span_bound"):
        value = getattr(cert, name)
        lines.append(f"{name}: {'-' if value is None else _fmt(value)}")
    for g in cert.good_regions:
        lines.append(f"good_region: {g.level} {_fmt(g.lo)} {_fmt(g.hi)} {g.shape}")
    lines.append("end")
    return "\n".join(lines) + "\n"


class CertificateFormatError(ValueError):
    pass


def loads(text: str) -> SparsenessCertificate:
    fields: dict[str, str] = {}
    regions = []
    saw_end = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "end":
            saw_end = True
            break
        key, sep, value = line.partition(":")
        if not sep:
            raise CertificateFormatError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key, value = key.strip(), value.strip()
        try:
            if key == "good_region":
                level, lo, hi, shape = value.split()
                regions.append(GoodRegion(int(level), Fraction(lo), Fraction(hi), shape))
                continue
        except ValueError as exc:
            raise CertificateFormatError(f"line {lineno}: bad good_region {value!r}") from exc
        if key in fields:
            raise CertificateFormatError(f"line {lineno}: duplicate field {key!r}")
        fields[key] = value
    if not saw_end:
        raise CertificateFormatError("missing 'end' line")
    if fields.get("format") != FORMAT:
        raise CertificateFormatError(f"unknown format {fields.get('format')!r}")

    def opt(name):
        v = fields.get(name, "-")
        return None if v == "-" else Fraction(v)

    try:
        return SparsenessCertificate(
            c=Fraction(fields["c"]),
            epsilon=Fraction(fields["epsilon"]),
            h=Fraction(fields["h"]),
            depth=int(fields["depth"]),
            start_level=int(fields["start_level"]),
            tail_K=opt("tail_K"),
            tail_theta=opt("tail_theta"),
            bad_span_bound=opt("bad_span_bound"),
            good_regions=tuple(regions),
            point=Fraction(fields["point"]),
            side=fields["side"],
            set_kind=fields["set"],
            version=int(fields["version"]),
        )
    except KeyError as exc:
        raise CertificateFormatError(f"missing field {exc.args[0]!r}") from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateFormatError(str(exc)) from exc


# --- verifier -------------------------------------------------------------
# Everything below recomputes the gap set from c on its own.


def _b(c: Fraction, n: int) -> Fraction:
    return 1 / c ** (n * n)


def _ratio_upper(c: Fraction, y: Fraction, depth: int) -> Fraction:
    """Upper bound on ``|G & (0, y)| / y`` using blocks up to ``depth``."""
    blocks = normalize(Interval(_b(c, k) / c, _b(c, k)) for k in range(1, depth + 1))
    seen = measure(intersect(blocks, normalize([Interval(0, y)])))
    return (seen + min(y, _b(c, depth + 1))) / y


def _tail_parameters(c: Fraction, eps: Fraction, n0: int):
    s0 = 1 / c ** (2 * n0)
    K = (1 - 1 / c) + s0 / c
    theta = 1 - K * s0
    beta = max(K / eps, Fraction(1)) * max(c * (1 - eps) / theta, Fraction(1)) if theta > 0 else None
    return s0, K, theta, beta


def _region_bounds(c, eps, K, theta, n):
    b_n, b_next = _b(c, n), _b(c, n + 1)
    lo = max(K * b_next / eps, b_next)
    hi = min(b_n / c * theta / (1 - eps), b_n)
    return lo, hi


def verify_certificate(cert: SparsenessCertificate) -> Verdict:
    def fail(msg: str) -> Verdict:
        return Verdict(False, msg)

    if cert.version != VERSION:
        return fail(f"unsupported version {cert.version}")
    if cert.set_kind != "gapset":
        return fail(f"unsupported set kind {cert.set_kind!r}")
    if cert.point != 0 or cert.side != "right":
        return fail("only right-sparseness at 0 is certified")
    c, eps, h = cert.c, cert.epsilon, cert.h
    if not c > 1:
        return fail(f"c = {c} is not > 1")
    if not eps > 0:
        return fail(f"epsilon = {eps} is not > 0")
    if not h > 0:
        return fail(f"h = {h} is not > 0")

    if eps >= 1:
        # |G & (0,y)| < y because G misses every gap below y
        if (cert.start_level, cert.tail_K, cert.tail_theta, cert.bad_span_bound, cert.good_regions) != (
            0, None, None, None, ()
        ):
            return fail("epsilon >= 1 admits only the trivial certificate")
        if h != 1:
            return fail(f"trivial certificate must have h = 1, got {h}")
        return Verdict(True, "trivial: every point is good")

    n0, N = cert.start_level, cert.depth
    if not 1 <= n0 <= N:
        return fail(f"start level {n0} outside 1..depth={N}")
    s0, K, theta, beta = _tail_parameters(c, eps, n0)
    if cert.tail_K != K:
        return fail(f"tail_K = {cert.tail_K} but 1 - 1/c + c^-(2n0+1) = {K}")
    if cert.tail_theta != theta:
        return fail(f"tail_theta = {cert.tail_theta} but 1 - K c^-2n0 = {theta}")
    if not theta > 0:
        return fail(f"theta = {theta} is not > 0")
    if not K * s0 * (1 - eps) < eps * theta:
        return fail("K c^-2n0 (1-eps) < eps theta fails: good regions may be empty")
    if not s0 * (1 - eps) < theta:
        return fail("c^-2n0 (1-eps) < theta fails: block boundary not good")
    if not K * s0 / c < eps:
        return fail("K c^-(2n0+1) < eps fails: good region overruns its block")
    if cert.bad_span_bound != beta:
        return fail(f"bad_span_bound = {cert.bad_span_bound} but recomputed {beta}")
    if not beta * h < 1:
        return fail(f"beta* h = {beta * h} is not < 1")
    top_lo, top_hi = _region_bounds(c, eps, K, theta, n0)
    if not h <= top_hi:
        return fail(f"h = {h} exceeds the level-{n0} good region end {top_hi}")
    if not top_lo < h:
        return fail(f"h = {h} does not clear the level-{n0} good region start {top_lo}")

    levels = [g.level for g in cert.good_regions]
    if levels != list(range(n0, N + 1)):
        return fail(f"good regions cover levels {levels}, expected {n0}..{N}")
    for g in cert.good_regions:
        n = g.level
        b_n, b_next, a_n = _b(c, n), _b(c, n + 1), _b(c, n) / c
        if not g.lo < g.hi:
            return fail(f"level-{n} region [{g.lo}, {g.hi}] is empty")
        if not (b_next <= g.lo and g.hi <= b_n):
            return fail(f"level-{n} region [{g.lo}, {g.hi}] leaves [b_(n+1), b_n]")
        if not g.hi <= h:
            return fail(f"level-{n} region ends past h")
        shape = "valley" if g.lo < a_n < g.hi else ("falling" if g.hi <= a_n else "rising")
        if g.shape != shape:
            return fail(f"level-{n} region shape is {shape}, certificate says {g.shape}")
        for y in (g.lo, g.hi):
            r = _ratio_upper(c, y, n + 2)
            if not r < eps:
                return fail(f"level-{n} region endpoint {y}: ratio bound {r} is not < eps")
    return Verdict(True, "all inequalities hold")

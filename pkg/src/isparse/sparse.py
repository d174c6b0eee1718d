"""Sparseness: the interval-set trichotomy, gap-set certificates, I-sparse search."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .certificate import GoodRegion, SparsenessCertificate, verify_certificate
from .classical import GapSet, GapUnion, as_gap_union, density_point_set
from .idensity import RealSet, Status, density_point_status
from .indexsets import Ideal
from .sets import Interval, IntervalSet, RationalLike, adjacency, as_rational, normalize


class DepthError(RuntimeError):
    """The requested depth cannot establish the uniform tail pattern."""


def sparse_check_interval_set(E: IntervalSet, p: RationalLike, side: str = "right") -> bool:
    """Sparse at ``p`` on one side iff ``E`` leaves a gap next to ``p`` there.

    With a gap the ratio is eventually 0; with an adjacent interval it is
    eventually 1, beyond any ``eps < 1``.
    """
    right, left = adjacency(E, p)
    if side == "right":
        return not right
    if side == "left":
        return not left
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def sparse_check(E: IntervalSet, p: RationalLike) -> bool:
    return sparse_check_interval_set(E, p, "right") and sparse_check_interval_set(E, p, "left")


def _tail(G: GapSet, eps: Fraction, n0: int):
    c = G.c
    s0 = 1 / c ** (2 * n0)
    K = (1 - 1 / c) + G.b(n0 + 1) / G.b(n0)
    theta = 1 - K * s0
    return s0, K, theta


def _good_region(G: GapSet, eps, K, theta, n):
    lo = max(K * G.b(n + 1) / eps, G.b(n + 1))
    hi = min(G.a(n) * theta / (1 - eps), G.b(n))
    return lo, hi


def _pattern_holds(G: GapSet, eps: Fraction, n0: int) -> bool:
    s0, K, theta = _tail(G, eps, n0)
    return (
        theta > 0
        and K * s0 * (1 - eps) < eps * theta
        and s0 * (1 - eps) < theta
        and K * s0 / G.c < eps
    )


def sparse_certify_right(G: GapSet, eps: RationalLike, N: int) -> SparsenessCertificate:
    """Build a right-sparseness certificate for ``G`` at 0.

    Picks the first level ``n0 <= N`` from which good regions of ratio
    below ``eps`` provably separate every bad stretch, then
    ``h = min(a_n0, end of the level-n0 good region, 1/(beta* + 1))``.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if eps >= 1:
        return SparsenessCertificate(c=G.c, epsilon=eps, h=Fraction(1), depth=N)
    for n0 in range(1, N + 1):
        if not _pattern_holds(G, eps, n0):
            continue
        s0, K, theta = _tail(G, eps, n0)
        beta = max(K / eps, Fraction(1)) * max(G.c * (1 - eps) / theta, Fraction(1))
        top_lo, top_hi = _good_region(G, eps, K, theta, n0)
        h = min(G.a(n0), top_hi, 1 / (beta + 1))
        if not top_lo < h:
            continue
        regions = []
        for n in range(n0, N + 1):
            lo, hi = _good_region(G, eps, K, theta, n)
            hi = min(hi, h)
            a = G.a(n)
            shape = "valley" if lo < a < hi else ("falling" if hi <= a else "rising")
            regions.append(GoodRegion(n, lo, hi, shape))
        return SparsenessCertificate(
            c=G.c, epsilon=eps, h=h, depth=N, start_level=n0,
            tail_K=K, tail_theta=theta, bad_span_bound=beta, good_regions=tuple(regions),
        )
    raise DepthError(
        f"depth {N} is too shallow to certify {G!r} at eps={eps}; retry with a larger depth"
    )


def reflect_left(E: IntervalSet, p: RationalLike = 0) -> IntervalSet:
    """Mirror about ``p`` so left-side questions become right-side ones."""
    return E.reflect(p)


@dataclass(frozen=True)
class Witness:
    """``B`` with ``x`` not an I-density point of ``B`` but one of ``A | B``."""

    B: Union[IntervalSet, GapUnion]
    union: Union[IntervalSet, GapUnion]
    trial: int


def _union(A: RealSet, B) -> Union[IntervalSet, GapUnion, None]:
    if isinstance(A, IntervalSet) and isinstance(B, IntervalSet):
        return A | B
    if isinstance(A, IntervalSet):
        A, B = B, A
    A = as_gap_union(A)
    if isinstance(B, IntervalSet):
        return A | B
    B = as_gap_union(B)
    if A.gap != B.gap:
        return None  # two different gap sets are not representable together
    return GapUnion(A.gap, A.extra | B.extra)


def _random_local_set(rng: random.Random, x: Fraction) -> IntervalSet:
    pieces = []
    for _ in range(rng.randint(1, 4)):
        lo = x + Fraction(rng.randint(-8, 7), rng.randint(1, 4))
        pieces.append((lo, lo + Fraction(rng.randint(1, 6), rng.randint(1, 4))))
    return normalize(pieces)


def _candidates(rng: random.Random, x: Fraction, gap_like: RealSet | None):
    yield IntervalSet.empty()
    yield normalize([(x - 1, x)])
    yield normalize([(x, x + 1)])
    while True:
        kind = rng.random()
        B = _random_local_set(rng, x)
        if kind < 0.2:
            hull = B.hull() or Interval(x - 1, x + 1)
            window = Interval(min(hull.lo, x - 1), max(hull.hi, x + 1))
            B = normalize([window]) - B
        elif kind < 0.3 and gap_like is not None and x == 0:
            yield as_gap_union(gap_like) | B
            continue
        yield B


def i_sparse_falsify(
    A: RealSet, x: RationalLike, I: Ideal, trials: int = 200, seed: int = 0
) -> Witness | None:
    """Search for a witness that ``A`` is *not* I-sparse at ``x``.

    Every set here is measurable, so ``A`` is its own measurable cover.
    "``I-d(x, B) < 1``" is read as "x is not an I-density point of B".
    ``None`` only means nothing was found within ``trials`` candidates.
    """
    x = as_rational(x)
    rng = random.Random(seed)
    gap_like = None if isinstance(A, IntervalSet) else A
    gen = _candidates(rng, x, gap_like if gap_like is not None else GapSet(2))
    for trial in range(trials):
        B = next(gen)
        if density_point_status(B, x) is not Status.NOT_DENSITY_POINT:
            continue
        U = _union(A, B)
        if U is None:
            continue
        if density_point_status(U, x) is Status.DENSITY_POINT:
            return Witness(B, U, trial)
    return None


def sparse_interior(A: IntervalSet) -> IntervalSet:
    """Points of ``A`` at which the complement is I-sparse.

    For a finite union these are the points where the complement has
    density 0 from both sides, i.e. the interior points of ``A``.
    ``density_point_set`` finds exactly those, segment by segment.
    """
    return density_point_set(A)


__all__ = [
    "DepthError",
    "Witness",
    "i_sparse_falsify",
    "reflect_left",
    "sparse_certify_right",
    "sparse_check",
    "sparse_check_interval_set",
    "sparse_interior",
    "verify_certificate",
]

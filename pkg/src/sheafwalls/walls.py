"""Walls of type (c1, c2) in the ample cone of a del Pezzo surface.

A class zeta gives a wall when zeta = c1 (mod 2), c1^2 - 4c2 <= zeta^2 < 0 and
zeta^perp meets the open ample cone.  Walls are stored sign normalized (first
nonzero coordinate positive), so zeta and -zeta are the same wall.

Enumeration uses two facts about a class zeta whose hyperplane meets the ample
cone of a del Pezzo surface: chi(zeta) <= 0 and chi(-zeta) <= 0 (otherwise zeta
or -zeta is effective), which gives |zeta.K| <= -zeta^2 - 2; and Cauchy-Schwarz
on the exceptional coordinates, which then bounds b.  Both cuts are exercised
against an unpruned search in the tests, and ``bound_scale`` widens them for
the doubling check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt, sqrt
from typing import Iterable, Union

from . import lp
from .errors import InvalidInput, PreconditionError
from .lattice import (
    DivisorClass,
    SurfaceModel,
    canonical_class,
    integer_vectors,
    intersect,
    is_ample,
    mori_generators,
    require_ample,
    square,
)

FULL_CONE = "full-cone"


@dataclass(frozen=True)
class WallSpec:
    """Chern data (c1, c2) on a fixed surface; ``x`` is the discriminant 4c2 - c1^2."""

    surface: SurfaceModel
    c1: DivisorClass
    c2: int
    x: int = field(init=False)

    def __post_init__(self):
        self.surface.check(self.c1)
        object.__setattr__(self, "c2", int(self.c2))
        object.__setattr__(self, "x", 4 * self.c2 - square(self.surface, self.c1))

    def twisted(self, M: DivisorClass) -> "WallSpec":
        """Chern data of V (x) O(M): c1 + 2M and c2 + M.c1 + M^2."""
        S = self.surface
        return WallSpec(S, self.c1 + 2 * M, self.c2 + intersect(S, M, self.c1) + square(S, M))


@dataclass(frozen=True, order=True)
class Wall:
    zeta: DivisorClass
    zeta_sq: int = field(compare=False)

    def __str__(self) -> str:
        return str(self.zeta)


@dataclass(frozen=True)
class Segment:
    """Closed segment between two integral ample classes (rays of rational points)."""

    start: DivisorClass
    end: DivisorClass


@dataclass(frozen=True)
class Crossing:
    """A wall separating two polarizations; ``orientation`` is the sign of L1.zeta."""

    wall: Wall
    orientation: int


Region = Union[Segment, str]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# ---------------------------------------------------------------------------
# ample cone membership of zeta^perp


def _probes(S: SurfaceModel) -> tuple[DivisorClass, ...]:
    antiK = -canonical_class(S)
    found = []
    for t in (0, 1, 4, 20):
        d = antiK + t * S.H()
        if is_ample(S, d):
            found.append(d)
    for i in range(1, S.n + 1):
        d = 4 * antiK - S.E(i)
        if is_ample(S, d):
            found.append(d)
    return tuple(found)


_probe_cache: dict[int, tuple[DivisorClass, ...]] = {}


def ample_slack(S: SurfaceModel, zeta: DivisorClass) -> Fraction:
    """Optimal t of: maximize t subject to A.C >= t for every Mori generator C,
    A.zeta = 0 and t <= 1, over rational classes A.

    The value is computed exactly through the dual program (maximize sum(l)
    subject to sum(l_j C_j) = mu*zeta, sum(l) <= 1, l >= 0, mu free), whose
    optimum is 1 - t.  It is therefore either 0 or 1.
    """
    S.check(zeta)
    if zeta.is_zero():
        raise InvalidInput("the zero class does not define a hyperplane")
    gens = mori_generators(S)
    m = len(gens)
    coords = [g.coords for g in gens]
    A_eq = []
    for c in range(S.rank):
        A_eq.append([coords[j][c] for j in range(m)] + [-zeta.coords[c]])
    res = lp.linprog(
        c=[1] * m + [0],
        A_ub=[[1] * m + [0]],
        b_ub=[1],
        A_eq=A_eq,
        b_eq=[0] * S.rank,
        free=[m],
    )
    assert res.status == lp.OPTIMAL
    return 1 - res.value


def ample_witness(S: SurfaceModel, zeta: DivisorClass) -> DivisorClass | None:
    """Solve the slack program in its primal form and return an integral ample
    class orthogonal to zeta, or None when zeta^perp misses the ample cone.

    The primal has one row per Mori generator, so this is the slow route; it is
    kept as an independent check of :func:`ample_slack`.
    """
    S.check(zeta)
    if zeta.is_zero():
        raise InvalidInput("the zero class does not define a hyperplane")
    r = S.rank
    sig = [1] + [-1] * S.n

    def form(d):
        return [sig[i] * d.coords[i] for i in range(r)]

    A_ub = [[-v for v in form(C)] + [1] for C in mori_generators(S)]
    b_ub = [0] * len(A_ub)
    A_ub.append([0] * r + [1])
    b_ub.append(1)
    res = lp.linprog(
        c=[0] * r + [1],
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=[form(zeta) + [0]],
        b_eq=[0],
        free=list(range(r + 1)),
    )
    assert res.status == lp.OPTIMAL
    if res.value <= 0:
        return None
    den = 1
    for v in res.x[:r]:
        den = den * v.denominator // _gcd(den, v.denominator)
    return DivisorClass.from_coords([int(v * den) for v in res.x[:r]])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=200_000)
def _meets_cached(n: int, b: int, sorted_a: tuple[int, ...]) -> bool:
    S = SurfaceModel(n)
    zeta = DivisorClass(b, sorted_a)
    probes = _probe_cache.get(n)
    if probes is None:
        probes = _probe_cache[n] = _probes(S)
    signs = {_sign(intersect(S, p, zeta)) for p in probes}
    if 0 in signs or signs == {-1, 1}:
        return True
    return ample_slack(S, zeta) > 0


def hyperplane_meets_ample_cone(S: SurfaceModel, zeta: DivisorClass) -> bool:
    """True iff some ample rational class A has A.zeta = 0."""
    S.check(zeta)
    if zeta.is_zero():
        raise InvalidInput("the zero class does not define a hyperplane")
    if S.n == 0:
        return False
    # the generator set is stable under permuting the E_i
    return _meets_cached(S.n, zeta.b, tuple(sorted(zeta.a)))


# ---------------------------------------------------------------------------
# wall predicates


def _parity_ok(spec: WallSpec, zeta: DivisorClass) -> bool:
    return all((u - v) % 2 == 0 for u, v in zip(zeta.coords, spec.c1.coords))


def is_wall_class(spec: WallSpec, zeta: DivisorClass) -> bool:
    S = spec.surface
    S.check(zeta)
    if zeta.is_zero() or not _parity_ok(spec, zeta):
        return False
    zsq = square(S, zeta)
    if not -spec.x <= zsq < 0:
        return False
    return hyperplane_meets_ample_cone(S, zeta)


def make_wall(spec: WallSpec, zeta: DivisorClass) -> Wall:
    if not is_wall_class(spec, zeta):
        raise InvalidInput(f"{zeta} is not a wall of type (c1={spec.c1}, c2={spec.c2})")
    z = zeta.sign_normalized()
    return Wall(z, square(spec.surface, z))


# ---------------------------------------------------------------------------
# enumeration


def b_window(n: int, k: int, s: int) -> tuple[int, int] | None:
    """Integers b with (k - 3b)^2 <= n (b^2 + s), i.e. Cauchy-Schwarz for
    sum(a) = k - 3b and sum(a^2) = b^2 + s."""
    if n == 0:
        return None
    # (9 - n) b^2 - 6 k b + k^2 - n s <= 0
    qa, qb, qc = 9 - n, -6 * k, k * k - n * s
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return None
    root = isqrt(disc)
    lo = -((qb + root + 1) // (2 * qa)) - 1
    hi = (-qb + root + 1) // (2 * qa) + 1
    return lo, hi


def _candidates(
    spec: WallSpec,
    k_window,
    s_min: int,
    b_limit: int | None = None,
) -> Iterable[DivisorClass]:
    """Classes zeta = c1 (mod 2) with b >= 0, -zeta^2 in [s_min, x] and
    |zeta.(-K)| <= k_window(s).  Every b = 0 class comes with both signs."""
    S, x = spec.surface, spec.x
    n = S.n
    pb = spec.c1.b % 2
    pa = spec.c1.a
    for s in range(max(s_min, 1), x + 1):
        kw = k_window(s)
        if kw < 0:
            continue
        for k in range(-kw, kw + 1):
            # k = 3b + sum(a) has the parity of s
            if (k - s) % 2:
                continue
            br = b_window(n, k, s)
            if br is None:
                continue
            lo, hi = max(br[0], 0), br[1]
            if b_limit is not None:
                hi = min(hi, b_limit)
            for b in range(lo, hi + 1):
                if (b - pb) % 2:
                    continue
                for a in integer_vectors(n, b * b + s, k - 3 * b, pa):
                    yield DivisorClass(b, a)


def _k_window(scale: int):
    def window(s: int) -> int:
        base = s - 2
        return base if scale == 1 else scale * max(base, 0) + scale
    return window


def _full_cone(spec: WallSpec, scale: int) -> list[Wall]:
    S = spec.surface
    if S.n == 0 or spec.x < 1:
        return []
    s_min = 2 if scale == 1 else 1
    out = set()
    for zeta in _candidates(spec, _k_window(scale), s_min):
        if hyperplane_meets_ample_cone(S, zeta):
            z = zeta.sign_normalized()
            out.add(Wall(z, square(S, z)))
    return sorted(out)


def _segment_gamma(S: SurfaceModel, P: DivisorClass, Q: DivisorClass) -> Fraction:
    """Lower bound for R^2 / (H-coefficient of R)^2 over the rays of [P, Q].

    Rescaling to q0*P and p0*Q gives the same rays with equal H-coefficient,
    and R^2 is at least the smallest of the three products on that segment.
    """
    p0, q0 = P.b, Q.b
    return min(
        Fraction(square(S, P), p0 * p0),
        Fraction(intersect(S, P, Q), p0 * q0),
        Fraction(square(S, Q), q0 * q0),
    )


def _suffix_stats(coeffs: tuple[int, ...]) -> list[tuple[float, float]]:
    """For each suffix: (mean, norm of the part orthogonal to the all-ones vector)."""
    out = []
    for i in range(len(coeffs) + 1):
        tail = coeffs[i:]
        if not tail:
            out.append((0.0, 0.0))
            continue
        mean = sum(tail) / len(tail)
        out.append((mean, sqrt(sum((c - mean) ** 2 for c in tail))))
    return out


def _linear_range(stats, i: int, r: int, q: int, s: int) -> tuple[float, float]:
    """Range of sum(c_j a_j) over the last r coordinates given their sum s and
    sum of squares q (Cauchy-Schwarz on the component orthogonal to (1, ..., 1))."""
    mean, perp = stats[i]
    spread = perp * sqrt(max(q - s * s / r, 0.0)) if r else 0.0
    centre = mean * s
    return centre - spread, centre + spread


_SLACK = 1e-7


def _crossing_vectors(n, q, s, parity, b, P, Q, ps, qs):
    """integer_vectors(n, q, s, parity) restricted to a with P.zeta and Q.zeta
    of opposite signs (or both zero), zeta = (b; a).  ``ps`` and ``qs`` are the
    suffix statistics of P.a and Q.a.  The float ranges only prune; the caller
    re-checks every yielded class exactly."""
    pu, qu = P.a, Q.a
    base_p, base_q = P.b * b, Q.b * b

    def rec(i, q_left, s_left, fp, fq, prefix):
        r = n - i
        if q_left < 0 or s_left * s_left > r * q_left or (s_left - q_left) % 2:
            return
        # P.zeta = base_p - sum(P.a_j a_j)
        lo, hi = _linear_range(ps, i, r, q_left, s_left)
        p_lo, p_hi = base_p - fp - hi, base_p - fp - lo
        lo, hi = _linear_range(qs, i, r, q_left, s_left)
        q_lo, q_hi = base_q - fq - hi, base_q - fq - lo
        tol_p = _SLACK * (1 + abs(p_lo) + abs(p_hi))
        tol_q = _SLACK * (1 + abs(q_lo) + abs(q_hi))
        if p_lo > tol_p and q_lo > tol_q:
            return
        if p_hi < -tol_p and q_hi < -tol_q:
            return
        if r == 0:
            if q_left == 0 and s_left == 0:
                yield tuple(prefix)
            return
        root = isqrt((r - 1) * (r * q_left - s_left * s_left))
        v_lo = -((root - s_left) // r)
        v_hi = (s_left + root) // r
        step = 1
        if parity is not None:
            if (v_lo - parity[i]) % 2:
                v_lo += 1
            step = 2
        for v in range(v_lo, v_hi + 1, step):
            prefix.append(v)
            yield from rec(i + 1, q_left - v * v, s_left - v, fp + pu[i] * v, fq + qu[i] * v, prefix)
            prefix.pop()

    yield from rec(0, q, s, 0, 0, [])


def _segment(spec: WallSpec, P: DivisorClass, Q: DivisorClass, scale: int) -> list[Wall]:
    """Walls whose hyperplane meets the open segment (P, Q), or contains it."""
    S = spec.surface
    n = S.n
    if n == 0 or spec.x < 1:
        return []
    gamma = _segment_gamma(S, P, Q)
    # zeta perp R with R on the segment gives b^2 <= s (1/gamma - 1)
    b_cap = scale * (isqrt(int(spec.x * (1 / gamma - 1)) + 1) + 1)
    s_min = 2 if scale == 1 else 1
    window = _k_window(scale)
    pb = spec.c1.b % 2
    parity = tuple(v % 2 for v in spec.c1.a)
    ps, qs = _suffix_stats(P.a), _suffix_stats(Q.a)
    out = set()
    for s in range(s_min, spec.x + 1):
        kw = window(s)
        for k in range(-kw, kw + 1):
            if (k - s) % 2:
                continue
            br = b_window(n, k, s)
            if br is None:
                continue
            for b in range(max(br[0], 0), min(br[1], b_cap) + 1):
                if (b - pb) % 2:
                    continue
                for a in _crossing_vectors(n, b * b + s, k - 3 * b, parity, b, P, Q, ps, qs):
                    zeta = DivisorClass(b, a)
                    p, q = intersect(S, P, zeta), intersect(S, Q, zeta)
                    if p * q < 0 or (p == 0 and q == 0):
                        z = zeta.sign_normalized()
                        out.add(Wall(z, square(S, z)))
    return sorted(out)


def enumerate_walls(spec: WallSpec, region: Region = FULL_CONE, bound_scale: int = 1) -> list[Wall]:
    """All walls of type (c1, c2) meeting ``region``, canonically sorted.

    ``region`` is either ``"full-cone"`` (the open ample cone) or a
    :class:`Segment` with ample endpoints, in which case the walls meeting the
    open segment are returned.  ``bound_scale`` > 1 widens the internal search
    windows and is only used to certify completeness.
    """
    S = spec.surface
    if bound_scale < 1:
        raise InvalidInput("bound_scale must be a positive integer")
    if region == FULL_CONE:
        return _full_cone(spec, bound_scale)
    if isinstance(region, Segment):
        S.check(region.start, region.end)
        require_ample(S, region.start, "segment start")
        require_ample(S, region.end, "segment end")
        return _segment(spec, region.start, region.end, bound_scale)
    raise InvalidInput(f"unknown region {region!r}; use 'full-cone' or a Segment")


def walls_through(spec: WallSpec, L: DivisorClass) -> list[Wall]:
    """Walls whose hyperplane contains the ample class L."""
    S = spec.surface
    S.check(L)
    require_ample(S, L, "polarization")
    return _segment(spec, L, L, 1)


def is_generic(spec: WallSpec, L: DivisorClass) -> bool:
    return not walls_through(spec, L)


def _require_generic(spec: WallSpec, L: DivisorClass, name: str) -> None:
    on = walls_through(spec, L)
    if on:
        raise PreconditionError(
            f"{name} {L} lies on the wall zeta={on[0].zeta} of type (c1={spec.c1}, c2={spec.c2})"
        )


def separating_walls(spec: WallSpec, L0: DivisorClass, L1: DivisorClass) -> list[Crossing]:
    """Walls with (L0.zeta)(L1.zeta) < 0, each with the sign of L1.zeta."""
    S = spec.surface
    S.check(L0, L1)
    require_ample(S, L0, "L0")
    require_ample(S, L1, "L1")
    _require_generic(spec, L0, "L0")
    _require_generic(spec, L1, "L1")
    return [
        Crossing(w, _sign(intersect(S, L1, w.zeta)))
        for w in _segment(spec, L0, L1, 1)
    ]


def same_chamber(spec: WallSpec, L0: DivisorClass, L1: DivisorClass) -> bool:
    return not separating_walls(spec, L0, L1)

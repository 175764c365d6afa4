"""The integer system

    a_1^2 + ... + a_8^2 = x + b^2
    -a_1 - ... - a_8    = x - 2 + 3b

whose positive-b solutions are the walls that can create a new component of
a rank 2 moduli space on a del Pezzo surface (zero padded to 8 points).
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache
from itertools import permutations
from math import isqrt

from .errors import InvalidInput, PreconditionError

NVARS = 8


@dataclass(frozen=True, order=True)
class DaggerSolution:
    b: int
    a: tuple[int, ...]
    x: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if len(self.a) != NVARS:
            raise InvalidInput(f"a solution has exactly {NVARS} a-coordinates, got {len(self.a)}")
        if not is_solution(self.x, self.b, self.a):
            raise InvalidInput(f"(b={self.b}, a={self.a}) does not solve the system for x={self.x}")

    def multiset(self) -> "DaggerSolution":
        """Representative of the permutation class: a sorted ascending."""
        return DaggerSolution(self.b, tuple(sorted(self.a)), self.x)

    def as_dict(self) -> dict:
        return {"b": self.b, "a": list(self.a)}


def is_solution(x: int, b: int, a) -> bool:
    a = tuple(a)
    if len(a) != NVARS:
        return False
    return sum(v * v for v in a) == x + b * b and -sum(a) == x - 2 + 3 * b


@lru_cache(maxsize=None)
def _sorted_completions(r: int, q: int, s: int, lo: int) -> tuple[tuple[int, ...], ...]:
    """Non-decreasing tuples of length r with entries >= lo, sum of squares q and sum s.

    The memo key is the DP state (remaining length, remaining sum of squares,
    remaining sum), plus the lower bound that makes the tuples sorted.
    """
    if q < 0 or s * s > r * q or (q - s) % 2:
        return ()
    if r == 0:
        return ((),) if q == 0 and s == 0 else ()
    m = isqrt(q)
    out = []
    for v in range(max(lo, -m), m + 1):
        # all remaining entries are >= v, so their sum is at least r*v
        if r * v > s:
            break
        for tail in _sorted_completions(r - 1, q - v * v, s - v, v):
            out.append((v,) + tail)
    return tuple(out)


def _distinct_permutations(seq: tuple[int, ...]) -> set[tuple[int, ...]]:
    return set(permutations(seq))


def default_b_range(x: int) -> tuple[int, int]:
    span = 10 * max(3, x)
    return -span, span


def brute_solutions(
    x: int,
    b_min: int | None = None,
    b_max: int | None = None,
    ordered: bool = False,
) -> list[DaggerSolution]:
    """Every solution with b_min <= b <= b_max, by dynamic programming per b.

    With ``ordered=False`` (the default) one representative per permutation
    class of the a_i is returned, with a sorted ascending.  ``ordered=True``
    lists every ordered tuple.  Entries obey |a_i| <= ceil(sqrt(x + b^2)),
    which the first equation forces.
    """
    lo, hi = default_b_range(x)
    b_min = lo if b_min is None else b_min
    b_max = hi if b_max is None else b_max
    if b_min > b_max:
        raise InvalidInput(f"empty b range [{b_min}, {b_max}]")
    found = []
    for b in range(b_min, b_max + 1):
        q = x + b * b
        if q < 0:
            continue
        for a in _sorted_completions(NVARS, q, -(x - 2 + 3 * b), -(isqrt(q) + 1)):
            if ordered:
                found.extend(DaggerSolution(b, p, x) for p in _distinct_permutations(a))
            else:
                found.append(DaggerSolution(b, a, x))
    return sorted(found)


def classify_positive_b(x: int) -> list[DaggerSolution]:
    """Closed form for the positive-b solutions when x >= 3, up to permuting a.

    b = 1 with x + 1 entries equal to -1, and b = 2 with x + 4 entries equal to
    -1, each present only when it fits in 8 coordinates; the rest are 0.
    """
    if x < 3:
        raise PreconditionError(
            f"the closed-form classification needs x >= 3 (got x={x}); use brute_solutions instead"
        )
    out = []
    for b, ones in ((1, x + 1), (2, x + 4)):
        if ones <= NVARS:
            out.append(DaggerSolution(b, (-1,) * ones + (0,) * (NVARS - ones), x))
    return out


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number (p + q*sqrt(d)) / r with integers, d >= 0 and r > 0."""

    p: int
    q: int
    d: int
    r: int

    def floor(self) -> int:
        # floor((p + y)/r) == floor((p + floor(y))/r) for integer p and r > 0
        n = self.q * self.q * self.d
        root = isqrt(n)
        if self.q >= 0:
            return (self.p + root) // self.r
        ceil_root = root if root * root == n else root + 1
        return (self.p - ceil_root) // self.r

    def sign(self) -> int:
        # sign of p + q sqrt(d)
        left, right = self.p, self.q
        if right == 0 or self.d == 0:
            return (left > 0) - (left < 0)
        rs = 1 if right > 0 else -1
        if left == 0:
            return rs
        ls = 1 if left > 0 else -1
        if ls == rs:
            return ls
        # opposite signs: compare p^2 with q^2 d
        diff = left * left - right * right * self.d
        return ls if diff > 0 else (0 if diff == 0 else rs)

    def decimal(self, digits: int = 30) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            val = (Decimal(self.p) + Decimal(self.q) * Decimal(self.d).sqrt()) / Decimal(self.r)
            return +val

    def __str__(self) -> str:
        sign = "+" if self.q >= 0 else "-"
        return f"({self.p} {sign} {abs(self.q)}*sqrt({self.d}))/{self.r}"


def bound_discriminant(x: int) -> int:
    return 36 * (x - 2) ** 2 - 4 * ((x - 2) ** 2 - 8 * x)


def real_b_bounds(x: int) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Roots b^- <= b^+ of b^2 + 6(x-2) b + (x-2)^2 - 8x, the extreme values of
    b over real solutions (reached when all a_i are equal)."""
    disc = bound_discriminant(x)
    if disc < 0:
        raise InvalidInput(f"no real roots for x={x} (discriminant {disc} < 0)")
    p = -6 * (x - 2)
    return QuadraticSurd(p, -1, disc, 2), QuadraticSurd(p, 1, disc, 2)

"""Integer intersection theory on the plane blown up at n <= 8 general points.

Classes are written in the basis (H, E_1, ..., E_n) where H is the pullback
of a line and E_i are the exceptional curves, so that H^2 = 1, E_i^2 = -1 and
all other products vanish.  Everything here is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Sequence

from .errors import InvalidInput, PreconditionError

MAX_POINTS = 8


@dataclass(frozen=True, order=True)
class DivisorClass:
    """The class b*H + a_1*E_1 + ... + a_n*E_n.

    Instances order lexicographically on (b, a_1, ..., a_n), which is the
    canonical ordering used for every returned set of classes.
    """

    b: int
    a: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "DivisorClass":
        if len(coords) == 0:
            raise InvalidInput("a divisor class needs at least the H coefficient")
        return cls(coords[0], tuple(coords[1:]))

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        """Parse ``"b,a1,...,an"``."""
        try:
            coords = [int(tok) for tok in text.split(",")]
        except ValueError:
            raise InvalidInput(f"cannot parse divisor class {text!r}; expected b,a1,...,an") from None
        return cls.from_coords(coords)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.b,) + self.a

    def is_zero(self) -> bool:
        return self.b == 0 and not any(self.a)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same_length(self, other)
        return DivisorClass(self.b + other.b, tuple(x + y for x, y in zip(self.a, other.a)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.b, tuple(-v for v in self.a))

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.b, tuple(k * v for v in self.a))

    def padded(self, length: int) -> "DivisorClass":
        if length < self.n:
            raise InvalidInput(f"cannot pad a class with {self.n} exceptional coordinates to {length}")
        return DivisorClass(self.b, self.a + (0,) * (length - self.n))

    def permuted(self, perm: Sequence[int]) -> "DivisorClass":
        """Return the class whose i-th exceptional coordinate is ``a[perm[i]]``."""
        return DivisorClass(self.b, tuple(self.a[p] for p in perm))

    def sign_normalized(self) -> "DivisorClass":
        """Return +/- self so that the first nonzero coordinate is positive."""
        for v in self.coords:
            if v:
                return self if v > 0 else -self
        return self

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.coords)

    def pretty(self) -> str:
        """Human readable form such as ``H-2E1``."""
        terms = []
        for coeff, name in zip(self.coords, ["H"] + [f"E{i + 1}" for i in range(self.n)]):
            if coeff == 0:
                continue
            mag = "" if abs(coeff) == 1 else str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            terms.append(f"{sign}{mag}{name}")
        if not terms:
            return "0"
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out


def _check_same_length(d1: DivisorClass, d2: DivisorClass) -> None:
    if d1.n != d2.n:
        raise InvalidInput(f"classes live on different lattices (n={d1.n} vs n={d2.n})")


@dataclass(frozen=True)
class SurfaceModel:
    """The plane blown up at ``n`` general points, 0 <= n <= 8."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= MAX_POINTS:
            raise InvalidInput(f"number of blown-up points must be in 0..{MAX_POINTS}, got {self.n!r}")

    @property
    def rank(self) -> int:
        return self.n + 1

    @property
    def canonical(self) -> DivisorClass:
        return canonical_class(self)

    def cls(self, b: int, *a: int) -> DivisorClass:
        """Build a class on this surface, zero padding the E coordinates."""
        if len(a) > self.n:
            raise InvalidInput(f"too many exceptional coordinates for n={self.n}")
        return DivisorClass(b, tuple(a) + (0,) * (self.n - len(a)))

    def H(self) -> DivisorClass:
        return self.cls(1)

    def E(self, i: int) -> DivisorClass:
        """The exceptional class E_i, 1-based."""
        if not 1 <= i <= self.n:
            raise InvalidInput(f"E_{i} does not exist for n={self.n}")
        return DivisorClass(0, tuple(1 if j == i - 1 else 0 for j in range(self.n)))

    def check(self, *classes: DivisorClass) -> None:
        for d in classes:
            if d.n != self.n:
                raise InvalidInput(
                    f"class {d} has {d.n} exceptional coordinates but the surface has n={self.n}"
                )


def intersect(S: SurfaceModel, d1: DivisorClass, d2: DivisorClass) -> int:
    S.check(d1, d2)
    return d1.b * d2.b - sum(x * y for x, y in zip(d1.a, d2.a))


def square(S: SurfaceModel, d: DivisorClass) -> int:
    return intersect(S, d, d)


def canonical_class(S: SurfaceModel) -> DivisorClass:
    return DivisorClass(-3, (1,) * S.n)


def euler_characteristic(S: SurfaceModel, d: DivisorClass) -> int:
    """Riemann-Roch: chi(O(D)) = 1 + (D.D - D.K)/2."""
    num = square(S, d) - intersect(S, d, canonical_class(S))
    # D^2 - D.K is always even on a rational surface
    assert num % 2 == 0
    return 1 + num // 2


def h1_wall(S: SurfaceModel, zeta: DivisorClass) -> int:
    """zeta.K/2 - zeta^2/2 - 1, the h^1 of a wall class on a rational surface."""
    num = intersect(S, zeta, canonical_class(S)) - square(S, zeta)
    assert num % 2 == 0
    return num // 2 - 1


def integer_vectors(
    length: int,
    sumsq: int,
    total: int,
    parity: Sequence[int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every integer vector v of the given length with sum(v_i^2) == sumsq
    and sum(v_i) == total, optionally with v_i = parity[i] mod 2.

    Branches are cut with the Cauchy-Schwarz bound total^2 <= length*sumsq, which
    keeps the search proportional to the number of solutions plus a small overhead.
    """
    if parity is not None and len(parity) != length:
        raise InvalidInput("parity pattern has the wrong length")
    yield from _vectors(length, sumsq, total, tuple(p % 2 for p in parity) if parity is not None else None)


def _vectors(r: int, q: int, s: int, parity: tuple[int, ...] | None) -> Iterator[tuple[int, ...]]:
    if q < 0 or s * s > r * q or (s - q) % 2:
        return
    if r == 0:
        if q == 0 and s == 0:
            yield ()
        return
    if r == 1:
        if s * s == q and (parity is None or (s - parity[0]) % 2 == 0):
            yield (s,)
        return
    # (s - v)^2 <= (r - 1)(q - v^2)  <=>  |r v - s| <= sqrt((r - 1)(r q - s^2))
    root = isqrt((r - 1) * (r * q - s * s))
    lo = -((root - s) // r)
    hi = (s + root) // r
    step = 1
    if parity is not None:
        if (lo - parity[0]) % 2:
            lo += 1
        step = 2
    rest = parity[1:] if parity is not None else None
    for v in range(lo, hi + 1, step):
        yield from ((v,) + tail for tail in _vectors(r - 1, q - v * v, s - v, rest))


def _minus_one_search(n: int, bound: int) -> frozenset[DivisorClass]:
    found = set()
    for b in range(-bound, bound + 1):
        # C^2 = -1  ->  sum a^2 = b^2 + 1 ;  C.K = -1  ->  sum a = 1 - 3b
        for a in integer_vectors(n, b * b + 1, 1 - 3 * b):
            found.add(DivisorClass(b, a))
    return frozenset(found)


@lru_cache(maxsize=None)
def _minus_one_cached(n: int) -> tuple[DivisorClass, ...]:
    if n == 0:
        return ()
    bound = 2
    current = _minus_one_search(n, bound)
    while True:
        doubled = _minus_one_search(n, 2 * bound)
        if doubled == current:
            return tuple(sorted(current))
        bound *= 2
        current = doubled


def minus_one_classes(S: SurfaceModel, bound: int | None = None) -> tuple[DivisorClass, ...]:
    """All classes C with C^2 = C.K = -1, lexicographically sorted.

    Without ``bound`` the search radius on |b| is doubled until two consecutive
    runs agree.  With an explicit ``bound`` a single search is run, which is
    what the completeness tests use.
    """
    if bound is not None:
        return tuple(sorted(_minus_one_search(S.n, bound)))
    return _minus_one_cached(S.n)


@lru_cache(maxsize=None)
def _mori_cached(n: int) -> tuple[DivisorClass, ...]:
    S = SurfaceModel(n)
    if n == 0:
        return (S.H(),)
    if n == 1:
        return tuple(sorted([S.E(1), S.H() - S.E(1)]))
    return _minus_one_cached(n)


def mori_generators(S: SurfaceModel) -> tuple[DivisorClass, ...]:
    """Generators of the cone of curves; a class is ample iff it is positive on all of them."""
    return _mori_cached(S.n)


def is_ample(S: SurfaceModel, d: DivisorClass) -> bool:
    S.check(d)
    return all(intersect(S, d, c) > 0 for c in mori_generators(S))


def require_ample(S: SurfaceModel, d: DivisorClass, name: str = "class") -> None:
    if not is_ample(S, d):
        raise PreconditionError(f"{name} {d} is not ample on the blow-up at {S.n} points")

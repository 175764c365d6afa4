"""Dimension counts and wall numerics for rank 2 sheaves on del Pezzo surfaces,
and the component-creation analysis between a polarization near H and an
arbitrary generic one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from . import diophantine
from .errors import InvalidInput, PreconditionError
from .lattice import (
    DivisorClass,
    SurfaceModel,
    h1_wall,
    integer_vectors,
    intersect,
    mori_generators,
    require_ample,
    square,
)
from .walls import (
    b_window,
    Wall,
    WallSpec,
    is_wall_class,
    separating_walls,
    walls_through,
)

IRREDUCIBLE_OR_EMPTY = "irreducible-or-empty"
PAPER_ASSERTS_EMPTY = "paper-asserts-empty"
NO_CREATING_WALLS = "no-creating-walls"

DIMENSION_SIGN_WARNING = (
    "dimension-sign: the emptiness claim for this branch rests on a negative expected "
    "dimension, but 4c2 - c1^2 - 3 evaluates to {dim} here"
)
BOUNDARY_WARNING = (
    "boundary-wall: zeta={zeta} passes through H (H.zeta = 0) and satisfies N(-zeta) = -1 "
    "for the ordered pair (L0, L); it is excluded from the creating list, which only "
    "admits H.zeta > 0"
)
NEGATIVE_DIM_WARNING = (
    "negative-dimension: x = {x} < 3, so the expected dimension {dim} is negative and the "
    "positive-b classification of creating walls does not apply"
)


def expected_dimension(rank: int, c1_sq: int, c2: int, chi_O: int) -> int:
    """2 r c2 - (r - 1) c1^2 - (r^2 - 1) chi(O)."""
    return 2 * rank * c2 - (rank - 1) * c1_sq - (rank * rank - 1) * chi_O


def moduli_dim_delpezzo(S: SurfaceModel, c1: DivisorClass, c2: int) -> int:
    S.check(c1)
    return 4 * c2 - square(S, c1) - 3


@dataclass(frozen=True)
class WallNumerics:
    l_zeta: int
    N_zeta: int
    N_minus_zeta: int
    dim_moduli: int
    creates_component: bool

    def as_dict(self) -> dict:
        return {
            "l_zeta": self.l_zeta,
            "N_zeta": self.N_zeta,
            "N_minus_zeta": self.N_minus_zeta,
            "dim_moduli": self.dim_moduli,
            "creates_component": self.creates_component,
        }


def wall_numerics(S: SurfaceModel, zeta: DivisorClass, c1: DivisorClass, c2: int) -> WallNumerics:
    """Numerics of the wall zeta for the orientation as given (not normalized).

    creates_component records N(-zeta) = -1, i.e. that the sheaves destabilized
    when crossing from zeta.L > 0 to zeta.L < 0 fill a family of full dimension.
    """
    spec = WallSpec(S, c1, c2)
    if not is_wall_class(spec, zeta):
        raise InvalidInput(f"{zeta} is not a wall of type (c1={c1}, c2={c2})")
    return _numerics(spec, zeta)


def _numerics(spec: WallSpec, zeta: DivisorClass) -> WallNumerics:
    """wall_numerics for a class already known to be a wall."""
    S = spec.surface
    num = spec.x + square(S, zeta)
    assert num % 4 == 0, "zeta = c1 mod 2 forces 4 | x + zeta^2"
    l = num // 4
    n_plus = h1_wall(S, zeta) + l - 1
    n_minus = h1_wall(S, -zeta) + l - 1
    dim = moduli_dim_delpezzo(S, spec.c1, spec.c2)
    assert n_plus + n_minus + 2 * l == spec.x - 4
    return WallNumerics(l, n_plus, n_minus, dim, n_minus == -1)


@dataclass(frozen=True)
class NormalizedC1:
    c1: DivisorClass
    twist: DivisorClass
    c2: int
    relabeling: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "c1": str(self.c1),
            "twist": str(self.twist),
            "c2": self.c2,
            "relabeling": list(self.relabeling),
        }


def normalize_c1(S: SurfaceModel, c1: DivisorClass, c2: int) -> NormalizedC1:
    """Twist by M so that every coordinate of c1 + 2M is 0 or 1.

    ``relabeling`` lists the exceptional indices (1-based) with the odd ones
    first, i.e. the relabeling that turns the result into H + E_1 + ... + E_m
    or E_1 + ... + E_m.
    """
    S.check(c1)
    c1n = DivisorClass(c1.b % 2, tuple(v % 2 for v in c1.a))
    M = DivisorClass((c1n.b - c1.b) // 2, tuple((u - v) // 2 for u, v in zip(c1n.a, c1.a)))
    c2n = c2 + intersect(S, M, c1) + square(S, M)
    odd = [i + 1 for i, v in enumerate(c1n.a) if v]
    even = [i + 1 for i, v in enumerate(c1n.a) if not v]
    assert 4 * c2n - square(S, c1n) == 4 * c2 - square(S, c1)
    return NormalizedC1(c1n, M, c2n, tuple(odd + even))


def near_H_polarization(S: SurfaceModel, c1: DivisorClass, c2: int) -> DivisorClass:
    """An integral ample class L0 = N*H - sum(w_i E_i) in a chamber whose
    closure contains H.

    For every wall with H.zeta != 0 the sign of L0.zeta is that of H.zeta.  For
    walls through H the weights w_i = B^(n-i) make the sign that of the first
    nonzero E-coefficient of zeta.  N and B come from the bounds a wall must
    satisfy near H (|a_i| <= sqrt(x) when b = 0, and no wall with b != 0 meets
    the segment (H, L0] once N^2 > (x + 1) * sum(w_i^2)), so no enumeration
    is needed.
    """
    S.check(c1)
    n = S.n
    if n == 0:
        return S.H()
    x = 4 * c2 - square(S, c1)
    B = isqrt(max(x, 0)) + 2
    w = [B ** (n - 1 - i) for i in range(n)]
    W = sum(v * v for v in w)
    N = isqrt(W * (max(x, 0) + 1)) + 1
    for C in mori_generators(S):
        if C.b > 0:
            need = -sum(wi * ai for wi, ai in zip(w, C.a))
            # L0.C = N*b_C + sum(w_i a_i) must be positive
            N = max(N, need // C.b + 1)
    L0 = DivisorClass(N, tuple(-v for v in w))
    require_ample(S, L0, "near-H polarization")
    return L0


def potential_creating_walls(S: SurfaceModel, c1: DivisorClass, c2: int) -> list[DivisorClass]:
    """Every oriented wall zeta of type (c1, c2) with H.zeta > 0 and N(-zeta) = -1.

    These are the only walls that can create a component when moving from the
    chamber of L0 to any generic L.  They are found as positive-b solutions of
    the wall system in n variables (the 8-variable system with zeros padded),
    with b at most floor(b^+), then filtered to actual walls.
    """
    spec = WallSpec(S, c1, c2)
    x = spec.x
    if S.n == 0 or x < 1:
        return []
    # a solution has zeta^2 = -x and zeta.(-K) = 2 - x, so the Cauchy-Schwarz
    # window used for wall enumeration applies as well
    window = b_window(S.n, 2 - x, x)
    if window is None:
        return []
    b_hi = min(diophantine.real_b_bounds(x)[1].floor(), window[1])
    out = []
    for b in range(1, b_hi + 1):
        if (b - c1.b) % 2:
            continue
        for a in integer_vectors(S.n, x + b * b, -(x - 2 + 3 * b), c1.a):
            zeta = DivisorClass(b, a)
            if is_wall_class(spec, zeta):
                assert wall_numerics(S, zeta, c1, c2).creates_component
                out.append(zeta)
    return sorted(out)


@dataclass(frozen=True)
class SeparatingWall:
    wall: Wall
    oriented: DivisorClass  # L0.oriented > 0 > L.oriented
    numerics: WallNumerics

    def as_dict(self) -> dict:
        return {
            "wall": str(self.wall.zeta),
            "zeta_sq": self.wall.zeta_sq,
            "oriented": str(self.oriented),
            "numerics": self.numerics.as_dict(),
        }


@dataclass
class AnalysisReport:
    surface_n: int
    c1: DivisorClass
    c2: int
    normalized: NormalizedC1
    x: int
    dim_moduli: int
    L0: DivisorClass
    L: DivisorClass
    separating: list[SeparatingWall]
    creating: list[SeparatingWall]
    verdict: str
    literature_claim: str | None = None
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.surface_n,
            "c1": str(self.c1),
            "c2": self.c2,
            "normalized": self.normalized.as_dict(),
            "x": self.x,
            "dim_moduli": self.dim_moduli,
            "ordered_pair": {"L0": str(self.L0), "L": str(self.L)},
            "separating": [s.as_dict() for s in self.separating],
            "creating": [s.as_dict() for s in self.creating],
            "verdict": self.verdict,
            "literature_claim": self.literature_claim,
            "warnings": list(self.warnings),
        }


def _literature_claim(S: SurfaceModel, norm: NormalizedC1, zeta: DivisorClass) -> str:
    m = sum(norm.c1.a)
    if norm.c1.b == 1:
        return (
            f"creating wall {zeta.pretty()} with c1 ~ H+E1+...+E{m} forces c2 = 0; "
            f"M_L0(S, c1, 0) is birational to a (P^1)^{m} bundle over M(P^2, H, 0), which is empty"
        )
    return (
        f"creating wall {zeta.pretty()} with c1 ~ E1+...+E{m} forces c2 = -1; "
        "M_L0(S, c1, -1) is claimed empty because its expected dimension is negative"
    )


def analyze(S: SurfaceModel, c1: DivisorClass, c2: int, L: DivisorClass) -> AnalysisReport:
    """Walls crossed between L0 (near H) and L, and which of them create components.

    A separating wall is oriented so that L0.zeta > 0 > L.zeta.  It creates a
    component when N(-zeta) = -1; it enters ``creating`` only when moreover
    H.zeta > 0 (equivalently b > 0).
    """
    spec = WallSpec(S, c1, c2)
    S.check(L)
    require_ample(S, L, "polarization L")
    on = walls_through(spec, L)
    if on:
        raise PreconditionError(f"polarization L={L} lies on the wall zeta={on[0].zeta}")
    norm = normalize_c1(S, c1, c2)
    L0 = near_H_polarization(S, c1, c2)
    dim = moduli_dim_delpezzo(S, c1, c2)
    x = spec.x

    separating = []
    creating = []
    warnings = []
    H = S.H()
    for crossing in separating_walls(spec, L0, L):
        zeta = crossing.wall.zeta
        oriented = zeta if crossing.orientation < 0 else -zeta
        # the segment test already places zeta^perp inside the ample cone
        num = _numerics(spec, oriented)
        entry = SeparatingWall(crossing.wall, oriented, num)
        separating.append(entry)
        if num.creates_component:
            hz = intersect(S, H, oriented)
            if hz > 0:
                creating.append(entry)
            elif hz == 0:
                warnings.append(BOUNDARY_WARNING.format(zeta=oriented))

    claim = None
    if creating:
        verdict = PAPER_ASSERTS_EMPTY
        claim = "; ".join(_literature_claim(S, norm, e.oriented) for e in creating)
        if norm.c1.b == 0 and dim >= 0:
            warnings.append(DIMENSION_SIGN_WARNING.format(dim=dim))
    elif separating:
        verdict = IRREDUCIBLE_OR_EMPTY
    else:
        verdict = NO_CREATING_WALLS
    if x < 3:
        warnings.append(NEGATIVE_DIM_WARNING.format(x=x, dim=dim))
    return AnalysisReport(
        S.n, c1, c2, norm, x, dim, L0, L, separating, creating, verdict, claim, warnings
    )

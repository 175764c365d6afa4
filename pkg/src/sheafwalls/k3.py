"""Numerology for rank 2 sheaves on a K3 surface with Pic = Z.L.

All halved quantities (L^2/2, (n^2 + n + 1/2) L^2) are exact integers because
the K3 lattice is even, so odd L^2 is rejected up front.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInput, PreconditionError


@dataclass(frozen=True)
class K3Config:
    L_squared: int
    c2: int

    def __post_init__(self):
        if not isinstance(self.L_squared, int) or self.L_squared < 2 or self.L_squared % 2:
            raise InvalidInput(f"L^2 must be an even integer >= 2, got {self.L_squared!r}")
        if not isinstance(self.c2, int):
            raise InvalidInput(f"c2 must be an integer, got {self.c2!r}")

    @property
    def half(self) -> int:
        """L^2 / 2."""
        return self.L_squared // 2


def rho(g: int, r: int, d: int) -> int:
    """Brill-Noether number g - (r + 1)(g - d + r)."""
    return g - (r + 1) * (g - d + r)


@dataclass(frozen=True)
class BrillNoetherData:
    g: int
    r: int
    d: int
    rho: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", rho(self.g, self.r, self.d))

    def as_dict(self) -> dict:
        return {"g": self.g, "r": self.r, "d": self.d, "rho": self.rho}


def moduli_dim_k3(cfg: K3Config) -> int:
    return 4 * cfg.c2 - cfg.L_squared - 6


def _expected_rho(cfg: K3Config) -> int:
    # half the moduli dimension
    return 2 * cfg.c2 - cfg.half - 3


def is_small_c2(cfg: K3Config) -> bool:
    return cfg.c2 <= cfg.half + 3


def regime_upper(L_squared: int, n: int) -> int:
    """(n^2 + n + 1/2) L^2 + 3, the largest c2 in regime n."""
    return (n * n + n) * L_squared + L_squared // 2 + 3


def regime(cfg: K3Config) -> int:
    """The unique n >= 1 with regime_upper(n - 1) < c2 <= regime_upper(n)."""
    if is_small_c2(cfg):
        raise PreconditionError(
            f"c2={cfg.c2} satisfies is_small_c2 (c2 <= L^2/2 + 3 = {cfg.half + 3}); "
            "regimes are only defined above that threshold"
        )
    n = 1
    while cfg.c2 > regime_upper(cfg.L_squared, n):
        n += 1
    return n


def bn_instance_small(cfg: K3Config) -> BrillNoetherData:
    h = cfg.half
    data = BrillNoetherData(g=h + 1, r=h + 1 - cfg.c2, d=cfg.L_squared - cfg.c2)
    assert data.rho == _expected_rho(cfg)
    return data


def _require_regime(cfg: K3Config, n: int) -> None:
    actual = regime(cfg)
    if n != actual:
        raise PreconditionError(f"n={n} does not match regime(L^2={cfg.L_squared}, c2={cfg.c2}) = {actual}")


def bn_instance_large(cfg: K3Config, n: int) -> BrillNoetherData:
    _require_regime(cfg, n)
    L2 = cfg.L_squared
    data = BrillNoetherData(
        g=(2 * n + 1) ** 2 * cfg.half + 1,
        r=regime_upper(L2, n) - 2 - cfg.c2,
        d=(3 * n * n + 3 * n + 1) * L2 - cfg.c2,
    )
    assert data.rho == _expected_rho(cfg)
    return data


@dataclass(frozen=True)
class TypeMReport:
    m: int
    n: int
    zm_length: int
    dim_moduli: int
    h0_lower: int
    case1_codim: int
    case2_codim: int
    reducible_bounds: tuple[tuple[int, int], ...]  # (a, bound) for 0 < a < n + 1; codim > bound
    h0_positive: bool
    codims_positive: bool
    a_range_note: str

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "zm_length": self.zm_length,
            "dim_moduli": self.dim_moduli,
            "h0_lower": self.h0_lower,
            "case1_codim": self.case1_codim,
            "case2_codim": self.case2_codim,
            "reducible_bounds": [{"a": a, "bound": v} for a, v in self.reducible_bounds],
            "h0_positive": self.h0_positive,
            "codims_positive": self.codims_positive,
            "a_range_note": self.a_range_note,
        }


A_RANGE_NOTE = (
    "reducible-curve bounds are listed for 0 < a < n+1; the decomposition they "
    "estimate ranges over 0 < a < 2n+1"
)


def type_m_report(cfg: K3Config, n: int, m: int) -> TypeMReport:
    _require_regime(cfg, n)
    if not 0 <= m <= n:
        raise InvalidInput(f"extension type m={m} must satisfy 0 <= m <= n={n}")
    L2 = cfg.L_squared
    h0 = cfg.half - cfg.c2 + 4 + (n + n * n) * L2
    case1 = 2 * n * L2
    case2 = (2 * m + 1) * L2 + 1
    bounds = tuple((a, (2 * n - a) * (a - 1) * L2) for a in range(1, n + 1))
    return TypeMReport(
        m=m,
        n=n,
        zm_length=cfg.c2 + (m + 1) * m * L2,
        dim_moduli=moduli_dim_k3(cfg),
        h0_lower=h0,
        case1_codim=case1,
        case2_codim=case2,
        reducible_bounds=bounds,
        h0_positive=h0 >= 1,
        # each codimension strictly exceeds its bound, so a zero bound still gives codim > 0
        codims_positive=case1 > 0 and case2 > 0 and all(v >= 0 for _, v in bounds),
        a_range_note=A_RANGE_NOTE,
    )


def nonlocallyfree_param_count(cfg: K3Config, l: int) -> int:
    """Parameters of sheaves whose double dual has c2 - l, plus 3l for the
    length-l quotient; the result is moduli_dim_k3 - l."""
    if l < 1:
        raise InvalidInput(f"l must be a positive integer, got {l}")
    count = 4 * (cfg.c2 - l) - cfg.L_squared - 6 + 3 * l
    assert moduli_dim_k3(cfg) - count == l
    return count

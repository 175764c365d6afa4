"""Shared test helpers."""
import random

from sheafwalls.lattice import DivisorClass, SurfaceModel, is_ample
from sheafwalls.moduli import near_H_polarization
from sheafwalls.walls import WallSpec, is_generic


def far_polarization(S: SurfaceModel, seed: int = 0) -> DivisorClass:
    """A class close to -K with a pseudo-random tilt, so it avoids the walls
    that contain every symmetric choice."""
    w = random.Random(seed).sample(range(1, 300), S.n)
    return DivisorClass(30001, tuple(-10000 - v for v in w))


def generic_polarization(spec: WallSpec, near_L0: bool = False) -> DivisorClass:
    """A generic ample class: near -K, or just off L0 when ``near_L0``."""
    S = spec.surface
    base = near_H_polarization(S, spec.c1, spec.c2) if near_L0 else None
    for seed in range(200):
        L = far_polarization(S, seed)
        if base is not None:
            L = base + L
        if is_ample(S, L) and is_generic(spec, L):
            return L
    raise RuntimeError("no generic polarization found")

import random

import pytest
from hypothesis import given, settings, strategies as st

from sheafwalls import diophantine
from sheafwalls.errors import InvalidInput, PreconditionError
from sheafwalls.lattice import DivisorClass, SurfaceModel, intersect, is_ample, square
from sheafwalls.moduli import (
    BOUNDARY_WARNING,
    IRREDUCIBLE_OR_EMPTY,
    NO_CREATING_WALLS,
    PAPER_ASSERTS_EMPTY,
    analyze,
    expected_dimension,
    moduli_dim_delpezzo,
    near_H_polarization,
    normalize_c1,
    potential_creating_walls,
    wall_numerics,
)
from sheafwalls.walls import WallSpec, enumerate_walls, hyperplane_meets_ample_cone, is_generic

from helpers import generic_polarization


def test_dimension_examples():
    assert moduli_dim_delpezzo(SurfaceModel(1), DivisorClass(1, (0,)), 1) == 0
    assert moduli_dim_delpezzo(SurfaceModel(0), DivisorClass(1), 2) == 4


@given(st.integers(0, 8), st.data())
def test_dimension_matches_general_formula(n, data):
    S = SurfaceModel(n)
    c1 = DivisorClass.from_coords(data.draw(st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1)))
    c2 = data.draw(st.integers(-20, 20))
    # rank 2, chi(O) = 1 on a rational surface
    assert moduli_dim_delpezzo(S, c1, c2) == expected_dimension(2, square(S, c1), c2, 1)


def test_wall_numerics_examples():
    S = SurfaceModel(1)
    c1 = S.H()
    num = wall_numerics(S, S.cls(1, -2), c1, 1)
    assert (num.l_zeta, num.N_zeta, num.N_minus_zeta, num.creates_component) == (0, -1, 0, False)
    num = wall_numerics(S, S.cls(-1, 2), c1, 1)
    assert (num.l_zeta, num.N_zeta, num.N_minus_zeta, num.creates_component) == (0, 0, -1, True)
    assert num.N_zeta + num.N_minus_zeta + 2 * num.l_zeta == 4 * 1 - 1 - 4
    with pytest.raises(InvalidInput):
        wall_numerics(S, S.cls(1, 0), c1, 1)


def random_wall(rng: random.Random):
    """A random (S, zeta, c1, c2) with zeta a wall of type (c1, c2)."""
    while True:
        n = rng.randint(1, 8)
        S = SurfaceModel(n)
        zeta = DivisorClass(rng.randint(0, 3), tuple(rng.randint(-3, 3) for _ in range(n)))
        zsq = square(S, zeta)
        if zeta.is_zero() or zsq >= 0 or not hyperplane_meets_ample_cone(S, zeta):
            continue
        M = DivisorClass(rng.randint(-3, 3), tuple(rng.randint(-3, 3) for _ in range(n)))
        c1 = zeta + 2 * M
        # need 4 c2 - c1^2 >= -zeta^2
        c2 = -((zsq - square(S, c1)) // 4) + rng.randint(0, 4)
        sign = rng.choice((1, -1))
        return S, sign * zeta, c1, c2


def test_numerics_identity_randomized():
    rng = random.Random(7)
    for _ in range(150):
        S, zeta, c1, c2 = random_wall(rng)
        num = wall_numerics(S, zeta, c1, c2)
        x = 4 * c2 - square(S, c1)
        assert num.N_zeta + num.N_minus_zeta + 2 * num.l_zeta == x - 4
        assert 4 * num.l_zeta == x + square(S, zeta)
        assert num.creates_component == (num.N_minus_zeta == -1)
        flipped = wall_numerics(S, -zeta, c1, c2)
        assert (flipped.N_zeta, flipped.N_minus_zeta) == (num.N_minus_zeta, num.N_zeta)


@pytest.mark.parametrize(
    "n,c1,c2,want_c1,want_M,want_c2",
    [
        (1, (3, 2), 5, (1, 0), (-1, -1), 4),
        (0, (2,), 5, (0,), (-1,), 4),
        (2, (0, 1, 3), 5, (0, 1, 1), (0, 0, -1), 7),
    ],
)
def test_normalize_examples(n, c1, c2, want_c1, want_M, want_c2):
    S = SurfaceModel(n)
    norm = normalize_c1(S, DivisorClass.from_coords(c1), c2)
    assert norm.c1 == DivisorClass.from_coords(want_c1)
    assert norm.twist == DivisorClass.from_coords(want_M)
    assert norm.c2 == want_c2


@settings(max_examples=50)
@given(st.integers(0, 3), st.data())
def test_normalize_preserves_x_and_walls(n, data):
    S = SurfaceModel(n)
    c1 = DivisorClass.from_coords(data.draw(st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1)))
    c2 = data.draw(st.integers(-3, 6)) + square(S, c1) // 4
    norm = normalize_c1(S, c1, c2)
    assert set(norm.c1.coords) <= {0, 1}
    assert norm.c1 == c1 + 2 * norm.twist
    before, after = WallSpec(S, c1, c2), WallSpec(S, norm.c1, norm.c2)
    assert before.x == after.x
    assert enumerate_walls(before) == enumerate_walls(after)
    odd = [i for i in norm.relabeling[: sum(norm.c1.a)]]
    assert all(norm.c1.a[i - 1] == 1 for i in odd)


def test_near_H_small_examples():
    S = SurfaceModel(1)
    L0 = near_H_polarization(S, S.H(), 1)
    assert is_ample(S, L0)
    assert intersect(S, L0, S.cls(1, -2)) > 0
    assert near_H_polarization(SurfaceModel(0), DivisorClass(1), 3) == DivisorClass(1)
    S2 = SurfaceModel(2)
    assert is_ample(S2, near_H_polarization(S2, S2.H(), 0))


@settings(max_examples=30)
@given(st.integers(1, 5), st.data())
def test_near_H_signs(n, data):
    S = SurfaceModel(n)
    c1 = DivisorClass.from_coords(data.draw(st.lists(st.integers(0, 1), min_size=n + 1, max_size=n + 1)))
    c2 = data.draw(st.integers(0, 3))
    spec = WallSpec(S, c1, c2)
    L0 = near_H_polarization(S, c1, c2)
    assert is_ample(S, L0)
    assert is_generic(spec, L0)
    for w in enumerate_walls(spec):
        h = intersect(S, S.H(), w.zeta)
        side = intersect(S, L0, w.zeta)
        if h:
            assert (side > 0) == (h > 0)
        else:
            # sign-normalized walls through H are lexicographically positive
            assert side > 0


def test_analyze_h_family_example():
    S = SurfaceModel(4)
    c1 = S.cls(1, 1, 1, 1, 1)
    L = generic_polarization(WallSpec(S, c1, 0))
    rep = analyze(S, c1, 0, L)
    assert rep.x == 3
    assert [str(e.oriented) for e in rep.creating] == ["1,-1,-1,-1,-1"]
    assert rep.verdict == PAPER_ASSERTS_EMPTY
    assert "M(P^2, H, 0)" in rep.literature_claim
    assert not any(w.startswith("dimension-sign") for w in rep.warnings)


def test_analyze_e_family_example_carries_warning():
    S = SurfaceModel(7)
    c1 = S.cls(0, *[1] * 7)
    L = generic_polarization(WallSpec(S, c1, -1))
    rep = analyze(S, c1, -1, L)
    assert rep.x == 3
    assert [e.oriented.pretty() for e in rep.creating] == ["2H-E1-E2-E3-E4-E5-E6-E7"]
    assert rep.dim_moduli == 0
    assert any(w.startswith("dimension-sign") and "evaluates to 0" in w for w in rep.warnings)


def test_analyze_irreducible_example():
    S = SurfaceModel(1)
    rep = analyze(S, S.H(), 1, S.cls(3, -2))
    assert len(rep.separating) == 1
    assert rep.creating == []
    assert rep.verdict == IRREDUCIBLE_OR_EMPTY
    assert rep.L0 == near_H_polarization(S, S.H(), 1)


def test_analyze_same_chamber():
    S = SurfaceModel(1)
    L0 = near_H_polarization(S, S.H(), 1)
    rep = analyze(S, S.H(), 1, L0)
    assert rep.verdict == NO_CREATING_WALLS


def test_analyze_rejects_wall_polarization():
    S = SurfaceModel(1)
    with pytest.raises(PreconditionError):
        analyze(S, S.H(), 1, S.cls(2, -1))
    with pytest.raises(PreconditionError):
        analyze(S, S.H(), 1, S.H())


def test_boundary_walls_reported_as_warnings():
    # zeta = E1 - E2 - E3 has b = 0 and N(-zeta) = -1 for x = 3
    S = SurfaceModel(3)
    c1 = S.cls(0, 1, 1, 1)
    spec = WallSpec(S, c1, 0)
    assert spec.x == 3
    L = generic_polarization(spec)
    rep = analyze(S, c1, 0, L)
    for e in rep.separating:
        if e.numerics.creates_component and e.oriented.b == 0:
            assert BOUNDARY_WARNING.format(zeta=e.oriented) in rep.warnings
    assert all(e.oriented.b > 0 for e in rep.creating)


@pytest.mark.parametrize("n", range(1, 9))
def test_potential_creating_walls_match_classification(n):
    S = SurfaceModel(n)
    for fam in (0, 1):
        for m in range(n + 1):
            c1 = S.cls(fam, *[1] * m)
            for c2 in range(-3, 6):
                x = 4 * c2 - square(S, c1)
                found = potential_creating_walls(S, c1, c2)
                if x < 3:
                    continue
                assert len(found) <= 1
                for zeta in found:
                    padded = zeta.a + (0,) * (8 - n)
                    assert diophantine.is_solution(x, zeta.b, padded)
                    sol = diophantine.DaggerSolution(zeta.b, padded, x).multiset()
                    assert sol in diophantine.classify_positive_b(x)

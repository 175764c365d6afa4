"""A small dense two-phase simplex over exact rationals.

Sized for the cone questions in this package (tens of variables, a few
hundred constraints).  Bland's rule is used throughout so degenerate
problems, which are the norm for homogeneous cone tests, always terminate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: list[Fraction] = field(default_factory=list)


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    p = prow[c]
    if p != 1:
        prow[:] = [v / p for v in prow]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                row[:] = [v - f * w for v, w in zip(row, prow)]
    f = obj[c]
    if f:
        obj[:] = [v - f * w for v, w in zip(obj, prow)]


def _simplex(rows, obj, basis, allowed) -> str:
    """Maximize in place.  ``obj`` holds reduced costs (positive = improving) and,
    in its last slot, minus the current objective value."""
    while True:
        enter = next((j for j in allowed if obj[j] > 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(rows):
            coef = row[enter]
            if coef > 0:
                ratio = row[-1] / coef
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        leave = best[1]
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Maximize c.x subject to A_ub x <= b_ub, A_eq x == b_eq and x_j >= 0 for
    every j not listed in ``free``.  All data are converted to Fraction."""
    nvar = len(c)
    free = sorted(set(free))
    # column layout: original vars, negative parts of free vars, slacks, artificials
    neg_col = {j: nvar + k for k, j in enumerate(free)}
    nstruct = nvar + len(free)

    def expand(row):
        out = [Fraction(v) for v in row]
        if len(out) != nvar:
            raise ValueError("constraint row has the wrong length")
        out.extend(-out[j] for j in free)
        return out

    cons = []  # (coeffs, rhs, slack sign or 0)
    for row, rhs in zip(A_ub, b_ub, strict=True):
        cons.append((expand(row), Fraction(rhs), 1))
    for row, rhs in zip(A_eq, b_eq, strict=True):
        cons.append((expand(row), Fraction(rhs), 0))

    nslack = sum(1 for _, _, s in cons if s)
    m = len(cons)
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    slack_at = nstruct
    ncols = nstruct + nslack
    needs_art = []
    for coeffs, rhs, s in cons:
        row = coeffs + [Fraction(0)] * nslack
        if s:
            row[slack_at] = Fraction(1)
        sign = -1 if rhs < 0 else 1
        if sign < 0:
            row = [-v for v in row]
            rhs = -rhs
        if s and sign > 0:
            basis.append(slack_at)
            needs_art.append(False)
        else:
            basis.append(-1)
            needs_art.append(True)
        if s:
            slack_at += 1
        rows.append(row + [rhs])

    nart = sum(needs_art)
    total = ncols + nart
    k = ncols
    for i in range(m):
        rhs = rows[i].pop()
        rows[i].extend([Fraction(0)] * nart)
        if needs_art[i]:
            rows[i][k] = Fraction(1)
            basis[i] = k
            art_cols.append(k)
            k += 1
        rows[i].append(rhs)

    if nart:
        # phase 1: maximize -sum(artificials)
        obj = [Fraction(0)] * (total + 1)
        for i in range(m):
            if needs_art[i]:
                obj = [o + v for o, v in zip(obj, rows[i])]
        for j in art_cols:
            obj[j] = Fraction(0)
        _simplex(rows, obj, basis, range(ncols))
        if obj[-1] != 0:
            return LPResult(INFEASIBLE)
        art_set = set(art_cols)
        keep = []
        for i in range(m):
            if basis[i] in art_set:
                col = next((j for j in range(ncols) if rows[i][j] != 0), None)
                if col is None:
                    continue  # redundant equality
                _pivot(rows, obj, i, col)
                basis[i] = col
            keep.append(i)
        rows = [rows[i][:ncols] + [rows[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]

    cost = [Fraction(v) for v in c] + [-Fraction(c[j]) for j in free] + [Fraction(0)] * nslack
    obj = cost + [Fraction(0)]
    for i, bvar in enumerate(basis):
        f = obj[bvar]
        if f:
            obj = [o - f * v for o, v in zip(obj, rows[i])]
    status = _simplex(rows, obj, basis, range(ncols))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    values = [Fraction(0)] * ncols
    for i, bvar in enumerate(basis):
        values[bvar] = rows[i][-1]
    x = [values[j] for j in range(nvar)]
    for j in free:
        x[j] -= values[neg_col[j]]
    return LPResult(OPTIMAL, -obj[-1], x)

"""Exact rational feasibility for small linear systems.

Phase-one simplex over :class:`fractions.Fraction` with Bland's rule, so it
always terminates and never suffers from rounding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["feasible_point"]


def feasible_point(
    eq_rows: Sequence[Sequence] = (),
    eq_rhs: Sequence = (),
    ge_rows: Sequence[Sequence] = (),
    ge_rhs: Sequence = (),
    nvars: int | None = None,
):
    """A rational x with ``eq_rows @ x == eq_rhs`` and ``ge_rows @ x >= ge_rhs``.

    Variables are free in sign.  Returns a list of Fractions, or None when
    the system is infeasible.
    """
    if nvars is None:
        rows = list(eq_rows) or list(ge_rows)
        nvars = len(rows[0]) if rows else 0
    n = nvars
    # columns: x+ (n), x- (n), surplus (len ge), artificial (one per row)
    cons = []
    for row, b in zip(eq_rows, eq_rhs):
        cons.append(([Fraction(v) for v in row], None, Fraction(b)))
    for k, (row, b) in enumerate(zip(ge_rows, ge_rhs)):
        cons.append(([Fraction(v) for v in row], k, Fraction(b)))
    m = len(cons)
    nsur = len(ge_rows)
    ncols = 2 * n + nsur + m
    tab = []
    for r, (row, sur, b) in enumerate(cons):
        line = [Fraction(0)] * (ncols + 1)
        for j in range(n):
            line[j] = row[j]
            line[n + j] = -row[j]
        if sur is not None:
            line[2 * n + sur] = Fraction(-1)
        line[ncols] = b
        if b < 0:
            line = [-x for x in line]
        line[2 * n + nsur + r] = Fraction(1)
        tab.append(line)
    basis = [2 * n + nsur + r for r in range(m)]
    art_start = 2 * n + nsur
    # objective: minimise sum of artificials -> reduced costs
    cost = [Fraction(0)] * (ncols + 1)
    for line in tab:
        for j in range(ncols + 1):
            if j < art_start or j == ncols:
                cost[j] -= line[j]
    while True:
        enter = next((j for j in range(art_start) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][ncols] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            # unbounded in phase one cannot happen; objective bounded by 0
            break
        r = best[1]
        piv = tab[r][enter]
        tab[r] = [x / piv for x in tab[r]]
        for rr in range(m):
            if rr != r and tab[rr][enter]:
                f = tab[rr][enter]
                tab[rr] = [x - f * y for x, y in zip(tab[rr], tab[r])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[r])]
        basis[r] = enter
    if cost[ncols] != 0:
        return None
    values = [Fraction(0)] * ncols
    for r, b in enumerate(basis):
        values[b] = tab[r][ncols]
    return [values[j] - values[n + j] for j in range(n)]

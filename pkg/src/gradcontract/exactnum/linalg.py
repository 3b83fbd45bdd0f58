"""Exact linear algebra over Q or K with sparse rows.

Rows are ``dict[int, scalar]`` mapping column index to a nonzero entry.
Entries may be :class:`fractions.Fraction` or
:class:`~gradcontract.exactnum.field.FieldScalar`; systems whose entries are
all rational are lowered to ``Fraction`` before elimination, which is much
faster.  Pivots are always taken at the first nonzero column.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .field import FieldScalar

__all__ = [
    "lower",
    "to_sparse",
    "to_dense",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "row_space_basis",
    "in_span",
    "complement_basis",
    "intersect_spaces",
    "matmul",
    "det",
    "inverse",
    "identity",
    "transpose",
]


def lower(x):
    """Rational FieldScalars become Fractions; everything else is unchanged."""
    if isinstance(x, FieldScalar) and x.is_rational:
        return x.to_fraction()
    if isinstance(x, int):
        return Fraction(x)
    return x


def _lower_rows(rows):
    out = []
    for r in rows:
        out.append({j: lower(v) for j, v in r.items() if v})
    return out


def to_sparse(dense: Sequence[Sequence]) -> list[dict]:
    return _lower_rows({j: v for j, v in enumerate(row) if v} for row in dense)


def to_dense(rows: Sequence[dict], ncols: int) -> list[list]:
    zero = Fraction(0)
    return [[r.get(j, zero) for j in range(ncols)] for r in rows]


def _as_rows(m) -> list[dict]:
    if not m:
        return []
    if isinstance(m[0], dict):
        return _lower_rows(m)
    return to_sparse(m)


def rref(m) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [r for r in _as_rows(m) if r]
    pivots: list[int] = []
    reduced: list[dict] = []
    for row in rows:
        row = dict(row)
        for prow, pc in zip(reduced, pivots):
            c = row.get(pc)
            if c:
                for j, v in prow.items():
                    nv = row.get(j, 0) - c * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {j: v * inv for j, v in row.items()}
        # back-substitute into existing rows
        for prow in reduced:
            c = prow.get(pc)
            if c:
                for j, v in row.items():
                    nv = prow.get(j, 0) - c * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        reduced.append(row)
        pivots.append(pc)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [reduced[k] for k in order], [pivots[k] for k in order]


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m, ncols: int) -> list[list]:
    """Basis of {x : M x = 0} as dense vectors, one per free column."""
    red, piv = rref(m)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            c = row.get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def solve(m, b: Sequence, ncols: int):
    """One solution of M x = b (free variables zero), or None."""
    rows = _as_rows(m)
    aug = []
    for r, bi in zip(rows, b):
        r = dict(r)
        bi = lower(bi)
        if bi:
            r[ncols] = bi
        aug.append(r)
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, piv):
        x[pc] = row.get(ncols, Fraction(0))
    return x


def row_space_basis(vectors: Iterable[Sequence], ncols: int) -> list[list]:
    red, _ = rref([list(v) for v in vectors])
    return to_dense(red, ncols)


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    vectors = [list(x) for x in vectors]
    return rank(vectors + [list(v)]) == rank(vectors)


def complement_basis(subspace: Sequence[Sequence], ambient: Sequence[Sequence]) -> list[list]:
    """Vectors from ``ambient`` spanning a complement of ``subspace`` in it."""
    chosen = [list(x) for x in subspace]
    r = rank(chosen)
    out = []
    for v in ambient:
        trial = chosen + [list(v)]
        r2 = rank(trial)
        if r2 > r:
            chosen, r = trial, r2
            out.append(list(v))
    return out


def intersect_spaces(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> list[list]:
    """Basis of span(a) intersected with span(b) in an n-dim space."""
    a = row_space_basis(a, n) if a else []
    b = row_space_basis(b, n) if b else []
    if not a or not b:
        return []
    # solve sum x_i a_i - sum y_j b_j = 0
    k = len(a) + len(b)
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    sysm = [[cols[c][r] for c in range(k)] for r in range(n)]
    out = []
    for sol in nullspace(sysm, k):
        vec = [Fraction(0)] * n
        for i, v in enumerate(a):
            if sol[i]:
                for t in range(n):
                    vec[t] = vec[t] + sol[i] * v[t]
        out.append([lower(x) for x in vec])
    return row_space_basis(out, n) if out else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, m = len(a), len(b[0]) if b else 0
    inner = len(b)
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(m):
            s = Fraction(0)
            for k in range(inner):
                x = ai[k]
                if x:
                    y = b[k][j]
                    if y:
                        s = s + x * y
            row.append(lower(s))
        out.append(row)
    return out


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def det(a: Sequence[Sequence]):
    n = len(a)
    m = [[lower(x) for x in row] for row in a]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = m[c][c]
        d = d * piv
        inv = 1 / piv
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return lower(d)


def inverse(a: Sequence[Sequence]):
    """Inverse matrix, or None if singular."""
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv != list(range(n)):
        return None
    return [[row.get(n + j, Fraction(0)) for j in range(n)] for row in red]

"""Integer lattices: Smith normal form, left kernels and multiplicative systems.

A multiplicative system asks for nonzero complex ``x_1..x_n`` with
``prod_j x_j ** M[i][j] == r_i`` for every row ``i``.  It is solvable iff
``prod_i r_i ** v_i == 1`` for every integer vector ``v`` with ``v M = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import ONE, FieldScalar, as_scalar, nth_root_in_field

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "reduced_smith_form",
    "lll_reduce",
    "integer_left_kernel",
    "MultiplicativeResult",
    "solve_multiplicative",
    "power_product",
]


@dataclass
class SmithForm:
    """``U @ M @ V == S`` with U, V unimodular and S diagonal.

    Attributes
    ----------
    U, V : list of list of int
        Unimodular transforms.
    S : list of list of int
        Diagonal form, with each diagonal entry dividing the next one.
    rank : int
        Number of nonzero diagonal entries.
    """

    U: list
    S: list
    V: list
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.S[k][k] for k in range(self.rank)]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _round_div(x: int, y: int) -> int:
    q, r = divmod(x, y)
    if 2 * abs(r) > abs(y):
        q += 1 if (r > 0) == (y > 0) else 0
    return q


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [[int(x) for x in row] for row in matrix]
    u = _eye(m)
    v = _eye(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        # pick smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = _round_div(a[i][t], a[t][t])
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = _round_div(a[t][j], a[t][t])
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SmithForm(U=u, S=a, V=v, rank=t)


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduced basis of the lattice spanned by the (independent) rows."""
    b = [list(map(int, v)) for v in basis]
    n = len(b)
    if n <= 1:
        return b

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    bs: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = dot(b[i], bs[j]) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
        bs.append(v)
        norms.append(dot(v, v))

    def reduce(k, j):
        q = round(mu[k][j])
        if q:
            b[k] = [x - q * y for x, y in zip(b[k], b[j])]
            for t in range(j):
                mu[k][t] -= q * mu[j][t]
            mu[k][j] -= q

    k = 1
    while k < n:
        reduce(k, k - 1)
        m = mu[k][k - 1]
        if norms[k] >= (delta - m * m) * norms[k - 1]:
            for j in range(k - 2, -1, -1):
                reduce(k, j)
            k += 1
            continue
        # swap b[k-1], b[k] and update the Gram-Schmidt data
        b[k], b[k - 1] = b[k - 1], b[k]
        bnew = norms[k] + m * m * norms[k - 1]
        mu_new = m * norms[k - 1] / bnew
        norms[k] = norms[k - 1] * norms[k] / bnew
        norms[k - 1] = bnew
        for t in range(k - 1):
            mu[k - 1][t], mu[k][t] = mu[k][t], mu[k - 1][t]
        mu[k][k - 1] = mu_new
        for i in range(k + 1, n):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu_new * mu[i][k]
        k = max(k - 1, 1)
    return b


def _size_reducer(basis: list[list[int]]):
    # nearest-plane reduction against an LLL-reduced basis
    bs = []
    norms = []
    for w in basis:
        u = [Fraction(x) for x in w]
        for z, nz in zip(bs, norms):
            c = sum(p * q for p, q in zip(w, z)) / nz
            u = [x - c * y for x, y in zip(u, z)]
        bs.append(u)
        norms.append(sum(x * x for x in u))

    def reduce(v: list[int]) -> list[int]:
        if max(map(abs, v), default=0) <= 2:
            return v
        v = list(v)
        for j in range(len(basis) - 1, -1, -1):
            c = round(sum(p * q for p, q in zip(v, bs[j])) / norms[j])
            if c:
                v = [x - c * y for x, y in zip(v, basis[j])]
        return v

    return reduce


def reduced_smith_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """Smith form whose kernel blocks are LLL-reduced and whose remaining
    transform rows/columns are size-reduced against them."""
    sf = smith_normal_form(matrix)
    r = sf.rank
    m = len(sf.U)
    n = len(sf.V)
    if r < m:
        lk = lll_reduce(sf.U[r:])
        sf.U[r:] = lk
        red = _size_reducer(lk)
        for q in range(r):
            sf.U[q] = red(sf.U[q])
    if r < n:
        cols = [[sf.V[i][j] for i in range(n)] for j in range(n)]
        rk = lll_reduce(cols[r:])
        cols[r:] = rk
        red = _size_reducer(rk)
        for q in range(r):
            cols[q] = red(cols[q])
        sf.V = [[cols[j][i] for j in range(n)] for i in range(n)]
    return sf


def integer_left_kernel(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """A reduced lattice basis of {v integer : v M = 0}."""
    if not matrix:
        return []
    sf = reduced_smith_form(matrix)
    return [list(row) for row in sf.U[sf.rank :]]


def power_product(values: Sequence, exponents: Sequence[int]) -> FieldScalar:
    out = ONE
    for x, e in zip(values, exponents):
        if e:
            out = out * as_scalar(x) ** e
    return out


@dataclass
class MultiplicativeResult:
    """Outcome of a multiplicative system solve.

    ``solvable`` is decided exactly.  ``witness`` holds an explicit solution
    when the roots needed to build one lie in the coefficient field, and is
    None otherwise.  ``obstruction`` is a left-kernel vector whose product
    differs from one when the system has no solution.
    """

    solvable: bool
    witness: list | None = None
    obstruction: list | None = None


def solve_multiplicative(matrix: Sequence[Sequence[int]], rhs: Sequence) -> MultiplicativeResult:
    m = len(matrix)
    if m == 0:
        return MultiplicativeResult(True, witness=None)
    n = len(matrix[0])
    rhs = [as_scalar(r) for r in rhs]
    if any(not r for r in rhs):
        raise ValueError("right-hand sides must be nonzero")
    sf = reduced_smith_form(matrix)
    for row in sf.U[sf.rank :]:
        if power_product(rhs, row) != ONE:
            return MultiplicativeResult(False, obstruction=list(row))
    # S y = U log r on the first rank coordinates
    ys = []
    for q in range(sf.rank):
        w = power_product(rhs, sf.U[q])
        root = nth_root_in_field(w, sf.S[q][q])
        if root is None:
            return MultiplicativeResult(True, witness=None)
        ys.append(root)
    ys.extend([ONE] * (n - sf.rank))
    x = [power_product(ys, [sf.V[j][q] for q in range(n)]) for j in range(n)]
    return MultiplicativeResult(True, witness=x)

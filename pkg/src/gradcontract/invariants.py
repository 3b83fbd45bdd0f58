"""Isomorphism invariants: generalized derivations, tau, Casimir operators.

Generalized derivations are maps ``A`` with
``alpha A[x, y] = beta [Ax, y] + gamma [x, Ay]`` for all ``x, y``; the
dimension of that space is invariant for every fixed ``(alpha, beta, gamma)``.
Formal invariants are functions annihilated by the vector fields
``x_i = sum_{j,k} c_ij^k x_k d/dx_j``.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum.field import as_scalar
from .exactnum.linalg import lower, nullspace, rank
from .exactnum.poly import MultiPoly, generic_rank, monomials
from .liealg import LieAlgebra, predicates

__all__ = [
    "DerivationQuery",
    "SixTuple",
    "CasimirSet",
    "NotNilpotent",
    "SIX_TUPLE_QUERIES",
    "derivation_equations",
    "derivation_space",
    "derivation_dim",
    "six_tuple",
    "psi",
    "structure_matrix",
    "tau",
    "vector_field_apply",
    "casimirs",
    "symmetrize",
    "in_invariant_space",
]


class NotNilpotent(UserWarning):
    pass


@dataclass(frozen=True)
class DerivationQuery:
    alpha: object
    beta: object
    gamma: object

    def scalars(self) -> tuple:
        return tuple(lower(as_scalar(x)) for x in (self.alpha, self.beta, self.gamma))


SIX_TUPLE_QUERIES = (
    DerivationQuery(1, 1, 1),
    DerivationQuery(0, 1, 1),
    DerivationQuery(1, 1, 0),
    None,  # der(1,1,1) intersected with der(0,1,1)
    DerivationQuery(1, 1, -1),
    DerivationQuery(0, 1, -1),
)


@dataclass(frozen=True)
class SixTuple:
    values: tuple

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def as_list(self) -> list[int]:
        return list(self.values)

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.values) + "]"


def derivation_equations(L: LieAlgebra, q: DerivationQuery) -> list[dict]:
    """Sparse rows over the unknowns A[r][s] (column index r * n + s), where
    A e_s = sum_r A[r][s] e_r.

    One block per ordered basis pair (e_i, e_j), the diagonal included: when
    beta != gamma neither symmetry makes those blocks redundant.
    """
    alpha, beta, gamma = q.scalars()
    n = L.dim
    rows = []
    for i in range(n):
        for j in range(n):
            cij = L.c(i, j)
            for k in range(n):
                row: dict = {}

                def put(col, v):
                    if v:
                        w = row.get(col, 0) + v
                        if w:
                            row[col] = w
                        else:
                            row.pop(col, None)

                # alpha * (A [e_i, e_j])_k
                if alpha:
                    for r in range(n):
                        if cij[r]:
                            put(k * n + r, alpha * cij[r])
                # - beta * [A e_i, e_j]_k = - beta * sum_m A[m][i] c_mj^k
                if beta:
                    for m in range(n):
                        v = L.c(m, j)[k]
                        if v:
                            put(m * n + i, -beta * v)
                # - gamma * [e_i, A e_j]_k
                if gamma:
                    for m in range(n):
                        v = L.c(i, m)[k]
                        if v:
                            put(m * n + j, -gamma * v)
                if row:
                    rows.append(row)
    return rows


def derivation_space(L: LieAlgebra, q: DerivationQuery) -> list[list]:
    """Basis of der_(alpha,beta,gamma) L, each map flattened row-major."""
    return nullspace(derivation_equations(L, q), L.dim**2)


def derivation_dim(L: LieAlgebra, q: DerivationQuery) -> int:
    return L.dim**2 - rank(derivation_equations(L, q))


def six_tuple(L: LieAlgebra) -> SixTuple:
    n2 = L.dim**2
    eqs = {}
    out = []
    for q in SIX_TUPLE_QUERIES:
        if q is None:
            both = eqs[SIX_TUPLE_QUERIES[0]] + eqs[SIX_TUPLE_QUERIES[1]]
            out.append(n2 - rank(both))
            continue
        eqs[q] = derivation_equations(L, q)
        out.append(n2 - rank(eqs[q]))
    return SixTuple(tuple(out))


def psi(L: LieAlgebra, alpha) -> int:
    return derivation_dim(L, DerivationQuery(alpha, 1, 1))


# ---------------------------------------------------------------- formal invariants


def structure_matrix(L: LieAlgebra) -> list[list[MultiPoly]]:
    """Skew matrix of linear forms (M_L)_ij = sum_k c_ij^k x_k."""
    n = L.dim
    return [[MultiPoly.linear(L.c(i, j)) if n else MultiPoly(0) for j in range(n)] for i in range(n)]


def tau(L: LieAlgebra, samples: int = 5, rng: random.Random | None = None, certify: bool = False) -> int:
    if L.dim == 0:
        return 0
    return L.dim - generic_rank(structure_matrix(L), samples=samples, rng=rng, certify=certify)


def vector_field_apply(L: LieAlgebra, i: int, F: MultiPoly) -> MultiPoly:
    """x_i F with x_i = sum_{j,k} c_ij^k x_k d/dx_j (0-based i)."""
    n = L.dim
    out = MultiPoly(n)
    for j in range(n):
        cij = L.c(i, j)
        if not any(cij):
            continue
        dF = F.derivative(j)
        if dF:
            out = out + MultiPoly.linear(cij) * dF
    return out


@dataclass
class CasimirSet:
    polynomials: list  # basis of the polynomial solution space, degree by degree
    independent: list  # one flag per polynomial
    symmetrized: list  # word expansions of the independent polynomials
    max_degree: int
    by_degree: dict = field(default_factory=dict)  # degree -> list of coefficient vectors
    complete: bool = True  # False when the algebra is not nilpotent

    @property
    def independent_polynomials(self) -> list:
        return [p for p, f in zip(self.polynomials, self.independent) if f]


def _invariant_basis(L: LieAlgebra, degree: int) -> tuple[list, list]:
    """Monomials of ``degree`` and a basis of the annihilated coefficient vectors."""
    n = L.dim
    monos = monomials(n, degree)
    # each vector field maps a degree-d monomial to degree-d polynomials;
    # collect rows keyed by (field, result monomial)
    rows: dict = {}
    for col, m in enumerate(monos):
        mono = MultiPoly(n, {m: 1})
        for i in range(n):
            img = vector_field_apply(L, i, mono)
            for rm, c in img.terms.items():
                row = rows.setdefault((i, rm), {})
                row[col] = row.get(col, 0) + c
    eqs = [r for r in rows.values() if any(r.values())]
    return monos, nullspace(eqs, len(monos))


def _poly_from(monos: Sequence, vec: Sequence, n: int) -> MultiPoly:
    p = MultiPoly(n, {m: c for m, c in zip(monos, vec) if c})
    # scale so the first printed term has coefficient 1
    first = min(p.terms, key=lambda t: (-sum(t), [-e for e in t]))
    return p * (1 / p.terms[first])


def _jacobian_rank(polys: Sequence[MultiPoly], n: int, rng: random.Random, trials: int = 3) -> int:
    if not polys:
        return 0
    best = 0
    grads = [[p.derivative(k) for k in range(n)] for p in polys]
    for _ in range(trials):
        point = [Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 97)) for _ in range(n)]
        best = max(best, rank([[g.evaluate(point) for g in row] for row in grads]))
        if best == len(polys):
            break
    return best


def casimirs(L: LieAlgebra, max_degree: int = 4, rng: random.Random | None = None) -> CasimirSet:
    """Polynomial formal invariants up to ``max_degree``.

    The solution space is computed degree by degree.  A polynomial is flagged
    independent when it raises the Jacobian rank of the flagged set.  For an
    algebra that is not nilpotent the result is still correct but the
    polynomial invariants need not be complete; ``complete`` is then False.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    rng = rng or random.Random(0)
    n = L.dim
    complete = bool(predicates(L)["is_nilpotent"])
    if not complete:
        warnings.warn("algebra is not nilpotent; polynomial invariants may be incomplete", NotNilpotent)
    polys, flags, chosen = [], [], []
    by_degree = {}
    current = 0
    for d in range(1, max_degree + 1):
        monos, basis = _invariant_basis(L, d)
        by_degree[d] = (monos, basis)
        for vec in basis:
            p = _poly_from(monos, vec, n)
            polys.append(p)
            r = _jacobian_rank(chosen + [p], n, rng)
            if r > current:
                chosen.append(p)
                flags.append(True)
                current = r
            else:
                flags.append(False)
    return CasimirSet(
        polynomials=polys,
        independent=flags,
        symmetrized=[symmetrize(p) for p in chosen],
        max_degree=max_degree,
        by_degree=by_degree,
        complete=complete,
    )


def in_invariant_space(cas: CasimirSet, F: MultiPoly) -> bool:
    """Whether a homogeneous F lies in the computed solution space of its degree."""
    if not F.is_homogeneous() or not F:
        return not F
    d = F.degree
    if d not in cas.by_degree:
        return False
    monos, basis = cas.by_degree[d]
    index = {m: k for k, m in enumerate(monos)}
    target = [0] * len(monos)
    for m, c in F.terms.items():
        target[index[m]] = c
    return rank(basis + [target]) == rank(basis) if basis else not any(target)


def symmetrize(F: MultiPoly) -> list[dict]:
    """Words of the symmetrized element of U(L): each commuting monomial of
    degree p becomes the average of its p! orderings."""
    words: dict = {}
    for m, c in F.terms.items():
        letters = [k for k, e in enumerate(m) for _ in range(e)]
        p = len(letters)
        perms = set(itertools.permutations(letters))
        # every distinct word occurs (prod of e!) times among the p! orderings
        mult = Fraction(math.prod(math.factorial(e) for e in m), math.factorial(p))
        for w in perms:
            words[w] = words.get(w, 0) + c * mult
    return [{"monomial": [k + 1 for k in w], "coefficient": v} for w, v in sorted(words.items()) if v]

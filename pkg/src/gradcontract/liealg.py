"""Lie algebras given by exact structure constants.

Basis vectors are numbered from 0 internally; files and printed output use
1-based labels ``e1, e2, ...``.  Vectors are plain lists of exact scalars
(``Fraction`` or :class:`FieldScalar`).
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactnum.field import FieldScalar, ScalarSyntaxError, format_scalar, sqrt_in_field
from .exactnum.linalg import (
    complement_basis,
    identity,
    intersect_spaces,
    inverse,
    lower,
    matmul,
    nullspace,
    rank,
    rref,
    to_dense,
)

__all__ = [
    "LieAlgebra",
    "GradedLieAlgebra",
    "Subspace",
    "SeriesProfile",
    "Decomposition",
    "IndecomposableCertificate",
    "SplittingObstruction",
    "NotSolvable",
    "AlgebraFormatError",
    "abelian",
    "sl3_gellmann",
    "series",
    "center",
    "derived_algebra",
    "split_central",
    "decompose",
    "indecomposable_pieces",
    "radical",
    "nilradical",
    "killing_form",
    "predicates",
    "GELLMANN_ASSIGNMENT",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class NotSolvable(ValueError):
    pass


class SplittingObstruction(RuntimeError):
    pass


class AlgebraFormatError(ValueError):
    pass


def _zero_vec(n: int) -> list:
    return [ZERO] * n


def _unit(n: int, k: int) -> list:
    v = _zero_vec(n)
    v[k] = ONE
    return v


class LieAlgebra:
    """Finite-dimensional Lie algebra with structure constants c[i][j][k].

    ``brackets`` maps ``(i, j)`` with ``i < j`` to a coefficient vector (or
    a ``{k: value}`` dict) giving ``[e_i, e_j] = sum_k c_ij^k e_k``.
    """

    def __init__(self, dim: int, brackets=None, labels: Sequence[str] | None = None, name: str | None = None):
        self.dim = dim
        self.labels = list(labels) if labels else [f"e{k + 1}" for k in range(dim)]
        self.name = name
        n = dim
        self._c = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                self._c[i][j] = (ZERO,) * n
        for (i, j), coeffs in (brackets or {}).items():
            if isinstance(coeffs, dict):
                vec = _zero_vec(n)
                for k, v in coeffs.items():
                    vec[k] = lower(v)
            else:
                vec = [lower(v) for v in coeffs]
            if i == j:
                if any(vec):
                    raise ValueError("bracket [e_i, e_i] must vanish")
                continue
            self._c[i][j] = tuple(vec)
            self._c[j][i] = tuple(-x for x in vec)

    # -- basic access
    def c(self, i: int, j: int) -> tuple:
        return self._c[i][j]

    def nonzero_brackets(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if any(self._c[i][j]):
                    yield i, j, self._c[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> list:
        n = self.dim
        out = _zero_vec(n)
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            for j in range(n):
                yj = y[j]
                if not yj:
                    continue
                cij = self._c[i][j]
                f = xi * yj
                for k in range(n):
                    if cij[k]:
                        out[k] = out[k] + f * cij[k]
        return [lower(v) for v in out]

    def ad(self, x: Sequence) -> list[list]:
        """Matrix of ad x acting on column vectors."""
        n = self.dim
        cols = [self.bracket(x, _unit(n, j)) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def ad_basis(self, i: int) -> list[list]:
        n = self.dim
        return [[self._c[i][j][k] for j in range(n)] for k in range(n)]

    def is_abelian(self) -> bool:
        return not any(True for _ in self.nonzero_brackets())

    def jacobi_defects(self) -> list[tuple]:
        n = self.dim
        bad = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    ei, ej, ek = _unit(n, i), _unit(n, j), _unit(n, k)
                    s = [
                        a + b + c
                        for a, b, c in zip(
                            self.bracket(ei, self.bracket(ej, ek)),
                            self.bracket(ej, self.bracket(ek, ei)),
                            self.bracket(ek, self.bracket(ei, ej)),
                        )
                    ]
                    if any(s):
                        bad.append((i, j, k))
        return bad

    def satisfies_jacobi(self) -> bool:
        return not self.jacobi_defects()

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.dim, tuple(tuple(r) for r in self._c)))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={self.describe()!r})"

    def describe(self) -> str:
        parts = []
        for i, j, vec in self.nonzero_brackets():
            terms = []
            for k, v in enumerate(vec):
                if v:
                    terms.append(_term(v, self.labels[k]))
            rhs = _join_terms(terms)
            parts.append(f"[{self.labels[i]},{self.labels[j]}]={rhs}")
        return ", ".join(parts) if parts else "abelian"

    # -- construction helpers
    def restrict(self, basis: Sequence[Sequence], name: str | None = None) -> "LieAlgebra":
        """Structure constants of the subalgebra spanned by ``basis``."""
        coords = _coordinate_map(basis, self.dim)
        m = len(basis)
        br = {}
        for p in range(m):
            for q in range(p + 1, m):
                v = self.bracket(basis[p], basis[q])
                if any(v):
                    br[(p, q)] = coords(v)
        return LieAlgebra(m, br, name=name)

    def change_basis(self, new_basis: Sequence[Sequence]) -> "LieAlgebra":
        """Same algebra written in a new basis (rows are the new vectors)."""
        if rank(new_basis) != self.dim or len(new_basis) != self.dim:
            raise ValueError("change of basis must be invertible")
        return self.restrict(new_basis, name=self.name)

    def direct_sum(self, other: "LieAlgebra") -> "LieAlgebra":
        n, m = self.dim, other.dim
        br = {}
        for i, j, vec in self.nonzero_brackets():
            br[(i, j)] = list(vec) + [ZERO] * m
        for i, j, vec in other.nonzero_brackets():
            br[(n + i, n + j)] = [ZERO] * n + list(vec)
        return LieAlgebra(n + m, br)

    # -- serialisation
    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "brackets": [
                {
                    "i": i + 1,
                    "j": j + 1,
                    "coeffs": [{"k": k + 1, "value": format_scalar(v)} for k, v in enumerate(vec) if v],
                }
                for i, j, vec in self.nonzero_brackets()
            ],
        }
        if self.labels != [f"e{k + 1}" for k in range(self.dim)]:
            out["labels"] = self.labels
        return out

    @classmethod
    def from_json(cls, data: dict, bindings=None) -> "LieAlgebra":
        from .exactnum.field import ScalarExpr

        try:
            n = int(data["dim"])
            br: dict = {}
            for b in data.get("brackets", []):
                i, j = int(b["i"]) - 1, int(b["j"]) - 1
                if not (0 <= i < j < n):
                    raise AlgebraFormatError(f"bracket indices must satisfy 1 <= i < j <= dim, got {i + 1}, {j + 1}")
                vec = br.setdefault((i, j), _zero_vec(n))
                for c in b.get("coeffs", []):
                    k = int(c["k"]) - 1
                    if not 0 <= k < n:
                        raise AlgebraFormatError(f"coefficient index {k + 1} out of range")
                    vec[k] = vec[k] + ScalarExpr(str(c["value"])).evaluate(bindings)
        except KeyError as exc:
            raise AlgebraFormatError(f"missing field {exc}") from exc
        except ScalarSyntaxError as exc:
            raise AlgebraFormatError(str(exc)) from exc
        return cls(n, br, labels=data.get("labels"))

    @classmethod
    def loads(cls, text: str, bindings=None) -> "LieAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return cls.from_json(data, bindings)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_relations(cls, dim: int, text: str, bindings=None, name: str | None = None) -> "LieAlgebra":
        """Parse relations such as ``[e2,e5]=(a+1)*e1, [e4,e7]=e1+e2``.

        Coefficients use the scalar grammar and may be joined to the basis
        vector with ``*`` or a space; omitted relations are zero.
        """
        from .exactnum.field import ScalarExpr

        br: dict = {}
        for m in _RELATION.finditer(text):
            i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise AlgebraFormatError(f"bad bracket indices at offset {m.start()}: {m.group(0)!r}")
            vec = _zero_vec(dim)
            for sign, body in _split_terms(m.group(3)):
                t = _TERM.match(body.strip())
                if not t:
                    raise AlgebraFormatError(f"cannot read term {body!r} at offset {m.start(3)}")
                coef_text, k = t.group(1).strip().rstrip("*").strip(), int(t.group(2)) - 1
                if not 0 <= k < dim:
                    raise AlgebraFormatError(f"basis index out of range in {body!r}")
                coef = ScalarExpr(coef_text).evaluate(bindings) if coef_text else 1
                vec[k] = lower(vec[k] + sign * coef)
            if i > j:
                i, j, vec = j, i, [-v for v in vec]
            br[(i, j)] = vec
        if not br and text.strip() and text.strip() != "abelian":
            raise AlgebraFormatError(f"no relations found in {text!r}")
        return cls(dim, br, name=name)


_RELATION = re.compile(r"\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=\s*([^\[]*?)\s*(?:[,;]\s*(?=\[)|$)")
_TERM = re.compile(r"^(.*?)\*?\s*e(\d+)$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split at top-level + and - signs."""
    out, depth, start, sign = [], 0, 0, 1
    text = text.strip()
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start - 1:
            body = text[start:k]
            if body.strip():
                out.append((sign, body))
                sign = 1 if ch == "+" else -1
            else:
                sign = sign * (1 if ch == "+" else -1)
            start = k + 1
    out.append((sign, text[start:]))
    return out


def _term(v, label: str) -> str:
    text = format_scalar(v)
    if text == "1":
        return label
    if text == "-1":
        return "-" + label
    if " " in text:
        return f"({text}){label}"
    return f"{text}{label}"


def _join_terms(terms: list[str]) -> str:
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def _coordinate_map(basis: Sequence[Sequence], n: int):
    """Function mapping a vector in span(basis) to its coordinates."""
    m = len(basis)
    if m == 0:
        return lambda v: []
    # choose m ambient coordinates on which the basis is invertible
    cols = []
    chosen = []
    for k in range(n):
        trial = chosen + [[basis[p][k] for p in range(m)]]
        if rank(trial) > len(chosen):
            chosen = trial
            cols.append(k)
            if len(cols) == m:
                break
    if len(cols) < m:
        raise ValueError("basis vectors are linearly dependent")
    sub = [[basis[p][k] for k in cols] for p in range(m)]  # m x m, rows = basis vectors
    inv = inverse(sub)

    def coords(v):
        w = [v[k] for k in cols]
        x = [lower(sum((w[r] * inv[r][p] for r in range(m)), ZERO)) for p in range(m)]
        # verify membership
        for k in range(n):
            s = sum((x[p] * basis[p][k] for p in range(m)), ZERO)
            if lower(s) != lower(v[k]):
                raise ValueError("vector not in the span of the basis")
        return x

    return coords


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"{n}A1")


# ---------------------------------------------------------------- subspaces


class Subspace:
    """Subspace of K^n stored by its reduced echelon basis."""

    __slots__ = ("n", "basis")

    def __init__(self, n: int, vectors: Sequence[Sequence] = ()):
        self.n = n
        vecs = [list(v) for v in vectors if any(v)]
        if vecs:
            red, _ = rref(vecs)
            self.basis = [tuple(row) for row in to_dense(red, n)]
        else:
            self.basis = []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list]:
        return [list(b) for b in self.basis]

    def contains(self, v: Sequence) -> bool:
        if not any(v):
            return True
        return rank(self.vectors() + [list(v)]) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.n, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace(self.n, intersect_spaces(self.vectors(), other.vectors(), self.n))

    def annihilator(self) -> list[list]:
        """Linear functionals (as vectors) vanishing on the subspace."""
        if not self.basis:
            return [_unit(self.n, k) for k in range(self.n)]
        return nullspace(self.vectors(), self.n)

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, dim={self.dim})"


def whole(L: LieAlgebra) -> Subspace:
    return Subspace(L.dim, [_unit(L.dim, k) for k in range(L.dim)])


def bracket_space(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    vecs = []
    for x in a.basis:
        for y in b.basis:
            v = L.bracket(x, y)
            if any(v):
                vecs.append(v)
    return Subspace(L.dim, vecs)


def centralizer_mod(L: LieAlgebra, target: Subspace, acting: Subspace | None = None) -> Subspace:
    """{x : [x, y] in target for all y in ``acting`` (default: L)}."""
    n = L.dim
    acting = acting or whole(L)
    funcs = target.annihilator()
    rows = []
    for y in acting.basis:
        # [x, y] = sum_i x_i [e_i, y]
        imgs = [L.bracket(_unit(n, i), y) for i in range(n)]
        for w in funcs:
            rows.append([sum((w[k] * imgs[i][k] for k in range(n)), ZERO) for i in range(n)])
    if not rows:
        return whole(L)
    return Subspace(n, nullspace(rows, n))


def center(L: LieAlgebra) -> Subspace:
    return centralizer_mod(L, Subspace(L.dim))


def derived_algebra(L: LieAlgebra) -> Subspace:
    w = whole(L)
    return bracket_space(L, w, w)


def is_ideal(L: LieAlgebra, s: Subspace) -> bool:
    return bracket_space(L, whole(L), s) <= s


# ---------------------------------------------------------------- series


@dataclass(frozen=True)
class SeriesProfile:
    derived: tuple
    lower_central: tuple
    upper_central: tuple

    def text(self) -> str:
        return "".join("(" + "".join(str(d) for d in seq) + ")" for seq in (self.derived, self.lower_central, self.upper_central))


def series(L: LieAlgebra) -> SeriesProfile:
    w = whole(L)
    ds = [w]
    while True:
        nxt = bracket_space(L, ds[-1], ds[-1])
        if nxt.dim == ds[-1].dim:
            break
        ds.append(nxt)
    cs = [w]
    while True:
        nxt = bracket_space(L, cs[-1], w)
        if nxt.dim == cs[-1].dim:
            break
        cs.append(nxt)
    us = [center(L)]
    while us[-1].dim < L.dim:
        nxt = centralizer_mod(L, us[-1])
        if nxt.dim == us[-1].dim:
            break
        us.append(nxt)
    return SeriesProfile(
        tuple(s.dim for s in ds),
        tuple(s.dim for s in cs),
        tuple(s.dim for s in us),
    )


def killing_form(L: LieAlgebra) -> list[list]:
    n = L.dim
    ads = [L.ad_basis(i) for i in range(n)]
    return [[_trace_product(ads[i], ads[j]) for j in range(n)] for i in range(n)]


def _trace_product(a, b):
    n = len(a)
    s = ZERO
    for i in range(n):
        ai = a[i]
        for k in range(n):
            if ai[k] and b[k][i]:
                s = s + ai[k] * b[k][i]
    return lower(s)


def predicates(L: LieAlgebra) -> dict:
    s = series(L)
    return {
        "is_abelian": L.is_abelian(),
        "is_nilpotent": s.lower_central[-1] == 0,
        "is_solvable": s.derived[-1] == 0,
        "is_semisimple": L.dim > 0 and rank(killing_form(L)) == L.dim,
    }


def radical(L: LieAlgebra) -> Subspace:
    """{x : Tr(ad x ad y) = 0 for all y in [L, L]}."""
    n = L.dim
    d = derived_algebra(L)
    if d.dim == 0:
        return whole(L)
    kf = killing_form(L)
    rows = []
    for y in d.basis:
        rows.append([sum((kf[i][j] * y[j] for j in range(n)), ZERO) for i in range(n)])
    return Subspace(n, nullspace(rows, n))


def _mat_vec(m: list[list]) -> list:
    return [x for row in m for x in row]


def _vec_mat(v: Sequence, n: int) -> list[list]:
    return [list(v[r * n : (r + 1) * n]) for r in range(n)]


def associative_envelope(mats: Sequence[list[list]], n: int, with_identity: bool = True) -> list[list[list]]:
    """Basis of the associative algebra generated by ``mats``."""
    gens = [m for m in mats if any(any(r) for r in m)]
    start = ([identity(n)] if with_identity else []) + gens
    basis: list[list[list]] = []
    flat: list[list] = []
    queue = list(start)
    while queue:
        m = queue.pop(0)
        v = _mat_vec(m)
        if not any(v):
            continue
        if rank(flat + [v]) > len(flat):
            flat.append(v)
            basis.append(m)
            for g in gens:
                queue.append(matmul(m, g))
    return basis


def trace_radical(basis: Sequence[list[list]]) -> list[list]:
    """Coefficient vectors (w.r.t. ``basis``) of the radical of the
    associative algebra spanned by ``basis``."""
    m = len(basis)
    gram = [[_trace_product(basis[p], basis[q]) for q in range(m)] for p in range(m)]
    return nullspace(gram, m)


def nilradical(L: LieAlgebra, solvable_only: bool = True) -> Subspace:
    """Largest nilpotent ideal of a solvable algebra.

    With ``solvable_only=False`` any algebra is accepted: the trace condition
    is then intersected with the radical, which gives the nilradical in
    general (the nilradical is the set of ad-nilpotent elements of the radical).
    """
    n = L.dim
    solvable = predicates(L)["is_solvable"]
    if solvable_only and not solvable:
        raise NotSolvable("nilradical is computed for solvable algebras only")
    ads = [L.ad_basis(i) for i in range(n)]
    env = associative_envelope(ads, n)
    # x in nilradical iff Tr(ad x * b) = 0 for every b in the envelope
    rows = [[_trace_product(ads[i], b) for i in range(n)] for b in env]
    out = Subspace(n, nullspace(rows, n))
    return out if solvable else out.intersect(radical(L))


# ---------------------------------------------------------------- splitting


@dataclass
class CentralSplit:
    """``L = L' + U`` with U central, U meeting [L, L] trivially.

    ``basis`` lists the adapted basis: first the vectors of L', then those
    of U.  ``prime`` is L' in its own basis.
    """

    prime: LieAlgebra
    k: int
    prime_basis: list
    central_basis: list

    @property
    def basis(self) -> list:
        return self.prime_basis + self.central_basis


def split_central(L: LieAlgebra) -> CentralSplit:
    n = L.dim
    c = center(L)
    d = derived_algebra(L)
    cd = c.intersect(d)
    u = complement_basis(cd.vectors(), c.vectors())
    k = len(u)
    # L' = D extended by a complement of (D + U) in L
    extra = complement_basis(d.vectors() + u, [_unit(n, i) for i in range(n)])
    prime_basis = d.vectors() + extra
    prime = L.restrict(prime_basis) if prime_basis else LieAlgebra(0)
    return CentralSplit(prime, k, prime_basis, [list(x) for x in u])


def centroid(L: LieAlgebra) -> list[list[list]]:
    """Basis of {X : X ad(e_i) = ad(e_i) X for all i}."""
    n = L.dim
    ads = [L.ad_basis(i) for i in range(n)]
    rows = []
    # unknown X[r][s] at column r*n+s
    for a in ads:
        for r in range(n):
            for s in range(n):
                # (X a)[r][s] - (a X)[r][s]
                row = {}
                for t in range(n):
                    if a[t][s]:
                        row[r * n + t] = row.get(r * n + t, ZERO) + a[t][s]
                    if a[r][t]:
                        row[t * n + s] = row.get(t * n + s, ZERO) - a[r][t]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    sols = nullspace(rows, n * n) if rows else [_unit(n * n, k) for k in range(n * n)]
    return [_vec_mat(v, n) for v in sols]


@dataclass
class IndecomposableCertificate:
    """The centroid modulo its radical is one-dimensional, so the algebra has
    no nontrivial idempotent in its centroid over any extension field."""

    centroid_dim: int
    radical_dim: int


@dataclass
class Decomposition:
    ideals: list  # list of (LieAlgebra, basis vectors in the original coordinates)


def _minimal_polynomial(x: list[list], n: int) -> list:
    """Monic minimal polynomial coefficients, lowest degree first."""
    powers = [_mat_vec(identity(n))]
    cur = identity(n)
    while True:
        cur = matmul(cur, x)
        v = _mat_vec(cur)
        cols = powers + [v]
        m = [[c[r] for c in cols] for r in range(n * n)]
        ker = nullspace(m, len(cols))
        if ker:
            k = ker[0]
            lead = k[-1]
            return [lower(c / lead) for c in k]
        powers.append(v)


def _poly_roots(coeffs: list) -> list:
    """Roots in K of a polynomial (lowest degree first), found by the rational
    root theorem and the quadratic formula."""
    roots = []
    p = list(coeffs)
    while len(p) > 1 and not p[0]:
        roots.append(ZERO)
        p = p[1:]
    found = True
    while found and len(p) > 2:
        found = False
        if all(isinstance(c, Fraction) for c in p):
            for r in _rational_candidates(p):
                if not _horner(p, r):
                    roots.append(r)
                    p = _deflate(p, r)
                    found = True
                    break
    if len(p) == 2:
        roots.append(lower(-p[0] / p[1]))
    elif len(p) == 3:
        a, b, c = p[2], p[1], p[0]
        disc = b * b - 4 * a * c
        s = sqrt_in_field(FieldScalar(disc) if not isinstance(disc, FieldScalar) else disc)
        if s is not None:
            roots.append(lower((-b + s) / (2 * a)))
            roots.append(lower((-b - s) / (2 * a)))
    return roots


def _horner(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return lower(acc)


def _deflate(p, r):
    # divide by (t - r)
    n = len(p) - 1
    q = [ZERO] * n
    acc = ZERO
    for k in range(n, 0, -1):
        acc = acc * r + p[k]
        q[k - 1] = acc
    return [lower(c) for c in q]


def _rational_candidates(p):
    import math

    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 == 0:
        return [ZERO]

    def divisors(m):
        out = set()
        for d in range(1, int(m**0.5) + 1):
            if m % d == 0:
                out.add(d)
                out.add(m // d)
        return sorted(out)

    cands = []
    for u in divisors(a0):
        for v in divisors(an):
            cands.append(Fraction(u, v))
            cands.append(Fraction(-u, v))
    return sorted(set(cands), key=lambda f: (abs(f), f))


def decompose(L: LieAlgebra, rng: random.Random | None = None, resamples: int = 10):
    """Split an algebra with C(L) inside [L, L] into indecomposable ideals.

    Returns an :class:`IndecomposableCertificate` when no splitting exists,
    otherwise a :class:`Decomposition` whose pieces are indecomposable.
    """
    rng = rng or random.Random(0)
    n = L.dim
    if n == 0:
        return IndecomposableCertificate(0, 0)
    cr = centroid(L)
    rad = trace_radical(cr)
    if len(cr) - len(rad) <= 1:
        return IndecomposableCertificate(len(cr), len(rad))
    for _ in range(resamples):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in cr]
        x = [[sum((coeffs[p] * cr[p][r][s] for p in range(len(cr))), ZERO) for s in range(n)] for r in range(n)]
        x = [[lower(v) for v in row] for row in x]
        mp = _minimal_polynomial(x, n)
        for lam in _poly_roots(mp):
            y = [[x[r][s] - (lam if r == s else 0) for s in range(n)] for r in range(n)]
            y = [[lower(v) for v in row] for row in y]
            yn = identity(n)
            for _ in range(n):
                yn = matmul(yn, y)
            ker = Subspace(n, nullspace(yn, n))
            img = Subspace(n, [list(col) for col in zip(*yn)])
            if 0 < ker.dim < n:
                pieces = []
                for part in (ker, img):
                    sub = L.restrict(part.vectors())
                    inner = decompose(sub, rng, resamples)
                    if isinstance(inner, IndecomposableCertificate):
                        pieces.append((sub, part.vectors()))
                    else:
                        for alg, vecs in inner.ideals:
                            # map back to the ambient coordinates
                            amb = [
                                [lower(sum((v[p] * part.basis[p][k] for p in range(part.dim)), ZERO)) for k in range(n)]
                                for v in vecs
                            ]
                            pieces.append((alg, amb))
                return Decomposition(pieces)
    raise SplittingObstruction(
        f"centroid has semisimple part of dimension {len(cr) - len(rad)} but no splitting over K was found"
    )


def indecomposable_pieces(L: LieAlgebra, rng: random.Random | None = None) -> tuple[list[LieAlgebra], int]:
    """Non-abelian indecomposable ideals of L and the number k of abelian
    one-dimensional summands, with L = (direct sum of pieces) + k A1."""
    cs = split_central(L)
    if cs.prime.dim == 0:
        return [], cs.k
    res = decompose(cs.prime, rng)
    if isinstance(res, IndecomposableCertificate):
        return [cs.prime], cs.k
    return [alg for alg, _ in res.ideals], cs.k


# ---------------------------------------------------------------- sl(3)

# grading index (as 3-bit integer) -> basis positions (0-based)
GELLMANN_ASSIGNMENT = {1: (0, 1), 7: (2,), 5: (3,), 3: (4,), 6: (5,), 2: (6,), 4: (7,)}


def _elementary(r: int, s: int) -> list[list]:
    m = [[ZERO] * 3 for _ in range(3)]
    m[r][s] = ONE
    return m


def _madd(*terms):
    out = [[ZERO] * 3 for _ in range(3)]
    for coef, m in terms:
        for r in range(3):
            for s in range(3):
                out[r][s] += coef * m[r][s]
    return out


def gellmann_matrices() -> list[list[list]]:
    E = _elementary
    return [
        _madd((1, E(0, 0)), (-1, E(1, 1))),
        _madd((1, E(1, 1)), (-1, E(2, 2))),
        _madd((1, E(0, 1)), (1, E(1, 0))),
        _madd((1, E(0, 2)), (1, E(2, 0))),
        _madd((1, E(1, 2)), (1, E(2, 1))),
        _madd((-1, E(0, 1)), (1, E(1, 0))),
        _madd((-1, E(1, 2)), (1, E(2, 1))),
        _madd((-1, E(0, 2)), (1, E(2, 0))),
    ]


class GradedLieAlgebra:
    def __init__(self, algebra: LieAlgebra, assignment: dict):
        self.algebra = algebra
        self.assignment = dict(assignment)
        self.position_index = {p: g for g, ps in assignment.items() for p in ps}

    def grading_holds(self) -> bool:
        L = self.algebra
        for gi, ps in self.assignment.items():
            for gj, qs in self.assignment.items():
                target = set(self.assignment.get(gi ^ gj, ()))
                for p in ps:
                    for q in qs:
                        vec = L.c(p, q)
                        if any(v for k, v in enumerate(vec) if k not in target):
                            return False
        return True

    def pair_bracket_nonzero(self, gi: int, gj: int) -> bool:
        L = self.algebra
        return any(any(L.c(p, q)) for p in self.assignment[gi] for q in self.assignment[gj])


@lru_cache(maxsize=None)
def sl3_gellmann() -> GradedLieAlgebra:
    mats = gellmann_matrices()
    n = 8
    flat = [_mat_vec(m) for m in mats]
    coords = _coordinate_map(flat, 9)
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            a, b = mats[i], mats[j]
            comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(matmul(a, b), matmul(b, a))]
            v = _mat_vec(comm)
            if any(v):
                br[(i, j)] = coords(v)
    return GradedLieAlgebra(LieAlgebra(8, br, name="sl(3,C)"), GELLMANN_ASSIGNMENT)

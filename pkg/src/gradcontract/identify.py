"""Identification of contracted algebras: invariant fingerprints, catalog
matching, explicit isomorphism search and the catalog-wide summary."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence

from .contraction import (
    REFERENCE_BINDINGS,
    CatalogEntry,
    Continuous,
    classify_continuity,
    contract,
    load_catalog,
    support_census,
)
from .exactnum.field import ScalarExpr, as_scalar, format_scalar, nth_root_in_field, parse_scalar
from .exactnum.linalg import det, inverse, lower, matmul, rank, rref, transpose
from .invariants import six_tuple, tau
from .liealg import (
    LieAlgebra,
    SplittingObstruction,
    Subspace,
    bracket_space,
    center,
    centralizer_mod,
    decompose,
    IndecomposableCertificate,
    nilradical,
    predicates,
    radical,
    series,
    split_central,
    whole,
)

__all__ = [
    "PieceRecord",
    "IdentificationRecord",
    "IsoWitness",
    "Found",
    "NotFound",
    "DimensionMismatch",
    "BudgetExhausted",
    "DEFAULT_VALUES",
    "fingerprint",
    "iso_verify",
    "iso_search",
    "expected_rows",
    "run_catalog",
    "ClassificationReport",
]


class DimensionMismatch(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


# ---------------------------------------------------------------- expected invariant rows


@lru_cache(maxsize=None)
def _shipped_rows() -> tuple:
    text = resources.files("gradcontract").joinpath("data/expected_a2.json").read_text()
    return tuple(json.loads(text))


def expected_rows() -> list[dict]:
    return [dict(r) for r in _shipped_rows()]


def bound_name(name: str, bindings: Mapping) -> str:
    """``G'15,6(a)`` with a=1 becomes ``G'15,6(1)``."""
    head, _, tail = name.partition("(")
    if not tail:
        return name
    params = tail.rstrip(")").split(",")
    return head + "(" + ",".join(str(bindings.get(p, p)) for p in params) + ")"


@lru_cache(maxsize=None)
def _row_index() -> dict:
    index: dict = {}
    for row in _shipped_rows():
        key = _row_key(row, row["six_tuple"])
        index.setdefault(key, []).append(row["name"])
        for sp in row.get("special", []):
            if "six_tuple" in sp:
                index.setdefault(_row_key(row, sp["six_tuple"]), []).append(bound_name(row["name"], sp["bindings"]))
    return index


def _row_key(row: dict, six: Sequence) -> tuple:
    cls = row["class"]
    return (
        row["dim"],
        cls,
        row["series"],
        tuple(six),
        row["tau"],
        row.get("nilradical_dim") if cls != "nilpotent" else None,
        row.get("radical_dim") if cls == "non-solvable" else None,
    )


# ---------------------------------------------------------------- fingerprints


def _class_of(pred: dict) -> str:
    if pred["is_nilpotent"]:
        return "nilpotent"
    return "solvable" if pred["is_solvable"] else "non-solvable"


@dataclass(frozen=True)
class PieceRecord:
    """Invariants of one non-abelian indecomposable ideal."""

    dim: int
    cls: str
    series: str
    six_tuple: tuple
    tau: int
    nilradical_dim: int | None = None
    nilradical_series: str | None = None
    radical_dim: int | None = None
    semisimple: bool = False
    match: str | None = None

    def key(self) -> tuple:
        return (
            self.dim,
            self.cls,
            self.series,
            self.six_tuple,
            self.tau,
            self.nilradical_dim,
            self.radical_dim,
        )

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "class": self.cls,
            "series": self.series,
            "six_tuple": list(self.six_tuple),
            "tau": self.tau,
            "match": self.match,
        }
        if self.nilradical_dim is not None:
            out["nilradical_dim"] = self.nilradical_dim
            out["nilradical_series"] = self.nilradical_series
        if self.radical_dim is not None:
            out["radical_dim"] = self.radical_dim
            out["levi_dim"] = self.dim - self.radical_dim
        return out


@dataclass(frozen=True)
class IdentificationRecord:
    dim: int
    cls: str
    series: str
    six_tuple: tuple
    tau: int
    k: int
    pieces: tuple
    nilradical_dim: int
    radical_dim: int
    match: str | None
    reason: str | None = None

    def key(self) -> tuple:
        return (
            self.dim,
            self.cls,
            self.series,
            self.six_tuple,
            self.tau,
            self.k,
            tuple(p.key() for p in self.pieces),
            self.nilradical_dim,
            self.radical_dim,
        )

    @property
    def decomposable(self) -> bool:
        return len(self.pieces) > 1

    @property
    def nonabelian_dim(self) -> int:
        return self.dim - self.k

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "class": self.cls,
            "series": self.series,
            "six_tuple": list(self.six_tuple),
            "tau": self.tau,
            "k": self.k,
            "nilradical_dim": self.nilradical_dim,
            "radical_dim": self.radical_dim,
            "pieces": [p.to_json() for p in self.pieces],
            "match": self.match,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def _piece_record(P: LieAlgebra, rng: random.Random) -> PieceRecord:
    pred = predicates(P)
    cls = _class_of(pred)
    nil_dim = nil_series = rad_dim = None
    if cls != "nilpotent":
        nil = nilradical(P, solvable_only=False)
        nil_dim = nil.dim
        nil_series = series(P.restrict(nil.vectors())).text() if nil.dim else "()()()"
    if cls == "non-solvable":
        rad_dim = radical(P).dim
    rec = PieceRecord(
        dim=P.dim,
        cls=cls,
        series=series(P).text(),
        six_tuple=tuple(six_tuple(P)),
        tau=tau(P, rng=rng),
        nilradical_dim=nil_dim,
        nilradical_series=nil_series,
        radical_dim=rad_dim,
        semisimple=bool(pred["is_semisimple"]),
    )
    return _with_match(rec)


def _with_match(rec: PieceRecord) -> PieceRecord:
    names = _row_index().get(rec.key())
    if names:
        match = " | ".join(names)
    elif rec.semisimple and rec.dim == 8:
        # the only semisimple Lie algebra of dimension 8
        match = "sl(3,C)"
    else:
        match = None
    return PieceRecord(**{**rec.__dict__, "match": match})


def fingerprint(L: LieAlgebra, rng: random.Random | None = None) -> IdentificationRecord:
    rng = rng or random.Random(0)
    pred = predicates(L)
    cls = _class_of(pred)
    cs = split_central(L)
    reason = None
    pieces: list[PieceRecord] = []
    if cs.prime.dim:
        try:
            res = decompose(cs.prime, rng)
        except SplittingObstruction as exc:
            res = None
            reason = str(exc)
        if isinstance(res, IndecomposableCertificate):
            algs = [cs.prime]
        elif res is None:
            algs = []
        else:
            algs = [alg for alg, _ in res.ideals]
        pieces = sorted((_piece_record(P, rng) for P in algs), key=lambda p: (p.dim, str(p.key())))
    nil = nilradical(L, solvable_only=False)
    rad = radical(L)
    if reason is None and any(p.match is None for p in pieces):
        reason = "no catalog row has the invariants of an indecomposable ideal"
    if reason is None:
        names = [p.match for p in pieces] + ([f"{cs.k}A1"] if cs.k else [])
        match = " ⊕ ".join(names) if names else f"{L.dim}A1"
    else:
        match = None
    return IdentificationRecord(
        dim=L.dim,
        cls=cls if L.dim else "nilpotent",
        series=series(L).text(),
        six_tuple=tuple(six_tuple(L)),
        tau=tau(L, rng=rng),
        k=cs.k,
        pieces=tuple(pieces),
        nilradical_dim=nil.dim,
        radical_dim=rad.dim,
        match=match,
        reason=reason,
    )


# ---------------------------------------------------------------- isomorphisms


@dataclass
class IsoWitness:
    """Matrix of a linear map L1 -> L2: column s is the image of e_s."""

    matrix: list

    def column(self, s: int) -> list:
        return [row[s] for row in self.matrix]

    def to_json(self) -> list:
        return [[format_scalar(x) for x in row] for row in self.matrix]


@dataclass
class Found:
    witness: IsoWitness
    nodes: int = 0

    def __bool__(self) -> bool:
        return True


@dataclass
class NotFound:
    certificate: str | None = None
    inconclusive: bool = True
    nodes: int = 0

    def __bool__(self) -> bool:
        return False


def iso_verify(L1: LieAlgebra, L2: LieAlgebra, A) -> bool:
    """A[e_i, e_j] = [A e_i, A e_j] for all i < j, and det A != 0."""
    if L1.dim != L2.dim:
        raise DimensionMismatch(f"dimensions {L1.dim} and {L2.dim} differ")
    m = A.matrix if isinstance(A, IsoWitness) else A
    n = L1.dim
    if len(m) != n or any(len(row) != n for row in m):
        raise DimensionMismatch("witness shape does not match the algebras")
    if n == 0:
        return True
    cols = [[m[r][s] for r in range(n)] for s in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            cij = L1.c(i, j)
            lhs = [lower(sum((cij[r] * cols[r][k] for r in range(n) if cij[r]), Fraction(0))) for k in range(n)]
            if lhs != L2.bracket(cols[i], cols[j]):
                return False
    return bool(det(m))


DEFAULT_VALUES = ("1", "-1", "2", "-2", "1/2", "-1/2", "i", "-i", "sqrt2", "-sqrt2", "sqrt3", "-sqrt3")


def _flags(L: LieAlgebra) -> list[Subspace]:
    """Characteristic subspaces: every automorphism-invariant subspace listed
    here is mapped onto its counterpart by any isomorphism."""
    w = whole(L)
    out = []
    cur = w
    while True:
        nxt = bracket_space(L, cur, cur)
        out.append(nxt)
        if nxt.dim in (0, cur.dim):
            break
        cur = nxt
    cur = w
    while True:
        nxt = bracket_space(L, cur, w)
        out.append(nxt)
        if nxt.dim in (0, cur.dim):
            break
        cur = nxt
    cur = center(L)
    out.append(cur)
    while 0 < cur.dim < L.dim:
        nxt = centralizer_mod(L, cur)
        if nxt.dim == cur.dim:
            break
        out.append(nxt)
        cur = nxt
    out.append(nilradical(L, solvable_only=False))
    out.append(radical(L))
    d = bracket_space(L, w, w)
    out.append(centralizer_mod(L, Subspace(L.dim), d))  # centralizer of [L, L]
    return out


def _reduce(v: Sequence, sub: Subspace) -> list:
    """Normal form of v modulo ``sub`` (eliminate its echelon pivots)."""
    v = list(v)
    for row in sub.basis:
        p = next(k for k, x in enumerate(row) if x)
        if v[p]:
            c = v[p]
            v = [lower(a - c * b) for a, b in zip(v, row)]
    return v


def _ad_rank(L: LieAlgebra, v: Sequence) -> int:
    return rank(L.ad(v))


def _trace_powers(L: LieAlgebra, v: Sequence) -> tuple:
    """Tr(ad v ^ k) for k = 2, 3, 4."""
    a = L.ad(v)
    out = []
    p = a
    for _ in range(3):
        p = matmul(p, a)
        out.append(lower(sum((p[i][i] for i in range(len(p))), Fraction(0))))
    return tuple(out)


_OMEGA = parse_scalar("-1/2+1/2*sqrt3*i")
_ROOTS_OF_UNITY = {
    2: (Fraction(1), Fraction(-1)),
    3: (Fraction(1), _OMEGA, _OMEGA * _OMEGA),
    4: (Fraction(1), Fraction(-1), parse_scalar("i"), parse_scalar("-i")),
}


class _Search:
    def __init__(self, L1, L2, values, budget):
        self.L1, self.L2 = L1, L2
        self.n = L1.dim
        self.values = [parse_scalar(v) if isinstance(v, str) else as_scalar(v) for v in values]
        self.values = [lower(v) for v in self.values]
        self.budget = budget
        self.nodes = 0
        n = self.n
        f1, f2 = _flags(L1), _flags(L2)
        self.allowed = []
        for s in range(n):
            e = [Fraction(int(k == s)) for k in range(n)]
            w = whole(L2)
            for s1, s2 in zip(f1, f2):
                if s1.contains(e):
                    w = w.intersect(s2)
            self.allowed.append(w)
        self.ad_ranks = [_ad_rank(L1, [Fraction(int(k == s)) for k in range(n)]) for s in range(n)]
        derived = bracket_space(L1, whole(L1), whole(L1))
        cent = center(L1)
        units = [[Fraction(int(k == s)) for k in range(n)] for s in range(n)]
        self.in_derived = [derived.contains(u) for u in units]
        self.central = [cent.contains(u) for u in units]
        self.traces1 = [_trace_powers(L1, u) for u in units]
        # adding a map that kills [L1, L1] and lands in C(L2) cap [L2, L2]
        # keeps an isomorphism an isomorphism, so columns outside [L1, L1]
        # may be taken reduced modulo that subspace
        zd = center(L2).intersect(bracket_space(L2, whole(L2), whole(L2)))
        self.shift = [None if self.in_derived[s] else zd.intersect(self.allowed[s]) for s in range(n)]
        self._rank_cache: dict = {}

    def rank_ok(self, s: int, v: Sequence) -> bool:
        key = (s, tuple(v))
        if key not in self._rank_cache:
            self._rank_cache[key] = _ad_rank(self.L2, v) == self.ad_ranks[s]
        return self._rank_cache[key]

    def scales(self, s: int, y: Sequence) -> list:
        """Scalars c with Tr(ad(c y)^k) = Tr(ad e_s^k) for k = 2, 3, 4.  These
        traces are preserved by isomorphisms, so they fix c up to a root of
        unity unless they all vanish, in which case the value set is used."""
        want = self.traces1[s]
        have = _trace_powers(self.L2, y)
        for k, (a, b) in enumerate(zip(want, have), start=2):
            if a:
                if not b:
                    return []
                base = nth_root_in_field(a / b, k)
                if base is None:
                    return []
                out = [lower(base * u) for u in _ROOTS_OF_UNITY[k]]
                return [c for c in out if all(c**j * h == w for j, (w, h) in enumerate(zip(want, have), start=2))]
        if any(have):
            return []
        return self.values

    def candidates(self, s: int, two_terms: bool) -> list:
        shift = self.shift[s]
        basis = self.allowed[s].vectors()
        if shift is not None and shift.dim:
            basis = [b for b in (_reduce(b, shift) for b in basis) if any(b)]
            basis = Subspace(self.n, basis).vectors()
        out = []
        for b in basis:
            if not self.rank_ok(s, b):
                continue
            for v in self.scales(s, b):
                out.append([lower(v * x) for x in b])
        if two_terms:
            for b1, b2 in itertools.combinations(basis, 2):
                for v2 in self.values:
                    probe = [lower(x + v2 * y) for x, y in zip(b1, b2)]
                    if not self.rank_ok(s, probe):
                        continue
                    for v1 in self.scales(s, probe):
                        out.append([lower(v1 * x) for x in probe])
        return out

    def propagate(self, cols: list) -> list | None:
        """Fill every column forced by the bracket relations; None on conflict."""
        n = self.n
        cols = list(cols)
        while True:
            unknown = [r for r in range(n) if cols[r] is None]
            pos = {r: p for p, r in enumerate(unknown)}
            m = len(unknown)
            rows = []
            for i in range(n):
                if cols[i] is None:
                    continue
                for j in range(i + 1, n):
                    if cols[j] is None:
                        continue
                    cij = self.L1.c(i, j)
                    rhs = self.L2.bracket(cols[i], cols[j])
                    row = {}
                    for r in range(n):
                        if not cij[r]:
                            continue
                        if cols[r] is None:
                            row[pos[r]] = cij[r]
                        else:
                            rhs = [a - cij[r] * b for a, b in zip(rhs, cols[r])]
                    for k, v in enumerate(rhs):
                        v = lower(v)
                        if v:
                            row[m + k] = v
                    if not row:
                        continue
                    if all(c >= m for c in row):
                        return None
                    rows.append(row)
            if not rows:
                return cols
            red, piv = rref(rows)
            forced = False
            for row, pc in zip(red, piv):
                if pc >= m:
                    return None
                if any(c < m and c != pc for c in row):
                    continue
                s = unknown[pc]
                vec = [lower(row.get(m + k, Fraction(0))) for k in range(n)]
                if not self.admissible(s, vec, cols):
                    return None
                cols[s] = vec
                forced = True
            if not forced:
                return cols

    def admissible(self, s: int, vec: Sequence, cols: list) -> bool:
        if not any(vec) or not self.allowed[s].contains(vec):
            return False
        if not self.rank_ok(s, vec) or _trace_powers(self.L2, vec) != self.traces1[s]:
            return False
        known = [c for c in cols if c is not None] + [list(vec)]
        return rank(known) == len(known)

    def order(self, shuffle=None) -> list:
        """Columns in search order; ``shuffle`` breaks ties at random."""
        tie = {s: shuffle.random() if shuffle else s for s in range(self.n)}
        return sorted(range(self.n), key=lambda s: (self.central[s], self.in_derived[s], self.allowed[s].dim, tie[s]))

    def run(self, two_terms: bool, restarts: int = 1, rng=None) -> list | None:
        """Depth-first search; with ``restarts`` > 1 the budget is shared
        between several tie-breaking orders, the first one deterministic."""
        rng = rng or random.Random(0)
        total = self.budget
        share = max(1, total // restarts)
        for k in range(restarts):
            self.budget = min(total, self.nodes + share) if k < restarts - 1 else total
            try:
                found = self._run_order(self.order(rng if k else None), two_terms)
            except BudgetExhausted:
                if k == restarts - 1:
                    raise
                continue
            if found is not None or restarts == 1:
                return found
        return None

    def _run_order(self, order: list, two_terms: bool) -> list | None:
        cands = {s: self.candidates(s, two_terms) for s in range(self.n)}

        def complete(cols, free):
            # central columns only meet zero brackets: any independent choice works
            cols = list(cols)
            for s in sorted(free, key=lambda s: self.allowed[s].dim):
                for c in cands[s]:
                    self.nodes += 1
                    if self.admissible(s, c, cols):
                        cols[s] = c
                        break
                else:
                    return None
            return cols

        def dfs(cols):
            free = [s for s in order if cols[s] is None]
            if not free:
                return cols
            if all(self.central[s] for s in free):
                return complete(cols, free)
            s = free[0]
            for c in cands[s]:
                self.nodes += 1
                if self.nodes > self.budget:
                    raise BudgetExhausted(self.nodes)
                if not self.admissible(s, c, cols):
                    continue
                trial = list(cols)
                trial[s] = c
                trial = self.propagate(trial)
                if trial is None:
                    continue
                done = dfs(trial)
                if done is not None:
                    return done
            return None

        return dfs([None] * self.n)


def _components(L: LieAlgebra, rng: random.Random) -> tuple[list, list]:
    """Indecomposable non-abelian ideals (algebra, basis in L coordinates)
    and a basis of a central complement."""
    cs = split_central(L)
    pieces = []
    if cs.prime.dim:
        res = decompose(cs.prime, rng)
        parts = [(cs.prime, None)] if isinstance(res, IndecomposableCertificate) else res.ideals
        for alg, vecs in parts:
            if vecs is None:
                amb = [list(v) for v in cs.prime_basis]
            else:
                amb = [
                    [lower(sum((v[p] * cs.prime_basis[p][k] for p in range(len(v))), Fraction(0))) for k in range(L.dim)]
                    for v in vecs
                ]
            pieces.append((alg, amb))
    return pieces, cs.central_basis


def _adapted_basis(L: LieAlgebra) -> list:
    """Basis built up through the characteristic subspaces (and their pairwise
    intersections) in order of dimension, so that each of them is spanned by
    basis vectors as far as possible."""
    flags = _flags(L)
    more = [a.intersect(b) for a, b in itertools.combinations(flags, 2)]
    seen, ordered = set(), []
    for f in sorted(flags + more + [whole(L)], key=lambda f: f.dim):
        key = tuple(f.basis)
        if key in seen or not f.dim:
            continue
        seen.add(key)
        ordered.append(f)
    basis: list = []
    for f in ordered:
        for v in f.vectors():
            if rank(basis + [v]) > len(basis):
                basis.append(v)
    return basis


def _piece_search(P1: LieAlgebra, P2: LieAlgebra, values, budget: int) -> tuple[list | None, int]:
    """Matrix of an isomorphism P1 -> P2 (or None) and the nodes used."""
    B = _adapted_basis(P1)
    Q1 = P1.change_basis(B)
    search = _Search(Q1, P2, values, budget)
    for two_terms in (False, True):
        cols = search.run(two_terms, restarts=4 if two_terms else 1)
        if cols is not None:
            n = P1.dim
            m = [[cols[s][r] for s in range(n)] for r in range(n)]
            # Q1 basis vector p is B[p] in P1 coordinates
            return matmul(m, inverse(transpose(B))), search.nodes
    return None, search.nodes


def _both_ways(P1, P2, values, budget: int) -> tuple[list | None, int]:
    """Search P1 -> P2 on half the budget, then P2 -> P1 and invert."""
    spent = 0
    try:
        m, spent = _piece_search(P1, P2, values, budget // 2)
        if m is not None:
            return m, spent
    except BudgetExhausted:
        spent = budget // 2
    m, more = _piece_search(P2, P1, values, budget - spent)
    return (inverse(m) if m is not None else None), spent + more


def iso_search(
    L1: LieAlgebra,
    L2: LieAlgebra,
    budget: int = 10**6,
    values: Sequence = DEFAULT_VALUES,
    rng: random.Random | None = None,
    check_invariants: bool = True,
):
    """Look for an isomorphism L1 -> L2 with entries built from ``values``.

    Both algebras are split into a central complement and indecomposable
    ideals; ideals with equal invariants are paired and searched separately.
    In each search the columns of the unknown matrix are restricted to the
    characteristic subspaces matching those containing the basis vector and
    to vectors whose adjoint has the right rank, and columns fixed by brackets
    of already chosen columns are solved for linearly.  A first pass tries
    single-term columns, a second pass adds two-term combinations.
    """
    if L1.dim != L2.dim:
        return NotFound("invariant mismatch: dimension", inconclusive=False)
    if check_invariants:
        r1, r2 = fingerprint(L1), fingerprint(L2)
        if r1.key() != r2.key():
            names = ("dim", "class", "series", "six_tuple", "tau", "k", "pieces", "nilradical_dim", "radical_dim")
            diff = [name for name, a, b in zip(names, r1.key(), r2.key()) if a != b]
            return NotFound("invariant mismatch: " + ", ".join(diff), inconclusive=False)
    n = L1.dim
    if n == 0:
        return Found(IsoWitness([]))
    rng = rng or random.Random(0)
    pieces1, central1 = _components(L1, rng)
    pieces2, central2 = _components(L2, rng)
    if len(central1) != len(central2) or len(pieces1) != len(pieces2):
        return NotFound("invariant mismatch: central split or decomposition", inconclusive=False)
    rec1 = [_piece_record(P, random.Random(0)).key() for P, _ in pieces1]
    rec2 = [_piece_record(P, random.Random(0)).key() for P, _ in pieces2]
    if sorted(map(str, rec1)) != sorted(map(str, rec2)):
        return NotFound("invariant mismatch: indecomposable ideals", inconclusive=False)
    nodes = 0
    blocks = []
    used: set = set()
    try:
        for (P1, v1), k1 in zip(pieces1, rec1):
            for idx, ((P2, v2), k2) in enumerate(zip(pieces2, rec2)):
                if idx in used or k2 != k1:
                    continue
                m, spent = _both_ways(P1, P2, values, budget - nodes)
                nodes += spent
                if m is not None:
                    used.add(idx)
                    blocks.append((v1, v2, m))
                    break
            else:
                return NotFound(None, inconclusive=True, nodes=nodes)
    except BudgetExhausted:
        return NotFound(None, inconclusive=True, nodes=budget)
    # assemble in the bases (ideal vectors..., central vectors...)
    src = [v for v1, _, _ in blocks for v in v1] + [list(v) for v in central1]
    dst_cols = []
    for v1, v2, m in blocks:
        for s in range(len(v1)):
            col = [lower(sum((m[r][s] * v2[r][k] for r in range(len(v2))), Fraction(0))) for k in range(n)]
            dst_cols.append(col)
    dst_cols += [list(v) for v in central2]
    # A * src_col = dst_col for every adapted basis vector
    S = transpose(src)
    D = transpose(dst_cols)
    A = matmul(D, inverse(S))
    A = [[lower(x) for x in row] for row in A]
    if not iso_verify(L1, L2, A):
        raise AssertionError("assembled map is not an isomorphism")
    return Found(IsoWitness(A), nodes)


# ---------------------------------------------------------------- catalog run

# factors tried when a parametric member is matched against another family
RATIOS = ("1", "4", "1/4", "2", "1/2", "-1", "-4", "-1/4")
# further parameter values at which an isomorphism to a fixed algebra is
# rechecked; chosen so that the square roots a witness may need lie in K
SAMPLED_VALUES = ("3", "4", "1/2", "-1")
TRIVIAL = ("e0_1", "e21_1")


def algebra_name(entry_name: str) -> str:
    """``e17_8`` -> ``G17,8``."""
    return "G" + entry_name[1:].replace("_", ",")


def _continuity_type(entry: CatalogEntry) -> str:
    ref = classify_continuity(entry.reference(), check=False)
    kind = "C" if isinstance(ref, Continuous) else "D"
    if entry.special_bindings and kind == "D":
        if isinstance(classify_continuity(entry.special(), check=False), Continuous):
            return "conditional"
    return kind


def _reference_bindings(entry: CatalogEntry, params: Mapping) -> dict:
    return {p: as_scalar(params.get(p, REFERENCE_BINDINGS[p])) for p in entry.params}


def _scaled(bindings: dict, ratio) -> dict:
    r = parse_scalar(ratio)
    return {p: lower(v * r) for p, v in bindings.items()}


def _binding_text(bindings: Mapping) -> dict:
    return {p: format_scalar(v) for p, v in sorted(bindings.items())}


@dataclass
class ClassificationReport:
    params: dict
    seed: int
    budget: int
    algebras: list
    specials: list
    groups: list
    pieces: list
    counts: dict
    class_counts: dict

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "seed": self.seed,
            "budget": self.budget,
            "counts": self.counts,
            "class_counts": self.class_counts,
            "groups": self.groups,
            "pieces": self.pieces,
            "algebras": self.algebras,
            "specials": self.specials,
        }

    @property
    def isomorphisms(self) -> list:
        return [iso for g in self.groups for iso in g["isomorphisms"]]


def _tally(items) -> dict:
    """{"count": n, "parametric": p} from (is_parametric) flags."""
    items = list(items)
    return {"count": len(items), "parametric": sum(1 for x in items if x)}


def _reach(name, step, members, algebras, entries, reached, out, tried, rng) -> bool:
    rep = members[0]
    entry = entries[name]
    trials = [(None, algebras[name])]
    if entry.is_parametric and entries[rep].is_parametric and len(entry.params) == 1:
        base = _reference_bindings(entry, {})
        trials = [(_scaled(base, r), None) for r in RATIOS]
    for k, (bindings, L) in enumerate(trials):
        for via in list(reached):
            if (name, k, via, step) in tried:
                continue
            tried.add((name, k, via, step))
            if L is None:
                L = contract(entry.bind(bindings), check=False)
            L_via, A_via = reached[via]
            res = iso_search(L_via, L, budget=step, rng=rng, check_invariants=False)
            if not res:
                continue
            A = res.witness.matrix if A_via is None else matmul(res.witness.matrix, A_via)
            A = [[lower(x) for x in row] for row in A]
            assert iso_verify(algebras[rep], L, A)
            reached[name] = (L, A)
            out[name] = {
                "from": algebra_name(rep),
                "to": algebra_name(name),
                "status": "found",
                "via": algebra_name(via) if via != rep else None,
                "bindings": _binding_text(bindings) if bindings else None,
                "witness": IsoWitness(A).to_json(),
                "verified": True,
            }
            return True
    return False


def _group_isomorphisms(members, algebras, entries, budget, rng) -> list:
    """Connect every member of a record group to the first one by explicit
    witnesses, composing through members already reached."""
    rep = members[0]
    reached = {rep: (algebras[rep], None)}  # name -> (algebra, map from rep)
    out = {}
    pending = list(members[1:])
    schedule = sorted({min(2000, budget), budget})
    tried = set()
    for step in schedule:
        progress = True
        while progress and pending:
            # a member reached late can open a route to one tried earlier
            progress = False
            for name in list(pending):
                if _reach(name, step, members, algebras, entries, reached, out, tried, rng):
                    pending.remove(name)
                    progress = True
    for name in pending:
        out[name] = {
            "from": algebra_name(rep),
            "to": algebra_name(name),
            "status": "inconclusive",
            "witness": None,
            "verified": False,
        }
    return [out[m] for m in members[1:]]


def _sampled_checks(members, entries, budget, rng) -> list:
    """For a parametric member of a group whose representative is fixed,
    repeat the search at further parameter values."""
    rep = entries[members[0]]
    if rep.is_parametric:
        return []
    out = []
    L_rep = contract(rep.reference(), check=False)
    for name in members[1:]:
        entry = entries[name]
        if not entry.is_parametric:
            continue
        for value in SAMPLED_VALUES:
            bindings = {p: parse_scalar(value) for p in entry.params}
            L = contract(entry.bind(bindings), check=False)
            res = iso_search(L_rep, L, budget=budget, rng=rng, check_invariants=False)
            out.append({"algebra": algebra_name(name), "bindings": _binding_text(bindings), "found": bool(res)})
    return out


def run_catalog(
    params: Mapping | None = None,
    seed: int = 0,
    budget: int = 20000,
    entries: Sequence[CatalogEntry] | None = None,
    max_degree: int | None = 4,
    search: bool = True,
) -> ClassificationReport:
    """Contract, fingerprint and group the whole catalog.

    ``budget`` bounds the nodes of each single isomorphism search; failed
    searches are reported as inconclusive.  ``max_degree=None`` skips the
    Casimir computation for the per-algebra rows.
    """
    from .invariants import casimirs

    params = dict(params or {})
    entries = list(entries if entries is not None else load_catalog())
    by_name = {e.name: e for e in entries}
    rng = random.Random(seed)
    algebras, records, types = {}, {}, {}
    rows = []
    for e in entries:
        bindings = _reference_bindings(e, params)
        L = contract(e.bind(bindings), check=False)
        rec = fingerprint(L, random.Random(seed))
        algebras[e.name], records[e.name] = L, rec
        types[e.name] = _continuity_type(e)
        rows.append(
            {
                "matrix": e.name,
                "algebra": algebra_name(e.name),
                "bindings": _binding_text(bindings),
                "type": types[e.name],
                "record": rec.to_json(),
            }
        )
    specials = []
    for e in entries:
        if e.special_bindings:
            b = {p: ScalarExpr(v).evaluate() for p, v in e.special_bindings.items()}
            rec = fingerprint(contract(e.bind(b), check=False), random.Random(seed))
            specials.append({"matrix": e.name, "bindings": _binding_text(b), "record": rec.to_json()})

    # record groups, representative first: fixed algebras before families
    grouped: dict = {}
    for e in entries:
        grouped.setdefault(records[e.name].key(), []).append(e.name)
    groups = []
    for members in grouped.values():
        members = sorted(members, key=lambda m: (by_name[m].is_parametric, entries.index(by_name[m])))
        rec = records[members[0]]
        kinds = sorted({types[m] for m in members})
        group = {
            "members": [algebra_name(m) for m in members],
            "matrices": members,
            "match": rec.match,
            "class": rec.cls,
            "nonabelian_dim": rec.nonabelian_dim,
            "decomposable": rec.decomposable,
            "trivial": members[0] in TRIVIAL,
            "type": kinds[0] if len(kinds) == 1 else "mixed",
            "parametric": all(by_name[m].is_parametric for m in members),
            "isomorphisms": [],
            "sampled": [],
        }
        if search and len(members) > 1:
            group["isomorphisms"] = _group_isomorphisms(members, algebras, by_name, budget, rng)
            group["sampled"] = _sampled_checks(members, by_name, budget, rng)
        groups.append(group)

    # indecomposable pieces of the non-trivial algebras
    nontrivial = [e for e in entries if e.name not in TRIVIAL]
    piece_groups: dict = {}
    piece_flags = []
    for e in nontrivial:
        for p in records[e.name].pieces:
            piece_flags.append((p, e))
            piece_groups.setdefault(p.key(), []).append(e)
    pieces = []
    for key, owners in piece_groups.items():
        p = next(p for p, e in piece_flags if p.key() == key)
        row = p.to_json()
        row["occurrences"] = len(owners)
        row["matrices"] = sorted({e.name for e in owners}, key=lambda m: entries.index(by_name[m]))
        row["parametric"] = all(e.is_parametric for e in owners)
        row["type"] = types[row["matrices"][0]]
        pieces.append(row)
    if max_degree:
        by_key = {}
        for e in nontrivial:
            for P, _ in _components(algebras[e.name], random.Random(seed))[0]:
                by_key.setdefault(_piece_record(P, random.Random(seed)).key(), P)
        for row, key in zip(pieces, piece_groups):
            if row["class"] == "nilpotent":
                cas = casimirs(by_key[key], max_degree=max_degree, rng=random.Random(seed))
                row["casimirs"] = [p.format() for p in cas.independent_polynomials]
                row["casimir_max_degree"] = max_degree

    counts = _summary(entries, nontrivial, records, groups, piece_flags, piece_groups, types)
    counts["nu_distribution"] = support_census(entries)["nu_distribution"]
    return ClassificationReport(
        params={k: format_scalar(as_scalar(v)) for k, v in params.items()},
        seed=seed,
        budget=budget,
        algebras=rows,
        specials=specials,
        groups=groups,
        pieces=pieces,
        counts=counts,
        class_counts=_class_counts(groups),
    )


def _summary(entries, nontrivial, records, groups, piece_flags, piece_groups, types) -> dict:
    counts: dict = {}
    counts["algebras"] = len(entries)
    counts["non_isomorphic_total"] = len(groups)
    counts["non_isomorphic_nontrivial"] = sum(1 for g in groups if not g["trivial"])
    counts["central_split"] = _tally(
        e.is_parametric for e in nontrivial if records[e.name].k and records[e.name].pieces
    )
    counts["decomposable"] = _tally(e.is_parametric for e in nontrivial if records[e.name].decomposable)
    counts["decomposable_non_isomorphic"] = sum(1 for g in groups if g["decomposable"])
    counts["indecomposable_pieces"] = {
        "count": len(piece_flags),
        "parametric": len({e.name for p, e in piece_flags if e.is_parametric}),
    }
    hist = {}
    for d in sorted({p.dim for p, _ in piece_flags}):
        owners = [(p, e) for p, e in piece_flags if p.dim == d]
        hist[str(d)] = {"count": len(owners), "parametric": len({e.name for p, e in owners if e.is_parametric})}
    counts["dimension_histogram"] = hist
    by_class, distinct, removed = {}, {}, {}
    for cls in ("nilpotent", "solvable", "non-solvable"):
        owners = [(p, e) for p, e in piece_flags if p.cls == cls]
        by_class[cls] = {"count": len(owners), "parametric": len({e.name for p, e in owners if e.is_parametric})}
        keys = [k for k in piece_groups if k[1] == cls]
        distinct[cls] = {
            "count": len(keys),
            "parametric": sum(1 for k in keys if all(e.is_parametric for e in piece_groups[k])),
        }
        removed[cls] = {
            "count": by_class[cls]["count"] - distinct[cls]["count"],
            "parametric": by_class[cls]["parametric"] - distinct[cls]["parametric"],
        }
    counts["pieces_by_class"] = by_class
    counts["distinct_by_class"] = distinct
    counts["isomorphic_by_class"] = removed
    nonsolvable = [p for p, _ in piece_flags if p.cls == "non-solvable"]
    counts["levi_nontrivial"] = sum(1 for p in nonsolvable if p.radical_dim)
    counts["levi_abelian_radical"] = sum(
        1 for p in nonsolvable if p.radical_dim and p.radical_dim == p.nilradical_dim and _radical_abelian(p)
    )
    kinds: dict = {}
    for g in groups:
        kinds[g["type"]] = kinds.get(g["type"], 0) + 1
    counts["types"] = dict(sorted(kinds.items()))
    return counts


def _radical_abelian(p: PieceRecord) -> bool:
    # the radical is abelian exactly when its series reads (r0)(r0)(r)
    return p.nilradical_series is not None and p.nilradical_series.startswith(f"({p.radical_dim}0)")


CLASS_COLUMNS = (
    ("solvable", False),
    ("solvable", True),
    ("nilpotent", False),
    ("nilpotent", True),
    ("non-solvable", False),
    ("non-solvable", True),
)


def _class_counts(groups) -> dict:
    """Counts of non-trivial classes by dimension of the non-abelian part,
    class and (in)decomposability."""
    grid = {}
    for d in range(3, 9):
        row = {}
        for cls, dec in CLASS_COLUMNS:
            row[f"{cls}/{'dec' if dec else 'indec'}"] = sum(
                1
                for g in groups
                if not g["trivial"] and g["nonabelian_dim"] == d and g["class"] == cls and g["decomposable"] == dec
            )
        row["total"] = sum(row.values())
        grid[str(d)] = row
    grid["total"] = sum(r["total"] for r in grid.values())
    return grid

"""Contraction matrices of the Gell-Mann graded sl(3,C) and their equations.

A contraction matrix assigns a scalar to every relevant unordered pair of
grading indices.  The contracted bracket is ``[x, y]_eps = eps_ij [x, y]``
for ``x`` in ``L_i`` and ``y`` in ``L_j``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .exactnum.field import (
    ONE,
    FieldScalar,
    ScalarExpr,
    ScalarSyntaxError,
    UnboundParameter,
    as_scalar,
    format_scalar,
)
from .exactnum.intlattice import integer_left_kernel, power_product, solve_multiplicative
from .exactnum.linalg import lower, rref
from .exactnum.lp import feasible_point
from .grading import (
    INDICES,
    MATRIX_ORDER,
    SymmetryElement,
    canonical,
    pair_tag,
    relevant_pairs,
    symmetry_group,
    to_int,
    to_triple,
    triplets_u,
)
from .liealg import LieAlgebra, sl3_gellmann

__all__ = [
    "ContractionMatrix",
    "CatalogEntry",
    "CatalogFormatError",
    "NotASolution",
    "load_catalog",
    "catalog_by_name",
    "REFERENCE_BINDINGS",
    "Equation",
    "generate_full_system",
    "reduced_system",
    "satisfies_system",
    "verify_solution",
    "check_two_term",
    "two_term_chains",
    "two_term_equation_count",
    "contract",
    "normalization_matrix",
    "exponent_matrix",
    "Equivalent",
    "NotEquivalent",
    "equivalent",
    "Identity",
    "second_order_identities",
    "Continuous",
    "Discrete",
    "NotGIW",
    "classify_continuity",
    "support_census",
]

REFERENCE_BINDINGS = {"a": 2, "b": 3, "c": 5, "d": 7, "e": 11, "f": 13}


class NotASolution(ValueError):
    pass


class CatalogFormatError(ValueError):
    pass


def _pair(p) -> tuple[int, int]:
    return canonical(p)


# ---------------------------------------------------------------- matrices


class ContractionMatrix:
    """Scalar values on the 21 relevant pairs (absent pairs are zero)."""

    __slots__ = ("values", "name")

    def __init__(self, values: Mapping | None = None, name: str | None = None):
        rel = set(relevant_pairs())
        vals = {}
        for p, v in (values or {}).items():
            p = _pair(p)
            if p not in rel:
                if as_scalar(v):
                    raise ValueError(f"pair {p} is irrelevant and must be zero")
                continue
            v = as_scalar(v)
            if v:
                vals[p] = v
        self.values = vals
        self.name = name

    @classmethod
    def ones(cls, name: str | None = None) -> "ContractionMatrix":
        return cls({p: 1 for p in relevant_pairs()}, name=name)

    def __getitem__(self, pair):
        return self.values.get(_pair(pair), FieldScalar(0))

    def get(self, i: int, j: int) -> FieldScalar:
        return self.values.get(_pair((i, j)), FieldScalar(0))

    @property
    def support(self) -> frozenset:
        return frozenset(self.values)

    @property
    def nu(self) -> int:
        return len(relevant_pairs()) - len(self.values)

    def act(self, A: SymmetryElement) -> "ContractionMatrix":
        """The matrix with entries eps_{iA, jA}."""
        return ContractionMatrix(
            {p: self[(A.act(p[0]), A.act(p[1]))] for p in relevant_pairs()},
            name=self.name,
        )

    def normalized(self, a: Mapping | Sequence) -> "ContractionMatrix":
        """Entrywise product with the normalization matrix built from ``a``."""
        alpha = normalization_matrix(a)
        return ContractionMatrix({p: v * alpha[p] for p, v in self.values.items()}, name=self.name)

    def with_entry(self, pair, value) -> "ContractionMatrix":
        vals = dict(self.values)
        vals[_pair(pair)] = as_scalar(value)
        return ContractionMatrix(vals, name=self.name)

    def __eq__(self, other) -> bool:
        return isinstance(other, ContractionMatrix) and self.values == other.values

    def __hash__(self) -> int:
        return hash(frozenset(self.values.items()))

    def table(self) -> list[list[str]]:
        """7x7 text table in the conventional row order; '.' marks zeros."""
        rows = []
        for i in MATRIX_ORDER:
            row = []
            for j in MATRIX_ORDER:
                v = self.get(i, j) if i != j else FieldScalar(0)
                row.append(format_scalar(v) if v else ".")
            rows.append(row)
        return rows

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "nu": self.nu,
            "entries": [
                {"pair": [list(to_triple(p[0])), list(to_triple(p[1]))], "value": format_scalar(v)}
                for p, v in sorted(self.values.items())
            ],
        }

    def __repr__(self) -> str:
        return f"ContractionMatrix(name={self.name!r}, nu={self.nu})"


def normalization_matrix(a: Mapping | Sequence) -> dict:
    """alpha_ij = a_i a_j / a_(i+j) on relevant pairs; ``a`` indexed by 1..7."""
    if not isinstance(a, Mapping):
        a = {i: a[i - 1] for i in INDICES}
    a = {to_int(k): as_scalar(v) for k, v in a.items()}
    if any(not a[i] for i in INDICES):
        raise ValueError("normalization entries must be nonzero")
    return {p: a[p[0]] * a[p[1]] / a[p[0] ^ p[1]] for p in relevant_pairs()}


@dataclass
class CatalogEntry:
    """One representative solution with symbolic entries."""

    name: str
    nu: int
    marks: list
    exprs: dict
    params: tuple = ()
    special_bindings: dict = field(default_factory=dict)
    excluded_values: dict = field(default_factory=dict)

    @property
    def is_parametric(self) -> bool:
        return bool(self.params)

    @property
    def continuity_mark(self) -> str:
        return next(m for m in self.marks if m in ("C", "D", "C*", "C+"))

    @property
    def two_term_mark(self) -> str | None:
        return next((m for m in self.marks if m in ("V", "W", "Vbar", "Wbar")), None)

    def bind(self, bindings: Mapping | None = None) -> ContractionMatrix:
        bindings = {k: as_scalar(v) for k, v in (bindings or {}).items()}
        for p in self.params:
            if p not in bindings:
                raise UnboundParameter(p)
            if not bindings[p]:
                raise ValueError(f"parameter {p} must be nonzero")
        vals = {pair: e.evaluate(bindings) for pair, e in self.exprs.items()}
        return ContractionMatrix(vals, name=self.name)

    def reference(self) -> ContractionMatrix:
        return self.bind({p: REFERENCE_BINDINGS[p] for p in self.params})

    def special(self) -> ContractionMatrix:
        return self.bind({p: ScalarExpr(v).evaluate() for p, v in self.special_bindings.items()})

    def to_json(self) -> dict:
        out = {"name": self.name, "nu": self.nu, "marks": list(self.marks)}
        if self.params:
            out["params"] = list(self.params)
        if self.special_bindings:
            out["special_bindings"] = dict(self.special_bindings)
        if self.excluded_values:
            out["excluded_values"] = dict(self.excluded_values)
        out["entries"] = [
            {"pair": [list(to_triple(p[0])), list(to_triple(p[1]))], "value": e.text}
            for p, e in sorted(self.exprs.items())
        ]
        return out


def _locate(text: str, needle: str) -> tuple[int, int]:
    pos = text.find(needle)
    if pos < 0:
        return 0, 0
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_catalog(text: str) -> list[CatalogEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict):
        data = [data]
    rel = set(relevant_pairs())
    out = []
    for rec in data:
        try:
            name = rec["name"]
            exprs = {}
            for ent in rec["entries"]:
                pair = _pair(tuple(to_int(t) for t in ent["pair"]))
                if pair not in rel:
                    line, col = _locate(text, json.dumps(ent["pair"]))
                    raise CatalogFormatError(f"line {line}, column {col}: pair {ent['pair']} of {name} is not relevant")
                try:
                    exprs[pair] = ScalarExpr(str(ent["value"]))
                except ScalarSyntaxError as exc:
                    line, col = _locate(text, json.dumps(ent["value"]))
                    raise CatalogFormatError(
                        f"line {line}, column {col + 1 + exc.offset}: bad scalar {ent['value']!r} in {name}"
                    ) from exc
            params = tuple(sorted(set().union(*(e.params for e in exprs.values())) if exprs else ()))
            out.append(
                CatalogEntry(
                    name=name,
                    nu=int(rec.get("nu", len(rel) - len(exprs))),
                    marks=list(rec.get("marks", [])),
                    exprs=exprs,
                    params=params,
                    special_bindings=dict(rec.get("special_bindings", {})),
                    excluded_values=dict(rec.get("excluded_values", {})),
                )
            )
        except KeyError as exc:
            line, col = _locate(text, json.dumps(rec.get("name", "")) if isinstance(rec, dict) else "")
            raise CatalogFormatError(f"line {line}, column {col}: missing field {exc}") from exc
    return out


@lru_cache(maxsize=None)
def _shipped_catalog() -> tuple:
    text = resources.files("gradcontract.data").joinpath("solutions_a1.json").read_text()
    return tuple(parse_catalog(text))


def load_catalog(path: str | None = None) -> list[CatalogEntry]:
    if path is None:
        return list(_shipped_catalog())
    with open(path) as fh:
        return parse_catalog(fh.read())


def catalog_by_name(name: str, path: str | None = None) -> CatalogEntry:
    for e in load_catalog(path):
        if e.name == name:
            return e
    raise KeyError(name)


# ---------------------------------------------------------------- equations


@dataclass(frozen=True)
class Equation:
    """A homogeneous quadratic relation sum_m coeff_m * eps_p * eps_q = 0.

    ``terms`` maps a monomial (sorted pair of index pairs) to its coefficient.
    """

    label: tuple
    terms: tuple  # tuple of (monomial, coefficient)

    def evaluate(self, eps: ContractionMatrix) -> FieldScalar:
        total = FieldScalar(0)
        for (p, q), c in self.terms:
            total = total + c * eps[p] * eps[q]
        return total

    @property
    def size(self) -> int:
        return len(self.terms)

    def act(self, A: SymmetryElement) -> "Equation":
        terms = {}
        for (p, q), c in self.terms:
            m = _monomial(_pair((A.act(p[0]), A.act(p[1]))), _pair((A.act(q[0]), A.act(q[1]))))
            terms[m] = terms.get(m, 0) + c
        label = tuple(canonical(A.act(i) for i in self.label))
        return _make_equation(label, terms) or Equation(label, ())


def _monomial(p, q) -> tuple:
    return tuple(sorted((p, q)))


def _make_equation(label, terms: Mapping) -> Equation | None:
    items = [(m, lower(c)) for m, c in terms.items() if c]
    if not items:
        return None
    items.sort()
    lead = items[0][1]
    # normalize so the first coefficient is positive (rational case) or one
    if isinstance(lead, Fraction):
        scale = 1 / abs(lead)
        items = [(m, c * scale) for m, c in items]
    return Equation(tuple(label), tuple(items))


def _positions(i: int) -> tuple:
    from .liealg import GELLMANN_ASSIGNMENT

    return GELLMANN_ASSIGNMENT[i]


def _basis(n: int, k: int) -> list:
    v = [Fraction(0)] * n
    v[k] = Fraction(1)
    return v


@lru_cache(maxsize=None)
def generate_full_system() -> tuple[Equation, ...]:
    """Scalar equations of the Jacobi condition, grouped by triplet.

    For each unordered triplet and each choice of basis vectors of the
    three grading subspaces, every component of the cyclic sum gives one
    quadratic equation in the contraction parameters.  Duplicates (up to
    scaling) within a triplet are dropped; triplets whose equations all
    vanish identically yield a single empty equation marked trivial.
    """
    L = sl3_gellmann().algebra
    out = []
    for trip in triplets_u():
        seen = set()
        found = False
        i, j, k = trip
        for xi in _positions(i):
            for xj in _positions(j):
                for xk in _positions(k):
                    comps: dict = {}
                    for (a, pa), (b, pb), (c, pc) in (
                        ((i, xi), (j, xj), (k, xk)),
                        ((j, xj), (k, xk), (i, xi)),
                        ((k, xk), (i, xi), (j, xj)),
                    ):
                        # eps_bc eps_{a, b+c} [x_a, [x_b, x_c]]
                        inner = L.bracket(_basis(8, pb), _basis(8, pc))
                        if not any(inner):
                            continue
                        outer = L.bracket(_basis(8, pa), inner)
                        if not any(outer):
                            continue
                        mono = _monomial(_pair((b, c)), _pair((a, b ^ c)))
                        for comp, v in enumerate(outer):
                            if v:
                                comps.setdefault(comp, {})
                                comps[comp][mono] = comps[comp].get(mono, 0) + v
                    for comp, terms in comps.items():
                        eq = _make_equation(trip, terms)
                        if eq is not None and eq.terms not in seen:
                            seen.add(eq.terms)
                            out.append(eq)
                            found = True
        if not found:
            out.append(Equation(trip, ()))
    return tuple(out)


def _eq_vector(eq: Equation, monos: dict) -> dict:
    return {monos[m]: c for m, c in eq.terms}


def _independent(eqs: Sequence[Equation]) -> list[Equation]:
    """Maximal linearly independent subset, monomials as formal variables."""
    monos: dict = {}
    for e in eqs:
        for m, _ in e.terms:
            monos.setdefault(m, len(monos))
    chosen = []
    rows = []
    r = 0
    for e in eqs:
        trial = rows + [_eq_vector(e, monos)]
        red, piv = rref(trial)
        if len(piv) > r:
            rows = trial
            r = len(piv)
            chosen.append(e)
    return chosen


def _seed_equations() -> list[Equation]:
    p = _pair
    two_a = _make_equation((2, 4, 7), {_monomial(p((4, 5)), p((2, 7))): 1, _monomial(p((6, 7)), p((2, 4))): -1})
    two_b = _make_equation((1, 2, 4), {_monomial(p((1, 2)), p((3, 4))): 1, _monomial(p((1, 6)), p((2, 4))): -1})
    three = _make_equation(
        (2, 3, 4),
        {
            _monomial(p((1, 4)), p((2, 3))): 2,
            _monomial(p((2, 7)), p((3, 4))): -1,
            _monomial(p((3, 6)), p((2, 4))): -1,
        },
    )
    return [two_a, two_b, three]


@lru_cache(maxsize=None)
def reduced_system() -> tuple[Equation, ...]:
    """Orbits of three seed equations under G, reduced to an independent set:
    the two-term equations first, then the three-term ones."""
    two_term: list = []
    three_term: list = []
    for seed in _seed_equations():
        orb = []
        seen = set()
        for A in symmetry_group():
            e = seed.act(A)
            if e.terms not in seen:
                seen.add(e.terms)
                orb.append(e)
        (two_term if seed.size == 2 else three_term).extend(orb)
    two = _independent(two_term)
    three = _independent(three_term)
    return tuple(two + three)


def satisfies_system(eps: ContractionMatrix, system: Iterable[Equation]) -> bool:
    return all(not e.evaluate(eps) for e in system)


def contract(eps: ContractionMatrix, check: bool = True) -> LieAlgebra:
    """The contracted algebra on the graded basis of sl(3,C)."""
    g = sl3_gellmann()
    L = g.algebra
    br = {}
    for i, j, vec in L.nonzero_brackets():
        gi, gj = g.position_index[i], g.position_index[j]
        e = eps.get(gi, gj)
        if e:
            br[(i, j)] = [lower(v * e) for v in vec]
    out = LieAlgebra(8, br, name=f"G{eps.name[1:]}" if eps.name else None)
    if check and not out.satisfies_jacobi():
        raise NotASolution(f"{eps.name or 'matrix'} does not satisfy the contraction equations")
    return out


def verify_solution(eps: ContractionMatrix) -> bool:
    return contract(eps, check=False).satisfies_jacobi()


# ---------------------------------------------------------------- two-term systems

ZERO_INDEX = 0


def _chain_terms(i: int, j: int, k: int) -> list[tuple]:
    return [
        (_pair((j, k)), _pair((i, j ^ k))),
        (_pair((k, i)), _pair((j, k ^ i))),
        (_pair((i, j)), _pair((k, i ^ j))),
    ]


@lru_cache(maxsize=None)
def two_term_chains(variant: str) -> tuple:
    """Chains of terms that must be equal, one chain per index triplet.

    ``ropa``: indices from I; terms containing an irrelevant parameter are
    dropped from the chain.  ``extend``: indices from all of Z2^3; every term
    is kept and parameters outside the relevant set become unknowns.
    """
    rel = set(relevant_pairs())
    chains = []
    if variant == "ropa":
        for trip in triplets_u():
            terms = [t for t in _chain_terms(*trip) if t[0] in rel and t[1] in rel]
            if len(terms) >= 2:
                chains.append((trip, tuple(terms)))
    elif variant == "extend":
        for trip in itertools.combinations_with_replacement(range(8), 3):
            chains.append((trip, tuple(_chain_terms(*trip))))
    else:
        raise ValueError(f"unknown two-term variant {variant!r}")
    return tuple(chains)


def two_term_equation_count(variant: str) -> int:
    """Equalities in the chains, skipping chains whose terms coincide."""
    return sum(len(t) - 1 for _, t in two_term_chains(variant) if len(set(t)) > 1)


def check_two_term(eps: ContractionMatrix, variant: str) -> bool:
    if variant == "ropa":
        for _, terms in two_term_chains("ropa"):
            vals = [eps[p] * eps[q] for p, q in terms]
            if any(v != vals[0] for v in vals[1:]):
                return False
        return True
    return _extend_satisfiable(eps)


def _extend_unknowns() -> list:
    rel = set(relevant_pairs())
    return [p for p in itertools.combinations_with_replacement(range(8), 2) if p not in rel]


def _extend_satisfiable(eps: ContractionMatrix) -> bool:
    """Whether the unknown parameters (pairs outside the relevant set) admit
    values, zero allowed, that make every chain of the extended system hold.

    The zero pattern of the unknowns is searched depth first with unit
    propagation; each complete pattern leaves a multiplicative system for the
    nonzero unknowns.
    """
    unknowns = _extend_unknowns()
    uidx = {p: k for k, p in enumerate(unknowns)}
    rel = set(relevant_pairs())
    chains = []
    for _, terms in two_term_chains("extend"):
        reps = []
        for p, q in terms:
            coef = FieldScalar(1)
            us = []
            for r in (p, q):
                if r in rel:
                    coef = coef * eps[r]
                else:
                    us.append(uidx[r])
            reps.append((coef, tuple(us)))
        chains.append(reps)

    def status(term, zero):
        # 0: vanishes, 1: nonzero, None: undecided (with the open unknowns)
        coef, us = term
        if not coef or any(zero.get(u) is True for u in us):
            return 0, ()
        free = [u for u in us if u not in zero]
        return (None, free) if free else (1, ())

    def propagate(zero):
        zero = dict(zero)
        changed = True
        while changed:
            changed = False
            for reps in chains:
                st = [status(t, zero) for t in reps]
                known = {s for s, _ in st if s is not None}
                if len(known) == 2:
                    return None
                if not known:
                    continue
                want_zero = known.pop() == 0
                for s, free in st:
                    if s is not None:
                        continue
                    if len(set(free)) == 1:
                        zero[free[0]] = want_zero
                        changed = True
                    elif not want_zero:
                        for u in free:
                            zero[u] = False
                        changed = True
        return zero

    def multiplicative(zero):
        rows, rhs = [], []
        for reps in chains:
            live = []
            for coef, us in reps:
                if not coef or any(zero[u] for u in us):
                    continue
                e = [0] * len(unknowns)
                for u in us:
                    e[u] += 1
                live.append((coef, e))
            if not live:
                continue
            c0, e0 = live[0]
            for c, e in live[1:]:
                row = [x - y for x, y in zip(e, e0)]
                ratio = c0 / c
                if not any(row):
                    if ratio != ONE:
                        return False
                    continue
                rows.append(row)
                rhs.append(ratio)
        return not rows or solve_multiplicative(rows, rhs).solvable

    def search(zero):
        zero = propagate(zero)
        if zero is None:
            return False
        free = [u for u in range(len(unknowns)) if u not in zero]
        if not free:
            return multiplicative(zero)
        u = free[0]
        return search({**zero, u: False}) or search({**zero, u: True})

    return search({})


# ---------------------------------------------------------------- lattice


@lru_cache(maxsize=None)
def exponent_matrix() -> tuple:
    """Rows for relevant pairs (i, j): +1 at i and j, -1 at i + j."""
    rows = []
    for i, j in relevant_pairs():
        r = [0] * 7
        r[i - 1] += 1
        r[j - 1] += 1
        r[(i ^ j) - 1] -= 1
        rows.append(tuple(r))
    return tuple(rows)


def _rows_for(pairs: Sequence) -> list[list[int]]:
    em = dict(zip(relevant_pairs(), exponent_matrix()))
    return [list(em[p]) for p in pairs]


# ---------------------------------------------------------------- equivalence


@dataclass
class Equivalent:
    A: SymmetryElement
    a: list | None  # normalization vector a_1..a_7, or None when existence-only
    certificate: list | None = None

    def __bool__(self) -> bool:
        return True


@dataclass
class NotEquivalent:
    reason: str = ""

    def __bool__(self) -> bool:
        return False


def equivalent(eps1: ContractionMatrix, eps2: ContractionMatrix):
    """Decide eps1_ij = (a_i a_j / a_{i+j}) * eps2_{iA, jA} for some A and a."""
    for A in symmetry_group():
        moved = eps2.act(A)
        if moved.support != eps1.support:
            continue
        pairs = sorted(eps1.support)
        if not pairs:
            return Equivalent(A, [FieldScalar(1)] * 7)
        rows = _rows_for(pairs)
        ratios = [eps1[p] / moved[p] for p in pairs]
        res = solve_multiplicative(rows, ratios)
        if res.solvable:
            if res.witness is not None:
                return Equivalent(A, list(res.witness))
            return Equivalent(A, None, certificate=integer_left_kernel(rows))
    return NotEquivalent("no symmetry element admits a normalization")


# ---------------------------------------------------------------- identities


@dataclass(frozen=True)
class Identity:
    """prod_{p in lhs} eps_p = prod_{q in rhs} eps_q (pairs with multiplicity)."""

    lhs: tuple
    rhs: tuple

    def key(self) -> tuple:
        a, b = tuple(sorted(self.lhs)), tuple(sorted(self.rhs))
        return min((a, b), (b, a))

    def act(self, A: SymmetryElement) -> "Identity":
        f = lambda ps: tuple(sorted(_pair((A.act(p[0]), A.act(p[1]))) for p in ps))
        a, b = f(self.lhs), f(self.rhs)
        return Identity(*min((a, b), (b, a)))

    def sides(self, eps: ContractionMatrix) -> tuple:
        l = FieldScalar(1)
        for p in self.lhs:
            l = l * eps[p]
        r = FieldScalar(1)
        for q in self.rhs:
            r = r * eps[q]
        return l, r

    def holds(self, eps: ContractionMatrix) -> bool:
        l, r = self.sides(eps)
        return l == r

    def text(self) -> str:
        def side(ps):
            return "*".join(_pair_label(p) for p in ps)

        return f"{side(self.lhs)} = {side(self.rhs)}"


def _pair_label(p) -> str:
    tag = pair_tag(p)
    a, b = (to_triple(x) for x in p)
    return "eps" + tag + "(" + "".join(map(str, a)) + ")(" + "".join(map(str, b)) + ")"


@lru_cache(maxsize=None)
def _raw_weight_two_identities() -> tuple:
    pairs = relevant_pairs()
    em = dict(zip(pairs, exponent_matrix()))
    found = {}
    multis = list(itertools.combinations_with_replacement(pairs, 2))
    by_vec: dict = {}
    for m in multis:
        v = tuple(a + b for a, b in zip(em[m[0]], em[m[1]]))
        by_vec.setdefault(v, []).append(m)
    for v, group in by_vec.items():
        for x, y in itertools.combinations(group, 2):
            if set(x) & set(y):
                continue
            ident = Identity(*min((x, y), (y, x)))
            found[ident.key()] = ident
    return tuple(found[k] for k in sorted(found))


@lru_cache(maxsize=None)
def second_order_identities(include_unviolated: bool = False) -> tuple:
    """Weight-two identities partitioned into G-orbits.

    An identity counts only when some solution violates it, tested on every
    G-image of every shipped catalog matrix at the reference binding.  With
    ``include_unviolated`` every weight-two kernel relation is returned.
    """
    raw = _raw_weight_two_identities()
    if not include_unviolated:
        images = [
            e.reference().act(A) for e in load_catalog() for A in symmetry_group()
        ]
        raw = tuple(i for i in raw if any(not i.holds(m) for m in images))
    keys = {i.key(): i for i in raw}
    seen = set()
    out = []
    for k in sorted(keys):
        if k in seen:
            continue
        orb = sorted({keys[k].act(A).key() for A in symmetry_group()})
        seen.update(orb)
        out.append(tuple(keys[x] for x in orb))
    out.sort(key=lambda orb: -len(orb))
    return tuple(out)


# ---------------------------------------------------------------- continuity


@dataclass
class Continuous:
    exponents: list
    normalization: list = field(default_factory=list)

    kind = "Continuous"


@dataclass
class Discrete:
    violated: list  # kernel vector over the support pairs
    pairs: list
    lhs: object
    rhs: object
    identity: Identity | None = None

    kind = "Discrete"


@dataclass
class NotGIW:
    reason: str

    kind = "NotGIW"


def classify_continuity(eps: ContractionMatrix, check: bool = True):
    if check and not verify_solution(eps):
        raise NotASolution(f"{eps.name or 'matrix'} does not satisfy the contraction equations")
    pairs = sorted(eps.support)
    rel = relevant_pairs()
    if pairs:
        rows = _rows_for(pairs)
        vals = [eps[p] for p in pairs]
        res = solve_multiplicative(rows, vals)
        if not res.solvable:
            v = res.obstruction
            lhs = power_product([vals[k] for k in range(len(v)) if v[k] > 0], [v[k] for k in range(len(v)) if v[k] > 0])
            rhs = power_product([vals[k] for k in range(len(v)) if v[k] < 0], [-v[k] for k in range(len(v)) if v[k] < 0])
            return Discrete(list(v), pairs, lhs, rhs, _matching_identity(eps))
        witness = res.witness
    else:
        witness = None
    zeros = [p for p in rel if p not in eps.support]
    n = feasible_point(_rows_for(pairs), [0] * len(pairs), _rows_for(zeros), [1] * len(zeros), nvars=7)
    if n is None:
        return _zero_pattern_certificate(eps, zeros) or NotGIW(
            "values are consistent with a normalization but no power-law exponents exist"
        )
    den = 1
    for x in n:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in n]
    return Continuous(ints, list(witness) if witness else [])


def _zero_pattern_certificate(eps: ContractionMatrix, zeros: list):
    """Farkas dual of the exponent system: an integer relation y with y.M = 0,
    y >= 0 on the zero entries and positive somewhere there.  Read as an
    identity, its side holding the zeros vanishes while the other does not."""
    rel = list(relevant_pairs())
    em = exponent_matrix()
    eq_rows = [[em[r][c] for r in range(len(rel))] for c in range(7)]
    ge_rows, ge_rhs = [], []
    for r, p in enumerate(rel):
        if p in zeros:
            row = [0] * len(rel)
            row[r] = 1
            ge_rows.append(row)
            ge_rhs.append(0)
    ge_rows.append([1 if p in zeros else 0 for p in rel])
    ge_rhs.append(1)
    y = feasible_point(eq_rows, [0] * 7, ge_rows, ge_rhs, nvars=len(rel))
    if y is None:
        return None
    den = 1
    for x in y:
        den = den * x.denominator // math.gcd(den, x.denominator)
    v = [int(x * den) for x in y]
    lhs = power_product([eps[p] for p, k in zip(rel, v) if k > 0], [k for k in v if k > 0])
    rhs = power_product([eps[p] for p, k in zip(rel, v) if k < 0], [-k for k in v if k < 0])
    if lhs == rhs:
        return None
    return Discrete(v, rel, lhs, rhs, _matching_identity(eps))


def _matching_identity(eps: ContractionMatrix) -> Identity | None:
    """A violated second-order identity, preferring one with both sides nonzero."""
    violated = [i for orb in second_order_identities() for i in orb if not i.holds(eps)]
    for ident in violated:
        if all(ident.sides(eps)):
            return ident
    return violated[0] if violated else None


def replay_continuous(eps: ContractionMatrix, verdict: Continuous, t) -> dict:
    """alpha_ij(t) * eps-hat-normalisation: the matrix a_i a_j / a_(i+j) with
    a_i(t) = w_i t^{n_i}, evaluated at t, on every relevant pair."""
    t = as_scalar(t)
    n = verdict.exponents
    w = verdict.normalization or [FieldScalar(1)] * 7
    out = {}
    for p in relevant_pairs():
        i, j = p
        k = i ^ j
        e = n[i - 1] + n[j - 1] - n[k - 1]
        out[p] = w[i - 1] * w[j - 1] / w[k - 1] * t**e
    return out


# ---------------------------------------------------------------- census


def canonical_support(support: Iterable) -> tuple:
    support = [tuple(p) for p in support]
    best = None
    for A in symmetry_group():
        img = tuple(sorted(_pair((A.act(p[0]), A.act(p[1]))) for p in support))
        if best is None or img < best:
            best = img
    return best


def support_census(entries: Sequence[CatalogEntry] | None = None) -> dict:
    entries = entries if entries is not None else load_catalog()
    hist: dict = {}
    groups: dict = {}
    for e in entries:
        eps = e.reference()
        hist[eps.nu] = hist.get(eps.nu, 0) + 1
        groups.setdefault(canonical_support(eps.support), []).append(e.name)
    shared = [names for names in groups.values() if len(names) > 1]
    return {
        "total": len(entries),
        "nu_distribution": dict(sorted(hist.items())),
        "distinct_supports": len(groups),
        "shared_supports": shared,
    }

"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Mapping, Sequence

from .field import ScalarSyntaxError, format_scalar, parse_scalar
from .linalg import lower, rank

__all__ = ["MultiPoly", "PolyDivisionError", "monomials", "parse_poly", "generic_rank", "symbolic_rank"]


class PolyDivisionError(ArithmeticError):
    pass


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple, object] = {}
        if terms:
            for mono, c in terms.items():
                c = lower(c)
                if c:
                    self.terms[tuple(mono)] = c

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "MultiPoly":
        mono = [0] * nvars
        mono[k] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        out = cls(n)
        for k, c in enumerate(coeffs):
            if c:
                mono = [0] * n
                mono[k] = 1
                out.terms[tuple(mono)] = lower(c)
        return out

    def copy(self) -> "MultiPoly":
        p = MultiPoly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return not other
        return self.terms == {(0,) * self.nvars: lower(other)}

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        p = MultiPoly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly(self.nvars)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = lower(other)
            p = MultiPoly(self.nvars)
            if other:
                p.terms = {m: c * other for m, c in self.terms.items()}
            return p
        out: dict[tuple, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        p = MultiPoly(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading(self) -> tuple[tuple, object]:
        # graded lexicographic order
        m = max(self.terms, key=lambda t: (sum(t), t))
        return m, self.terms[m]

    def derivative(self, k: int) -> "MultiPoly":
        out = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                mm = list(m)
                mm[k] = e - 1
                out[tuple(mm)] = c * e
        return MultiPoly(self.nvars, out)

    def evaluate(self, point: Sequence):
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x**e
            total = total + v
        return lower(total)

    def substitute(self, values: Mapping[int, object]) -> "MultiPoly":
        """Replace some variables by scalars."""
        out: dict[tuple, object] = {}
        for m, c in self.terms.items():
            v = c
            mm = list(m)
            for k, x in values.items():
                if mm[k]:
                    v = v * lower(x) ** mm[k]
                    mm[k] = 0
            if not v:
                continue
            t = tuple(mm)
            s = out.get(t, 0) + v
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        p = MultiPoly(self.nvars)
        p.terms = out
        return p

    def variables(self) -> set[int]:
        return {k for m in self.terms for k, e in enumerate(m) if e}

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient when ``other`` divides ``self`` exactly; raises otherwise."""
        if not other:
            raise PolyDivisionError("division by zero polynomial")
        lm, lc = other.leading()
        rem = self.copy()
        quo = MultiPoly(self.nvars)
        while rem:
            m, c = rem.leading()
            diff = tuple(a - b for a, b in zip(m, lm))
            if any(d < 0 for d in diff):
                raise PolyDivisionError("polynomial division is not exact")
            t = MultiPoly(self.nvars, {diff: c / lc})
            quo = quo + t
            rem = rem - t * other
        return quo

    def format(self, names: Sequence[str] | None = None) -> str:
        """Readable text such as ``e1*e5 - e2*e4``."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"e{k + 1}" for k in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, key=lambda t: (-sum(t), [-e for e in t])):
            c = self.terms[m]
            factors = []
            for k, e in enumerate(m):
                if e == 1:
                    factors.append(names[k])
                elif e > 1:
                    factors.append(f"{names[k]}^{e}")
            mono = "*".join(factors)
            ctext = format_scalar(c)
            neg = False
            if isinstance(c, Fraction) and c < 0:
                neg = True
                ctext = format_scalar(-c)
            if not mono:
                body = ctext
            elif ctext == "1":
                body = mono
            elif " " in ctext:
                body = f"({ctext})*{mono}"
            else:
                body = f"{ctext}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.format()!r})"

    def __str__(self) -> str:
        return self.format()

_TOKEN = re.compile(r"\s*(?:(e\d+)|(\d+)|(sqrt2|sqrt3|i\b)|(.))")


def parse_poly(text: str, nvars: int) -> MultiPoly:
    """Read a polynomial in e1..e{nvars}, e.g. ``e1*(e1*e5-e2*e7)+e2^2*e4``.

    Coefficients use the scalar grammar; ``^`` takes a non-negative integer
    exponent and ``/`` divides by a scalar.
    """
    tokens = []
    for m in _TOKEN.finditer(text.strip()):
        var, num, const, op = m.groups()
        if var:
            k = int(var[1:]) - 1
            if not 0 <= k < nvars:
                raise ScalarSyntaxError(f"variable {var} out of range", text, m.start())
            tokens.append(("poly", MultiPoly.variable(nvars, k), m.start()))
        elif num or const:
            tokens.append(("poly", MultiPoly.constant(nvars, parse_scalar(num or const)), m.start()))
        else:
            tokens.append(("op", op, m.start()))
    pos = 0

    def peek():
        return tokens[pos][1] if pos < len(tokens) and tokens[pos][0] == "op" else None

    def fail(msg):
        where = tokens[pos][2] if pos < len(tokens) else len(text)
        raise ScalarSyntaxError(msg, text, where)

    def expr():
        nonlocal pos
        node = term()
        while peek() in ("+", "-"):
            op = peek()
            pos += 1
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        nonlocal pos
        node = power()
        while peek() in ("*", "/"):
            op = peek()
            pos += 1
            rhs = power()
            if op == "*":
                node = node * rhs
            else:
                if not rhs or rhs.degree:
                    fail("can only divide by a nonzero scalar")
                node = node * (1 / rhs.terms[(0,) * nvars])
        return node

    def power():
        nonlocal pos
        node = atom()
        if peek() == "^":
            pos += 1
            if pos >= len(tokens) or tokens[pos][0] != "poly" or tokens[pos][1].degree:
                fail("expected an integer exponent")
            exp = tokens[pos][1].terms.get((0,) * nvars, 0)
            if exp != int(exp) or exp < 0:
                fail("expected an integer exponent")
            pos += 1
            node = node ** int(exp)
        return node

    def atom():
        nonlocal pos
        if pos >= len(tokens):
            fail("unexpected end of input")
        kind, value, _ = tokens[pos]
        if kind == "poly":
            pos += 1
            return value
        if value == "-":
            pos += 1
            return -power()
        if value == "(":
            pos += 1
            node = expr()
            if peek() != ")":
                fail("expected ')'")
            pos += 1
            return node
        fail(f"unexpected {value!r}")

    out = expr()
    if pos != len(tokens):
        fail(f"unexpected {tokens[pos][1]!r}")
    return out


def monomials(nvars: int, degree: int) -> list[tuple]:
    """All exponent tuples of total degree ``degree``, in lexicographic order."""
    out = []

    def rec(k, left, acc):
        if k == nvars - 1:
            out.append(tuple(acc + [left]))
            return
        for e in range(left, -1, -1):
            rec(k + 1, left - e, acc + [e])

    if nvars == 0:
        return [()] if degree == 0 else []
    rec(0, degree, [])
    return out



def generic_rank(
    matrix: Sequence[Sequence[MultiPoly]],
    samples: int = 5,
    rng: random.Random | None = None,
    bound: int = 10**4,
    certify: bool = False,
) -> int:
    """Largest exact rank of ``matrix`` at random integer points.

    Points are drawn uniformly from [-bound, bound].  With ``certify`` the
    result is checked against fraction-free elimination over the polynomial
    ring and the symbolic rank is returned.
    """
    rng = rng or random.Random(0)
    rows = len(matrix)
    if rows == 0:
        return 0
    nvars = next((e.nvars for row in matrix for e in row if isinstance(e, MultiPoly)), 0)
    best = 0
    for _ in range(samples):
        point = [rng.randint(-bound, bound) for _ in range(nvars)]
        vals = [[e.evaluate(point) if isinstance(e, MultiPoly) else lower(e) for e in row] for row in matrix]
        best = max(best, rank(vals))
    skew = all(matrix[i][j] == -matrix[j][i] for i in range(rows) for j in range(len(matrix[i])) if j < rows)
    if skew and len(matrix[0]) == rows:
        assert best % 2 == 0, "rank of a skew-symmetric matrix must be even"
    if certify:
        exact = symbolic_rank(matrix)
        assert best <= exact
        return exact
    return best


def symbolic_rank(matrix: Sequence[Sequence[MultiPoly]]) -> int:
    """Rank over the field of rational functions by Bareiss elimination."""
    m = [[e if isinstance(e, MultiPoly) else None for e in row] for row in matrix]
    nvars = next((e.nvars for row in m for e in row if e is not None), 0)
    m = [
        [e if e is not None else MultiPoly.constant(nvars, x) for e, x in zip(row, orig)]
        for row, orig in zip(m, matrix)
    ]
    rows, cols = len(m), len(m[0]) if m else 0
    prev = MultiPoly.constant(nvars, 1)
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[k][j] = (m[r][c] * m[k][j] - m[k][c] * m[r][j]).exact_div(prev)
            m[k][c] = MultiPoly(nvars)
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r

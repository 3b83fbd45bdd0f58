"""Exact arithmetic in the number field K = Q(i, sqrt2, sqrt3).

Elements are stored by their 8 rational coordinates in the basis
``1, sqrt2, sqrt3, sqrt6, i, i*sqrt2, i*sqrt3, i*sqrt6``.  Basis index ``p``
encodes the generators as bits: bit 0 = sqrt2, bit 1 = sqrt3, bit 2 = i,
so the product of two basis elements is basis ``p ^ q`` times a rational
factor.

Rational values are kept in a compact one-coordinate form, which keeps the
common case (every structure constant of the Gell-Mann algebra is an
integer) close to plain :class:`fractions.Fraction` speed.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "FieldScalar",
    "DivisionByZero",
    "ScalarSyntaxError",
    "UnboundParameter",
    "ScalarExpr",
    "parse_scalar",
    "parse_expr",
    "format_scalar",
    "as_scalar",
    "sqrt_in_field",
    "nth_root_in_field",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "SQRT3",
]

BASIS_NAMES = ("1", "sqrt2", "sqrt3", "sqrt2*sqrt3", "i", "i*sqrt2", "i*sqrt3", "i*sqrt2*sqrt3")

_F0 = Fraction(0)
_F1 = Fraction(1)


def _basis_factor(p: int, q: int) -> int:
    f = 1
    common = p & q
    if common & 1:
        f *= 2
    if common & 2:
        f *= 3
    if common & 4:
        f = -f
    return f


_MUL = [[(p ^ q, _basis_factor(p, q)) for q in range(8)] for p in range(8)]


class DivisionByZero(ZeroDivisionError):
    pass


class ScalarSyntaxError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


class UnboundParameter(KeyError):
    pass


Number = Union[int, Fraction, "FieldScalar"]


class FieldScalar:
    """An immutable element of Q(i, sqrt2, sqrt3)."""

    __slots__ = ("_c",)

    def __init__(self, coords: Union[Number, Iterable] = 0):
        if isinstance(coords, FieldScalar):
            self._c = coords._c
            return
        if isinstance(coords, (int, Rational)):
            self._c = (Fraction(coords),)
            return
        c = tuple(Fraction(x) for x in coords)
        if len(c) != 8:
            raise ValueError("FieldScalar needs 8 rational coordinates")
        self._c = _compact(c)

    @classmethod
    def _raw(cls, c: tuple) -> "FieldScalar":
        obj = cls.__new__(cls)
        obj._c = c
        return obj

    @property
    def coords(self) -> tuple[Fraction, ...]:
        c = self._c
        if len(c) == 1:
            return c + (_F0,) * 7
        return c

    @property
    def is_rational(self) -> bool:
        return len(self._c) == 1

    def to_fraction(self) -> Fraction:
        if len(self._c) != 1:
            raise ValueError(f"{self} is not rational")
        return self._c[0]

    def __bool__(self) -> bool:
        return any(self._c)

    def __hash__(self) -> int:
        if len(self._c) == 1:
            return hash(self._c[0])
        return hash(self._c)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __repr__(self) -> str:
        return f"FieldScalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)

    def __neg__(self) -> "FieldScalar":
        return FieldScalar._raw(tuple(-x for x in self._c))

    def __pos__(self) -> "FieldScalar":
        return self

    def __add__(self, other) -> "FieldScalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) == 1 and len(b) == 1:
            return FieldScalar._raw((a[0] + b[0],))
        a, b = _full(a), _full(b)
        return FieldScalar._raw(_compact(tuple(x + y for x, y in zip(a, b))))

    __radd__ = __add__

    def __sub__(self, other) -> "FieldScalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "FieldScalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "FieldScalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) == 1:
            x = a[0]
            return FieldScalar._raw(tuple(x * y for y in b))
        if len(b) == 1:
            y = b[0]
            return FieldScalar._raw(tuple(x * y for x in a))
        out = [_F0] * 8
        for p in range(8):
            x = a[p]
            if not x:
                continue
            row = _MUL[p]
            for q in range(8):
                y = b[q]
                if y:
                    r, f = row[q]
                    out[r] += f * x * y
        return FieldScalar._raw(_compact(tuple(out)))

    __rmul__ = __mul__

    def conjugate(self, mask: int) -> "FieldScalar":
        """Galois conjugate flipping the signs of the generators in ``mask``."""
        c = self._c
        if len(c) == 1:
            return self
        return FieldScalar._raw(
            tuple(-x if bin(p & mask).count("1") % 2 else x for p, x in enumerate(c))
        )

    def inverse(self) -> "FieldScalar":
        c = self._c
        if len(c) == 1:
            if not c[0]:
                raise DivisionByZero("inverse of zero")
            return FieldScalar._raw((1 / c[0],))
        if not any(c):
            raise DivisionByZero("inverse of zero")
        # norm down the tower Q(i,r2,r3) -> Q(r2,r3) -> Q(r2) -> Q
        c_i = self.conjugate(4)
        x1 = self * c_i
        c_3 = x1.conjugate(2)
        x2 = x1 * c_3
        c_2 = x2.conjugate(1)
        x3 = x2 * c_2
        return c_i * c_3 * c_2 * (1 / x3.to_fraction())

    def __truediv__(self, other) -> "FieldScalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "FieldScalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "FieldScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def _compact(c: tuple) -> tuple:
    if not any(c[1:]):
        return (c[0],)
    return c


def _full(c: tuple) -> tuple:
    if len(c) == 1:
        return c + (_F0,) * 7
    return c


def _coerce(x) -> FieldScalar | None:
    if isinstance(x, FieldScalar):
        return x
    if isinstance(x, (int, Rational)):
        return FieldScalar._raw((Fraction(x),))
    return None


def as_scalar(x) -> FieldScalar:
    if isinstance(x, FieldScalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot convert {type(x).__name__} to FieldScalar")
    return out


ZERO = FieldScalar(0)
ONE = FieldScalar(1)
I = FieldScalar([0, 0, 0, 0, 1, 0, 0, 0])
SQRT2 = FieldScalar([0, 1, 0, 0, 0, 0, 0, 0])
SQRT3 = FieldScalar([0, 0, 1, 0, 0, 0, 0, 0])


# ---------------------------------------------------------------- roots


def _rational_root(q: Fraction, n: int) -> Fraction | None:
    if q < 0:
        if n % 2 == 0:
            return None
        r = _rational_root(-q, n)
        return None if r is None else -r
    num = _int_root(q.numerator, n)
    den = _int_root(q.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(m: int, n: int) -> int | None:
    if m < 2:
        return m
    lo, hi = 0, 1 << (m.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**n == m else None


def sqrt_in_field(x) -> FieldScalar | None:
    """A square root of ``x`` in K, or None if ``x`` is not a square in K."""
    x = as_scalar(x)
    if not x:
        return ZERO
    c = x.coords
    if x.is_rational:
        r = _rational_root(c[0], 2)
        if r is not None:
            return FieldScalar(r)
    return _sqrt_level(c, 3)


_LEVEL_GEN = {1: 2, 2: 3, 3: -1}


def _sqrt_level(c: tuple, level: int) -> FieldScalar | None:
    # square root of the element with coordinates c[:2**level] inside the
    # subfield generated by the first `level` generators
    if level == 0:
        r = _rational_root(c[0], 2)
        return None if r is None else FieldScalar(r)
    half = 1 << (level - 1)
    d = _LEVEL_GEN[level]
    g = FieldScalar([1 if p == half else 0 for p in range(8)])
    alpha = _lower(c[:half])
    beta = _lower(c[half : 2 * half])
    target = alpha + beta * g
    candidates = []
    if not beta:
        u = _sqrt_level(alpha.coords, level - 1)
        if u is not None:
            candidates.append(u)
        v = _sqrt_level((alpha / d).coords, level - 1)
        if v is not None:
            candidates.append(v * g)
    else:
        n = _sqrt_level((alpha * alpha - beta * beta * d).coords, level - 1)
        if n is not None:
            for sign in (1, -1):
                u = _sqrt_level(((alpha + sign * n) / 2).coords, level - 1)
                if u:
                    candidates.append(u + beta / (2 * u) * g)
    for y in candidates:
        if y * y == target:
            return y
    return None


def _lower(part: tuple) -> FieldScalar:
    return FieldScalar(tuple(part) + (_F0,) * (8 - len(part)))


def nth_root_in_field(x: FieldScalar, n: int) -> FieldScalar | None:
    """An n-th root of ``x`` in K when one is found by factoring n into
    square roots and rational roots; None otherwise."""
    x = as_scalar(x)
    if n == 1:
        return x
    if x == ONE:
        return ONE
    if x.is_rational:
        r = _rational_root(x.to_fraction(), n)
        if r is not None:
            return FieldScalar(r)
    if n % 2 == 0:
        s = sqrt_in_field(x)
        if s is None:
            return None
        for cand in (s, -s):
            r = nth_root_in_field(cand, n // 2)
            if r is not None:
                return r
        return None
    return None


# ---------------------------------------------------------------- grammar


class _Node:
    __slots__ = ("kind", "value", "args")

    def __init__(self, kind: str, value=None, args=()):
        self.kind = kind
        self.value = value
        self.args = args


class _Parser:
    def __init__(self, text: str, allow_params: bool):
        self.text = text
        self.pos = 0
        self.allow_params = allow_params

    def error(self, msg: str):
        raise ScalarSyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> _Node:
        node = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return node

    def expr(self) -> _Node:
        node = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            node = _Node(op, args=(node, self.term()))
        return node

    def term(self) -> _Node:
        node = self.factor()
        while self.peek() in ("*", "/") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            node = _Node(op, args=(node, self.factor()))
        return node

    def factor(self) -> _Node:
        ch = self.peek()
        if not ch:
            self.error("unexpected end of input")
        if ch == "-":
            self.pos += 1
            return _Node("neg", args=(self.factor(),))
        if ch == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return node
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return _Node("num", Fraction(int(self.text[start : self.pos])))
        for word, value in (("sqrt2", SQRT2), ("sqrt3", SQRT3)):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                return _Node("num", value)
        if ch == "i" and not self.text[self.pos + 1 : self.pos + 2].isalnum():
            self.pos += 1
            return _Node("num", I)
        if ch in "abcdef" and not self.text[self.pos + 1 : self.pos + 2].isalnum():
            if not self.allow_params:
                self.error(f"parameter {ch!r} not allowed here")
            self.pos += 1
            return _Node("param", ch)
        self.error(f"unexpected {ch!r}")


def _eval(node: _Node, bindings: Mapping[str, FieldScalar]) -> FieldScalar:
    k = node.kind
    if k == "num":
        return as_scalar(node.value)
    if k == "param":
        if node.value not in bindings:
            raise UnboundParameter(node.value)
        return as_scalar(bindings[node.value])
    if k == "neg":
        return -_eval(node.args[0], bindings)
    a = _eval(node.args[0], bindings)
    b = _eval(node.args[1], bindings)
    if k == "+":
        return a + b
    if k == "-":
        return a - b
    if k == "*":
        return a * b
    if not b:
        raise DivisionByZero("division by zero in scalar expression")
    return a / b


def _params(node: _Node) -> set[str]:
    if node.kind == "param":
        return {node.value}
    out: set[str] = set()
    for a in node.args:
        out |= _params(a)
    return out


class ScalarExpr:
    """A scalar expression that may mention the parameters a..f."""

    __slots__ = ("text", "_node", "params")

    def __init__(self, text: str):
        self.text = text.strip()
        self._node = _Parser(self.text, allow_params=True).parse()
        self.params = frozenset(_params(self._node))

    def evaluate(self, bindings: Mapping[str, object] | None = None) -> FieldScalar:
        return _eval(self._node, bindings or {})

    def __repr__(self) -> str:
        return f"ScalarExpr({self.text!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarExpr) and self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)


def parse_expr(text: str) -> ScalarExpr:
    return ScalarExpr(text)


def parse_scalar(text: str) -> FieldScalar:
    return _eval(_Parser(text, allow_params=False).parse(), {})


def _format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical text; ``parse_scalar(format_scalar(x)) == x``."""
    x = as_scalar(x)
    parts: list[str] = []
    for p, q in enumerate(x.coords):
        if not q:
            continue
        neg = q < 0
        mag = -q if neg else q
        if p == 0:
            body = _format_rational(mag)
        elif mag == 1:
            body = BASIS_NAMES[p]
        else:
            body = f"{_format_rational(mag)}*{BASIS_NAMES[p]}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"

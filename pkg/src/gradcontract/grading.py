"""The index group Z2^3, its multisets, and the 24-element symmetry group.

Grading indices are handled as integers 1..7 whose binary digits are the
triple ``(i1, i2, i3)`` (so ``(0, 1, 1)`` is 3); addition of indices is XOR.
Public functions accept either form and report triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "INDICES",
    "CARTAN",
    "MATRIX_ORDER",
    "SymmetryElement",
    "to_int",
    "to_triple",
    "add",
    "symmetry_group",
    "identity_element",
    "act_index",
    "act_multiset",
    "canonical",
    "pairs_u",
    "triplets_u",
    "Orbit",
    "orbits",
    "relevant_pairs",
    "pair_tag",
    "orbit_report",
]

INDICES = tuple(range(1, 8))
CARTAN = 1  # (0,0,1), the index of the two-dimensional subspace
# row/column order used when printing contraction matrices
MATRIX_ORDER = (1, 7, 5, 3, 6, 2, 4)


def to_int(i) -> int:
    if isinstance(i, int):
        return i
    a, b, c = i
    return (int(a) << 2) | (int(b) << 1) | int(c)


def to_triple(i: int) -> tuple[int, int, int]:
    return ((i >> 2) & 1, (i >> 1) & 1, i & 1)


def add(i: int, j: int) -> int:
    return i ^ j


@dataclass(frozen=True)
class SymmetryElement:
    """The matrix [[a, b, e], [c, d, f], [0, 0, 1]] over Z2."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    @property
    def matrix(self) -> tuple:
        return ((self.a, self.b, self.e), (self.c, self.d, self.f), (0, 0, 1))

    def act(self, i: int) -> int:
        i1, i2, i3 = to_triple(i)
        j1 = (i1 * self.a + i2 * self.c) & 1
        j2 = (i1 * self.b + i2 * self.d) & 1
        j3 = (i1 * self.e + i2 * self.f + i3) & 1
        return (j1 << 2) | (j2 << 1) | j3

    def __mul__(self, other: "SymmetryElement") -> "SymmetryElement":
        m, n = self.matrix, other.matrix
        p = [[sum(m[r][k] * n[k][s] for k in range(3)) & 1 for s in range(3)] for r in range(3)]
        return SymmetryElement(p[0][0], p[0][1], p[1][0], p[1][1], p[0][2], p[1][2])

    def inverse(self) -> "SymmetryElement":
        for g in symmetry_group():
            if (self * g) == identity_element():
                return g
        raise AssertionError("group element without inverse")

    def __str__(self) -> str:
        return "[" + ",".join("".join(str(x) for x in row) for row in self.matrix) + "]"


@lru_cache(maxsize=None)
def symmetry_group() -> tuple[SymmetryElement, ...]:
    """All 24 elements, by brute force over the six free entries."""
    out = []
    for a, b, c, d, e, f in itertools.product((0, 1), repeat=6):
        if (a * d - b * c) % 2 == 1:
            out.append(SymmetryElement(a, b, c, d, e, f))
    return tuple(out)


def identity_element() -> SymmetryElement:
    return SymmetryElement(1, 0, 0, 1, 0, 0)


def act_index(i, A: SymmetryElement) -> int:
    return A.act(to_int(i))


def canonical(ms: Iterable) -> tuple[int, ...]:
    return tuple(sorted(to_int(i) for i in ms))


def act_multiset(ms: Sequence, A: SymmetryElement) -> tuple[int, ...]:
    return canonical(A.act(to_int(i)) for i in ms)


@lru_cache(maxsize=None)
def pairs_u() -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations_with_replacement(INDICES, 2))


@lru_cache(maxsize=None)
def triplets_u() -> tuple[tuple[int, int, int], ...]:
    return tuple(itertools.combinations_with_replacement(INDICES, 3))


@dataclass(frozen=True)
class Orbit:
    representative: tuple
    elements: tuple

    @property
    def size(self) -> int:
        return len(self.elements)


_DOMAINS = {
    "indices": lambda: tuple((i,) for i in INDICES),
    "pairs": pairs_u,
    "triplets": triplets_u,
}


@lru_cache(maxsize=None)
def orbits(domain: str) -> tuple[Orbit, ...]:
    """Orbit partition of ``indices``, ``pairs`` or ``triplets`` under G.

    Orbits are listed in the order of their minimal elements, and each
    representative is that minimal element.
    """
    if domain not in _DOMAINS:
        raise ValueError(f"unknown domain {domain!r}")
    items = _DOMAINS[domain]()
    seen: set = set()
    out = []
    for x in sorted(items):
        if x in seen:
            continue
        orb = sorted({act_multiset(x, A) for A in symmetry_group()})
        seen.update(orb)
        out.append(Orbit(orb[0], tuple(orb)))
    return tuple(out)


@lru_cache(maxsize=None)
def relevant_pairs() -> tuple[tuple[int, int], ...]:
    """Unordered index pairs whose grading subspaces have a nonzero bracket."""
    from .liealg import sl3_gellmann

    g = sl3_gellmann()
    out = []
    for i, j in pairs_u():
        if g.pair_bracket_nonzero(i, j):
            out.append((i, j))
    return tuple(out)


def pair_tag(pair) -> str:
    """'+' for pairs containing the Cartan index, '-' for pairs {x, x + Cartan},
    '' for the remaining relevant pairs."""
    i, j = canonical(pair)
    if i == CARTAN or j == CARTAN:
        return "+"
    if i ^ j == CARTAN:
        return "-"
    return ""


def orbit_report(domain: str) -> dict:
    orbs = orbits(domain)
    return {
        "domain": domain,
        "orbit_count": len(orbs),
        "orbits": [
            {
                "representative": [list(to_triple(i)) for i in o.representative],
                "size": o.size,
                "elements": [[list(to_triple(i)) for i in e] for e in o.elements],
            }
            for o in orbs
        ],
    }

import random
from fractions import Fraction

import pytest

from gradcontract import contraction as C
from gradcontract.identify import (
    DimensionMismatch,
    Found,
    NotFound,
    algebra_name,
    fingerprint,
    iso_search,
    iso_verify,
)
from gradcontract.liealg import LieAlgebra, abelian


def algebra(name):
    return C.contract(C.catalog_by_name(name).reference())


def identity(n):
    return [[Fraction(int(r == s)) for s in range(n)] for r in range(n)]


def test_algebra_name():
    assert algebra_name("e17_8") == "G17,8"


def test_fingerprint_abelian():
    rec = fingerprint(algebra("e21_1"))
    assert rec.match == "8A1"
    assert rec.k == 8 and rec.tau == 8


def test_fingerprint_decomposable():
    rec = fingerprint(algebra("e9_1"), random.Random(0))
    assert rec.k == 2
    assert rec.decomposable
    assert [p.dim for p in rec.pieces] == [3, 3]
    assert rec.match == "G'18,8 ⊕ G'18,8 ⊕ 2A1"


def test_fingerprint_heisenberg_plus_center():
    rec = fingerprint(algebra("e20_1"), random.Random(0))
    assert rec.match == "G'20,1 ⊕ 5A1"
    assert list(rec.pieces[0].six_tuple) == [6, 6, 3, 5, 3, 4]
    assert rec.pieces[0].tau == 1


def test_iso_verify():
    L = algebra("e17_8")
    assert iso_verify(L, L, identity(8))
    A31 = LieAlgebra.from_relations(3, "[e2,e3]=e1")
    D = [[Fraction(0)] * 3 for _ in range(3)]
    D[0][0], D[1][1], D[2][2] = 2, 2, 1
    # [2 e2, e3] = 2 e1 is the image of e1
    assert iso_verify(A31, A31, D)
    D[0][0] = 1
    assert not iso_verify(A31, A31, D)
    with pytest.raises(DimensionMismatch):
        iso_verify(A31, abelian(2), identity(2))


@pytest.mark.parametrize("a,b", [("e20_3", "e20_1"), ("e17_12", "e17_14"), ("e18_8", "e18_21")])
def test_iso_search_finds_known_pairs(a, b):
    L1, L2 = algebra(a), algebra(b)
    res = iso_search(L1, L2, budget=20000)
    assert isinstance(res, Found)
    assert iso_verify(L1, L2, res.witness)


def test_iso_search_invariant_mismatch():
    res = iso_search(algebra("e20_1"), algebra("e21_1"))
    assert isinstance(res, NotFound)
    assert not res.inconclusive
    assert res.certificate.startswith("invariant mismatch")
    assert not isinstance(iso_search(abelian(2), abelian(3)), Found)

import random
from fractions import Fraction

import pytest

from gradcontract import contraction as C
from gradcontract.liealg import (
    AlgebraFormatError,
    Decomposition,
    IndecomposableCertificate,
    LieAlgebra,
    NotSolvable,
    Subspace,
    abelian,
    center,
    decompose,
    derived_algebra,
    indecomposable_pieces,
    killing_form,
    nilradical,
    predicates,
    radical,
    series,
    sl3_gellmann,
    split_central,
)
from gradcontract.exactnum.linalg import rank

HEISENBERG = LieAlgebra.from_relations(3, "[e2,e3]=e1")
SL2 = LieAlgebra.from_relations(3, "[e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e1")


def test_gellmann_algebra():
    g = sl3_gellmann()
    L = g.algebra
    assert L.dim == 8
    assert L.satisfies_jacobi()
    assert g.grading_holds()
    assert predicates(L)["is_semisimple"]
    assert rank(killing_form(L)) == 8
    assert series(L).text() == "(8)(8)(0)"


def test_relations_parser():
    L = LieAlgebra.from_relations(4, "[e1,e4]=e1, [e2,e4]=(a+1)*e2 - 1/2 e3", {"a": 1})
    assert L.c(1, 3) == (0, 2, Fraction(-1, 2), 0)
    assert L.c(3, 0) == (-1, 0, 0, 0)
    with pytest.raises(AlgebraFormatError):
        LieAlgebra.from_relations(2, "[e1,e3]=e2")


def test_json_round_trip():
    L = C.contract(C.catalog_by_name("e17_8").reference())
    assert LieAlgebra.loads(L.dumps()) == L
    with pytest.raises(AlgebraFormatError):
        LieAlgebra.loads('{"dim": 2, "brackets": [{"i": 2, "j": 1, "coeffs": []}]}')
    with pytest.raises(AlgebraFormatError) as exc:
        LieAlgebra.loads('{"dim": 2,\n "brackets": [}')
    assert "line 2" in str(exc.value)


def test_series_and_predicates():
    assert series(HEISENBERG).text() == "(310)(310)(13)"
    p = predicates(HEISENBERG)
    assert p["is_nilpotent"] and p["is_solvable"] and not p["is_abelian"]
    assert series(abelian(4)).text() == "(40)(40)(4)"
    assert center(HEISENBERG).dim == 1
    assert derived_algebra(SL2).dim == 3


def test_radical_and_nilradical():
    assert radical(SL2).dim == 0
    with pytest.raises(NotSolvable):
        nilradical(SL2)
    assert nilradical(SL2, solvable_only=False).dim == 0
    # the 2-dim non-abelian algebra: nilradical is the derived line
    aff = LieAlgebra.from_relations(2, "[e1,e2]=e2")
    assert nilradical(aff).dim == 1
    both = SL2.direct_sum(aff)
    assert radical(both).dim == 2
    assert nilradical(both, solvable_only=False).dim == 1


def test_split_central():
    L = HEISENBERG.direct_sum(abelian(2))
    cs = split_central(L)
    assert cs.k == 2
    assert cs.prime.dim == 3
    assert series(cs.prime).text() == "(310)(310)(13)"


def test_decompose():
    L = SL2.direct_sum(SL2)
    res = decompose(L, random.Random(0))
    assert isinstance(res, Decomposition)
    assert sorted(p.dim for p, _ in res.ideals) == [3, 3]
    assert isinstance(decompose(SL2), IndecomposableCertificate)
    pieces, k = indecomposable_pieces(HEISENBERG.direct_sum(SL2).direct_sum(abelian(1)))
    assert k == 1 and sorted(p.dim for p in pieces) == [3, 3]


def test_change_basis_preserves_structure():
    L = C.contract(C.catalog_by_name("e18_8").reference())
    B = [[Fraction(int(i == j) + int(j == i + 1)) for j in range(L.dim)] for i in range(L.dim)]
    M = L.change_basis(B)
    assert M.satisfies_jacobi()
    assert series(M).text() == series(L).text()
    with pytest.raises(ValueError):
        L.change_basis([[0] * L.dim] * L.dim)


def test_subspaces():
    s = Subspace(3, [[1, 0, 0], [1, 1, 0]])
    t = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    assert s.dim == 2 and (s + t).dim == 3
    assert s.intersect(t).dim == 1
    assert [0, 1, 0] in s and [0, 0, 1] not in s

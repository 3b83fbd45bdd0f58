import random
from fractions import Fraction

import pytest

from gradcontract import contraction as C
from gradcontract.exactnum.poly import MultiPoly, parse_poly
from gradcontract.invariants import (
    DerivationQuery,
    casimirs,
    derivation_space,
    in_invariant_space,
    psi,
    six_tuple,
    structure_matrix,
    symmetrize,
    tau,
    vector_field_apply,
)
from gradcontract.liealg import LieAlgebra, abelian, sl3_gellmann

HEISENBERG = LieAlgebra.from_relations(3, "[e2,e3]=e1")
SL2 = LieAlgebra.from_relations(3, "[e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e1")


def _is_derivation(L, flat):
    n = L.dim
    D = [flat[r * n:(r + 1) * n] for r in range(n)]
    col = lambda s: [D[r][s] for r in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = [sum(D[r][k] * L.c(i, j)[k] for k in range(n)) for r in range(n)]
            ei = [int(k == i) for k in range(n)]
            ej = [int(k == j) for k in range(n)]
            rhs = [a + b for a, b in zip(L.bracket(col(i), ej), L.bracket(ei, col(j)))]
            if lhs != rhs:
                return False
    return True


def test_six_tuple_small_algebras():
    assert six_tuple(HEISENBERG).as_list() == [6, 6, 3, 5, 3, 4]
    assert six_tuple(abelian(2)).as_list() == [4, 4, 4, 4, 4, 4]
    assert six_tuple(SL2)[0] == 3


def test_derivation_space_elements_are_derivations():
    L = C.contract(C.catalog_by_name("e18_8").reference())
    basis = derivation_space(L, DerivationQuery(1, 1, 1))
    assert len(basis) == six_tuple(L)[0]
    for D in basis:
        assert _is_derivation(L, D)


def test_psi_at_one_is_derivation_dim():
    L = C.contract(C.catalog_by_name("e17_8").reference())
    assert psi(L, 1) == six_tuple(L)[0]
    assert psi(L, 0) == six_tuple(L)[1]


def test_tau():
    assert tau(HEISENBERG, rng=random.Random(0)) == 1
    assert tau(abelian(4)) == 4
    assert tau(sl3_gellmann().algebra, rng=random.Random(0)) == 2
    assert tau(SL2, certify=True) == 1


def test_structure_matrix_is_skew():
    M = structure_matrix(HEISENBERG)
    assert all(M[i][j] == -M[j][i] for i in range(3) for j in range(3))


def test_casimirs_heisenberg():
    cas = casimirs(HEISENBERG, max_degree=2)
    x1 = MultiPoly.variable(3, 0)
    assert in_invariant_space(cas, x1)
    assert in_invariant_space(cas, x1 * x1)
    assert not in_invariant_space(cas, MultiPoly.variable(3, 1))
    for F in cas.independent_polynomials:
        assert all(not vector_field_apply(HEISENBERG, i, F) for i in range(3))


@pytest.mark.filterwarnings("ignore::gradcontract.invariants.NotNilpotent")
def test_casimirs_sl2_quadratic():
    cas = casimirs(SL2, max_degree=2)
    # [e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e1 preserves x1^2 - x2^2 - x3^2 up to sign choices
    candidates = [parse_poly(t, 3) for t in ("e1^2 - e2^2 + e3^2", "e1^2 + e2^2 - e3^2", "-e1^2 + e2^2 + e3^2")]
    assert any(in_invariant_space(cas, F) for F in candidates)
    assert sum(cas.independent) == 1


def test_symmetrize():
    F = parse_poly("e1*e2", 2)
    words = symmetrize(F)
    assert words == [
        {"monomial": [1, 2], "coefficient": Fraction(1, 2)},
        {"monomial": [2, 1], "coefficient": Fraction(1, 2)},
    ]
    assert symmetrize(parse_poly("e1^2", 2)) == [{"monomial": [1, 1], "coefficient": 1}]

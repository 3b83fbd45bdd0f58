import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradcontract.exactnum.field import (
    I,
    SQRT2,
    SQRT3,
    DivisionByZero,
    FieldScalar,
    ScalarExpr,
    ScalarSyntaxError,
    UnboundParameter,
    format_scalar,
    nth_root_in_field,
    parse_scalar,
    sqrt_in_field,
)
from gradcontract.exactnum.intlattice import (
    integer_left_kernel,
    lll_reduce,
    power_product,
    smith_normal_form,
    solve_multiplicative,
)
from gradcontract.exactnum.linalg import det, identity, inverse, matmul, nullspace, rank, rref, solve
from gradcontract.exactnum.lp import feasible_point
from gradcontract.exactnum.poly import MultiPoly, generic_rank, parse_poly, symbolic_rank


def test_generators():
    assert SQRT2 * SQRT2 == FieldScalar(2)
    assert SQRT3 * SQRT3 == FieldScalar(3)
    assert I * I == FieldScalar(-1)
    assert (SQRT2 * SQRT3) * (SQRT2 * SQRT3) == FieldScalar(6)


@pytest.mark.parametrize("text", ["0", "1", "-1/2", "sqrt2", "i", "-1/2+1/2*sqrt3*i", "3/4*sqrt2*sqrt3"])
def test_parse_format_round_trip(text):
    x = parse_scalar(text)
    assert parse_scalar(format_scalar(x)) == x


def test_parse_errors():
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("1 +")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("a")
    with pytest.raises(DivisionByZero):
        parse_scalar("1/0")


def test_scalar_expressions():
    e = ScalarExpr("4*a - b/2")
    assert e.params == {"a", "b"}
    assert e.evaluate({"a": 1, "b": 2}) == FieldScalar(3)
    with pytest.raises(UnboundParameter):
        e.evaluate({"a": 1})


def test_roots():
    assert sqrt_in_field(FieldScalar(2)) in (SQRT2, -SQRT2)
    assert sqrt_in_field(FieldScalar(5)) is None
    r = sqrt_in_field(FieldScalar(-3))
    assert r is not None and r * r == FieldScalar(-3)
    cube = nth_root_in_field(FieldScalar(8), 3)
    assert cube == FieldScalar(2)
    w = parse_scalar("-1/2+1/2*sqrt3*i")
    assert w * w * w == FieldScalar(1)


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)
scalars = st.lists(small, min_size=8, max_size=8).map(FieldScalar)


@settings(max_examples=50, deadline=None)
@given(scalars)
def test_inverse_and_conjugates(x):
    if x:
        assert x * x.inverse() == FieldScalar(1)
    # conjugation by any sign pattern is a ring automorphism
    for mask in range(8):
        assert (x * x).conjugate(mask) == x.conjugate(mask) * x.conjugate(mask)


def test_rref_and_rank():
    m = [[2, 4, 1], [1, 2, 0], [3, 6, 1]]
    rows, piv = rref(m)
    assert piv == [0, 2]
    assert all(row[p] == 1 for row, p in zip(rows, piv))
    assert rank(m) == 2
    ns = nullspace(m, 3)
    assert len(ns) == 1
    assert all(sum(a * b for a, b in zip(r, ns[0])) == 0 for r in m)


def test_det_inverse_solve():
    m = [[FieldScalar(2), SQRT2], [I, FieldScalar(1)]]
    assert det(m) == FieldScalar(2) - SQRT2 * I
    assert matmul(m, inverse(m)) == identity(2)
    x = solve(m, [SQRT2, FieldScalar(0)], 2)
    assert [sum((m[r][k] * x[k] for k in range(2)), FieldScalar(0)) for r in range(2)] == [SQRT2, FieldScalar(0)]


int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_smith_normal_form(m):
    sf = smith_normal_form(m)
    assert matmul(matmul(sf.U, m), sf.V) == sf.S
    assert abs(det(sf.U)) == 1 and abs(det(sf.V)) == 1
    d = sf.diagonal
    assert all(x > 0 for x in d)
    assert all(d[k + 1] % d[k] == 0 for k in range(len(d) - 1))
    assert sf.rank == rank(m)


def test_integer_left_kernel():
    m = [[1, 2], [2, 4], [0, 1]]
    for y in integer_left_kernel(m):
        assert all(sum(y[r] * m[r][c] for r in range(3)) == 0 for c in range(2))


def test_lll_preserves_lattice():
    basis = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
    red = lll_reduce(basis)
    assert abs(det(red)) == abs(det(basis))
    assert max(sum(x * x for x in v) for v in red) <= max(sum(x * x for x in v) for v in basis)


def test_multiplicative_systems():
    # x1 * x2 = 4, x1 / x2 = 1
    res = solve_multiplicative([[1, 1], [1, -1]], [4, 1])
    assert res.solvable and res.witness is not None
    x1, x2 = res.witness
    assert x1 * x2 == FieldScalar(4) and x1 / x2 == FieldScalar(1)
    # x1 = 2, x1 = 3 has no solution; the obstruction certifies it
    res = solve_multiplicative([[1], [1]], [2, 3])
    assert not res.solvable
    assert power_product([FieldScalar(2), FieldScalar(3)], res.obstruction) != FieldScalar(1)


def test_feasible_point():
    x = feasible_point([[1, 1]], [1], [[1, -1]], [Fraction(1, 2)])
    assert x[0] + x[1] == 1 and x[0] - x[1] >= Fraction(1, 2)
    assert feasible_point([], [], [[1], [-1]], [1, 0]) is None


def test_polynomials():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert p.derivative(0) == 2 * x + 2 * y
    assert p.evaluate([1, 2]) == 9
    assert parse_poly("(e1 + e2)^2", 2) == p
    assert parse_poly("1/2*e1 - sqrt2*e2", 2).evaluate([2, 0]) == 1
    with pytest.raises(ScalarSyntaxError):
        parse_poly("e3", 2)


def test_generic_rank_matches_symbolic():
    n = 3
    x = [MultiPoly.variable(n, k) for k in range(n)]
    zero = MultiPoly(n)
    m = [[zero, x[0], x[1]], [-x[0], zero, x[2]], [-x[1], -x[2], zero]]
    assert generic_rank(m, rng=random.Random(1)) == 2
    assert symbolic_rank(m) == 2

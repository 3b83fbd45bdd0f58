import json
from fractions import Fraction

import pytest

from gradcontract import contraction as C
from gradcontract import grading
from gradcontract.exactnum.field import FieldScalar
from gradcontract.liealg import sl3_gellmann


def entry(name):
    return C.catalog_by_name(name)


def test_catalog_shape(entries):
    assert len(entries) == 89
    assert len({e.name for e in entries}) == 89
    assert C.support_census(list(entries))["total"] == 89
    parametric = [e.name for e in entries if e.is_parametric]
    assert parametric and all(set(e.params) <= set(C.REFERENCE_BINDINGS) for e in entries)


def test_all_ones_is_sl3():
    ones = C.ContractionMatrix.ones()
    assert C.verify_solution(ones)
    assert C.contract(ones) == sl3_gellmann().algebra


def test_system_sizes():
    full, reduced = C.generate_full_system(), C.reduced_system()
    assert len(reduced) <= len(full)
    assert C.two_term_equation_count("extend") == 224
    assert all(eq.size >= 2 for eq in reduced)


def test_normalization_matrix_is_a_solution(rng):
    a = [FieldScalar(rng.choice([1, -1, 2, 3, Fraction(1, 2)])) for _ in range(7)]
    alpha = C.ContractionMatrix(C.normalization_matrix(a))
    assert C.verify_solution(alpha)
    assert C.equivalent(alpha, C.ContractionMatrix.ones())


def test_irrelevant_entries_rejected():
    with pytest.raises(ValueError):
        C.ContractionMatrix({(1, 1): 1})


def test_contract_rejects_non_solutions():
    eps = C.ContractionMatrix.ones().with_entry((1, 2), 0)
    if not C.verify_solution(eps):
        with pytest.raises(C.NotASolution):
            C.contract(eps)


def test_equivalence_certificate_round_trip():
    eps = entry("e17_8").reference()
    A = grading.symmetry_group()[5]
    a = [FieldScalar(k) for k in (1, 2, -1, 3, 1, -2, 5)]
    moved = eps.act(A).normalized(a)
    res = C.equivalent(moved, eps)
    assert res
    if res.a is not None:
        # moved = alpha(a') * eps.act(A')
        assert eps.act(res.A).normalized(res.a) == moved


def test_inequivalent_supports():
    res = C.equivalent(entry("e0_1").reference(), entry("e21_1").reference())
    assert not res and res.reason


def test_verdict_kinds():
    assert isinstance(C.classify_continuity(C.ContractionMatrix.ones()), C.Continuous)
    assert isinstance(C.classify_continuity(entry("e21_1").reference()), C.Continuous)
    d = C.classify_continuity(entry("e9_1").reference())
    assert isinstance(d, C.Discrete)
    assert d.lhs != d.rhs


def test_special_bindings_change_verdict(entries):
    conditional = [
        e.name
        for e in entries
        if e.special_bindings
        and C.classify_continuity(e.reference()).kind != C.classify_continuity(e.special()).kind
    ]
    assert len(conditional) == 3


def test_unbound_parameter():
    e = next(x for x in C.load_catalog() if x.is_parametric)
    with pytest.raises(KeyError):
        e.bind({})


def test_catalog_parse_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('[\n  {"name": "x",\n')
    with pytest.raises(C.CatalogFormatError) as exc:
        C.load_catalog(str(path))
    assert "line" in str(exc.value)


def test_catalog_round_trip(tmp_path, entries):
    data = [e.to_json() for e in entries[:5]]
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(data))
    again = C.load_catalog(str(path))
    assert [e.reference() for e in again] == [e.reference() for e in entries[:5]]


def test_replay_support_values():
    eps = entry("e20_1").reference()
    v = C.classify_continuity(eps)
    alpha = C.replay_continuous(eps, v, Fraction(1, 3))
    assert all(alpha[p] for p in grading.relevant_pairs())

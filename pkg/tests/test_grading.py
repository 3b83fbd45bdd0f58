import itertools

from gradcontract import grading as g


def test_index_encoding():
    for i in g.INDICES:
        assert g.to_int(g.to_triple(i)) == i
    assert g.add(3, 5) == 6


def test_group_is_closed_and_acts_linearly():
    group = g.symmetry_group()
    assert len(set(group)) == 24
    for A, B in itertools.product(group[:6], group):
        assert A * B in group
    for A in group:
        # fixes the grading group structure: (i + j)A = iA + jA
        for i, j in itertools.combinations(g.INDICES, 2):
            assert A.act(i ^ j) == A.act(i) ^ A.act(j)
        assert A * A.inverse() == g.identity_element()


def test_composition_is_a_right_action():
    # indices are row vectors, so i(AB) = (iA)B
    group = g.symmetry_group()
    for A, B in itertools.product(group, group[:8]):
        for i in g.INDICES:
            assert (A * B).act(i) == B.act(A.act(i))


def test_orbits_partition_domains():
    for domain, items in (("pairs", g.pairs_u()), ("triplets", g.triplets_u())):
        orbs = g.orbits(domain)
        seen = [x for o in orbs for x in o.elements]
        assert sorted(seen) == sorted(items)
        for o in orbs:
            assert o.representative == min(o.elements)
            assert {g.act_multiset(o.representative, A) for A in g.symmetry_group()} == set(o.elements)


def test_relevant_pairs_and_tags():
    rel = g.relevant_pairs()
    assert len(rel) == 21
    # every relevant pair is moved to a relevant pair
    for A in g.symmetry_group():
        assert {g.canonical((A.act(i), A.act(j))) for i, j in rel} == set(rel)
    tags = [g.pair_tag(p) for p in rel]
    assert tags.count("+") == 6 and tags.count("-") == 3


def test_orbit_report_shape():
    rep = g.orbit_report("pairs")
    assert rep["orbit_count"] == 5
    assert sum(o["size"] for o in rep["orbits"]) == 28

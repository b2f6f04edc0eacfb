import itertools

import pytest

from amalgams import D8C4, brute_all_subgroups, brute_normal, brute_subgroup, build, members
from cpgroups import (
    all_subgroups,
    catalog_group,
    commutator_subgroup,
    conjugate_subgroup,
    derived_series,
    generated_subgroup,
    intersect,
    iterated_commutator,
    join,
    normalizer,
)
from cpgroups.config import Limits
from cpgroups.dsl import diagonal_subgroup, parse_spec
from cpgroups.errors import BudgetError, ValidationError
from cpgroups.lattice import commutator_subgroup_bruteforce, normal_closure

LEMMA_GROUPS = ["C(6)", "C(8)", "D(8)", "D(12)", "D(16)", "D(24)", "Q8", "Dic(3)", "Dic(6)", "S(3)", "S(4)", "A(4)"]


def _setwise_product(A, B):
    G = A.parent
    return frozenset(int(G.table[a, b]) for a in A.elements for b in B.elements)


def _brute_commutator(A, B):
    G = A.parent
    return brute_subgroup(G, {G.comm(int(a), int(b)) for a in A.elements for b in B.elements})


@pytest.mark.parametrize("name", LEMMA_GROUPS)
def test_commutator_identities_on_all_pairs(name):
    G = catalog_group(name)
    subs = all_subgroups(G)
    normal = {H for H in subs if brute_normal(G, members(H))}
    for A, B in itertools.product(subs, repeat=2):
        AB = commutator_subgroup(A, B)
        assert members(AB) == _brute_commutator(A, B)
        # [A,B] = [B,A]
        assert AB == commutator_subgroup(B, A)
        # [A,B] is normal in <A,B>
        J = join(A, B)
        assert all(conjugate_subgroup(AB, g) == AB for g in J.generators)
        # [A,B] <= A  iff  B <= N_G(A)
        assert (AB <= A) == (B <= normalizer(G, A))
        # A, B normal in G  =>  [A,B] normal in G
        if A in normal and B in normal:
            assert brute_normal(G, members(AB))
        # <A^B> = A[A,B]
        assert members(normal_closure(A, B)) == _setwise_product(A, AB)


@pytest.mark.parametrize("name", ["D(8)", "S(4)", "Dic(3)"])
def test_fast_commutator_matches_all_pairs(name):
    G = catalog_group(name)
    subs = all_subgroups(G)
    for A, B in itertools.product(subs[::3], subs[::2]):
        assert commutator_subgroup(A, B) == commutator_subgroup_bruteforce(A, B)


def test_generated_subgroup_examples():
    D8 = catalog_group("D(8)")
    assert generated_subgroup(D8, []).is_trivial
    assert generated_subgroup(D8, [D8.generator("r"), D8.generator("s")]).is_whole
    G = build(D8C4).G
    rsy = G.parse_word("rsy")
    H = generated_subgroup(G, [rsy])
    assert H.order == 4
    assert G.mul(rsy, rsy) == G.parse_word("r^2")
    assert all(G.mul(a, b) == G.mul(b, a) for a in H.elements for b in H.elements)


def test_commutator_examples_in_d8c4():
    cp = build(D8C4)
    G = cp.G
    U1, U2 = cp.U1, cp.U2
    assert commutator_subgroup(U1, G.trivial).is_trivial
    assert commutator_subgroup(U1, U2).is_trivial
    rsy = G.subgroup([G.parse_word("rsy")])
    assert commutator_subgroup(rsy, U1) == G.subgroup([G.parse_word("r^2")])


def test_iterated_commutator():
    cp = build(D8C4)
    G = cp.G
    S = G.subgroup([G.parse_word("s")])
    assert iterated_commutator(cp.U1, S, 1) == commutator_subgroup(cp.U1, S)
    assert not iterated_commutator(cp.U1, S, 1).is_trivial
    assert iterated_commutator(cp.U1, S, 2).is_trivial
    assert iterated_commutator(cp.U1, S, 3).is_trivial
    assert iterated_commutator(cp.U1, S, 0) == cp.U1
    with pytest.raises(ValidationError):
        iterated_commutator(cp.U1, S, -1)


@pytest.mark.parametrize("name", ["D(8)", "S(4)", "Dic(3)", "A(4)"])
def test_commutator_lies_in_normal_closure(name):
    G = catalog_group(name)
    subs = all_subgroups(G)
    for X, H in itertools.product(subs, repeat=2):
        assert commutator_subgroup(X, H) <= normal_closure(X, H)


def test_join_and_intersect():
    G = build(D8C4).G
    A = G.subgroup([G.parse_word("rs")])
    assert join(A, A) == A and intersect(A, A) == A
    cp = build(D8C4)
    rsy = G.subgroup([G.parse_word("rsy")])
    assert intersect(rsy, cp.U2) == G.subgroup([G.parse_word("r^2")])


def test_diagonal_join_with_a_conjugate_is_everything():
    ast = parse_spec("direct(A(5), A(5))")
    cp = build("direct(A(5), A(5))")
    G = cp.G
    delta = diagonal_subgroup(ast, cp)
    outside = [g for g in range(G.order) if g not in delta][:5]
    for g in outside:
        assert join(delta, conjugate_subgroup(delta, g)).is_whole


def test_derived_series_examples():
    ab = derived_series(catalog_group("C(6)"))
    assert [t.order for t in ab.terms] == [6, 1] and ab.solvable
    D8 = catalog_group("D(8)")
    ds = derived_series(D8)
    assert [t.order for t in ds.terms] == [8, 2, 1]
    assert ds.terms[1] == D8.subgroup([D8.power(D8.generator("r"), 2)])
    a5 = derived_series(catalog_group("A(5)"))
    assert not a5.solvable and a5.stabilized and a5.terms[-1].is_whole
    s4 = derived_series(catalog_group("S(4)"))
    assert [t.order for t in s4.terms] == [24, 12, 4, 1]


@pytest.mark.parametrize("name", LEMMA_GROUPS + ["A(5)", "S(5)"])
def test_derived_terms_are_normal(name):
    G = catalog_group(name)
    ds = derived_series(G)
    for prev, cur in zip(ds.terms, ds.terms[1:]):
        assert cur == commutator_subgroup(prev, prev)
        assert cur <= prev
        assert all(conjugate_subgroup(cur, g) == cur for g in G.gen_indices)
    assert ds.solvable == ds.terms[-1].is_trivial


def test_subgroup_counts():
    assert len(all_subgroups(catalog_group("C(1)"))) == 1
    c4 = all_subgroups(catalog_group("C(4)"))
    assert [H.order for H in c4] == [1, 2, 4]
    assert len(all_subgroups(build(D8C4).G)) == 23


@pytest.mark.parametrize("name", ["D(8)", "Q8", "D(12)", "Dic(3)", "S(4)", "A(4)", D8C4])
def test_enumeration_matches_brute_force(name):
    G = build(name).G if name.startswith("central") else catalog_group(name)
    subs = all_subgroups(G)
    assert {members(H) for H in subs} == brute_all_subgroups(G)
    assert len(set(subs)) == len(subs)
    listed = set(subs)
    for H in subs:
        H.validate()
        assert G.order % H.order == 0
        for g in G.gen_indices:
            assert conjugate_subgroup(H, g) in listed
    assert [H.sort_key() for H in subs] == sorted(H.sort_key() for H in subs)


def test_enumeration_budget_is_an_error():
    with pytest.raises(BudgetError):
        all_subgroups(catalog_group("S(6)"))
    with pytest.raises(BudgetError):
        all_subgroups(catalog_group("D(16)"), limits=Limits(max_enum=8))
    with pytest.raises(BudgetError):
        all_subgroups(catalog_group("D(16)"), max_enum=15)
    assert len(all_subgroups(catalog_group("D(16)"), max_enum=16)) > 0

import pytest

from amalgams import D8C4, DIC3C4, build, members, pool_specs
from cpgroups import (
    CentralProductSpec,
    are_isomorphic,
    canonical_epimorphism,
    catalog_group,
    center,
    commutator_subgroup,
    direct_product,
    external_central_product,
    internal_external_iso_check,
    intersect,
    is_internal_central_product,
)
from cpgroups.config import Limits
from cpgroups.errors import BudgetError, ValidationError
from cpgroups.morphisms import subgroup_as_group
from cpgroups.products import central_product_invariants


def test_direct_product_examples():
    D8, C4 = catalog_group("D(8)"), catalog_group("C(4)")
    DP = direct_product(D8, C4)
    assert DP.group.order == 32
    assert DP.proj1.surjective and DP.proj2.surjective
    assert DP.Vbar1.order == 8 and DP.Vbar2.order == 4
    assert intersect(DP.Vbar1, DP.Vbar2).is_trivial
    triv = direct_product(D8, catalog_group("C(1)"))
    assert are_isomorphic(triv.group, D8)
    big = direct_product(catalog_group("A(5)"), catalog_group("A(5)"))
    assert big.group.order == 3600
    with pytest.raises(BudgetError):
        direct_product(catalog_group("S(6)"), catalog_group("S(6)"))
    with pytest.raises(BudgetError):
        direct_product(D8, C4, limits=Limits(max_order=16))


def test_primed_names_on_clash():
    DP = direct_product(catalog_group("D(8)"), catalog_group("D(8)"))
    assert DP.group.gen_names == ["r", "s", "r'", "s'"]


def test_trivial_amalgam_is_the_direct_product():
    V1, V2 = catalog_group("D(8)"), catalog_group("C(4)")
    cp = external_central_product(CentralProductSpec(V1, V2))
    assert cp.G.order == 32 and cp.N.is_trivial
    assert cp.epsilon.injective and cp.epsilon.surjective
    assert internal_external_iso_check(cp)


def test_d8c4_construction():
    cp = build(D8C4)
    G = cp.G
    assert G.order == 16
    meet = intersect(cp.U1, cp.U2)
    assert meet.order == 2 and meet == G.subgroup([G.parse_word("r^2")])
    D = cp.D
    r2 = D.V1.power(D.V1.generator("r"), 2)
    y2 = D.V2.power(D.V2.generator("y"), 2)
    assert members(cp.N) == {D.group.identity, D.pair(r2, y2)}
    assert is_internal_central_product(G, cp.U1, cp.U2)
    assert are_isomorphic(subgroup_as_group(cp.U1)[0], catalog_group("D(8)"))
    assert are_isomorphic(subgroup_as_group(cp.U2)[0], catalog_group("C(4)"))


def test_dic3_c4_order():
    cp = build(DIC3C4)
    assert cp.G.order == 12 * 4 // 2
    z = cp.V1.parse_word("a^3")
    assert z in center(cp.V1) and cp.V1.element_orders[z] == 2


def test_amalgam_errors_name_the_pair():
    D8, C4 = catalog_group("D(8)"), catalog_group("C(4)").renamed(["y"])
    s = D8.generator("s")
    y = C4.generator("y")
    with pytest.raises(ValidationError, match="s"):
        external_central_product(CentralProductSpec(D8, C4, [(s, C4.power(y, 2))]))
    r2 = D8.power(D8.generator("r"), 2)
    # r^2 has order 2, y has order 4: not an isomorphism
    with pytest.raises(ValidationError):
        external_central_product(CentralProductSpec(D8, C4, [(r2, y)]))


def test_internal_product_witnesses():
    D8 = catalog_group("D(8)")
    r, s = D8.generator("r"), D8.generator("s")
    check = is_internal_central_product(D8, D8.subgroup([r]), D8.subgroup([s]))
    assert not check
    a, b = check.witness
    assert D8.comm(a, b) == D8.power(r, 2)
    C4 = catalog_group("C(4)")
    assert is_internal_central_product(C4, C4.whole, C4.whole)
    Z = center(D8)
    miss = is_internal_central_product(D8, Z, D8.subgroup([r]))
    assert not miss and miss.reason.startswith("U1 U2 does not cover")


def test_canonical_epimorphism():
    cp = build(D8C4)
    eps = canonical_epimorphism(cp.G, cp.U1, cp.U2)
    assert eps.surjective and eps.kernel.order == 2
    C4 = catalog_group("C(4)")
    iso = canonical_epimorphism(C4, C4.whole, C4.trivial)
    assert iso.injective and iso.surjective
    D8 = catalog_group("D(8)")
    with pytest.raises(ValidationError):
        canonical_epimorphism(D8, D8.subgroup([D8.generator("r")]), D8.subgroup([D8.generator("s")]))


@pytest.mark.parametrize("spec", pool_specs())
def test_pool_construction_invariants(spec):
    cp = build(spec)
    assert central_product_invariants(cp) == []
    G = cp.G
    for U in (cp.U1, cp.U2):
        assert all(G.conj(u, g) in U for u in U.generators for g in G.gen_indices)
    assert commutator_subgroup(cp.U1, cp.U2).is_trivial
    meet = intersect(cp.U1, cp.U2)
    assert meet <= intersect(center_of(cp.U1), center_of(cp.U2))
    eps, DP = canonical_epimorphism(G, cp.U1, cp.U2, with_factors=True)
    assert eps.image_of(DP.Vbar1) == cp.U1 and eps.image_of(DP.Vbar2) == cp.U2
    assert eps.kernel.order == cp.A.order == meet.order
    assert internal_external_iso_check(cp)


def center_of(U):
    G = U.parent
    return G.subgroup([z for z in U.elements if all(G.mul(z, u) == G.mul(u, z) for u in U.generators)])


def test_different_amalgams_of_c4_c4_both_satisfy_invariants():
    a = build("central(C(4), C(4); x = y)")
    b = build("central(C(4), C(4); x = y^3)")
    for cp in (a, b):
        assert central_product_invariants(cp) == []
        assert cp.G.order == 4

import pytest
from hypothesis import given, settings, strategies as st

from bgtrace.exact import AbelianGroupStructure
from bgtrace.groups import (CapExceeded, FiniteGroup, GModule, central_sequence_check,
                            cocycle_identity_holds, cohomology, cohomology_group,
                            product_formula_check, schur_multiplier, group_claims_report,
                            semidirect_sequence_check, sl3_weight_lattice)

Z2 = AbelianGroupStructure(0, (2,))
TRIVIAL = AbelianGroupStructure()


def cyclic_of(n):
    return AbelianGroupStructure.from_cyclic_orders([n])


@pytest.mark.parametrize("group, order", [
    (FiniteGroup.symmetric(3), 6), (FiniteGroup.symmetric(4), 24),
    (FiniteGroup.alternating(4), 12), (FiniteGroup.dihedral(8), 8),
    (FiniteGroup.quaternion(), 8), (FiniteGroup.cyclic(7), 7),
    (FiniteGroup.abelian([2, 2]), 4), (FiniteGroup.trivial(), 1),
])
def test_group_orders(group, order):
    assert group.order == order


def test_permutation_input_formats():
    by_cycles = FiniteGroup.from_permutations(4, [[[1, 2, 3, 4]], [[1, 2]]])
    by_images = FiniteGroup.from_permutations(4, [(1, 2, 3, 0), (1, 0, 2, 3)])
    assert by_cycles.order == by_images.order == 24
    with pytest.raises(ValueError):
        FiniteGroup.from_permutations(3, [(0, 0, 1)])


def test_order_cap():
    with pytest.raises(CapExceeded):
        FiniteGroup.from_permutations(6, [[[1, 2, 3, 4, 5, 6]], [[1, 2]]], cap=100)


GROUPS = [FiniteGroup.symmetric(3), FiniteGroup.dihedral(8), FiniteGroup.quaternion(),
          FiniteGroup.alternating(4), FiniteGroup.cyclic(5)]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(GROUPS), st.data())
def test_group_axioms(g, data):
    a, b, c = (data.draw(st.integers(0, g.order - 1)) for _ in range(3))
    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
    assert g.mul(a, g.inverse[a]) == 0 and g.mul(0, a) == a
    assert g.conj(a, g.conj(b, c)) == g.conj(g.mul(a, b), c)


def test_center_commutator_and_quotient():
    q8 = FiniteGroup.quaternion()
    assert len(q8.center()) == 2
    assert len(q8.commutator_subgroup()) == 2
    quot, proj = q8.quotient(q8.center())
    assert quot.order == 4 and quot.is_abelian()
    assert str(FiniteGroup.symmetric(3).abelianization()) == "Z/2"
    assert len(FiniteGroup.symmetric(4).conjugacy_classes()) == 5


@pytest.mark.parametrize("group", GROUPS)
def test_h1_with_trivial_integer_coefficients_vanishes(group):
    assert cohomology(group, GModule.trivial(group), 1).is_trivial()


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_cyclic_group_cohomology(n):
    g = FiniteGroup.cyclic(n)
    z = GModule.trivial(g)
    assert cohomology(g, z, 0) == AbelianGroupStructure(1, ())
    assert cohomology(g, z, 2) == cyclic_of(n)
    assert cohomology(g, z, 3).is_trivial()


def test_sign_module():
    g = FiniteGroup.cyclic(2)
    sign = GModule.from_generators(g, 1, (), [[[-1]]])
    assert cohomology(g, sign, 0).is_trivial()
    assert cohomology(g, sign, 1) == Z2
    assert cohomology(g, sign, 2).is_trivial()


def test_torsion_coefficients():
    g = FiniteGroup.cyclic(2)
    m = GModule.trivial(g, 0, (2,))
    assert cohomology(g, m, 1) == Z2
    assert cohomology(g, m, 2) == Z2


@pytest.mark.parametrize("group", [FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)])
def test_shapiro_regular_module_is_acyclic(group):
    perms = [tuple(group.mul(g, x) for x in range(group.order)) for g in range(group.order)]
    reg = GModule.permutation_lattice(group, perms)
    assert cohomology(group, reg, 0) == AbelianGroupStructure(1, ())
    for n in (1, 2):
        assert cohomology(group, reg, n).is_trivial()


@pytest.mark.parametrize("group, n", [(FiniteGroup.symmetric(3), 2),
                                      (FiniteGroup.cyclic(4), 2),
                                      (FiniteGroup.abelian([2, 2]), 3)])
def test_cocycle_representatives_and_annihilation(group, n):
    h = cohomology_group(GModule.trivial(group), n)
    for z in h.generators():
        assert cocycle_identity_holds(h.module, n, z)
    assert all(group.order % t == 0 for t in h.structure.torsion)


@pytest.mark.parametrize("group, expected", [
    (FiniteGroup.alternating(4), Z2), (FiniteGroup.abelian([2, 2]), Z2),
    (FiniteGroup.quaternion(), TRIVIAL), (FiniteGroup.dihedral(8), Z2),
    (FiniteGroup.symmetric(3), TRIVIAL), (FiniteGroup.abelian([3, 3]), cyclic_of(3)),
])
def test_schur_multipliers(group, expected):
    m = schur_multiplier(group)
    assert m == expected
    assert group.order % m.order == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_cyclic_multipliers_vanish(n):
    assert schur_multiplier(FiniteGroup.cyclic(n)).is_trivial()


def test_lattice_cohomology_of_three_cycle():
    s3 = FiniteGroup.symmetric(3)
    lam = sl3_weight_lattice(s3, s3.labels)
    c3, inc = s3.subgroup([s3.labels.index((1, 2, 0))])
    assert cohomology(c3, lam.restrict(c3, inc), 1) == cyclic_of(3)
    assert cohomology(s3, lam, 0).is_trivial()


def test_lattice_cohomology_of_transposition_is_a_permutation_module():
    # (12) swaps the basis images of e1 and e2, so the lattice is Z[C2] and H^1 = 0
    s3 = FiniteGroup.symmetric(3)
    lam = sl3_weight_lattice(s3, s3.labels)
    c2, inc = s3.subgroup([s3.labels.index((1, 0, 2))])
    assert cohomology(c2, lam.restrict(c2, inc), 1).is_trivial()


@pytest.mark.parametrize("a, b, lhs", [
    (FiniteGroup.cyclic(2), FiniteGroup.cyclic(2), 2),
    (FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), 1),
    (FiniteGroup.symmetric(3), FiniteGroup.cyclic(2), 2),
])
def test_product_formula(a, b, lhs):
    r = product_formula_check(a, b)
    assert r["holds"] and r["lhs"] == lhs


def test_semidirect_examples():
    s3 = semidirect_sequence_check([3], FiniteGroup.cyclic(2), [[[2]]])
    assert s3["holds"] and s3["M(G)"] == "0" and s3["H1(Gamma, N^)"] == "0"
    a4 = semidirect_sequence_check([2, 2], FiniteGroup.cyclic(3), [[[0, 1], [1, 1]]])
    assert a4["holds"] and a4["|ker(M(G)->M(Gamma))|"] == 2
    direct = semidirect_sequence_check([2], FiniteGroup.cyclic(2), [[[1]]])
    prod = product_formula_check(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    assert direct["holds"] and direct["M(G)"] == prod["M(AxB)"]


def test_central_examples():
    q8 = FiniteGroup.quaternion()
    r = central_sequence_check(q8, q8.center())
    assert r["holds"] and r["|ker(M(G/Z)->M(G))|"] == 2 and r["M(G/Z)"] == "Z/2"
    z4 = FiniteGroup.cyclic(4)
    r = central_sequence_check(z4, [0, z4.power(z4.generators[0], 2)])
    assert r["holds"] and r["|ker(M(G/Z)->M(G))|"] == 1
    d8 = FiniteGroup.dihedral(8)
    assert central_sequence_check(d8, d8.center())["holds"]
    with pytest.raises(ValueError):
        central_sequence_check(FiniteGroup.symmetric(3), [1])


def test_group_claims_report():
    claims = {c["claim"]: c["pass"] for c in group_claims_report()}
    for name in ["M(S4) = Z/2", "M(A4) = Z/2", "M(S4) -> M(A4) is an isomorphism",
                 "M(S4) -> M(normal Klein) is surjective", "M(Klein) = Z/2",
                 "M(S4) -> M(non-normal Klein) is an isomorphism", "Lambda^S3 = 0",
                 "H1(<(123)>, Lambda) = Z/3"]:
        assert claims[name] is True, name
    assert claims["H1(<(12)>, Lambda) = Z/2"] is False
    assert claims["S5 / A5 multiplier claims"] is None


def test_module_homomorphism_check():
    g = FiniteGroup.cyclic(3)
    with pytest.raises(ValueError):
        GModule.from_generators(g, 1, (), [[[-1]]])

import random

import pytest
from hypothesis import given, settings, strategies as st

from bgtrace import algebra as alg
from bgtrace.algebra import AlgebraMap
from bgtrace.bg import (BGComplex, BoundedTraceModel, FiniteGroupAction, FunctionsOnG,
                        PreconditionError, amplitude, dual_numbers_sign_action,
                        element_permutations, graded_sign_action, inertia_count,
                        permuted_idempotents_action, random_gset, verify_homotopy,
                        verify_inertia)
from bgtrace.groups import FiniteGroup
from bgtrace.hochschild import cyclic_bar, hochschild_homology

Z3 = FiniteGroup.from_permutations(3, [(1, 2, 0)])
ACTIONS = {
    "sign": dual_numbers_sign_action("id"),
    "sign, x -> 2x": dual_numbers_sign_action("scale2"),
    "Z3 on k^3": permuted_idempotents_action(Z3),
    "Z3 on k^3, cycled": permuted_idempotents_action(Z3, (1, 2, 0)),
    "S3 on k^3": permuted_idempotents_action(FiniteGroup.symmetric(3)),
}


@pytest.mark.parametrize("name", ACTIONS)
def test_fibers_are_twisted_hochschild_homology(name):
    action = ACTIONS[name]
    bg = BGComplex(action, 4)
    degrees = range(-3, 1)
    for h in range(action.group.order):
        want = hochschild_homology(action.algebra, action.module, action.fiber_twist(h), -3).dims
        got = bg.fiber_at(h).cohomology_dims(degrees)
        assert all(got[d] == want[d] for d in degrees)


@pytest.mark.parametrize("name", ACTIONS)
def test_group_acts_by_chain_maps(name):
    assert BGComplex(ACTIONS[name], 3).is_equivariant()


def test_global_sections_of_the_sign_action():
    bg = BGComplex(ACTIONS["sign"], 5)
    assert bg.global_sections().cohomology_dims(range(-4, 1)) == {-4: 1, -3: 1, -2: 1, -1: 1, 0: 2}


def test_global_sections_count_fixed_point_orbits():
    # S3 on three points: fixed pairs (x, g) form two orbits (g = e, g = transposition)
    bg = BGComplex(ACTIONS["S3 on k^3"], 2)
    assert bg.global_sections().cohomology_dims(range(-1, 1)) == {-1: 0, 0: 2}
    assert verify_inertia(Z3, [(1, 2, 0)]).global_h0 == 1


def test_fiber_index_is_checked():
    with pytest.raises(ValueError):
        BGComplex(ACTIONS["sign"], 1).fiber_at(2)


def test_homotopy_between_twisted_and_untwisted_action():
    A = alg.dual_numbers()
    x = A.component(weight=1)[0]
    flipped = FiniteGroupAction.trivial(A, twist=AlgebraMap.weight_scaling(A, -1))
    rep = verify_homotopy(flipped, {x: 1}, 3)
    assert rep.holds and not rep.difference_is_zero
    assert verify_homotopy(ACTIONS["sign"], A.unit(), 3).difference_is_zero


def test_homotopy_preconditions():
    with pytest.raises(PreconditionError):
        verify_homotopy(FiniteGroupAction.trivial(alg.path_algebra_An(2)), {0: 1}, 2)
    x = alg.dual_numbers().component(weight=1)[0]
    with pytest.raises(PreconditionError):
        verify_homotopy(ACTIONS["sign"], {x: 1}, 2)


def test_action_must_commute_with_twist():
    k3 = alg.semisimple(3)
    G = FiniteGroup.from_permutations(3, [(1, 0, 2)])
    swap = AlgebraMap.vertex_permutation(k3, [1, 0, 2])
    cycle = AlgebraMap.vertex_permutation(k3, [1, 2, 0])
    with pytest.raises(PreconditionError):
        FiniteGroupAction.from_generators(G, k3, [swap], twist=cycle)


def test_functions_on_the_group_form_a_comodule():
    action = ACTIONS["S3 on k^3"]
    assert FunctionsOnG(action.group).check(action.module_maps)


def test_inertia_by_hand():
    s3 = FiniteGroup.symmetric(3)
    trivial_point = element_permutations(s3, [(0,), (0,)])
    # one point: orbits of pairs (pt, g) are the conjugacy classes
    assert inertia_count(s3, trivial_point) == 3
    with pytest.raises(PreconditionError):
        element_permutations(FiniteGroup.cyclic(2), [(1, 2, 0)])


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["S3", "Z4", "V4", "D8"]), st.integers(0, 10 ** 6))
def test_invariant_degree_zero_counts_inertia_orbits(gname, seed):
    G = {"S3": FiniteGroup.symmetric(3), "Z4": FiniteGroup.cyclic(4),
         "V4": FiniteGroup.abelian([2, 2]), "D8": FiniteGroup.dihedral(8)}[gname]
    perms = random_gset(G, 6, random.Random(seed))
    rep = verify_inertia(G, perms)
    assert rep.holds
    assert rep.fiber_h0[0] == len(perms[0])


@pytest.mark.parametrize("action", [
    FiniteGroupAction.trivial(alg.path_algebra_An(3)),
    graded_sign_action(alg.An_with_zero_relation()),
    graded_sign_action(alg.semisimple(2)),
])
def test_bounded_model_matches_the_bar_model(action):
    model = BoundedTraceModel(action)
    N = model.length
    degrees = list(range(-N - 1, 1))
    bg = BGComplex(action, N + 2)
    assert model.global_sections().cohomology_dims(degrees) == \
        bg.global_sections().cohomology_dims(degrees)
    for h in range(action.group.order):
        assert model.fiber(h).cohomology_dims(degrees) == bg.fiber_at(h).cohomology_dims(degrees)


def test_bounded_model_support():
    model = BoundedTraceModel(graded_sign_action(alg.path_algebra_An(2)))
    assert model.length == 1
    assert model.global_sections().cohomology_dims() == {-1: 0, 0: 4}
    assert amplitude(model.complex()) == (0, 0)


def test_bounded_model_rejects_non_koszul_and_infinite_algebras():
    with pytest.raises(PreconditionError):
        BoundedTraceModel(FiniteGroupAction.trivial(alg.truncated_polynomial(3)))
    with pytest.raises(PreconditionError):
        BoundedTraceModel(FiniteGroupAction.trivial(alg.dual_numbers()), cap=4)


def test_term_dimensions():
    bg = BGComplex(ACTIONS["sign"], 2)
    assert [bg.term_dim(n) for n in (1, 0)] == [8, 4]
    assert BGComplex(ACTIONS["S3 on k^3"], 1).term_dim(0) == 18


def test_trivial_group_recovers_the_cyclic_bar_complex():
    A = alg.path_algebra_An(2)
    bg = BGComplex(FiniteGroupAction.trivial(A), 3)
    bar = cyclic_bar(A, alg.diagonal_bimodule(A), depth=3)
    for d in range(-3, 0):
        assert bg.complex().differential(d) == bar.differential(d)


@pytest.mark.parametrize("perms, orbits", [([(1, 0)], 1), ([(0,)], 2)])
def test_inertia_for_the_group_of_order_two(perms, orbits):
    rep = verify_inertia(FiniteGroup.cyclic(2), perms)
    assert rep.holds and rep.global_h0 == orbits

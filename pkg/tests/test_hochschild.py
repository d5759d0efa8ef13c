from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bgtrace import algebra as alg
from bgtrace.algebra import AlgebraMap
from bgtrace.exact import ExactMatrix, QQ
from bgtrace.hochschild import (CyclicBar, class_of_element, coinvariants_dim, compare_models,
                                cyclic_bar, hochschild_class, hochschild_homology,
                                minimal_bimodule_resolution)


def _twists(A):
    out = {"id": AlgebraMap.identity(A), "scale -1": AlgebraMap.weight_scaling(A, -1),
           "scale 2": AlgebraMap.weight_scaling(A, 2)}
    if A.dim == len(A.vertices) and A.dim > 1:
        n = A.dim
        out["cycle"] = AlgebraMap.vertex_permutation(A, [(i + 1) % n for i in range(n)])
    return out


ALGEBRAS = {"dual": alg.dual_numbers(), "kxk": alg.semisimple(2), "A2": alg.path_algebra_An(2),
            "A3z": alg.An_with_zero_relation(), "x3": alg.truncated_polynomial(3)}


def test_dual_numbers_hochschild_homology():
    rep = hochschild_homology(alg.dual_numbers(), min_degree=-5)
    assert rep.dims == {0: 2, -1: 1, -2: 1, -3: 1, -4: 1, -5: 1}
    assert rep.by_weight[0] == {0: 1, 1: 1}
    assert rep.by_weight[-1] == {1: 1} and rep.by_weight[-2] == {3: 1}
    assert not rep.resolution_complete


def test_swap_twist_kills_the_semisimple_algebra():
    A = alg.semisimple(2)
    swap = AlgebraMap.vertex_permutation(A, [1, 0])
    rep = hochschild_homology(A, f=swap, min_degree=-3)
    assert not any(rep.dims.values())
    assert coinvariants_dim(alg.diagonal_bimodule(A), swap) == 0


@pytest.mark.parametrize("name, h0", [("kxk", 2), ("A2", 2), ("A3z", 3)])
def test_hereditary_and_tree_algebras_are_concentrated_in_degree_zero(name, h0):
    rep = hochschild_homology(ALGEBRAS[name], min_degree=-4)
    assert rep.dims[0] == h0
    assert not any(v for d, v in rep.dims.items() if d < 0)


@pytest.mark.parametrize("name, length", [("kxk", 0), ("A2", 1), ("A3z", 2)])
def test_bimodule_resolution_lengths(name, length):
    bres = minimal_bimodule_resolution(ALGEBRAS[name], 5)
    assert bres.complete and bres.length == length


def test_coinvariants_match_degree_zero():
    for name, A in ALGEBRAS.items():
        for tname, f in _twists(A).items():
            M = alg.diagonal_bimodule(A)
            assert coinvariants_dim(M, f) == hochschild_homology(A, M, f, 0).dims[0], (name, tname)


@pytest.mark.parametrize("name", list(ALGEBRAS))
def test_bar_and_resolution_models_agree(name):
    A = ALGEBRAS[name]
    for tname, f in _twists(A).items():
        for M in (alg.diagonal_bimodule(A), alg.dual_bimodule(A)):
            depth = 4 if A.dim <= 3 else 3
            assert compare_models(A, M, f, depth)["agree"], (tname, M.name)


def _chain(data, bar, n):
    A, M = bar.algebra, bar.module
    xs = tuple(data.draw(st.integers(0, A.dim - 1)) for _ in range(n))
    return xs + (data.draw(st.integers(0, M.dim - 1)),)


def _apply(bar, fn, vec):
    out = {}
    for t, c in vec.items():
        for u, v in fn(t).items():
            out[u] = out.get(u, 0) + c * v
    return {k: v for k, v in out.items() if v}


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(list(ALGEBRAS)), st.sampled_from(["id", "scale -1", "scale 2"]),
       st.integers(2, 4), st.data())
def test_face_identities(name, tname, n, data):
    A = ALGEBRAS[name]
    bar = CyclicBar(A, alg.diagonal_bimodule(A), _twists(A)[tname], 4)
    t = _chain(data, bar, n)
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(i + 1, n))
    lhs = _apply(bar, lambda u: bar.face(i, u), bar.face(j, t))
    rhs = _apply(bar, lambda u: bar.face(j - 1, u), bar.face(i, t))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(ALGEBRAS)), st.integers(1, 3), st.data())
def test_faces_undo_unit_insertion(name, n, data):
    A = ALGEBRAS[name]
    bar = CyclicBar(A, alg.diagonal_bimodule(A), AlgebraMap.weight_scaling(A, 3), 4)
    t = _chain(data, bar, n)
    j = data.draw(st.integers(0, n))
    s = bar.degeneracy(j, t)
    assert _apply(bar, lambda u: bar.face(j, u), s) == {t: 1}
    assert _apply(bar, lambda u: bar.face(j + 1, u), s) == {t: 1}


@pytest.mark.parametrize("name", list(ALGEBRAS))
def test_cyclic_bar_squares_to_zero(name):
    A = ALGEBRAS[name]
    for f in _twists(A).values():
        bar = CyclicBar(A, alg.dual_bimodule(A), f, 3)
        for n in range(2, 4):
            assert (bar.differential(n - 1) @ bar.differential(n)).is_zero()
    assert cyclic_bar(A, alg.diagonal_bimodule(A), depth=2).term(-2) == A.dim ** 3


def test_twist_must_live_over_the_algebra():
    A, B = alg.dual_numbers(), alg.dual_numbers()
    with pytest.raises(ValueError):
        CyclicBar(A, alg.diagonal_bimodule(B), AlgebraMap.identity(A), 2)


def test_class_of_projectives():
    A = alg.semisimple(2)
    P = alg.indecomposable_projective(A, 0)
    c = hochschild_class(P, ExactMatrix.identity(QQ, P.dim))
    assert c == class_of_element(A, {A.idempotents[0]: 1})
    B = alg.path_algebra_An(2)
    R = alg.regular_module(B)
    c = hochschild_class(R, ExactMatrix.identity(QQ, R.dim))
    assert c == class_of_element(B, B.unit())
    assert not c.is_zero()


def test_class_is_additive_and_linear():
    A = alg.path_algebra_An(2)
    P = [alg.indecomposable_projective(A, i) for i in range(2)]
    total = alg.direct_sum(P)
    c_sum = hochschild_class(total, ExactMatrix.identity(QQ, total.dim))
    parts = [hochschild_class(p, ExactMatrix.identity(QQ, p.dim)) for p in P]
    assert c_sum == parts[0] + parts[1]
    twice = hochschild_class(P[0], ExactMatrix.identity(QQ, P[0].dim).scale(Fraction(2)))
    assert twice == parts[0] + parts[0]


def test_commutators_have_zero_class():
    A = alg.path_algebra_An(2)
    a = A.component(weight=1)[0]
    assert class_of_element(A, {a: 1}).is_zero()  # a = a e1 - e1 a
    with pytest.raises(ValueError):
        hochschild_class(alg.simple_module(A, 1), ExactMatrix.identity(QQ, 1))

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bgtrace import algebra as alg
from bgtrace.algebra import AlgebraMap, QuiverError
from bgtrace.resolution import enveloping_algebra, minimal_resolution

EXAMPLES = {
    "kxk": (alg.semisimple(2), 2),
    "dual": (alg.dual_numbers(), 2),
    "x3": (alg.truncated_polynomial(3), 3),
    "A2": (alg.path_algebra_An(2), 3),
    "A3": (alg.path_algebra_An(3), 6),
    "A3z": (alg.An_with_zero_relation(), 5),
}


@pytest.mark.parametrize("name", EXAMPLES)
def test_dimensions(name):
    A, dim = EXAMPLES[name]
    assert A.dim == dim
    assert A.mul(A.unit(), {k: 1 for k in range(A.dim)}) == {k: 1 for k in range(A.dim)}


def test_composition_convention():
    A = alg.path_algebra_An(2)
    e1, e2 = A.idempotents
    a = A.component(weight=1)[0]
    assert A.basis[a].source == 0 and A.basis[a].target == 1
    assert A.product_basis(e2, a) == {a: 1}
    assert A.product_basis(a, e1) == {a: 1}
    assert A.product_basis(a, e2) == {}


def test_path_lists_are_traversal_order():
    # a : 1 -> 2, b : 2 -> 3; the path [a, b] is the product b * a
    A = alg.path_algebra_An(3)
    a, b = (k for k, x in enumerate(A.basis) if x.name in ("a1", "a2"))
    ba = A.product_basis(b, a)
    assert len(ba) == 1 and A.basis[next(iter(ba))].weight == 2
    assert A.product_basis(a, b) == {}
    assert alg.An_with_zero_relation().component(weight=2) == []


def test_truncated_polynomial_relations():
    A = alg.truncated_polynomial(3)
    x = A.component(weight=1)[0]
    x2 = A.mul({x: 1}, {x: 1})
    assert len(x2) == 1
    assert A.mul(x2, {x: 1}) == {}


def test_radical_and_centrality():
    A = alg.path_algebra_An(3)
    assert len(A.radical()) == 3
    assert A.is_central(A.unit())
    assert not A.is_central({A.idempotents[0]: 1})
    assert alg.dual_numbers().is_central({1: 1})


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(EXAMPLES)), st.data())
def test_associativity(name, data):
    A, _ = EXAMPLES[name]
    coeffs = st.integers(-3, 3)
    vec = lambda: {k: c for k in range(A.dim) if (c := data.draw(coeffs))}
    x, y, z = vec(), vec(), vec()
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))


@pytest.mark.parametrize("obj, field", [
    ({"arrows": []}, "vertices"),
    ({"vertices": ["1"], "arrows": [{"src": "1"}]}, "arrows[0].dst"),
    ({"vertices": ["1"], "arrows": [{"src": "1", "dst": "2"}]}, "arrows[0]"),
    ({"vertices": ["1"], "arrows": [{"src": "1", "dst": "1", "name": "x"}],
      "relations": [[{"path": ["y"]}]]}, "relations[0][0].path"),
    ({"vertices": ["1", "2"], "arrows": [{"src": "1", "dst": "2", "name": "a"}],
      "relations": [[{"path": ["a", "a"]}]]}, "relations[0][0].path"),
    ({"vertices": ["1"], "arrows": [{"src": "1", "dst": "1", "name": "x"},
                                    {"src": "1", "dst": "1", "name": "y", "weight": 2}],
      "relations": [[{"path": ["x"]}, {"path": ["y"]}]]}, "relations[0]"),
])
def test_malformed_quivers_name_the_field(obj, field):
    with pytest.raises(QuiverError) as err:
        alg.algebra_from_json(obj)
    assert str(err.value).startswith(field)


def test_json_commutative_relation():
    obj = {"vertices": ["1"],
           "arrows": [{"src": "1", "dst": "1", "name": "x"}, {"src": "1", "dst": "1", "name": "y"}],
           "relations": [[{"coeff": 1, "path": ["x", "y"]}, {"coeff": -1, "path": ["y", "x"]}],
                         [{"path": ["x", "x"]}], [{"path": ["y", "y"]}]]}
    A = alg.algebra_from_json(obj)
    # exterior-like algebra k[x, y]/(x^2, y^2) with xy = yx: dims 1, 2, 1
    assert [len(A.component(weight=w)) for w in range(3)] == [1, 2, 1]


def test_algebra_maps():
    A = alg.dual_numbers()
    s = AlgebraMap.weight_scaling(A, -1)
    assert s.compose(s) == AlgebraMap.identity(A)
    assert s.commutes_with(AlgebraMap.weight_scaling(A, 2))
    k3 = alg.semisimple(3)
    p = AlgebraMap.vertex_permutation(k3, [1, 2, 0])
    assert p.vertex_image(0) == 1
    assert p.compose(p).compose(p) == AlgebraMap.identity(k3)
    assert p.inverse().compose(p) == AlgebraMap.identity(k3)
    with pytest.raises(ValueError):
        # x -> 1 + x is not weight preserving
        AlgebraMap.from_images(A, {0: {0: 1}, 1: {0: 1, 1: 1}})


def test_modules_and_projectives():
    A = alg.path_algebra_An(3)
    dims = [alg.indecomposable_projective(A, i).dim for i in range(3)]
    assert sorted(dims) == [1, 2, 3]
    assert sum(dims) == A.dim
    assert alg.regular_module(A).dim == A.dim
    for i in range(3):
        assert alg.simple_module(A, i).dim == 1


@pytest.mark.parametrize("name", ["A2", "A3", "A3z"])
def test_hom_between_projectives_is_a_block(name):
    A, _ = EXAMPLES[name]
    n = len(A.vertices)
    P = [alg.indecomposable_projective(A, i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert alg.graded_hom(P[i], P[j]).dim() == len(A.component(source=i, target=j))


@pytest.mark.parametrize("name", ["dual", "A2", "A3z"])
def test_bimodules(name):
    A, _ = EXAMPLES[name]
    n = len(A.vertices)
    assert alg.diagonal_bimodule(A).dim == A.dim
    assert alg.dual_bimodule(A).dim == A.dim
    assert alg.simple_bimodule(A, 0, n - 1).dim == 1
    free = alg.free_bimodule(A, 0, 0)
    assert free.dim == len(A.component(source=0)) * len(A.component(target=0))
    both = alg.bimodule_from_json(A, ["A", "DA", {"simple": [A.vertices[0], A.vertices[0]]}])
    assert both.dim == 2 * A.dim + 1
    with pytest.raises(QuiverError):
        alg.bimodule_from_json(A, "nonsense")


def test_twisted_bimodule_changes_the_left_action():
    A = alg.dual_numbers()
    M = alg.diagonal_bimodule(A)
    T = M.twisted(AlgebraMap.weight_scaling(A, Fraction(2)))
    x = A.component(weight=1)[0]
    assert T.left[x] == M.left[x].scale(2)
    assert T.right[x] == M.right[x]


def test_enveloping_algebra_dimension():
    for name in ["dual", "A2"]:
        A, _ = EXAMPLES[name]
        assert enveloping_algebra(A).dim == A.dim ** 2


@pytest.mark.parametrize("name, lengths", [
    ("kxk", [0, 0]), ("A2", [1, 0]), ("A3z", [2, 1, 0]),
])
def test_simple_resolutions_terminate(name, lengths):
    A, _ = EXAMPLES[name]
    got = []
    for i in range(len(A.vertices)):
        res = minimal_resolution(alg.simple_module(A, i), 5)
        assert res.complete and res.is_minimal()
        got.append(res.length)
    assert sorted(got, reverse=True) == lengths


def test_dual_numbers_resolution_is_periodic():
    res = minimal_resolution(alg.simple_module(alg.dual_numbers(), 0), 4)
    assert not res.complete
    assert [t.gen_weights for t in res.terms] == [[0], [1], [2], [3], [4]]

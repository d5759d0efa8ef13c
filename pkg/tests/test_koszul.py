import pytest
from hypothesis import given, settings, strategies as st

from bgtrace import algebra as alg
from bgtrace.koszul import (bar_complex, ext_simples, ext_table, is_koszul, koszul_complex,
                            koszul_length, normalized_bar, projective_bar_complex,
                            quadratic_dual_spaces, simple_bar_complex, verify_dual_ext,
                            verify_kos_acyclic)

KOSZUL = {
    "kxk": alg.semisimple(2), "A2": alg.path_algebra_An(2), "A3": alg.path_algebra_An(3),
    "A3z": alg.An_with_zero_relation(), "dual": alg.dual_numbers(),
}
DEGREES = list(range(-3, 2))


@pytest.mark.parametrize("name, bar, proj, norm", [
    ("kxk", [32, 16, 8, 4, 2], [2, 2, 2, 2, 2], [0, 0, 0, 2, 2]),
    ("dual", [32, 16, 8, 4, 2], [32, 16, 8, 4, 2], [4, 4, 4, 4, 2]),
    ("A2", [243, 81, 27, 9, 3], [7, 6, 5, 4, 3], [0, 0, 1, 4, 3]),
])
def test_bar_term_dims_and_acyclicity(name, bar, proj, norm):
    A = KOSZUL[name]
    for build, dims in [(bar_complex, bar), (projective_bar_complex, proj),
                        (normalized_bar, norm)]:
        cx = build(A, 4)
        assert [cx.term(d) for d in DEGREES] == dims
        # the bottom degree is truncated; everything above it is exact
        assert not any(cx.cohomology_dims(range(-2, 2)).values())


def test_bar_terms_are_tensor_powers():
    A = alg.path_algebra_An(3)
    cx = bar_complex(A, 2)
    assert [cx.term(d) for d in (-1, 0, 1)] == [A.dim ** 3, A.dim ** 2, A.dim]


@pytest.mark.parametrize("name, dims", [
    ("dual", [1, 1, 1, 1, 1]), ("A2", [2, 1, 0, 0, 0]),
    ("A3", [3, 2, 0, 0, 0]), ("A3z", [3, 2, 1, 0, 0]),
])
def test_quadratic_dual_dimensions(name, dims):
    duals = quadratic_dual_spaces(KOSZUL[name], 4)
    assert [duals.dim(n) for n in range(5)] == dims


def test_quadratic_dual_blocks_follow_the_ext_orientation():
    duals = quadratic_dual_spaces(alg.An_with_zero_relation(), 2)
    assert duals.dims(1) == {(1, 0): 1, (2, 1): 1}
    assert duals.dims(2) == {(2, 0): 1}


@pytest.mark.parametrize("name", KOSZUL)
def test_koszul_complex_is_acyclic(name):
    rep = verify_kos_acyclic(KOSZUL[name], 5)
    assert rep.acyclic and rep.first_failure is None


def test_finite_koszul_lengths():
    assert koszul_length(KOSZUL["kxk"]) == (0, True)
    assert koszul_length(KOSZUL["A3"]) == (1, True)
    assert koszul_length(KOSZUL["A3z"]) == (2, True)
    assert koszul_length(KOSZUL["dual"], cap=5)[1] is False


def test_cubic_truncation_fails_in_degree_minus_one():
    A = alg.truncated_polynomial(3)
    rep = verify_kos_acyclic(A, 5)
    assert not rep.acyclic
    assert rep.first_failure == -1 and rep.cohomology[-1] == 3
    cert = is_koszul(A, 4)
    assert not cert.koszul
    assert cert.violation["degree"] == 2 and cert.violation["internal_weight"] == 3
    assert not verify_dual_ext(A, 4)["holds"]


@pytest.mark.parametrize("name", KOSZUL)
def test_dual_spaces_match_ext(name):
    rep = verify_dual_ext(KOSZUL[name], 5)
    assert rep["holds"]


@pytest.mark.parametrize("name", KOSZUL)
def test_ext_is_diagonal(name):
    cert = is_koszul(KOSZUL[name], 4)
    assert cert.koszul and cert.violation is None


def test_ext_of_dual_numbers_has_one_class_per_degree():
    ext = ext_simples(alg.dual_numbers(), 0, 0, 4)
    assert ext == {n: {n: 1} for n in range(5)}


def test_ext_table_on_the_a2_quiver():
    tab = ext_table(alg.path_algebra_An(2), 2)
    assert sum(tab[(1, 0)][1].values()) == 1
    assert sum(tab[(0, 1)][1].values()) == 0


def test_simple_bar_complex_recovers_ext():
    cx = simple_bar_complex(alg.dual_numbers(), 0, 0, 4)
    by_weight = cx.cohomology_by_weight(range(-3, 1))
    assert all(by_weight[-n] == {n: 1} for n in range(4))


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(list(KOSZUL)), st.integers(1, 4))
def test_koszul_differential_squares_to_zero(name, cap):
    # construction asserts d^2 = 0 and weight preservation
    kos = koszul_complex(KOSZUL[name], cap=cap, augmented=True)
    cx = kos.complex
    for d in range(cx.lo, cx.hi - 1):
        assert (cx.differential(d + 1) @ cx.differential(d)).is_zero()

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from bgtrace.exact import (QQ, ZZ, AbelianGroupStructure, ChainComplex, ExactMatrix, Subspace,
                           Zmod, invariant_factors, kernel_basis, rref, smith_normal_form, solve)

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


def _oracle_factors(dense):
    """Nonunit invariant factors from sympy's Smith form."""
    m = sympy.Matrix(dense)
    d = sympy_snf(m, domain=sympy.ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    return tuple(sorted(x for x in diag if x > 1))


def test_snf_example_with_torsion():
    m = ExactMatrix.from_dense(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    sf = smith_normal_form(m)
    assert sf.diagonal == (2, 6, 12)
    prod = sf.left @ m @ sf.right
    assert prod == ExactMatrix.diagonal(ZZ, [2, 6, 12])


def test_snf_zero_and_identity():
    assert smith_normal_form(ExactMatrix.zero(ZZ, 3, 2)).rank == 0
    sf = smith_normal_form(ExactMatrix.identity(ZZ, 4))
    assert sf.unit_count == 4 and sf.invariant_factors == ()


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_snf_transforms_and_divisibility(dense):
    m = ExactMatrix.from_dense(ZZ, dense, cols=len(dense[0]))
    sf = smith_normal_form(m, left=True, right=True, left_inverse=True)
    d = sf.left @ m @ sf.right
    diag = sf.diagonal
    expected = ExactMatrix.diagonal(ZZ, list(diag), rows=m.rows, cols=m.cols)
    assert d == expected
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert sf.left_inverse @ sf.left == ExactMatrix.identity(ZZ, m.rows)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_snf_matches_sympy(dense):
    m = ExactMatrix.from_dense(ZZ, dense, cols=len(dense[0]))
    assert tuple(sorted(invariant_factors(m))) == _oracle_factors(dense)
    assert smith_normal_form(m).rank == sympy.Matrix(dense).rank()


def test_snf_rejects_rational_matrix():
    with pytest.raises(ValueError):
        smith_normal_form(ExactMatrix.identity(QQ, 2))


@settings(max_examples=60, deadline=None)
@given(int_matrices(6, 6))
def test_kernel_is_annihilated_and_rank_nullity(dense):
    m = ExactMatrix.from_dense(QQ, dense, cols=len(dense[0]))
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.cols + m.rank() == m.cols


@settings(max_examples=40, deadline=None)
@given(int_matrices(4, 4), st.lists(small_ints, min_size=4, max_size=4))
def test_solve_consistent_systems(dense, x):
    m = ExactMatrix.from_dense(QQ, dense, cols=len(dense[0]))
    x = {i: v for i, v in enumerate(x[:m.cols]) if v}
    rhs = m.apply(x)
    sol = solve(m, rhs)
    assert sol is not None and m.apply(sol) == rhs


def test_solve_inconsistent():
    m = ExactMatrix.from_dense(QQ, [[1, 1], [2, 2]])
    assert solve(m, {0: 1, 1: 3}) is None


def test_rref_pivots():
    m = ExactMatrix.from_dense(QQ, [[0, 2, 4], [1, 1, 1]])
    pivots, rows = rref(m)
    assert sorted(pivots) == [0, 1]


def test_finite_field_rank():
    m = ExactMatrix.from_dense(Zmod(2), [[1, 1], [1, 1]])
    assert m.rank() == 1
    m3 = ExactMatrix.from_dense(Zmod(3), [[1, 2], [2, 1]])
    assert m3.rank() == 1
    assert ExactMatrix.from_dense(QQ, [[1, 2], [2, 1]]).rank() == 2


def test_rational_entries_are_exact():
    m = ExactMatrix.from_dense(QQ, [[Fraction(1, 3), 1], [1, 3]])
    assert m.rank() == 1
    assert (m @ m)[0, 0] == Fraction(1, 9) + 1


def test_json_roundtrip():
    m = ExactMatrix.from_dense(QQ, [[Fraction(1, 2), 0], [0, -3]])
    assert ExactMatrix.from_json(m.to_json()) == m


def test_transpose_and_stack():
    m = ExactMatrix.from_dense(ZZ, [[1, 2, 3]])
    assert m.T.shape == (3, 1)
    both = ExactMatrix.hstack([m, m])
    assert both.shape == (1, 6)
    assert ExactMatrix.vstack([m, m]).shape == (2, 3)


def test_abelian_group_normal_form():
    assert AbelianGroupStructure.from_cyclic_orders([2, 3]).torsion == (6,)
    assert AbelianGroupStructure.from_cyclic_orders([2, 2]).torsion == (2, 2)
    assert AbelianGroupStructure.from_cyclic_orders([4, 6]).torsion == (2, 12)
    assert AbelianGroupStructure.from_cyclic_orders([1, 1]).is_trivial()
    assert str(AbelianGroupStructure(1, (2,))) == "Z/2 + Z"
    assert AbelianGroupStructure(1, ()).order is None
    with pytest.raises(ValueError):
        AbelianGroupStructure(0, (2, 3))


def test_integer_cohomology_sees_torsion():
    # Z --2--> Z in degrees 0, 1
    cx = ChainComplex(ZZ, {0: 1, 1: 1}, {0: ExactMatrix.from_dense(ZZ, [[2]])})
    assert cx.cohomology(0).is_trivial()
    assert cx.cohomology(1) == AbelianGroupStructure(0, (2,))
    q = ChainComplex(QQ, {0: 1, 1: 1}, {0: ExactMatrix.from_dense(QQ, [[2]])})
    assert q.cohomology_dims() == {0: 0, 1: 0}


def test_circle_cochains():
    # simplicial circle with three vertices and three edges
    d0 = ExactMatrix.from_dense(ZZ, [[-1, 1, 0], [0, -1, 1], [1, 0, -1]])
    cx = ChainComplex(ZZ, {0: 3, 1: 3}, {0: d0})
    assert cx.cohomology(0) == AbelianGroupStructure(1, ())
    assert cx.cohomology(1) == AbelianGroupStructure(1, ())
    assert cx.euler_characteristic() == 0


def test_square_zero_is_enforced():
    one = ExactMatrix.from_dense(QQ, [[1]])
    with pytest.raises(ArithmeticError):
        ChainComplex(QQ, {0: 1, 1: 1, 2: 1}, {0: one, 1: one})


def test_weight_split_cohomology():
    d = ExactMatrix.from_dense(QQ, [[1, 0], [0, 0]])
    cx = ChainComplex(QQ, {0: 2, 1: 2}, {0: d}, weights={0: [0, 1], 1: [0, 2]})
    assert cx.cohomology_by_weight() == {0: {1: 1}, 1: {2: 1}}
    with pytest.raises(ArithmeticError):
        ChainComplex(QQ, {0: 2, 1: 2}, {0: d}, weights={0: [0, 1], 1: [1, 2]})


def test_complex_json_roundtrip():
    d0 = ExactMatrix.from_dense(ZZ, [[2]])
    cx = ChainComplex(ZZ, {0: 1, 1: 1}, {0: d0})
    back = ChainComplex.from_json(cx.to_json())
    assert back.cohomology(1) == cx.cohomology(1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(small_ints, min_size=4, max_size=4))
def test_subspace_reduce(vectors, probe):
    vecs = [{i: v for i, v in enumerate(row) if v} for row in vectors]
    s = Subspace(QQ, 4, vecs)
    for v in vecs:
        assert s.contains(v)
    p = {i: v for i, v in enumerate(probe) if v}
    r = s.reduce(p)
    diff = {i: p.get(i, 0) - r.get(i, 0) for i in range(4)}
    assert s.contains({i: v for i, v in diff.items() if v})
    assert all(i not in r for i in s.pivots)

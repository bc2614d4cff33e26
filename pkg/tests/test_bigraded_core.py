import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from bredon_quadrics.bigraded_core import (
    BiDegree, FgAbGroup, IntLattice, hnf, invariant_factors, kernel, lattice_intersect,
    left_kernel, mat_mul, preimage, quotient_group, quotient_of_free, smith_normal_form,
    solve_in,
)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def _diag_matrix(d, r, c):
    return [[d[i] if i == j and i < len(d) else 0 for j in range(c)] for i in range(r)]


def _det(m):
    return int(Matrix(m).det())


# -- examples

def test_snf_two_three():
    d, U, V = smith_normal_form([[2, 0], [0, 3]])
    assert d == [1, 6]
    assert mat_mul(mat_mul(U, [[2, 0], [0, 3]]), V) == [[1, 0], [0, 6]]


def test_snf_zero_and_identity():
    assert smith_normal_form([[0]])[0] == [0]
    assert smith_normal_form([[1, 0], [0, 1]])[0] == [1, 1]


def test_quotient_examples():
    Z2 = IntLattice.standard(2)
    assert quotient_group(Z2, IntLattice(2, [[2, 0]])) == FgAbGroup(1, (2,))
    assert quotient_group(Z2, IntLattice(2, [])) == FgAbGroup(2)
    assert quotient_group(IntLattice.standard(1), IntLattice(1, [[1]])) == FgAbGroup(0)


def test_quotient_rejects_non_sublattice():
    with pytest.raises(ValueError):
        quotient_group(IntLattice(1, [[2]]), IntLattice(1, [[1]]))


def test_intersection_examples():
    six = lattice_intersect(IntLattice(1, [[2]]), IntLattice(1, [[3]]))
    assert six.same_as(IntLattice(1, [[6]]))
    Z2 = IntLattice.standard(2)
    assert lattice_intersect(Z2, Z2).same_as(Z2)
    diag = lattice_intersect(IntLattice(2, [[1, 1]]), IntLattice(2, [[1, -1]]))
    assert diag.rank == 0


def test_group_normalisation_and_printing():
    assert FgAbGroup.from_invariants([4, 6]) == FgAbGroup(0, (2, 12))
    assert FgAbGroup.from_invariants([0, 1, 2]) == FgAbGroup(1, (2,))
    assert str(FgAbGroup(2, (2, 2))) == "Z^2 + (Z/2)^2"
    assert str(FgAbGroup(0)) == "0"
    assert FgAbGroup(1, (2,)).to_json() == {"rank": 1, "torsion": [2]}
    assert FgAbGroup(0, (2, 2, 4)).two_torsion_count == 2
    with pytest.raises(ValueError):
        FgAbGroup(0, (3, 2))
    with pytest.raises(ValueError):
        FgAbGroup(-1)


def test_bidegree_arithmetic():
    assert BiDegree(2, 1) + BiDegree(1, 1) == BiDegree(3, 2)
    assert BiDegree.of((4, -2)) == BiDegree(4, -2)


def test_linear_helpers():
    assert hnf([[2, 4], [6, 8]]) == [[2, 0], [0, 4]]
    assert solve_in([4, 6], [[2, 0], [0, 3]]) == [2, 2]
    assert solve_in([1, 0], [[2, 0]]) is None
    assert kernel([[1, 1]], 2) in ([[-1, 1]], [[1, -1]])
    assert len(left_kernel([[1, 1], [2, 2]])) == 1
    # preimage of 2Z under (x, y) -> x + y
    pre = preimage([[1], [1]], IntLattice(1, [[2]]))
    assert pre.same_as(IntLattice(2, [[1, 1], [0, 2]]))


# -- properties

@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_transform_is_exact_and_unimodular(m):
    d, U, V = smith_normal_form(m)
    r, c = len(m), len(m[0])
    assert mat_mul(mat_mul(U, m), V) == _diag_matrix(d, r, c)
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # zeros trail the nonzero entries
    assert d == nz + [0] * (len(d) - len(nz))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_agrees_with_sympy(m):
    d, _, _ = smith_normal_form(m)
    ref = sympy_snf(Matrix(m), domain=ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert sorted(x for x in d if x) == sorted(x for x in ref_diag if x)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_snf_inverse(m):
    d, U, V, Vinv = smith_normal_form(m, with_inverse=True)
    n = len(V)
    assert mat_mul(V, Vinv) == [[int(i == j) for j in range(n)] for i in range(n)]


@settings(max_examples=100, deadline=None)
@given(matrices(4, 3), st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4))
def test_quotient_invariant_under_change_of_generators(rows, mix):
    n = len(rows[0])
    sub = IntLattice(n, rows)
    g = quotient_of_free(n, rows)
    assert quotient_group(IntLattice.standard(n), sub) == g
    # append integer combinations of the generators: the lattice is unchanged
    extra = [[sum(mix[k][i] * rows[i][c] for i in range(len(rows))) for c in range(n)]
             for k in range(2)]
    assert quotient_of_free(n, rows + extra) == g
    # a unimodular change of basis of the ambient space preserves the quotient
    if n >= 2:
        shear = [[r[0] + 3 * r[1]] + list(r[1:]) for r in rows]
        assert quotient_of_free(n, shear) == g


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3), matrices(3, 3), st.lists(small, min_size=6, max_size=6))
def test_intersection_is_maximal_common_sublattice(a_rows, b_rows, coeffs):
    n = 3
    a_rows = [(r + [0, 0, 0])[:n] for r in a_rows]
    b_rows = [(r + [0, 0, 0])[:n] for r in b_rows]
    A, B = IntLattice(n, a_rows), IntLattice(n, b_rows)
    C = lattice_intersect(A, B)
    assert A.contains_lattice(C) and B.contains_lattice(C)
    # an integer combination lying in both lattices lies in the intersection
    v = [sum(c * r[k] for c, r in zip(coeffs[:3], a_rows)) for k in range(n)]
    if B.contains(v):
        assert C.contains(v)
    for r in a_rows:
        w = [6 * 6 * 6 * x for x in r]
        assert C.contains(w) == B.contains(w)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_invariant_factors_match_group(m):
    g = quotient_of_free(len(m[0]), m)
    f = invariant_factors(m)
    assert g.torsion == tuple(x for x in f if x > 1)
    assert g.rank == len(m[0]) - len([x for x in f if x])

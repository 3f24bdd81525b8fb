from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopftruss.exact import (
    Mat,
    Subspace,
    TensorIndex,
    Vec,
    format_rational,
    image_basis,
    in_span,
    kernel_basis,
    parse_rational,
    rank,
    rat_arith,
    rref,
    tensor_product,
)
from oracles import rank_by_column_elimination

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


class TestRationals:
    def test_addition(self):
        assert rat_arith(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)

    def test_normalized_on_construction(self):
        assert parse_rational("2/4") == Fraction(1, 2)
        assert format_rational(parse_rational("2/4")) == "1/2"

    def test_inverse_pair(self):
        assert rat_arith(Fraction(3, 7), Fraction(7, 3), "*") == 1

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            rat_arith(Fraction(1), Fraction(0), "/")

    @pytest.mark.parametrize("bad", ["1/0", "x", "1.5", 0.5, True, None, "1/2/3"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_accepts_int_and_plain_string(self):
        assert parse_rational(3) == 3
        assert parse_rational("-7") == -7
        assert format_rational(Fraction(-7)) == "-7"

    @given(small, small)
    def test_format_round_trip(self, a, b):
        assert parse_rational(format_rational(a)) == a
        assert rat_arith(a, b, "-") == a - b


class TestVec:
    def test_zeros_not_stored(self):
        v = Vec(3, {0: 0, 1: Fraction(2, 4)})
        assert v.support() == [1] and v[1] == Fraction(1, 2)
        assert v == Vec.from_list([0, Fraction(1, 2), 0])

    def test_arithmetic(self):
        a, b = Vec.basis(2, 0), Vec.basis(2, 1)
        assert (a + b) * 2 - a * 2 == b * 2
        assert not (a - a)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            Vec.basis(2, 0) + Vec.basis(3, 0)


class TestTensor:
    def test_basis_case(self):
        assert tensor_product(Vec.basis(2, 0), Vec.basis(2, 1)) == Vec.basis(4, 1)

    def test_zero(self):
        assert tensor_product(Vec.zero(2), Vec.from_list([1, 2])) == Vec.zero(4)

    def test_linearity(self):
        v = tensor_product(Vec.from_list([1, 1]), Vec.basis(2, 0))
        assert v == Vec.basis(4, 0) + Vec.basis(4, 2)

    def test_index_row_major(self):
        t = TensorIndex((2, 3, 4))
        assert t.size == 24
        assert t.flatten((1, 2, 3)) == 1 * 12 + 2 * 4 + 3
        assert all(t.flatten(t.unflatten(k)) == k for k in range(24))


class TestRref:
    def test_identity(self):
        r, piv = rref(Mat.identity(2))
        assert r == Mat.identity(2) and piv == (0, 1)

    def test_dependent_rows(self):
        r, piv = rref(Mat.from_rows([[1, 2], [2, 4]]))
        assert r == Mat.from_rows([[1, 2], [0, 0]]) and rank(Mat.from_rows([[1, 2], [2, 4]])) == 1

    def test_zero_matrix(self):
        z = Mat.zero(3, 3)
        assert image_basis(z) == []
        assert kernel_basis(z) == [Vec.basis(3, i) for i in range(3)]

    def test_identity_image_kernel(self):
        assert image_basis(Mat.identity(3)) == [Vec.basis(3, i) for i in range(3)]
        assert kernel_basis(Mat.identity(3)) == []

    def test_rank_one(self):
        m = Mat.from_rows([[1, 1], [1, 1]])
        assert image_basis(m) == [Vec.from_list([1, 1])]
        (k,) = kernel_basis(m)
        assert in_span([Vec.from_list([1, -1])], k)

    @settings(max_examples=200, deadline=None)
    @given(matrices())
    def test_rank_matches_independent_oracle(self, rows):
        assert rank(Mat.from_rows(rows)) == rank_by_column_elimination(rows)

    @settings(max_examples=100, deadline=None)
    @given(matrices())
    def test_rank_nullity(self, rows):
        m = Mat.from_rows(rows)
        ker = kernel_basis(m)
        assert rank(m) + len(ker) == m.cols
        assert all(not m.apply(v) for v in ker)

    @settings(max_examples=100, deadline=None)
    @given(matrices())
    def test_rref_is_reduced(self, rows):
        r, piv = rref(Mat.from_rows(rows))
        rr = r.to_rows()
        for k, p in enumerate(piv):
            assert rr[k][p] == 1
            assert all(rr[i][p] == 0 for i in range(len(rr)) if i != k)
            assert all(x == 0 for x in rr[k][:p])


class TestSubspace:
    @settings(max_examples=100, deadline=None)
    @given(matrices(5, 5), st.lists(small, min_size=5, max_size=5))
    def test_membership_agrees_with_rank_test(self, rows, coeffs):
        vecs = [Vec.from_list(r) for r in rows]
        dim = len(rows[0])
        sp = Subspace.span(dim, vecs)
        inside = Vec.zero(dim)
        for c, v in zip(coeffs, vecs):
            inside = inside + v * c
        assert sp.contains(inside)
        coords = sp.coordinates(inside)
        assert sp.embedding().apply(Vec.from_list(coords)) == inside
        probe = Vec.from_list([c for c in coeffs[:dim]] + [0] * (dim - len(coeffs[:dim])))
        assert sp.contains(probe) == in_span(vecs, probe)

    def test_tensor_of_subspaces(self):
        a = Subspace.span(2, [Vec.from_list([1, 1])])
        t = a.tensor(a)
        assert t.rank == 1
        assert t.contains(Vec.from_list([1, 1, 1, 1]))
        assert not t.contains(Vec.basis(4, 0))

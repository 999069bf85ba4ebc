from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from relcentral.exactlin import (
    DimensionMismatch,
    RatMatrix,
    Subspace,
    image,
    image_of,
    intersect,
    inverse,
    kernel,
    preimage,
    quotient_map,
    rational_str,
    right_inverse,
    sum_spaces,
    to_rational,
    vec,
)

import oracles

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return RatMatrix.from_rows(rows, c)


@st.composite
def subspaces(draw, n):
    k = draw(st.integers(0, n))
    vs = draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=k, max_size=k))
    return Subspace.span(n, vs)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in m.row(i)] for i in range(m.rows)])


def test_kernel_of_small_example():
    k = kernel(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert k.dim == 1
    # (-2, 1) and the normalised (1, -1/2) span the same line
    assert k == Subspace.span(2, [vec([-2, 1])])
    assert k.vectors == [vec([1, "-1/2"])]


def test_rational_strings_are_canonical():
    assert rational_str(Fraction(6, -4)) == "-3/2"
    assert rational_str(Fraction(4, 2)) == "2"
    assert to_rational(" 3/9 ") == Fraction(1, 3)
    with pytest.raises(TypeError):
        to_rational(True)


@given(matrices())
def test_rank_nullity_matches_sympy(m):
    r = to_sympy(m).rank()
    assert image(m).dim == r
    assert kernel(m).dim == m.cols - r
    for v in kernel(m).vectors:
        assert not any(m.apply(v))


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n))))
def test_sum_and_meet_dimensions(pair):
    a, b = pair
    s, i = sum_spaces(a, b), intersect(a, b)
    assert s.dim + i.dim == a.dim + b.dim
    assert s.contains(a) and s.contains(b)
    assert a.contains(i) and b.contains(i)


@given(st.integers(1, 5).flatmap(subspaces))
def test_quotient_map_kills_exactly_the_subspace(s):
    n = s.ambient_dim
    proj, q, section = quotient_map(n, s)
    assert q == n - s.dim
    assert kernel(proj) == s
    if q:
        assert proj @ section == RatMatrix.identity(q)


@given(matrices(), st.data())
def test_preimage_and_image(m, data):
    s = data.draw(subspaces(m.rows))
    pre = preimage(m, s)
    assert s.contains(image_of(m, pre))
    assert pre.contains(kernel(m))
    # nothing outside the preimage maps into s
    for v in Subspace.full(m.cols).vectors:
        assert pre.contains_vector(v) == s.contains_vector(m.apply(v))


@given(matrices())
def test_right_inverse_when_surjective(m):
    if image(m).dim < m.rows:
        with pytest.raises(ValueError):
            right_inverse(m)
        return
    assert m @ right_inverse(m) == RatMatrix.identity(m.rows)


def test_inverse_and_mismatch():
    m = RatMatrix.from_rows([[2, 1], [1, 1]])
    assert m @ inverse(m) == RatMatrix.identity(2)
    with pytest.raises(ValueError):
        inverse(RatMatrix.from_rows([[1, 2], [2, 4]]))
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(2), Subspace.full(3))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n))))
def test_equality_is_span_equality(pair):
    a, b = pair
    n = a.ambient_dim
    assert (a == b) == oracles.same_span(a.vectors, b.vectors, n)

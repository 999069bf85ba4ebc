import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from relcentral import catalog, leib, samples
from relcentral.exactlin import RatMatrix, Subspace, vec
from relcentral.leib import (
    AlgebraError,
    AlgebraHom,
    InputNotLeibniz,
    LeibnizAlgebra,
    NotAHomomorphism,
    algebra_from_json,
    classical_commutator,
    fiber_product,
    ideal_closure,
    is_leibniz,
    is_lie,
    quotient_algebra,
    unit_ideal,
    validate_algebra,
    z_lie,
)

import oracles

LIE = ["sl2", "h3", "gl2", "aff1", "sl2_t2", "sl2_V", "sl2_VV", "ab2", "sl2_sl2"]
NON_LIE = ["ell2", "sl2_hemi"]


@pytest.mark.parametrize("name", LIE)
def test_lie_catalog(name):
    assert is_lie(catalog.algebra(name))


@pytest.mark.parametrize("name", NON_LIE)
def test_leibniz_but_not_lie(name):
    g = catalog.algebra(name)
    verdict = validate_algebra(g)
    assert verdict["is_leibniz"] and not verdict["is_lie"]
    assert verdict["witness"] is not None


def test_non_leibniz_example_reports_basis_triple():
    # [e2, e1] = e1 breaks the right Leibniz identity at (e2, e2, e1)
    g = algebra_from_json({"dim": 2, "brackets": [{"left": 1, "right": 0, "value": [1, 0]}]})
    verdict = validate_algebra(g)
    assert verdict == {"is_leibniz": False, "is_lie": False, "witness": [1, 1, 0]}
    with pytest.raises(InputNotLeibniz):
        leib.reflector_lie(g)


def test_bad_bracket_input():
    with pytest.raises(AlgebraError):
        algebra_from_json({"dim": 2, "brackets": [{"left": 0, "right": 2, "value": [1, 0]}]})
    with pytest.raises(AlgebraError):
        algebra_from_json({"dim": 2, "brackets": [{"left": 0, "right": 0}]})


def test_ell2_reflections():
    g = catalog.ell2()
    e2 = Subspace.span(2, [vec([0, 1])])
    assert unit_ideal(g, "lie") == e2
    assert unit_ideal(g, "vect") == e2
    assert unit_ideal(g, "vect_lie") == e2
    lie, unit, _ = leib.reflector_lie(g)
    assert lie.dim == 1 and is_lie(lie)
    assert z_lie(g).space == e2


def test_sl2_is_perfect_and_centreless():
    g = catalog.sl2()
    assert leib.is_perfect(g)
    assert leib.centre(g).dim == 0
    assert leib.is_perfect(catalog.sl2_truncated())
    assert not leib.is_perfect(catalog.heisenberg())


def test_hom_check_reports_a_pair():
    g = catalog.sl2()
    bad = AlgebraHom(g, g, RatMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 1]]))
    with pytest.raises(NotAHomomorphism) as e:
        bad.check()
    assert len(e.value.witness) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_basis_change_preserves_identities(seed):
    rng = random.Random(seed)
    g = rng.choice(samples.lie_pool(5) + tuple(samples.leibniz_pool()))
    h = samples.random_basis_change(rng, g)
    assert is_leibniz(h)
    assert is_lie(h) == is_lie(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_ideal_closure_matches_oracle(seed):
    rng = random.Random(seed)
    g = rng.choice(samples.lie_pool(5) + tuple(samples.leibniz_pool()))
    seed_space = Subspace.span(g.dim, [samples.random_vector(rng, g.dim, 1)])
    got = ideal_closure(g, seed_space)
    want = oracles.ideal_closure(oracles.table_of(g), seed_space.vectors)
    assert oracles.same_span(got.vectors, want, g.dim)
    assert leib.is_ideal(g, got)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_quotient_and_commutator(seed):
    f = samples.leibniz_surjections(1, seed)[0]
    g = f.source
    f.check()
    assert f.is_surjective()
    k = f.kernel()
    want = oracles.commutator_ideal(oracles.table_of(g), k.vectors)
    assert oracles.same_span(classical_commutator(g, k).vectors, want, g.dim)


def test_kernel_pair_projections_agree():
    g = catalog.heisenberg()
    _, f, _ = quotient_algebra(g, Subspace.span(3, [vec([0, 0, 1])]))
    r, p0, p1 = fiber_product(f, f)
    assert r.dim == 4
    for v in Subspace.full(r.dim).vectors:
        assert f(p0(v)) == f(p1(v))


def test_brackets_are_bilinear():
    g = catalog.sl2()
    x, y = vec([1, 2, 0]), vec([0, "1/2", 3])
    lhs = g.bracket(tuple(2 * a for a in x), y)
    assert lhs == tuple(2 * a for a in g.bracket(x, y))
    assert g.bracket(x, x) == (Fraction(0),) * 3
    assert isinstance(g, LeibnizAlgebra)

import pytest
from hypothesis import given, settings, strategies as st

from relcentral import catalog, fingrp
from relcentral.fingrp import (
    NotAssociative,
    NotLatinSquare,
    SizeGuardExceeded,
    centre,
    commutator_subgroup,
    derived_subgroup,
    enumerate_homs,
    fiber_product,
    is_perfect,
    normal_closure,
    normal_subgroups,
    quotient_group,
    validate_table,
)

import oracles

NAMES = sorted(catalog.GROUPS)
# (order, |derived|, |centre|, number of normal subgroups)
GOLDEN = {
    "C6": (6, 1, 6, 4),
    "S3": (6, 3, 1, 3),
    "D4": (8, 2, 2, 6),
    "Q8": (8, 2, 2, 6),
    "A4": (12, 4, 1, 3),
    "Dic3": (12, 3, 2, 5),
    "S4": (24, 12, 1, 4),
    "SL23": (24, 8, 2, 4),
    "A5": (60, 60, 1, 2),
}


@pytest.mark.parametrize("name", NAMES)
def test_catalog_tables_are_groups(name):
    g = catalog.group(name)
    assert validate_table(g.table).order == g.order


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_group_invariants(name):
    g = catalog.group(name)
    order, der, z, nn = GOLDEN[name]
    assert g.order == order
    assert derived_subgroup(g).order == der
    assert centre(g).order == z
    assert len(normal_subgroups(g)) == nn


def test_perfect_groups():
    assert is_perfect(catalog.group("A5"))
    assert is_perfect(catalog.group("SL25"))
    assert not is_perfect(catalog.group("S4"))
    assert centre(catalog.group("SL25")).order == 2


def test_invalid_tables_report_witnesses():
    with pytest.raises(NotLatinSquare) as e:
        validate_table([[0, 1], [1, 1]])
    assert e.value.witness == {"row": 1}
    # a Latin square with identity 0 that is not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative) as e:
        validate_table(table)
    a, b, c = e.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


@pytest.mark.parametrize("src,dst", [("C4", "C2"), ("S3", "C2"), ("V4", "S3"), ("C6", "S3"), ("S3", "S3")])
def test_hom_enumeration_matches_brute_force(src, dst):
    a, b = catalog.group(src), catalog.group(dst)
    got = sorted(h.images for h in enumerate_homs(a, b))
    assert got == sorted(oracles.all_homs(a, b))


def test_hom_enumeration_guard():
    with pytest.raises(SizeGuardExceeded):
        enumerate_homs(catalog.group("A5"), catalog.group("C2"), guard=10)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4", "Dic3", "S4", "SL23"]), st.data())
def test_commutator_subgroup_matches_brute_force(name, data):
    g = catalog.group(name)
    n = data.draw(st.sampled_from(normal_subgroups(g)))
    got = commutator_subgroup(n, g.whole())
    assert set(got.elements) == oracles.group_commutator(g, n.elements, range(g.order))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4", "S4"]), st.data())
def test_quotient_has_the_right_kernel(name, data):
    g = catalog.group(name)
    n = data.draw(st.sampled_from(normal_subgroups(g)))
    q, p = quotient_group(g, n)
    p.check()
    assert q.order * n.order == g.order
    assert p.kernel().elements == n.elements


@given(st.sampled_from(["S3", "D4", "A4"]), st.integers(0, 23))
def test_normal_closure_is_normal_and_minimal(name, x):
    g = catalog.group(name)
    x %= g.order
    n = normal_closure(g, [x])
    assert n.is_normal() and x in n
    conj = {g.conj(h, x) for h in range(g.order)}
    assert set(n.elements) == oracles.closure(g, conj)


def test_fiber_product_of_a_kernel_pair():
    g = catalog.group("S3")
    _, p = quotient_group(g, derived_subgroup(g))
    r, p0, p1 = fiber_product(p, p)
    assert r.order == 18
    for x in range(r.order):
        assert p.images[p0.images[x]] == p.images[p1.images[x]]


def test_automorphism_counts():
    assert len(fingrp.automorphisms(catalog.group("Q8"))) == 24
    assert len(fingrp.automorphisms(catalog.group("S3"))) == 6
    assert len(fingrp.automorphisms(catalog.group("V4"))) == 6

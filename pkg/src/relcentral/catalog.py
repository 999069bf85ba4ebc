"""Named groups and algebras used by tests, fixtures and the CLI ``builtin`` references."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .fingrp import FiniteGroup, direct_product, group_from_elements
from .leib import LeibnizAlgebra, abelian, direct_sum

# ---------------------------------------------------------------- groups


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], 0, [f"c{a}" for a in range(n)])


@lru_cache(maxsize=None)
def metacyclic(m: int, n: int, r: int) -> FiniteGroup:
    """C_m x| C_n with the generator of C_n acting by a -> r a; pairs (a, b) in input order."""
    if pow(r, n, m) != 1 % m:
        raise ValueError("r must have order dividing n modulo m")
    elems = [(a, b) for b in range(n) for a in range(m)]

    def mul(x, y):
        a, b = x
        c, d = y
        return ((a + pow(r, b, m) * c) % m, (b + d) % n)

    return group_from_elements(elems, mul)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    return metacyclic(n, 2, n - 1)


def _perm_mul(p, q):
    # (p q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def _perm_group(gens, degree):
    from .fingrp import generate_elements

    ident = tuple(range(degree))
    elems = sorted(generate_elements(gens, _perm_mul, ident))
    return group_from_elements(elems, _perm_mul)


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return _perm_group(gens, n)


@lru_cache(maxsize=None)
def alternating(n: int) -> FiniteGroup:
    # generated by the 3-cycles (0 1 k)
    gens = []
    for k in range(2, n):
        g = list(range(n))
        g[0], g[1], g[k] = 1, k, 0
        gens.append(tuple(g))
    return _perm_group(gens, n)


def _mat_mul(p: int):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    return mul


@lru_cache(maxsize=None)
def special_linear(p: int) -> FiniteGroup:
    """SL(2, p) for a prime p."""
    elems = [m for m in iproduct(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]
    elems.sort()
    return group_from_elements(elems, _mat_mul(p))


@lru_cache(maxsize=None)
def quaternion() -> FiniteGroup:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, axis)
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, a) for s in (1, -1) for a in range(4)]

    def mul(x, y):
        s, a = table[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return group_from_elements(elems, mul, names)


@lru_cache(maxsize=None)
def binary_tetrahedral() -> FiniteGroup:
    return special_linear(3)


def product(*groups: FiniteGroup) -> FiniteGroup:
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)[0]
    return out


@lru_cache(maxsize=None)
def _klein() -> FiniteGroup:
    return product(cyclic(2), cyclic(2))


GROUPS = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C5": lambda: cyclic(5),
    "C6": lambda: cyclic(6),
    "C8": lambda: cyclic(8),
    "V4": _klein,
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "D5": lambda: dihedral(5),
    "D6": lambda: dihedral(6),
    "Q8": quaternion,
    "Dic3": lambda: metacyclic(3, 4, 2),
    "A4": lambda: alternating(4),
    "S4": lambda: symmetric(4),
    "SL23": binary_tetrahedral,
    "A5": lambda: alternating(5),
    "SL25": lambda: special_linear(5),
}


def group(name: str) -> FiniteGroup:
    try:
        return GROUPS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin group {name!r}") from None


# ---------------------------------------------------------------- algebras


def _alg(dim, entries, names=None) -> LeibnizAlgebra:
    brackets = {}
    for (i, j), coords in entries.items():
        v = [Fraction(0)] * dim
        for k, c in coords.items():
            v[k] = Fraction(c)
        brackets[(i, j)] = v
    return LeibnizAlgebra(dim, brackets, names)


def _antisym(dim, entries, names=None) -> LeibnizAlgebra:
    full = {}
    for (i, j), coords in entries.items():
        full[(i, j)] = coords
        full[(j, i)] = {k: -c for k, c in coords.items()}
    return _alg(dim, full, names)


def sl2() -> LeibnizAlgebra:
    # h, e, f
    return _antisym(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, ["h", "e", "f"])


def heisenberg() -> LeibnizAlgebra:
    # x, y, z with [x, y] = z
    return _antisym(3, {(0, 1): {2: 1}}, ["x", "y", "z"])


def ell2() -> LeibnizAlgebra:
    """Two-dimensional Leibniz algebra with [e1, e1] = e2."""
    return _alg(2, {(0, 0): {1: 1}}, ["e1", "e2"])


def gl2() -> LeibnizAlgebra:
    # h, e, f, c with c central
    return _antisym(4, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, ["h", "e", "f", "c"])


def aff1() -> LeibnizAlgebra:
    return _antisym(2, {(0, 1): {1: 1}}, ["a", "b"])


def truncated_current(g: LeibnizAlgebra, k: int = 2) -> LeibnizAlgebra:
    """g (x) Q[t]/(t^k) with [a t^p, b t^q] = [a, b] t^(p+q); basis a t^p ordered by p, then a."""
    n = g.dim
    brackets = {}
    for p in range(k):
        for q in range(k):
            if p + q >= k:
                continue
            for (i, j), v in g.table.items():
                w = [Fraction(0)] * (n * k)
                for a, x in enumerate(v):
                    w[(p + q) * n + a] = x
                brackets[(p * n + i, q * n + j)] = w
    names = None
    if g.basis_names:
        names = [f"{b}t{p}" if p else b for p in range(k) for b in g.basis_names]
    return LeibnizAlgebra(n * k, brackets, names)


def sl2_truncated() -> LeibnizAlgebra:
    return truncated_current(sl2(), 2)


def sl2_module(copies: int = 1) -> LeibnizAlgebra:
    """sl2 semidirect with copies of the natural 2-dimensional module."""
    # h.v1 = v1, h.v2 = -v2, e.v2 = v1, f.v1 = v2
    action = {(0, 0): {0: 1}, (0, 1): {1: -1}, (1, 1): {0: 1}, (2, 0): {1: 1}}
    dim = 3 + 2 * copies
    entries = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
    for c in range(copies):
        off = 3 + 2 * c
        for (x, v), coords in action.items():
            entries[(x, off + v)] = {off + k: val for k, val in coords.items()}
    names = ["h", "e", "f"] + [f"v{c}{i}" for c in range(copies) for i in (1, 2)]
    return _antisym(dim, entries, names)


def hemisemidirect(g: LeibnizAlgebra, copies: int = 1) -> LeibnizAlgebra:
    """g + M for M = copies of the natural sl2 module, with [(x, m), (y, n)] = ([x, y], m.y).

    Here m.y is the right action m.y = -y.m. Only the sl2 case is built.
    """
    if g.dim != 3:
        raise ValueError("hemisemidirect product is built for sl2 only")
    action = {(0, 0): {0: 1}, (0, 1): {1: -1}, (1, 1): {0: 1}, (2, 0): {1: 1}}
    dim = 3 + 2 * copies
    entries: dict = {}
    for (i, j), v in g.table.items():
        entries[(i, j)] = {k: x for k, x in enumerate(v) if x}
    for c in range(copies):
        off = 3 + 2 * c
        for (x, v), coords in action.items():
            entries[(off + v, x)] = {off + k: -val for k, val in coords.items()}
    return _alg(dim, entries)


ALGEBRAS = {
    "sl2": sl2,
    "h3": heisenberg,
    "ell2": ell2,
    "gl2": gl2,
    "aff1": aff1,
    "sl2_t2": sl2_truncated,
    "sl2_V": lambda: sl2_module(1),
    "sl2_VV": lambda: sl2_module(2),
    "sl2_hemi": lambda: hemisemidirect(sl2(), 1),
    "ab1": lambda: abelian(1),
    "ab2": lambda: abelian(2),
    "ab3": lambda: abelian(3),
    "sl2_sl2": lambda: direct_sum(sl2(), sl2()),
}


def algebra(name: str) -> LeibnizAlgebra:
    try:
        return ALGEBRAS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin algebra {name!r}") from None

"""Seeded generators of small groups, algebras, precrossed modules and surjections between them."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from . import catalog, fingrp, leib, xmod
from .exactlin import RatMatrix, Subspace
from .fingrp import FiniteGroup, GroupHom, Subgroup

# ------------------------------------------------------------------ groups

SMALL_GROUPS = ["C1", "C2", "C3", "C4", "C5", "C6", "C8", "V4", "S3", "D4", "D5", "D6", "Q8", "Dic3", "A4", "S4", "SL23"]


@lru_cache(maxsize=None)
def _group_pool(max_order: int) -> tuple[FiniteGroup, ...]:
    pool = [catalog.group(n) for n in SMALL_GROUPS]
    pool += [catalog.product(catalog.cyclic(2), catalog.group(n)) for n in ("S3", "C4", "Q8", "D4", "A4")]
    pool += [catalog.product(catalog.cyclic(3), catalog.group("S3"))]
    return tuple(g for g in pool if g.order <= max_order)


@lru_cache(maxsize=None)
def normal_subgroups(g: FiniteGroup) -> tuple[Subgroup, ...]:
    return tuple(fingrp.normal_subgroups(g))


def random_group_surjection(rng: random.Random, max_order: int = 24) -> GroupHom:
    g = rng.choice(_group_pool(max_order))
    n = rng.choice(normal_subgroups(g))
    return fingrp.quotient_group(g, n)[1]


def group_surjections(count: int, seed: int = 0, max_order: int = 24) -> list[GroupHom]:
    rng = random.Random(seed)
    return [random_group_surjection(rng, max_order) for _ in range(count)]


def split_group_extensions() -> list[GroupHom]:
    """Projections A x M -> A and semidirect retractions, all split by construction."""
    out = []
    for a in ("C1", "C2", "S3", "A4", "Q8"):
        for m in ("C1", "C2", "C3", "V4", "S3"):
            ga, gm = catalog.group(a), catalog.group(m)
            if ga.order * gm.order <= 48:
                out.append(fingrp.direct_product(ga, gm)[1])
    # S3 -> C2, D4 -> C2, A4 -> C3, S4 -> S3: each splits
    for name in ("S3", "D4", "D5", "A4", "S4", "Dic3"):
        g = catalog.group(name)
        for n in normal_subgroups(g):
            p = fingrp.quotient_group(g, n)[1]
            sections = fingrp.enumerate_homs(p.target, g, allowed=_fibres(p))
            if sections:
                out.append(p)
    return out


def _fibres(p: GroupHom):
    fib: dict[int, list[int]] = {}
    for x, y in enumerate(p.images):
        fib.setdefault(y, []).append(x)
    return lambda a: fib[a]


# ------------------------------------------------------------------ algebras


def random_invertible(rng: random.Random, n: int, spread: int = 2) -> RatMatrix:
    while True:
        m = RatMatrix.from_rows([[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)], n)
        if m.rank() == n:
            return m


def random_vector(rng: random.Random, n: int, spread: int = 2) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-spread, spread)) for _ in range(n))


def strictly_upper(n: int) -> leib.LeibnizAlgebra:
    """Strictly upper triangular n x n matrices, basis E_ij (i < j) in lexicographic order."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = {p: k for k, p in enumerate(pairs)}
    d = len(pairs)
    brackets = {}
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            v = [Fraction(0)] * d
            if j == k:
                v[idx[(i, l)]] += 1
            if l == i:
                v[idx[(k, j)]] -= 1
            if any(v):
                brackets[(a, b)] = v
    return leib.LeibnizAlgebra(d, brackets)


@lru_cache(maxsize=None)
def lie_pool(max_dim: int = 6) -> tuple[leib.LeibnizAlgebra, ...]:
    c = catalog
    ds = leib.direct_sum
    pool = [
        c.sl2(), c.heisenberg(), c.aff1(), c.gl2(), leib.abelian(1), leib.abelian(2), leib.abelian(3),
        ds(c.aff1(), c.aff1()), ds(c.heisenberg(), leib.abelian(1)), ds(c.sl2(), leib.abelian(1)),
        ds(c.sl2(), c.aff1()), c.sl2_module(1), c.sl2_truncated(), ds(c.sl2(), c.sl2()),
        ds(c.heisenberg(), c.aff1()), strictly_upper(4), ds(c.sl2(), c.heisenberg()),
    ]
    return tuple(g for g in pool if g.dim <= max_dim)


def hemisemidirect_scalar(lam: int, base: str = "ab1") -> leib.LeibnizAlgebra:
    """Lie algebra L plus a line m on which L acts on the right: [m, x] = lam(x) m, [x, m] = 0."""
    if base == "ab1":
        return leib.LeibnizAlgebra(2, {(1, 0): [0, lam]})
    # aff1 = span{a, b}, [a, b] = b; characters vanish on b
    return leib.LeibnizAlgebra(3, {(0, 1): [0, 1, 0], (1, 0): [0, -1, 0], (2, 0): [0, 0, lam]})


def random_two_step(rng: random.Random, v: int, w: int) -> leib.LeibnizAlgebra:
    """V + W with [V, V] -> W an arbitrary bilinear map and W annihilating everything."""
    n = v + w
    brackets = {}
    for i in range(v):
        for j in range(v):
            coords = [Fraction(0)] * v + [Fraction(rng.randint(-1, 1)) for _ in range(w)]
            if any(coords):
                brackets[(i, j)] = coords
    return leib.LeibnizAlgebra(n, brackets)


def leibniz_pool() -> list[leib.LeibnizAlgebra]:
    c = catalog
    ds = leib.direct_sum
    return [
        c.ell2(), hemisemidirect_scalar(1), hemisemidirect_scalar(2, "aff1"), ds(c.ell2(), leib.abelian(1)),
        ds(c.ell2(), c.ell2()), ds(c.ell2(), c.aff1()), c.hemisemidirect(c.sl2(), 1),
        ds(hemisemidirect_scalar(-1), c.ell2()), ds(c.ell2(), c.sl2()), ds(hemisemidirect_scalar(1), c.aff1()),
    ]


def random_basis_change(rng: random.Random, g: leib.LeibnizAlgebra) -> leib.LeibnizAlgebra:
    if g.dim == 0:
        return g
    return leib.change_basis(g, random_invertible(rng, g.dim, 1))[0]


def random_ideal(rng: random.Random, g: leib.LeibnizAlgebra, bias: Subspace | None = None) -> Subspace:
    """Ideal generated by one or two random vectors, drawn from ``bias`` when given."""
    k = rng.randint(1, 2)
    if bias is not None and bias.dim:
        vs = [sum_combo(rng, bias.vectors, g.dim) for _ in range(k)]
    else:
        vs = [random_vector(rng, g.dim, 1) for _ in range(k)]
    return leib.ideal_closure(g, Subspace.span(g.dim, vs))


def sum_combo(rng: random.Random, vectors, n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    for v in vectors:
        c = rng.randint(-2, 2)
        for i, x in enumerate(v):
            out[i] += c * x
    return tuple(out)


def lie_surjections(count: int, seed: int = 0, max_dim: int = 6) -> list[leib.AlgebraHom]:
    rng = random.Random(seed)
    pool = lie_pool(max_dim)
    out = []
    while len(out) < count:
        g = random_basis_change(rng, rng.choice(pool))
        bias = leib.centre(g) if rng.random() < 0.3 else None
        k = random_ideal(rng, g, bias)
        out.append(leib.quotient_algebra(g, k)[1])
    return out


def leibniz_surjections(count: int, seed: int = 0, max_dim: int = 5) -> list[leib.AlgebraHom]:
    rng = random.Random(seed)
    fixed = [g for g in leibniz_pool() if g.dim <= max_dim]
    out = []
    while len(out) < count:
        if rng.random() < 0.3:
            v = rng.randint(1, 3)
            g = random_two_step(rng, v, rng.randint(1, max_dim - v))
        else:
            g = rng.choice(fixed)
        g = random_basis_change(rng, g)
        bias = leib.z_lie(g).space if rng.random() < 0.4 else None
        k = random_ideal(rng, g, bias)
        out.append(leib.quotient_algebra(g, k)[1])
    return out


def lie_short_exact_sequences(count: int, seed: int = 0, max_dim: int = 6) -> list[leib.AlgebraHom]:
    """Named sequences first (centre of h3, split sums), then random quotients."""
    c = catalog
    h3 = c.heisenberg()
    out = [leib.quotient_algebra(h3, Subspace.span(3, [(0, 0, 1)]))[1]]
    s = leib.direct_sum(c.sl2(), leib.abelian(2))
    out.append(leib.quotient_algebra(s, Subspace.span(5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]))[1])
    g = c.sl2_module(1)
    out.append(leib.quotient_algebra(g, Subspace.span(5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]))[1])
    t = c.sl2_truncated()
    out.append(leib.quotient_algebra(t, Subspace.span(6, [tuple(int(i == k) for i in range(6)) for k in (3, 4, 5)]))[1])
    out += lie_surjections(max(0, count - len(out)), seed, max_dim)
    return out


def split_algebra_extensions(seed: int = 0) -> list[tuple[leib.AlgebraHom, str]]:
    """Projections A + M -> A (M abelian) and retractions of semidirect sums, with the reflector to test."""
    c = catalog
    out = []
    for a in (c.sl2(), c.aff1(), c.heisenberg(), leib.abelian(1)):
        for m in (leib.abelian(1), leib.abelian(2)):
            total = leib.direct_sum(a, m)
            n = a.dim
            proj = RatMatrix.from_rows([[int(i == j) for j in range(total.dim)] for i in range(n)], total.dim)
            out.append((leib.AlgebraHom(total, a, proj), "vect"))
    # sl2 + V -> sl2, aff1 -> ab1, h3 + ab1 -> h3: split projections with non-trivial kernels
    g = c.sl2_module(1)
    out.append((leib.quotient_algebra(g, Subspace.span(5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]))[1], "vect"))
    out.append((leib.quotient_algebra(c.aff1(), Subspace.span(2, [(0, 1)]))[1], "vect"))
    # Leibniz: ell2 + ab1 -> ell2, hemisemidirect -> sl2
    e = leib.direct_sum(c.ell2(), leib.abelian(1))
    out.append((leib.quotient_algebra(e, Subspace.span(3, [(0, 0, 1)]))[1], "lie"))
    out.append((leib.quotient_algebra(e, Subspace.span(3, [(0, 0, 1)]))[1], "vect_lie"))
    hs = c.hemisemidirect(c.sl2(), 1)
    out.append((leib.quotient_algebra(hs, Subspace.span(5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]))[1], "lie"))
    out.append((leib.quotient_algebra(hs, Subspace.span(5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]))[1], "vect_lie"))
    return out


# ------------------------------------------------------------------ precrossed modules

PXM_GROUPS = ["C1", "C2", "C3", "C4", "V4", "C6", "S3", "D4", "Q8"]


@lru_cache(maxsize=None)
def _aut_group(t: FiniteGroup) -> tuple[FiniteGroup, tuple[GroupHom, ...]]:
    auts = fingrp.automorphisms(t)
    index = {a.images: i for i, a in enumerate(auts)}
    table = [[index[a.compose(b).images] for b in auts] for a in auts]
    ident = index[tuple(range(t.order))]
    return FiniteGroup(table, ident), tuple(auts)


@lru_cache(maxsize=None)
def precrossed_modules(t_name: str, g_name: str) -> tuple[xmod.PrecrossedModule, ...]:
    """Every precrossed module structure on the pair (T, G)."""
    T, G = catalog.group(t_name), catalog.group(g_name)
    aut, auts = _aut_group(T)
    out = []
    actions = fingrp.enumerate_homs(G, aut)
    boundaries = fingrp.enumerate_homs(T, G)
    for a in actions:
        table = [auts[a.images[g]].images for g in range(G.order)]
        for d in boundaries:
            ok = all(d.images[table[g][t]] == G.conj(g, d.images[t]) for g in range(G.order) for t in range(T.order))
            if ok:
                out.append(xmod.PrecrossedModule(T, G, d, table))
    return tuple(out)


def normal_pxsubs(x: xmod.PrecrossedModule) -> list[xmod.PXSub]:
    out = []
    for m in normal_subgroups(x.T):
        for h in normal_subgroups(x.G):
            s = xmod.PXSub(m, h)
            if xmod.normal_sub_witness(x, s) is None:
                out.append(s)
    return out


def pxm_surjections(count: int, seed: int = 0, max_order: int = 12) -> list[xmod.XModHom]:
    rng = random.Random(seed)
    names = [n for n in PXM_GROUPS if catalog.group(n).order <= max_order]
    out = []
    while len(out) < count:
        x = rng.choice(precrossed_modules(rng.choice(names), rng.choice(names)))
        s = rng.choice(normal_pxsubs(x))
        out.append(xmod.quotient_pxm(x, s)[1])
    return out


def central_xmod_quotients() -> list[xmod.XModHom]:
    """Crossed modules divided by a central subgroup of T fixed by the action."""
    out = []
    for t in ("Q8", "D4", "C4", "V4", "S3", "C6"):
        x = xmod.conjugation_module(catalog.group(t))
        z = fingrp.centre(x.T)
        fixed = [u for u in z.elements if all(x.act(g, u) == u for g in range(x.G.order))]
        # the boundary is the identity, so the G-part must contain the same elements
        s = xmod.PXSub(Subgroup(x.T, tuple(fixed)), Subgroup(x.G, tuple(fixed)))
        if xmod.normal_sub_witness(x, s) is None:
            out.append(xmod.quotient_pxm(x, s)[1])
    return out


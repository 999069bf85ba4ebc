"""Independent reference computations for the tests.

Nothing here calls into relcentral's linear algebra or group closures: ranks come
from sympy, groups are closed by brute force, and chain differentials are written
out from the textbook formulas on dense tables.
"""

from itertools import combinations, product

import sympy


def table_of(g):
    """Structure constants as a dense list c[i][j] = [i, j] in basis coordinates."""
    n = g.dim
    return [[[sympy.Rational(x.numerator, x.denominator) for x in g.basis_bracket(i, j)] for j in range(n)]
            for i in range(n)]


def rank(rows):
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix(rows).rank()


def span_dim(vectors, n):
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return sympy.Matrix(vectors).rank()


def same_span(a, b, n):
    da, db = span_dim(a, n), span_dim(b, n)
    return da == db == span_dim(list(a) + list(b), n)


def bracket(c, x, y):
    n = len(c)
    out = [sympy.Integer(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            s = x[i] * y[j]
            for k in range(n):
                out[k] += s * c[i][j][k]
    return out


def ideal_closure(c, seed):
    """Smallest two-sided ideal containing seed, by repeated bracketing with the basis."""
    n = len(c)
    basis = [[sympy.Integer(int(i == j)) for j in range(n)] for i in range(n)]
    gens = [list(v) for v in seed]
    d = span_dim(gens, n)
    while True:
        new = list(gens)
        for v in gens:
            for b in basis:
                new.append(bracket(c, v, b))
                new.append(bracket(c, b, v))
        m = sympy.Matrix(new) if new else sympy.zeros(0, n)
        rows = [list(m.row(i)) for i in range(m.rows)] if new else []
        nd = span_dim(rows, n)
        if nd == d:
            return basis_of(rows, n)
        gens, d = basis_of(rows, n), nd


def basis_of(rows, n):
    if not rows:
        return []
    m = sympy.Matrix(rows).rref()[0]
    return [list(m.row(i)) for i in range(m.rows) if any(m.row(i))]


def commutator_ideal(c, k):
    """[K, B]: ideal generated by all [k, b] and [b, k]."""
    n = len(c)
    basis = [[sympy.Integer(int(i == j)) for j in range(n)] for i in range(n)]
    gens = []
    for v in k:
        for b in basis:
            gens.append(bracket(c, v, b))
            gens.append(bracket(c, b, v))
    return ideal_closure(c, gens)


# ------------------------------------------------------------------ homology


def ce_h2(g):
    """dim H2 of a Lie algebra: Lambda^2 -> g and Lambda^3 -> Lambda^2 from the textbook formula."""
    c = table_of(g)
    n = len(c)
    pairs = list(combinations(range(n), 2))
    pidx = {p: k for k, p in enumerate(pairs)}

    def wedge(u, v):
        out = [sympy.Integer(0)] * len(pairs)
        for a in range(n):
            for b in range(n):
                if a == b or u[a] == 0 or v[b] == 0:
                    continue
                if a < b:
                    out[pidx[(a, b)]] += u[a] * v[b]
                else:
                    out[pidx[(b, a)]] -= u[a] * v[b]
        return out

    e = [[sympy.Integer(int(i == j)) for j in range(n)] for i in range(n)]
    d2_cols = [[-x for x in c[a][b]] for a, b in pairs]
    d3_cols = []
    for x, y, z in combinations(range(n), 3):
        col = [sympy.Integer(0)] * len(pairs)
        for s, w in ((-1, wedge(c[x][y], e[z])), (1, wedge(c[x][z], e[y])), (-1, wedge(c[y][z], e[x]))):
            col = [p + s * q for p, q in zip(col, w)]
        d3_cols.append(col)
    r2 = rank(d2_cols)
    r3 = rank(d3_cols)
    return len(pairs) - r2 - r3


def loday_hl2(g):
    """dim HL2 for a right Leibniz algebra: d(x(x)y(x)z) = [x,y](x)z - [x,z](x)y - x(x)[y,z]."""
    c = table_of(g)
    n = len(c)
    e = [[sympy.Integer(int(i == j)) for j in range(n)] for i in range(n)]

    def tensor(u, v):
        return [u[a] * v[b] for a in range(n) for b in range(n)]

    d2_cols = [c[a][b] for a in range(n) for b in range(n)]
    d3_cols = []
    composite_zero = True
    for x, y, z in product(range(n), repeat=3):
        col = [sympy.Integer(0)] * (n * n)
        for s, w in ((1, tensor(c[x][y], e[z])), (-1, tensor(c[x][z], e[y])), (-1, tensor(e[x], c[y][z]))):
            col = [p + s * q for p, q in zip(col, w)]
        d3_cols.append(col)
        # d2 d3 = 0 is a sanity condition on the oracle itself
        img = [sympy.Integer(0)] * n
        for k, coeff in enumerate(col):
            if coeff:
                a, b = divmod(k, n)
                img = [p + coeff * q for p, q in zip(img, c[a][b])]
        composite_zero = composite_zero and not any(img)
    assert composite_zero, "oracle differential is not a complex"
    return n * n - rank(d2_cols) - rank(d3_cols)


# ------------------------------------------------------------------ groups


def closure(g, gens):
    elems = {g.identity}
    frontier = list(elems)
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = g.mul(a, s)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return elems


def group_commutator(g, k, b):
    """[K, B] generated by k b k^-1 b^-1 (finite, so closure under products suffices)."""
    gens = {g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y))) for x in k for y in b}
    return closure(g, gens)


def all_homs(src, dst):
    """Every homomorphism by exhaustive search over all maps (tiny groups only)."""
    out = []
    n = src.order
    for images in product(range(dst.order), repeat=n):
        if all(images[src.mul(a, b)] == dst.mul(images[a], images[b]) for a in range(n) for b in range(n)):
            out.append(images)
    return out

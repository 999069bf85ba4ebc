"""Low-degree Chevalley-Eilenberg and Leibniz (Loday) homology, and the
universal central extension of a perfect algebra built from the degree-2 chains.

Degree-2 bases: for CE the wedges e_i^e_j with i < j in lexicographic order;
for Loday the tensors e_i(x)e_j in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactlin import (
    ZERO,
    Echelon,
    RatMatrix,
    Subspace,
    image,
    image_of,
    intersect,
    kernel,
    preimage,
    quotient_map,
    right_inverse,
    sum_spaces,
)
from .leib import (
    AlgebraError,
    AlgebraHom,
    LeibnizAlgebra,
    _require_leibniz,
    _require_lie,
    unit_ideal,
    validate_algebra,
)

CE = "CE"
LODAY = "Loday"

VARIETIES = {
    # name: (chain flavor, reflector of the ambient variety)
    "lie_vs_vect": (CE, "vect"),
    "leib_vs_vectlie": (LODAY, "vect_lie"),
}


class NotPerfect(AlgebraError):
    pass


class WellDefinednessFailure(AlgebraError):
    pass


class VarietyIdentityFailure(AlgebraError):
    pass


def degree2_dim(flavor: str, n: int) -> int:
    return n * (n - 1) // 2 if flavor == CE else n * n


def degree3_dim(flavor: str, n: int) -> int:
    return n * (n - 1) * (n - 2) // 6 if flavor == CE else n ** 3


def _pair_index(flavor: str, n: int) -> dict[tuple[int, int], int]:
    if flavor == CE:
        return {p: k for k, p in enumerate(combinations(range(n), 2))}
    return {(i, j): i * n + j for i in range(n) for j in range(n)}


def _pairs(flavor: str, n: int) -> list[tuple[int, int]]:
    if flavor == CE:
        return list(combinations(range(n), 2))
    return [(i, j) for i in range(n) for j in range(n)]


def _product_sparse(flavor: str, index: dict, u: Sequence[Fraction], v: Sequence[Fraction]) -> dict[int, Fraction]:
    """u^v (CE) or u(x)v (Loday) as a sparse degree-2 vector."""
    out: dict[int, Fraction] = {}
    unz = [(a, x) for a, x in enumerate(u) if x]
    vnz = [(b, y) for b, y in enumerate(v) if y]
    for a, x in unz:
        for b, y in vnz:
            if flavor == CE:
                if a == b:
                    continue
                key, sign = ((a, b), 1) if a < b else ((b, a), -1)
                c = x * y * sign
            else:
                key, c = (a, b), x * y
            k = index[key]
            w = out.get(k, ZERO) + c
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def _dense(sparse: dict[int, Fraction], n: int) -> tuple[Fraction, ...]:
    v = [ZERO] * n
    for k, x in sparse.items():
        v[k] = x
    return tuple(v)


def degree2_product(flavor: str, n: int, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return _dense(_product_sparse(flavor, _pair_index(flavor, n), u, v), degree2_dim(flavor, n))


def degree2_map(flavor: str, f: RatMatrix) -> RatMatrix:
    """Matrix of the induced map on degree-2 chains (wedge or tensor square of f)."""
    n, m = f.cols, f.rows
    index = _pair_index(flavor, m)
    cols = [f.column(j) for j in range(n)]
    out = []
    for i, j in _pairs(flavor, n):
        out.append(_dense(_product_sparse(flavor, index, cols[i], cols[j]), degree2_dim(flavor, m)))
    if not out:
        return RatMatrix.zeros(degree2_dim(flavor, m), 0)
    return RatMatrix.from_columns(out, degree2_dim(flavor, m))


@dataclass
class ChainData:
    flavor: str
    d2: RatMatrix
    d3: RatMatrix
    degree2_dim: int
    degree3_dim: int
    cycles: Subspace = field(repr=False)
    boundaries: Subspace = field(repr=False)

    @property
    def h2_dim(self) -> int:
        return self.cycles.dim - self.boundaries.dim

    @property
    def rank_d2(self) -> int:
        return self.degree2_dim - self.cycles.dim

    @property
    def rank_d3(self) -> int:
        return self.boundaries.dim

    def is_complex(self) -> bool:
        return (self.d2 @ self.d3).is_zero()

    def representatives(self) -> list[tuple[Fraction, ...]]:
        """Cycles whose classes form a basis of H2."""
        e = self.boundaries.echelon()
        out = []
        for v in self.cycles.vectors:
            if e.add(v):
                out.append(v)
        return out

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "degree2_dim": self.degree2_dim,
            "degree3_dim": self.degree3_dim,
            "rank_d2": self.rank_d2,
            "rank_d3": self.rank_d3,
            "h2_dim": self.h2_dim,
        }


def chain_complex(g: LeibnizAlgebra, flavor: str) -> ChainData:
    n = g.dim
    index = _pair_index(flavor, n)
    pairs = _pairs(flavor, n)
    n2 = len(pairs)
    d2_cols = [g.basis_bracket(i, j) for i, j in pairs]
    d2 = RatMatrix.from_columns(d2_cols, n) if d2_cols else RatMatrix.zeros(n, 0)

    e3 = Echelon(n2)
    d3_cols: list[dict[int, Fraction]] = []
    unit = [tuple(Fraction(int(a == i)) for a in range(n)) for i in range(n)]
    if flavor == CE:
        triples = combinations(range(n), 3)
    else:
        triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
    for i, j, k in triples:
        col: dict[int, Fraction] = {}
        if flavor == CE:
            # [x,y]^z - [x,z]^y + [y,z]^x
            terms = [
                (1, g.basis_bracket(i, j), unit[k]),
                (-1, g.basis_bracket(i, k), unit[j]),
                (1, g.basis_bracket(j, k), unit[i]),
            ]
        else:
            # [x,y](x)z - [x,z](x)y - x(x)[y,z]
            terms = [
                (1, g.basis_bracket(i, j), unit[k]),
                (-1, g.basis_bracket(i, k), unit[j]),
                (-1, unit[i], g.basis_bracket(j, k)),
            ]
        for sign, u, v in terms:
            for key, x in _product_sparse(flavor, index, u, v).items():
                w = col.get(key, ZERO) + sign * x
                if w:
                    col[key] = w
                else:
                    col.pop(key, None)
        d3_cols.append(col)
        if col:
            e3.add(col)
    n3 = len(d3_cols)
    entries = [ZERO] * (n2 * n3)
    for c, col in enumerate(d3_cols):
        for r, x in col.items():
            entries[r * n3 + c] = x
    d3 = RatMatrix(n2, n3, tuple(entries))
    cycles = kernel(d2) if n2 else Subspace.zero(0)
    return ChainData(flavor, d2, d3, n2, n3, cycles, Subspace._from_echelon(e3))


def ce_h2(g: LeibnizAlgebra) -> tuple[int, ChainData]:
    _require_lie(g)
    chain = chain_complex(g, CE)
    return chain.h2_dim, chain


def loday_hl2(g: LeibnizAlgebra) -> tuple[int, ChainData]:
    _require_leibniz(g)
    chain = chain_complex(g, LODAY)
    return chain.h2_dim, chain


def h1(g: LeibnizAlgebra, reflector: str) -> int:
    """Dimension of the reflection of g (zero exactly when g is perfect)."""
    _require_leibniz(g)
    return g.dim - unit_ideal(g, reflector).dim


def h2(g: LeibnizAlgebra, variety: str) -> int:
    flavor, _ = VARIETIES[variety]
    return ce_h2(g)[0] if flavor == CE else loday_hl2(g)[0]


@dataclass
class UceResult:
    total: LeibnizAlgebra
    projection: AlgebraHom
    kernel: Subspace
    h2_dim: int
    variety: str
    chain: ChainData = field(repr=False)
    checks: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "variety": self.variety,
            "total": self.total.to_json(),
            "total_dim": self.total.dim,
            "projection": self.projection.matrix.to_json(),
            "kernel_dim": self.kernel.dim,
            "h2_dim": self.h2_dim,
            "chain": self.chain.to_json(),
        }


def _check(name: str, ok: bool, witness=None) -> dict:
    out = {"name": name, "status": "pass" if ok else "fail"}
    if not ok:
        out["witness"] = witness if witness is not None else "condition is false"
    return out


def uce_construct(g: LeibnizAlgebra, variety: str = "lie_vs_vect") -> UceResult:
    if variety not in VARIETIES:
        raise ValueError(f"unknown variety {variety!r}")
    flavor, reflector = VARIETIES[variety]
    if flavor == CE:
        _require_lie(g)
    else:
        _require_leibniz(g)
    if h1(g, reflector) != 0:
        raise NotPerfect(f"algebra is not perfect for reflector {reflector}", witness={"h1": h1(g, reflector)})

    n = g.dim
    chain = chain_complex(g, flavor)
    index = _pair_index(flavor, n)
    n2 = chain.degree2_dim
    boundaries = chain.boundaries
    proj, q, section = quotient_map(n2, boundaries)
    lift_images = [chain.d2.apply(section.column(a)) for a in range(q)]

    # each class is determined by d2 of a lift, so the bracket only sees d2
    bnd = boundaries.echelon()
    for w in boundaries.vectors:
        dw = chain.d2.apply(w)
        for y in lift_images:
            for p in (_product_sparse(flavor, index, dw, y), _product_sparse(flavor, index, y, dw)):
                if p and not bnd.contains(p):
                    raise WellDefinednessFailure("bracket is not constant on boundary cosets")

    brackets = {}
    for a in range(q):
        for b in range(q):
            p = _product_sparse(flavor, index, lift_images[a], lift_images[b])
            if p:
                v = proj.apply(_dense(p, n2))
                if any(v):
                    brackets[(a, b)] = v
    total = LeibnizAlgebra(q, brackets)
    verdict = validate_algebra(total)
    if not verdict["is_leibniz"] or (flavor == CE and not verdict["is_lie"]):
        raise VarietyIdentityFailure("constructed algebra violates the variety identities", witness=verdict["witness"])

    pmat = chain.d2 @ section if q else RatMatrix.zeros(n, 0)
    u = AlgebraHom(total, g, pmat)
    ker = kernel(pmat) if q else Subspace.zero(0)
    result = UceResult(total, u, ker, chain.h2_dim, variety, chain)

    checks = [_check("variety_identities", True)]
    try:
        u.check()
        hom_ok = u.is_surjective()
        checks.append(_check("projection_surjective_hom", hom_ok, {"rank": u.rank(), "target_dim": n}))
    except AlgebraError as exc:
        checks.append(_check("projection_surjective_hom", False, exc.witness))
        result.checks = checks
        return result

    from .birkhoff import relative_commutator
    from .varieties import AlgebraVariety

    var = AlgebraVariety(reflector)
    comm = relative_commutator(var, var.extension(u))
    checks.append(_check("central", comm.is_zero(), comm.to_json()))
    checks.append(_check("kernel_dim_equals_h2", ker.dim == chain.h2_dim,
                         {"kernel_dim": ker.dim, "h2_dim": chain.h2_dim}))
    t_h1 = h1(total, reflector)
    checks.append(_check("total_perfect", t_h1 == 0, {"h1": t_h1}))
    t_h2 = chain_complex(total, flavor).h2_dim
    checks.append(_check("total_h1_h2_zero", t_h1 == 0 and t_h2 == 0, {"h1": t_h1, "h2": t_h2}))
    result.checks = checks
    return result


def homological_certificate(u: AlgebraHom, variety: str) -> dict:
    """Universality of a central extension u: U -> A read off H1(U) and H2(U)."""
    flavor, reflector = VARIETIES[variety]
    total = u.source
    a = h1(total, reflector)
    b = chain_complex(total, flavor).h2_dim
    return {"h1": a, "h2": b, "perfect": a == 0, "universal": a == 0 and b == 0}


def liesation_of(u: AlgebraHom) -> AlgebraHom:
    """Apply (-)_Lie to an extension whose codomain is already a Lie algebra."""
    from .leib import induced_hom, reflector_lie

    _, unit, _ = reflector_lie(u.source)
    return induced_hom(unit, u)


def _exactness(name: str, image: Subspace, kern: Subspace) -> dict:
    ok = image == kern
    out = {"name": name, "status": "pass" if ok else "fail"}
    if not ok:
        out["witness"] = {"image_dim": image.dim, "kernel_dim": kern.dim}
    return out


def five_term_linear(f: AlgebraHom, k: Subspace, comm: Subspace, flavor: str, reflector: str) -> dict:
    """All five terms of H2(B) -> H2(A) -> K/[K,B] -> H1(B) -> H1(A) -> 0 as subquotients.

    Each junction is compared inside the ambient space of its middle term:
    image of the incoming map plus the denominator against the preimage of the
    next denominator.
    """
    b_alg, a_alg = f.source, f.target
    cb = chain_complex(b_alg, flavor)
    ca = chain_complex(a_alg, flavor)
    ub = unit_ideal(b_alg, reflector)
    ua = unit_ideal(a_alg, reflector)
    wedge_f = degree2_map(flavor, f.matrix)
    section = right_inverse(f.matrix) if a_alg.dim else RatMatrix.zeros(b_alg.dim, 0)
    delta = cb.d2 @ degree2_map(flavor, section) if a_alg.dim else RatMatrix.zeros(b_alg.dim, ca.degree2_dim)

    checks = []
    # maps send numerators and denominators where they belong
    wd = [
        ("h2_map_cycles", image_of(wedge_f, cb.cycles), ca.cycles),
        ("h2_map_boundaries", image_of(wedge_f, cb.boundaries), ca.boundaries),
        ("connecting_lands_in_kernel", image_of(delta, ca.cycles), k),
        ("connecting_kills_boundaries", image_of(delta, ca.boundaries), comm),
        ("commutator_inside_kernel", comm, k),
    ]
    for name, small, big in wd:
        ok = big.contains(small)
        checks.append({"name": name, "status": "pass" if ok else "fail"} | ({} if ok else {"witness": {"dim": small.dim}}))

    im_alpha = sum_spaces(image_of(wedge_f, cb.cycles), ca.boundaries)
    ker_delta = intersect(preimage(delta, comm), ca.cycles)
    checks.append(_exactness("exact_at_h2_codomain", im_alpha, ker_delta))
    im_delta = sum_spaces(image_of(delta, ca.cycles), comm)
    ker_iota = intersect(k, ub)
    checks.append(_exactness("exact_at_k_mod_commutator", im_delta, sum_spaces(ker_iota, comm)))
    im_iota = sum_spaces(k, ub)
    ker_pi = preimage(f.matrix, ua)
    checks.append(_exactness("exact_at_h1_domain", im_iota, ker_pi))
    tail = sum_spaces(image(f.matrix), ua) if b_alg.dim else ua
    checks.append(_exactness("tail_surjective", tail, Subspace.full(a_alg.dim)))
    terms = {
        "h2_domain": cb.h2_dim,
        "h2_codomain": ca.h2_dim,
        "k_mod_commutator": k.dim - comm.dim,
        "h1_domain": b_alg.dim - ub.dim,
        "h1_codomain": a_alg.dim - ua.dim,
    }
    ranks = {
        "h2_map": im_alpha.dim - ca.boundaries.dim,
        "connecting": im_delta.dim - comm.dim,
        "inclusion": im_iota.dim - ub.dim,
        "h1_map": tail.dim - ua.dim,
    }
    return {"terms": terms, "ranks": ranks, "checks": checks, "complete": True, "flavor": flavor}

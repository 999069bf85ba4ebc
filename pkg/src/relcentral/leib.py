"""Leibniz algebras over Q by structure constants, with Lie and vector-space reflections.

The bracket satisfies the (right) Leibniz identity
``[x,[y,z]] = [[x,y],z] - [[x,z],y]``; Lie algebras are the alternating case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactlin import (
    ZERO,
    Echelon,
    RatMatrix,
    Subspace,
    inverse,
    kernel,
    quotient_map,
    rational_str,
    right_inverse,
    sum_spaces,
    unit_vector,
    vec,
)


class AlgebraError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InputNotLeibniz(AlgebraError):
    pass


class InputNotLie(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class NotAHomomorphism(AlgebraError):
    pass


REFLECTORS = ("lie", "vect", "vect_lie", "ab")


class LeibnizAlgebra:
    """Finite-dimensional algebra with bracket given on basis pairs.

    ``brackets`` maps ``(i, j)`` to the coordinate vector of ``[e_i, e_j]``;
    missing pairs are zero.
    """

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Sequence] | None = None,
                 basis_names: Sequence[str] | None = None):
        self.dim = dim
        table: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        for (i, j), v in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"bracket index ({i}, {j}) out of range for dim {dim}")
            v = vec(v)
            if len(v) != dim:
                raise AlgebraError(f"bracket value for ({i}, {j}) has length {len(v)}")
            if any(v):
                table[(i, j)] = v
        self.table = table
        self.basis_names = tuple(basis_names) if basis_names else None
        # sparse rows: left index -> list of (right index, sparse value)
        self._left: list[list[tuple[int, list[tuple[int, Fraction]]]]] = [[] for _ in range(dim)]
        for (i, j), v in sorted(table.items()):
            self._left[i].append((j, [(k, x) for k, x in enumerate(v) if x]))

    def __repr__(self) -> str:
        return f"LeibnizAlgebra(dim={self.dim}, nonzero_brackets={len(self.table)})"

    def basis_bracket(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.table.get((i, j), (ZERO,) * self.dim)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        ynz = {j: b for j, b in enumerate(y) if b}
        if not ynz:
            return tuple(out)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, v in self._left[i]:
                b = ynz.get(j)
                if b:
                    c = a * b
                    for k, t in v:
                        out[k] += c * t
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self.table

    def structure_key(self) -> tuple:
        return (self.dim, tuple(sorted(self.table.items())))

    def to_json(self) -> dict:
        names = list(self.basis_names) if self.basis_names else [f"e{i + 1}" for i in range(self.dim)]
        return {
            "dim": self.dim,
            "basis": names,
            "brackets": [
                {"left": i, "right": j, "value": [rational_str(x) for x in v]}
                for (i, j), v in sorted(self.table.items())
            ],
        }


def algebra_from_json(data: dict) -> LeibnizAlgebra:
    dim = int(data["dim"])
    brackets = {}
    for k, entry in enumerate(data.get("brackets", [])):
        try:
            i, j, v = int(entry["left"]), int(entry["right"]), entry["value"]
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"brackets[{k}]: expected left/right/value") from exc
        if (i, j) in brackets:
            raise AlgebraError(f"brackets[{k}]: duplicate pair ({i}, {j})")
        brackets[(i, j)] = v
    return LeibnizAlgebra(dim, brackets, data.get("basis"))


@dataclass(frozen=True, eq=False)
class AlgebraHom:
    source: LeibnizAlgebra
    target: LeibnizAlgebra
    matrix: RatMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise AlgebraError(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, "
                f"expected {self.target.dim}x{self.source.dim}"
            )

    def __call__(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return self.matrix.apply(v)

    def check(self) -> None:
        s, t, m = self.source, self.target, self.matrix
        images = m.column_list()
        for i in range(s.dim):
            for j in range(s.dim):
                if m.apply(s.basis_bracket(i, j)) != t.bracket(images[i], images[j]):
                    raise NotAHomomorphism(f"bracket of basis pair ({i}, {j}) not preserved", witness=[i, j])

    def kernel(self) -> Subspace:
        return kernel(self.matrix)

    def rank(self) -> int:
        return self.matrix.rank()

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.is_surjective()

    def compose(self, other: AlgebraHom) -> AlgebraHom:
        """self o other"""
        return AlgebraHom(other.source, self.target, self.matrix @ other.matrix)


def identity_hom(g: LeibnizAlgebra) -> AlgebraHom:
    return AlgebraHom(g, g, RatMatrix.identity(g.dim))


@dataclass(frozen=True, eq=False)
class Ideal:
    parent: LeibnizAlgebra
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def leibniz_witness(g: LeibnizAlgebra) -> tuple[int, int, int] | None:
    n = g.dim
    e = [unit_vector(n, i) for i in range(n)]
    for x in range(n):
        for y in range(n):
            xy = g.basis_bracket(x, y)
            for z in range(n):
                yz = g.basis_bracket(y, z)
                lhs = g.bracket(e[x], yz)
                xz = g.basis_bracket(x, z)
                rhs1 = g.bracket(xy, e[z])
                rhs2 = g.bracket(xz, e[y])
                if lhs != tuple(a - b for a, b in zip(rhs1, rhs2)):
                    return (x, y, z)
    return None


def lie_witness(g: LeibnizAlgebra) -> dict | None:
    n = g.dim
    for i in range(n):
        if any(g.basis_bracket(i, i)):
            return {"square": [i]}
        for j in range(i + 1, n):
            if any(a + b for a, b in zip(g.basis_bracket(i, j), g.basis_bracket(j, i))):
                return {"antisymmetry": [i, j]}
    return None


def validate_algebra(g: LeibnizAlgebra) -> dict:
    w = leibniz_witness(g)
    if w is not None:
        return {"is_leibniz": False, "is_lie": False, "witness": list(w)}
    lw = lie_witness(g)
    return {"is_leibniz": True, "is_lie": lw is None, "witness": lw}


def is_leibniz(g: LeibnizAlgebra) -> bool:
    return leibniz_witness(g) is None


def is_lie(g: LeibnizAlgebra) -> bool:
    return is_leibniz(g) and lie_witness(g) is None


def _require_leibniz(g: LeibnizAlgebra) -> None:
    w = leibniz_witness(g)
    if w is not None:
        raise InputNotLeibniz(f"Leibniz identity fails on basis triple {w}", witness=list(w))


def _require_lie(g: LeibnizAlgebra) -> None:
    _require_leibniz(g)
    w = lie_witness(g)
    if w is not None:
        raise InputNotLie(f"bracket is not alternating: {w}", witness=w)


def ideal_closure(g: LeibnizAlgebra, seed: Subspace) -> Subspace:
    """Smallest subspace containing ``seed`` stable under bracketing with g on both sides."""
    n = g.dim
    e = Echelon(n)
    basis = [unit_vector(n, i) for i in range(n)]
    queue = [v for v in seed.vectors if e.add(v)]
    while queue:
        v = queue.pop()
        for b in basis:
            for w in (g.bracket(b, v), g.bracket(v, b)):
                if any(w) and e.add(w):
                    queue.append(w)
    return Subspace._from_echelon(e)


def ideal_generated(g: LeibnizAlgebra, seed: Subspace | Iterable[Sequence]) -> Ideal:
    if not isinstance(seed, Subspace):
        seed = Subspace.span(g.dim, seed)
    return Ideal(g, ideal_closure(g, seed))


def is_ideal(g: LeibnizAlgebra, s: Subspace) -> bool:
    basis = [unit_vector(g.dim, i) for i in range(g.dim)]
    e = s.echelon()
    return all(e.contains(g.bracket(b, v)) and e.contains(g.bracket(v, b)) for v in s.vectors for b in basis)


def quotient_algebra(g: LeibnizAlgebra, ideal: Subspace) -> tuple[LeibnizAlgebra, AlgebraHom, RatMatrix]:
    """g / ideal, the projection, and the linear section used to induce the bracket."""
    if not is_ideal(g, ideal):
        raise NotAnIdeal("subspace is not a two-sided ideal")
    proj, q, section = quotient_map(g.dim, ideal)
    lifts = section.column_list()
    brackets = {}
    for a in range(q):
        for b in range(q):
            v = proj.apply(g.bracket(lifts[a], lifts[b]))
            if any(v):
                brackets[(a, b)] = v
    names = None
    if g.basis_names:
        free = [c for c in range(g.dim) if c not in set(ideal.pivots)]
        names = [g.basis_names[c] for c in free]
    quo = LeibnizAlgebra(q, brackets, names)
    return quo, AlgebraHom(g, quo, proj), section


def subalgebra(g: LeibnizAlgebra, s: Subspace) -> tuple[LeibnizAlgebra, AlgebraHom]:
    """The subspace s as an algebra in its RREF basis, with the inclusion."""
    vs = s.vectors
    brackets = {}
    for a, x in enumerate(vs):
        for b, y in enumerate(vs):
            w = g.bracket(x, y)
            if any(w):
                try:
                    brackets[(a, b)] = s.coordinates(w)
                except ValueError:
                    raise AlgebraError("subspace is not closed under the bracket", witness=[a, b]) from None
    sub = LeibnizAlgebra(s.dim, brackets)
    incl = RatMatrix.from_columns(vs, g.dim) if vs else RatMatrix.zeros(g.dim, 0)
    return sub, AlgebraHom(sub, g, incl)


def direct_sum(a: LeibnizAlgebra, b: LeibnizAlgebra) -> LeibnizAlgebra:
    n, m = a.dim, b.dim
    brackets = {}
    for (i, j), v in a.table.items():
        brackets[(i, j)] = tuple(v) + (ZERO,) * m
    for (i, j), v in b.table.items():
        brackets[(n + i, n + j)] = (ZERO,) * n + tuple(v)
    names = None
    if a.basis_names and b.basis_names:
        names = list(a.basis_names) + list(b.basis_names)
    return LeibnizAlgebra(n + m, brackets, names)


def abelian(n: int) -> LeibnizAlgebra:
    return LeibnizAlgebra(n, {})


def change_basis(g: LeibnizAlgebra, p: RatMatrix) -> tuple[LeibnizAlgebra, AlgebraHom]:
    """Rewrite g in the basis given by the columns of the invertible matrix p.

    Returns the new algebra h and the isomorphism h -> g (matrix p).
    """
    pinv = inverse(p)
    cols = p.column_list()
    brackets = {}
    for i in range(g.dim):
        for j in range(g.dim):
            w = pinv.apply(g.bracket(cols[i], cols[j]))
            if any(w):
                brackets[(i, j)] = w
    h = LeibnizAlgebra(g.dim, brackets)
    return h, AlgebraHom(h, g, p)


def ann_generators(g: LeibnizAlgebra) -> Subspace:
    """span{[x, x]} via polarisation: the [e_i, e_i] and [e_i, e_j] + [e_j, e_i]."""
    n = g.dim
    gens = []
    for i in range(n):
        gens.append(g.basis_bracket(i, i))
        for j in range(i + 1, n):
            gens.append(tuple(a + b for a, b in zip(g.basis_bracket(i, j), g.basis_bracket(j, i))))
    return Subspace.span(n, gens)


def ann_ideal(g: LeibnizAlgebra) -> Ideal:
    return Ideal(g, ideal_closure(g, ann_generators(g)))


def derived_ideal(g: LeibnizAlgebra) -> Ideal:
    """Ideal generated by every [x, y]."""
    gens = Subspace.span(g.dim, [v for v in g.table.values()])
    return Ideal(g, ideal_closure(g, gens))


def reflector_lie(g: LeibnizAlgebra) -> tuple[LeibnizAlgebra, AlgebraHom, Ideal]:
    _require_leibniz(g)
    ann = ann_ideal(g)
    lie, unit, _ = quotient_algebra(g, ann.space)
    w = lie_witness(lie)
    if w is not None:
        raise AlgebraError(f"Liesation output is not a Lie algebra: {w}", witness=w)
    return lie, unit, ann


def reflector_vect(g: LeibnizAlgebra) -> tuple[int, AlgebraHom, Ideal]:
    _require_leibniz(g)
    derived = derived_ideal(g)
    quo, unit, _ = quotient_algebra(g, derived.space)
    if not quo.is_abelian():
        raise AlgebraError("quotient by the derived ideal is not abelian")
    return quo.dim, unit, derived


def unit_ideal(g: LeibnizAlgebra, reflector: str) -> Subspace:
    """Kernel of the reflection unit g -> B(g) for the named reflector."""
    if reflector == "lie":
        return ann_ideal(g).space
    if reflector in ("vect", "ab"):
        return derived_ideal(g).space
    if reflector == "vect_lie":
        return sum_spaces(derived_ideal(g).space, ann_ideal(g).space)
    raise ValueError(f"unknown reflector {reflector!r}")


def _bracket_operator_rows(g: LeibnizAlgebra, left: bool, right: bool) -> list[tuple[Fraction, ...]]:
    """Rows of the linear system in z given by the chosen brackets with every basis vector."""
    n = g.dim
    rows = []
    for i in range(n):
        # matrix of z -> [e_i, z] (+) [z, e_i]
        m = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            v = [ZERO] * n
            if left:
                v = [a + b for a, b in zip(v, g.basis_bracket(i, j))]
            if right:
                v = [a + b for a, b in zip(v, g.basis_bracket(j, i))]
            for k in range(n):
                m[k][j] = v[k]
        rows.extend(tuple(r) for r in m)
    return rows


def z_lie(g: LeibnizAlgebra) -> Ideal:
    """Ideal generated by {z : [g, z] = -[z, g] for all g}."""
    _require_leibniz(g)
    n = g.dim
    if n == 0:
        return Ideal(g, Subspace.zero(0))
    anti = kernel(RatMatrix.from_rows(_bracket_operator_rows(g, True, True), n))
    return Ideal(g, ideal_closure(g, anti))


def centre(g: LeibnizAlgebra) -> Subspace:
    n = g.dim
    if n == 0:
        return Subspace.zero(0)
    rows = _bracket_operator_rows(g, True, False) + _bracket_operator_rows(g, False, True)
    return kernel(RatMatrix.from_rows(rows, n))


def is_perfect(g: LeibnizAlgebra, reflector: str = "vect") -> bool:
    _require_leibniz(g)
    return unit_ideal(g, reflector).dim == g.dim


def kernel_pair(f: AlgebraHom) -> tuple[LeibnizAlgebra, AlgebraHom, AlgebraHom]:
    return fiber_product(f, f)


def fiber_product(f: AlgebraHom, g: AlgebraHom) -> tuple[LeibnizAlgebra, AlgebraHom, AlgebraHom]:
    """{(b, c) : f b = g c} inside the direct sum, with both projections."""
    if f.target is not g.target and f.target.structure_key() != g.target.structure_key():
        raise AlgebraError("fiber product needs a common target")
    b, c = f.source, g.source
    total = direct_sum(b, c)
    rows = [f.matrix.row(i) + tuple(-x for x in g.matrix.row(i)) for i in range(f.target.dim)]
    space = kernel(RatMatrix.from_rows(rows, b.dim + c.dim)) if rows else Subspace.full(b.dim + c.dim)
    p, incl = subalgebra(total, space)
    vs = space.vectors
    p0 = RatMatrix.from_columns([v[:b.dim] for v in vs], b.dim) if vs else RatMatrix.zeros(b.dim, 0)
    p1 = RatMatrix.from_columns([v[b.dim:] for v in vs], c.dim) if vs else RatMatrix.zeros(c.dim, 0)
    p.embedding = space
    p.factors = (b.dim, c.dim)
    return p, AlgebraHom(p, b, p0), AlgebraHom(p, c, p1)


def pair_hom(p: LeibnizAlgebra, u: AlgebraHom, v: AlgebraHom) -> AlgebraHom:
    """x -> (u x, v x) into an algebra built by fiber_product."""
    space = p.embedding
    cols = []
    for j in range(u.source.dim):
        w = u.matrix.column(j) + v.matrix.column(j)
        cols.append(space.coordinates(w))
    m = RatMatrix.from_columns(cols, p.dim) if cols else RatMatrix.zeros(p.dim, 0)
    return AlgebraHom(u.source, p, m)


def induced_hom(q: AlgebraHom, f: AlgebraHom) -> AlgebraHom:
    """fbar with fbar o q = f, given q surjective and ker q inside ker f."""
    s = right_inverse(q.matrix) if q.target.dim else RatMatrix.zeros(q.source.dim, 0)
    m = f.matrix @ s if q.target.dim else RatMatrix.zeros(f.target.dim, 0)
    out = AlgebraHom(q.target, f.target, m)
    if (m @ q.matrix) != f.matrix:
        raise AlgebraError("map does not factor through the quotient")
    return out


def ideal_from_vectors(g: LeibnizAlgebra, vectors: Iterable[Sequence]) -> Ideal:
    return ideal_generated(g, Subspace.span(g.dim, vectors))


def classical_commutator(g: LeibnizAlgebra, k: Subspace) -> Subspace:
    """Ideal generated by all [k, b] and [b, k]."""
    basis = [unit_vector(g.dim, i) for i in range(g.dim)]
    gens = []
    for v in k.vectors:
        for b in basis:
            gens.append(g.bracket(v, b))
            gens.append(g.bracket(b, v))
    return ideal_closure(g, Subspace.span(g.dim, gens))


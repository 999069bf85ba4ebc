"""Exact linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` scalars. Row reduction
is done on sparse dict rows, which keeps the structure-constant matrices that
come out of chain complexes cheap to reduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    pass


def to_rational(x) -> Fraction:
    """Parse ints, Fractions or strings of the form ``"p/q"`` / ``"p"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def rational_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> tuple[Fraction, ...]:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> tuple[Fraction, ...]:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return not any(v)


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c: Fraction, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [vec(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RatMatrix:
        columns = [vec(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch("ragged columns")
        n = len(columns)
        return cls(rows, n, tuple(columns[j][i] for i in range(rows) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def row_list(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def column_list(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> RatMatrix:
        return RatMatrix.from_columns(self.row_list(), self.cols) if self.rows else RatMatrix.zeros(self.cols, 0)

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum((self.entries[base + j] * x for j, x in nz), ZERO))
        return tuple(out)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [self.apply(c) for c in other.column_list()]
        if not cols:
            return RatMatrix.zeros(self.rows, 0)
        return RatMatrix.from_columns(cols, self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def rank(self) -> int:
        return len(_rref_rows(self.row_list(), self.cols)[0])

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.row_list()]

    def to_json(self) -> list[list[str]]:
        return [[rational_str(x) for x in r] for r in self.row_list()]


class Echelon:
    """Incrementally maintained reduced row echelon form of a row space.

    Rows are sparse ``{column: value}`` dicts with pivot entry 1 and zeros in
    every other pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(v)
        # pivot rows are mutually reduced, so one pass over the pivot columns suffices
        for p in [c for c in v if c in self.pivots]:
            c = v.get(p)
            if not c:
                continue
            for col, x in self.pivots[p].items():
                y = v.get(col, ZERO) - c * x
                if y:
                    v[col] = y
                else:
                    v.pop(col, None)
        return v

    def add(self, v) -> bool:
        """Insert a vector; returns True when it enlarged the space."""
        if not isinstance(v, dict):
            v = {i: x for i, x in enumerate(v) if x}
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = ONE / r[p]
        r = {c: x * inv for c, x in r.items()}
        for row in self.pivots.values():
            c = row.get(p)
            if c:
                for col, x in r.items():
                    y = row.get(col, ZERO) - c * x
                    if y:
                        row[col] = y
                    else:
                        row.pop(col, None)
        self.pivots[p] = r
        return True

    def contains(self, v) -> bool:
        if not isinstance(v, dict):
            v = {i: x for i, x in enumerate(v) if x}
        return not self.reduce(v)

    def rows(self) -> list[tuple[Fraction, ...]]:
        out = []
        for p in sorted(self.pivots):
            dense = [ZERO] * self.ncols
            for c, x in self.pivots[p].items():
                dense[c] = x
            out.append(tuple(dense))
        return out


def _rref_rows(rows: Iterable[Sequence[Fraction]], ncols: int) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    e = Echelon(ncols)
    for r in rows:
        e.add(r)
    return e.rows(), sorted(e.pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its canonical RREF basis."""

    ambient_dim: int
    basis: RatMatrix

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        e = Echelon(ambient_dim)
        for v in vectors:
            v = vec(v)
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
            e.add(v)
        return cls._from_echelon(e)

    @classmethod
    def _from_echelon(cls, e: Echelon) -> Subspace:
        rows = e.rows()
        return cls(e.ncols, RatMatrix(len(rows), e.ncols, tuple(x for r in rows for x in r)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, RatMatrix.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, RatMatrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> list[tuple[Fraction, ...]]:
        return self.basis.row_list()

    @cached_property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.vectors]

    @cached_property
    def _sparse_rows(self) -> dict[int, dict[int, Fraction]]:
        return {p: {i: x for i, x in enumerate(r) if x} for p, r in zip(self.pivots, self.vectors)}

    def echelon(self) -> Echelon:
        e = Echelon(self.ambient_dim)
        e.pivots = {p: dict(r) for p, r in self._sparse_rows.items()}
        return e

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length")
        return self.echelon().contains(v)

    def contains(self, other: Subspace) -> bool:
        _check_same(self, other)
        e = self.echelon()
        return all(e.contains(v) for v in other.vectors)

    def coordinates(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coefficients of ``v`` in the RREF basis (v must lie in the space)."""
        coords = tuple(v[p] for p in self.pivots)
        check = [ZERO] * self.ambient_dim
        for c, r in zip(coords, self.vectors):
            if c:
                for i, x in enumerate(r):
                    if x:
                        check[i] += c * x
        if tuple(check) != tuple(v):
            raise ValueError("vector is not in the subspace")
        return coords

    def is_zero(self) -> bool:
        return self.dim == 0

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": self.basis.to_json() if self.dim else []}


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"subspaces of Q^{a.ambient_dim} and Q^{b.ambient_dim}")


def kernel(m: RatMatrix) -> Subspace:
    """Null space {x : m x = 0}."""
    rows, pivots = _rref_rows(m.row_list(), m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for p, r in zip(pivots, rows):
            v[p] = -r[f]
        vectors.append(v)
    return Subspace.span(m.cols, vectors)


def image(m: RatMatrix) -> Subspace:
    """Column space of m."""
    return Subspace.span(m.rows, m.column_list())


def rref_kernel_image(m: RatMatrix) -> tuple[RatMatrix, Subspace, Subspace]:
    rows, _ = _rref_rows(m.row_list(), m.cols)
    rref = RatMatrix(len(rows), m.cols, tuple(x for r in rows for x in r)) if rows else RatMatrix.zeros(0, m.cols)
    return rref, kernel(m), image(m)


def quotient_map(ambient_dim: int, s: Subspace) -> tuple[RatMatrix, int, RatMatrix]:
    """Projection Q^n -> Q^n / s in coordinates of the non-pivot columns.

    Returns ``(proj, quotient_dim, section)`` where ``section`` sends quotient
    coordinate k to the standard basis vector of the k-th non-pivot column.
    """
    if s.ambient_dim != ambient_dim:
        raise DimensionMismatch(f"subspace of Q^{s.ambient_dim}, ambient {ambient_dim}")
    pivots = set(s.pivots)
    free = [c for c in range(ambient_dim) if c not in pivots]
    e = s.echelon()
    cols = []
    for j in range(ambient_dim):
        r = e.reduce({j: ONE})
        cols.append(tuple(r.get(f, ZERO) for f in free))
    q = len(free)
    proj = RatMatrix.from_columns(cols, q) if ambient_dim else RatMatrix.zeros(q, 0)
    section = RatMatrix.from_columns([unit_vector(ambient_dim, f) for f in free], ambient_dim) if q else RatMatrix.zeros(ambient_dim, 0)
    return proj, q, section


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return Subspace.span(a.ambient_dim, a.vectors + b.vectors)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a.is_zero() or b.is_zero():
        return Subspace.zero(a.ambient_dim)
    # (alpha, beta) with sum alpha_i a_i - sum beta_j b_j = 0
    cols = a.vectors + [scale_vector(-ONE, v) for v in b.vectors]
    k = kernel(RatMatrix.from_columns(cols, a.ambient_dim))
    out = []
    for coeffs in k.vectors:
        v = [ZERO] * a.ambient_dim
        for c, r in zip(coeffs[:a.dim], a.vectors):
            if c:
                for i, x in enumerate(r):
                    if x:
                        v[i] += c * x
        out.append(v)
    return Subspace.span(a.ambient_dim, out)


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    _check_same(a, b)
    return {
        "sum": sum_spaces(a, b),
        "intersection": intersect(a, b),
        "contains": a.contains(b),
        "equal": a == b,
    }


def image_of(m: RatMatrix, s: Subspace) -> Subspace:
    if m.cols != s.ambient_dim:
        raise DimensionMismatch("map does not act on this subspace")
    return Subspace.span(m.rows, [m.apply(v) for v in s.vectors])


def preimage(m: RatMatrix, s: Subspace) -> Subspace:
    """{x : m x in s}."""
    if m.rows != s.ambient_dim:
        raise DimensionMismatch("subspace does not live in the codomain")
    proj, q, _ = quotient_map(s.ambient_dim, s)
    if q == 0:
        return Subspace.full(m.cols)
    return kernel(proj @ m)


def restrict_kernel(m: RatMatrix, s: Subspace) -> Subspace:
    """{x in s : m x = 0}."""
    if s.is_zero():
        return Subspace.zero(s.ambient_dim)
    basis = RatMatrix.from_columns(s.vectors, s.ambient_dim)
    k = kernel(m @ basis)
    return Subspace.span(s.ambient_dim, [basis.apply(c) for c in k.vectors])


def inverse(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices are invertible")
    n = m.rows
    aug = [m.row(i) + unit_vector(n, i) for i in range(n)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if len(rows) < n or pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return RatMatrix.from_rows([r[n:] for r in rows[:n]], n)


def right_inverse(m: RatMatrix) -> RatMatrix:
    """Some s with m @ s = identity; m must have full row rank."""
    cols = _independent_columns(m)
    if len(cols) != m.rows:
        raise ValueError("matrix is not surjective")
    sub = RatMatrix.from_columns([m.column(j) for j in cols], m.rows)
    inv = inverse(sub)
    out = [[ZERO] * m.rows for _ in range(m.cols)]
    for k, j in enumerate(cols):
        out[j] = list(inv.row(k))
    return RatMatrix.from_rows(out, m.rows)


def _independent_columns(m: RatMatrix) -> list[int]:
    e = Echelon(m.rows)
    chosen = []
    for j in range(m.cols):
        if e.add(m.column(j)):
            chosen.append(j)
    return chosen

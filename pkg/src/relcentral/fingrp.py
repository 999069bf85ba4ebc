"""Finite groups given by multiplication tables.

Elements are the indices ``0..n-1``. Subgroups are sorted index tuples tied to
their parent group; homomorphisms are image lists.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence


class GroupError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotLatinSquare(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotHomomorphism(GroupError):
    pass


class SizeGuardExceeded(GroupError):
    pass


class FiniteGroup:
    def __init__(self, table: Sequence[Sequence[int]], identity: int, names: Sequence[str] | None = None):
        self.table = tuple(tuple(row) for row in table)
        self.identity = identity
        self.names = tuple(names) if names is not None else None
        n = len(self.table)
        inv = [0] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == identity:
                    inv[a] = b
                    break
        self.inverses = tuple(inv)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverses[g]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1"""
        t = self.table
        return t[t[t[a][b]][self.inverses[a]]][self.inverses[b]]

    def element_order(self, a: int) -> int:
        orders = self.__dict__.get("_orders")
        if orders is None:
            orders = []
            for b in range(self.order):
                k, x = 1, b
                while x != self.identity:
                    x = self.table[x][b]
                    k += 1
                orders.append(k)
            self._orders = orders
        return orders[a]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> Subgroup:
        return Subgroup(self, (self.identity,))

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def to_json(self) -> dict:
        out = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.names:
            out["names"] = list(self.names)
        return out


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @property
    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def issubset(self, other: Subgroup) -> bool:
        return self._set <= other._set

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_normal(self) -> bool:
        return normality_witness(self) is None

    def to_json(self) -> dict:
        return {"order": self.order, "elements": list(self.elements)}


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and self.source is other.source
            and self.target is other.target
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(self.images)

    def check(self) -> None:
        s, t, im = self.source, self.target, self.images
        if len(im) != s.order or any(not 0 <= y < t.order for y in im):
            raise NotHomomorphism("image list does not match the groups")
        for a in range(s.order):
            for b in range(s.order):
                if im[s.table[a][b]] != t.table[im[a]][im[b]]:
                    raise NotHomomorphism(f"f({a}*{b}) != f({a})*f({b})", witness=[a, b])

    def kernel(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(self.source, tuple(x for x, y in enumerate(self.images) if y == e))

    def image(self, sub: Subgroup | None = None) -> Subgroup:
        xs = range(self.source.order) if sub is None else sub.elements
        return Subgroup(self.target, tuple({self.images[x] for x in xs}))

    def preimage(self, sub: Subgroup) -> Subgroup:
        return Subgroup(self.source, tuple(x for x, y in enumerate(self.images) if y in sub))

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def compose(self, other: GroupHom) -> GroupHom:
        """self o other"""
        return GroupHom(other.source, self.target, tuple(self.images[y] for y in other.images))


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(range(g.order)))


def trivial_hom(src: FiniteGroup, dst: FiniteGroup) -> GroupHom:
    return GroupHom(src, dst, (dst.identity,) * src.order)


def validate_table(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FiniteGroup:
    n = len(table)
    if n == 0:
        raise NotLatinSquare("empty table")
    rows = [list(r) for r in table]
    full = set(range(n))
    for i, r in enumerate(rows):
        if len(r) != n:
            raise NotLatinSquare(f"row {i} has length {len(r)}, expected {n}", witness={"row": i})
        if set(r) != full:
            raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}", witness={"row": i})
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotLatinSquare(f"column {j} is not a permutation of 0..{n - 1}", witness={"column": j})
    e = next((a for a in range(n) if all(rows[a][x] == x and rows[x][a] == x for x in range(n))), None)
    if e is None:
        raise NoIdentity("no two-sided identity element")
    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            for c in range(n):
                if rows[ab][c] != rows[a][rows[b][c]]:
                    raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=[a, b, c])
    for a in range(n):
        if not any(rows[a][b] == e and rows[b][a] == e for b in range(n)):
            raise NoInverse(f"element {a} has no two-sided inverse", witness=a)
    if names is not None and len(names) != n:
        raise GroupError("names list has the wrong length")
    return FiniteGroup(rows, e, names)


def group_from_elements(elements: Sequence[Hashable], mul: Callable, names: Sequence[str] | None = None) -> FiniteGroup:
    """Table of a finite set closed under ``mul``; the identity is found by search."""
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return validate_table(table, names)


def generate_elements(gens: Sequence[Hashable], mul: Callable, identity: Hashable) -> list:
    seen = {identity: None}
    out = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s)
            if y not in seen:
                seen[y] = None
                out.append(y)
                queue.append(y)
    return out


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [s for s in set(gens) if s != g.identity]
    elems = {g.identity}
    queue = deque([g.identity])
    t = g.table
    while queue:
        x = queue.popleft()
        for s in gens:
            y = t[x][s]
            if y not in elems:
                elems.add(y)
                queue.append(y)
    return Subgroup(g, tuple(elems))


def normal_closure(g: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    seed = set(seed)
    for x in seed:
        if not 0 <= x < g.order:
            raise GroupError(f"element {x} not in group of order {g.order}")
    conjugates = {g.conj(h, x) for x in seed for h in range(g.order)}
    return subgroup_generated(g, conjugates)


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    return subgroup_generated(a.parent, a.elements + b.elements)


def meet(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup(a.parent, tuple(a._set & b._set))


def normality_witness(n: Subgroup) -> tuple[int, int] | None:
    """A pair (g, x) with g x g^-1 outside n, or None when n is normal."""
    g = n.parent
    for x in n.elements:
        for h in range(g.order):
            if g.conj(h, x) not in n:
                return (h, x)
    return None


def commutator_subgroup(n: Subgroup, m: Subgroup) -> Subgroup:
    """[N, M]: normal closure of all n m n^-1 m^-1."""
    g = n.parent
    return normal_closure(g, {g.commutator(a, b) for a in n.elements for b in m.elements})


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    gens = generating_set(g)
    return normal_closure(g, {g.commutator(a, b) for a in gens for b in gens})


def centre(g: FiniteGroup) -> Subgroup:
    t = g.table
    return Subgroup(g, tuple(z for z in range(g.order) if all(t[z][b] == t[b][z] for b in range(g.order))))


def is_perfect(g: FiniteGroup) -> bool:
    return derived_subgroup(g).order == g.order


def quotient_group(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    w = normality_witness(n)
    if w is not None:
        raise NotNormal(f"{g.name(w[0])} conjugates {g.name(w[1])} out of the subgroup", witness=list(w))
    coset_of = [-1] * g.order
    reps = []
    for x in range(g.order):
        if coset_of[x] < 0:
            k = len(reps)
            reps.append(x)
            for m in n.elements:
                coset_of[g.table[x][m]] = k
    table = [[coset_of[g.table[a][b]] for b in reps] for a in reps]
    q = FiniteGroup(table, coset_of[g.identity])
    return q, GroupHom(g, q, tuple(coset_of))


def induced_hom(q: GroupHom, f: GroupHom) -> GroupHom:
    """The map fbar with fbar o q = f, for q surjective with ker q inside ker f."""
    images = [-1] * q.target.order
    for x, y in enumerate(q.images):
        if images[y] < 0:
            images[y] = f.images[x]
        elif images[y] != f.images[x]:
            raise NotHomomorphism("map does not factor through the quotient", witness=x)
    return GroupHom(q.target, f.target, tuple(images))


def direct_product(a: FiniteGroup, b: FiniteGroup) -> tuple[FiniteGroup, GroupHom, GroupHom]:
    pairs = [(x, y) for x in range(a.order) for y in range(b.order)]
    return _pair_group(a, b, pairs)


def _pair_group(a: FiniteGroup, b: FiniteGroup, pairs: list[tuple[int, int]]) -> tuple[FiniteGroup, GroupHom, GroupHom]:
    index = {p: i for i, p in enumerate(pairs)}
    ta, tb = a.table, b.table
    table = [[index[(ta[x][u], tb[y][v])] for (u, v) in pairs] for (x, y) in pairs]
    names = None
    if a.names and b.names:
        names = [f"({a.names[x]},{b.names[y]})" for x, y in pairs]
    p = FiniteGroup(table, index[(a.identity, b.identity)], names)
    p.pairs = tuple(pairs)
    p.pair_index = index
    return p, GroupHom(p, a, tuple(x for x, _ in pairs)), GroupHom(p, b, tuple(y for _, y in pairs))


def fiber_product(f: GroupHom, g: GroupHom) -> tuple[FiniteGroup, GroupHom, GroupHom]:
    """{(b, c) : f(b) = g(c)} with its two projections."""
    if f.target is not g.target:
        raise GroupError("fiber product needs a common target")
    by_image: dict[int, list[int]] = {}
    for c, y in enumerate(g.images):
        by_image.setdefault(y, []).append(c)
    pairs = [(b, c) for b in range(f.source.order) for c in by_image.get(f.images[b], ())]
    return _pair_group(f.source, g.source, pairs)


def pair_hom(p: FiniteGroup, u: GroupHom, v: GroupHom) -> GroupHom:
    """x -> (u(x), v(x)) into a product-like group built by fiber_product."""
    images = []
    for x in range(u.source.order):
        key = (u.images[x], v.images[x])
        if key not in p.pair_index:
            raise NotHomomorphism("pair does not land in the fiber product", witness=x)
        images.append(p.pair_index[key])
    return GroupHom(u.source, p, tuple(images))


def generating_set(g: FiniteGroup) -> list[int]:
    """Greedy: repeatedly add the element that enlarges the generated subgroup most."""
    gens: list[int] = []
    current = g.trivial()
    while current.order < g.order:
        best, best_order = None, current.order
        for x in range(g.order):
            if x in current:
                continue
            order = subgroup_generated(g, gens + [x]).order
            if order > best_order:
                best, best_order = x, order
                if order == g.order:
                    break
        gens.append(best)
        current = subgroup_generated(g, gens)
    return gens


def enumerate_homs(
    src: FiniteGroup,
    dst: FiniteGroup,
    constraint: dict[int, int] | Iterable[tuple[int, int]] | None = None,
    allowed: Callable[[int], Iterable[int]] | None = None,
    guard: int = 256,
) -> list[GroupHom]:
    """All homomorphisms src -> dst, found by backtracking over generator images.

    ``constraint`` fixes images of given elements; ``allowed(x)`` restricts the
    image of every element x (used for lifting problems f o h = u).
    """
    if src.order > guard:
        raise SizeGuardExceeded(f"source order {src.order} exceeds guard {guard}")
    fixed = dict(constraint or {})
    allowed_sets = None
    if allowed is not None:
        allowed_sets = [frozenset(allowed(x)) for x in range(src.order)]
    gens = generating_set(src)
    st, dt = src.table, dst.table

    def ok(x: int, y: int) -> bool:
        if x in fixed and fixed[x] != y:
            return False
        return allowed_sets is None or y in allowed_sets[x]

    def propagate(images: list[int], ngens: int) -> bool:
        # BFS over the subgroup generated by gens[:ngens]; every edge must agree
        active = gens[:ngens]
        seen = [False] * src.order
        seen[src.identity] = True
        queue = deque([src.identity])
        while queue:
            x = queue.popleft()
            for s in active:
                y = st[x][s]
                val = dt[images[x]][images[s]]
                if images[y] < 0:
                    if not ok(y, val):
                        return False
                    images[y] = val
                elif images[y] != val:
                    return False
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        return True

    out: list[GroupHom] = []
    start = [-1] * src.order
    if not ok(src.identity, dst.identity):
        return out
    start[src.identity] = dst.identity

    def search(k: int, images: list[int]) -> None:
        if k == len(gens):
            out.append(GroupHom(src, dst, tuple(images)))
            return
        s = gens[k]
        order = src.element_order(s)
        if images[s] >= 0:
            candidates = [images[s]]
        else:
            candidates = [y for y in range(dst.order) if order % dst.element_order(y) == 0 and ok(s, y)]
        for y in candidates:
            trial = list(images)
            if trial[s] < 0:
                trial[s] = y
            elif trial[s] != y:
                continue
            if propagate(trial, k + 1):
                search(k + 1, trial)

    if not gens:
        out.append(GroupHom(src, dst, tuple(start)))
        return out
    search(0, start)
    return out


def automorphisms(g: FiniteGroup) -> list[GroupHom]:
    return [h for h in enumerate_homs(g, g) if h.is_bijective()]


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every normal subgroup: joins of normal closures of single elements, sorted by (order, elements)."""
    found = {}
    for x in range(g.order):
        n = normal_closure(g, [x])
        found.setdefault(n.elements, n)
    frontier = list(found.values())
    while frontier:
        new = []
        for a in frontier:
            for b in list(found.values()):
                j = join(a, b)
                if j.elements not in found:
                    found[j.elements] = j
                    new.append(j)
        frontier = new
    return sorted(found.values(), key=lambda s: (s.order, s.elements))

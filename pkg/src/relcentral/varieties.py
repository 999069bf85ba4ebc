"""Concrete varieties for the engine: finite groups and Leibniz/Lie algebras."""

from __future__ import annotations

from . import fingrp, leib
from .birkhoff import Variety
from .exactlin import RatMatrix, Subspace, image_of, intersect, preimage, sum_spaces
from .homology import CE, LODAY


class GroupVariety(Variety):
    """Groups relative to abelian groups."""

    name = "group-ab"
    reflector = "ab"

    def __init__(self, guard: int = 256):
        self.guard = guard

    def domain(self, f):
        return f.source

    def codomain(self, f):
        return f.target

    def identity(self, x):
        return fingrp.identity_hom(x)

    def compose(self, f, g):
        return f.compose(g)

    def is_surjective(self, f) -> bool:
        return f.is_surjective()

    def is_bijective(self, f) -> bool:
        return f.is_bijective()

    def fiber_product(self, f, g):
        return fingrp.fiber_product(f, g)

    def pair(self, p, u, v):
        return fingrp.pair_hom(p, u, v)

    def unit_kernel(self, x):
        return fingrp.derived_subgroup(x)

    def kernel(self, f):
        return f.kernel()

    def whole(self, x):
        return x.whole()

    def trivial_sub(self, x):
        return x.trivial()

    def intersect(self, a, b):
        return fingrp.meet(a, b)

    def join(self, a, b):
        return fingrp.join(a, b)

    def image(self, f, s):
        return f.image(s)

    def preimage(self, f, s):
        return f.preimage(s)

    def quotient(self, x, s):
        return fingrp.quotient_group(x, s)

    def induced(self, q, f):
        return fingrp.induced_hom(q, f)

    def is_zero(self, s) -> bool:
        return s.is_trivial()

    def sub_equal(self, a, b) -> bool:
        return a.elements == b.elements

    def contains(self, a, b) -> bool:
        return b.issubset(a)

    def size(self, x) -> int:
        return x.order

    def size_subquotient(self, a, b) -> int:
        return a.order // b.order

    def describe_sub(self, s) -> dict:
        return s.to_json()

    def describe_morphism(self, f) -> dict:
        return {"source_order": f.source.order, "target_order": f.target.order, "images": list(f.images)}

    def lifts(self, u, f):
        fibres: dict[int, list[int]] = {}
        for b, a in enumerate(f.images):
            fibres.setdefault(a, []).append(b)
        return fingrp.enumerate_homs(u.source, f.source, allowed=lambda x: fibres.get(u.images[x], ()), guard=self.guard)

    def section_exists(self, f) -> bool:
        return bool(self.lifts(fingrp.identity_hom(f.target), f))

    def product(self, a, m):
        return fingrp.direct_product(a, m)


# reflector -> (ambient variety, chain flavor for its homology)
ALGEBRA_REFLECTORS = {
    "vect": ("lie", CE),
    "lie": ("leib", None),
    "vect_lie": ("leib", LODAY),
    "ab": ("leib", LODAY),
}


class AlgebraVariety(Variety):
    """Leibniz or Lie algebras relative to one of the subvarieties named by ``reflector``.

    ``vect``: Lie algebras vs vector spaces; ``lie``: Leibniz vs Lie;
    ``vect_lie``: Leibniz vs vector spaces through Lie; ``ab``: Leibniz vs
    abelian objects (zero bracket), computed from the derived ideal alone.
    """

    def __init__(self, reflector: str, ambient: str | None = None):
        if reflector not in ALGEBRA_REFLECTORS:
            raise ValueError(f"unknown reflector {reflector!r}")
        self.reflector = reflector
        default_ambient, flavor = ALGEBRA_REFLECTORS[reflector]
        self.ambient = ambient or default_ambient
        self._flavor = flavor if self.ambient == default_ambient or flavor is None else (
            CE if self.ambient == "lie" else LODAY)
        self.name = f"{self.ambient}-{reflector}"

    def check_object(self, x) -> None:
        if self.ambient == "lie":
            leib._require_lie(x)
        else:
            leib._require_leibniz(x)

    def homology_flavor(self):
        return self._flavor

    def domain(self, f):
        return f.source

    def codomain(self, f):
        return f.target

    def identity(self, x):
        return leib.identity_hom(x)

    def compose(self, f, g):
        return f.compose(g)

    def is_surjective(self, f) -> bool:
        return f.is_surjective()

    def is_bijective(self, f) -> bool:
        return f.is_bijective()

    def fiber_product(self, f, g):
        return leib.fiber_product(f, g)

    def pair(self, p, u, v):
        return leib.pair_hom(p, u, v)

    def unit_kernel(self, x):
        return leib.unit_ideal(x, self.reflector)

    def kernel(self, f):
        return f.kernel()

    def whole(self, x):
        return Subspace.full(x.dim)

    def trivial_sub(self, x):
        return Subspace.zero(x.dim)

    def intersect(self, a, b):
        return intersect(a, b)

    def join(self, a, b):
        return sum_spaces(a, b)

    def image(self, f, s):
        return image_of(f.matrix, s)

    def preimage(self, f, s):
        return preimage(f.matrix, s)

    def quotient(self, x, s):
        q, proj, _ = leib.quotient_algebra(x, s)
        return q, proj

    def induced(self, q, f):
        return leib.induced_hom(q, f)

    def is_zero(self, s) -> bool:
        return s.is_zero()

    def sub_equal(self, a, b) -> bool:
        return a == b

    def contains(self, a, b) -> bool:
        return a.contains(b)

    def size(self, x) -> int:
        return x.dim

    def size_subquotient(self, a, b) -> int:
        return a.dim - b.dim

    def same_object(self, a, b) -> bool:
        return a is b or a.structure_key() == b.structure_key()

    def describe_sub(self, s) -> dict:
        return s.to_json()

    def describe_morphism(self, f) -> dict:
        return {"source_dim": f.source.dim, "target_dim": f.target.dim, "matrix": f.matrix.to_json()}

    def product(self, a, m):
        total = leib.direct_sum(a, m)
        n, k = a.dim, m.dim
        pa = RatMatrix.from_rows([[int(i == j) for j in range(n + k)] for i in range(n)], n + k) if n else RatMatrix.zeros(0, n + k)
        pm = RatMatrix.from_rows([[int(i + n == j) for j in range(n + k)] for i in range(k)], n + k) if k else RatMatrix.zeros(0, n + k)
        return total, leib.AlgebraHom(total, a, pa), leib.AlgebraHom(total, m, pm)


def variety_for(name: str, guard: int = 256) -> Variety:
    """Map a CLI variety name to an engine variety."""
    if name == "group-ab":
        return GroupVariety(guard)
    if name == "leib-lie":
        return AlgebraVariety("lie")
    if name == "leib-vect":
        return AlgebraVariety("vect_lie")
    if name == "lie-vect":
        return AlgebraVariety("vect")
    if name in ("pxm-xmod", "pxm-ab", "xmod-ab"):
        from .xmod import PXModVariety

        return PXModVariety({"pxm-xmod": "peiff", "pxm-ab": "pxm_ab", "xmod-ab": "xmod_ab"}[name], guard=guard)
    raise ValueError(f"unknown variety {name!r}")

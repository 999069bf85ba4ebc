"""Generic engine for central extensions relative to a Birkhoff subvariety.

Every construction is written once against :class:`Variety`; concrete varieties
(groups vs abelian groups, Leibniz/Lie algebras, precrossed modules) supply the
closure operations on objects, morphisms and normal subobjects.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any


class EngineError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSurjective(EngineError):
    pass


class NoHomEnumeration(EngineError):
    pass


class UnsupportedHomology(EngineError):
    pass


class FatalInconsistency(EngineError):
    """A computed verdict contradicts a proven equivalence; signals a bug."""


class Variety(ABC):
    """Contract for a variety A together with a Birkhoff subvariety B.

    Subobjects are normal subobjects in a representation chosen by the variety.
    """

    name: str = "variety"
    reflector: str = ""

    # objects and morphisms
    @abstractmethod
    def domain(self, f): ...

    @abstractmethod
    def codomain(self, f): ...

    @abstractmethod
    def identity(self, x): ...

    @abstractmethod
    def compose(self, f, g):
        """f o g"""

    @abstractmethod
    def is_surjective(self, f) -> bool: ...

    @abstractmethod
    def is_bijective(self, f) -> bool: ...

    @abstractmethod
    def fiber_product(self, f, g):
        """(P, p0, p1) with p0: P -> dom f and p1: P -> dom g."""

    @abstractmethod
    def pair(self, p, u, v):
        """The morphism x -> (u x, v x) into a fiber product p."""

    # normal subobjects
    @abstractmethod
    def unit_kernel(self, x):
        """[X, X]_B: the kernel of the reflection unit of x."""

    @abstractmethod
    def kernel(self, f): ...

    @abstractmethod
    def whole(self, x): ...

    @abstractmethod
    def trivial_sub(self, x): ...

    @abstractmethod
    def intersect(self, a, b): ...

    @abstractmethod
    def join(self, a, b): ...

    @abstractmethod
    def image(self, f, s): ...

    @abstractmethod
    def preimage(self, f, s): ...

    @abstractmethod
    def quotient(self, x, s):
        """(Q, projection x -> Q)."""

    @abstractmethod
    def induced(self, q, f):
        """fbar with fbar o q = f."""

    @abstractmethod
    def is_zero(self, s) -> bool: ...

    @abstractmethod
    def sub_equal(self, a, b) -> bool: ...

    @abstractmethod
    def contains(self, a, b) -> bool:
        """b inside a"""

    @abstractmethod
    def size(self, x) -> int:
        """Order (finite) or dimension (linear)."""

    @abstractmethod
    def size_subquotient(self, a, b) -> int:
        """Size of a/b for subobjects b inside a."""

    @abstractmethod
    def describe_sub(self, s) -> dict: ...

    @abstractmethod
    def describe_morphism(self, f) -> dict: ...

    # optional capabilities
    def check_object(self, x) -> None:
        """Raise if x does not lie in the ambient variety."""

    def lifts(self, u, f) -> list:
        """All h with f o h = u; finite varieties only."""
        raise NoHomEnumeration(f"{self.name} has no hom enumeration")

    def section_exists(self, f) -> bool | None:
        return None

    def product(self, a, m):
        """(A x M, projection to A, projection to M)."""
        raise NotImplementedError

    def homology_flavor(self) -> str | None:
        return None

    def same_object(self, a, b) -> bool:
        return a is b

    # derived helpers
    def reflect(self, x):
        return self.quotient(x, self.unit_kernel(x))

    def is_perfect(self, x) -> bool:
        return self.sub_equal(self.unit_kernel(x), self.whole(x))

    def in_subvariety(self, x) -> bool:
        return self.is_zero(self.unit_kernel(x))

    def extension(self, f) -> Extension:
        if not self.is_surjective(f):
            raise NotSurjective("an extension must be surjective", witness=self.describe_morphism(f))
        return Extension(f, self.kernel(f), self.domain(f), self.codomain(f))


@dataclass(eq=False)
class Extension:
    map: Any
    kernel: Any
    domain: Any
    codomain: Any


@dataclass
class ExtensionReport:
    relative_commutator: Any
    central: bool
    trivial: bool
    normal: bool
    split: bool | None
    checks: list[dict] = field(default_factory=list)

    def to_json(self, v: Variety, ext: Extension | None = None) -> dict:
        out = {
            "relative_commutator": v.describe_sub(self.relative_commutator),
            "central": self.central,
            "trivial": self.trivial,
            "normal": self.normal,
            "split": self.split,
            "checks": self.checks,
        }
        if ext is not None:
            out["extension"] = v.describe_morphism(ext.map)
        return out


def check(name: str, ok: bool | None, witness=None) -> dict:
    if ok is None:
        return {"name": name, "status": "skip", "witness": witness}
    out = {"name": name, "status": "pass" if ok else "fail"}
    if not ok:
        out["witness"] = witness if witness is not None else "condition is false"
    return out


def relative_commutator(v: Variety, f: Extension):
    """[K, B]_B = f1([R[f], R[f]]_B meet ker f0) as a subobject of the domain."""
    r, f0, f1 = v.fiber_product(f.map, f.map)
    s = v.unit_kernel(r)
    return v.image(f1, v.intersect(s, v.kernel(f0)))


def reflection_of(v: Variety, f):
    """The square B -> 1B, A -> 1A with the induced map 1f between reflections."""
    qb = v.reflect(v.domain(f))[1]
    qa = v.reflect(v.codomain(f))[1]
    return qb, qa, v.induced(qb, v.compose(qa, f))


def is_trivial(v: Variety, f) -> bool:
    """The comparison B -> 1B x_{1A} A is bijective."""
    qb, qa, bf = reflection_of(v, f)
    p, _, _ = v.fiber_product(bf, qa)
    return v.is_bijective(v.pair(p, qb, f))


def is_normal(v: Variety, f) -> bool:
    r, f0, _ = v.fiber_product(f, f)
    return is_trivial(v, f0)


def classify_extension(v: Variety, f: Extension, with_split: bool = True) -> ExtensionReport:
    comm = relative_commutator(v, f)
    central = v.is_zero(comm)
    trivial = is_trivial(v, f.map)
    normal = is_normal(v, f.map)
    split = v.section_exists(f.map) if with_split else None
    checks = [
        check("central_iff_normal", central == normal, {"central": central, "normal": normal}),
        check("commutator_inside_kernel", v.contains(f.kernel, comm)),
    ]
    if split is None:
        checks.append(check("split_central_iff_trivial", None, "no section search for this variety"))
    else:
        ok = (central == trivial) if split else True
        checks.append(check("split_central_iff_trivial", ok, {"split": split, "central": central, "trivial": trivial}))
    return ExtensionReport(comm, central, trivial, normal, split, checks)


def centralise(v: Variety, f: Extension) -> tuple[Extension, Any]:
    """B/[K,B]_B -> A together with the unit B -> B/[K,B]_B; the result is re-verified central."""
    comm = relative_commutator(v, f)
    _, q = v.quotient(f.domain, comm)
    fbar = v.induced(q, f.map)
    out = v.extension(fbar)
    if not v.is_zero(relative_commutator(v, out)):
        raise FatalInconsistency("centralisation is not central", witness=v.describe_sub(relative_commutator(v, out)))
    return out, q


def compose_central_check(v: Variety, f: Extension, g: Extension) -> dict:
    """Composite of central f: B -> A and g: C -> B with C perfect must be central."""
    reasons = []
    if not v.same_object(g.codomain, f.domain):
        raise EngineError("g must land in the domain of f")
    f_central = v.is_zero(relative_commutator(v, f))
    g_central = v.is_zero(relative_commutator(v, g))
    perfect = v.is_perfect(g.domain)
    if not f_central:
        reasons.append("f is not central")
    if not g_central:
        reasons.append("g is not central")
    if not perfect:
        reasons.append("domain of g is not perfect")
    fg = v.extension(v.compose(f.map, g.map))
    comp_central = v.is_zero(relative_commutator(v, fg))
    out = {
        "f_central": f_central,
        "g_central": g_central,
        "domain_perfect": perfect,
        "composite_central": comp_central,
    }
    if reasons:
        out["status"] = "skip"
        out["reasons"] = reasons
    elif comp_central:
        out["status"] = "pass"
    else:
        raise FatalInconsistency("composite of central extensions with perfect domain is not central", witness=out)
    return out


def trivial_product_extension(v: Variety, a, m) -> Extension:
    """pr_A: A x M -> A for M in the subvariety."""
    _, pa, _ = v.product(a, m)
    return v.extension(pa)


def universality_certificate(v: Variety, u: Extension, family: list[Extension] | None = None) -> dict:
    """Perfectness of the domain of u and, per family member f, existence and uniqueness of h with f o h = u.

    Linear varieties use the homological route: universal iff H1(U) = H2(U) = 0.
    """
    perfect = v.is_perfect(u.domain)
    central = v.is_zero(relative_commutator(v, u))
    out: dict = {"perfect": perfect, "central": central}
    flavor = v.homology_flavor()
    if flavor is not None:
        from .homology import chain_complex

        h1 = v.size(v.reflect(u.domain)[0])
        h2 = chain_complex(u.domain, flavor).h2_dim
        out["homological"] = {"h1": h1, "h2": h2, "universal": h1 == 0 and h2 == 0}
        out["universal"] = central and h1 == 0 and h2 == 0
        out["factorizations"] = []
        return out
    if family is None:
        family = [u]
    facts = []
    for f in family:
        hs = v.lifts(u.map, f.map)
        facts.append({"exists": bool(hs), "unique": len(hs) == 1, "count": len(hs)})
    out["factorizations"] = facts
    out["universal"] = central and perfect and all(x["exists"] and x["unique"] for x in facts)
    return out


def h1_tail_report(v: Variety, f: Extension, comm=None) -> dict:
    """K/[K,B] -> H1(B) -> H1(A) -> 0, checked on subobjects of B and A."""
    if comm is None:
        comm = relative_commutator(v, f)
    ub = v.unit_kernel(f.domain)
    ua = v.unit_kernel(f.codomain)
    lhs = v.join(f.kernel, ub)
    rhs = v.preimage(f.map, ua)
    tail = v.join(v.image(f.map, v.whole(f.domain)), ua)
    terms = {
        "k_mod_commutator": v.size_subquotient(f.kernel, comm),
        "h1_domain": v.size(v.reflect(f.domain)[0]),
        "h1_codomain": v.size(v.reflect(f.codomain)[0]),
    }
    checks = [
        check("commutator_inside_kernel", v.contains(f.kernel, comm)),
        check("exact_at_h1_domain", v.sub_equal(lhs, rhs),
              {"image": v.describe_sub(lhs), "kernel": v.describe_sub(rhs)}),
        check("tail_surjective", v.sub_equal(tail, v.whole(f.codomain))),
    ]
    return {"terms": terms, "checks": checks}


def five_term_report(v: Variety, f: Extension) -> dict:
    """H2(B) -> H2(A) -> K/[K,B] -> H1(B) -> H1(A) -> 0 with exactness at each computable junction."""
    comm = relative_commutator(v, f)
    flavor = v.homology_flavor()
    if flavor is None:
        out = h1_tail_report(v, f, comm)
        out["complete"] = False
        out["unavailable"] = ["h2_domain", "h2_codomain"]
        return out
    from .homology import five_term_linear

    return five_term_linear(f.map, f.kernel, comm, flavor, v.reflector)


def comparison_centrality_check(inner: Variety, outer: Variety, f: Extension) -> dict:
    """An extension living in the middle variety is central for the inner reflector iff for the composite one."""
    a = inner.is_zero(relative_commutator(inner, f))
    b = outer.is_zero(relative_commutator(outer, f))
    return check("comparison_centrality_agrees", a == b, {"inner": a, "composite": b}) | {"inner": a, "composite": b}


def comparison_report(g) -> dict:
    """Leib > Lie > Vect: dim HL2(g) = dim H2(g) + dim HL2(U(g, vect)) for a perfect Lie algebra g,
    with the adjunction and comparison-of-centrality checks that support it."""
    from . import leib
    from .exactlin import Subspace
    from .homology import NotPerfect, ce_h2, chain_complex, h1, liesation_of, loday_hl2, uce_construct, CE
    from .varieties import AlgebraVariety

    leib._require_lie(g)
    if not leib.is_perfect(g, "vect"):
        raise NotPerfect("comparison needs a perfect Lie algebra", witness={"h1": h1(g, "vect")})
    h2 = ce_h2(g)[0]
    hl2 = loday_hl2(g)[0]
    u_lie = uce_construct(g, "lie_vs_vect")
    hl2_u = loday_hl2(u_lie.total)[0]
    checks = [check("additivity", hl2 == h2 + hl2_u, {"hl2": hl2, "h2": h2, "hl2_of_uce": hl2_u})]

    # Liesation of the Leibniz UCE is the Lie UCE: certified by H1 = H2 = 0 and matching kernels
    u_leib = uce_construct(g, "leib_vs_vectlie")
    lz = liesation_of(u_leib.projection)
    vect = AlgebraVariety("vect")
    lz_central = vect.is_zero(relative_commutator(vect, vect.extension(lz)))
    lz_h1 = h1(lz.source, "vect")
    lz_h2 = chain_complex(lz.source, CE).h2_dim
    lz_kernel = lz.kernel().dim
    ok = lz_central and lz_h1 == 0 and lz_h2 == 0 and lz_kernel == u_lie.kernel.dim
    checks.append(check("liesation_preserves_uce", ok, {
        "central": lz_central, "h1": lz_h1, "h2": lz_h2, "kernel_dim": lz_kernel, "lie_uce_kernel_dim": u_lie.kernel.dim}))

    # [U, U]_Lie of the Leibniz UCE has the dimension of HL2 of the Lie UCE
    ann_dim = leib.ann_ideal(u_leib.total).dim
    checks.append(check("ann_of_leibniz_uce", ann_dim == hl2_u, {"ann_dim": ann_dim, "hl2_of_uce": hl2_u}))

    # on extensions inside Lie, vect-centrality agrees with vect o lie-centrality
    composite = AlgebraVariety("vect_lie")
    sampled = [leib.identity_hom(g), u_lie.projection, lz]
    for v in u_lie.kernel.vectors:
        q = leib.quotient_algebra(u_lie.total, Subspace.span(u_lie.total.dim, [v]))[1]
        sampled.append(q)
    total, pa, _ = vect.product(g, leib.abelian(1))
    sampled.append(pa)
    agree = []
    for f in sampled:
        a = vect.is_zero(relative_commutator(vect, vect.extension(f)))
        b = composite.is_zero(relative_commutator(composite, composite.extension(f)))
        agree.append(a == b)
    checks.append(check("comparison_centrality_agrees", all(agree), {"per_extension": agree}))
    return {
        "h2": h2,
        "hl2": hl2,
        "hl2_of_uce": hl2_u,
        "lie_uce_dim": u_lie.total.dim,
        "leibniz_uce_dim": u_leib.total.dim,
        "uce_equal": hl2 == h2,
        "checks": checks,
    }

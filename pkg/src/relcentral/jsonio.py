"""JSON input parsing with error loci, and canonical JSON output."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import catalog, fingrp, leib, xmod
from .exactlin import RatMatrix, Subspace, to_rational


class ParseError(ValueError):
    def __init__(self, message: str, locus: str = ""):
        super().__init__(f"{locus}: {message}" if locus else message)
        self.locus = locus


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


class Loader:
    """Resolves nested objects: inline JSON, ``{"builtin": name}`` or a relative file path."""

    def __init__(self, base: Path | None = None, validate_groups: bool = True, size_guard: int = 4096):
        self.base = base or Path.cwd()
        self.validate_groups = validate_groups
        self.size_guard = size_guard

    def _resolve(self, data, locus: str):
        if isinstance(data, str):
            path = (self.base / data).resolve()
            return load_json(path), Loader(path.parent, self.validate_groups, self.size_guard), str(path)
        if not isinstance(data, dict):
            raise ParseError("expected an object, a builtin reference or a file path", locus)
        return data, self, locus

    # ------------------------------------------------------------ groups

    def group(self, data, locus: str = "group") -> fingrp.FiniteGroup:
        data, loader, locus = self._resolve(data, locus)
        if "builtin" in data:
            try:
                return catalog.group(data["builtin"])
            except KeyError as exc:
                raise ParseError(str(exc.args[0]), f"{locus}.builtin") from None
        table = data.get("table")
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise ParseError("missing square 'table'", f"{locus}.table")
        order = data.get("order", len(table))
        if order != len(table):
            raise ParseError(f"order {order} does not match table size {len(table)}", f"{locus}.order")
        if order > loader.size_guard:
            raise ParseError(f"group order {order} exceeds the size guard {loader.size_guard}", locus)
        for i, row in enumerate(table):
            if len(row) != order or not all(isinstance(x, int) and 0 <= x < order for x in row):
                raise ParseError("rows must list element indices", f"{locus}.table[{i}]")
        try:
            return fingrp.validate_table(table, data.get("names"))
        except fingrp.GroupError as exc:
            raise ParseError(f"{type(exc).__name__}: {exc} (witness {exc.witness})", f"{locus}.table") from None

    def subgroup(self, g: fingrp.FiniteGroup, data, locus: str) -> fingrp.Subgroup:
        if not isinstance(data, list) or not all(isinstance(x, int) and 0 <= x < g.order for x in data):
            raise ParseError("expected a list of element indices", locus)
        return fingrp.subgroup_generated(g, data)

    def group_hom(self, data, locus: str = "extension") -> fingrp.GroupHom:
        data, loader, locus = self._resolve(data, locus)
        src = loader.group(data.get("source"), f"{locus}.source")
        if "kernel" in data:
            n = fingrp.normal_closure(src, loader.subgroup(src, data["kernel"], f"{locus}.kernel").elements)
            return fingrp.quotient_group(src, n)[1]
        tgt = loader.group(data.get("target"), f"{locus}.target")
        images = data.get("images")
        if not isinstance(images, list) or len(images) != src.order:
            raise ParseError("expected one image per source element", f"{locus}.images")
        f = fingrp.GroupHom(src, tgt, tuple(images))
        try:
            f.check()
        except fingrp.GroupError as exc:
            raise ParseError(f"not a homomorphism (witness {exc.witness})", f"{locus}.images") from None
        return f

    # ------------------------------------------------------------ algebras

    def algebra(self, data, locus: str = "algebra") -> leib.LeibnizAlgebra:
        data, loader, locus = self._resolve(data, locus)
        if "builtin" in data:
            try:
                return catalog.algebra(data["builtin"])
            except KeyError as exc:
                raise ParseError(str(exc.args[0]), f"{locus}.builtin") from None
        if not isinstance(data.get("dim"), int) or data["dim"] < 0:
            raise ParseError("missing non-negative integer 'dim'", f"{locus}.dim")
        try:
            return leib.algebra_from_json(data)
        except (leib.AlgebraError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), f"{locus}.brackets") from None

    def vectors(self, data, n: int, locus: str) -> list:
        if not isinstance(data, list):
            raise ParseError("expected a list of vectors", locus)
        out = []
        for i, v in enumerate(data):
            if not isinstance(v, list) or len(v) != n:
                raise ParseError(f"expected a vector of length {n}", f"{locus}[{i}]")
            try:
                out.append(tuple(to_rational(x) for x in v))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), f"{locus}[{i}]") from None
        return out

    def algebra_hom(self, data, locus: str = "extension") -> leib.AlgebraHom:
        data, loader, locus = self._resolve(data, locus)
        src = loader.algebra(data.get("source"), f"{locus}.source")
        if "ideal" in data:
            ideal = leib.ideal_closure(src, Subspace.span(src.dim, loader.vectors(data["ideal"], src.dim, f"{locus}.ideal")))
            return leib.quotient_algebra(src, ideal)[1]
        tgt = loader.algebra(data.get("target"), f"{locus}.target")
        rows = loader.vectors(data.get("matrix"), src.dim, f"{locus}.matrix")
        if len(rows) != tgt.dim:
            raise ParseError(f"expected {tgt.dim} rows", f"{locus}.matrix")
        m = RatMatrix.from_rows(rows, src.dim) if rows else RatMatrix.zeros(0, src.dim)
        f = leib.AlgebraHom(src, tgt, m)
        try:
            f.check()
        except leib.AlgebraError as exc:
            raise ParseError(f"not a homomorphism (witness {exc.witness})", f"{locus}.matrix") from None
        return f

    # ------------------------------------------------------------ precrossed modules

    def pxm(self, data, locus: str = "pxm") -> xmod.PrecrossedModule:
        data, loader, locus = self._resolve(data, locus)
        if "builtin" in data:
            return builtin_pxm(data["builtin"], f"{locus}.builtin")
        T = loader.group(data.get("T"), f"{locus}.T")
        G = loader.group(data.get("G"), f"{locus}.G")
        if T.order * G.order > loader.size_guard:
            raise ParseError(f"|T|*|G| = {T.order * G.order} exceeds the size guard {loader.size_guard}", locus)
        d = data.get("boundary")
        if not isinstance(d, list) or len(d) != T.order or not all(isinstance(x, int) and 0 <= x < G.order for x in d):
            raise ParseError("expected one G-index per element of T", f"{locus}.boundary")
        act = data.get("action")
        if (not isinstance(act, list) or len(act) != G.order
                or not all(isinstance(r, list) and len(r) == T.order for r in act)):
            raise ParseError("expected a |G| x |T| table", f"{locus}.action")
        try:
            return xmod.PrecrossedModule(T, G, fingrp.GroupHom(T, G, tuple(d)), act)
        except xmod.PXMError as exc:
            raise ParseError(str(exc), locus) from None

    def pxm_sub(self, x: xmod.PrecrossedModule, data, locus: str) -> xmod.PXSub:
        if not isinstance(data, dict):
            raise ParseError("expected {\"T\": [...], \"G\": [...]}", locus)
        m = self.subgroup(x.T, data.get("T", []), f"{locus}.T")
        h = self.subgroup(x.G, data.get("G", []), f"{locus}.G")
        return xmod.PXSub(m, h)

    def pxm_hom(self, data, locus: str = "extension") -> xmod.XModHom:
        data, loader, locus = self._resolve(data, locus)
        src = loader.pxm(data.get("source"), f"{locus}.source")
        if "kernel" in data:
            s = loader.pxm_sub(src, data["kernel"], f"{locus}.kernel")
            try:
                return xmod.quotient_pxm(src, s)[1]
            except fingrp.GroupError as exc:
                raise ParseError(f"{exc} (witness {exc.witness})", f"{locus}.kernel") from None
        tgt = loader.pxm(data.get("target"), f"{locus}.target")
        f1, f0 = data.get("f1"), data.get("f0")
        if not isinstance(f1, list) or len(f1) != src.T.order:
            raise ParseError("expected one image per element of T", f"{locus}.f1")
        if not isinstance(f0, list) or len(f0) != src.G.order:
            raise ParseError("expected one image per element of G", f"{locus}.f0")
        f = xmod.XModHom(src, tgt, fingrp.GroupHom(src.T, tgt.T, tuple(f1)), fingrp.GroupHom(src.G, tgt.G, tuple(f0)))
        try:
            f.check()
        except fingrp.GroupError as exc:
            raise ParseError(f"not a morphism (witness {exc.witness})", locus) from None
        return f


def builtin_pxm(name: str, locus: str = "builtin") -> xmod.PrecrossedModule:
    """``conj:<group>`` or ``trivial:<group>`` (boundary to the trivial group, trivial action)."""
    kind, _, gname = str(name).partition(":")
    try:
        g = catalog.group(gname)
    except KeyError as exc:
        raise ParseError(str(exc.args[0]), locus) from None
    if kind == "conj":
        return xmod.conjugation_module(g)
    if kind == "trivial":
        return xmod.trivial_module(g)
    raise ParseError(f"unknown builtin precrossed module {name!r}", locus)

"""Command line interface: one subcommand per engine operation, JSON reports on stdout or --out."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import birkhoff as bk
from . import fingrp, homology, leib, xmod
from .jsonio import Loader, ParseError, dumps, load_json
from .varieties import AlgebraVariety, variety_for

SCHEMA_VERSION = 1
VARIETIES = ("group-ab", "leib-lie", "leib-vect", "lie-vect", "pxm-xmod", "pxm-ab", "xmod-ab")
COMMANDS = ("check", "reflect", "commutator", "classify", "centralise", "homology", "uce", "five-term",
            "compare", "certify")
ALGEBRA_VARIETIES = ("leib-lie", "leib-vect", "lie-vect")
PXM_VARIETIES = ("pxm-xmod", "pxm-ab", "xmod-ab")
# commands whose input is a single object rather than an extension
OBJECT_COMMANDS = ("check", "reflect", "homology", "uce", "compare")


class InputError(ValueError):
    pass


def kind_of(variety: str) -> str:
    if variety == "group-ab":
        return "group"
    return "algebra" if variety in ALGEBRA_VARIETIES else "pxm"


def load_object(loader: Loader, variety: str, data, locus: str):
    kind = kind_of(variety)
    if kind == "group":
        return loader.group(data, locus)
    if kind == "algebra":
        return loader.algebra(data, locus)
    return loader.pxm(data, locus)


def load_morphism(loader: Loader, variety: str, data, locus: str):
    kind = kind_of(variety)
    if kind == "group":
        return loader.group_hom(data, locus)
    if kind == "algebra":
        return loader.algebra_hom(data, locus)
    return loader.pxm_hom(data, locus)


def object_json(variety: str, x) -> dict:
    return x.to_json()


def require_ambient(v: bk.Variety, x, locus: str) -> None:
    try:
        v.check_object(x)
    except (leib.AlgebraError, fingrp.GroupError) as exc:
        raise InputError(f"{locus}: {exc} (witness {exc.witness})") from None


# ------------------------------------------------------------------ commands


def cmd_check(v, variety, x):
    kind = kind_of(variety)
    if kind == "group":
        results = {"order": x.order, "abelian": x.is_abelian(), "perfect": fingrp.is_perfect(x)}
        return results, [bk.check("valid_group", True)]
    if kind == "algebra":
        verdict = leib.validate_algebra(x)
        ok = verdict["is_lie"] if variety == "lie-vect" else verdict["is_leibniz"]
        results = dict(verdict)
        if ok:
            results["in_subvariety"] = v.in_subvariety(x)
            results["perfect"] = v.is_perfect(x)
        return results, [bk.check("in_ambient_variety", ok, verdict["witness"])]
    verdict = xmod.validate_pxm(x)
    ok = verdict["is_crossed"] if variety == "xmod-ab" else verdict["is_precrossed"]
    results = dict(verdict)
    return results, [bk.check("in_ambient_variety", ok, verdict["witness"])]


def cmd_reflect(v, variety, x):
    q, unit = v.reflect(x)
    q2, unit2 = v.reflect(q)
    results = {
        "reflection": object_json(variety, q),
        "unit_kernel": v.describe_sub(v.unit_kernel(x)),
        "size": v.size(q),
        "perfect": v.is_perfect(x),
    }
    checks = [
        bk.check("reflection_in_subvariety", v.in_subvariety(q)),
        bk.check("reflection_idempotent", v.is_bijective(unit2)),
    ]
    if kind_of(variety) == "pxm":
        verdict = xmod.validate_pxm(q)
        checks.append(bk.check("reflection_crossed", verdict["is_crossed"], verdict["witness"]))
    return results, checks


def classical_cross_check(v, variety, ext, comm) -> dict | None:
    """Independent characterisation of the relative commutator or of centrality."""
    if variety == "group-ab":
        direct = fingrp.commutator_subgroup(ext.kernel, ext.domain.whole())
        return bk.check("equals_classical_commutator", direct.elements == comm.elements,
                        {"classical": direct.to_json(), "generic": comm.to_json()})
    if variety == "lie-vect":
        direct = leib.classical_commutator(ext.domain, ext.kernel)
        return bk.check("equals_classical_commutator", v.sub_equal(direct, comm),
                        {"classical_dim": direct.dim, "generic_dim": comm.dim})
    if variety == "leib-lie":
        inside = leib.z_lie(ext.domain).space.contains(ext.kernel)
        return bk.check("central_iff_kernel_in_lie_centre", inside == comm.is_zero(), {"kernel_in_centre": inside})
    if variety == "pxm-xmod":
        trivial = xmod.peiffer_commutator(ext.domain, ext.kernel, ext.domain.whole()).is_trivial()
        return bk.check("central_iff_peiffer_trivial", trivial == comm.is_trivial(), {"peiffer_trivial": trivial})
    return None


def cmd_commutator(v, variety, ext):
    comm = bk.relative_commutator(v, ext)
    results = {"relative_commutator": v.describe_sub(comm), "central": v.is_zero(comm)}
    checks = [bk.check("commutator_inside_kernel", v.contains(ext.kernel, comm))]
    cc = classical_cross_check(v, variety, ext, comm)
    if cc is not None:
        checks.append(cc)
    return results, checks


def cmd_classify(v, variety, ext):
    rep = bk.classify_extension(v, ext)
    results = rep.to_json(v, ext)
    checks = results.pop("checks")
    cc = classical_cross_check(v, variety, ext, rep.relative_commutator)
    if cc is not None:
        checks.append(cc)
    if variety == "pxm-xmod":
        eq = xmod.centrality_equiv(ext.map)
        results["centrality_conditions"] = eq["conditions"]
        checks.append(bk.check("centrality_conditions_agree", eq["agree"], eq["conditions"]))
    return results, checks


def cmd_centralise(v, variety, ext):
    out, unit = bk.centralise(v, ext)
    again, unit2 = bk.centralise(v, out)
    results = {
        "centralisation": v.describe_morphism(out.map),
        "unit_kernel": v.describe_sub(v.kernel(unit)),
        "unit_bijective": v.is_bijective(unit),
        "domain_size": v.size(out.domain),
    }
    checks = [
        bk.check("centralisation_central", v.is_zero(bk.relative_commutator(v, out))),
        bk.check("centralisation_idempotent", v.is_bijective(unit2)),
    ]
    return results, checks


def cmd_homology(v, variety, x):
    flavor = v.homology_flavor()
    if flavor is None:
        raise bk.UnsupportedHomology(f"no second homology is computed for variety {variety}")
    dim, chain = homology.ce_h2(x) if flavor == homology.CE else homology.loday_hl2(x)
    results = {"h1": homology.h1(x, v.reflector), "h2": dim, "chain": chain.to_json(),
               "representatives": [[str(c) for c in r] for r in chain.representatives()]}
    checks = [
        bk.check("d2_d3_zero", chain.is_complex()),
        bk.check("rank_nullity", dim == chain.degree2_dim - chain.rank_d2 - chain.rank_d3),
    ]
    return results, checks


def cmd_uce(v, variety, x):
    if variety not in ("lie-vect", "leib-vect"):
        raise bk.UnsupportedHomology(f"no universal central extension is constructed for variety {variety}")
    name = "lie_vs_vect" if variety == "lie-vect" else "leib_vs_vectlie"
    r = homology.uce_construct(x, name)
    cert = bk.universality_certificate(v, v.extension(r.projection))
    results = r.to_json() | {"certificate": cert}
    checks = list(r.checks)
    checks.append(bk.check("certificate", cert["universal"], cert))
    ab = AlgebraVariety("ab", ambient="lie" if variety == "lie-vect" else "leib")
    ab_central = ab.is_zero(bk.relative_commutator(ab, ab.extension(r.projection)))
    checks.append(bk.check("ab_central", ab_central))
    return results, checks


def cmd_five_term(v, variety, ext):
    rep = bk.five_term_report(v, ext)
    checks = rep.pop("checks")
    return rep, checks


def cmd_compare(v, variety, x):
    if variety not in ("lie-vect", "leib-vect"):
        raise InputError("compare works on Lie algebras inside Leibniz algebras (use lie-vect or leib-vect)")
    try:
        leib._require_lie(x)
    except leib.AlgebraError as exc:
        raise InputError(f"input: {exc}") from None
    rep = bk.comparison_report(x)
    checks = rep.pop("checks")
    return rep, checks


def cmd_certify(v, variety, ext, family):
    cert = bk.universality_certificate(v, ext, family or None)
    checks = [bk.check("central", cert["central"]), bk.check("universal", cert["universal"], cert)]
    return cert, checks


HANDLERS = {
    "check": cmd_check,
    "reflect": cmd_reflect,
    "commutator": cmd_commutator,
    "classify": cmd_classify,
    "centralise": cmd_centralise,
    "homology": cmd_homology,
    "uce": cmd_uce,
    "five-term": cmd_five_term,
    "compare": cmd_compare,
}


def run_job(command: str, variety: str, inputs: list, base: Path | None = None, guard: int = 4096) -> dict:
    """Run one job on already-decoded JSON inputs (objects, builtin refs or paths)."""
    if variety not in VARIETIES:
        raise InputError(f"unknown variety {variety!r}")
    if not inputs:
        raise InputError("no input given")
    loader = Loader(base, size_guard=guard)
    v = variety_for(variety, guard=min(256, guard))
    if command in OBJECT_COMMANDS:
        x = load_object(loader, variety, inputs[0], "input")
        if command != "check":
            require_ambient(v, x, "input")
        results, checks = HANDLERS[command](v, variety, x)
    else:
        maps = [load_morphism(loader, variety, d, f"input[{i}]") for i, d in enumerate(inputs)]
        for i, f in enumerate(maps):
            require_ambient(v, v.domain(f), f"input[{i}].source")
            require_ambient(v, v.codomain(f), f"input[{i}].target")
        try:
            exts = [v.extension(f) for f in maps]
        except bk.NotSurjective as exc:
            raise InputError(f"{exc} (witness {exc.witness})") from None
        if command == "certify":
            results, checks = cmd_certify(v, variety, exts[0], exts[1:])
        else:
            results, checks = HANDLERS[command](v, variety, exts[0])
    return {"results": results, "checks": checks}


def render_pretty(report: dict) -> str:
    lines = [f"job: {report['job']['command']} ({report['job']['variety']})"]
    for c in report["checks"]:
        status = c["status"].upper()
        tail = f"  witness: {dumps(c['witness'])}" if c["status"] != "pass" and c.get("witness") is not None else ""
        lines.append(f"  [{status}] {c['name']}{tail}")
    lines.append("results:")
    lines.append(json.dumps(report["results"], sort_keys=True, indent=2))
    return "\n".join(lines) + "\n"


def make_report(job: dict, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "job": job, "results": body["results"], "checks": body["checks"]}


def exit_code(report: dict) -> int:
    return 1 if any(c["status"] == "fail" for c in report["checks"]) else 0


def emit(report: dict, out: str | None, pretty: bool) -> None:
    text = render_pretty(report) if pretty else dumps(report) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ selftest


def default_corpus() -> Path:
    return Path(__file__).with_name("corpus")


def lookup(data, dotted: str):
    cur = data
    for part in dotted.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        else:
            cur = cur[part]
    return cur


def selftest(corpus: Path | None = None) -> dict:
    corpus = Path(os.environ.get("BIRKHOFF_CORPUS") or corpus or default_corpus())
    checks = []
    entries = []
    for path in sorted(corpus.glob("*.json")) if corpus.is_dir() else []:
        try:
            entry = load_json(path)
            name = entry.get("name", path.stem)
            body = run_job(entry["command"], entry["variety"], entry["inputs"], base=path.parent)
        except (ParseError, InputError, KeyError, bk.EngineError, leib.AlgebraError, fingrp.GroupError) as exc:
            checks.append(bk.check(path.stem, False, {"error": str(exc)}))
            continue
        failed = [c["name"] for c in body["checks"] if c["status"] == "fail"]
        mismatches = {}
        for key, want in entry.get("expect", {}).items():
            try:
                got = lookup(body["results"], key)
            except (KeyError, IndexError, ValueError, TypeError):
                got = None
            if got != want:
                mismatches[key] = {"expected": want, "got": got}
        ok = not failed and not mismatches
        witness = None if ok else {"failed_checks": failed, "mismatches": mismatches}
        checks.append(bk.check(name, ok, witness))
        entries.append({"name": name, "command": entry["command"], "variety": entry["variety"]})
    summary = {
        "total": len(checks),
        "passed": sum(c["status"] == "pass" for c in checks),
        "failed": sum(c["status"] == "fail" for c in checks),
        "entries": entries,
    }
    return make_report({"command": "selftest", "variety": None, "inputs": [str(corpus)]}, {"results": summary, "checks": checks})


# ------------------------------------------------------------------ argparse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable view of the same report")
    common.add_argument("--guard-size", type=int, default=4096, metavar="N",
                        help="reject inputs larger than N (group order, |T|*|G|)")

    parser = argparse.ArgumentParser(prog="relcentral", description="Relative central extensions: exact computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--variety", required=True, choices=VARIETIES)
        nargs = "+" if name == "certify" else 1
        p.add_argument("inputs", nargs=nargs, help="JSON input file(s)")
    p = sub.add_parser("selftest", parents=[common])
    p.add_argument("--corpus", help="corpus directory (overridden by BIRKHOFF_CORPUS)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        report = selftest(Path(args.corpus) if args.corpus else None)
        emit(report, args.out, args.pretty)
        return exit_code(report)
    job = {"command": args.command, "variety": args.variety, "inputs": list(args.inputs)}
    try:
        data = [load_json(p) for p in args.inputs]
        base = Path(args.inputs[0]).resolve().parent
        body = run_job(args.command, args.variety, data, base=base, guard=args.guard_size)
    except (ParseError, InputError, bk.UnsupportedHomology, homology.NotPerfect, xmod.PXMError) as exc:
        err = {"schema_version": SCHEMA_VERSION, "job": job, "error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            err["locus"] = exc.locus
        sys.stderr.write(dumps(err) + "\n")
        return 2
    except (fingrp.SizeGuardExceeded, xmod.SizeGuard) as exc:
        sys.stderr.write(dumps({"schema_version": SCHEMA_VERSION, "job": job, "error": "SizeGuardExceeded", "message": str(exc)}) + "\n")
        return 2
    report = make_report(job, body)
    emit(report, args.out, args.pretty)
    return exit_code(report)


if __name__ == "__main__":
    raise SystemExit(main())

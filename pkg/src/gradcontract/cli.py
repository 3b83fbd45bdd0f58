"""Command-line front end: ``gradcontract <command> [options]``.

Exit codes: 0 on success, 1 when a result disagrees with the shipped
expected counts, 2 on usage or data errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import warnings
from importlib import resources
from itertools import combinations

from . import contraction as C
from . import grading
from .exactnum.field import ScalarSyntaxError, UnboundParameter, format_scalar, parse_scalar
from .identify import fingerprint, run_catalog
from .invariants import NotNilpotent, casimirs, psi, six_tuple, tau
from .liealg import AlgebraFormatError, LieAlgebra, predicates, series

FORMATS = ("json", "csv", "text")
SYSTEMS = ("full", "reduced", "extend", "ropa")


class UsageError(Exception):
    pass


def expected_counts() -> dict:
    text = resources.files("gradcontract").joinpath("data/expected_counts.json").read_text()
    return json.loads(text)


def parse_params(text: str | None, allowed=None) -> dict:
    """``a=2,b=-1/2`` -> {"a": FieldScalar(2), "b": FieldScalar(-1/2)}."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"parameter binding {item!r} is not of the form name=value")
        name, value = (s.strip() for s in item.split("=", 1))
        if allowed is not None and name not in allowed:
            raise UsageError(f"unknown parameter {name!r}; known: {', '.join(sorted(allowed)) or 'none'}")
        try:
            out[name] = parse_scalar(value)
        except (ScalarSyntaxError, UnboundParameter, ZeroDivisionError) as exc:
            raise UsageError(f"bad value for parameter {name!r}: {exc}") from exc
    return out


class Output:
    """Collects a JSON payload, CSV rows and text lines for one command."""

    def __init__(self):
        self.payload: dict = {}
        self.rows: list[dict] = []
        self.lines: list[str] = []
        self.mismatches: list[str] = []

    def check(self, label: str, got, want) -> None:
        # compare as JSON so integer and string keys agree
        if json.loads(json.dumps(got)) != want:
            self.mismatches.append(f"{label}: got {got}, expected {want}")

    def render(self, fmt: str) -> str:
        if fmt == "json":
            data = dict(self.payload)
            if self.mismatches:
                data["mismatches"] = self.mismatches
            return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            if self.rows:
                fields = list(dict.fromkeys(k for row in self.rows for k in row))
                writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
                writer.writeheader()
                for row in self.rows:
                    writer.writerow({k: _cell(v) for k, v in row.items()})
            return buf.getvalue()
        lines = list(self.lines)
        lines.extend(f"MISMATCH {m}" for m in self.mismatches)
        return "\n".join(lines) + "\n"


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False)
    return v


def _catalog(args) -> list:
    try:
        return C.load_catalog(args.catalog)
    except OSError as exc:
        raise UsageError(f"cannot read catalog: {exc}") from exc


def _golden(args) -> bool:
    """Expected counts apply to the shipped catalog at reference bindings."""
    return args.catalog is None and not args.params


def _catalog_params(args, entries) -> dict:
    allowed = {p for e in entries for p in e.params}
    return parse_params(args.params, allowed)


def _bind(entry, params):
    return entry.bind({p: params.get(p, C.REFERENCE_BINDINGS[p]) for p in entry.params})


def _load_algebra(args) -> LieAlgebra:
    if not args.algebra:
        raise UsageError("--algebra PATH is required")
    try:
        with open(args.algebra, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read algebra file: {exc}") from exc
    bindings = parse_params(args.params)
    try:
        return LieAlgebra.loads(text, bindings)
    except UnboundParameter as exc:
        raise UsageError(f"algebra file uses unbound parameter {exc}; supply it with --params") from exc


# ---------------------------------------------------------------- commands


def cmd_orbits(args, out: Output) -> None:
    report = grading.orbit_report(args.domain)
    sizes = [o["size"] for o in report["orbits"]]
    out.payload = report
    out.rows = [
        {"orbit": k + 1, "size": o["size"], "representative": o["representative"]} for k, o in enumerate(report["orbits"])
    ]
    out.lines = [f"{report['orbit_count']} orbits on {args.domain}, sizes {sizes} (total {sum(sizes)})"]
    out.lines += [f"  {o['representative']}: {o['size']}" for o in report["orbits"]]
    want = expected_counts()["orbit_sizes"].get(args.domain)
    if want is not None:
        out.check(f"{args.domain} orbit sizes", sorted(sizes, reverse=True), want)


def _system_check(name: str):
    if name == "full":
        system = C.generate_full_system()
        return lambda eps: C.satisfies_system(eps, system)
    if name == "reduced":
        system = C.reduced_system()
        return lambda eps: C.satisfies_system(eps, system)
    return lambda eps: C.check_two_term(eps, name)


def cmd_verify(args, out: Output) -> None:
    entries = _catalog(args)
    params = _catalog_params(args, entries)
    systems = SYSTEMS if args.system == "all" else (args.system,)
    checks = {s: _system_check(s) for s in systems}
    tallies = {s: 0 for s in systems}
    for e in entries:
        eps = _bind(e, params)
        row = {"matrix": e.name, "mark": e.two_term_mark or ""}
        for s in systems:
            ok = checks[s](eps)
            row[s] = ok
            tallies[s] += ok
        out.rows.append(row)
    n = len(entries)
    out.payload = {"systems": list(systems), "satisfied": tallies, "total": n, "matrices": out.rows}
    out.lines = [f"{s}: {tallies[s]}/{n} satisfy" for s in systems]
    if _golden(args):
        want = expected_counts()["verify"]
        for s in systems:
            out.check(f"{s} system", tallies[s], want[s])
        # a W mark means the extend check fails, a barred W the ropa check
        for row in out.rows:
            if row["mark"] == "W" and row.get("extend"):
                out.mismatches.append(f"{row['matrix']} is marked W but passes extend")
            if row["mark"] == "Wbar" and row.get("ropa"):
                out.mismatches.append(f"{row['matrix']} is marked Wbar but passes ropa")


def cmd_equiv(args, out: Output) -> None:
    entries = _catalog(args)
    params = _catalog_params(args, entries)
    mats = [_bind(e, params) for e in entries]
    found = []
    for (e1, m1), (e2, m2) in combinations(zip(entries, mats), 2):
        if C.equivalent(m1, m2):
            found.append([e1.name, e2.name])
    total = len(entries) * (len(entries) - 1) // 2
    out.payload = {"pairs": total, "equivalent_pairs": found}
    out.rows = [{"first": a, "second": b} for a, b in found]
    out.lines = [f"{total - len(found)}/{total} pairs not equivalent"]
    out.lines += [f"  equivalent: {a} ~ {b}" for a, b in found]
    if _golden(args):
        out.check("equivalent pairs", len(found), 0)


def _verdict_json(v) -> dict:
    if isinstance(v, C.Continuous):
        return {"kind": v.kind, "exponents": v.exponents}
    if isinstance(v, C.Discrete):
        return {
            "kind": v.kind,
            "relation": v.violated,
            "pairs": [list(p) for p in v.pairs],
            "lhs": format_scalar(v.lhs),
            "rhs": format_scalar(v.rhs),
            "identity": str(v.identity) if v.identity is not None else None,
        }
    return {"kind": v.kind, "reason": v.reason}


def cmd_classify(args, out: Output) -> None:
    entries = _catalog(args)
    params = _catalog_params(args, entries)
    tally = {"Continuous": 0, "Discrete": 0, "conditional": 0, "NotGIW": 0}
    for e in entries:
        v = C.classify_continuity(_bind(e, params), check=False)
        kind = v.kind
        row = {"matrix": e.name, "mark": e.continuity_mark, "verdict": kind, "detail": _verdict_json(v)}
        if e.special_bindings and not params:
            special = C.classify_continuity(e.special(), check=False)
            row["special_bindings"] = dict(e.special_bindings)
            row["special_verdict"] = special.kind
            if special.kind != kind:
                kind = "conditional"
        row["type"] = kind
        tally[kind] += 1
        out.rows.append(row)
    out.payload = {"tally": tally, "matrices": out.rows}
    out.lines = [", ".join(f"{k} {v}" for k, v in tally.items())]
    out.lines += [f"  {r['matrix']}: {r['type']}" for r in out.rows]
    ids = C.second_order_identities()
    sizes = sorted((len(o) for o in ids), reverse=True)
    out.payload["second_order_identities"] = {"count": sum(sizes), "orbit_sizes": sizes}
    out.lines.append(f"second-order identities: {sum(sizes)} in orbits {sizes}")
    if _golden(args):
        want = expected_counts()
        out.check("continuity tally", tally, want["continuity"])
        out.check("second-order identities", out.payload["second_order_identities"], want["second_order_identities"])


def cmd_contract(args, out: Output) -> None:
    entries = _catalog(args)
    params = _catalog_params(args, entries)
    if args.matrix:
        names = {e.name for e in entries}
        unknown = [m for m in args.matrix if m not in names]
        if unknown:
            raise UsageError(f"unknown matrix name(s): {', '.join(unknown)}")
        entries = [e for e in entries if e.name in args.matrix]
    algebras = {}
    for e in entries:
        algebras[e.name] = C.contract(_bind(e, params)).to_json()
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for name, data in algebras.items():
            with open(os.path.join(args.out_dir, f"{name}.json"), "w", encoding="utf-8") as fh:
                json.dump(data, fh, indent=2, ensure_ascii=False)
                fh.write("\n")
    out.payload = algebras if len(algebras) != 1 else next(iter(algebras.values()))
    out.rows = [{"matrix": k, "dim": v["dim"], "brackets": len(v["brackets"])} for k, v in algebras.items()]
    out.lines = [f"{k}: {len(v['brackets'])} nonzero brackets" for k, v in algebras.items()]


def cmd_invariants(args, out: Output) -> None:
    L = _load_algebra(args)
    rng = random.Random(args.seed)
    prof = series(L)
    data = {
        "dim": L.dim,
        "series": prof.text(),
        "predicates": predicates(L),
        "six_tuple": six_tuple(L).as_list(),
        "tau": tau(L, samples=args.samples, rng=rng),
    }
    if args.alpha:
        data["psi"] = {a: psi(L, parse_scalar(a)) for a in args.alpha}
    if args.max_degree:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NotNilpotent)
            cas = casimirs(L, max_degree=args.max_degree, rng=rng)
        data["casimirs"] = {
            "max_degree": cas.max_degree,
            "complete": cas.complete,
            "polynomials": [p.format() for p in cas.independent_polynomials],
            "symmetrized": [
                [{"monomial": w["monomial"], "coefficient": format_scalar(w["coefficient"])} for w in words]
                for words in cas.symmetrized
            ],
        }
    out.payload = data
    out.rows = [{k: v for k, v in data.items() if k != "casimirs"}]
    out.lines = [f"dim {L.dim}", f"series {data['series']}", f"six_tuple {data['six_tuple']}", f"tau {data['tau']}"]
    for a, v in data.get("psi", {}).items():
        out.lines.append(f"psi({a}) = {v}")
    if "casimirs" in data:
        note = "" if data["casimirs"]["complete"] else " (algebra not nilpotent; list may be incomplete)"
        out.lines.append(f"casimirs up to degree {args.max_degree}{note}:")
        out.lines += [f"  {p}" for p in data["casimirs"]["polynomials"]]


def cmd_identify(args, out: Output) -> None:
    L = _load_algebra(args)
    rec = fingerprint(L, random.Random(args.seed))
    data = rec.to_json()
    out.payload = data
    out.rows = [{k: v for k, v in data.items() if k != "pieces"}]
    out.lines = [
        f"match {rec.match}",
        f"class {rec.cls}, series {rec.series}, six_tuple {list(rec.six_tuple)}, tau {rec.tau}, k {rec.k}",
    ]
    out.lines += [f"  piece dim {p.dim}: {p.match}" for p in rec.pieces]
    if rec.reason:
        out.lines.append(f"reason: {rec.reason}")


def cmd_report(args, out: Output) -> None:
    entries = _catalog(args)
    params = _catalog_params(args, entries)
    report = run_catalog(
        params=params,
        seed=args.seed,
        budget=args.budget,
        entries=entries,
        max_degree=args.max_degree,
    )
    out.payload = report.to_json()
    for row in report.algebras:
        rec = row["record"]
        out.rows.append(
            {
                "algebra": row["algebra"],
                "matrix": row["matrix"],
                "bindings": row["bindings"],
                "type": row["type"],
                "class": rec["class"],
                "series": rec["series"],
                "six_tuple": rec["six_tuple"],
                "tau": rec["tau"],
                "k": rec["k"],
                "nilradical_dim": rec["nilradical_dim"],
                "radical_dim": rec["radical_dim"],
                "match": rec["match"],
            }
        )
    out.lines = _report_text(report)
    if _golden(args):
        want = expected_counts()
        for key, value in want["classification"].items():
            out.check(key, report.counts.get(key), value)
        out.check("class_counts", report.class_counts, want["class_counts"])
        groups = [g["members"] for g in report.groups if len(g["members"]) > 1 and not g["decomposable"]]
        out.check("isomorphism groups", groups, want["isomorphism_groups"])


def _report_text(report) -> list[str]:
    lines = ["algebra   type        class         series            six_tuple                 tau  k  match"]
    for row in report.algebras:
        rec = row["record"]
        lines.append(
            f"{row['algebra']:<9} {row['type']:<11} {rec['class']:<13} {rec['series']:<17} "
            f"{str(rec['six_tuple']):<25} {rec['tau']:<4} {rec['k']:<2} {rec['match']}"
        )
    lines.append("")
    lines.append("isomorphism groups:")
    for g in report.groups:
        if len(g["members"]) < 2:
            continue
        status = ", ".join(
            f"{iso['to']} {iso['status']}" + (f" via {iso['via']}" if iso.get("via") else "") for iso in g["isomorphisms"]
        )
        lines.append(f"  {' ~ '.join(g['members'])}: {status or 'not searched'}")
    lines.append("")
    lines.append("non-trivial classes by dimension of the non-abelian part:")
    for d, row in report.class_counts.items():
        if d == "total":
            continue
        cells = "  ".join(f"{k} {v}" for k, v in row.items())
        lines.append(f"  {d}: {cells}")
    lines.append(f"  total: {report.class_counts['total']}")
    lines.append("")
    c = report.counts
    lines.append(f"non-isomorphic: {c['non_isomorphic_total']} total, {c['non_isomorphic_nontrivial']} non-trivial")
    return lines


COMMANDS = {
    "orbits": cmd_orbits,
    "verify": cmd_verify,
    "equiv": cmd_equiv,
    "classify": cmd_classify,
    "contract": cmd_contract,
    "invariants": cmd_invariants,
    "identify": cmd_identify,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="catalog JSON file (default: the shipped catalog)")
    common.add_argument("--params", help="parameter bindings, e.g. a=2,b=-1/2")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized routine")
    common.add_argument("--format", choices=FORMATS, help="output format (default: json for contract, text otherwise)")
    common.add_argument("--out", help="write the output here instead of stdout")
    common.add_argument("--budget", type=int, default=20000, help="node budget per isomorphism search")
    common.add_argument("--max-degree", type=int, default=4, help="Casimir degree bound (0 skips them)")
    common.add_argument("--samples", type=int, default=5, help="samples for generic-rank estimates")

    parser = argparse.ArgumentParser(prog="gradcontract", description="Graded contractions of sl(3,C).")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("orbits", parents=[common], help="orbits of the symmetry group")
    p.add_argument("--domain", choices=("indices", "pairs", "triplets"), default="triplets")
    p = sub.add_parser("verify", parents=[common], help="check catalog matrices against equation systems")
    p.add_argument("--system", choices=SYSTEMS + ("all",), default="all")
    sub.add_parser("equiv", parents=[common], help="pairwise equivalence audit of the catalog")
    sub.add_parser("classify", parents=[common], help="continuous or discrete verdicts")
    p = sub.add_parser("contract", parents=[common], help="emit contracted algebras as JSON")
    p.add_argument("--matrix", action="append", help="catalog name, e.g. e17_8 (repeatable; default all)")
    p.add_argument("--out-dir", help="write one <name>.json file per algebra into this directory")
    p = sub.add_parser("invariants", parents=[common], help="invariants of an algebra file")
    p.add_argument("--algebra", help="algebra JSON file")
    p.add_argument("--alpha", action="append", help="evaluate psi at this value (repeatable)")
    p = sub.add_parser("identify", parents=[common], help="fingerprint an algebra file and match it")
    p.add_argument("--algebra", help="algebra JSON file")
    sub.add_parser("report", parents=[common], help="classify the whole catalog")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output()
    try:
        COMMANDS[args.command](args, out)
    except (UsageError, AlgebraFormatError, C.CatalogFormatError, ScalarSyntaxError) as exc:
        print(f"gradcontract {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = out.render(args.format or ("json" if args.command == "contract" else "text"))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for m in out.mismatches:
        print(f"mismatch: {m}", file=sys.stderr)
    return 1 if out.mismatches else 0


if __name__ == "__main__":
    sys.exit(main())

"""File-driven command line front end.

Group files are JSON: {"field": {...}, "generators": [[...], ...]} with
string-encoded exact entries.  Reports are JSON with schema "nilmat/1";
given the same file and flags they are byte-identical across runs except
for the wall_ms timing field.  Exit codes: 0 analysis completed (the
verdict, positive or negative, is in the report), 1 typed budget or
capability error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .config import DEFAULT, Config
from .congruence import apply_congruence, select_modulus
from .errors import (
    CapExceeded,
    LoopOverflow,
    NilmatError,
    NoPrimeInRange,
    ParseError,
    SingularGenerator,
    VerdictUnavailable,
)
from .fields import field_from_json
from .groups import GroupSpec
from .linalg import Matrix
from .nilpotency import is_nilpotent
from .structure import analyze
from .testkit import closure, gen_max_abs_irr_nilpotent, gen_reducible_nilpotent, oracle_invariants
from .verify import verify_report
from .witness import serialize_matrix, serialize_witness

COMMANDS = (
    "is-nilpotent",
    "is-finite",
    "order",
    "sylow",
    "primary",
    "is-completely-reducible",
    "cr-series",
    "reduce",
    "gen",
    "oracle",
    "verify-witness",
)

SCHEMA = "nilmat/1"


def parse_group_json(data, seed=0) -> GroupSpec:
    if not isinstance(data, dict):
        raise ParseError("group file must be a JSON object")
    if "field" not in data or "generators" not in data:
        raise ParseError("group file needs 'field' and 'generators'")
    field = field_from_json(data["field"], seed=seed)
    gens = []
    raw = data["generators"]
    if not isinstance(raw, list):
        raise ParseError("'generators' must be an array of matrices")
    for gi, rows in enumerate(raw):
        if not isinstance(rows, list) or not rows:
            raise ParseError(f"generator {gi} is not a matrix")
        n = len(rows)
        parsed = []
        for ri, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(f"generator {gi} is not square (row {ri})")
            parsed.append([field.parse(c) for c in row])
        gens.append(Matrix.make(field, parsed))
    return GroupSpec(field, gens)


def parse_group_file(path, seed=0) -> GroupSpec:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    return parse_group_json(data, seed=seed)


def group_to_json(G: GroupSpec) -> dict:
    return {
        "field": G.field.to_json(),
        "generators": [[[G.field.format(c) for c in row] for row in g.rows] for g in G.gens],
    }


def _serialize_elts(elts):
    return [
        {"matrix": serialize_matrix(e.mat), "word": [[i, x] for i, x in e.word]}
        for e in elts
    ]


def _serialize_sylow(sylow, extension=False):
    if sylow is None:
        return None
    out = {
        "components": {
            str(p): {"order": sylow.orders.get(p), "generators": _serialize_elts(sylow.components[p])}
            for p in sorted(sylow.components)
        },
        "extension_of_finite_notion": extension,
    }
    if sylow.central_part:
        out["central_part"] = _serialize_elts(sylow.central_part)
    return out


def _config_from_args(args) -> Config:
    cfg = DEFAULT
    updates = {}
    if getattr(args, "prime", None):
        updates["prime_override"] = args.prime
    if getattr(args, "class_bound", None):
        updates["class_bound_override"] = args.class_bound
    if getattr(args, "cap", None):
        updates["closure_cap"] = args.cap
        updates["cayley_cap"] = args.cap
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    return cfg.with_(**updates) if updates else cfg


def run_command(cmd: str, G: GroupSpec, config: Config = DEFAULT, group_file=None) -> dict:
    """Execute one analysis command; returns the report dictionary."""
    t0 = time.monotonic()
    report = {
        "schema": SCHEMA,
        "command": cmd,
        "group_file": str(group_file) if group_file else None,
        "field": G.field.to_json(),
        "degree": G.degree,
        "n_generators": len(G.gens),
        "flags": {
            "prime": config.prime_override,
            "class_bound": config.class_bound_override,
            "closure_cap": config.closure_cap,
            "cayley_cap": config.cayley_cap,
            "seed": config.seed,
        },
        "budgets_hit": [],
        "witness": None,
    }
    if cmd == "is-nilpotent":
        v = is_nilpotent(G, config)
        report["verdict"] = {"nilpotent": v.nilpotent}
        if v.witness is not None:
            report["witness"] = serialize_witness(v.witness)
        cd = v.artifacts.get("congruence")
        if cd is not None:
            report["congruence"] = cd.to_json()
            if cd.checks.get("p_gt_n") is False:
                report["budgets_hit"].append("prime_not_above_degree")
            if cd.checks.get("image_semisimple") is False:
                report["budgets_hit"].append("evaluation_image_not_semisimple")
        pres = v.artifacts.get("presentation")
        if pres is not None:
            report["image_order"] = pres.image_order
    elif cmd in ("is-finite", "order", "sylow", "primary", "is-completely-reducible", "cr-series"):
        if cmd in ("is-completely-reducible", "cr-series"):
            from .errors import ImperfectField
            from .fields import FunctionField

            if isinstance(G.field, FunctionField) and G.field.characteristic() > 0:
                raise ImperfectField("complete reducibility testing needs a perfect field")
        rep = analyze(G, config)
        verdict = {"nilpotent": rep.nilpotent}
        if rep.nilpotent:
            verdict["finite"] = rep.finite
            verdict["route"] = rep.route
            if rep.finite:
                verdict["order"] = rep.order
            if rep.completely_reducible is not None:
                verdict["completely_reducible"] = rep.completely_reducible
        report["verdict"] = verdict
        if rep.witness is not None:
            report["witness"] = serialize_witness(rep.witness)
        if rep.notes:
            report["notes"] = rep.notes
        if cmd in ("sylow", "primary") and rep.primary is not None:
            report["sylow"] = _serialize_sylow(rep.primary, rep.primary_is_extension)
        if cmd in ("cr-series", "is-completely-reducible") and rep.cr_series_dims is not None:
            report["cr_series_dims"] = rep.cr_series_dims
    elif cmd == "reduce":
        cd = select_modulus(G, config)
        image = GroupSpec(cd.target, [apply_congruence(g, cd) for g in G.gens])
        report["congruence"] = cd.to_json()
        report["image"] = group_to_json(image)
        report["verdict"] = {"reduced": True, "p": cd.p}
    elif cmd == "oracle":
        c = closure(list(G.gens) or [G.identity], config.closure_cap)
        if c.overflowed:
            report["verdict"] = {"overflowed": True, "cap": config.closure_cap}
        else:
            inv = oracle_invariants(c)
            report["verdict"] = dict(inv, overflowed=False)
    else:
        raise ValueError(f"unknown command {cmd}")
    report["wall_ms"] = int((time.monotonic() - t0) * 1000)
    return report


def _emit(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=False))
        return
    cmd = report.get("command")
    verdict = report.get("verdict", {})
    lines = [f"{cmd}: " + ", ".join(f"{k}={v}" for k, v in verdict.items())]
    if report.get("witness"):
        w = report["witness"]
        lines.append(f"witness: {w['kind']} ({w['note']})")
    if report.get("congruence"):
        c = report["congruence"]
        lines.append(f"reduction: p={c.get('p')} target={c.get('target')}")
    for note in report.get("notes", []):
        lines.append(f"note: {note}")
    print("\n".join(lines))


def _add_common(p):
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--prime", type=int, default=None, help="override the reduction prime")
    p.add_argument("--class-bound", dest="class_bound", type=int, default=None)
    p.add_argument("--cap", type=int, default=None, help="closure and Cayley caps")
    p.add_argument("--seed", type=int, default=0, help="seed for the modulus search")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nilmat",
        description="Exact nilpotency testing and structure analysis for matrix groups",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)
    for cmd in (
        "is-nilpotent",
        "is-finite",
        "order",
        "sylow",
        "primary",
        "is-completely-reducible",
        "cr-series",
        "reduce",
        "oracle",
    ):
        p = sub.add_parser(cmd)
        p.add_argument("file", nargs="?", default=None, help="group file (JSON)")
        p.add_argument("--dir", default=None, help="analyze every .json group file in a directory")
        _add_common(p)

    pg = sub.add_parser("gen", help="emit corpus group files")
    gsub = pg.add_subparsers(dest="gen_kind", required=True)
    pmax = gsub.add_parser("max-irr")
    pmax.add_argument("n", type=int)
    pmax.add_argument("p", type=int)
    pmax.add_argument("l", type=int, nargs="?", default=1)
    pmax.add_argument("--out", default=None)
    pmax.add_argument("--seed", type=int, default=0)
    pred = gsub.add_parser("reducible")
    pred.add_argument("base", help="group file of the base group")
    pred.add_argument("--out", default=None)
    pred.add_argument("--seed", type=int, default=0)

    pv = sub.add_parser("verify-witness")
    pv.add_argument("report", help="report file produced with --json")
    pv.add_argument("--group", default=None, help="group file for word evaluation")
    pv.add_argument("--json", action="store_true")

    args = parser.parse_args(argv)

    try:
        if args.cmd == "gen":
            return _cmd_gen(args)
        if args.cmd == "verify-witness":
            return _cmd_verify(args)
        config = _config_from_args(args)
        if args.dir:
            return _cmd_batch(args, config)
        if not args.file:
            print("error: a group file is required", file=sys.stderr)
            return 2
        G = parse_group_file(args.file, seed=config.seed)
        report = run_command(args.cmd, G, config, group_file=args.file)
        _emit(report, args.json)
        return 0
    except (ParseError, SingularGenerator) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CapExceeded, NoPrimeInRange, VerdictUnavailable, LoopOverflow) as e:
        print(f"budget: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except NilmatError as e:
        # capability errors, e.g. an imperfect field for a split-based query
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def _cmd_batch(args, config) -> int:
    files = sorted(Path(args.dir).glob("*.json"))
    if not files:
        print("error: no .json group files found", file=sys.stderr)
        return 2

    def work(path):
        try:
            G = parse_group_file(path, seed=config.seed)
            return run_command(args.cmd, G, config, group_file=path), 0
        except (ParseError, SingularGenerator) as e:
            return {"schema": SCHEMA, "group_file": str(path), "error": str(e)}, 2
        except NilmatError as e:
            return {
                "schema": SCHEMA,
                "group_file": str(path),
                "error": f"{type(e).__name__}: {e}",
            }, 1

    with ThreadPoolExecutor(max_workers=min(8, len(files))) as pool:
        results = list(pool.map(work, files))
    reports = [r for r, _ in results]
    print(json.dumps(reports, indent=2))
    return max(code for _, code in results)


def _cmd_gen(args) -> int:
    try:
        if args.gen_kind == "max-irr":
            G = gen_max_abs_irr_nilpotent(args.n, args.p, args.l, seed=args.seed)
        else:
            base = parse_group_file(args.base, seed=args.seed)
            G = gen_reducible_nilpotent(base)
    except NilmatError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    payload = json.dumps(group_to_json(G), indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)
    return 0


def _cmd_verify(args) -> int:
    try:
        report = json.loads(Path(args.report).read_text())
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: cannot read report: {e}", file=sys.stderr)
        return 2
    group = None
    gf = args.group or report.get("group_file")
    if gf and Path(gf).exists():
        try:
            group = parse_group_file(gf)
        except (ParseError, SingularGenerator):
            group = None
    ok, checks = verify_report(report, group)
    out = {
        "schema": SCHEMA,
        "command": "verify-witness",
        "verified": ok,
        "checks": [{"check": c, "passed": p, "detail": d} for c, p, d in checks],
    }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(("VERIFIED" if ok else "NOT CONFIRMED") + f" ({len(checks)} checks)")
        for c, p, d in checks:
            print(f"  [{'ok' if p else 'FAIL'}] {c}" + (f" ({d})" if d else ""))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

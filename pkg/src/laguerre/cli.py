"""Command-line front end: build, verify, and export.

Subcommands
-----------
plane verify       --q N                       Laguerre axioms, exhaustively
group verify       --q N [--pencil SPEC]       transitivity + tangency axioms
skewaffine verify  --q N --axiom ID|all        residual-plane axioms
theorems run       --q N [--id ID|all]         the named-check catalog
export             --q N --what W --out FILE   plane/group/space JSON

Pencil SPEC is ``canonical`` (default), ``p:x,y[@K:a,b,c]`` for an affine
vertex, or ``ideal:a[@K:a,b,c]`` for an ideal vertex; when K is omitted a
circle through the vertex is chosen (y = y0 resp. y = a x^2).

Exit codes: 0 all checks pass or are report-only, 1 some check failed,
2 usage or configuration error.  ``--json`` emits one stable JSON array;
timing is excluded so identical runs are byte-identical.  Set
LAGUERRE_WORKERS > 1 to run catalog checks in worker processes (output
order is unaffected).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .field import DEFAULT_MAX_Q, FieldError, GF, is_prime
from .plane import (Circle, GeometryError, LaguerrePlane, Pencil, affine,
                    canonical_pencil, ideal)
from .autgroup import DeltaGroup, verify_a1a2a3
from .skewaffine import AXIOMS, GroupSpace
from .report import Budget, Report
from .verify import CHECK_IDS, run_suite, thm_check


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="laguerre-verify", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p, with_budget=False):
        p.add_argument("--q", type=int, required=True, help="prime field size")
        p.add_argument("--json", action="store_true", help="emit a JSON array")
        if with_budget:
            p.add_argument("--budget", default=None,
                           help="'exhaustive' or 'sample:K' (default: per-check)")
            p.add_argument("--seed", type=int, default=0,
                           help="seed for sampled sweeps (default 0)")

    plane = sub.add_parser("plane", help="Laguerre plane commands")
    plane_sub = plane.add_subparsers(dest="action", required=True)
    add_common(plane_sub.add_parser("verify", help="check the plane axioms"))

    group = sub.add_parser("group", help="pencil-fixing group commands")
    group_sub = group.add_subparsers(dest="action", required=True)
    gv = group_sub.add_parser("verify", help="check transitivity and tangency axioms")
    add_common(gv)
    gv.add_argument("--pencil", default="canonical",
                    help="canonical | p:x,y[@K:a,b,c] | ideal:a[@K:a,b,c]")

    ska = sub.add_parser("skewaffine", help="residual-plane commands")
    ska_sub = ska.add_subparsers(dest="action", required=True)
    sv = ska_sub.add_parser("verify", help="check residual-plane axioms")
    add_common(sv, with_budget=True)
    sv.add_argument("--axiom", required=True,
                    help="one of %s or 'all'" % "/".join(AXIOMS))

    thm = sub.add_parser("theorems", help="named-check catalog")
    thm_sub = thm.add_subparsers(dest="action", required=True)
    tr = thm_sub.add_parser("run", help="run catalog checks")
    add_common(tr, with_budget=True)
    tr.add_argument("--id", default="all", help="a check id or 'all'")

    exp = sub.add_parser("export", help="write a JSON model")
    exp.add_argument("--q", type=int, required=True)
    exp.add_argument("--what", required=True, choices=("plane", "group", "space"))
    exp.add_argument("--out", required=True, help="output file path")
    exp.add_argument("--pencil", default="canonical")
    return top


def _make_plane(q: int) -> LaguerrePlane:
    try:
        return LaguerrePlane(GF(q, max_q=DEFAULT_MAX_Q))
    except FieldError as e:
        raise UsageError(str(e))


def _parse_pencil(plane: LaguerrePlane, spec: str) -> Pencil:
    if spec == "canonical":
        return canonical_pencil(plane)
    body, _, ktext = spec.partition("@K:")
    try:
        if body.startswith("p:"):
            x, y = (int(v) % plane.q for v in body[2:].split(","))
            p = affine(x, y)
            K = Circle(0, 0, y)
        elif body.startswith("ideal:"):
            a = int(body[6:]) % plane.q
            p = ideal(a)
            K = Circle(a, 0, 0)
        else:
            raise UsageError(f"bad pencil spec {spec!r}")
        if ktext:
            a, b, c = (int(v) % plane.q for v in ktext.split(","))
            K = Circle(a, b, c)
    except (ValueError, IndexError):
        raise UsageError(f"bad pencil spec {spec!r}")
    try:
        return plane.pencil(p, K)
    except GeometryError as e:
        raise UsageError(f"invalid pencil: {e}")


def _emit(reports: list[Report], as_json: bool) -> int:
    if as_json:
        payload = [r.to_dict() for r in reports]
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for r in reports:
            print(r.text())
        fails = sum(not r.ok for r in reports)
        print(f"-- {len(reports)} checks, {fails} failing")
    return 0 if all(r.ok for r in reports) else 1


def _cmd_plane_verify(args) -> int:
    plane = _make_plane(args.q)
    return _emit([plane.verify_axioms()], args.json)


def _cmd_group_verify(args) -> int:
    plane = _make_plane(args.q)
    pencil = _parse_pencil(plane, args.pencil)
    if plane.gf.char2:
        return _emit([verify_a1a2a3(plane, pencil, None)], args.json)
    delta = DeltaGroup.build(plane, pencil)
    return _emit([delta.verify_axioms()], args.json)


def _require_odd(q: int) -> None:
    if q % 2 == 0:
        raise UsageError("this command needs an odd prime q")
    if not is_prime(q):
        raise UsageError(f"{q} is not prime")


def _cmd_ska_verify(args) -> int:
    _require_odd(args.q)
    plane = _make_plane(args.q)
    pencil = canonical_pencil(plane)
    space = GroupSpace.build(plane, pencil, DeltaGroup.build(plane, pencil),
                             check_preconditions=False)
    names = AXIOMS if args.axiom == "all" else (args.axiom,)
    for name in names:
        if name not in AXIOMS:
            raise UsageError(f"unknown axiom {name!r}")
    budget = Budget.parse(args.budget, args.seed) if args.budget else None
    reports = [space.check_axiom(name, budget, args.seed) for name in names]
    return _emit(reports, args.json)


def _cmd_theorems_run(args) -> int:
    _require_odd(args.q)
    _make_plane(args.q)  # validates the bound
    ids = CHECK_IDS if args.id == "all" else (args.id,)
    for cid in ids:
        if cid not in CHECK_IDS:
            raise UsageError(f"unknown check id {cid!r}")
    budget = Budget.parse(args.budget, args.seed) if args.budget else None
    workers = int(os.environ.get("LAGUERRE_WORKERS", "1"))
    if workers > 1 and len(ids) > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, [(cid, args.q, budget, args.seed)
                                               for cid in ids]))
    else:
        reports = run_suite(args.q, ids, budget, args.seed)
    return _emit(reports, args.json)


def _run_one(item) -> Report:
    cid, q, budget, seed = item
    return thm_check(cid, q, budget, seed)


def _cmd_export(args) -> int:
    plane = _make_plane(args.q)
    pencil = _parse_pencil(plane, args.pencil)
    if args.what == "plane":
        payload = plane.to_json()
    else:
        _require_odd(args.q)
        delta = DeltaGroup.build(plane, pencil)
        if args.what == "group":
            payload = delta.to_json()
        else:
            payload = GroupSpace.build(plane, pencil, delta,
                                       check_preconditions=False).to_json()
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
    print(f"wrote {args.what} for q={args.q} to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command == "plane":
            return _cmd_plane_verify(args)
        if args.command == "group":
            return _cmd_group_verify(args)
        if args.command == "skewaffine":
            return _cmd_ska_verify(args)
        if args.command == "theorems":
            return _cmd_theorems_run(args)
        if args.command == "export":
            return _cmd_export(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (FieldError, GeometryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

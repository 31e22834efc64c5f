"""Command-line entry point: ``moufang <subcommand> ...``.

Loops can be given as a ``.tbl`` path, a builtin name (``d8``, ``q8xc2``) or
``mg2:<name>`` for the Chein double of a builtin group.  Exit status is 0 on
success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog, chein, code_loops, constructions, explorer, factor_sets
from .errors import MoufangError, UnknownName
from .isomorphism import is_isomorphic
from .loop import (
    LoopTable,
    associator_subloop,
    center,
    nucleus,
    order_statistics,
    squares,
)


def load_loop(spec: str) -> LoopTable:
    path = Path(spec)
    if path.exists():
        return catalog.read_table(path)
    if spec.startswith("mg2:"):
        return chein.mg2(catalog.builtin(spec[4:])).table
    try:
        return catalog.builtin(spec)
    except UnknownName:
        raise UnknownName(f"{spec!r} is neither a file nor a builtin name") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_table(L: LoopTable, out: str | None) -> None:
    _emit(catalog.format_table(L), out)


# ---------------------------------------------------------------- handlers


def cmd_validate(a) -> None:
    L = load_loop(a.table)
    print(f"valid loop of order {L.order}")


def cmd_invariants(a) -> None:
    L = load_loop(a.table)
    stats = order_statistics(L)
    print(f"order {L.order}")
    print(f"moufang {'yes' if L.is_moufang else 'no'}")
    print(f"associative {'yes' if L.is_associative else 'no'}")
    print(f"center {len(center(L))}")
    print(f"nucleus {len(nucleus(L))}")
    print(f"associator_subloop {len(associator_subloop(L))}")
    print(f"squares {len(squares(L))}")
    print("element_orders " + " ".join(f"{k}:{v}" for k, v in sorted(stats.items())))


def cmd_construct(a) -> None:
    L = load_loop(a.table)
    if a.enumerate:
        find = constructions.find_cyclic_params if a.kind == "cyclic" else constructions.find_dihedral_params
        params = find(L)
        print(f"# {len(params)} {a.kind} parameter tuple(s)")
        for p in params:
            print(constructions.params_to_text(p))
        return
    p = constructions.params_from_text(L, Path(a.params).read_text())
    if p.kind != a.kind:
        raise constructions.InvalidParams(f"file holds {p.kind} parameters")
    _emit_table(constructions.apply(p), a.output)


def cmd_mg2(a) -> None:
    G = load_loop(a.group)
    _emit_table(chein.mg2(G).table, a.output)


def cmd_mgth(a) -> None:
    G = load_loop(a.group)
    d = chein.AntiAutomorphismData.inversion(G, a.h)
    _emit_table(chein.mg_theta_h(d), a.output)


def cmd_codeloop(a) -> None:
    if a.action == "analyze":
        L = load_loop(a.args[0])
        sd = code_loops.symplectic_analyze(L)
        print(f"code_loop {'yes' if code_loops.is_code_loop(L) else 'no'}")
        if sd is None:
            print("symplectic no")
            return
        print(f"symplectic yes (z = {sd.z}, dim {sd.k})")
        print(f"cdeg {code_loops.cdeg(sd.P)}")
        if code_loops.cdeg(sd.P) <= 3:
            print(f"radical_dim {len(code_loops.radical(sd.P))}")
        sys.stdout.write(sd.P.to_text())
    elif a.action == "build":
        P = code_loops.read_power_map(a.args[0])
        _emit_table(code_loops.build_code_loop(P), a.output)
    else:
        if len(a.args) != 2:
            raise SystemExit("codeloop path needs two power-map files")
        P = code_loops.read_power_map(a.args[0])
        R = code_loops.read_power_map(a.args[1])
        steps = code_loops.plan_code_path(P, R)
        loops = code_loops.execute_code_path(P, steps)
        for k, s in enumerate(steps, 1):
            extra = f" plane ({s.x}, {s.y})" if s.kind == "dihedral" else ""
            print(f"step {k}: {s.kind} W={list(s.W)}{extra}")
        ok = code_loops.final_power_map(P, loops) == R
        print(f"{len(steps)} step(s); final power map {'matches' if ok else 'DIFFERS'}")


def cmd_verify(a) -> None:
    L = load_loop(a.table)
    params = constructions.find_params(L)
    failures = 0
    for p in params:
        r = factor_sets.verify_transversal(L, p)
        good = (
            r["eta_iso"]
            and r["eta_star_iso"]
            and r["mu_class"] == "ASSOCIATIVE"
            and r["inverse_identity"]
            and r["associators_preserved"]
        )
        failures += not good
        print(f"{p.kind:8s} S={sorted(p.S)} h={p.h}: {'ok' if good else 'FAIL'} {json.dumps(r)}")
    print(f"{len(params)} tuple(s), {failures} failure(s)")
    if failures:
        raise factor_sets.InvalidParams("factor-set checks failed")


def cmd_iso(a) -> None:
    L1, L2 = load_loop(a.first), load_loop(a.second)
    iso = is_isomorphic(L1, L2)
    if iso is None:
        print("not isomorphic")
    else:
        print("isomorphic: " + " ".join(str(v) for v in iso.mapping))


def cmd_closure(a) -> None:
    seeds = [load_loop(s) for s in a.seeds]
    if a.order and any(s.order != a.order for s in seeds):
        raise constructions.InvalidParams(f"seed orders differ from --order {a.order}")
    g = explorer.closure(seeds, include_groups=a.include_groups, workers=a.jobs)
    print(explorer.describe(g))
    if a.dot:
        Path(a.dot).write_text(explorer.export_dot(g))
    if a.report:
        Path(a.report).write_text(explorer.summary_json(g))


def cmd_distance(a) -> None:
    r = constructions.distance(load_loop(a.first), load_loop(a.second))
    print(f"{r.count} of {r.order * r.order} cells differ")


def cmd_catalog(a) -> None:
    if a.action == "list":
        for name in catalog.BUILTIN_NAMES:
            print(name)
        return
    if not a.name:
        raise SystemExit("catalog emit needs a name")
    _emit_table(catalog.builtin(a.name), a.output)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moufang", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a table file")
    p.add_argument("table")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="print structural invariants")
    p.add_argument("table")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("construct", help="enumerate or apply construction parameters")
    p.add_argument("kind", choices=["cyclic", "dihedral"])
    p.add_argument("table")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--enumerate", action="store_true")
    g.add_argument("--params", metavar="FILE")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("mg2", help="Chein double of a group")
    p.add_argument("group")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_mg2)

    p = sub.add_parser("mgth", help="double twisted by inversion and a central h")
    p.add_argument("group")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_mgth)

    p = sub.add_parser("codeloop", help="code-loop tools")
    p.add_argument("action", choices=["analyze", "build", "path"])
    p.add_argument("args", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_codeloop)

    p = sub.add_parser("verify", help="factor-set checks for every parameter tuple")
    p.add_argument("what", choices=["extensions"])
    p.add_argument("table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("closure", help="closure under both constructions")
    p.add_argument("--seeds", nargs="+", required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--include-groups", action="store_true")
    p.add_argument("--dot")
    p.add_argument("--report")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("distance", help="count differing cells")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("catalog", help="builtin groups")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(message)s")
    try:
        a.func(a)
    except MoufangError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: IoError: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"usage error: {exc.code}", file=sys.stderr)
            return 2
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())

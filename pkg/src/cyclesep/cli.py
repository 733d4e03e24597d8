"""Command-line front end.

Every subcommand reads an embedding document (a JSON file, or ``-`` for
stdin) and writes deterministic JSON to stdout.  Exit status is 0 on
success, 1 when a verified property has failures, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import config
from .cages import Cage, fits_into, maximal_cages, order_family
from .cycles import enumerate_cycles
from .embedding import compute_faces, euler_characteristic, load_embedding, to_dot, to_svg
from .envelope import MarkedSequence, compute_envelope
from .errors import CyclesepError
from .generators import KINDS, GeneratorConfig, gen
from .properties import PROPERTIES, replay, verify
from .separation import canonicalize_cycle, complementary_regions, r_predicate, side_sets


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _groups(text: str) -> list[list[int]]:
    return [_ints(part) for part in text.split(";") if part.strip()]


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)


def _load(path: str):
    if path == "-":
        return load_embedding(sys.stdin.read())
    return load_embedding(path)


def _cycle_json(c) -> list[int]:
    return list(c.canonical)


# -- subcommands -----------------------------------------------------------


def cmd_check(args) -> int:
    e = _load(args.embedding)
    print(_dump({
        "vertices": len(e.vertices),
        "edges": len(e.edges),
        "faces": e.n_faces,
        "euler": euler_characteristic(e),
        "genus_zero": True,
        "coords": e.coords is not None,
    }))
    return 0


def cmd_faces(args) -> int:
    e = _load(args.embedding)
    faces = [{"id": f.id, "vertices": list(f.vertices)} for f in compute_faces(e)]
    print(_dump({"faces": faces}))
    return 0


def cmd_separate(args) -> int:
    e = _load(args.embedding)
    cyc = _ints(args.cycle)
    same = r_predicate(e, args.a, args.b, cyc)
    print(f"R={'true' if same else 'false'}")
    c = canonicalize_cycle(e, cyc)
    out: dict[str, Any] = {"cycle": _cycle_json(c)}
    for name, v in (("a", args.a), ("b", args.b)):
        if v in c:
            out[name] = {"vertex": v, "on_cycle": True}
            continue
        pos, neg = side_sets(e, c, v)
        out[name] = {"vertex": v, "on_cycle": False, "same_side": sorted(pos), "other_side": sorted(neg)}
    print(_dump(out))
    return 0


def cmd_regions(args) -> int:
    e = _load(args.embedding)
    part = complementary_regions(e, _ints(args.support), args.max_len)
    print(_dump({"support": sorted(part.support), "classes": [sorted(cl) for cl in part.classes]}))
    return 0


def cmd_cycles(args) -> int:
    e = _load(args.embedding)
    through = _ints(args.through) if args.through else None
    for c in enumerate_cycles(e, args.max_len, through=through):
        print(" ".join(map(str, c.canonical)))
    return 0


def _structure_json(d) -> dict[str, Any]:
    if isinstance(d, Cage):
        return {"type": "cage", "poles": list(d.poles), "paths": [list(p.vertices) for p in d.paths]}
    return {"type": "nest", "pole": d.pole, "cycles": [_cycle_json(c) for c in d.cycles]}


def cmd_cages(args) -> int:
    e = _load(args.embedding)
    u, v = _poles(args.poles)
    cages = maximal_cages(e, u, v, args.max_len, limit=args.limit)
    print(_dump({"cages": [dict(_structure_json(c), id=i) for i, c in enumerate(cages)]}))
    return 0


def _poles(text: str) -> tuple[int, int]:
    poles = _ints(text)
    if len(poles) != 2:
        raise UsageError("--poles takes two vertices, e.g. 0,1")
    return poles[0], poles[1]


def cmd_fit(args) -> int:
    e = _load(args.embedding)
    seq = _ints(args.seq)
    chosen = [x for x in (args.poles, args.paths, args.cycles) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --poles, --paths, --cycles")
    if args.poles:
        u, v = _poles(args.poles)
        cages = maximal_cages(e, u, v, args.max_len, limit=args.cage_id + 1)
        if args.cage_id >= len(cages):
            raise UsageError(f"only {len(cages)} cages found between {u} and {v}")
        d = cages[args.cage_id]
    else:
        d = order_family(e, _groups(args.paths or args.cycles))
    res = fits_into(e, seq, d)
    print(_dump({"structure": _structure_json(d), "seq": seq, **res.to_json()}))
    return 0


def cmd_envelope(args) -> int:
    e = _load(args.embedding)
    data = compute_envelope(e, MarkedSequence(tuple(_ints(args.seq)), args.max_len))
    print(_dump(data.to_json()))
    return 0


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(
        kind=args.kind,
        n=args.n,
        seed=args.seed,
        emit_coords=not args.no_coords,
        k=args.k,
        paths=args.paths,
        spread=args.spread,
        touching=args.touching,
    )
    text = _dump(gen(cfg))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_verify(args) -> int:
    ids = list(PROPERTIES) if args.property == "all" else [args.property]
    reports = []
    failed = False
    for pid in ids:
        rep = verify(pid, args.trials, args.seed)
        reports.append(rep.to_json())
        failed |= not rep.ok
        print(f"{pid}: {rep.instances} instances, {len(rep.failures)} failures, {len(rep.errors)} errors, "
              f"{rep.elapsed:.2f}s", file=sys.stderr)
    text = _dump(reports[0] if len(reports) == 1 else {"reports": reports})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 1 if failed else 0


def cmd_replay(args) -> int:
    with open(args.report, encoding="utf-8") as fh:
        data = json.load(fh)
    reports = data["reports"] if "reports" in data else [data]
    out = [{"property": r["property"], "replays": replay(r)} for r in reports]
    print(_dump(out[0] if len(out) == 1 else {"reports": out}))
    still = any(x["fails"] for r in out for x in r["replays"])
    return 1 if still else 0


def cmd_export_dot(args) -> int:
    e = _load(args.embedding)
    sys.stdout.write(to_dot(e, _ints(args.highlight) if args.highlight else ()))
    return 0


def cmd_export_svg(args) -> int:
    e = _load(args.embedding)
    sys.stdout.write(to_svg(e, args.size, _ints(args.highlight) if args.highlight else ()))
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclesep", description="Cycle separation tools for planar embeddings.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_doc(name: str, fn, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("embedding", help="embedding JSON file, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    with_doc("check", cmd_check, "validate a document and print its counts")
    with_doc("faces", cmd_faces, "list faces as vertex cycles")

    sp = with_doc("separate", cmd_separate, "same-side test for two vertices and a cycle")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--cycle", required=True, help="comma-separated cycle vertices")

    sp = with_doc("regions", cmd_regions, "complementary regions of a support set")
    sp.add_argument("--support", required=True)
    sp.add_argument("--max-len", type=int, default=None)

    sp = with_doc("cycles", cmd_cycles, "enumerate simple cycles, one per line")
    sp.add_argument("--max-len", type=int, default=config.DEFAULT_MAX_LEN)
    sp.add_argument("--through", default=None)

    sp = with_doc("cages", cmd_cages, "maximal cages between two poles")
    sp.add_argument("--poles", required=True)
    sp.add_argument("--max-len", type=int, default=config.DEFAULT_MAX_LEN)
    sp.add_argument("--limit", type=int, default=10)

    sp = with_doc("fit", cmd_fit, "does a sequence fit into a cage or nest")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--poles", default=None, help="use the cage with --cage-id found between these poles")
    sp.add_argument("--cage-id", type=int, default=0)
    sp.add_argument("--max-len", type=int, default=config.DEFAULT_MAX_LEN)
    sp.add_argument("--paths", default=None, help="explicit cage: paths separated by ';'")
    sp.add_argument("--cycles", default=None, help="explicit nest: cycles separated by ';'")

    sp = with_doc("envelope", cmd_envelope, "separators, X-sets, node and envelopes of a marked sequence")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--max-len", type=int, default=config.DEFAULT_MAX_LEN)

    sp = sub.add_parser("gen", help="generate an embedding document")
    sp.add_argument("--kind", choices=KINDS, default="stacked_triangulation")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--paths", type=int, default=4)
    sp.add_argument("--spread", type=int, default=3)
    sp.add_argument("--touching", action="store_true")
    sp.add_argument("--no-coords", action="store_true")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="run a property on random instances")
    sp.add_argument("--property", required=True, choices=[*PROPERTIES, "all"])
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("replay", help="re-run the failures of a saved report")
    sp.add_argument("report")
    sp.set_defaults(func=cmd_replay)

    sp = with_doc("export-dot", cmd_export_dot, "Graphviz export")
    sp.add_argument("--highlight", default=None)
    sp = with_doc("export-svg", cmd_export_svg, "SVG drawing from the coordinates")
    sp.add_argument("--highlight", default=None)
    sp.add_argument("--size", type=int, default=480)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (CyclesepError, UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

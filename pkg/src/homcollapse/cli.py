"""Command-line front end.

Subcommands: hom (enumerate a hom complex), fold (list or apply fold
witnesses), collapse (emit a fold-induced collapse plan), homology (Betti
numbers of a complex), verify (replay a plan and cross-check it), and gen
(seeded random closure fixtures).  Human summaries go to stdout; JSON
artifacts go to --out, or to stdout under --json (the summary then moves
to stderr so stdout stays parseable).

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 resource
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .closure import ClosureError, random_descending_closure, random_poset
from .folds import first_arg_collapse, second_arg_collapse
from .graphs import (
    FoldError,
    FoldWitness,
    GraphParseError,
    apply_fold,
    find_folds,
    format_graph,
    parse_graph,
)
from .hom import ResourceLimitError, enumerate_hom_cells
from .homology import betti, compare_collapse, f_vector
from .posets import FacePoset, SimplicialComplex, order_complex

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _read_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_graph(text)


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(args, payload) -> None:
    if args.out:
        Path(args.out).write_text(_dump(payload))
    elif args.json:
        sys.stdout.write(_dump(payload))


def _summary(args, text: str) -> None:
    # keep stdout machine-readable when JSON is streaming to it
    stream = sys.stderr if (args.json and not args.out) else sys.stdout
    print(text, file=stream)


def _witness(graph, args) -> FoldWitness:
    if args.u is not None:
        return FoldWitness(args.v, args.u)
    candidates = [w for w in find_folds(graph) if w.v == args.v]
    if not candidates:
        raise FoldError(f"vertex {args.v} has no fold witness in this graph")
    return candidates[0]


def _plan(args):
    g = _read_graph(args.domain)
    h = _read_graph(args.codomain)
    if args.side == "first":
        return first_arg_collapse(g, h, _witness(g, args), args.max_cells)
    order = None
    if args.order:
        order = tuple(int(t) for t in args.order.split(","))
    return second_arg_collapse(g, h, _witness(h, args), order, args.max_cells)


def cmd_hom(args) -> int:
    g = _read_graph(args.domain)
    h = _read_graph(args.codomain)
    hom = enumerate_hom_cells(g, h, args.max_cells)
    fv = f_vector(hom.poset)
    _summary(args, f"cells: {len(hom)}  f-vector: {list(fv)}")
    _emit(args, hom.to_json())
    return EXIT_OK


def cmd_fold(args) -> int:
    g = _read_graph(args.graph)
    if args.v is None:
        witnesses = find_folds(g)
        _summary(args, f"fold witnesses: {len(witnesses)}")
        _emit(args, [[w.v, w.u] for w in witnesses])
        return EXIT_OK
    w = _witness(g, args)
    folded, f, _ = apply_fold(g, w)
    _summary(args, f"folded {w.v} onto {w.u}: {folded.n} vertices, {folded.edge_count()} edges")
    if args.json or args.out:
        _emit(args, {
            "v": w.v,
            "u": w.u,
            "map": list(f.map),
            "graph": format_graph(folded),
        })
    else:
        sys.stdout.write(format_graph(folded))
    return EXIT_OK


def cmd_collapse(args) -> int:
    plan = _plan(args)
    _summary(
        args,
        f"plan: side={plan.side} fold=({plan.witness.v},{plan.witness.u}) "
        f"steps={len(plan.sequence)} ambient_cells={len(plan.hom.cells)} "
        f"target_cells={len(plan.target_cells)}",
    )
    _emit(args, plan.to_json())
    return EXIT_OK


def _load_complex(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None
    if isinstance(data, dict) and "facets" in data:
        return SimplicialComplex.from_json(data)
    if isinstance(data, dict) and "elements" in data:
        return order_complex(FacePoset.from_json(data))
    raise ValueError(f"{path} holds neither a complex nor a poset")


def cmd_homology(args) -> int:
    if args.complex:
        x = _load_complex(args.complex)
    else:
        if not (args.domain and args.codomain):
            raise ValueError("homology needs either --complex or both -G and -H")
        g = _read_graph(args.domain)
        h = _read_graph(args.codomain)
        x = order_complex(enumerate_hom_cells(g, h, args.max_cells).poset)
    bv = betti(x, args.coefficients)
    line = f"f-vector: {list(x.f_vector())}  betti: {list(bv.betti)}"
    if bv.torsion:
        line += f"  torsion: {[list(t) for t in bv.torsion]}"
    _summary(args, line)
    _emit(args, {
        "f_vector": list(x.f_vector()),
        "betti": list(bv.betti),
        "torsion": None if bv.torsion is None else [list(t) for t in bv.torsion],
        "coefficients": args.coefficients,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    plan = _plan(args)
    verdict = compare_collapse(plan.ambient, plan.sequence, plan.retained, args.coefficients)
    status = "PASS" if verdict.all_pass else "FAIL"
    _summary(
        args,
        f"verify: {status} side={plan.side} fold=({plan.witness.v},{plan.witness.u}) "
        f"ambient_cells={len(plan.hom.cells)} target_cells={len(plan.target_cells)} "
        f"betti={list(verdict.betti_before)}->{list(verdict.betti_after)}",
    )
    _emit(args, {
        "verdict": verdict.to_json(),
        "side": plan.side,
        "v": plan.witness.v,
        "u": plan.witness.u,
        "ambient_cells": len(plan.hom.cells),
        "target_cells": len(plan.target_cells),
        "steps": len(plan.sequence),
    })
    return EXIT_OK if verdict.all_pass else EXIT_VERIFY


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    fixtures = []
    for _ in range(args.count):
        p = random_poset(rng, args.max_elements)
        phi = random_descending_closure(rng, p)
        fixtures.append({
            "poset": p.to_json(),
            "closure": sorted([x, y] for x, y in phi.map.items()),
            "direction": "descending",
        })
    _summary(args, f"generated {len(fixtures)} closure fixtures (seed {args.seed})")
    _emit(args, {"seed": args.seed, "fixtures": fixtures})
    return EXIT_OK


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="FILE", help="write the JSON artifact here")
    p.add_argument("--json", action="store_true", help="stream the JSON artifact to stdout")


def _add_hom_pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("-G", dest="domain", required=True, metavar="FILE", help="domain graph file")
    p.add_argument("-H", dest="codomain", required=True, metavar="FILE", help="codomain graph file")
    p.add_argument("--max-cells", type=int, default=1_000_000, metavar="N",
                   help="abort enumerations beyond this many cells (default 1000000)")


def _add_fold_selection(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fold-vertex", "--v", dest="v", type=int, required=True,
                   help="vertex to fold away")
    p.add_argument("--fold-onto", "--u", dest="u", type=int, default=None,
                   help="vertex to fold onto (default: first witness for the folded vertex)")


def _add_plan_flags(p: argparse.ArgumentParser) -> None:
    _add_hom_pair(p)
    p.add_argument("--side", choices=("first", "second"), required=True,
                   help="fold in the domain (first) or the codomain (second)")
    _add_fold_selection(p)
    p.add_argument("--order", metavar="I,J,...",
                   help="domain vertex scan order for side=second (default 0,1,...)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homcollapse",
        description="graph homomorphism complexes, fold collapses, and homology checks",
    )
    parser.add_argument("--threads", type=int, default=1, metavar="N",
                        help="upper bound on worker threads (current algorithms use one)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", help="enumerate the cell poset of Hom(G, H)")
    _add_hom_pair(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("fold", help="list fold witnesses, or apply one with --fold-vertex")
    p.add_argument("-G", dest="graph", required=True, metavar="FILE", help="graph file")
    p.add_argument("--fold-vertex", "--v", dest="v", type=int, default=None,
                   help="vertex to fold away (omit to list witnesses)")
    p.add_argument("--fold-onto", "--u", dest="u", type=int, default=None,
                   help="vertex to fold onto")
    _add_output_flags(p)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("collapse", help="emit a fold-induced collapse plan")
    _add_plan_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("homology", help="Betti numbers of a complex or of Hom(G, H)")
    p.add_argument("--complex", metavar="FILE", help="JSON complex or poset to read instead of -G/-H")
    p.add_argument("-G", dest="domain", metavar="FILE", help="domain graph file")
    p.add_argument("-H", dest="codomain", metavar="FILE", help="codomain graph file")
    p.add_argument("--max-cells", type=int, default=1_000_000, metavar="N")
    p.add_argument("--coefficients", choices=("gf2", "integer"), default="gf2")
    _add_output_flags(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", help="replay a fold collapse and cross-check it")
    _add_plan_flags(p)
    p.add_argument("--coefficients", choices=("gf2", "integer"), default="gf2")
    _add_output_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit seeded random poset/closure fixtures")
    p.add_argument("--seed", type=int, required=True, help="RNG seed; everything else is deterministic")
    p.add_argument("--count", type=int, default=10, metavar="N")
    p.add_argument("--max-elements", type=int, default=10, metavar="N")
    _add_output_flags(p)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GraphParseError, FoldError, ClosureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

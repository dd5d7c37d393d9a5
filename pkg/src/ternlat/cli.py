"""Command line front end.

Subcommands: ``form info``, ``theta``, ``genus``, ``graph``, ``verify``,
``export``.  Every command takes a form JSON file (``{"gram2": ...}`` or
``{"diag": [a,b,c]}``) and prints or writes JSON; ``verify`` exits 0
exactly when every checked instance passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .counting import theta_vector
from .errors import TernlatError
from .graphs import build_graph, classify_type, spinor_partition
from .harness import CHECK_IDS, run_check
from .lattices import load_form
from .local import jordan_decompose, ordp, satisfies_condition_2_2
from .sublattices import (
    classify_points,
    gamma_half_pair,
    omega_family,
    phi_family,
    psi_family,
    watson_kernel,
)
from .towers import genus_tower


def _write_json(payload, path):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _member_dict(member):
    return {
        "label": member.label,
        "basis": [list(r) for r in member.basis],
        "gram2": [list(r) for r in member.lattice.gram2],
        "form_scale": str(member.form_scale),
    }


def cmd_form_info(args) -> int:
    lattice = load_form(args.form)
    sym = jordan_decompose(lattice, args.prime)
    payload = {
        "prime": args.prime,
        "gram2": [list(r) for r in lattice.gram2],
        "disc4": lattice.disc4,
        "level": ordp(lattice.disc4, args.prime),
        "local_symbol": [asdict(c) for c in sym.components],
        "condition_2_2": satisfies_condition_2_2(lattice, args.prime),
    }
    _write_json(payload, args.json)
    return 0


def cmd_theta(args) -> int:
    lattice = load_form(args.form)
    values = theta_vector(lattice, args.max_n)
    if args.json is not None:
        _write_json({"max_n": args.max_n, "theta": list(values)}, args.json)
    elif args.csv:
        print("n,r")
        for n, r in enumerate(values):
            print(f"{n},{r}")
    else:
        for n, r in enumerate(values):
            print(f"{n} {r}")
    return 0


def _tower_graph(base, p, m):
    tower = genus_tower(base, p, m + 1)
    graph = build_graph(tower[m], tower[m + 1])
    ground = None
    if m >= 1:
        ground = classify_type(build_graph(tower[0], tower[1]))
    return tower, graph, spinor_partition(graph, ground)


def cmd_genus(args) -> int:
    base = load_form(args.form)
    m = args.level
    tower, graph, part = _tower_graph(base, args.prime, m)
    payload = {
        "prime": args.prime,
        "level": m,
        "classes": [{
            "index": i,
            "gram2": [list(r) for r in c.lattice.gram2],
            "aut_order": c.aut_order,
        } for i, c in enumerate(tower[m].classes)],
        "graph_type": part.graph_type,
        "cspn": [list(c) for c in part.cspn],
        "spn": [list(s) for s in part.spn],
    }
    _write_json(payload, args.json)
    return 0


def cmd_graph(args) -> int:
    base = load_form(args.form)
    m = args.level
    tower, graph, part = _tower_graph(base, args.prime, m)
    mtype = part.graph_type
    payload = {
        "prime": args.prime,
        "level": m,
        "graph_type": mtype,
        "vertices": [{
            "index": i,
            "gram2": [list(r) for r in c.lattice.gram2],
            "aut_order": c.aut_order,
        } for i, c in enumerate(graph.vertices)],
        "edges": [{
            "index": j,
            "gram2": [list(r) for r in c.lattice.gram2],
            "aut_order": c.aut_order,
            "endpoints": list(graph.endpoints[j]),
        } for j, c in enumerate(graph.edges)],
        "incidence": [list(r) for r in graph.incidence],
    }
    if args.json is not None:
        _write_json(payload, args.json)
    if args.dot is not None:
        lines = ["graph classes {"]
        for i, c in enumerate(graph.vertices):
            lines.append(
                f'  v{i} [label="T{i} (o={c.aut_order})"];')
        for j, (a, b) in enumerate(graph.endpoints):
            lines.append(f'  v{a} -- v{b} [label="S{j}"];')
        lines.append("}")
        text = "\n".join(lines) + "\n"
        if args.dot == "-":
            print(text, end="")
        else:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(text)
    return 0


def cmd_verify(args) -> int:
    lattice = load_form(args.form)
    try:
        report = run_check(args.id, lattice, args.prime,
                           level=args.level, n_max=args.max_n)
    except TernlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.line())
    if args.json is not None:
        _write_json(report.to_dict(), args.json)
    return 0 if report.passed else 1


def cmd_export(args) -> int:
    lattice = load_form(args.form)
    p = args.prime
    families = []
    kern = watson_kernel(lattice, p)
    families.append({"family": "kernel", "members": [_member_dict(kern)]})
    halves = None
    try:
        halves = gamma_half_pair(lattice, p)
    except TernlatError:
        pass
    if halves is not None:
        families.append({"family": "gamma",
                         "members": [_member_dict(h) for h in halves]})
    for eps in sorted(classify_points(lattice, p), key=str):
        fam = omega_family(lattice, p, eps)
        families.append({"family": "omega", "eps": str(eps),
                         "members": [_member_dict(m) for m in fam]})
    for fam in (phi_family(lattice, p), psi_family(lattice, p)):
        families.append({"family": fam.kind,
                         "members": [_member_dict(m) for m in fam]})
    _write_json({"prime": p,
                 "gram2": [list(r) for r in lattice.gram2],
                 "families": families}, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ternlat",
        description="Ternary lattice genus towers and counting identities")
    sub = parser.add_subparsers(dest="command", required=True)

    p_form = sub.add_parser("form", help="form-level reports")
    form_sub = p_form.add_subparsers(dest="form_command", required=True)
    p_info = form_sub.add_parser("info", help="local symbol and eligibility")
    p_info.add_argument("form")
    p_info.add_argument("--prime", type=int, required=True)
    p_info.add_argument("--json", default=None)
    p_info.set_defaults(func=cmd_form_info)

    p_theta = sub.add_parser("theta", help="representation numbers")
    p_theta.add_argument("form")
    p_theta.add_argument("--max-n", type=int, required=True)
    group = p_theta.add_mutually_exclusive_group()
    group.add_argument("--csv", action="store_true")
    group.add_argument("--json", default=None)
    p_theta.set_defaults(func=cmd_theta)

    p_genus = sub.add_parser("genus", help="class list at a tower level")
    p_genus.add_argument("form")
    p_genus.add_argument("--prime", type=int, required=True)
    p_genus.add_argument("--level", type=int, default=0)
    p_genus.add_argument("--json", default=None)
    p_genus.set_defaults(func=cmd_genus)

    p_graph = sub.add_parser("graph", help="class graph at a tower level")
    p_graph.add_argument("form")
    p_graph.add_argument("--prime", type=int, required=True)
    p_graph.add_argument("--level", type=int, default=0)
    p_graph.add_argument("--dot", default=None)
    p_graph.add_argument("--json", default=None)
    p_graph.set_defaults(func=cmd_graph)

    p_verify = sub.add_parser("verify", help="run one identity check")
    p_verify.add_argument("id", choices=sorted(CHECK_IDS))
    p_verify.add_argument("form")
    p_verify.add_argument("--prime", type=int, required=True)
    p_verify.add_argument("--level", type=int, default=None)
    p_verify.add_argument("--max-n", type=int, default=None)
    p_verify.add_argument("--json", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_export = sub.add_parser("export", help="sublattice families as JSON")
    p_export.add_argument("form")
    p_export.add_argument("--prime", type=int, required=True)
    p_export.add_argument("--json", default=None)
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TernlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end: ``greenring analyze | chartab | cyclotomic``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .chartable import (
    CharacterTable,
    DixonError,
    TableError,
    dixon_character_table,
    dumps_table,
    load_table,
)
from .cyclotomic import cyclotomic_polynomial, factorization_shape, is_prime, is_ramified
from .exactmath import DEFAULT_SEED
from .greenring import StructureConstantError, relations, structure_constants
from .groups import DescriptorError, GroupSizeError, make_group
from .singular import InvariantViolation, analyze

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3

COLUMNS = ("p", "f(x)", "edim_P C", "dim T_P(C/Z)", "dim T_P(C/Z[xi])")


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GREENRING_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"GREENRING_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def _load(args):
    """(table, group or None) from --group / --table."""
    if bool(args.group) == bool(getattr(args, "table", None)):
        raise UsageError("give exactly one of --group or --table")
    if args.group:
        G = make_group(args.group)
        return dixon_character_table(G, seed=_seed(args)), G
    return load_table(args.table), None


# --------------------------------------------------------------------------
# reports


def build_report(table: CharacterTable, reports, rels=None) -> dict:
    labels = table.labels
    points = []
    for r in reports:
        pt = r.point
        points.append(
            {
                "p": pt.p,
                "f": str(pt.prime.f),
                "edim": r.edim,
                "dim_T_Z": r.dimT_Z,
                "dim_T_Zxi": r.dimT_Zxi,
                "ramified": r.ramified,
                "p_in_P_squared": r.p_in_P_squared,
                "kernel_dim": r.kernel_dim,
                "singular": r.singular,
                "base_class": labels[pt.base_class],
                "fiber": [labels[c] for c in pt.fiber],
            }
        )
    doc = {"order": table.order, "classes": labels, "points": points}
    if rels is not None:
        doc["relations"] = [str(f) for f in rels]
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _latex_poly(text: str) -> str:
    # x^12 -> x^{12}
    out, i = "", 0
    while i < len(text):
        if text[i] == "^":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            exp = text[i + 1 : j]
            out += "^{" + exp + "}" if len(exp) > 1 else "^" + exp
            i = j
        else:
            out += text[i]
            i += 1
    return out


def render_text(doc: dict) -> str:
    rows = [COLUMNS] + [
        (str(pt["p"]), pt["f"], str(pt["edim"]), str(pt["dim_T_Z"]), str(pt["dim_T_Zxi"]))
        for pt in doc["points"]
    ]
    widths = [max(len(r[k]) for r in rows) for k in range(len(COLUMNS))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    if "relations" in doc:
        lines.append("")
        lines.append("relations:")
        lines.extend("  " + f for f in doc["relations"])
    return "\n".join(lines) + "\n"


def render_latex(doc: dict) -> str:
    lines = [
        r"\begin{tabular}{|c|c|c|c|c|}\hline $p$ & $f(x)$ & ",
        r"$\mathrm{edim}_P\, C$ & $\dim_{k_P}T_P(C/\mathbb{Z})$ & $\dim_{k_P}T_P(C/\mathbb{Z}[\xi])$ \\",
        r"\hline\hline",
    ]
    for pt in doc["points"]:
        f = _latex_poly(pt["f"]).replace(" ", "")
        lines.append(f"{pt['p']} & ${f}$ & {pt['edim']} & {pt['dim_T_Z']} & {pt['dim_T_Zxi']} \\\\\\hline")
    lines.append(r"\end{tabular}")
    if "relations" in doc:
        lines.append("% relations:")
        lines.extend("% " + f for f in doc["relations"])
    return "\n".join(lines) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "latex": render_latex}


def render_chartab_text(t: CharacterTable) -> str:
    header = ["class"] + t.labels
    rows = [header, ["size"] + [str(c.size) for c in t.classes], ["order"] + [str(c.element_order) for c in t.classes]]
    for i, row in enumerate(t.values):
        rows.append([f"chi_{i + 1}"] + [str(v) for v in row])
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    out = [f"conductor {t.conductor}: values in Z[xi], xi a primitive {t.conductor}-th root of unity"]
    out += ["  ".join(c.rjust(w) if k else c.ljust(w) for k, (c, w) in enumerate(zip(r, widths))) for r in rows]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    table, G = _load(args)
    seed = _seed(args)
    R = structure_constants(table)
    primes = args.prime or None
    if primes:
        bad = [p for p in primes if not is_prime(p)]
        if bad:
            raise UsageError(f"not a prime: {bad[0]}")
    reports = analyze(R, primes=primes, group=G, all_points=args.all_points, seed=seed)
    doc = build_report(table, reports, relations(R) if args.show_relations else None)
    sys.stdout.write(RENDERERS[args.format](doc))
    return EXIT_OK


def cmd_chartab(args) -> int:
    table, _ = _load(args)
    if args.format == "text":
        sys.stdout.write(render_chartab_text(table))
    else:
        sys.stdout.write(dumps_table(table))
    return EXIT_OK


def cmd_cyclotomic(args) -> int:
    n, p = args.n, args.p
    if n < 1:
        raise UsageError("n must be positive")
    if not is_prime(p):
        raise UsageError(f"not a prime: {p}")
    shape = factorization_shape(n, p, _seed(args))
    verdict = "ramified" if is_ramified(n, p) else "unramified"
    sys.stdout.write(f"Phi_{n}(x) = {cyclotomic_polynomial(n)}\n")
    sys.stdout.write(f"mod {p}: {shape}\n")
    sys.stdout.write(f"{p} is {verdict} in Z[xi_{n}]\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenring",
        description="Singular points of Spec(R(G) (x) Z[xi]) for finite permutation groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("--group", help="A4, S5, C6, D8, C2xC4 or perm:[(0,1,2),(0,1)(2,3)]")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--seed", type=int, default=None, help="seed for polynomial factoring (env GREENRING_SEED)")

    a = sub.add_parser("analyze", help="tangent-space invariants of the points of C")
    common(a, ["text", "json", "latex"], "text")
    a.add_argument("--table", help="character table JSON instead of --group")
    a.add_argument("--all-points", action="store_true", help="include regular closed points")
    a.add_argument("--prime", type=int, action="append", help="restrict to this prime (repeatable)")
    a.add_argument("--show-relations", action="store_true", help="print the presentation of R(G)")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("chartab", help="print the character table")
    common(c, ["json", "text"], "json")
    c.set_defaults(func=cmd_chartab, table=None)

    y = sub.add_parser("cyclotomic", help="factor Phi_n modulo p")
    y.add_argument("n", type=int)
    y.add_argument("p", type=int)
    y.add_argument("--seed", type=int, default=None)
    y.set_defaults(func=cmd_cyclotomic)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DescriptorError, GroupSizeError, TableError, OSError) as exc:
        print(f"greenring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, StructureConstantError, DixonError) as exc:
        print(f"greenring: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands wrap the library stages: hasse, log, hyp, trop, certify, fgl,
and witt.  Exit codes: 0 success, 1 bad user input, 2 mathematical
decline (bound failure or a required field extension), 3 internal
assertion failure.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import canon, display, fgl, fglog, tropical
from .canon import render_text
from .errors import (
    CanonlabError,
    DomainError,
    ExtensionRequiredError,
    InputError,
    InternalCheckError,
    StructureError,
)
from .ring import INF, format_elem, parse_elem
from .witt import WittVec

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DECLINE = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: Optional[str]
    level: int
    n_max: Optional[int]
    degree: Optional[int]
    grid_den: Optional[int]
    fmt: str
    jobs: int
    seed: Optional[str]


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are user-input errors
        raise InputError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="canonlab",
        description=(
            "Exact computations with displays of p-divisible formal groups: "
            "Hasse invariants, logarithm tables, Newton polygons and "
            "tropicalizations, and canonical-subgroup certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_common(p, with_level=True):
        p.add_argument("file", help="display JSON file")
        if with_level:
            p.add_argument("--level", type=int, default=1, metavar="N",
                           help="certification level (default 1)")
        p.add_argument("--format", dest="fmt", default=None,
                       choices=["json", "tsv", "text", "svg"],
                       help="output format (default depends on subcommand)")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for grid scans (default 1)")
        p.add_argument("--grid-den", type=int, default=None, metavar="Q",
                       help="max denominator for grid scans "
                            "(default 2*p^2*(p-1))")

    p_hasse = sub.add_parser("hasse", help="Hasse invariant of a display")
    add_common(p_hasse, with_level=False)

    p_log = sub.add_parser("log", help="logarithm coefficient table")
    add_common(p_log)
    p_log.add_argument("--nmax", type=int, default=None,
                       help="truncation level (default level + 2)")

    p_hyp = sub.add_parser("hyp", help="valuation-pattern report")
    add_common(p_hyp)
    p_hyp.add_argument("--nmax", type=int, default=None,
                       help="truncation level (default level + 2)")

    p_trop = sub.add_parser("trop", help="polygons, cells and the grid scan")
    add_common(p_trop)

    p_cert = sub.add_parser("certify", help="canonical-subgroup certificate")
    add_common(p_cert)
    p_cert.add_argument("--bound", choices=["main", "katz"], default="main",
                        help="katz reports the tighter experimental bound "
                             "without asserting existence under it")

    p_fgl = sub.add_parser("fgl", help="group law and multiply-by-p series")
    add_common(p_fgl, with_level=False)
    p_fgl.add_argument("--degree", type=int, default=None, metavar="D",
                       help="series cutoff (default p^2)")

    p_witt = sub.add_parser("witt", help="Witt vector calculator")
    p_witt.add_argument("expr", help="e.g. 'add [1] [1]' or 'ghost 1 (0,1)'")
    p_witt.add_argument("--p", type=int, required=True)
    p_witt.add_argument("--e", type=int, default=1)
    p_witt.add_argument("--length", type=int, default=2, metavar="L")
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if args.command is None:
            raise InputError("a subcommand is required (see --help)")
        handler = {
            "hasse": cmd_hasse,
            "log": cmd_log,
            "hyp": cmd_hyp,
            "trop": cmd_trop,
            "certify": cmd_certify,
            "fgl": cmd_fgl,
            "witt": cmd_witt,
        }[args.command]
        return handler(args)
    except (InputError, StructureError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExtensionRequiredError as exc:
        print(f"declined: {exc}", file=sys.stderr)
        return EXIT_DECLINE
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_entry()


def _emit(data: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(render_text(data))


def _seed_note() -> Optional[str]:
    return os.environ.get("CANONLAB_SEED")


# -- subcommands ----------------------------------------------------------------


def cmd_hasse(args) -> int:
    D = display.load_file(args.file)
    hv = display.hasse_invariant(D)
    fmt = args.fmt or "text"
    if fmt == "json":
        _emit(
            {
                "H": str(hv.value),
                "U": None if hv.diagonal is None else [str(u) for u in hv.diagonal],
            },
            "json",
        )
    else:
        print(f"H = {hv.value}")
        if hv.diagonal is not None:
            for i, u in enumerate(hv.diagonal):
                print(f"U_{i + 1} = {u}")
    return EXIT_OK


def _log_table(args, n_max=None):
    D = display.load_file(args.file)
    Dt = display.triangularize(D)
    if n_max is None:
        n_max = getattr(args, "nmax", None)
    if n_max is None:
        n_max = args.level + 2
    return fglog.compute_log(Dt.with_length(max(Dt.L, n_max + 1)), n_max)


def cmd_log(args) -> int:
    T = _log_table(args)
    fmt = args.fmt or "json"
    if fmt == "tsv":
        sys.stdout.write(fglog.table_tsv(T))
    else:
        _emit(fglog.table_json_dict(T), fmt)
    return EXIT_OK


def cmd_hyp(args) -> int:
    T = _log_table(args)
    report = fglog.check_hypotheses(T, args.level)
    _emit(report.to_json_dict(), args.fmt or "json")
    if not report.bound_ok:
        return EXIT_DECLINE
    if not report.passed:
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_trop(args) -> int:
    T = _log_table(args)
    N = args.level
    report = fglog.check_hypotheses(T, N)
    if not report.bound_ok:
        print(
            f"declined: H = {report.H} is not below (p-1)/p^N = {report.bound}",
            file=sys.stderr,
        )
        return EXIT_DECLINE
    if not report.passed:
        return EXIT_INTERNAL
    cells = tropical.h_cells(T, N)
    polys = [tropical.newton_polygon(tropical.diag_points(T, i)) for i in range(T.g)]
    fmt = args.fmt or "json"
    if fmt == "svg":
        if T.g == 1:
            print(tropical.newton_polygon_svg(tropical.diag_points(T, 0), polys[0]))
        elif T.g == 2:
            print(_trop_svg(T, N, cells, args))
        else:
            raise InputError("svg output is limited to g <= 2")
        return EXIT_OK
    if fmt == "tsv":
        for i, np_ in enumerate(polys):
            sys.stdout.write(f"# coordinate {i + 1}\n")
            sys.stdout.write(tropical.polygon_tsv(np_))
        return EXIT_OK
    data = {
        "level": N,
        "deep_cells_bounded": tropical.deep_cells_bounded(T, N),
        "cells": [
            {"n": c.n, "i": c.i, "coordinate": str(c.coordinate)} for c in cells
        ],
        "polygons": [
            {
                "coordinate": i + 1,
                "vertices": [[x, str(y)] for x, y in np_.vertices],
                "segments": [[str(s), l] for s, l in np_.segments],
            }
            for i, np_ in enumerate(polys)
        ],
    }
    if T.g <= 2:
        summary = tropical.grid_scan(T, N, max_den=args.grid_den, jobs=args.jobs)
        data["scan"] = summary.to_json_dict()
    _emit(data, fmt)
    return EXIT_OK


def _trop_svg(T, N, cells, args) -> str:
    p = T.p
    edge = Fraction(1, p - 1)
    lines = []
    for c in cells:
        base = (
            (c.coordinate, Fraction(1, p ** N * (p - 1)))
            if c.i == 1
            else (Fraction(1, p ** N * (p - 1)), c.coordinate)
        )
        direction = (0, 1) if c.i == 1 else (1, 0)
        lines.append(
            tropical.TropCell(inn=(), samples=(), dim=1, geometry=("ray", base, direction))
        )
    summary = tropical.grid_scan(T, N, max_den=args.grid_den, jobs=args.jobs)
    for w in summary.primary.joint:
        lines.append(
            tropical.TropCell(inn=(), samples=(), dim=0, geometry=("point", w))
        )
    window = ((Fraction(0), 2 * edge), (Fraction(0), 2 * edge))
    return tropical.trop_plane_svg(lines, window)


def cmd_certify(args) -> int:
    D = display.load_file(args.file)
    cert = canon.certify(D, args.level, grid_den=args.grid_den, jobs=args.jobs)
    data = cert.to_json_dict()
    seed = _seed_note()
    if seed is not None:
        data["seed"] = seed
    if args.bound == "katz":
        data["katz_note"] = (
            "experimental: reports the bound p^2/(p^N(p+1)) only; "
            "existence is never asserted under it"
        )
    fmt = args.fmt or "json"
    _emit(data, fmt)
    return EXIT_OK if cert.exists else EXIT_DECLINE


def cmd_fgl(args) -> int:
    D = display.load_file(args.file)
    Dt = display.triangularize(D)
    p = D.p
    degree = args.degree or p * p
    need = 0
    while p ** (need + 1) <= degree:
        need += 1
    T = fglog.compute_log(Dt.with_length(max(Dt.L, need + 1)), need)
    F = fgl.group_law(T, degree)
    mp = fgl.p_power_series(T, 1, degree) if degree >= p * p else None
    data = {
        "degree": degree,
        "group_law": [str(f) for f in F],
        "integral": all(
            c.ord() >= 0 for f in F for c in f.coeffs.values()
        ),
    }
    if mp is not None:
        report = fgl.shape_check(mp, T.w0_tangent)
        data["p_series"] = [str(f) for f in mp]
        data["shape"] = report.to_json_dict()
    _emit(data, args.fmt or "json")
    return EXIT_OK


def cmd_witt(args) -> int:
    tokens = shlex.split(args.expr)
    if not tokens:
        raise InputError("empty witt expression")
    op, rest = tokens[0], tokens[1:]
    p, e, L = args.p, args.e, args.length

    def parse_vec(tok: str) -> WittVec:
        tok = tok.strip()
        if tok.startswith("[") and tok.endswith("]"):
            c = parse_elem(tok[1:-1], p, e)
            return WittVec.teichmuller(c, L)
        if tok.startswith("(") and tok.endswith(")"):
            parts = [s for s in tok[1:-1].split(",") if s.strip()]
            comps = tuple(parse_elem(s, p, e) for s in parts)
            return WittVec(comps).zero_extend(max(L, len(comps)))
        raise InputError(f"cannot parse Witt vector {tok!r}")

    def show(v: WittVec) -> str:
        return "(" + ", ".join(format_elem(c) for c in v.components) + ")"

    if op in ("add", "mul"):
        if len(rest) != 2:
            raise InputError(f"witt {op} takes two vectors")
        x, y = parse_vec(rest[0]), parse_vec(rest[1])
        print(show(x + y if op == "add" else x * y))
    elif op in ("neg", "frob", "versch"):
        if len(rest) != 1:
            raise InputError(f"witt {op} takes one vector")
        x = parse_vec(rest[0])
        out = {"neg": lambda: -x,
               "frob": x.frobenius,
               "versch": x.verschiebung}[op]()
        print(show(out))
    elif op == "ghost":
        if len(rest) != 2:
            raise InputError("witt ghost takes an index and a vector")
        n = int(rest[0])
        x = parse_vec(rest[1])
        print(format_elem(x.ghost(n)))
    else:
        raise InputError(f"unknown witt operation {op!r}")
    return EXIT_OK

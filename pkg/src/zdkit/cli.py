"""Command-line entry point: ``zdkit <subcommand> [flags]``."""

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

from . import fano
from .algebra import HyperNum, generate_trips, mul, oracle_mul, trip_count
from .boxkite import build_box_kite, enumerate_assessors, enumerate_box_kites
from .emanation import build_et, flipbook, pgm_bytes, shade
from .errors import ZDKitError
from .spandrel import SAIL_NAMES, egg_candidate, explode, find_egg, spandrel_of, verify_egg
from .twist import brocade, catamaran, royal_hunt, twist_edge

_TERM = re.compile(r"\s*([+-]?)\s*(\d+)?\s*(e\s*(\d+))?\s*")


def parse_hypernum(text, n):
    """Parse ``e10+e3``, ``2e5 - e12`` or ``1 + e1`` into a HyperNum."""
    terms = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(3):
            coeff = int(m.group(2)) if m.group(2) else 1
            index = int(m.group(4))
        elif m.group(2):
            coeff, index = int(m.group(2)), 0
        else:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        terms[index] = terms.get(index, 0) + sign * coeff
        pos = m.end()
    return HyperNum.from_terms(terms, n)


def format_hypernum(x):
    parts = []
    for i, c in sorted(x.terms().items()):
        unit = "" if i == 0 else f"e{i}"
        mag = abs(c)
        body = f"{mag}{unit}" if (mag != 1 or not unit) else unit
        parts.append(("-" if c < 0 else "+") + body)
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def _emit(args, text=None, data=None):
    if data is not None:
        if args.out:
            Path(args.out).write_bytes(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        return
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _kite(args):
    if args.s is None:
        raise ZDKitError("--s is required")
    if args.zigzag:
        trip = tuple(int(v) for v in args.zigzag.split(","))
        return build_box_kite(args.s, trip, args.n)
    kites = [bk for bk in enumerate_box_kites(args.s, args.n) if bk.kind.proper or args.hidden]
    if not kites:
        raise ZDKitError(f"no box-kites with s={args.s} at N={args.n}")
    if not 0 <= args.index < len(kites):
        raise ZDKitError(f"--index must be below {len(kites)}")
    return kites[args.index]


# -- subcommands --------------------------------------------------------------


def cmd_trips(args):
    if args.count:
        _emit(args, f"{trip_count(args.n) if args.n > 1 else 0}\n")
        return 0
    trips = sorted(t.as_tuple() for t in generate_trips(args.n))
    if args.format == "json":
        _emit(args, _json([list(t) for t in trips]))
    else:
        _emit(args, _csv([["p", "q", "r"]] + [list(t) for t in trips]))
    return 0


def cmd_mul(args):
    x = parse_hypernum(args.x, args.n)
    y = parse_hypernum(args.y, args.n)
    z = oracle_mul(x, y) if args.oracle else mul(x, y)
    _emit(args, format_hypernum(z) + "\n")
    return 0


def cmd_assessors(args):
    found = enumerate_assessors(args.n)
    if args.s is not None:
        found = [a for a in found if a.s == args.s]
    if args.count:
        _emit(args, f"{len(found)}\n")
    elif args.format == "json":
        _emit(args, _json([{"l": a.l, "u": a.u, "s": a.s} for a in found]))
    else:
        _emit(args, _csv([["l", "u", "s"]] + [[a.l, a.u, a.s] for a in found]))
    return 0


def cmd_boxkite(args):
    if args.zigzag:
        kites = [_kite(args)]
    else:
        ss = [args.s] if args.s is not None else range(1, 1 << (args.n - 1))
        kites = [bk for s in ss for bk in enumerate_box_kites(s, args.n)]
    if args.count:
        _emit(args, f"{len(kites)}\n")
    elif args.format == "csv":
        rows = [["n", "s", "kind", "A", "B", "C", "D", "E", "F"]]
        rows += [[bk.n, bk.s, bk.kind.value] + [f"{v.l}/{v.u}" for v in bk.vertices] for bk in kites]
        _emit(args, _csv(rows))
    else:
        _emit(args, _json([bk.to_dict() for bk in kites]))
    return 0


def cmd_et(args):
    if args.s is None:
        raise ZDKitError("--s is required")
    et = build_et(args.s, args.n)
    if args.census:
        if args.format == "json":
            _emit(args, et.to_json() + "\n")
        else:
            _emit(args, f"filled={et.filled} empty={et.empty}\n")
    elif args.format == "pgm":
        _emit(args, data=pgm_bytes(shade(et)))
    elif args.format == "json":
        _emit(args, _json({**et.census(), "labels": list(et.labels), "cells": et.cells.tolist()}))
    else:
        _emit(args, et.to_csv())
    return 0


def _s_range(text):
    if text is None:
        raise ZDKitError("--s is required (a value or a range like 8..15)")
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v]


def cmd_flipbook(args):
    if not args.out:
        raise ZDKitError("--out DIR is required")
    paths = flipbook(_s_range(args.s), args.n, args.out)
    sys.stdout.write("".join(f"{p}\n" for p in paths))
    return 0


def cmd_brocade(args):
    b = brocade(args.n)
    _emit(args, _json(b.to_dict()) if args.format == "json" else b.to_csv())
    return 0


def cmd_twist(args):
    bk = _kite(args)
    if args.edge:
        t = twist_edge(bk, args.edge)
        out = {
            "edge": args.edge.upper(),
            "target_s": t.target_s,
            "pair": [list(a.as_pair()) for a in t.pair],
            "edge_sign": t.edge_sign,
            "target": t.target.to_dict() if t.target is not None else None,
        }
    else:
        strut = args.strut or "CD"
        out = royal_hunt(bk, catamaran(bk, strut)).to_dict()
    _emit(args, _json(out))
    return 0


def cmd_explode(args):
    bk = _kite(args)
    hbk = explode(bk, args.sail or "abc")
    _emit(args, _json(hbk.to_dict()))
    return 0


def cmd_spandrel(args):
    sp = spandrel_of(_kite(args))
    _emit(args, _json(sp.to_dict()) if args.format == "json" else sp.to_text())
    return 0


def cmd_egg(args):
    sp = spandrel_of(_kite(args))
    out = []
    for name, hbk in zip(SAIL_NAMES, sp.members):
        if args.sail:
            report = verify_egg(egg_candidate(hbk, args.sail))
        else:
            egg = find_egg(hbk, sp.source.kind)
            report = verify_egg(egg) if egg is not None else None
        out.append({"member": name, "report": None if report is None else report.to_dict()})
    _emit(args, _json(out))
    return 0


def cmd_fano(args):
    bk = _kite(args)
    if args.member:
        bk = explode(bk, args.member)
    p = fano.from_box_kite(bk)
    if args.sail:
        p = fano.represent(p, args.sail)
    if args.format == "dot":
        _emit(args, p.to_dot())
    else:
        _emit(args, _json({**p.to_dict(), "shape": str(fano.shape(p))}))
    return 0


def cmd_verify(args):
    from .checks import run_suite

    results = run_suite(args.suite)
    lines = []
    for c in results:
        lines.append(f"{'PASS' if c.ok else 'FAIL'}  {c.name}")
        if not c.ok and c.detail:
            lines.append(f"      counterexample: {c.detail}")
    _emit(args, "\n".join(lines) + "\n")
    return 0 if all(c.ok for c in results) else 1


COMMANDS = {
    "trips": (cmd_trips, "list or count the trips of the 2^N-ions"),
    "mul": (cmd_mul, "multiply two hypercomplex numbers, e.g. 'e10+e3' 'e12-e5'"),
    "assessors": (cmd_assessors, "list assessors (ZD-carrying index pairs)"),
    "boxkite": (cmd_boxkite, "box-kites for one strut constant (or all)"),
    "et": (cmd_et, "emanation table as CSV, JSON, PGM or census"),
    "flipbook": (cmd_flipbook, "render one PGM per strut constant"),
    "brocade": (cmd_brocade, "the 7-in-1 brocade table"),
    "twist": (cmd_twist, "twist one edge, or a Royal Hunt for a strut"),
    "explode": (cmd_explode, "explode one sail into a hidden box-kite"),
    "spandrel": (cmd_spandrel, "all four explosions of one box-kite"),
    "egg": (cmd_egg, "find and verify octonion eggs in a spandrel"),
    "fano": (cmd_fano, "oriented Fano presentation of a box-kite"),
    "verify": (cmd_verify, "run verification suites"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="zdkit", description="Box-kites, brocades and eggs in Cayley-Dickson algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--n", type=int, default=4, help="dimension exponent (2^N-ions), default 4")
        p.add_argument("--out", help="write output to this path")
        if name == "flipbook":
            p.add_argument("--s", help="strut constants, e.g. 8..15 or 9,10")
        elif name not in ("trips", "mul", "brocade", "verify"):
            p.add_argument("--s", type=int, help="strut constant")
        if name in ("trips", "assessors", "boxkite"):
            p.add_argument("--count", action="store_true", help="print only the count")
        if name in ("trips", "assessors", "boxkite", "brocade"):
            p.add_argument("--format", choices=("csv", "json"), default="csv" if name != "boxkite" else "json")
        if name == "et":
            p.add_argument("--format", choices=("csv", "json", "pgm"), default="csv")
            p.add_argument("--census", action="store_true", help="print filled/empty counts")
        if name == "spandrel":
            p.add_argument("--format", choices=("text", "json"), default="text")
        if name == "fano":
            p.add_argument("--format", choices=("json", "dot"), default="json")
            p.add_argument("--member", choices=SAIL_NAMES, help="present this sail's exploded kite")
        if name in ("boxkite", "twist", "explode", "spandrel", "egg", "fano"):
            p.add_argument("--zigzag", help="zigzag L-trip, e.g. 3,6,5")
            p.add_argument("--index", type=int, default=0, help="which kite for --s when no zigzag is given")
            p.add_argument("--hidden", action="store_true", help="include hidden kites when picking by --index")
        if name in ("explode", "egg", "fano"):
            p.add_argument("--sail", choices=SAIL_NAMES)
        if name == "twist":
            p.add_argument("--edge", help="edge letters, e.g. AB")
            p.add_argument("--strut", help="strut for a Royal Hunt (AF, BE or CD)")
        if name == "mul":
            p.add_argument("x")
            p.add_argument("y")
            p.add_argument("--oracle", action="store_true", help="use the recursive doubling formula")
        if name == "verify":
            p.add_argument("--suite", choices=("all", "tables", "cowbird", "fano", "et"), default="all")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ZDKitError, ValueError, KeyError) as exc:
        print(f"zdkit {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

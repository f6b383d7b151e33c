"""Command line interface: ``akc analyze | example | check | examples``.

Exit status is 0 on success, 1 when the input produced a diagnostic and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog
from .errors import AkcError
from .dsl import elaborate, parse
from .cealgebra import validate
from .report import build_report, instances_dict, report_dict, to_json, to_text

_RAT = re.compile(r"^-?\d+(/\d+)?$")


class _UsageError(Exception):
    pass


def _param(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name or not _RAT.match(value.strip()):
        raise argparse.ArgumentTypeError(f"expected NAME=RAT (e.g. alpha=5/2), got {text!r}")
    value = Fraction(value.strip())
    return name.strip(), value


def _grid(pairs) -> list[dict]:
    """Cartesian product over repeated names, in command-line order."""
    values: dict[str, list] = {}
    for name, v in pairs or []:
        values.setdefault(name, []).append(v)
    if not values:
        return [{}]
    names = list(values)
    return [dict(zip(names, combo)) for combo in itertools.product(*(values[n] for n in names))]


def _color(stream) -> bool:
    flag = os.environ.get("AKC_COLOR")
    if flag is not None:
        return flag.strip() == "1"
    return hasattr(stream, "isatty") and stream.isatty()


def _emit(dicts: list[dict], as_json: bool, out) -> None:
    if as_json:
        out.write(to_json(dicts[0] if len(dicts) == 1 else instances_dict(dicts)))
        return
    color = _color(out)
    for d in dicts:
        out.write(to_text(d, color))
    if len(dicts) > 1:
        agree = instances_dict(dicts)["dimensions_agree"]
        out.write(f"dimensions agree across instances: {'yes' if agree else 'no'}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise AkcError(f"cannot read {path}: {exc.strerror}") from None


def _cmd_analyze(args, out) -> int:
    doc = parse(_read(args.file))
    dicts = []
    for params in _grid(args.param):
        el = elaborate(doc, params)
        dicts.append(report_dict(build_report(el, catalog.structures_from(el), args.degree)))
    _emit(dicts, args.json, out)
    return 0


def _cmd_example(args, out) -> int:
    if args.name not in catalog.names():
        raise _UsageError(f"unknown example {args.name!r}; run 'akc examples' for the list")
    dicts = []
    for params in _grid(args.param):
        entry = catalog.load(args.name, params)
        dicts.append(report_dict(build_report(entry.elaborated, entry.structures, args.degree)))
    _emit(dicts, args.json, out)
    return 0


def _cmd_check(args, out) -> int:
    doc = parse(_read(args.file))
    for params in _grid(args.param):
        el = elaborate(doc, params)
        flags = validate(el.algebra)
        parts = [f"{doc.name}: ok", f"dim {doc.dim}"]
        parts.append("nilpotent" if flags.nilpotent else "solvable" if flags.solvable else "not solvable")
        if el.J is not None:
            parts.append("J")
        if el.omega is not None:
            parts.append("omega")
        if el.metric is not None:
            parts.append("metric")
        if params:
            parts.append(", ".join(f"{k}={v}" for k, v in params.items()))
        out.write("  ".join(parts) + "\n")
    return 0


def _cmd_examples(args, out) -> int:
    for name in catalog.names():
        out.write(f"{name:<15} {catalog.describe(name)}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="akc", description="Exact cohomology of Lie algebras with almost-Kaehler data.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, degree=True):
        sp.add_argument("--param", action="append", type=_param, metavar="NAME=RAT",
                        help="set a document parameter; repeat a name to evaluate several values")
        if degree:
            sp.add_argument("--degree", type=int, metavar="K", help="also decide purity/fullness in degree K")
            sp.add_argument("--json", action="store_true", help="emit JSON instead of text")

    a = sub.add_parser("analyze", help="analyze a .lie file")
    a.add_argument("file")
    common(a)
    a.set_defaults(func=_cmd_analyze)
    e = sub.add_parser("example", help="analyze a built-in example")
    e.add_argument("name")
    common(e)
    e.set_defaults(func=_cmd_example)
    c = sub.add_parser("check", help="parse and validate a .lie file")
    c.add_argument("file")
    common(c, degree=False)
    c.set_defaults(func=_cmd_check)
    x = sub.add_parser("examples", help="list the built-in examples")
    x.set_defaults(func=_cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "degree", None) is not None and args.degree < 0:
        parser.print_usage(sys.stderr)
        sys.stderr.write("akc: error: --degree must be non-negative\n")
        return 2
    try:
        return args.func(args, sys.stdout)
    except _UsageError as exc:
        sys.stderr.write(f"akc: error: {exc}\n")
        return 2
    except AkcError as exc:
        where = getattr(args, "file", None) or getattr(args, "name", "")
        sys.stderr.write(f"{where}:{exc}\n" if getattr(exc, "line", None) is not None else f"{where}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

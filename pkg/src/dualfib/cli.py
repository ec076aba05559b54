"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a check fails (a report is
printed), 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .category import FinCategory, FunctorData, validate_category, validate_functor
from .dot import DotOptions, export_dot
from .dual import build_dual, double_dual
from .errors import CategoryError
from .fibration import FibSetup, fibre, is_fibration
from .generators import fibration_gallery, indexed_gallery
from .indexed import IndexedCat, check_dual_agreement, grothendieck, validate_indexed
from .search import find_isomorphism
from .textformat import DocumentError, dump, format_document, load

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class Reporter:
    def __init__(self, command: str, fmt: str):
        self.command, self.fmt = command, fmt
        self.ok = True
        self.lines: list[str] = []
        self.data: dict = {}

    def fail(self, message: str) -> None:
        self.ok = False
        self.lines.append(f"FAIL {message}")

    def info(self, message: str) -> None:
        self.lines.append(message)

    def finish(self, out=None) -> int:
        out = out or sys.stdout
        if self.fmt == "json":
            json.dump({"command": self.command, "ok": self.ok, "messages": self.lines,
                       **self.data}, out, indent=2, sort_keys=True)
            out.write("\n")
        else:
            for line in self.lines:
                print(line, file=out)
            print("ok" if self.ok else "failed", file=out)
        return EXIT_OK if self.ok else EXIT_FAIL


def _load(path: str, *kinds: str):
    try:
        doc = load(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except DocumentError as e:
        raise InputError(f"{path}: {e}") from None
    if kinds and doc.kind not in kinds:
        raise InputError(f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc.value


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_validate(args, rep: Reporter) -> None:
    try:
        value = load(args.file).value
    except DocumentError as e:
        if not getattr(e, "report", None):
            raise InputError(f"{args.file}: {e}") from None
        value = None
        report = e.report
    except OSError as e:
        raise InputError(f"{args.file}: {e.strerror}") from None
    if isinstance(value, FinCategory):
        report = validate_category(value)
    elif isinstance(value, FunctorData):
        report = validate_category(value.dom) + validate_category(value.cod) + validate_functor(value)
    elif isinstance(value, IndexedCat):
        report = validate_indexed(value)
    elif value is not None:
        report = []  # a FibSetup that loaded is valid
    for v in report:
        rep.fail(str(v))
    rep.data["violations"] = [str(v) for v in report]


def cmd_check_fibration(args, rep: Reporter) -> None:
    s = _load(args.file, "fibration")
    res = is_fibration(s)
    if res is not True:
        rep.fail(res.message)
        rep.data["witness"] = {"alpha": s.base.arr_names[res.alpha], "object": s.total.obj_names[res.y]}
    else:
        rep.info(f"fibration: {len(s.total.arr_names)} arrows over {len(s.base.arr_names)}")


def _object_id(s: FibSetup, name: str) -> int:
    try:
        return s.base.obj_names.index(name)
    except ValueError:
        raise InputError(f"unknown base object {name!r}") from None


def cmd_fibre(args, rep: Reporter) -> None:
    s = _load(args.file, "fibration")
    fb = fibre(s, _object_id(s, args.object))
    _write(format_document(fb.category), args.output)
    rep.fmt = "silent"


def cmd_dualize(args, rep: Reporter) -> None:
    s = _load(args.file, "fibration")
    d = build_dual(s)
    _write(format_document(d), args.output)
    rep.fmt = "silent"


def cmd_double_dual(args, rep: Reporter) -> None:
    s = _load(args.file, "fibration")
    dd = double_dual(s)
    n = len(s.total.arr_names)
    rep.info(f"X has {n} arrows, X* has {len(dd.first.dual_total.arr_names)}, "
             f"X** has {len(dd.second.dual_total.arr_names)}")
    rep.info("y: X -> X** is a functor, bijective, and commutes with the projections")
    rep.data["arrows"] = n


def cmd_grothendieck(args, rep: Reporter) -> None:
    F = _load(args.file, "indexed")
    _write(format_document(grothendieck(F)), args.output)
    rep.fmt = "silent"


def cmd_dual_agreement(args, rep: Reporter) -> None:
    F = _load(args.file, "indexed")
    iso = check_dual_agreement(F)
    rep.info(f"totalized pointwise dual is isomorphic over the base to the dual "
             f"({len(iso.forward.dom.arr_names)} arrows)")


def cmd_export_dot(args, rep: Reporter) -> None:
    s = _load(args.file, "fibration")
    value = build_dual(s) if args.dual else s
    title = Path(args.file).stem + ("-dual" if args.dual else "")
    _write(export_dot(value, DotOptions(include_identities=not args.no_identities, title=title)),
           args.output)
    rep.fmt = "silent"


def cmd_iso_check(args, rep: Reporter) -> None:
    a = _load(args.first, "category", "fibration")
    b = _load(args.second, "category", "fibration")
    if isinstance(a, FibSetup) != isinstance(b, FibSetup):
        raise InputError("both documents must be of the same kind")
    if isinstance(a, FibSetup):
        if a.base.table != b.base.table or a.base.src != b.base.src or a.base.tgt != b.base.tgt:
            rep.fail("the fibrations have different base categories")
            return
        found = find_isomorphism(a.total, b.total, a.proj, b.proj)
        what = "isomorphism over the base"
    else:
        found = find_isomorphism(a, b)
        what = "isomorphism"
    if found is None:
        rep.fail(f"no {what} found")
    else:
        rep.info(f"found {what}")
        rep.data["arrow_map"] = {a_name: found.cod.arr_names[g] for a_name, g in
                                 zip(found.dom.arr_names, found.arr_map)}


def cmd_gallery(args, rep: Reporter) -> None:
    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, s in fibration_gallery().items():
        dump(s, out / f"{name}.fib")
    for name, F in indexed_gallery().items():
        dump(F, out / f"{name}.idx")
    rep.info(f"wrote gallery to {out}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualfib", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="report format")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check category/functor/indexed axioms").add_argument("file")
    add("check-fibration", cmd_check_fibration, "decide whether proj is a fibration").add_argument("file")
    p = add("fibre", cmd_fibre, "print the fibre over a base object")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    p.add_argument("-o", "--output")
    p = add("dualize", cmd_dualize, "print the dual fibration")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    add("double-dual", cmd_double_dual, "build X** and verify the comparison y").add_argument("file")
    p = add("grothendieck", cmd_grothendieck, "totalize an indexed category")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    add("dual-agreement", cmd_dual_agreement,
        "compare the totalized pointwise dual with the dual fibration").add_argument("file")
    p = add("export-dot", cmd_export_dot, "render a fibration as Graphviz DOT")
    p.add_argument("file")
    p.add_argument("--dual", action="store_true", help="render the dual fibration instead")
    p.add_argument("--no-identities", action="store_true")
    p.add_argument("-o", "--output")
    p = add("iso-check", cmd_iso_check, "search for an isomorphism between two documents")
    p.add_argument("first")
    p.add_argument("second")
    add("gallery", cmd_gallery, "write the generated example gallery").add_argument("directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Reporter(args.command, args.format)
    try:
        args.func(args, rep)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CategoryError as e:
        rep.fmt = args.format
        rep.fail(str(e))
    if rep.fmt == "silent":
        return EXIT_OK
    return rep.finish()


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

"""Line-oriented text format for categories, functors, fibrations and indexed categories.

A document starts with a header line ``dualfib 1 <kind>`` where kind is one of
``category``, ``functor``, ``fibration``, ``indexed``.  It then holds blocks::

    category <name>
      object <obj>
      arrow <arr> : <obj> -> <obj>
      identity <obj> = <arr>
      compose <arr> <arr> = <arr>     # diagrammatic: first then second
    end

    functor <name> : <category> -> <category>
      object <obj> => <obj>
      arrow <arr> => <arr>
    end

and, for indexed documents, binding lines ``base <category>``,
``fibre <obj> = <category>`` and ``reindex <arr> = <functor>``.  Blank lines
and lines starting with ``#`` are ignored.  Names are any whitespace-free
tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .category import FinCategory, FunctorData
from .dual import DualFib
from .errors import CategoryError, InvalidSetup
from .fibration import FibSetup
from .indexed import IndexedCat

FORMAT_VERSION = 1
KINDS = ("category", "functor", "fibration", "indexed")

Value = Union[FinCategory, FunctorData, FibSetup, IndexedCat]


class DocumentError(CategoryError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column, self.message = line, column, message
        where = f"line {line}" + (f", column {column}" if column else "") + ": " if line else ""
        super().__init__(where + message)


class ParseError(DocumentError):
    """Malformed syntax."""


class SemanticError(DocumentError):
    """Well-formed text describing invalid data (dangling ids and the like)."""


@dataclass(frozen=True)
class CatDocument:
    kind: str
    value: Value


class _Tok(str):
    col: int


def _tokens(line: str) -> list[_Tok]:
    out = []
    for m in re.finditer(r"\S+", line):
        t = _Tok(m.group())
        t.col = m.start() + 1
        out.append(t)
    return out


def _expect(toks: list[_Tok], shape: str, lineno: int) -> list[_Tok]:
    # shape like "arrow _ : _ -> _"; "_" marks a name slot
    want = shape.split()
    if len(toks) != len(want):
        col = toks[len(want)].col if len(toks) > len(want) else None
        raise ParseError(f"expected '{shape}'", lineno, col)
    names = []
    for t, w in zip(toks, want):
        if w == "_":
            names.append(t)
        elif t != w:
            raise ParseError(f"expected {w!r}, found {str(t)!r}", lineno, t.col)
    return names


class _CatBuilder:
    def __init__(self, name: str, lineno: int):
        self.name, self.lineno = name, lineno
        self.objects: dict[str, int] = {}
        self.arrows: dict[str, tuple[int, int, int, int]] = {}  # name -> (id, src, tgt, line)
        self.identity: dict[int, int] = {}
        self.table: dict[tuple[int, int], int] = {}

    def line(self, toks: list[_Tok], lineno: int) -> None:
        kw = toks[0]
        if kw == "object":
            (o,) = _expect(toks, "object _", lineno)
            if o in self.objects:
                raise SemanticError(f"duplicate object {o!r}", lineno, o.col)
            self.objects[str(o)] = len(self.objects)
        elif kw == "arrow":
            f, a, b = _expect(toks, "arrow _ : _ -> _", lineno)
            if f in self.arrows:
                raise SemanticError(f"duplicate arrow {f!r}", lineno, f.col)
            self.arrows[str(f)] = (len(self.arrows), self._obj(a, lineno), self._obj(b, lineno), lineno)
        elif kw == "identity":
            o, f = _expect(toks, "identity _ = _", lineno)
            oi, fi = self._obj(o, lineno), self._arr(f, lineno)
            if oi in self.identity:
                raise SemanticError(f"second identity for {o!r}", lineno, o.col)
            self.identity[oi] = fi
        elif kw == "compose":
            f, g, h = _expect(toks, "compose _ _ = _", lineno)
            fi, gi, hi = (self._arr(x, lineno) for x in (f, g, h))
            if self.arrows[f][2] != self.arrows[g][1]:
                raise SemanticError(f"compose entry for non-composable pair ({f}, {g})",
                                    lineno, f.col)
            if (fi, gi) in self.table:
                raise SemanticError(f"second compose entry for ({f}, {g})", lineno, f.col)
            self.table[fi, gi] = hi
        else:
            raise ParseError(f"unknown category entry {str(kw)!r}", lineno, kw.col)

    def _obj(self, t: _Tok, lineno: int) -> int:
        if t not in self.objects:
            raise SemanticError(f"unknown object {str(t)!r} in category {self.name!r}", lineno, t.col)
        return self.objects[t]

    def _arr(self, t: _Tok, lineno: int) -> int:
        if t not in self.arrows:
            raise SemanticError(f"unknown arrow {str(t)!r} in category {self.name!r}", lineno, t.col)
        return self.arrows[t][0]

    def build(self, end_line: int) -> FinCategory:
        missing = [o for o, i in self.objects.items() if i not in self.identity]
        if missing:
            raise SemanticError(f"object {missing[0]!r} has no identity in category {self.name!r}",
                                end_line)
        arrs = sorted(self.arrows.items(), key=lambda kv: kv[1][0])
        return FinCategory(
            tuple(self.objects),
            tuple(name for name, _ in arrs),
            tuple(s for _, (_, s, _, _) in arrs),
            tuple(t for _, (_, _, t, _) in arrs),
            tuple(self.identity[i] for i in range(len(self.objects))),
            self.table,
        )


class _FunctorBuilder:
    def __init__(self, name: str, dom: FinCategory, cod: FinCategory, lineno: int):
        self.name, self.dom, self.cod, self.lineno = name, dom, cod, lineno
        self.obj: dict[int, int] = {}
        self.arr: dict[int, int] = {}

    def line(self, toks: list[_Tok], lineno: int) -> None:
        kw = toks[0]
        if kw == "object":
            a, b = _expect(toks, "object _ => _", lineno)
            ai = _lookup(self.dom.obj_names, a, "object", lineno)
            if ai in self.obj:
                raise SemanticError(f"object {a!r} mapped twice", lineno, a.col)
            self.obj[ai] = _lookup(self.cod.obj_names, b, "object", lineno)
        elif kw == "arrow":
            f, g = _expect(toks, "arrow _ => _", lineno)
            fi = _lookup(self.dom.arr_names, f, "arrow", lineno)
            if fi in self.arr:
                raise SemanticError(f"arrow {f!r} mapped twice", lineno, f.col)
            self.arr[fi] = _lookup(self.cod.arr_names, g, "arrow", lineno)
        else:
            raise ParseError(f"unknown functor entry {str(kw)!r}", lineno, kw.col)

    def build(self, end_line: int) -> FunctorData:
        for table, n, what, names in ((self.obj, len(self.dom.obj_names), "object", self.dom.obj_names),
                                      (self.arr, len(self.dom.arr_names), "arrow", self.dom.arr_names)):
            for i in range(n):
                if i not in table:
                    raise SemanticError(f"functor {self.name!r} does not map {what} {names[i]!r}",
                                        end_line)
        return FunctorData(self.dom, self.cod,
                           tuple(self.obj[i] for i in range(len(self.dom.obj_names))),
                           tuple(self.arr[i] for i in range(len(self.dom.arr_names))))


def _lookup(names: tuple[str, ...], t: _Tok, what: str, lineno: int) -> int:
    try:
        return names.index(t)
    except ValueError:
        raise SemanticError(f"unknown {what} {str(t)!r}", lineno, t.col) from None


def parse_document(text: str) -> CatDocument:
    lines = text.splitlines()
    header = None
    cats: dict[str, FinCategory] = {}
    funcs: dict[str, FunctorData] = {}
    cat_lines: dict[str, int] = {}
    bindings: list[tuple[list[_Tok], int]] = []
    block = None
    for lineno, raw in enumerate(lines, 1):
        toks = _tokens(raw)
        if not toks or toks[0].startswith("#"):
            continue
        if header is None:
            if len(toks) != 3 or toks[0] != "dualfib":
                raise ParseError("expected header 'dualfib <version> <kind>'", lineno, toks[0].col)
            if toks[1] != str(FORMAT_VERSION):
                raise ParseError(f"unsupported format version {str(toks[1])!r}", lineno, toks[1].col)
            if toks[2] not in KINDS:
                raise ParseError(f"unknown document kind {str(toks[2])!r}", lineno, toks[2].col)
            header = str(toks[2])
            continue
        if block is not None:
            if toks[0] == "end":
                _expect(toks, "end", lineno)
                try:
                    value = block.build(lineno)
                except DocumentError:
                    raise
                except CategoryError as e:
                    raise SemanticError(str(e), lineno) from None
                if isinstance(block, _CatBuilder):
                    cats[block.name] = value
                else:
                    funcs[block.name] = value
                block = None
            else:
                block.line(toks, lineno)
            continue
        kw = toks[0]
        if kw == "category":
            (name,) = _expect(toks, "category _", lineno)
            if name in cats or name in funcs:
                raise SemanticError(f"duplicate block name {name!r}", lineno, name.col)
            block = _CatBuilder(str(name), lineno)
            cat_lines[str(name)] = lineno
        elif kw == "functor":
            name, a, b = _expect(toks, "functor _ : _ -> _", lineno)
            if name in cats or name in funcs:
                raise SemanticError(f"duplicate block name {name!r}", lineno, name.col)
            for t in (a, b):
                if t not in cats:
                    raise SemanticError(f"unknown category {str(t)!r}", lineno, t.col)
            block = _FunctorBuilder(str(name), cats[a], cats[b], lineno)
        elif kw in ("base", "fibre", "reindex"):
            bindings.append((toks, lineno))
        else:
            raise ParseError(f"unexpected {str(kw)!r}", lineno, kw.col)
    if header is None:
        raise ParseError("empty document", 1)
    if block is not None:
        raise ParseError(f"block {block.name!r} is not closed with 'end'", block.lineno)
    end = len(lines)
    if header != "indexed" and bindings:
        toks, lineno = bindings[0]
        raise ParseError(f"{str(toks[0])!r} lines only belong in indexed documents", lineno, 1)

    try:
        value = _assemble(header, cats, funcs, bindings, end)
    except DocumentError:
        raise
    except CategoryError as e:
        raise SemanticError(str(e)) from None
    return CatDocument(header, value)


def _assemble(kind, cats, funcs, bindings, end):
    if kind == "category":
        if len(cats) != 1 or funcs:
            raise SemanticError("a category document holds exactly one category block", end)
        return next(iter(cats.values()))
    if kind in ("functor", "fibration"):
        if len(funcs) != 1:
            raise SemanticError(f"a {kind} document holds exactly one functor block", end)
        F = next(iter(funcs.values()))
        used = {id(F.dom), id(F.cod)}
        if any(id(c) not in used for c in cats.values()):
            raise SemanticError("category block not used by the functor", end)
        if kind == "functor":
            return F
        try:
            return FibSetup(F.dom, F.cod, F)
        except InvalidSetup as e:
            err = SemanticError(str(e), end)
            err.report = e.report
            raise err from None
    # indexed
    base = None
    fib: dict[int, FinCategory] = {}
    rei: dict[int, FunctorData] = {}
    for toks, lineno in bindings:
        if toks[0] == "base":
            (name,) = _expect(toks, "base _", lineno)
            if base is not None:
                raise SemanticError("second base line", lineno, 1)
            if name not in cats:
                raise SemanticError(f"unknown category {str(name)!r}", lineno, name.col)
            base = cats[name]
    if base is None:
        raise SemanticError("indexed document needs a 'base' line", end)
    for toks, lineno in bindings:
        if toks[0] == "fibre":
            o, name = _expect(toks, "fibre _ = _", lineno)
            oi = _lookup(base.obj_names, o, "base object", lineno)
            if oi in fib:
                raise SemanticError(f"second fibre for {str(o)!r}", lineno, o.col)
            if name not in cats:
                raise SemanticError(f"unknown category {str(name)!r}", lineno, name.col)
            fib[oi] = cats[name]
        elif toks[0] == "reindex":
            f, name = _expect(toks, "reindex _ = _", lineno)
            fi = _lookup(base.arr_names, f, "base arrow", lineno)
            if fi in rei:
                raise SemanticError(f"second reindexing for {str(f)!r}", lineno, f.col)
            if name not in funcs:
                raise SemanticError(f"unknown functor {str(name)!r}", lineno, name.col)
            rei[fi] = funcs[name]
    for i, o in enumerate(base.obj_names):
        if i not in fib:
            raise SemanticError(f"no fibre for base object {o!r}", end)
    for i, f in enumerate(base.arr_names):
        if i not in rei:
            raise SemanticError(f"no reindexing for base arrow {f!r}", end)
    return IndexedCat(base, tuple(fib[i] for i in base.objects),
                      tuple(rei[i] for i in base.arrows))


# printing

def _check_name(name: str) -> str:
    if not name or any(ch.isspace() for ch in name):
        raise CategoryError(f"name {name!r} cannot be written: empty or contains whitespace")
    return name


def _category_lines(c: FinCategory, name: str) -> list[str]:
    out = [f"category {name}"]
    out += [f"  object {_check_name(o)}" for o in c.obj_names]
    out += [f"  arrow {_check_name(c.arr_names[f])} : {c.obj_names[c.src[f]]} -> "
            f"{c.obj_names[c.tgt[f]]}" for f in c.arrows]
    out += [f"  identity {c.obj_names[a]} = {c.arr_names[c.identity[a]]}" for a in c.objects]
    out += [f"  compose {c.arr_names[f]} {c.arr_names[g]} = {c.arr_names[h]}"
            for (f, g), h in sorted(c.table.items())]
    out.append("end")
    return out


def _functor_lines(F: FunctorData, name: str, dom: str, cod: str) -> list[str]:
    out = [f"functor {name} : {dom} -> {cod}"]
    out += [f"  object {F.dom.obj_names[a]} => {F.cod.obj_names[F.obj_map[a]]}"
            for a in F.dom.objects]
    out += [f"  arrow {F.dom.arr_names[f]} => {F.cod.arr_names[F.arr_map[f]]}"
            for f in F.dom.arrows]
    out.append("end")
    return out


def format_document(value) -> str:
    """Canonical text for ``value``; ``parse_document`` inverts it exactly."""
    if isinstance(value, CatDocument):
        value = value.value
    if isinstance(value, DualFib):
        value = value.setup
    if isinstance(value, FinCategory):
        lines = ["dualfib 1 category"] + _category_lines(value, "C")
    elif isinstance(value, FibSetup):
        lines = (["dualfib 1 fibration"] + _category_lines(value.total, "total")
                 + _category_lines(value.base, "base")
                 + _functor_lines(value.proj, "proj", "total", "base"))
    elif isinstance(value, FunctorData):
        lines = (["dualfib 1 functor"] + _category_lines(value.dom, "dom")
                 + _category_lines(value.cod, "cod")
                 + _functor_lines(value, "F", "dom", "cod"))
    elif isinstance(value, IndexedCat):
        B = value.base
        lines = ["dualfib 1 indexed"] + _category_lines(B, "base")
        for a in B.objects:
            lines += _category_lines(value.fibres[a], f"fibre.{_check_name(B.obj_names[a])}")
        for f in B.arrows:
            dom = "fibre." + B.obj_names[B.tgt[f]]
            cod = "fibre." + B.obj_names[B.src[f]]
            lines += _functor_lines(value.reindex[f], f"reindex.{_check_name(B.arr_names[f])}",
                                    dom, cod)
        lines.append("base base")
        lines += [f"fibre {B.obj_names[a]} = fibre.{B.obj_names[a]}" for a in B.objects]
        lines += [f"reindex {B.arr_names[f]} = reindex.{B.arr_names[f]}" for f in B.arrows]
    else:
        raise TypeError(f"cannot format {type(value).__name__}")
    return "\n".join(lines) + "\n"


def load(path) -> CatDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def dump(value, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_document(value))

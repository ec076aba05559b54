"""Finite categories given by explicit composition tables, and functors.

Composition is diagrammatic throughout: ``c.compose(f, g)`` is "f then g",
defined exactly when ``c.tgt[f] == c.src[g]``.  Objects and arrows are dense
integer ids ``0..n-1``; names are carried along for printing only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import CategoryError, NotComposable, UnknownId


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class ValidationReport(list):
    """A list of :class:`Violation`; empty means the structure is valid."""

    @property
    def ok(self) -> bool:
        return not self

    def add(self, kind: str, ids: tuple, message: str) -> None:
        self.append(Violation(kind, tuple(ids), message))

    def kinds(self) -> set[str]:
        return {v.kind for v in self}


@dataclass(frozen=True, eq=False)
class FinCategory:
    obj_names: tuple[str, ...]
    arr_names: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    table: Mapping[tuple[int, int], int] = field(repr=False)

    def __post_init__(self):
        n, m = len(self.obj_names), len(self.arr_names)
        if len(self.src) != m or len(self.tgt) != m:
            raise CategoryError("src/tgt must list one object per arrow")
        if len(self.identity) != n:
            raise CategoryError("identity must list one arrow per object")
        for seq, bound, what in ((self.src, n, "object"), (self.tgt, n, "object"),
                                 (self.identity, m, "arrow")):
            for x in seq:
                if not 0 <= x < bound:
                    raise UnknownId(f"{what} id {x} out of range")
        for (f, g), h in self.table.items():
            for x in (f, g, h):
                if not 0 <= x < m:
                    raise UnknownId(f"arrow id {x} in composition table out of range")
        for names, what in ((self.obj_names, "object"), (self.arr_names, "arrow")):
            if len(set(names)) != len(names):
                raise CategoryError(f"duplicate {what} names")
        object.__setattr__(self, "table", dict(self.table))

    @classmethod
    def build(cls, objects: Sequence[str], arrows: Sequence[tuple[str, str, str]],
              identity: Mapping[str, str], compose: Mapping[tuple[str, str], str]) -> FinCategory:
        """Construct from names: ``arrows`` holds ``(name, src, tgt)`` triples."""
        oid = {o: i for i, o in enumerate(objects)}
        aid = {a[0]: i for i, a in enumerate(arrows)}
        try:
            return cls(
                tuple(objects),
                tuple(a[0] for a in arrows),
                tuple(oid[a[1]] for a in arrows),
                tuple(oid[a[2]] for a in arrows),
                tuple(aid[identity[o]] for o in objects),
                {(aid[f], aid[g]): aid[h] for (f, g), h in compose.items()},
            )
        except KeyError as e:
            raise UnknownId(f"unknown name {e.args[0]!r}") from None

    # structure

    @property
    def objects(self) -> range:
        return range(len(self.obj_names))

    @property
    def arrows(self) -> range:
        return range(len(self.arr_names))

    def __len__(self) -> int:
        return len(self.arr_names)

    def check_object(self, a: int) -> None:
        if not (isinstance(a, int) and 0 <= a < len(self.obj_names)):
            raise UnknownId(f"unknown object id {a!r}")

    def check_arrow(self, f: int) -> None:
        if not (isinstance(f, int) and 0 <= f < len(self.arr_names)):
            raise UnknownId(f"unknown arrow id {f!r}")

    def composable(self, f: int, g: int) -> bool:
        return self.tgt[f] == self.src[g]

    def compose(self, f: int, g: int) -> int:
        """``f`` then ``g``."""
        try:
            return self.table[f, g]
        except KeyError:
            pass
        self.check_arrow(f)
        self.check_arrow(g)
        if not self.composable(f, g):
            raise NotComposable(f"{self.arr_names[f]} ; {self.arr_names[g]}: "
                                f"target of first is not source of second")
        raise CategoryError(f"missing composite {self.arr_names[f]} ; {self.arr_names[g]}")

    def compose_path(self, *arrows: int) -> int:
        out = arrows[0]
        for g in arrows[1:]:
            out = self.compose(out, g)
        return out

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for f in self.arrows:
            homs.setdefault((self.src[f], self.tgt[f]), []).append(f)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        """Arrows ``a -> b`` in id order."""
        return self._homs.get((a, b), ())

    @cached_property
    def _identity_set(self) -> frozenset[int]:
        return frozenset(self.identity)

    def is_identity(self, f: int) -> bool:
        return f in self._identity_set

    @cached_property
    def _key(self):
        return (self.obj_names, self.arr_names, self.src, self.tgt, self.identity,
                tuple(sorted(self.table.items())))

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self) -> str:
        return f"FinCategory({len(self.obj_names)} objects, {len(self.arr_names)} arrows)"


@dataclass(frozen=True, eq=False)
class FunctorData:
    dom: FinCategory
    cod: FinCategory
    obj_map: tuple[int, ...]
    arr_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.obj_map) != len(self.dom.obj_names):
            raise CategoryError("obj_map must have one entry per domain object")
        if len(self.arr_map) != len(self.dom.arr_names):
            raise CategoryError("arr_map must have one entry per domain arrow")
        for a in self.obj_map:
            self.cod.check_object(a)
        for f in self.arr_map:
            self.cod.check_arrow(f)
        object.__setattr__(self, "obj_map", tuple(self.obj_map))
        object.__setattr__(self, "arr_map", tuple(self.arr_map))

    def obj(self, a: int) -> int:
        return self.obj_map[a]

    def __call__(self, f: int) -> int:
        return self.arr_map[f]

    def __eq__(self, other):
        if not isinstance(other, FunctorData):
            return NotImplemented
        return (self.obj_map == other.obj_map and self.arr_map == other.arr_map
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        return hash((self.obj_map, self.arr_map))

    def __repr__(self) -> str:
        return f"FunctorData({self.dom!r} -> {self.cod!r})"


def identity_functor(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, tuple(c.objects), tuple(c.arrows))


def compose_functors(f: FunctorData, g: FunctorData) -> FunctorData:
    """``f`` then ``g``."""
    if f.cod != g.dom:
        raise NotComposable("codomain of first functor is not domain of second")
    return FunctorData(f.dom, g.cod,
                       tuple(g.obj_map[a] for a in f.obj_map),
                       tuple(g.arr_map[x] for x in f.arr_map))


def validate_category(c: FinCategory) -> ValidationReport:
    report = ValidationReport()
    for a in c.objects:
        i = c.identity[a]
        if c.src[i] != a or c.tgt[i] != a:
            report.add("identity-endpoints", (a, i),
                       f"identity {c.arr_names[i]} of {c.obj_names[a]} is not an endo-arrow on it")
    for (f, g), h in sorted(c.table.items()):
        if not c.composable(f, g):
            report.add("composability-domain", (f, g),
                       f"composite given for non-composable pair "
                       f"({c.arr_names[f]}, {c.arr_names[g]})")
        elif c.src[h] != c.src[f] or c.tgt[h] != c.tgt[g]:
            report.add("composite-endpoints", (f, g, h),
                       f"{c.arr_names[f]} ; {c.arr_names[g]} = {c.arr_names[h]} has wrong endpoints")
    for f in c.arrows:
        for g in c.arrows:
            if c.composable(f, g) and (f, g) not in c.table:
                report.add("missing-composite", (f, g),
                           f"missing composite ({c.arr_names[f]}, {c.arr_names[g]})")
    for f in c.arrows:
        i, j = c.identity[c.src[f]], c.identity[c.tgt[f]]
        if c.table.get((i, f), f) != f:
            report.add("left-unit", (i, f), f"{c.arr_names[i]} ; {c.arr_names[f]} != {c.arr_names[f]}")
        if c.table.get((f, j), f) != f:
            report.add("right-unit", (f, j), f"{c.arr_names[f]} ; {c.arr_names[j]} != {c.arr_names[f]}")
    # associativity over a partial table is only checked where both sides exist
    t = c.table
    for (f, g), fg in t.items():
        if not c.composable(f, g):
            continue
        for h in c.arrows:
            if c.src[h] != c.tgt[g]:
                continue
            gh = t.get((g, h))
            left = t.get((fg, h))
            right = t.get((f, gh)) if gh is not None else None
            if left is not None and right is not None and left != right:
                report.add("associativity", (f, g, h),
                           f"({c.arr_names[f]} ; {c.arr_names[g]}) ; {c.arr_names[h]} != "
                           f"{c.arr_names[f]} ; ({c.arr_names[g]} ; {c.arr_names[h]})")
    report.sort(key=lambda v: (v.kind, v.ids))
    return report


def validate_functor(F: FunctorData) -> ValidationReport:
    report = ValidationReport()
    dom, cod = F.dom, F.cod
    for f in dom.arrows:
        g = F.arr_map[f]
        if cod.src[g] != F.obj_map[dom.src[f]] or cod.tgt[g] != F.obj_map[dom.tgt[f]]:
            report.add("endpoints", (f,), f"image of {dom.arr_names[f]} has wrong endpoints")
    for a in dom.objects:
        if F.arr_map[dom.identity[a]] != cod.identity[F.obj_map[a]]:
            report.add("identity", (a,),
                       f"identity of {dom.obj_names[a]} not sent to an identity")
    for (f, g), h in sorted(dom.table.items()):
        if not dom.composable(f, g):
            continue
        Ff, Fg = F.arr_map[f], F.arr_map[g]
        if cod.table.get((Ff, Fg)) != F.arr_map[h]:
            report.add("composition", (f, g),
                       f"F({dom.arr_names[f]} ; {dom.arr_names[g]}) != F({dom.arr_names[f]}) ; "
                       f"F({dom.arr_names[g]})")
    return report


def hom_set(c: FinCategory, a: int, b: int) -> frozenset[int]:
    c.check_object(a)
    c.check_object(b)
    return frozenset(c.hom(a, b))


def opposite(c: FinCategory) -> FinCategory:
    return FinCategory(c.obj_names, c.arr_names, c.tgt, c.src, c.identity,
                       {(g, f): h for (f, g), h in c.table.items()})


def inverse(c: FinCategory, f: int) -> int | None:
    """The two-sided inverse of ``f``, or ``None``."""
    c.check_arrow(f)
    a, b = c.src[f], c.tgt[f]
    for g in c.hom(b, a):
        if c.table.get((f, g)) == c.identity[a] and c.table.get((g, f)) == c.identity[b]:
            return g
    return None


def is_isomorphism(c: FinCategory, f: int) -> bool:
    return inverse(c, f) is not None


def subcategory(c: FinCategory, objects: Iterable[int], arrows: Iterable[int]):
    """Full table restriction to the given ids; returns ``(sub, inclusion)``.

    The arrow set must contain the identities of ``objects`` and be closed
    under composition.
    """
    objs = sorted(set(objects))
    arrs = sorted(set(arrows))
    onew = {a: i for i, a in enumerate(objs)}
    anew = {f: i for i, f in enumerate(arrs)}
    table = {}
    for f in arrs:
        for g in arrs:
            if c.composable(f, g):
                h = c.compose(f, g)
                if h not in anew:
                    raise CategoryError(f"arrow set not closed: {c.arr_names[h]}")
                table[anew[f], anew[g]] = anew[h]
    sub = FinCategory(
        tuple(c.obj_names[a] for a in objs),
        tuple(c.arr_names[f] for f in arrs),
        tuple(onew[c.src[f]] for f in arrs),
        tuple(onew[c.tgt[f]] for f in arrs),
        tuple(anew[c.identity[a]] for a in objs),
        table,
    )
    return sub, FunctorData(sub, c, tuple(objs), tuple(arrs))


def terminal_category(name: str = "*") -> FinCategory:
    return FinCategory((name,), (f"id_{name}",), (0,), (0,), (0,), {(0, 0): 0})


def interval_category(a: str = "A", b: str = "B", arrow: str = "alpha") -> FinCategory:
    """The walking arrow ``a -> b``."""
    return FinCategory.build(
        [a, b],
        [(f"id_{a}", a, a), (f"id_{b}", b, b), (arrow, a, b)],
        {a: f"id_{a}", b: f"id_{b}"},
        {(f"id_{a}", f"id_{a}"): f"id_{a}", (f"id_{b}", f"id_{b}"): f"id_{b}",
         (f"id_{a}", arrow): arrow, (arrow, f"id_{b}"): arrow},
    )


def discrete_category(names: Sequence[str]) -> FinCategory:
    n = len(names)
    return FinCategory(tuple(names), tuple(f"id_{x}" for x in names), tuple(range(n)),
                       tuple(range(n)), tuple(range(n)), {(i, i): i for i in range(n)})


def monoid_category(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                    obj: str = "*") -> FinCategory:
    """One-object category from a monoid table, ``table[a][b]`` = "a then b".

    The unit must be element 0.
    """
    n = len(table)
    if names is None:
        names = [f"m{i}" for i in range(n)]
    return FinCategory((obj,), tuple(names), (0,) * n, (0,) * n, (0,),
                       {(a, b): table[a][b] for a, b in product(range(n), repeat=2)})


def product_category(b: FinCategory, c: FinCategory):
    """``b x c`` with ids in lexicographic order; returns ``(cat, projection to b)``."""
    objs = [(x, y) for x in b.objects for y in c.objects]
    arrs = [(f, g) for f in b.arrows for g in c.arrows]
    oid = {o: i for i, o in enumerate(objs)}
    aid = {a: i for i, a in enumerate(arrs)}
    table = {}
    for (f1, g1), (f2, g2) in product(arrs, repeat=2):
        if b.composable(f1, f2) and c.composable(g1, g2):
            table[aid[f1, g1], aid[f2, g2]] = aid[b.compose(f1, f2), c.compose(g1, g2)]
    cat = FinCategory(
        tuple(f"({b.obj_names[x]},{c.obj_names[y]})" for x, y in objs),
        tuple(f"({b.arr_names[f]},{c.arr_names[g]})" for f, g in arrs),
        tuple(oid[b.src[f], c.src[g]] for f, g in arrs),
        tuple(oid[b.tgt[f], c.tgt[g]] for f, g in arrs),
        tuple(aid[b.identity[x], c.identity[y]] for x, y in objs),
        table,
    )
    proj = FunctorData(cat, b, tuple(x for x, _ in objs), tuple(f for f, _ in arrs))
    return cat, proj


@dataclass(frozen=True)
class CategoryIso:
    """An inverse pair of functors."""

    forward: FunctorData
    backward: FunctorData

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        for F, tag in ((self.forward, "forward"), (self.backward, "backward")):
            for v in validate_functor(F):
                report.add(f"{tag}-{v.kind}", v.ids, v.message)
        f, g = self.forward, self.backward
        if f.cod != g.dom or g.cod != f.dom:
            report.add("shape", (), "functors are not opposite-directed")
            return report
        for a in f.dom.objects:
            if g.obj_map[f.obj_map[a]] != a:
                report.add("not-inverse", (a,), f"object {f.dom.obj_names[a]} not fixed")
        for x in f.dom.arrows:
            if g.arr_map[f.arr_map[x]] != x:
                report.add("not-inverse", (x,), f"arrow {f.dom.arr_names[x]} not fixed")
        for a in g.dom.objects:
            if f.obj_map[g.obj_map[a]] != a:
                report.add("not-inverse", (a,), f"object {g.dom.obj_names[a]} not fixed")
        for x in g.dom.arrows:
            if f.arr_map[g.arr_map[x]] != x:
                report.add("not-inverse", (x,), f"arrow {g.dom.arr_names[x]} not fixed")
        return report

    @property
    def ok(self) -> bool:
        return self.validate().ok


def invert_bijection(F: FunctorData) -> FunctorData:
    """The inverse functor of a functor bijective on objects and arrows."""
    if sorted(F.obj_map) != list(F.cod.objects) or sorted(F.arr_map) != list(F.cod.arrows):
        raise CategoryError("functor is not bijective on objects and arrows")
    obj = [0] * len(F.obj_map)
    arr = [0] * len(F.arr_map)
    for a, b in enumerate(F.obj_map):
        obj[b] = a
    for f, g in enumerate(F.arr_map):
        arr[g] = f
    return FunctorData(F.cod, F.dom, tuple(obj), tuple(arr))


def codiscrete_category(names: Sequence[str]) -> FinCategory:
    """Exactly one arrow between any two objects; every arrow is invertible."""
    n = len(names)
    pairs = [(i, j) for i in range(n) for j in range(n)]
    aid = {p: k for k, p in enumerate(pairs)}
    return FinCategory(
        tuple(names),
        tuple(f"id_{names[i]}" if i == j else f"{names[i]}{names[j]}" for i, j in pairs),
        tuple(i for i, _ in pairs), tuple(j for _, j in pairs),
        tuple(aid[i, i] for i in range(n)),
        {(aid[i, j], aid[j, k]): aid[i, k] for i, j in pairs for k in range(n)},
    )

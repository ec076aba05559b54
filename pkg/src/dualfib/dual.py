"""The fibrewise dual of a fibration, built from classes of vh spans.

A vh span ``(v, h)`` has a common source (its apex), ``v`` vertical and ``h``
cartesian; it stands for a comorphism from ``tgt(v)`` to ``tgt(h)``.  Two
spans are identified when a vertical isomorphism ``i`` into the apex of one
carries its legs onto the legs of the other: ``i ; v == v'`` and
``i ; h == h'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple

from .category import (CategoryIso, FinCategory, FunctorData, inverse,
                       invert_bijection, opposite)
from .errors import CategoryError, NotComposable, PreconditionError
from .fibration import (FibSetup, chosen_lift, fibre, is_vertical, require_fibration,
                        solve_through)
from .vh import all_factorizations


class VhSpan(NamedTuple):
    v: int
    h: int


@dataclass(frozen=True)
class Comorphism:
    members: tuple[VhSpan, ...]
    src: int
    tgt: int

    @property
    def canon(self) -> VhSpan:
        return self.members[0]

    def __contains__(self, span) -> bool:
        return span in self.members


def check_span(s: FibSetup, a: VhSpan) -> None:
    X = s.total
    X.check_arrow(a.v)
    X.check_arrow(a.h)
    if X.src[a.v] != X.src[a.h]:
        raise PreconditionError("span legs do not share a source")
    if not is_vertical(s, a.v):
        raise PreconditionError(f"{X.arr_names[a.v]} is not vertical")
    if not s.cartesian[a.h]:
        raise PreconditionError(f"{X.arr_names[a.h]} is not cartesian")


def _vertical_isos_into(s: FibSetup, p: int) -> list[int]:
    X = s.total
    return [i for q in X.objects for i in X.hom(q, p)
            if is_vertical(s, i) and inverse(X, i) is not None]


def span_witnesses(s: FibSetup, a: VhSpan, b: VhSpan) -> list[int]:
    """Vertical isos ``i`` with ``i ; a.v == b.v`` and ``i ; a.h == b.h``."""
    X = s.total
    if X.tgt[a.v] != X.tgt[b.v] or X.tgt[a.h] != X.tgt[b.h]:
        raise PreconditionError("spans do not share endpoints")
    return [i for i in X.hom(X.src[b.v], X.src[a.v])
            if is_vertical(s, i) and X.compose(i, a.v) == b.v and X.compose(i, a.h) == b.h
            and inverse(X, i) is not None]


def span_equivalent(s: FibSetup, a: VhSpan, b: VhSpan) -> bool:
    found = span_witnesses(s, a, b)
    if len(found) > 1:
        raise CategoryError("witness of span equivalence is not unique")
    return bool(found)


def all_spans(s: FibSetup) -> list[VhSpan]:
    X = s.total
    out = []
    for p in X.objects:
        outgoing = [f for q in X.objects for f in X.hom(p, q)]
        vs = [f for f in outgoing if is_vertical(s, f)]
        hs = [f for f in outgoing if s.cartesian[f]]
        out.extend(VhSpan(v, h) for v in vs for h in hs)
    out.sort()
    return out


def span_class(s: FibSetup, a: VhSpan) -> Comorphism:
    """The equivalence class of ``a``: its orbit under vertical isos into the apex."""
    check_span(s, a)
    X = s.total
    members = {VhSpan(X.compose(i, a.v), X.compose(i, a.h))
               for i in _vertical_isos_into(s, X.src[a.v])}
    return Comorphism(tuple(sorted(members)), X.tgt[a.v], X.tgt[a.h])


def enumerate_comorphisms(s: FibSetup) -> list[Comorphism]:
    """All comorphisms, sorted by canonical representative."""
    require_fibration(s)
    X = s.total
    isos: dict[int, list[int]] = {}
    seen: set[VhSpan] = set()
    classes = []
    for a in all_spans(s):
        if a in seen:
            continue
        p = X.src[a.v]
        if p not in isos:
            isos[p] = _vertical_isos_into(s, p)
        members = {VhSpan(X.compose(i, a.v), X.compose(i, a.h)) for i in isos[p]}
        seen |= members
        classes.append(Comorphism(tuple(sorted(members)), X.tgt[a.v], X.tgt[a.h]))
    classes.sort(key=lambda c: c.canon)
    return classes


def compose_spans(s: FibSetup, a: VhSpan, b: VhSpan) -> VhSpan:
    """A representative of ``{a} ; {b}``: ``(w ; a.v, k ; b.h)``.

    ``k`` is the chosen cartesian lift of ``pi(a.h)`` into the apex of ``b``,
    and ``w`` the vertical arrow with ``w ; a.h == k ; b.v``.
    """
    X, B, p = s.total, s.base, s.proj
    if X.tgt[a.h] != X.tgt[b.v]:
        raise NotComposable("target of first span is not the source of the second")
    k = chosen_lift(s, p.arr_map[a.h], X.src[b.v])
    w = solve_through(s, a.h, X.compose(k, b.v), B.identity[p.obj_map[X.src[k]]])
    return VhSpan(X.compose(w, a.v), X.compose(k, b.h))


def compose_comorphisms(s: FibSetup, c1: Comorphism, c2: Comorphism) -> Comorphism:
    if c1.tgt != c2.src:
        raise NotComposable("comorphisms are not composable")
    require_fibration(s)
    return span_class(s, compose_spans(s, c1.canon, c2.canon))


def _span_name(X: FinCategory, a: VhSpan) -> str:
    return "{" + X.arr_names[a.v] + "," + X.arr_names[a.h] + "}"


@dataclass(frozen=True, eq=False)
class DualFib:
    source: FibSetup
    dual_total: FinCategory
    dual_proj: FunctorData
    class_table: tuple[Comorphism, ...]
    class_of: Mapping[VhSpan, int]

    @cached_property
    def setup(self) -> FibSetup:
        """The dual as a fibration setup over the same base."""
        return FibSetup(self.dual_total, self.source.base, self.dual_proj)

    @cached_property
    def fibre_isos(self) -> dict[int, CategoryIso]:
        return {a: fibre_duality_iso(self.source, self, a) for a in self.source.base.objects}

    def arrow(self, span: VhSpan) -> int:
        """Arrow id of the class of ``span``."""
        return self.class_of[VhSpan(*span)]


def build_dual(s: FibSetup) -> DualFib:
    classes = enumerate_comorphisms(s)
    X = s.total
    class_of = {m: n for n, c in enumerate(classes) for m in c.members}
    table = {}
    for n1, c1 in enumerate(classes):
        for n2, c2 in enumerate(classes):
            if c1.tgt == c2.src:
                table[n1, n2] = class_of[compose_spans(s, c1.canon, c2.canon)]
    total = FinCategory(
        X.obj_names,
        tuple(_span_name(X, c.canon) for c in classes),
        tuple(c.src for c in classes),
        tuple(c.tgt for c in classes),
        tuple(class_of[VhSpan(X.identity[x], X.identity[x])] for x in X.objects),
        table,
    )
    proj = FunctorData(total, s.base, s.proj.obj_map,
                       tuple(s.proj.arr_map[c.canon.h] for c in classes))
    return DualFib(s, total, proj, tuple(classes), class_of)


def is_cartesian_comorphism_char(s: FibSetup, d: DualFib, g: int) -> tuple[bool, bool]:
    """(cartesian in the dual by definition, has a representative ``(1, h)``)."""
    d.dual_total.check_arrow(g)
    X = s.total
    return (d.setup.cartesian[g], any(X.is_identity(m.v) for m in d.class_table[g].members))


def vertical_comorphism_rep(s: FibSetup, d: DualFib, g: int) -> VhSpan:
    d.dual_total.check_arrow(g)
    if not is_vertical(d.setup, g):
        raise PreconditionError(f"comorphism {d.dual_total.arr_names[g]} is not vertical")
    reps = [m for m in d.class_table[g].members if s.total.is_identity(m.h)]
    if len(reps) != 1:
        raise CategoryError(f"vertical comorphism has {len(reps)} representatives (v, 1)")
    return reps[0]


def cartesian_comorphism_rep(s: FibSetup, d: DualFib, g: int) -> VhSpan:
    """The representative ``(1, h)`` of a cartesian comorphism."""
    reps = [m for m in d.class_table[g].members if s.total.is_identity(m.v)]
    if not reps:
        raise PreconditionError(f"comorphism {d.dual_total.arr_names[g]} has no (1, h) form")
    return reps[0]


def fibre_duality_iso(s: FibSetup, d: DualFib, a: int) -> CategoryIso:
    """``fibre(X*, a)`` against ``fibre(X, a)^op``, sending ``{(v, 1)}`` to ``v``."""
    s.base.check_object(a)
    fd, fx = fibre(d.setup, a), fibre(s, a)
    op = opposite(fx.category)
    local = {g: j for j, g in enumerate(fx.inclusion.arr_map)}
    arr = tuple(local[vertical_comorphism_rep(s, d, g).v] for g in fd.inclusion.arr_map)
    if fd.inclusion.obj_map != fx.inclusion.obj_map:
        raise CategoryError("fibres of X and X* have different objects")
    forward = FunctorData(fd.category, op, tuple(fd.category.objects), arr)
    iso = CategoryIso(forward, invert_bijection(forward))
    report = iso.validate()
    if report:
        raise CategoryError(f"fibre duality over {s.base.obj_names[a]} fails: {report[0]}")
    return iso


@dataclass(frozen=True, eq=False)
class DoubleDual:
    first: DualFib
    second: DualFib
    iso: CategoryIso


def _y_vertical(X: FinCategory, d1: DualFib, d2: DualFib, v: int) -> int:
    vbar = d1.class_of[VhSpan(v, X.identity[X.src[v]])]
    return d2.class_of[VhSpan(vbar, d1.dual_total.identity[d1.dual_total.src[vbar]])]


def _y_cartesian(X: FinCategory, d1: DualFib, d2: DualFib, h: int) -> int:
    hbar = d1.class_of[VhSpan(X.identity[X.src[h]], h)]
    return d2.class_of[VhSpan(d1.dual_total.identity[d1.dual_total.src[hbar]], hbar)]


def double_dual(s: FibSetup, check_factorizations: bool = True) -> DoubleDual:
    """Build ``X**`` and the comparison ``y: X -> X**``, checking it is an iso over B.

    ``y`` sends vertical ``v`` to the class of ``({(v, 1)}, 1)`` and cartesian
    ``h`` to the class of ``(1, {(1, h)})``; a general arrow goes via any of its
    vh factorizations, all of which are compared when ``check_factorizations``.
    """
    d1 = build_dual(s)
    d2 = build_dual(d1.setup)
    X, XX = s.total, d2.dual_total
    arr = []
    for f in X.arrows:
        images = set()
        facts = all_factorizations(s, f)
        for v, h in facts if check_factorizations else facts[:1]:
            images.add(XX.compose(_y_vertical(X, d1, d2, v), _y_cartesian(X, d1, d2, h)))
        if len(images) != 1:
            raise CategoryError(f"y({X.arr_names[f]}) depends on the vh factorization")
        arr.append(images.pop())
    y = FunctorData(X, XX, tuple(X.objects), tuple(arr))

    back = []
    for g in XX.arrows:
        vbar, hbar = d2.class_table[g].canon
        v = vertical_comorphism_rep(s, d1, vbar).v
        h = cartesian_comorphism_rep(s, d1, hbar).h
        back.append(X.compose(v, h))
    iso = CategoryIso(y, FunctorData(XX, X, tuple(X.objects), tuple(back)))

    report = iso.validate()
    for f in X.arrows:
        if d2.dual_proj.arr_map[y.arr_map[f]] != s.proj.arr_map[f]:
            report.add("projection", (f,), f"y({X.arr_names[f]}) lies over the wrong base arrow")
    if report:
        raise CategoryError(f"double dual comparison fails: {report[0]}")
    return DoubleDual(d1, d2, iso)


def double_dual_iso(s: FibSetup) -> CategoryIso:
    return double_dual(s).iso


def preserves_projection(F: FunctorData, p1: FunctorData, p2: FunctorData) -> bool:
    """Whether ``F ; p2 == p1`` on objects and arrows."""
    return (all(p2.obj_map[F.obj_map[x]] == p1.obj_map[x] for x in F.dom.objects)
            and all(p2.arr_map[F.arr_map[f]] == p1.arr_map[f] for f in F.dom.arrows))


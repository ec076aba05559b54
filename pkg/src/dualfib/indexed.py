"""Strict indexed categories ``B^op -> Cat`` and their Grothendieck construction.

For ``alpha: A -> B`` the reindexing functor ``reindex[alpha]`` goes from
``fibres[B]`` to ``fibres[A]``.  Strictness means ``reindex[id_A]`` is the
identity and ``reindex[alpha ; beta]`` is ``reindex[beta]`` then
``reindex[alpha]``, as exact table equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .category import (CategoryIso, FinCategory, FunctorData, ValidationReport,
                       compose_functors, identity_functor, invert_bijection, opposite,
                       validate_category, validate_functor)
from .dual import VhSpan, build_dual, preserves_projection
from .errors import CategoryError, PreconditionError
from .fibration import FibSetup


@dataclass(frozen=True, eq=False)
class IndexedCat:
    base: FinCategory
    fibres: tuple[FinCategory, ...]
    reindex: tuple[FunctorData, ...]

    def __post_init__(self):
        if len(self.fibres) != len(self.base.obj_names):
            raise CategoryError("need one fibre per base object")
        if len(self.reindex) != len(self.base.arr_names):
            raise CategoryError("need one reindexing functor per base arrow")
        object.__setattr__(self, "fibres", tuple(self.fibres))
        object.__setattr__(self, "reindex", tuple(self.reindex))

    def __eq__(self, other):
        if not isinstance(other, IndexedCat):
            return NotImplemented
        return (self.base == other.base and self.fibres == other.fibres
                and self.reindex == other.reindex)

    __hash__ = None

    @cached_property
    def pair_objects(self) -> tuple[tuple[int, int], ...]:
        """``(A, X)`` with ``X`` in ``fibres[A]``, in lexicographic order."""
        return tuple((a, x) for a in self.base.objects for x in self.fibres[a].objects)

    @cached_property
    def pair_arrows(self) -> tuple[tuple[int, int, int], ...]:
        """``(alpha, v, Y)`` with ``v: X -> alpha*(Y)``, in lexicographic order.

        ``Y`` is part of the data because ``alpha*`` need not be injective on
        objects.
        """
        B = self.base
        out = []
        for alpha in B.arrows:
            fa = self.fibres[B.src[alpha]]
            pull = self.reindex[alpha].obj_map
            for v in fa.arrows:
                out.extend((alpha, v, y) for y, x in enumerate(pull) if x == fa.tgt[v])
        return tuple(out)

    @cached_property
    def _object_ids(self) -> dict[tuple[int, int], int]:
        return {o: i for i, o in enumerate(self.pair_objects)}

    @cached_property
    def _arrow_ids(self) -> dict[tuple[int, int, int], int]:
        return {t: i for i, t in enumerate(self.pair_arrows)}

    def __repr__(self) -> str:
        return f"IndexedCat(base={self.base!r}, {len(self.fibres)} fibres)"


def validate_indexed(F: IndexedCat) -> ValidationReport:
    report = ValidationReport()
    B = F.base
    for a in B.objects:
        for v in validate_category(F.fibres[a]):
            report.add(f"fibre:{v.kind}", (a,) + v.ids, f"fibre {B.obj_names[a]}: {v.message}")
    if report:
        return report
    for alpha in B.arrows:
        r = F.reindex[alpha]
        if r.dom != F.fibres[B.tgt[alpha]] or r.cod != F.fibres[B.src[alpha]]:
            report.add("reindex-shape", (alpha,),
                       f"reindexing along {B.arr_names[alpha]} has the wrong domain or codomain")
            continue
        for v in validate_functor(r):
            report.add(f"reindex:{v.kind}", (alpha,) + v.ids,
                       f"reindexing along {B.arr_names[alpha]}: {v.message}")
    if report:
        return report
    for a in B.objects:
        if F.reindex[B.identity[a]] != identity_functor(F.fibres[a]):
            report.add("identity-law", (a,),
                       f"reindexing along the identity of {B.obj_names[a]} is not the identity")
    for (alpha, beta), gamma in sorted(B.table.items()):
        if not B.composable(alpha, beta):
            continue
        if F.reindex[gamma] != compose_functors(F.reindex[beta], F.reindex[alpha]):
            report.add("composition-law", (alpha, beta),
                       f"reindexing along {B.arr_names[alpha]} ; {B.arr_names[beta]} is not "
                       f"the composite of the reindexings")
    return report


def grothendieck(F: IndexedCat) -> FibSetup:
    """Total category of pairs over ``F.base``, projected to the base.

    ``(v1, alpha) ; (v2, beta) = (v1 ; alpha*(v2), alpha ; beta)``; the
    coherence cell is an identity by strictness.
    """
    report = validate_indexed(F)
    if report:
        raise CategoryError(f"invalid indexed category: {report[0]}")
    B = F.base
    objs = F.pair_objects
    arrows = F.pair_arrows
    oid, aid = F._object_ids, F._arrow_ids
    by_src: dict[int, list[tuple[int, int, int]]] = {}
    for t in arrows:
        alpha, v, _ = t
        by_src.setdefault(oid[B.src[alpha], F.fibres[B.src[alpha]].src[v]], []).append(t)

    table = {}
    for t1 in arrows:
        alpha, v1, y = t1
        fa = F.fibres[B.src[alpha]]
        pull = F.reindex[alpha].arr_map
        for t2 in by_src.get(oid[B.tgt[alpha], y], ()):
            beta, v2, z = t2
            table[aid[t1], aid[t2]] = aid[B.compose(alpha, beta), fa.compose(v1, pull[v2]), z]

    names = [f"{F.fibres[a].obj_names[x]}@{B.obj_names[a]}" for a, x in objs]
    total = FinCategory(
        tuple(names),
        tuple(f"({F.fibres[B.src[al]].arr_names[v]},{B.arr_names[al]},"
              f"{F.fibres[B.tgt[al]].obj_names[y]})" for al, v, y in arrows),
        tuple(oid[B.src[al], F.fibres[B.src[al]].src[v]] for al, v, _ in arrows),
        tuple(oid[B.tgt[al], y] for al, _, y in arrows),
        tuple(aid[B.identity[a], F.fibres[a].identity[x], x] for a, x in objs),
        table,
    )
    proj = FunctorData(total, B, tuple(a for a, _ in objs), tuple(al for al, _, _ in arrows))
    return FibSetup(total, B, proj)


def pair_object_id(F: IndexedCat, a: int, x: int) -> int:
    try:
        return F._object_ids[a, x]
    except KeyError:
        raise PreconditionError("no such object in the Grothendieck construction") from None


def pair_arrow_id(F: IndexedCat, alpha: int, v: int, y: int) -> int:
    try:
        return F._arrow_ids[alpha, v, y]
    except KeyError:
        raise PreconditionError("no such arrow in the Grothendieck construction") from None


def triangle_arrow(F: IndexedCat, alpha: int, y: int) -> int:
    """The arrow ``(1, alpha): (alpha*(Y), A) -> (Y, B)``."""
    B = F.base
    B.check_arrow(alpha)
    fb = F.fibres[B.tgt[alpha]]
    if not (isinstance(y, int) and 0 <= y < len(fb.obj_names)):
        raise PreconditionError("object is not in the fibre over the target of alpha")
    x = F.reindex[alpha].obj_map[y]
    return pair_arrow_id(F, alpha, F.fibres[B.src[alpha]].identity[x], y)


def dualize_indexed(F: IndexedCat) -> IndexedCat:
    fibres = tuple(opposite(c) for c in F.fibres)
    B = F.base
    reindex = tuple(FunctorData(fibres[B.tgt[al]], fibres[B.src[al]], r.obj_map, r.arr_map)
                    for al, r in zip(B.arrows, F.reindex))
    return IndexedCat(B, fibres, reindex)


def check_dual_agreement(F: IndexedCat) -> CategoryIso:
    """Isomorphism over the base from the totalized pointwise dual to ``X*``.

    The arrow ``(v, alpha)`` of the former, with ``v: alpha*(Y) -> X`` in
    ``F(A)``, goes to the class of the span ``((v, 1_A), alpha<|Y)``.
    """
    Fd = dualize_indexed(F)
    left = grothendieck(Fd)
    s = grothendieck(F)
    d = build_dual(s)
    B = F.base
    arr = []
    for alpha, v, y in Fd.pair_arrows:
        a = B.src[alpha]
        x = F.fibres[a].tgt[v]
        leg_v = pair_arrow_id(F, B.identity[a], v, x)
        leg_h = triangle_arrow(F, alpha, y)
        arr.append(d.class_of[VhSpan(leg_v, leg_h)])
    if left.total.obj_names != d.dual_total.obj_names:
        raise CategoryError("object sets of the two fibrations differ")
    forward = FunctorData(left.total, d.dual_total, tuple(left.total.objects), tuple(arr))
    iso = CategoryIso(forward, invert_bijection(forward))
    report = iso.validate()
    if not preserves_projection(forward, left.proj, d.dual_proj):
        report.add("projection", (), "comparison does not commute with the projections")
    if report:
        raise CategoryError(f"dual agreement fails: {report[0]}")
    return iso

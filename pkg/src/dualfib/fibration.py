"""Cartesian arrows, verticality, fibres and the fibration predicate."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .category import (FinCategory, FunctorData, ValidationReport, subcategory,
                       validate_category, validate_functor)
from .errors import CategoryError, InvalidSetup, NotAFibration, PreconditionError


@dataclass(frozen=True, eq=False)
class FibSetup:
    """A functor ``proj: total -> base``.

    Construction validates both categories and the functor, then computes
    the cartesian flag of every arrow of ``total`` once.
    """

    total: FinCategory
    base: FinCategory
    proj: FunctorData
    cartesian: tuple[bool, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.proj.dom != self.total or self.proj.cod != self.base:
            raise CategoryError("proj must go from total to base")
        report = ValidationReport()
        for tag, r in (("total", validate_category(self.total)),
                       ("base", validate_category(self.base)),
                       ("proj", validate_functor(self.proj))):
            for v in r:
                report.add(f"{tag}:{v.kind}", v.ids, v.message)
        if report:
            raise InvalidSetup("invalid fibration setup: " + "; ".join(map(str, report[:3])), report)
        flags = tuple(_cartesian_by_definition(self, h) for h in self.total.arrows)
        object.__setattr__(self, "cartesian", flags)

    def over(self, a: int) -> tuple[int, ...]:
        """Objects of ``total`` lying over base object ``a``."""
        return self._objects_over.get(a, ())

    @cached_property
    def _objects_over(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x in self.total.objects:
            out.setdefault(self.proj.obj_map[x], []).append(x)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _lifts(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        X = self.total
        for h in X.arrows:
            if self.cartesian[h]:
                out.setdefault((self.proj.arr_map[h], X.tgt[h]), []).append(h)
        return {k: tuple(v) for k, v in out.items()}

    def __repr__(self) -> str:
        return f"FibSetup(total={self.total!r}, base={self.base!r})"


def _hom_over(s: FibSetup, alpha: int, x: int, y: int) -> list[int]:
    p = s.proj.arr_map
    return [h for h in s.total.hom(x, y) if p[h] == alpha]


def _cartesian_by_definition(s: FibSetup, h: int) -> bool:
    # h_*: hom_xi(Z, X) -> hom_{xi.alpha}(Z, Y) must be a bijection for every
    # base arrow xi into pi(X) and every Z over src(xi)
    X, B, p = s.total, s.base, s.proj
    x, y = X.src[h], X.tgt[h]
    alpha = p.arr_map[h]
    a = p.obj_map[x]
    for z in X.objects:
        c = p.obj_map[z]
        for xi in B.hom(c, a):
            before = _hom_over(s, xi, z, x)
            after = _hom_over(s, B.compose(xi, alpha), z, y)
            image = {X.compose(k, h) for k in before}
            if len(image) != len(before) or len(image) != len(after):
                return False
    return True


def hom_over(s: FibSetup, alpha: int, x: int, y: int) -> frozenset[int]:
    s.base.check_arrow(alpha)
    s.total.check_object(x)
    s.total.check_object(y)
    if s.proj.obj_map[x] != s.base.src[alpha] or s.proj.obj_map[y] != s.base.tgt[alpha]:
        raise PreconditionError("objects do not lie over the endpoints of alpha")
    return frozenset(_hom_over(s, alpha, x, y))


def is_cartesian(s: FibSetup, h: int) -> bool:
    s.total.check_arrow(h)
    return s.cartesian[h]


def is_vertical(s: FibSetup, h: int) -> bool:
    s.total.check_arrow(h)
    return s.base.is_identity(s.proj.arr_map[h])


@dataclass(frozen=True)
class Fibre:
    category: FinCategory
    inclusion: FunctorData


def fibre(s: FibSetup, a: int) -> Fibre:
    """The fibre over base object ``a``, with its inclusion into ``total``."""
    s.base.check_object(a)
    ida = s.base.identity[a]
    objs = s.over(a)
    arrs = [f for f in s.total.arrows
            if s.proj.arr_map[f] == ida and s.proj.obj_map[s.total.src[f]] == a]
    cat, inc = subcategory(s.total, objs, arrs)
    return Fibre(cat, inc)


def cartesian_lifts(s: FibSetup, alpha: int, y: int) -> frozenset[int]:
    s.base.check_arrow(alpha)
    s.total.check_object(y)
    if s.proj.obj_map[y] != s.base.tgt[alpha]:
        raise PreconditionError("object does not lie over the target of alpha")
    return frozenset(s._lifts.get((alpha, y), ()))


def chosen_lift(s: FibSetup, alpha: int, y: int) -> int:
    """Smallest-id cartesian lift of ``alpha`` into ``y``."""
    lifts = s._lifts.get((alpha, y))
    if not lifts:
        raise NotAFibration(
            f"no cartesian lift of {s.base.arr_names[alpha]} into {s.total.obj_names[y]}",
            witness=(alpha, y))
    return lifts[0]


def solve_through(s: FibSetup, h: int, m: int, xi: int) -> int:
    """The unique ``k`` over ``xi`` with ``k ; h == m``, for cartesian ``h``."""
    X = s.total
    found = [k for k in _hom_over(s, xi, X.src[m], X.src[h]) if X.compose(k, h) == m]
    if len(found) != 1:
        raise CategoryError(
            f"universal property of {X.arr_names[h]} fails for {X.arr_names[m]}: "
            f"{len(found)} solutions")
    return found[0]


@dataclass(frozen=True)
class CounterexampleReport:
    alpha: int
    y: int
    message: str

    def __bool__(self) -> bool:
        return False

    @property
    def witness(self) -> tuple[int, int]:
        return (self.alpha, self.y)


def is_fibration(s: FibSetup):
    """``True``, or a falsy :class:`CounterexampleReport` naming a failing pair."""
    B = s.base
    for alpha in B.arrows:
        for y in s.over(B.tgt[alpha]):
            if not s._lifts.get((alpha, y)):
                return CounterexampleReport(
                    alpha, y,
                    f"no cartesian arrow over {B.arr_names[alpha]} with codomain "
                    f"{s.total.obj_names[y]}")
    return True


def require_fibration(s: FibSetup) -> None:
    res = is_fibration(s)
    if res is not True:
        raise NotAFibration(res.message, witness=res.witness)

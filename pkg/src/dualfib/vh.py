"""Vertical-then-cartesian factorization of arrows in a fibration.

Lift selection (smallest cartesian id) is a computational device only; every
result is meant up to :func:`pairs_equivalent`.
"""

from __future__ import annotations

from typing import NamedTuple

from .category import inverse
from .errors import CategoryError, NotComposable, PreconditionError
from .fibration import FibSetup, chosen_lift, is_vertical, solve_through


class VhPair(NamedTuple):
    """``v`` vertical followed by ``h`` cartesian; represents ``v ; h``."""

    v: int
    h: int


def check_pair(s: FibSetup, p: VhPair) -> None:
    X = s.total
    X.check_arrow(p.v)
    X.check_arrow(p.h)
    if X.tgt[p.v] != X.src[p.h]:
        raise NotComposable("codomain of v is not the domain of h")
    if not is_vertical(s, p.v):
        raise PreconditionError(f"{X.arr_names[p.v]} is not vertical")
    if not s.cartesian[p.h]:
        raise PreconditionError(f"{X.arr_names[p.h]} is not cartesian")


def vh_factorize(s: FibSetup, z: int) -> VhPair:
    X, p = s.total, s.proj
    X.check_arrow(z)
    h = chosen_lift(s, p.arr_map[z], X.tgt[z])
    v = solve_through(s, h, z, s.base.identity[p.obj_map[X.src[z]]])
    return VhPair(v, h)


def all_factorizations(s: FibSetup, z: int) -> list[VhPair]:
    """Every vh pair composing to ``z``, one per cartesian lift of ``pi(z)``."""
    X, p = s.total, s.proj
    ida = s.base.identity[p.obj_map[X.src[z]]]
    lifts = s._lifts.get((p.arr_map[z], X.tgt[z]), ())
    return [VhPair(solve_through(s, h, z, ida), h) for h in lifts]


def pair_witnesses(s: FibSetup, p: VhPair, q: VhPair) -> list[int]:
    """All vertical cartesian ``i`` with ``p.v ; i == q.v`` and ``i ; q.h == p.h``."""
    X = s.total
    if X.src[p.v] != X.src[q.v] or X.tgt[p.h] != X.tgt[q.h]:
        raise PreconditionError("vh pairs do not share outer endpoints")
    return [i for i in X.hom(X.tgt[p.v], X.tgt[q.v])
            if is_vertical(s, i) and s.cartesian[i]
            and X.compose(p.v, i) == q.v and X.compose(i, q.h) == p.h]


def pairs_equivalent(s: FibSetup, p: VhPair, q: VhPair) -> bool:
    found = pair_witnesses(s, p, q)
    if len(found) > 1:
        raise CategoryError("witness of vh pair equivalence is not unique")
    if found and inverse(s.total, found[0]) is None:
        raise CategoryError("vertical cartesian witness is not invertible")
    return bool(found)


def compose_pairs(s: FibSetup, p1: VhPair, p2: VhPair) -> VhPair:
    """A vh pair for ``(v1 ; h1) ; (v2 ; h2)``, namely ``(v1 ; w, k ; h2)``.

    ``k`` is the chosen cartesian lift of ``pi(h1)`` into ``src(h2)`` and ``w``
    the vertical arrow with ``w ; k == h1 ; v2``.
    """
    X, B, proj = s.total, s.base, s.proj
    if X.tgt[p1.h] != X.src[p2.v]:
        raise NotComposable("vh pairs are not composable")
    k = chosen_lift(s, proj.arr_map[p1.h], X.src[p2.h])
    w = solve_through(s, k, X.compose(p1.h, p2.v), B.identity[proj.obj_map[X.src[p1.h]]])
    return VhPair(X.compose(p1.v, w), X.compose(k, p2.h))

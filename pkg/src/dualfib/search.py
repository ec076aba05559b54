"""Brute-force search for functors and isomorphisms between finite categories."""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .category import FinCategory, FunctorData, inverse


def _arrow_signature(c: FinCategory, f: int) -> tuple:
    endo = c.src[f] == c.tgt[f]
    power = None
    if endo:
        # length of the orbit f, f;f, f;f;f, ... before it repeats
        seen, g = [], f
        while g not in seen:
            seen.append(g)
            g = c.compose(g, f)
        power = (len(seen), seen.index(g))
    return (c.is_identity(f), inverse(c, f) is not None, endo, power)


def _object_signature(c: FinCategory, a: int) -> tuple:
    return (len(c.hom(a, a)),
            sorted(len(c.hom(a, b)) for b in c.objects),
            sorted(len(c.hom(b, a)) for b in c.objects))


def _search(c: FinCategory, d: FinCategory, obj_map: tuple[int, ...],
            candidates: list[list[int]], injective: bool) -> Iterator[tuple[int, ...]]:
    order = sorted(c.arrows, key=lambda f: (len(candidates[f]), f))
    n = len(order)

    def assign(amap: dict[int, int], used: set[int], f: int, g: int) -> bool:
        # add f -> g and everything it forces; False on contradiction
        stack = [(f, g)]
        while stack:
            f, g = stack.pop()
            if f in amap:
                if amap[f] != g:
                    return False
                continue
            if g not in candidates[f] or (injective and g in used):
                return False
            amap[f] = g
            used.add(g)
            for f2, g2 in list(amap.items()):
                if c.composable(f, f2):
                    stack.append((c.compose(f, f2), d.compose(g, g2)))
                if c.composable(f2, f):
                    stack.append((c.compose(f2, f), d.compose(g2, g)))
        return True

    def rec(i: int, amap: dict[int, int], used: set[int]):
        while i < n and order[i] in amap:
            i += 1
        if i == n:
            yield tuple(amap[f] for f in c.arrows)
            return
        f = order[i]
        for g in candidates[f]:
            amap2, used2 = dict(amap), set(used)
            if assign(amap2, used2, f, g):
                yield from rec(i + 1, amap2, used2)

    start: dict[int, int] = {}
    used: set[int] = set()
    for a in c.objects:
        if not assign(start, used, c.identity[a], d.identity[obj_map[a]]):
            return
    yield from rec(0, start, used)


def enumerate_functors(c: FinCategory, d: FinCategory) -> Iterator[FunctorData]:
    """Every functor ``c -> d``, in a deterministic order."""
    for obj_map in product(d.objects, repeat=len(c.obj_names)):
        candidates = [list(d.hom(obj_map[c.src[f]], obj_map[c.tgt[f]])) for f in c.arrows]
        for arr in _search(c, d, obj_map, candidates, injective=False):
            yield FunctorData(c, d, obj_map, arr)


def find_isomorphism(c: FinCategory, d: FinCategory, p: FunctorData | None = None,
                     q: FunctorData | None = None) -> FunctorData | None:
    """An isomorphism ``c -> d``, over a common base when ``p``, ``q`` are given."""
    if len(c.obj_names) != len(d.obj_names) or len(c.arr_names) != len(d.arr_names):
        return None
    over = p is not None and q is not None
    dsig = {g: _arrow_signature(d, g) for g in d.arrows}
    osig_d = {b: _object_signature(d, b) for b in d.objects}
    obj_cands = []
    for a in c.objects:
        sig = _object_signature(c, a)
        obj_cands.append([b for b in d.objects if osig_d[b] == sig
                          and (not over or q.obj_map[b] == p.obj_map[a])])

    def object_maps(i: int, acc: list[int], used: set[int]):
        if i == len(obj_cands):
            yield tuple(acc)
            return
        for b in obj_cands[i]:
            if b not in used:
                yield from object_maps(i + 1, acc + [b], used | {b})

    for obj_map in object_maps(0, [], set()):
        candidates = []
        for f in c.arrows:
            sig = _arrow_signature(c, f)
            candidates.append([g for g in d.hom(obj_map[c.src[f]], obj_map[c.tgt[f]])
                               if dsig[g] == sig and (not over or q.arr_map[g] == p.arr_map[f])])
        for arr in _search(c, d, obj_map, candidates, injective=True):
            return FunctorData(c, d, obj_map, arr)
    return None

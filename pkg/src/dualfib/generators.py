"""Deterministic families of fibrations, indexed categories and non-fibrations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Sequence

from .category import (FinCategory, FunctorData, codiscrete_category, compose_functors,
                       discrete_category, identity_functor, interval_category,
                       monoid_category, product_category, terminal_category)
from .errors import CategoryError
from .fibration import FibSetup
from .indexed import IndexedCat, grothendieck
from .search import enumerate_functors


# groups and monoids as tables; element 0 is the unit, table[a][b] is "a then b"

def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_elements(n: int) -> list[tuple[int, ...]]:
    return list(permutations(range(n)))


def symmetric_table(n: int) -> list[list[int]]:
    perms = symmetric_elements(n)
    index = {p: i for i, p in enumerate(perms)}
    # p then q sends x to q[p[x]]
    return [[index[tuple(q[p[x]] for x in range(n))] for q in perms] for p in perms]


def parity(p: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2


def check_group_table(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    els = range(n)
    if any(len(row) != n or any(not 0 <= x < n for x in row) for row in table):
        raise CategoryError("group table must be square with entries in range")
    for a in els:
        if table[0][a] != a or table[a][0] != a:
            raise CategoryError("element 0 must be the unit")
        if not any(table[a][b] == 0 and table[b][a] == 0 for b in els):
            raise CategoryError(f"element {a} has no inverse")
    for a, b, c in product(els, repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise CategoryError(f"table is not associative at {(a, b, c)}")


IDEMPOTENT_MONOID = [[0, 1], [1, 1]]
# {1, s, 0}: s is an involution, 0 absorbs
Z2_WITH_ZERO = [[0, 1, 2], [1, 0, 2], [2, 2, 2]]


def group_category(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FinCategory:
    check_group_table(table)
    return monoid_category(table, names)


def s3_names() -> list[str]:
    return ["p" + "".join(map(str, p)) for p in symmetric_elements(3)]


def gen_group_hom(G: Sequence[Sequence[int]], B: Sequence[Sequence[int]], hom: Sequence[int],
                  g_names: Sequence[str] | None = None,
                  b_names: Sequence[str] | None = None) -> FibSetup:
    """A group homomorphism as a functor between one-object categories."""
    total = group_category(G, g_names)
    base = group_category(B, b_names)
    return FibSetup(total, base, FunctorData(total, base, (0,), tuple(hom)))


def sign_fibration() -> FibSetup:
    perms = symmetric_elements(3)
    return gen_group_hom(symmetric_table(3), cyclic_table(2), [parity(p) for p in perms],
                         s3_names(), ["even", "odd"])


def gen_product(B: FinCategory, C: FinCategory) -> FibSetup:
    total, proj = product_category(B, C)
    return FibSetup(total, B, proj)


def identity_fibration(c: FinCategory) -> FibSetup:
    return FibSetup(c, c, identity_functor(c))


SMALL_CATEGORIES: dict[str, Callable[[], FinCategory]] = {
    "terminal": terminal_category,
    "interval": interval_category,
    "discrete2": lambda: discrete_category(["p", "q"]),
    "codiscrete2": lambda: codiscrete_category(["p", "q"]),
    "idempotent": lambda: monoid_category(IDEMPOTENT_MONOID, ["one", "e"]),
    "z2zero": lambda: monoid_category(Z2_WITH_ZERO, ["one", "s", "zero"]),
    "z2": lambda: group_category(cyclic_table(2), ["e", "s"]),
    "z3": lambda: group_category(cyclic_table(3), ["r0", "r1", "r2"]),
    "s3": lambda: group_category(symmetric_table(3), s3_names()),
}


def small_category(name: str) -> FinCategory:
    try:
        return SMALL_CATEGORIES[name]()
    except KeyError:
        raise CategoryError(f"unknown small category {name!r}") from None


def chain_category() -> FinCategory:
    """``A -> B -> C`` with the composite ``ac``."""
    objs = ["A", "B", "C"]
    arrows = [("id_A", "A", "A"), ("id_B", "B", "B"), ("id_C", "C", "C"),
              ("ab", "A", "B"), ("bc", "B", "C"), ("ac", "A", "C")]
    ident = {o: f"id_{o}" for o in objs}
    comp = {}
    for name, s, t in arrows:
        comp[ident[s], name] = name
        comp[name, ident[t]] = name
    comp["ab", "bc"] = "ac"
    return FinCategory.build(objs, arrows, ident, comp)


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: tuple = ()
    seed: int = 0


def _constant(base: FinCategory, fib: FinCategory) -> IndexedCat:
    ident = identity_functor(fib)
    return IndexedCat(base, (fib,) * len(base.obj_names), (ident,) * len(base.arr_names))


def _automorphism(c: FinCategory, arr: Sequence[int], obj: Sequence[int] | None = None) -> FunctorData:
    return FunctorData(c, c, tuple(obj) if obj is not None else tuple(c.objects), tuple(arr))


def _over_interval(fa: FinCategory, fb: FinCategory, r: FunctorData) -> IndexedCat:
    base = interval_category()
    # arrows of the interval: id_A, id_B, alpha
    return IndexedCat(base, (fa, fb), (identity_functor(fa), identity_functor(fb), r))


def gen_indexed(spec: GenSpec) -> IndexedCat:
    fam, params = spec.family, spec.params
    if fam == "constant":
        base_name, fib_name = params
        return _constant(small_category(base_name), small_category(fib_name))
    if fam == "z2-swap":
        # Z2 permuting the two objects of a discrete category
        base, fib = small_category("z2"), small_category("discrete2")
        return IndexedCat(base, (fib,), (identity_functor(fib), _automorphism(fib, (1, 0), (1, 0))))
    if fam == "z2-inversion":
        # Z2 acting on Z3 by inversion; the total category is S3
        base, fib = small_category("z2"), small_category("z3")
        return IndexedCat(base, (fib,), (identity_functor(fib), _automorphism(fib, (0, 2, 1))))
    if fam == "interval-swap":
        fib = small_category("discrete2")
        return _over_interval(fib, fib, _automorphism(fib, (1, 0), (1, 0)))
    if fam == "interval-collapse":
        fib = small_category("idempotent")
        return _over_interval(fib, fib, _automorphism(fib, (0, 0)))
    if fam == "interval-random":
        rng = random.Random(spec.seed)
        pool = list(params) or ["terminal", "discrete2", "interval", "idempotent", "z2",
                                "codiscrete2"]
        fa, fb = small_category(rng.choice(pool)), small_category(rng.choice(pool))
        return _over_interval(fa, fb, rng.choice(list(enumerate_functors(fb, fa))))
    if fam == "chain-random":
        rng = random.Random(spec.seed)
        pool = list(params) or ["terminal", "discrete2", "interval", "idempotent", "z2"]
        fa, fb, fc = (small_category(rng.choice(pool)) for _ in range(3))
        r_ab = rng.choice(list(enumerate_functors(fb, fa)))
        r_bc = rng.choice(list(enumerate_functors(fc, fb)))
        base = chain_category()
        reindex = (identity_functor(fa), identity_functor(fb), identity_functor(fc),
                   r_ab, r_bc, compose_functors(r_bc, r_ab))
        return IndexedCat(base, (fa, fb, fc), reindex)
    raise CategoryError(f"unknown indexed family {fam!r}")


@dataclass(frozen=True)
class NonFibration:
    setup: FibSetup
    witness: tuple[int, int] = field(default=(0, 0))


def _two_object_total(extra_arrows, extra_compose) -> FibSetup:
    # X over A and Y over B, plus the given arrows; base is the interval A -> B
    base = interval_category()
    arrows = [("id_X", "X", "X"), ("id_Y", "Y", "Y")] + [a for a, _ in extra_arrows]
    ident = {"X": "id_X", "Y": "id_Y"}
    comp = {}
    for name, s, t in arrows:
        comp[ident[s], name] = name
        comp[name, ident[t]] = name
    comp.update(extra_compose)
    total = FinCategory.build(["X", "Y"], arrows, ident, comp)
    arr_over = {"id_X": 0, "id_Y": 1}
    arr_over.update({a[0]: over for a, over in extra_arrows})
    proj = FunctorData(total, base, (0, 1), tuple(arr_over[n] for n in total.arr_names))
    return FibSetup(total, base, proj)


def gen_non_fibration(spec: GenSpec) -> NonFibration:
    fam = spec.family
    if fam == "group-inclusion":
        # Z2 -> Z4, s |-> 2; the odd elements of Z4 have no lift
        s = gen_group_hom(cyclic_table(2), cyclic_table(4), [0, 2], ["e", "s"],
                          ["z0", "z1", "z2", "z3"])
        return NonFibration(s, (1, 0))
    if fam == "missing-arrow":
        return NonFibration(_two_object_total([], {}), (2, 1))
    if fam == "parallel-lifts":
        # two arrows X -> Y over alpha; neither is cartesian
        s = _two_object_total([(("f", "X", "Y"), 2), (("g", "X", "Y"), 2)], {})
        return NonFibration(s, (2, 1))
    if fam == "idempotent-kills":
        # vertical idempotent e on X with e ; f = f breaks injectivity of f_*
        s = _two_object_total([(("e", "X", "X"), 0), (("f", "X", "Y"), 2)],
                              {("e", "e"): "e", ("e", "f"): "f"})
        return NonFibration(s, (2, 1))
    raise CategoryError(f"unknown non-fibration family {fam!r}")


NON_FIBRATION_FAMILIES = ("group-inclusion", "missing-arrow", "parallel-lifts", "idempotent-kills")

INDEXED_SPECS = (
    GenSpec("constant", ("terminal", "terminal")),
    GenSpec("constant", ("interval", "idempotent")),
    GenSpec("constant", ("z2", "codiscrete2")),
    GenSpec("z2-swap"),
    GenSpec("z2-inversion"),
    GenSpec("interval-swap"),
    GenSpec("interval-collapse"),
    GenSpec("interval-random", seed=1),
    GenSpec("interval-random", seed=2),
    GenSpec("interval-random", seed=3),
    GenSpec("chain-random", seed=1),
    GenSpec("chain-random", seed=2),
)


def indexed_gallery() -> dict[str, IndexedCat]:
    out = {}
    for spec in INDEXED_SPECS:
        name = "-".join([spec.family, *spec.params] + ([f"s{spec.seed}"] if spec.seed else []))
        out[name] = gen_indexed(spec)
    return out


def fibration_gallery() -> dict[str, FibSetup]:
    """Named test fibrations, each with at most 50 arrows in the total category."""
    sc = small_category
    return {
        "terminal": identity_fibration(sc("terminal")),
        "interval-identity": identity_fibration(sc("interval")),
        "sign-s3-z2": sign_fibration(),
        "z3-to-trivial": gen_group_hom(cyclic_table(3), [[0]], [0, 0, 0], ["r0", "r1", "r2"], ["e"]),
        "z4-mod-z2": gen_group_hom(cyclic_table(4), cyclic_table(2), [0, 1, 0, 1],
                                   ["z0", "z1", "z2", "z3"], ["e", "s"]),
        "s3-to-trivial": gen_group_hom(symmetric_table(3), [[0]], [0] * 6, s3_names(), ["e"]),
        "product-interval-idempotent": gen_product(sc("interval"), sc("idempotent")),
        "product-z2-interval": gen_product(sc("z2"), sc("interval")),
        "product-interval-codiscrete2": gen_product(sc("interval"), sc("codiscrete2")),
        "product-interval-z2zero": gen_product(sc("interval"), sc("z2zero")),
        "product-interval-s3": gen_product(sc("interval"), sc("s3")),
        "product-chain-codiscrete2": gen_product(chain_category(), sc("codiscrete2")),
        "product-terminal-idempotent": gen_product(sc("terminal"), sc("idempotent")),
        "product-interval-terminal": gen_product(sc("interval"), sc("terminal")),
        "groth-z2-swap": grothendieck(gen_indexed(GenSpec("z2-swap"))),
        "groth-z2-inversion": grothendieck(gen_indexed(GenSpec("z2-inversion"))),
        "groth-constant-z2-codiscrete2": grothendieck(gen_indexed(GenSpec("constant", ("z2", "codiscrete2")))),
        "groth-interval-collapse": grothendieck(gen_indexed(GenSpec("interval-collapse"))),
        "groth-interval-random-s2": grothendieck(gen_indexed(GenSpec("interval-random", seed=2))),
        "groth-chain-random-s1": grothendieck(gen_indexed(GenSpec("chain-random", seed=1))),
    }

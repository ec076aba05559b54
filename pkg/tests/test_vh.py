from itertools import product

import pytest

from dualfib.errors import NotAFibration, PreconditionError
from dualfib.fibration import is_vertical
from dualfib.generators import (GenSpec, gen_non_fibration, gen_product, sign_fibration,
                                small_category)
from dualfib.vh import (VhPair, all_factorizations, compose_pairs, pair_witnesses,
                        pairs_equivalent, vh_factorize)

from oracles import s3


def all_pairs(s):
    X = s.total
    return [VhPair(v, h) for v in X.arrows for h in X.arrows
            if X.tgt[v] == X.src[h] and is_vertical(s, v) and s.cartesian[h]]


def test_factorize_round_trip(gallery, fib_name):
    s = gallery[fib_name]
    X = s.total
    for z in X.arrows:
        v, h = vh_factorize(s, z)
        assert X.compose(v, h) == z
        assert is_vertical(s, v) and s.cartesian[h]


def test_factorize_vertical_and_cartesian(gallery):
    s = gallery["product-interval-codiscrete2"]
    X = s.total
    for z in X.arrows:
        if is_vertical(s, z):
            # the identity is a cartesian lift of an identity, but not always the smallest
            assert pairs_equivalent(s, vh_factorize(s, z), VhPair(z, X.identity[X.tgt[z]]))
        if s.cartesian[z]:
            assert pairs_equivalent(s, vh_factorize(s, z), VhPair(X.identity[X.src[z]], z))


def test_factorize_group_arithmetic():
    els, mul, inv, sign = s3()
    s = sign_fibration()
    for z, pz in enumerate(els):
        v, h = vh_factorize(s, z)
        assert els[v] == mul(pz, inv(els[h]))
        assert sign(els[v]) == 0


def test_factorize_requires_fibration():
    nf = gen_non_fibration(GenSpec("parallel-lifts"))
    X = nf.setup.total
    assert vh_factorize(nf.setup, X.identity[0]) == (X.identity[0], X.identity[0])
    with pytest.raises(NotAFibration) as e:
        vh_factorize(nf.setup, X.arr_names.index("f"))
    assert e.value.witness == nf.witness


def test_equivalence_examples():
    s = sign_fibration()
    facts = all_factorizations(s, 1)
    assert len(facts) == 3  # one per odd permutation
    for p, q in product(facts, repeat=2):
        assert pairs_equivalent(s, p, q)
    assert pairs_equivalent(s, facts[0], facts[0])
    # pairs over different base arrows
    even, odd = vh_factorize(s, 0), vh_factorize(s, 1)
    assert not pairs_equivalent(s, even, odd)


def test_equivalence_endpoint_mismatch():
    p = gen_product(small_category("interval"), small_category("terminal"))
    with pytest.raises(PreconditionError):
        pairs_equivalent(p, VhPair(0, 0), VhPair(1, 1))


def test_equivalence_relation_and_unique_witness(gallery, fib_name):
    s = gallery[fib_name]
    X = s.total
    pairs = all_pairs(s)
    groups = {}
    for p in pairs:
        groups.setdefault((X.src[p.v], X.tgt[p.h]), []).append(p)
    for group in groups.values():
        for p, q in product(group, repeat=2):
            w = pair_witnesses(s, p, q)
            assert len(w) <= 1
            assert bool(w) == bool(pair_witnesses(s, q, p))
            if w:
                for r in group:
                    if pairs_equivalent(s, q, r):
                        assert pairs_equivalent(s, p, r)
        for p in group:
            assert pairs_equivalent(s, p, p)


def test_equivalent_pairs_compose_to_same_arrow(gallery, fib_name):
    s = gallery[fib_name]
    X = s.total
    pairs = all_pairs(s)
    for p, q in product(pairs, repeat=2):
        if X.src[p.v] == X.src[q.v] and X.tgt[p.h] == X.tgt[q.h]:
            same = X.compose(*p) == X.compose(*q)
            assert same == pairs_equivalent(s, p, q)


def test_compose_pairs_law(gallery, fib_name):
    s = gallery[fib_name]
    X = s.total
    for z1, z2 in product(X.arrows, repeat=2):
        if not X.composable(z1, z2):
            continue
        for p1 in all_factorizations(s, z1):
            for p2 in all_factorizations(s, z2):
                r = compose_pairs(s, p1, p2)
                assert pairs_equivalent(s, r, vh_factorize(s, X.compose(z1, z2)))


def test_compose_pairs_units(gallery):
    s = gallery["product-interval-z2zero"]
    X = s.total
    for z in X.arrows:
        p = vh_factorize(s, z)
        a, b = X.src[z], X.tgt[z]
        unit_b = VhPair(X.identity[b], X.identity[b])
        unit_a = VhPair(X.identity[a], X.identity[a])
        assert pairs_equivalent(s, compose_pairs(s, p, unit_b), p)
        assert pairs_equivalent(s, compose_pairs(s, unit_a, p), p)


def test_compose_pairs_group_conjugation():
    els, mul, inv, sign = s3()
    s = sign_fibration()
    idx = {p: i for i, p in enumerate(els)}
    for z1, z2 in product(range(6), repeat=2):
        v1, h1 = vh_factorize(s, z1)
        v2, h2 = vh_factorize(s, z2)
        r = compose_pairs(s, VhPair(v1, h1), VhPair(v2, h2))
        conj = mul(mul(els[h1], els[v2]), inv(els[h1]))
        expected = VhPair(idx[mul(els[v1], conj)], idx[mul(els[h1], els[h2])])
        assert pairs_equivalent(s, r, expected)

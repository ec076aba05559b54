from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from dualfib.category import (FunctorData, is_isomorphism, opposite, product_category,
                              validate_category, validate_functor)
from dualfib.dual import (VhSpan, all_spans, build_dual, compose_spans, double_dual,
                          enumerate_comorphisms, fibre_duality_iso, is_cartesian_comorphism_char,
                          preserves_projection, span_class, span_equivalent, span_witnesses,
                          vertical_comorphism_rep)
from dualfib.errors import NotAFibration, PreconditionError
from dualfib.fibration import FibSetup, fibre, is_fibration, is_vertical
from dualfib.generators import (GenSpec, chain_category, gen_indexed, gen_non_fibration,
                                gen_product, sign_fibration, small_category)
from dualfib.indexed import grothendieck
from dualfib.search import find_isomorphism

from oracles import s3


def brute_classes(s):
    # union-find over pairwise witness search, independent of the orbit enumeration
    spans = all_spans(s)
    X = s.total
    parent = {a: a for a in spans}

    def root(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for a, b in product(spans, repeat=2):
        if (X.tgt[a.v], X.tgt[a.h]) == (X.tgt[b.v], X.tgt[b.h]) and span_equivalent(s, a, b):
            parent[root(a)] = root(b)
    groups = {}
    for a in spans:
        groups.setdefault(root(a), set()).add(a)
    return sorted(tuple(sorted(g)) for g in groups.values())


def test_sign_span_counts():
    els, _, _, sign = s3()
    s = sign_fibration()
    even = sum(1 for p in els if sign(p) == 0)
    assert len(all_spans(s)) == even * len(els) == 18
    classes = enumerate_comorphisms(s)
    assert len(classes) == 6
    assert {len(c.members) for c in classes} == {3}


def test_sign_dual_is_s3_over_z2():
    # J{(v, h)} = v^-1 . h
    els, mul, inv, sign = s3()
    s = sign_fibration()
    d = build_dual(s)
    idx = {p: i for i, p in enumerate(els)}
    J = []
    for c in d.class_table:
        vals = {idx[mul(inv(els[m.v]), els[m.h])] for m in c.members}
        assert len(vals) == 1
        J.append(vals.pop())
    F = FunctorData(d.dual_total, s.total, (0,), tuple(J))
    assert validate_functor(F) == []
    assert sorted(J) == list(range(6))
    assert preserves_projection(F, d.dual_proj, s.proj)


def test_span_equivalence_examples():
    s = sign_fibration()
    a = VhSpan(0, 1)
    cls = span_class(s, a)
    assert len(cls.members) == 3 and a in cls
    for b in cls.members:
        assert span_equivalent(s, a, b) and span_equivalent(s, b, a)
        assert len(span_witnesses(s, a, b)) == 1
    assert not span_equivalent(s, VhSpan(0, 0), VhSpan(0, 1))
    p = gen_product(small_category("interval"), small_category("terminal"))
    with pytest.raises(PreconditionError):
        span_equivalent(p, VhSpan(0, 0), VhSpan(1, 1))
    with pytest.raises(PreconditionError):
        span_class(p, VhSpan(2, 0))  # alpha is not vertical


def test_comorphisms_need_fibration():
    nf = gen_non_fibration(GenSpec("idempotent-kills"))
    with pytest.raises(NotAFibration):
        enumerate_comorphisms(nf.setup)


def test_classes_match_pairwise_oracle(gallery, fib_name):
    s = gallery[fib_name]
    ours = sorted(c.members for c in enumerate_comorphisms(s))
    assert ours == brute_classes(s)


def test_dual_valid_fibration(duals, fib_name):
    d = duals[fib_name]
    assert validate_category(d.dual_total) == []
    assert validate_functor(d.dual_proj) == []
    assert is_fibration(d.setup) is True


def test_span_composition_units(gallery, duals, fib_name):
    s, d = gallery[fib_name], duals[fib_name]
    X = s.total
    for c in d.class_table:
        a = c.canon
        one_src = VhSpan(X.identity[c.src], X.identity[c.src])
        one_tgt = VhSpan(X.identity[c.tgt], X.identity[c.tgt])
        assert d.arrow(compose_spans(s, one_src, a)) == d.arrow(a)
        assert d.arrow(compose_spans(s, a, one_tgt)) == d.arrow(a)


def test_composition_well_defined_on_classes(gallery, duals, fib_name):
    # every pair of representatives gives the same class
    s, d = gallery[fib_name], duals[fib_name]
    D = d.dual_total
    for g1, g2 in product(D.arrows, repeat=2):
        if D.tgt[g1] != D.src[g2]:
            continue
        expected = D.compose(g1, g2)
        for a in d.class_table[g1].members:
            for b in d.class_table[g2].members:
                assert d.arrow(compose_spans(s, a, b)) == expected


def test_span_factorization_law(gallery, duals, fib_name):
    # {(v, h)} = {(v, 1)} ; {(1, h)}
    s, d = gallery[fib_name], duals[fib_name]
    X, D = s.total, d.dual_total
    for a in all_spans(s):
        p = X.src[a.v]
        left = d.arrow(VhSpan(a.v, X.identity[p]))
        right = d.arrow(VhSpan(X.identity[p], a.h))
        assert D.compose(left, right) == d.arrow(a)


def test_cartesian_characterization(gallery, duals, fib_name):
    s, d = gallery[fib_name], duals[fib_name]
    for g in d.dual_total.arrows:
        by_def, has_form = is_cartesian_comorphism_char(s, d, g)
        assert by_def == has_form


def test_vertical_comorphisms_have_unique_rep(gallery, duals, fib_name):
    s, d = gallery[fib_name], duals[fib_name]
    X = s.total
    for g in d.dual_total.arrows:
        if is_vertical(d.setup, g):
            rep = vertical_comorphism_rep(s, d, g)
            assert X.is_identity(rep.h)
            assert is_vertical(s, rep.v)


def test_fibre_duality(gallery, duals, fib_name):
    s, d = gallery[fib_name], duals[fib_name]
    for a in s.base.objects:
        fx, fd = fibre(s, a), fibre(d.setup, a)
        assert len(fx.category.arr_names) == len(fd.category.arr_names)
        iso = fibre_duality_iso(s, d, a)
        assert iso.ok
        # contravariance: i(g1) . i(g2) = i(g2 ; g1) in the original fibre
        K, i = fx.category, iso.forward.arr_map
        Kd = fd.category
        for g1, g2 in product(Kd.arrows, repeat=2):
            if Kd.composable(g1, g2):
                assert K.compose(i[g2], i[g1]) == i[Kd.compose(g1, g2)]


def test_vertical_isos_match_vertical_cartesian(duals, fib_name):
    d = duals[fib_name]
    for g in d.dual_total.arrows:
        if is_vertical(d.setup, g):
            assert d.setup.cartesian[g] == is_isomorphism(d.dual_total, g)


def test_double_dual(gallery, fib_name):
    s = gallery[fib_name]
    dd = double_dual(s)
    assert dd.iso.ok
    assert preserves_projection(dd.iso.forward, s.proj, dd.second.dual_proj)
    assert preserves_projection(dd.iso.backward, dd.second.dual_proj, s.proj)


def test_double_dual_restricts_to_composite_of_fibre_isos(gallery, fib_name):
    s = gallery[fib_name]
    dd = double_dual(s)
    d1, d2, y = dd.first, dd.second, dd.iso.forward
    for a in s.base.objects:
        fx = fibre(s, a)
        phi1 = fibre_duality_iso(s, d1, a).forward
        phi2 = fibre_duality_iso(d1.setup, d2, a).forward
        local2 = {g: j for j, g in enumerate(fibre(d2.setup, a).inclusion.arr_map)}
        for j, v in enumerate(fx.inclusion.arr_map):
            # y(v) in fibre(X**) -> fibre(X*)^op -> fibre(X)
            back = phi1.arr_map[phi2.arr_map[local2[y.arr_map[v]]]]
            assert back == j


PRODUCT_PAIRS = [("interval", "idempotent"), ("interval", "codiscrete2"), ("interval", "s3"),
                 ("z2", "interval"), ("chain", "codiscrete2"), ("interval", "z2zero")]


@pytest.mark.parametrize("b,c", PRODUCT_PAIRS)
def test_product_dual_is_product_with_opposite(b, c):
    B = chain_category() if b == "chain" else small_category(b)
    C = small_category(c)
    s = gen_product(B, C)
    d = build_dual(s)
    target, proj = product_category(B, opposite(C))
    assert find_isomorphism(d.dual_total, target, d.dual_proj, proj) is not None


def test_dual_of_discrete_fibre_fibration_is_itself():
    # identity fibration: every fibre is trivial, so X* = X
    s = gen_product(chain_category(), small_category("terminal"))
    d = build_dual(s)
    assert find_isomorphism(d.dual_total, s.total, d.dual_proj, s.proj) is not None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["interval-random", "chain-random"]), st.integers(0, 10_000))
def test_random_grothendieck_double_dual(family, seed):
    s = grothendieck(gen_indexed(GenSpec(family, seed=seed)))
    dd = double_dual(s)
    assert dd.iso.ok
    assert is_fibration(dd.first.setup) is True


def test_dual_setup_reuses_base_and_objects(duals, fib_name):
    d = duals[fib_name]
    assert isinstance(d.setup, FibSetup)
    assert d.setup.base == d.source.base
    assert d.dual_total.obj_names == d.source.total.obj_names

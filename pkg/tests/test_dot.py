import re

from dualfib.category import terminal_category
from dualfib.dot import DotOptions, arrow_kind, export_dot
from dualfib.dual import build_dual
from dualfib.generators import gen_product, identity_fibration, sign_fibration, small_category


def nodes(dot):
    return set(re.findall(r'^    ("[^"]*");$', dot, re.M))


def edges(dot):
    return [line for line in dot.splitlines() if " -> " in line]


def test_terminal_one_node():
    dot = export_dot(identity_fibration(terminal_category()))
    assert len(nodes(dot)) == 1
    assert dot.startswith("digraph")


def test_sign_one_cluster_six_edges():
    dot = export_dot(sign_fibration())
    assert dot.count("subgraph") == 1  # Z2 has one object
    assert len(nodes(dot)) == 1
    assert len(edges(dot)) == 6
    assert len(edges(export_dot(sign_fibration(), DotOptions(include_identities=False)))) == 5


def test_dual_same_nodes():
    for s in (sign_fibration(), gen_product(small_category("interval"), small_category("codiscrete2"))):
        assert nodes(export_dot(build_dual(s))) == nodes(export_dot(s))


def test_styles_by_kind():
    s = gen_product(small_category("interval"), small_category("idempotent"))
    kinds = {arrow_kind(s, f) for f in s.total.arrows}
    assert kinds == {"vertical", "cartesian", "generic"}
    dot = export_dot(s)
    assert "dashed" in dot and "bold" in dot


def test_deterministic():
    s = gen_product(small_category("interval"), small_category("s3"))
    assert export_dot(s) == export_dot(gen_product(small_category("interval"), small_category("s3")))

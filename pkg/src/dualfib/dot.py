"""Graphviz rendering of a fibration: one cluster per base object.

Vertical arrows are drawn top-to-bottom and cartesian ones left-to-right,
mirroring how such diagrams are usually laid out by hand.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dual import DualFib
from .fibration import FibSetup, is_vertical

STYLES = {
    "vertical": 'color="#1f5fa8" style=solid',
    "cartesian": 'color="#b23a1d" style=bold constraint=false',
    "generic": 'color="#777777" style=dashed',
}


@dataclass(frozen=True)
class DotOptions:
    include_identities: bool = True
    title: str = "fibration"


def arrow_kind(s: FibSetup, f: int) -> str:
    # vertical isomorphisms are also cartesian; they are drawn as vertical
    if is_vertical(s, f):
        return "vertical"
    if s.cartesian[f]:
        return "cartesian"
    return "generic"


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(value, options: DotOptions | None = None) -> str:
    opts = options or DotOptions()
    s = value.setup if isinstance(value, DualFib) else value
    if not isinstance(s, FibSetup):
        raise TypeError("export_dot expects a FibSetup or DualFib")
    X, B = s.total, s.base
    lines = [f"digraph {_q(opts.title)} {{", "  rankdir=TB;", "  node [shape=box];"]
    for a in B.objects:
        lines.append(f"  subgraph {_q('cluster_' + B.obj_names[a])} {{")
        lines.append(f"    label={_q(B.obj_names[a])};")
        for x in s.over(a):
            lines.append(f"    {_q(X.obj_names[x])};")
        lines.append("  }")
    for f in X.arrows:
        if X.is_identity(f) and not opts.include_identities:
            continue
        kind = arrow_kind(s, f)
        lines.append(f"  {_q(X.obj_names[X.src[f]])} -> {_q(X.obj_names[X.tgt[f]])} "
                     f"[label={_q(X.arr_names[f])} {STYLES[kind]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

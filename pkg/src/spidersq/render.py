"""Deterministic Graphviz DOT output for diagrams, proofs and square reports."""
from __future__ import annotations

from .core import And, Bottom, Top, UnitaryDiagram, sorted_zones


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _zone_label(z) -> str:
    return "{" + " ".join(z.key()) + "}"


def diagram_label(d: UnitaryDiagram) -> str:
    zs = [_zone_label(z) + ("*" if z in d.shaded else "") for z in sorted_zones(d.zones)]
    lines = ["zones: " + " ".join(zs)]
    for e in d.entries():
        hab = ", ".join(_zone_label(z) for z in sorted_zones(e.habitat))
        lines.append(f"{e.count} in {hab}")
    return "\n".join(lines)


class _Dot:
    def __init__(self, name):
        self.lines = [f"digraph {name} {{", "  node [shape=box, fontname=\"monospace\"];"]
        self.n = 0

    def node(self, label, **attrs) -> str:
        nid = f"n{self.n}"
        self.n += 1
        extra = "".join(f", {k}={_q(v)}" for k, v in sorted(attrs.items()))
        self.lines.append(f"  {nid} [label={_q(label)}{extra}];")
        return nid

    def edge(self, a, b, **attrs):
        body = ", ".join(f"{k}={_q(v)}" for k, v in sorted(attrs.items()))
        self.lines.append(f"  {a} -> {b}" + (f" [{body}]" if body else "") + ";")

    def text(self) -> str:
        return "\n".join(self.lines + ["}"]) + "\n"


def _compound(dot: _Dot, D) -> str:
    if isinstance(D, UnitaryDiagram):
        return dot.node(diagram_label(D))
    if isinstance(D, Top):
        return dot.node("TOP", shape="plaintext")
    if isinstance(D, Bottom):
        return dot.node("BOTTOM", shape="plaintext")
    op = dot.node("and" if isinstance(D, And) else "or", shape="ellipse")
    for kid in (D.left, D.right):
        dot.edge(op, _compound(dot, kid), arrowhead="none")
    return op


def render_compound(D) -> str:
    dot = _Dot("diagram")
    _compound(dot, D)
    return dot.text()


def _proof(dot: _Dot, t) -> str:
    me = _compound(dot, t.conclusion)
    if t.kind != "rule":
        tag = dot.node(t.kind, shape="plaintext")
        dot.edge(tag, me, style="dotted")
        return me
    for c in t.children:
        dot.edge(_proof(dot, c), me, label=t.rule)
    return me


def render_proof(t) -> str:
    dot = _Dot("proof")
    _proof(dot, t)
    return dot.text()


def render_square(report) -> str:
    """Corners d1..d8, meta-term targets, and the relation arrows."""
    dot = _Dot("square")
    names = report.meta
    ids = {}
    for c in ("d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8"):
        ids[c] = dot.node(f"{c}\n" + diagram_label(report.corners[c]))
    for d in report.derivations:
        if d.tag in ("d1->d2", "d3->d4", "d5->d6", "d7->d8"):
            a, b = d.tag.split("->")
            dot.edge(ids[a], ids[b], label=d.name, style="solid" if a in ("d1", "d3") else "dashed")
    dot.edge(ids["d1"], ids["d3"], label="contrariety", style="dotted", dir="both")
    dot.edge(ids["d2"], ids["d4"], label="contrariety", style="dotted", dir="both")
    from .greimas import PAIRS
    for d in report.derivations:
        if d.tag in PAIRS:
            m = dot.node(f"{d.tag}\n" + diagram_label(d.goal), shape="box", style="rounded")
            for c in PAIRS[d.tag]:
                dot.edge(ids[c], m, label=d.name)
    dot.lines.insert(2, f"  label={_q('S1 = ' + names['S1'] + ', S2 = ' + names['S2'])};")
    return dot.text()


def render_dot(x) -> str:
    from .greimas import SquareReport
    from .proof import ProofTree
    if isinstance(x, ProofTree):
        return render_proof(x)
    if isinstance(x, SquareReport):
        return render_square(x)
    return render_compound(x)

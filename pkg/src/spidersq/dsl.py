"""Textual diagram language and JSON interchange."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .core import (BOTTOM, TOP, And, Bottom, Compound, Or, SpiderEntry, Top,
                   UnitaryDiagram, Zone, region_key, sorted_zones, validate_unitary)


class DslError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)


# documents

@dataclass
class Document:
    diagrams: dict = field(default_factory=dict)   # name -> UnitaryDiagram
    compounds: dict = field(default_factory=dict)  # name -> expression tree

    def names(self) -> list:
        return list(self.diagrams) + list(self.compounds)

    def get(self, name: str) -> Compound:
        if name in self.diagrams:
            return self.diagrams[name]
        if name in self.compounds:
            return self._eval(self.compounds[name], (name,))
        raise DslError(f"unknown name {name!r}")

    def _eval(self, e, stack) -> Compound:
        tag = e[0]
        if tag == "top":
            return TOP
        if tag == "bottom":
            return BOTTOM
        if tag == "name":
            n = e[1]
            if n in self.diagrams:
                return self.diagrams[n]
            if n in stack:
                raise DslError(f"cyclic compound definition through {n!r}")
            if n in self.compounds:
                return self._eval(self.compounds[n], stack + (n,))
            raise DslError(f"unknown name {n!r} in compound {stack[0]!r}")
        cls = And if tag == "and" else Or
        return cls(self._eval(e[1], stack), self._eval(e[2], stack))


# tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*) | (?P<int>[0-9]+)
  | (?P<punct>[{}|,;:=()])
""", re.X)


def _tokens(text):
    line, start = 1, 0
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append((kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    out.append(("eof", "", line, pos - start + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[self.i + k]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return DslError(msg, tok[2], tok[3])

    def expect(self, value=None, kind=None):
        t = self.next()
        if (value is not None and t[1] != value) or (kind is not None and t[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(t[1]) if t[0] != "eof" else "end of input"
            raise DslError(f"expected {want}, found {got}", t[2], t[3])
        return t

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] in ("name", "punct"):
            return self.next()
        return None

    def document(self) -> Document:
        doc = Document()
        while self.peek()[0] != "eof":
            t = self.peek()
            if t[1] == "diagram":
                name, d = self.diagram()
            elif t[1] == "compound":
                name, d = self.compound()
            else:
                raise self.error(f"expected 'diagram' or 'compound', found {t[1]!r}")
            if name in doc.diagrams or name in doc.compounds:
                raise DslError(f"duplicate name {name!r}", t[2], t[3])
            if isinstance(d, UnitaryDiagram):
                doc.diagrams[name] = d
            else:
                doc.compounds[name] = d
        for name in doc.compounds:
            doc.get(name)
        return doc

    def diagram(self):
        self.expect("diagram")
        name = self.expect(kind="name")[1]
        self.expect("{")
        self.expect("labels")
        self.expect(":")
        labels = [self.expect(kind="name")[1]]
        while self.accept(","):
            labels.append(self.expect(kind="name")[1])
        self.expect(";")
        if len(set(labels)) != len(labels):
            raise DslError(f"diagram {name}: duplicate label")
        L = frozenset(labels)
        self.expect("zones")
        self.expect(":")
        zones, shaded = [], set()
        while True:
            z, sh = self.zone(name, L, allow_shade=True)
            if z in zones:
                raise DslError(f"diagram {name}: duplicate zone {_zone_text(z)}")
            zones.append(z)
            if sh:
                shaded.add(z)
            if not self.accept(","):
                break
        self.expect(";")
        counts: dict = {}
        while self.peek()[1] == "spider":
            self.next()
            n = 1
            t = self.peek()
            if t[0] == "name" and re.fullmatch(r"x[0-9]+", t[1]):
                self.next()
                n = int(t[1][1:])
            elif t[1] == "x":
                self.next()
                n = int(self.expect(kind="int")[1])
            if n < 1:
                raise DslError(f"diagram {name}: spider count must be positive", t[2], t[3])
            self.expect("in")
            hab = []
            while True:
                z, _ = self.zone(name, L, allow_shade=False)
                if z not in zones:
                    raise DslError(f"diagram {name}: habitat zone {_zone_text(z)} is not a zone")
                hab.append(z)
                if not self.accept(","):
                    break
            self.expect(";")
            h = frozenset(hab)
            counts[h] = counts.get(h, 0) + n
        self.expect("}")
        d = UnitaryDiagram(L, frozenset(zones), frozenset(shaded),
                           frozenset(SpiderEntry(n, h) for h, n in counts.items()))
        errs = validate_unitary(d)
        if errs:
            raise DslError(f"diagram {name}: " + "; ".join(errs))
        return name, d

    def zone(self, name, L, allow_shade):
        t = self.expect("{")
        ins = []
        while self.peek()[0] == "name":
            ins.append(self.next()[1])
        outs = None
        if self.accept("|"):
            outs = []
            while self.peek()[0] == "name":
                outs.append(self.next()[1])
        self.expect("}")
        for l in ins + (outs or []):
            if l not in L:
                raise DslError(f"diagram {name}: unknown label {l} in zone", t[2], t[3])
        ins_s = frozenset(ins)
        if outs is not None:
            if ins_s & set(outs):
                raise DslError(f"diagram {name}: zone ins and outs overlap", t[2], t[3])
            if ins_s | set(outs) != L:
                raise DslError(f"diagram {name}: zone does not mention every label", t[2], t[3])
        z = Zone(ins_s, L - ins_s)
        sh = False
        if allow_shade and self.peek()[1] == "shaded":
            self.next()
            sh = True
        return z, sh

    def compound(self):
        self.expect("compound")
        name = self.expect(kind="name")[1]
        self.expect("=")
        e = self.expr_or()
        self.expect(";")
        return name, e

    def expr_or(self):
        e = self.expr_and()
        while self.peek()[1] == "or":
            self.next()
            e = ("or", e, self.expr_and())
        return e

    def expr_and(self):
        e = self.atom()
        while self.peek()[1] == "and":
            self.next()
            e = ("and", e, self.atom())
        return e

    def atom(self):
        t = self.next()
        if t[1] == "(":
            e = self.expr_or()
            self.expect(")")
            return e
        if t[0] == "name":
            if t[1] == "TOP":
                return ("top",)
            if t[1] == "BOTTOM":
                return ("bottom",)
            if t[1] in ("and", "or"):
                raise DslError(f"unexpected {t[1]!r}", t[2], t[3])
            return ("name", t[1])
        raise DslError(f"unexpected {t[1]!r}" if t[0] != "eof" else "unexpected end of input",
                       t[2], t[3])


def parse(text: str) -> Document:
    return _Parser(text).document()


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


# pretty printing

def _zone_text(z: Zone) -> str:
    return "{" + " ".join(sorted(z.ins)) + "}"


def diagram_text(name: str, d: UnitaryDiagram) -> str:
    lines = [f"diagram {name} {{", "  labels: " + ", ".join(sorted(d.labels)) + ";"]
    zs = [_zone_text(z) + (" shaded" if z in d.shaded else "") for z in sorted_zones(d.zones)]
    lines.append("  zones: " + ", ".join(zs) + ";")
    for e in d.entries():
        cnt = f" x{e.count}" if e.count != 1 else ""
        lines.append(f"  spider{cnt} in " + ", ".join(_zone_text(z) for z in sorted_zones(e.habitat)) + ";")
    lines.append("}")
    return "\n".join(lines)


def expr_text(e, ctx="or") -> str:
    tag = e[0]
    if tag == "top":
        return "TOP"
    if tag == "bottom":
        return "BOTTOM"
    if tag == "name":
        return e[1]
    if tag == "and":
        s = f"{expr_text(e[1], 'and')} and {expr_text(e[2], 'atom')}"
        return f"({s})" if ctx == "atom" else s
    s = f"{expr_text(e[1], 'or')} or {expr_text(e[2], 'and')}"
    return f"({s})" if ctx != "or" else s


def pretty(doc: Document) -> str:
    parts = [diagram_text(n, d) for n, d in doc.diagrams.items()]
    parts += [f"compound {n} = {expr_text(e)};" for n, e in doc.compounds.items()]
    return "\n\n".join(parts) + "\n"


def document_canonical(doc: Document) -> bytes:
    return json.dumps(document_to_json(doc), sort_keys=True, separators=(",", ":")).encode()


# JSON

_DIAGRAM_KEYS = {"labels", "zones", "spiders"}


def diagram_to_json(d: UnitaryDiagram) -> dict:
    return d._canon()


def _check_keys(obj, allowed, what):
    if not isinstance(obj, dict):
        raise DslError(f"{what} must be an object")
    for k in obj:
        if k not in allowed:
            raise DslError(f"unknown key {k!r} in {what}")


def diagram_from_json(obj) -> UnitaryDiagram:
    _check_keys(obj, _DIAGRAM_KEYS, "diagram")
    for k in ("labels", "zones"):
        if k not in obj:
            raise DslError(f"missing key {k!r} in diagram")
    L = frozenset(obj["labels"])
    zones, shaded = set(), set()
    for zj in obj["zones"]:
        _check_keys(zj, {"ins", "shaded"}, "zone")
        ins = frozenset(zj.get("ins", []))
        if not ins <= L:
            raise DslError(f"unknown label in zone: {sorted(ins - L)}")
        z = Zone(ins, L - ins)
        zones.add(z)
        if zj.get("shaded", False):
            shaded.add(z)
    counts: dict = {}
    for sj in obj.get("spiders", []):
        _check_keys(sj, {"count", "habitat"}, "spider")
        hab = []
        for ins in sj.get("habitat", []):
            ins = frozenset(ins)
            if not ins <= L:
                raise DslError(f"unknown label in habitat: {sorted(ins - L)}")
            hab.append(Zone(ins, L - ins))
        h = frozenset(hab)
        if h in counts:
            raise DslError(f"duplicate spider entry for habitat {region_key(h)}")
        counts[h] = int(sj.get("count", 1))
    d = UnitaryDiagram(L, frozenset(zones), frozenset(shaded),
                       frozenset(SpiderEntry(n, h) for h, n in counts.items()))
    errs = validate_unitary(d)
    if errs:
        raise DslError("; ".join(errs))
    return d


def compound_to_json(D: Compound):
    """Unitary diagrams use the diagram schema; connectives use {"op", "args"}."""
    if isinstance(D, UnitaryDiagram):
        return diagram_to_json(D)
    if isinstance(D, Top):
        return {"op": "top"}
    if isinstance(D, Bottom):
        return {"op": "bottom"}
    op = "and" if isinstance(D, And) else "or"
    return {"op": op, "args": [compound_to_json(D.left), compound_to_json(D.right)]}


def compound_from_json(obj) -> Compound:
    if isinstance(obj, dict) and "op" in obj:
        _check_keys(obj, {"op", "args"}, "compound")
        op = obj["op"]
        if op == "top":
            return TOP
        if op == "bottom":
            return BOTTOM
        if op not in ("and", "or"):
            raise DslError(f"unknown connective {op!r}")
        args = obj.get("args")
        if not isinstance(args, list) or len(args) != 2:
            raise DslError(f"{op} needs exactly two args")
        cls = And if op == "and" else Or
        return cls(compound_from_json(args[0]), compound_from_json(args[1]))
    return diagram_from_json(obj)


def _expr_to_json(e):
    if e[0] == "name":
        return e[1]
    if e[0] in ("top", "bottom"):
        return {"op": e[0]}
    return {"op": e[0], "args": [_expr_to_json(e[1]), _expr_to_json(e[2])]}


def _expr_from_json(obj):
    if isinstance(obj, str):
        return ("name", obj)
    _check_keys(obj, {"op", "args"}, "expression")
    op = obj.get("op")
    if op in ("top", "bottom"):
        return (op,)
    if op not in ("and", "or") or len(obj.get("args", [])) != 2:
        raise DslError(f"malformed expression {obj!r}")
    return (op, _expr_from_json(obj["args"][0]), _expr_from_json(obj["args"][1]))


def document_to_json(doc: Document) -> dict:
    return {"diagrams": {n: diagram_to_json(d) for n, d in doc.diagrams.items()},
            "compounds": {n: _expr_to_json(e) for n, e in doc.compounds.items()}}


def document_from_json(obj) -> Document:
    _check_keys(obj, {"diagrams", "compounds"}, "document")
    doc = Document({n: diagram_from_json(d) for n, d in obj.get("diagrams", {}).items()},
                   {n: _expr_from_json(e) for n, e in obj.get("compounds", {}).items()})
    for n in doc.compounds:
        if n in doc.diagrams:
            raise DslError(f"duplicate name {n!r}")
        doc.get(n)
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit_json(x) -> str:
    """Serialize a Document, proof tree or compound diagram."""
    from .proof import ProofTree, proof_to_obj
    if isinstance(x, Document):
        return dumps(document_to_json(x))
    if isinstance(x, ProofTree):
        return dumps(proof_to_obj(x))
    return dumps(compound_to_json(x))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DslError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None


def load_json(text: str):
    """Inverse of :func:`emit_json`; the kind is inferred from the keys."""
    from .proof import proof_from_obj
    obj = loads(text)
    if isinstance(obj, dict) and ("diagrams" in obj or "compounds" in obj):
        return document_from_json(obj)
    if isinstance(obj, dict) and "conclusion" in obj:
        return proof_from_obj(obj)
    return compound_from_json(obj)

"""Inference rules over unitary and compound diagrams.

Every rule is a function from valid inputs plus explicit parameters to a
new diagram.  ``apply_instance`` applies a :class:`RuleInstance` at a
subterm position; ``applicable_instances`` enumerates the instances the
search engine is allowed to try.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import (BOTTOM, And, Bottom, Compound, DiagramError, Or, SpiderAddress, Top,
                   UnitaryDiagram, Zone, positions, region_key, replace, sorted_zones, subterm,
                   zone)


class RuleError(ValueError):
    """A rule precondition failed."""


RULES = ("Combine", "ConjElim", "SplitSpider", "AddFeet", "EraseSpider",
         "CopySpider", "IdempotencyElim", "IdempotencyIntro")

BINARY = ("Combine", "CopySpider")


def rule_family(name: str) -> str:
    return "Idempotency" if name.startswith("Idempotency") else name


def is_alpha(d: UnitaryDiagram) -> bool:
    return d.is_alpha()


def _need_spider(d: UnitaryDiagram, addr: SpiderAddress):
    if not d.has_spider(addr):
        raise RuleError(f"no spider at address {region_key(addr.habitat)}#{addr.index}")


# unitary rules

def combine(d0, d1):
    if isinstance(d0, Bottom) or isinstance(d1, Bottom):
        return BOTTOM
    if isinstance(d0, Top):
        return d1
    if isinstance(d1, Top):
        return d0
    if not isinstance(d0, UnitaryDiagram) or not isinstance(d1, UnitaryDiagram):
        raise RuleError("Combine needs unitary, Top or Bottom arguments")
    if d0.labels != d1.labels:
        raise RuleError("Combine: label sets differ")
    if d0.zones != d1.zones:
        raise RuleError("Combine: zone sets differ")
    if not (d0.is_alpha() and d1.is_alpha()):
        raise RuleError("Combine: arguments must be alpha-diagrams")
    c0 = {next(iter(e.habitat)): e.count for e in d0.spiders}
    c1 = {next(iter(e.habitat)): e.count for e in d1.spiders}
    for z in d0.zones:
        a, b = c0.get(z, 0), c1.get(z, 0)
        if (z in d0.shaded and b > a) or (z in d1.shaded and a > b):
            return BOTTOM
    counts = {frozenset([z]): max(c0.get(z, 0), c1.get(z, 0)) for z in d0.zones}
    out = UnitaryDiagram(d0.labels, d0.zones | d1.zones, d0.shaded | d1.shaded)
    return out.with_spiders(counts)


def conj_elim(D: Compound, position, side: str) -> Compound:
    node = subterm(D, position)
    if not isinstance(node, And):
        raise RuleError("ConjElim: subterm is not a conjunction")
    return replace(D, position, _side(node, side))


def conj_elim_unitary(d: UnitaryDiagram, witness, side: str) -> UnitaryDiagram:
    d0, d1 = witness
    if combine(d0, d1) != d:
        raise RuleError("ConjElim: witness does not recombine to the diagram")
    out = _side((d0, d1), side)
    if not isinstance(out, UnitaryDiagram):
        raise RuleError("ConjElim: witness side is not unitary")
    return out


def _side(pair, side):
    a, b = (pair.left, pair.right) if isinstance(pair, And) else pair
    if side == "left":
        return a
    if side == "right":
        return b
    raise RuleError(f"side must be 'left' or 'right', not {side!r}")


def split_spider(d: UnitaryDiagram, addr: SpiderAddress, r1, r2) -> Or:
    _need_spider(d, addr)
    r1, r2 = frozenset(r1), frozenset(r2)
    if not r1 or not r2 or r1 & r2 or r1 | r2 != addr.habitat:
        raise RuleError("SplitSpider: regions do not partition the habitat")
    base = d.remove_spider(addr.habitat)
    return Or(base.add_spider(r1), base.add_spider(r2))


def add_feet(d: UnitaryDiagram, addr: SpiderAddress, z: Zone) -> UnitaryDiagram:
    _need_spider(d, addr)
    if z not in d.zones:
        raise RuleError("AddFeet: zone is not a zone of the diagram")
    if z in addr.habitat:
        raise RuleError("AddFeet: zone already in the habitat")
    return d.remove_spider(addr.habitat).add_spider(addr.habitat | {z})


def erase_spider(d: UnitaryDiagram, addr: SpiderAddress) -> UnitaryDiagram:
    _need_spider(d, addr)
    if addr.habitat & d.shaded:
        raise RuleError("EraseSpider: habitat touches a shaded zone")
    return d.remove_spider(addr.habitat)


def _spiders_in(d: UnitaryDiagram, r: frozenset) -> list:
    return [a for a in d.addresses() if a.habitat <= r]


def copy_spider(d1: UnitaryDiagram, d2: UnitaryDiagram, r1, r2, xi, s: SpiderAddress) -> UnitaryDiagram:
    """Return d1 extended by a copy of the d2 spider ``s``.

    ``xi`` is a list of (d1 address, d2 address) pairs.  Regions correspond
    across diagrams when they have the same zones.
    """
    r1, r2 = frozenset(r1), frozenset(r2)
    if d1.labels != d2.labels:
        raise RuleError("CopySpider: label sets differ")
    if not r1 <= d1.zones or not r2 <= d2.zones:
        raise RuleError("CopySpider: region is not a region of its diagram")
    if r1 & d1.shaded:
        raise RuleError("CopySpider clause 1: r1 contains a shaded zone")
    for e in d1.spiders:
        if e.habitat & r1 and not e.habitat <= r1:
            raise RuleError("CopySpider clause 2: a spider has feet both inside and outside r1")
    if r1 != r2:
        raise RuleError("CopySpider clause 3: r1 and r2 do not correspond")
    dom = _spiders_in(d1, r1)
    cod = _spiders_in(d2, r2)
    xi = [(SpiderAddress(a.habitat, a.index), SpiderAddress(b.habitat, b.index)) for a, b in xi]
    if sorted(_akey(a) for a, _ in xi) != sorted(_akey(a) for a in dom):
        raise RuleError("CopySpider clause 3: xi is not defined exactly on S(r1, d1)")
    image = [b for _, b in xi]
    if len({_akey(b) for b in image}) != len(image):
        raise RuleError("CopySpider clause 3: xi is not injective")
    for a, b in xi:
        if not d2.has_spider(b) or not b.habitat <= r2:
            raise RuleError("CopySpider clause 3: xi maps outside S(r2, d2)")
        if a.habitat != b.habitat:
            raise RuleError("CopySpider clause 3: xi does not preserve habitats")
    if len(image) >= len(cod):
        raise RuleError("CopySpider clause 3: xi is surjective")
    if not d2.has_spider(s) or not s.habitat <= r2:
        raise RuleError("CopySpider clause 4: s is not a spider of S(r2, d2)")
    if _akey(s) in {_akey(b) for b in image}:
        raise RuleError("CopySpider clause 4: s is in the image of xi")
    if not s.habitat <= d1.zones:
        raise RuleError("CopySpider clause 4: no region of d1 corresponds to the habitat of s")
    return d1.add_spider(s.habitat)


def _akey(a: SpiderAddress):
    return (region_key(a.habitat), a.index)


def idempotency(D: Compound, position, direction: str) -> Compound:
    node = subterm(D, position)
    if direction == "intro":
        return replace(D, position, Or(node, node))
    if direction == "elim":
        if not isinstance(node, Or) or node.left != node.right:
            raise RuleError("Idempotency: subterm is not a disjunction of identical diagrams")
        return replace(D, position, node.left)
    raise RuleError(f"direction must be 'intro' or 'elim', not {direction!r}")


# rule instances

@dataclass(frozen=True)
class RuleInstance:
    rule: str
    position: tuple = ()
    params: dict = field(default_factory=dict)

    def key(self) -> str:
        return json.dumps([self.rule, list(self.position), self.params], sort_keys=True)

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> dict:
        return {"position": list(self.position), **self.params}

    @classmethod
    def from_json(cls, rule: str, params: dict) -> "RuleInstance":
        if rule not in RULES:
            raise RuleError(f"unknown rule {rule!r}")
        params = dict(params or {})
        pos = tuple(params.pop("position", ()))
        if any(p not in (0, 1) for p in pos):
            raise RuleError("position entries must be 0 or 1")
        return cls(rule, pos, params)


def zone_json(z: Zone) -> list:
    return list(z.key())


def region_json(r) -> list:
    return [list(k) for k in region_key(r)]


def addr_json(a: SpiderAddress) -> dict:
    return {"habitat": region_json(a.habitat), "index": a.index}


def _zone(ins, labels) -> Zone:
    try:
        return zone(ins, labels)
    except DiagramError as e:
        raise RuleError(str(e)) from None


def _region(js, labels) -> frozenset:
    return frozenset(_zone(i, labels) for i in js)


def _addr(js, labels) -> SpiderAddress:
    if not isinstance(js, dict) or "habitat" not in js:
        raise RuleError("spider address must be an object with a habitat")
    return SpiderAddress(_region(js["habitat"], labels), int(js.get("index", 0)))


def _param(params, name):
    if name not in params:
        raise RuleError(f"missing parameter {name!r}")
    return params[name]


def _unitary(x, rule) -> UnitaryDiagram:
    if not isinstance(x, UnitaryDiagram):
        raise RuleError(f"{rule}: subterm is not a unitary diagram")
    return x


def apply_instance(D: Compound, inst: RuleInstance, second: Optional[Compound] = None) -> Compound:
    """Apply ``inst`` to ``D``; ``second`` is the extra operand of binary forms."""
    p = inst.params
    pos = inst.position
    try:
        node = subterm(D, pos)
    except DiagramError as e:
        raise RuleError(str(e)) from None
    rule = inst.rule
    if rule == "Combine":
        if second is None:
            raise RuleError("Combine needs a second operand")
        return replace(D, pos, combine(node, second))
    if rule == "ConjElim":
        side = _param(p, "side")
        if "witness" in p:
            from .dsl import diagram_from_json
            w = [diagram_from_json(x) for x in p["witness"]]
            return replace(D, pos, conj_elim_unitary(_unitary(node, rule), w, side))
        return conj_elim(D, pos, side)
    if rule in ("IdempotencyIntro", "IdempotencyElim"):
        return idempotency(D, pos, "intro" if rule == "IdempotencyIntro" else "elim")
    if rule == "CopySpider":
        if second is None:
            if not isinstance(node, And):
                raise RuleError("CopySpider: subterm is not a conjunction")
            into = p.get("into", "left")
            if into not in ("left", "right"):
                raise RuleError("into must be 'left' or 'right'")
            x, y = (node.left, node.right) if into == "left" else (node.right, node.left)
        else:
            x, y = node, second
        x = _unitary(x, rule)
        y = _unitary(y, rule)
        labels = x.labels
        out = copy_spider(x, y, _region(_param(p, "r1"), labels), _region(_param(p, "r2"), labels),
                          [(_addr(a, labels), _addr(b, labels)) for a, b in p.get("xi", [])],
                          _addr(_param(p, "spider"), labels))
        if second is not None:
            return replace(D, pos, And(out, y))
        new = And(out, node.right) if into == "left" else And(node.left, out)
        return replace(D, pos, new)
    d = _unitary(node, rule)
    labels = d.labels
    if rule == "SplitSpider":
        new = split_spider(d, _addr(_param(p, "spider"), labels),
                           _region(_param(p, "r1"), labels), _region(_param(p, "r2"), labels))
    elif rule == "AddFeet":
        new = add_feet(d, _addr(_param(p, "spider"), labels), _zone(_param(p, "zone"), labels))
    elif rule == "EraseSpider":
        new = erase_spider(d, _addr(_param(p, "spider"), labels))
    else:
        raise RuleError(f"unknown rule {rule!r}")
    return replace(D, pos, new)


# enumeration policy

def _copy_params(x: UnitaryDiagram, y: UnitaryDiagram) -> list:
    """CopySpider parameters copying one spider of ``y`` into ``x``.

    For each spider entry s of ``y`` the region is the closure of its
    habitat under the habitats of ``x``-spiders touching it; xi matches
    ``x``-spiders in the region to ``y``-spiders with equal habitats.
    """
    if x.labels != y.labels:
        return []
    out = []
    for se in y.entries():
        r = set(se.habitat)
        grow = True
        while grow:
            grow = False
            for e in x.spiders:
                if e.habitat & r and not e.habitat <= r:
                    r |= e.habitat
                    grow = True
        r = frozenset(r)
        if not r <= x.zones or not r <= y.zones or r & x.shaded:
            continue
        xi = []
        ok = True
        for e in x.entries():
            if not e.habitat <= r:
                continue
            avail = y.count_at(e.habitat) - (1 if e.habitat == se.habitat else 0)
            if e.count > avail:
                ok = False
                break
            for i in range(e.count):
                a = {"habitat": region_json(e.habitat), "index": i}
                xi.append([a, dict(a)])
        if not ok:
            continue
        out.append({"r1": region_json(r), "r2": region_json(r), "xi": xi,
                    "spider": {"habitat": region_json(se.habitat), "index": se.count - 1}})
    return out


def _unary_instances(D: Compound, pos: tuple, node, rule: str) -> list:
    out = []
    if rule == "ConjElim" and isinstance(node, And):
        out += [RuleInstance(rule, pos, {"side": "left"}), RuleInstance(rule, pos, {"side": "right"})]
    elif rule == "IdempotencyElim" and isinstance(node, Or) and node.left == node.right:
        out.append(RuleInstance(rule, pos))
    elif rule == "IdempotencyIntro" and not pos:
        out.append(RuleInstance(rule, pos))
    elif rule == "CopySpider" and isinstance(node, And):
        for into, x, y in (("left", node.left, node.right), ("right", node.right, node.left)):
            if isinstance(x, UnitaryDiagram) and isinstance(y, UnitaryDiagram):
                for prm in _copy_params(x, y):
                    out.append(RuleInstance(rule, pos, {"into": into, **prm}))
    elif isinstance(node, UnitaryDiagram):
        for e in node.entries():
            a = {"habitat": region_json(e.habitat), "index": 0}
            if rule == "SplitSpider" and len(e.habitat) > 1:
                for z in sorted_zones(e.habitat):
                    out.append(RuleInstance(rule, pos, {"spider": a, "r1": region_json([z]),
                                                        "r2": region_json(e.habitat - {z})}))
            elif rule == "AddFeet":
                for z in sorted_zones(node.zones - e.habitat):
                    out.append(RuleInstance(rule, pos, {"spider": a, "zone": zone_json(z)}))
            elif rule == "EraseSpider" and len(e.habitat) == 1 and not e.habitat & node.shaded:
                out.append(RuleInstance(rule, pos, {"spider": a}))
    return out


def applicable_instances(D: Compound, rules: Optional[Iterable[str]] = None,
                         operands: Iterable[Compound] = ()) -> list:
    """Deterministic list of (instance, operand index or None) pairs.

    Positions are visited in preorder and rules in ``RULES`` order.  Binary
    instances pair the subterm with each of ``operands`` in turn.  Policy:
    SplitSpider splits off one zone at a time, EraseSpider only removes
    single-zone spiders, CopySpider uses closure regions (see
    ``_copy_params``), IdempotencyIntro applies at the root only.
    """
    allowed = set(RULES if rules is None else rules)
    operands = list(operands)
    out = []
    for pos in positions(D):
        node = subterm(D, pos)
        for rule in RULES:
            if rule not in allowed:
                continue
            if rule == "Combine":
                if isinstance(node, (UnitaryDiagram, Top)):
                    for i, y in enumerate(operands):
                        if _combinable(node, y):
                            out.append((RuleInstance(rule, pos), i))
                continue
            if rule == "CopySpider" and isinstance(node, UnitaryDiagram):
                for i, y in enumerate(operands):
                    if isinstance(y, UnitaryDiagram):
                        for prm in _copy_params(node, y):
                            out.append((RuleInstance(rule, pos, prm), i))
            for inst in _unary_instances(D, pos, node, rule):
                out.append((inst, None))
    return out


def _combinable(x, y) -> bool:
    if isinstance(x, Top) or isinstance(y, (Top, Bottom)):
        return True
    return (isinstance(x, UnitaryDiagram) and isinstance(y, UnitaryDiagram)
            and x.zones == y.zones and x.labels == y.labels and x.is_alpha() and y.is_alpha())


def apply_all(D: Compound, rules=None, operands=()) -> list:
    """(instance, operand index, result) for every applicable instance."""
    operands = list(operands)
    out = []
    for inst, i in applicable_instances(D, rules, operands):
        res = apply_instance(D, inst, None if i is None else operands[i])
        out.append((inst, i, res))
    return out

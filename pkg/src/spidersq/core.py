"""Diagram data model: zones, regions, unitary and compound diagrams."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Union


class DiagramError(ValueError):
    """Raised when a diagram is malformed."""


@dataclass(frozen=True)
class Zone:
    ins: frozenset
    outs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ins", frozenset(self.ins))
        object.__setattr__(self, "outs", frozenset(self.outs))
        if self.ins & self.outs:
            raise DiagramError(f"zone labels overlap: {sorted(self.ins & self.outs)}")
        object.__setattr__(self, "_key", tuple(sorted(self.ins)))

    @property
    def labels(self) -> frozenset:
        return self.ins | self.outs

    def key(self) -> tuple:
        return self._key

    def __repr__(self):
        return "Zone({%s | %s})" % (",".join(sorted(self.ins)), ",".join(sorted(self.outs)))


def zone(ins: Iterable[str], labels: Iterable[str]) -> Zone:
    """Build the zone with the given ins; outs are the remaining labels."""
    return _zone(frozenset(ins), frozenset(labels))


@lru_cache(maxsize=4096)
def _zone(ins: frozenset, labels: frozenset) -> Zone:
    if not ins <= labels:
        raise DiagramError(f"unknown labels in zone: {sorted(ins - labels)}")
    return Zone(ins, labels - ins)


def region_key(region: Iterable[Zone]) -> tuple:
    return tuple(sorted(z.key() for z in region))


def sorted_zones(zones: Iterable[Zone]) -> list:
    return sorted(zones, key=Zone.key)


@dataclass(frozen=True)
class SpiderEntry:
    count: int
    habitat: frozenset

    def __post_init__(self):
        object.__setattr__(self, "habitat", frozenset(self.habitat))

    def key(self) -> tuple:
        k = self.__dict__.get("_key")
        if k is None:
            k = (region_key(self.habitat), self.count)
            object.__setattr__(self, "_key", k)
        return k


@dataclass(frozen=True)
class SpiderAddress:
    """One spider of the entry living in ``habitat``; ``index`` < entry count."""
    habitat: frozenset
    index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "habitat", frozenset(self.habitat))


class _Node:
    @cached_property
    def canonical(self) -> bytes:
        return json.dumps(self._canon(), sort_keys=True, separators=(",", ":")).encode()

    def __hash__(self):
        return hash(self.canonical)

    def __eq__(self, other):
        if not isinstance(other, _Node):
            return NotImplemented
        return self.canonical == other.canonical


@dataclass(frozen=True, eq=False)
class UnitaryDiagram(_Node):
    labels: frozenset
    zones: frozenset
    shaded: frozenset = frozenset()
    spiders: frozenset = frozenset()

    def __post_init__(self):
        for name in ("labels", "zones", "shaded", "spiders"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    __hash__ = _Node.__hash__
    __eq__ = _Node.__eq__

    def _canon(self):
        return {
            "labels": sorted(self.labels),
            "zones": [{"ins": list(z.key()), "shaded": z in self.shaded}
                      for z in sorted_zones(self.zones)],
            "spiders": [{"count": e.count, "habitat": [list(k) for k in region_key(e.habitat)]}
                        for e in sorted(self.spiders, key=SpiderEntry.key)],
        }

    # convenience

    @property
    def outer_zone(self) -> Zone:
        return Zone(frozenset(), self.labels)

    def zone(self, ins: Iterable[str]) -> Zone:
        return zone(ins, self.labels)

    def count_at(self, habitat: Iterable[Zone]) -> int:
        habitat = frozenset(habitat)
        return sum(e.count for e in self.spiders if e.habitat == habitat)

    def spider_total(self) -> int:
        return sum(e.count for e in self.spiders)

    def entries(self) -> list:
        return sorted(self.spiders, key=SpiderEntry.key)

    def addresses(self) -> list:
        return [SpiderAddress(e.habitat, i) for e in self.entries() for i in range(e.count)]

    def has_spider(self, addr: SpiderAddress) -> bool:
        return 0 <= addr.index < self.count_at(addr.habitat)

    def is_alpha(self) -> bool:
        return all(len(e.habitat) == 1 for e in self.spiders)

    def missing_zones(self) -> list:
        return sorted_zones(all_zones(self.labels) - self.zones)

    def with_spiders(self, counts: dict) -> "UnitaryDiagram":
        entries = frozenset(SpiderEntry(n, h) for h, n in counts.items() if n > 0)
        return UnitaryDiagram(self.labels, self.zones, self.shaded, entries)

    def spider_counts(self) -> dict:
        out: dict = {}
        for e in self.spiders:
            out[e.habitat] = out.get(e.habitat, 0) + e.count
        return out

    def add_spider(self, habitat: Iterable[Zone], n: int = 1) -> "UnitaryDiagram":
        counts = self.spider_counts()
        habitat = frozenset(habitat)
        counts[habitat] = counts.get(habitat, 0) + n
        return self.with_spiders(counts)

    def remove_spider(self, habitat: Iterable[Zone]) -> "UnitaryDiagram":
        counts = self.spider_counts()
        habitat = frozenset(habitat)
        if counts.get(habitat, 0) < 1:
            raise DiagramError("no spider with that habitat")
        counts[habitat] -= 1
        return self.with_spiders(counts)


@dataclass(frozen=True, eq=False)
class Top(_Node):
    __hash__ = _Node.__hash__
    __eq__ = _Node.__eq__

    def _canon(self):
        return {"op": "top"}


@dataclass(frozen=True, eq=False)
class Bottom(_Node):
    __hash__ = _Node.__hash__
    __eq__ = _Node.__eq__

    def _canon(self):
        return {"op": "bottom"}


@dataclass(frozen=True, eq=False)
class And(_Node):
    left: "Compound"
    right: "Compound"
    __hash__ = _Node.__hash__
    __eq__ = _Node.__eq__

    def _canon(self):
        return json.loads(self.canonical)

    @cached_property
    def canonical(self) -> bytes:
        a, b = sorted([self.left.canonical, self.right.canonical])
        return b'{"args":[' + a + b"," + b + b'],"op":"and"}'


@dataclass(frozen=True, eq=False)
class Or(_Node):
    left: "Compound"
    right: "Compound"
    __hash__ = _Node.__hash__
    __eq__ = _Node.__eq__

    def _canon(self):
        return json.loads(self.canonical)

    @cached_property
    def canonical(self) -> bytes:
        a, b = sorted([self.left.canonical, self.right.canonical])
        return b'{"args":[' + a + b"," + b + b'],"op":"or"}'


TOP = Top()
BOTTOM = Bottom()

Compound = Union[UnitaryDiagram, Top, Bottom, And, Or]


def all_zones(labels: Iterable[str]) -> frozenset:
    labels = sorted(labels)
    out = set()
    for mask in range(1 << len(labels)):
        ins = frozenset(l for i, l in enumerate(labels) if mask >> i & 1)
        out.add(Zone(ins, frozenset(labels) - ins))
    return frozenset(out)


def validate_unitary(d: UnitaryDiagram) -> list:
    """Return a list of human-readable violations; empty when valid."""
    errs = []
    labels = d.labels
    for z in sorted_zones(d.zones):
        if z.labels != labels:
            errs.append(f"zone {z!r} does not partition the label set")
    if Zone(frozenset(), labels) not in d.zones:
        errs.append("outer zone is missing")
    for l in sorted(labels):
        if not any(l in z.ins for z in d.zones):
            errs.append(f"label {l} is not inside any zone")
    for z in sorted_zones(d.shaded - d.zones):
        errs.append(f"shaded zone {z!r} is not a zone of the diagram")
    seen = {}
    for e in d.entries():
        if e.count < 1:
            errs.append(f"spider count {e.count} is not positive")
        if not e.habitat:
            errs.append("spider habitat is empty")
        if not e.habitat <= d.zones:
            errs.append(f"spider habitat {region_key(e.habitat)} is not a region of the diagram")
        if e.habitat in seen:
            errs.append(f"duplicate spider entry for habitat {region_key(e.habitat)}")
        seen[e.habitat] = e
    return errs


def check_unitary(d: UnitaryDiagram) -> UnitaryDiagram:
    errs = validate_unitary(d)
    if errs:
        raise DiagramError("; ".join(errs))
    return d


def make_diagram(labels, zones, shaded=(), spiders=()) -> UnitaryDiagram:
    """Build and validate a unitary diagram from ins-sets.

    ``zones`` and ``shaded`` are iterables of ins-sets; ``spiders`` is an
    iterable of ``(count, [ins, ...])`` pairs.  Entries sharing a habitat
    are merged.
    """
    labels = frozenset(labels)
    zs = frozenset(zone(i, labels) for i in zones)
    sh = frozenset(zone(i, labels) for i in shaded)
    counts: dict = {}
    for n, hab in spiders:
        h = frozenset(zone(i, labels) for i in hab)
        counts[h] = counts.get(h, 0) + n
    d = UnitaryDiagram(labels, zs, sh, frozenset(SpiderEntry(n, h) for h, n in counts.items()))
    return check_unitary(d)


def leaves(D: Compound) -> Iterator[UnitaryDiagram]:
    if isinstance(D, UnitaryDiagram):
        yield D
    elif isinstance(D, (And, Or)):
        yield from leaves(D.left)
        yield from leaves(D.right)


def label_set(D: Compound):
    """Label set shared by the unitary leaves, or None if there are none."""
    labs = {l.labels for l in leaves(D)}
    if len(labs) > 1:
        raise DiagramError("unitary components have different label sets")
    return next(iter(labs)) if labs else None


def validate(D: Compound) -> list:
    errs = []
    for l in leaves(D):
        errs.extend(validate_unitary(l))
    try:
        label_set(D)
    except DiagramError as e:
        errs.append(str(e))
    return errs


def canonical_form(D: Compound) -> bytes:
    return D.canonical


# positions: tuples of 0 (left) / 1 (right)

def positions(D: Compound, prefix: tuple = ()) -> Iterator[tuple]:
    """All subterm positions in preorder."""
    yield prefix
    if isinstance(D, (And, Or)):
        yield from positions(D.left, prefix + (0,))
        yield from positions(D.right, prefix + (1,))


def subterm(D: Compound, pos) -> Compound:
    for step in pos:
        if not isinstance(D, (And, Or)):
            raise DiagramError(f"position {list(pos)} does not exist")
        D = D.right if step else D.left
    return D


def replace(D: Compound, pos, new: Compound) -> Compound:
    pos = tuple(pos)
    if not pos:
        return new
    if not isinstance(D, (And, Or)):
        raise DiagramError(f"position {list(pos)} does not exist")
    if pos[0]:
        return type(D)(D.left, replace(D.right, pos[1:], new))
    return type(D)(replace(D.left, pos[1:], new), D.right)

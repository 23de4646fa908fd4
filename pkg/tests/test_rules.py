import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import two_label_family
from spidersq.core import (BOTTOM, TOP, And, Or, SpiderAddress, UnitaryDiagram, make_diagram,
                           validate)
from spidersq.greimas import Z, corner, diagram
from spidersq.rules import (RuleError, RuleInstance, add_feet, addr_json, applicable_instances,
                            apply_all, apply_instance, combine, conj_elim, conj_elim_unitary,
                            copy_spider, erase_spider, idempotency, is_alpha, region_json,
                            split_spider)
from spidersq.semantics import entails

EMPTY = UnitaryDiagram(corner("d1").labels, corner("d1").zones, corner("d1").shaded)


def addr(*names, index=0):
    return SpiderAddress(frozenset(Z(n) for n in names), index)


def equivalent(a, b, bound=3):
    return entails(a, b, bound).holds and entails(b, a, bound).holds


# alpha

def test_is_alpha():
    assert is_alpha(corner("d1"))
    assert not is_alpha(corner("d2"))
    assert is_alpha(EMPTY)


# combine

def test_combine_top_identity():
    d = corner("d1")
    assert combine(d, TOP) == d and combine(TOP, d) == d
    assert combine(d, BOTTOM) == BOTTOM


def test_combine_shading_contradiction():
    assert combine(EMPTY, diagram(("z12",))) == BOTTOM


def test_combine_z1_zm():
    d0, d1 = diagram(("z1",)), diagram(("zM",))
    out = combine(d0, d1)
    assert out == diagram(("z1",), ("zM",))
    assert out.shaded == {Z("z12")}
    assert equivalent(out, And(d0, d1))


def test_combine_takes_max_count():
    a = diagram(("z1",), ("z1",))
    assert combine(a, corner("d1")) == a


def test_combine_rejects_non_alpha():
    with pytest.raises(RuleError):
        combine(corner("d1"), corner("d2"))


def test_combine_rejects_zone_mismatch():
    a = make_diagram("AB", [(), ("A",), ("B",)])
    b = make_diagram("AB", [(), ("A",), ("B",), ("A", "B")])
    with pytest.raises(RuleError):
        combine(a, b)


# conjunction elimination

def test_conj_elim_projection():
    assert conj_elim(And(corner("d1"), corner("d3")), (), "left") == corner("d1")
    assert conj_elim(And(TOP, corner("d1")), (), "left") == TOP


def test_conj_elim_unitary_form():
    d0, d1 = diagram(("z1",)), diagram(("zM",))
    d = combine(d0, d1)
    out = conj_elim_unitary(d, (d0, d1), "right")
    assert out == d1 and entails(d, out, 3).holds


def test_conj_elim_errors():
    with pytest.raises(RuleError):
        conj_elim(corner("d1"), (), "left")
    with pytest.raises(RuleError):
        conj_elim_unitary(corner("d1"), (diagram(("z2",)), EMPTY), "left")


# split

def test_split_d5():
    out = split_spider(corner("d5"), addr("z2", "zX"), {Z("z2")}, {Z("zX")})
    assert out == Or(diagram(("z2",)), diagram(("zX",)))


def test_split_single_zone_fails():
    with pytest.raises(RuleError):
        split_spider(corner("d1"), addr("z1"), {Z("z1")}, set())


def test_split_three_zones():
    d = diagram(("z1", "z2", "zX"))
    out = split_spider(d, addr("z1", "z2", "zX"), {Z("z1")}, {Z("z2"), Z("zX")})
    assert not validate(out) and equivalent(d, out)


def test_split_not_partition():
    with pytest.raises(RuleError):
        split_spider(corner("d2"), addr("z2", "zX"), {Z("z2")}, {Z("z2"), Z("zX")})


# add feet

def test_add_feet_weakens():
    out = add_feet(corner("d1"), addr("z1"), Z("zX"))
    assert out == corner("d4")
    assert entails(corner("d1"), out, 3).holds and not entails(out, corner("d1"), 3).holds


def test_add_feet_errors():
    with pytest.raises(RuleError):
        add_feet(corner("d1"), addr("z1"), Z("z1"))
    d = make_diagram("AB", [(), ("A",), ("B",)], [], [(1, [("A",)])])
    from spidersq.core import zone
    with pytest.raises(RuleError):
        add_feet(d, SpiderAddress(frozenset({zone("A", "AB")}), 0), zone("AB", "AB"))


def test_add_feet_d3_gives_d2_shape():
    assert add_feet(corner("d3"), addr("z2"), Z("zX")) == corner("d2")


# erase

def test_erase_zx_spider():
    assert erase_spider(diagram(("z2",), ("zX",)), addr("zX")) == diagram(("z2",))


def test_erase_shaded_fails():
    with pytest.raises(RuleError):
        erase_spider(diagram(("z12",)), addr("z12"))


def test_erase_only_spider():
    out = erase_spider(corner("d1"), addr("z1"))
    assert out == EMPTY and entails(corner("d1"), out, 3).holds


def test_erase_missing_address():
    with pytest.raises(RuleError, match="no spider"):
        erase_spider(corner("d1"), addr("z1", index=1))


# copy

def test_copy_zm_spider():
    d2 = diagram(("zM",))
    zm = {Z("zM")}
    out = copy_spider(EMPTY, d2, zm, zm, [], addr("zM"))
    assert out == d2
    assert equivalent(And(EMPTY, d2), And(out, d2))


def test_copy_clause1():
    with pytest.raises(RuleError, match="clause 1"):
        copy_spider(EMPTY, diagram(("z12",)), {Z("z12")}, {Z("z12")}, [], addr("z12"))


def test_copy_clause2():
    with pytest.raises(RuleError, match="clause 2"):
        copy_spider(corner("d2"), diagram(("z2",)), {Z("z2")}, {Z("z2")}, [], addr("z2"))


def test_copy_surjective_clause3():
    d = diagram(("zM",))
    with pytest.raises(RuleError, match="clause 3"):
        copy_spider(d, d, {Z("zM")}, {Z("zM")}, [(addr("zM"), addr("zM"))], addr("zM"))


def test_copy_regions_must_correspond():
    with pytest.raises(RuleError, match="clause 3"):
        copy_spider(EMPTY, diagram(("zM",)), {Z("zM")}, {Z("zM"), Z("zX")}, [], addr("zM"))


def test_copy_s_in_image_clause4():
    d2 = diagram(("zM",), ("zM",))
    d1 = diagram(("zM",))
    with pytest.raises(RuleError, match="clause 4"):
        copy_spider(d1, d2, {Z("zM")}, {Z("zM")}, [(addr("zM"), addr("zM"))], addr("zM"))


def test_copy_binary_instance():
    inst = RuleInstance("CopySpider", (), {
        "r1": region_json({Z("zM")}), "r2": region_json({Z("zM")}), "xi": [],
        "spider": addr_json(addr("zM"))})
    out = apply_instance(corner("d1"), inst, diagram(("zM",)))
    assert out == And(diagram(("z1",), ("zM",)), diagram(("zM",)))


# idempotency

def test_idempotency():
    d = diagram(("z2",))
    assert idempotency(Or(d, d), (), "elim") == d
    assert idempotency(corner("d1"), (), "intro") == Or(corner("d1"), corner("d1"))
    with pytest.raises(RuleError):
        idempotency(Or(corner("d1"), corner("d3")), (), "elim")


def test_positional_application():
    D = Or(corner("d1"), And(corner("d2"), corner("d4")))
    out = apply_instance(D, RuleInstance("ConjElim", (1,), {"side": "right"}))
    assert out == Or(corner("d1"), corner("d4"))
    with pytest.raises(RuleError):
        apply_instance(D, RuleInstance("ConjElim", (0,), {"side": "right"}))


def test_instance_json_round_trip():
    inst = RuleInstance("AddFeet", (0, 1), {"spider": addr_json(addr("z1")), "zone": ["X"]})
    back = RuleInstance.from_json("AddFeet", inst.to_json())
    assert back == inst
    with pytest.raises(RuleError):
        RuleInstance.from_json("Teleport", {})


# enumeration

def test_add_feet_instance_count():
    assert len(applicable_instances(corner("d1"), ["AddFeet"])) == 5


def test_top_only_intro():
    got = applicable_instances(TOP)
    assert [(i.rule, i.position) for i, _ in got] == [("IdempotencyIntro", ())]


def test_split_instances_d5():
    assert len(applicable_instances(corner("d5"), ["SplitSpider"])) == 2


def test_enumeration_deterministic_and_unique():
    D = And(corner("d1"), corner("d2"))
    a = applicable_instances(D, operands=[diagram(("zM",))])
    b = applicable_instances(D, operands=[diagram(("zM",))])
    assert [(x.key(), i) for x, i in a] == [(x.key(), i) for x, i in b]
    assert len({(x.key(), i) for x, i in a}) == len(a)


# soundness over the two-label family (a sample here; the acceptance suite runs it all)

FAMILY = two_label_family()
EQUIV = ("Combine", "SplitSpider", "CopySpider", "IdempotencyIntro", "IdempotencyElim")


def _check_sound(d, ops):
    for inst, i, out in apply_all(d, operands=ops):
        assert not validate(out), (inst, out)
        lhs = d if i is None else And(d, ops[i])
        if inst.rule in EQUIV:
            assert equivalent(lhs, out), inst
        else:
            assert entails(lhs, out, 3).holds, inst


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMILY), st.sampled_from(FAMILY))
def test_rules_sound_on_family(d, other):
    ops = [other] if other.zones == d.zones else []
    _check_sound(d, ops)


@pytest.mark.parametrize("name", ["d1", "d2", "d3", "d4"])
def test_rules_sound_on_corners(name):
    _check_sound(corner(name), [diagram(("zM",)), corner("d3")])

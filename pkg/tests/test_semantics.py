import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from spidersq.core import BOTTOM, TOP, And, DiagramError, Or, make_diagram
from spidersq.fol import (Conj, Disj, Exists, Forall, Implies, Not, Pred, TrueF, evaluate,
                          to_fol)
from spidersq.greimas import Z, corner, diagram
from spidersq.semantics import (Interpretation, count_models, entails,
                                enumerate_interpretations, satisfies, zone_denotation)


def ex1():
    return make_diagram("AB", [(), ("A",), ("B",), ("A", "B")], [("B",)], [(1, [("A",), ()])])


def interp(universe, **phi):
    return Interpretation(tuple(universe), {k: frozenset(v) for k, v in phi.items()})


@st.composite
def small_diagrams(draw, max_labels=3):
    k = draw(st.integers(1, max_labels))
    labels = "ABC"[:k]
    others = [tuple(l for i, l in enumerate(labels) if m >> i & 1) for m in range(1, 1 << k)]
    chosen = draw(st.lists(st.sampled_from(others), unique=True, min_size=1))
    for l in labels:
        if not any(l in z for z in chosen):
            chosen.append((l,))
    zones = [()] + chosen
    shaded = draw(st.lists(st.sampled_from(zones), unique=True, max_size=2))
    spiders = draw(st.lists(
        st.tuples(st.integers(1, 2), st.lists(st.sampled_from(zones), unique=True, min_size=1, max_size=3)),
        max_size=2))
    return make_diagram(labels, zones, shaded, spiders)


# zone denotation

def test_zone_denotation_z2():
    I = interp(["u"], S1=[], S2=["u"], M=["u"], X=["u"])
    assert zone_denotation(I, Z("z2")) == {"u"}


def test_zone_denotation_empty_labels():
    from spidersq.core import Zone
    I = interp([0, 1])
    assert zone_denotation(I, Zone(frozenset(), frozenset())) == {0, 1}


def test_zone_denotation_b_in_a():
    from spidersq.core import zone
    I = interp([1, 2], A=[1, 2], B=[2])
    assert zone_denotation(I, zone("AB", "AB")) == {2}


def test_zone_denotation_unknown_label():
    with pytest.raises(DiagramError):
        zone_denotation(interp([0], A=[]), Z("z1"))


# satisfaction

def test_b_in_a_satisfied():
    assert satisfies(interp([1], A=[1], B=[]), ex1())


def test_b_in_a_shading_violated():
    assert not satisfies(interp([1], A=[], B=[1]), ex1())


def test_bottom_and_top():
    I = interp([0], A=[0])
    assert not satisfies(I, BOTTOM) and satisfies(I, TOP)


def test_satisfies_label_mismatch():
    with pytest.raises(DiagramError):
        satisfies(interp([0], A=[0]), ex1())


@settings(max_examples=60, deadline=None)
@given(small_diagrams())
def test_satisfaction_matches_oracle(d):
    od = oracles.from_diagram(d)
    for n in range(3):
        for u, phi in oracles.interpretations(od["labels"], n):
            assert satisfies(oracles.to_engine_interp(u, phi), d) == oracles.satisfies(od, u, phi)


@settings(max_examples=40, deadline=None)
@given(small_diagrams(max_labels=2))
def test_count_models_matches_oracle(d):
    od = oracles.from_diagram(d)
    for n in range(4):
        assert count_models(d, n) == oracles.count_models(od, n)


# enumeration

@pytest.mark.parametrize("labels,n,expected", [("A", 1, 2), ("AB", 2, 16),
                                               (("S1", "S2", "M", "X"), 3, 4096)])
def test_enumeration_counts(labels, n, expected):
    seq = list(enumerate_interpretations(labels, n))
    assert len(seq) == expected
    assert len({I for I in seq}) == expected


def test_enumeration_order():
    seq = list(enumerate_interpretations("AB", 1))
    assert [(sorted(I.assignment["A"]), sorted(I.assignment["B"])) for I in seq] == \
        [([], []), ([], [0]), ([0], []), ([0], [0])]


# entailment

def test_add_feet_weakening_holds():
    wide = diagram(("z1", "zX"))
    assert entails(corner("d1"), wide, 3).holds


def test_reverse_fails_with_zx_witness():
    v = entails(diagram(("z1", "zX")), corner("d1"), 3)
    assert not v.holds
    I = v.countermodel
    assert satisfies(I, diagram(("z1", "zX"))) and not satisfies(I, corner("d1"))
    assert zone_denotation(I, Z("zX")) and not zone_denotation(I, Z("z1"))


def test_bottom_entails_anything():
    assert entails(BOTTOM, corner("d1"), 3).holds


def test_countermodel_is_first_in_order():
    v = entails(corner("d1"), corner("d3"), 2)
    for n in range(3):
        for I in enumerate_interpretations(sorted(corner("d1").labels), n):
            if satisfies(I, corner("d1")) and not satisfies(I, corner("d3")):
                assert I == v.countermodel
                return
    pytest.fail("no countermodel found by enumeration")


def test_entails_label_mismatch():
    with pytest.raises(DiagramError):
        entails(ex1(), corner("d1"), 1)


# counting; values frozen from tests/oracles.py

def test_count_models_top_bottom():
    assert count_models(TOP, 1, labels="A") == 2
    assert count_models(BOTTOM, 2, labels="A") == 0


def test_count_models_b_in_a_frozen():
    assert [count_models(ex1(), n) for n in range(4)] == [0, 2, 8, 26]


def test_count_models_corners_frozen():
    assert [count_models(corner("d1"), n) for n in range(3)] == [0, 1, 9]
    assert [count_models(corner("d2"), n) for n in range(3)] == [0, 2, 16]


@settings(max_examples=30, deadline=None)
@given(small_diagrams(max_labels=2))
def test_or_idempotent_count(d):
    for n in range(4):
        assert count_models(Or(d, d), n) == count_models(d, n)


@settings(max_examples=30, deadline=None)
@given(small_diagrams(max_labels=2), small_diagrams(max_labels=2), small_diagrams(max_labels=2))
def test_entails_reflexive_transitive(a, b, c):
    if not (a.labels == b.labels == c.labels):
        return
    assert entails(a, a, 3).holds
    if entails(a, b, 3).holds and entails(b, c, 3).holds:
        assert entails(a, c, 3).holds


@settings(max_examples=30, deadline=None)
@given(small_diagrams(max_labels=2), small_diagrams(max_labels=2), small_diagrams(max_labels=2),
       st.sampled_from([And, Or]), st.booleans())
def test_monotone_contexts(a, b, ctx, op, left):
    if not (a.labels == b.labels == ctx.labels) or not entails(a, b, 3).holds:
        return
    D1 = op(a, ctx) if left else op(ctx, a)
    D2 = op(b, ctx) if left else op(ctx, b)
    assert entails(D1, D2, 3).holds


# first-order translation

def b_in_a_formula():
    x = "x"
    A, B = Pred("A", x), Pred("B", x)
    return Conj((Forall(x, Implies(B, A)),
                 Exists(x, Disj((Conj((A, Not(B))), Conj((Not(A), Not(B))))))))


def agree(phi, d, n_max=3):
    labels = sorted(d.labels)
    for n in range(n_max + 1):
        for I in enumerate_interpretations(labels, n):
            if evaluate(phi, I) != satisfies(I, d):
                return False
    return True


def test_to_fol_b_in_a_equivalent():
    assert agree(to_fol(ex1()), ex1())
    assert agree(b_in_a_formula(), ex1())


def test_to_fol_trivial_diagram():
    d = make_diagram("AB", [(), ("A",), ("B",), ("A", "B")])
    assert isinstance(to_fol(d), TrueF)


def test_to_fol_corner_d2_matches_hand_formula():
    x = "x"
    S1, S2, M, X = (Pred(l, x) for l in ("S1", "S2", "M", "X"))
    nesting = Forall(x, Conj((Implies(S1, M), Implies(S2, M), Implies(M, X))))
    disjoint = Forall(x, Not(Conj((S1, S2))))
    witness = Exists(x, Disj((Conj((S2, Not(S1))), Conj((X, Not(S1), Not(S2), Not(M))))))
    phi = Conj((nesting, disjoint, witness))
    d = corner("d2")
    for n in range(3):
        for I in enumerate_interpretations(sorted(d.labels), n):
            assert evaluate(phi, I) == evaluate(to_fol(d), I) == satisfies(I, d)


@settings(max_examples=50, deadline=None)
@given(small_diagrams())
def test_fol_agrees_with_satisfaction(d):
    assert agree(to_fol(d), d, n_max=2)


def test_fol_render():
    assert "forall x" in str(to_fol(ex1()))

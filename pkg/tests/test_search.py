import pytest

from spidersq.core import TOP, And, Or
from spidersq.greimas import corner, diagram
from spidersq.proof import check_proof, proof_to_json
from spidersq.search import SearchConfig, Searcher, derive, reachable_set
from spidersq.semantics import entails


def _sound(cfg, proof):
    ctx = cfg.premises[0]
    for a in cfg.assertions:
        ctx = And(ctx, a)
    return entails(ctx, proof.conclusion, 3).holds


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(max_depth=0)
    with pytest.raises(ValueError):
        SearchConfig(rules=("Teleport",))


def test_d1_to_d2_with_assertion():
    cfg = SearchConfig(premises=[corner("d1")], assertions=[corner("d2")])
    t = derive(cfg, corner("d2"))
    assert t is not None and t.conclusion == corner("d2")
    assert check_proof(t, cfg.premises).valid
    assert all(a in cfg.assertions for a in t.leaves("assert"))
    assert _sound(cfg, t)


def test_d5_to_d6_t3_multiset():
    cfg = SearchConfig(max_depth=6, premises=[corner("d5")], assertions=[corner("d6")])
    t = derive(cfg, corner("d6"))
    assert t is not None and t.depth() <= 6
    assert t.rules_used() == {"SplitSpider": 1, "Combine": 1, "EraseSpider": 1, "Idempotency": 1}
    assert check_proof(t, cfg.premises).valid


def test_t3_depth_is_minimal():
    cfg = SearchConfig(max_depth=3, premises=[corner("d5")], assertions=[corner("d6")],
                       prune_bound=None)
    assert derive(cfg, corner("d6")) is None


def test_negative_control_pruned():
    assert derive(SearchConfig(premises=[corner("d1")]), corner("d3")) is None


def test_negative_control_unpruned():
    cfg = SearchConfig(max_depth=4, premises=[corner("d1")], prune_bound=None)
    assert derive(cfg, corner("d3")) is None
    assert corner("d3").canonical not in reachable_set(cfg)


def test_goal_is_premise():
    t = derive(SearchConfig(premises=[corner("d1")]), corner("d1"))
    assert t.kind == "premise"


def test_determinism():
    cfg = SearchConfig(max_depth=6, premises=[corner("d5")], assertions=[corner("d6")])
    a = proof_to_json(derive(cfg, corner("d6")))
    b = proof_to_json(Searcher(SearchConfig(max_depth=6, premises=[corner("d5")],
                                            assertions=[corner("d6")])).derive(corner("d6")))
    assert a == b


def test_reachable_top():
    got = reachable_set(SearchConfig(max_depth=1, premises=[TOP]))
    assert got == {TOP.canonical: 0, Or(TOP, TOP).canonical: 1}


def test_reachable_add_feet_only():
    got = reachable_set(SearchConfig(max_depth=1, premises=[corner("d1")], rules=("AddFeet",)))
    assert len(got) == 6
    assert got[corner("d4").canonical] == 1


def test_reachable_empty_pool():
    assert reachable_set(SearchConfig(max_depth=3)) == {}


def test_pruning_keeps_proofs():
    goal = diagram(("z2",), ("zX",))
    cfg = dict(max_depth=3, premises=[corner("d3")], assertions=[diagram(("zX",))])
    a = derive(SearchConfig(**cfg), goal)
    b = derive(SearchConfig(prune_bound=None, **cfg), goal)
    assert a is not None and b is not None and a.depth() == b.depth()

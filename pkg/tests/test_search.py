import pytest

from oracles import (
    brute_best_augmentation,
    brute_extremal_rowsets,
    brute_limited,
    brute_z,
    brute_z3a,
    nx_classes,
    rows_to_e1,
)
from zarank3 import builtins
from zarank3.conditions import ConditionConfig, Condition, ConditionReport, passes
from zarank3.graph import AugmentedGraph, DimensionGuardError, canonical_code
from zarank3.search import (
    SearchConfig,
    Statistic,
    compute,
    enumerate_extremal_c4free,
    max_augmentation,
    z3_full,
    z3_limited,
    z_limited,
    zarankiewicz,
)

E1_53 = [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3), (4, 1), (5, 2)]
SMALL = [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]


@pytest.mark.parametrize("m,n", [(1, 4), (2, 2), (2, 3), (3, 3), (4, 3), (5, 3), (5, 5), (6, 4)])
def test_zarankiewicz_brute_force(m, n):
    r = zarankiewicz(m, n)
    assert r.exhaustive
    assert r.value == brute_z(m, n)


def test_zarankiewicz_reference_values():
    assert zarankiewicz(5, 3).value == 8
    assert zarankiewicz(5, 5).value == 12
    assert zarankiewicz(1, 7).value == 7


def test_zarankiewicz_transposed():
    assert zarankiewicz(3, 5).value == zarankiewicz(5, 3).value


def test_extremal_classes_match_networkx():
    for m, n in [(2, 2), (3, 3), (4, 3), (5, 3), (5, 5)]:
        z, rowsets = brute_extremal_rowsets(m, n)
        oracle = nx_classes([AugmentedGraph(m, n, rows_to_e1(r, n)) for r in rowsets])
        assert len(enumerate_extremal_c4free(m, n)) == oracle, (m, n)


def test_extremal_2x2():
    classes = enumerate_extremal_c4free(2, 2)
    assert len(classes) == 1 and len(classes[0]) == 3


def test_extremal_contains_constructions():
    codes53 = {canonical_code(AugmentedGraph(5, 3, e)) for e in enumerate_extremal_c4free(5, 3)}
    assert canonical_code(AugmentedGraph.build(5, 3, E1_53)) in codes53
    codes55 = {canonical_code(AugmentedGraph(5, 5, e)) for e in enumerate_extremal_c4free(5, 5)}
    assert canonical_code(AugmentedGraph.build(5, 5, builtins.E1_55)) in codes55


def test_extremal_symmetry_off_covers_same_classes():
    on = {canonical_code(AugmentedGraph(4, 3, e)) for e in enumerate_extremal_c4free(4, 3)}
    off = enumerate_extremal_c4free(4, 3, symmetry=False)
    assert {canonical_code(AugmentedGraph(4, 3, e)) for e in off} == on
    assert len(off) >= len(on)


# --- augmentation ---------------------------------------------------------------


@pytest.mark.parametrize("allow_e3", [False, True])
@pytest.mark.parametrize("literal", [True, False])
def test_augmentation_5x3_against_partitions(allow_e3, literal):
    cfg = SearchConfig(literal_def32=literal)
    r = max_augmentation(5, 3, E1_53, allow_e3, cfg)
    assert r.exhaustive
    assert r.value == brute_best_augmentation(5, 3, E1_53, allow_e3, ConditionConfig(literal_def32=literal))
    # three degenerate 2-edges fit where the construction uses one 2-edge and one 3-edge
    assert r.value == 3
    for w in r.witnesses:
        assert passes(w, cfg.conditions())


def test_augmentation_full_row():
    r = max_augmentation(1, 4, [(1, j) for j in range(1, 5)], True)
    assert r.value == 0 and r.exhaustive


def test_augmentation_random_e1_against_partitions(rng):
    for _ in range(25):
        m, n = rng.randint(2, 4), rng.randint(2, 3)
        e1 = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if rng.random() < 0.35]
        if not passes(AugmentedGraph.build(m, n, e1)):
            continue
        for allow_e3 in (False, True):
            assert max_augmentation(m, n, e1, allow_e3).value == brute_best_augmentation(m, n, e1, allow_e3)


def test_nondegenerate_hook_5x3():
    def nondegenerate_only(g):
        return all(e.opposite_cells() is not None for e in g.e2)

    cfg = SearchConfig(extra=(nondegenerate_only,))
    r = z_limited(5, 3, cfg)
    assert r.exhaustive
    assert r.value == 10
    assert r.max_e2 == 2


# --- limited and full statistics --------------------------------------------------


@pytest.mark.parametrize("m,n", SMALL)
def test_limited_against_brute_force(m, n):
    assert z_limited(m, n).value == brute_limited(m, n, False)
    assert z3_limited(m, n).value == brute_limited(m, n, True)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (2, 3), (3, 3)])
def test_z3a_against_brute_force(m, n):
    r = z3_full(m, n)
    assert r.exhaustive
    assert r.value == brute_z3a(m, n)


def test_5x3_limited_values():
    zl, z3l = z_limited(5, 3), z3_limited(5, 3)
    assert zl.exhaustive and z3l.exhaustive
    assert zl.value == brute_limited(5, 3, False) == 11
    assert z3l.value == brute_limited(5, 3, True) == 11
    assert "exceeds-paper-value" in z3l.flags


@pytest.mark.slow
def test_6x4_limited_against_brute_force():
    assert z_limited(6, 4).value == brute_limited(6, 4, False) == 18
    assert z3_limited(6, 4).value == brute_limited(6, 4, True, by_class=True) == 18


@pytest.mark.slow
def test_5x5_zl_against_brute_force():
    assert z_limited(5, 5).value == brute_limited(5, 5, False, by_class=True) == 18


@pytest.mark.parametrize("m,n", [(5, 5), (6, 4)])
def test_constructions_reached(m, n):
    r = z3_limited(m, n)
    assert r.exhaustive and r.value >= 16
    assert "below-paper-lower-bound" not in r.flags


@pytest.mark.parametrize("m,n", SMALL + [(3, 4)])
def test_chain_inequality(m, n):
    z = zarankiewicz(m, n).value
    zl = z_limited(m, n).value
    z3l = z3_limited(m, n).value
    z3a = z3_full(m, n).value
    assert z3a >= z3l >= zl >= z


def test_witnesses_pass_conditions():
    for stat in ("zl", "z3l", "z3a"):
        r = compute(stat, 3, 3)
        assert r.witnesses
        for w in r.witnesses:
            assert passes(w) and w.edge_count == r.value


def test_symmetry_differential():
    for stat in ("zl", "z3l"):
        for m, n in [(3, 3), (4, 3), (5, 3)]:
            on = compute(stat, m, n, SearchConfig(symmetry=True))
            off = compute(stat, m, n, SearchConfig(symmetry=False))
            assert on.value == off.value


def test_budget_marks_partial():
    r = compute("z3l", 5, 5, SearchConfig(budget_nodes=50))
    assert not r.exhaustive
    r = compute("z", 5, 5, SearchConfig(budget_nodes=5))
    assert not r.exhaustive


def test_guard():
    with pytest.raises(DimensionGuardError):
        z3_full(6, 6)
    with pytest.raises(DimensionGuardError):
        zarankiewicz(9, 2)


def test_config_snapshot_recorded():
    r = compute("zl", 3, 3, SearchConfig(literal_def32=False, symmetry=False, seed=7))
    cfg = r.to_dict()["config"]
    assert cfg["literal_def32"] is False and cfg["symmetry"] is False and cfg["seed"] == 7


def test_statistic_parsing():
    assert compute(Statistic.Z, 2, 2).value == compute("z", 2, 2).value == 3


@pytest.mark.parametrize("stat,m,n", [("z3l", 5, 3), ("zl", 6, 4), ("z3a", 3, 4)])
def test_deterministic_across_threads(stat, m, n):
    a = compute(stat, m, n, SearchConfig(threads=1, seed=1))
    b = compute(stat, m, n, SearchConfig(threads=2, seed=1))
    c = compute(stat, m, n, SearchConfig(threads=2, seed=1))
    assert a.deterministic_view() == b.deterministic_view() == c.deterministic_view()


def test_failing_extra_hook_report():
    def reject_all(g):
        return ConditionReport(Condition.EXTRA, not g.e2 and not g.e3, "reject")

    r = z_limited(3, 3, SearchConfig(extra=(reject_all,)))
    assert r.value == zarankiewicz(3, 3).value

import random

import pytest

from unifkit.enumeration import standard_base
from unifkit.quniform import (CoveringFamily, QUniformity, check_proximity,
                              check_quniformity, hausdorff_quotient,
                              is_precompact, is_tukey_family,
                              is_uniformly_continuous, kunzi, pervin,
                              proximity_from, smirnov_proximity, symmetrize,
                              topology_from, tukey_to_weil, weil_to_tukey)
from unifkit.relations import FiniteSet, Relation
from unifkit.topology import FiniteTopology


@pytest.fixture
def sier():
    base = FiniteSet(["p0", "p1"])
    return FiniteTopology.from_opens(base, [[], ["p1"], ["p0", "p1"]])


def uniform_two_blocks():
    """Equivalence uniformity with classes {a, b} and {c}."""
    base = FiniteSet(["a", "b", "c"])
    e = Relation.from_pairs(base, [("a", "a"), ("b", "b"), ("c", "c"),
                                   ("a", "b"), ("b", "a")])
    return QUniformity(base, [e], symmetric_flag=True)


def test_check_accepts_transitive_entourage(sier):
    u = pervin(sier)
    rep = check_quniformity(u)
    assert rep.reflexive_ok and rep.cotransitive_ok
    assert rep.is_quasi_uniformity
    assert rep.symmetric_ok is None
    assert not rep.witnesses


def test_cotransitivity_failure_has_witness():
    base = FiniteSet(["a", "b", "c"])
    # a -> b -> c but no a -> c and nothing smaller available
    e = Relation.from_pairs(
        base, [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")])
    rep = check_quniformity(QUniformity(base, [e]))
    assert not rep.is_quasi_uniformity
    axioms = {w[0] for w in rep.witnesses}
    assert "cotransitivity" in axioms


def test_symmetry_claim_checked(sier):
    u = pervin(sier)
    claimed = QUniformity(u.base, u.basis, symmetric_flag=True)
    rep = check_quniformity(claimed)
    assert rep.symmetric_ok is False
    assert not rep.is_uniformity


def test_pervin_kunzi_share_the_specialization_core(sier):
    spec = sier.specialization()
    assert pervin(sier).e_min == spec
    assert kunzi(sier).e_min == spec


def test_topology_round_trip(sier):
    assert topology_from(pervin(sier)).open_masks == sier.open_masks
    assert topology_from(kunzi(sier)).open_masks == sier.open_masks


def test_weil_tukey_round_trip_preserves_core():
    u = uniform_two_blocks()
    fam = weil_to_tukey(u)
    assert is_tukey_family(fam).valid
    assert tukey_to_weil(fam).e_min == u.e_min


def test_weil_to_tukey_rejects_asymmetric(sier):
    with pytest.raises(ValueError):
        weil_to_tukey(pervin(sier))


def test_tukey_family_sampling_mode():
    # the indiscrete uniformity on four points admits every covering,
    # far past the exhaustive pairwise limit
    base = standard_base(4)
    u = QUniformity(base, [Relation.full(base)], symmetric_flag=True)
    fam = weil_to_tukey(u)
    rep = is_tukey_family(fam, sample=200, rng=random.Random(3))
    assert rep.valid
    assert not rep.exhaustive
    with pytest.raises(ValueError):
        is_tukey_family(fam)


def test_covering_family_star():
    base = FiniteSet(["a", "b", "c"])
    fam = CoveringFamily.from_coverings(
        base, [[["a", "b"], ["b", "c"]], [["a", "b", "c"]]])
    covs = fam.coverings
    assert frozenset({frozenset({"a", "b", "c"})}) in covs


def test_proximity_from_uniformity():
    u = uniform_two_blocks()
    p = proximity_from(u)
    assert p.near(["a"], ["b"])
    assert p.separated(["a"], ["c"])
    assert check_proximity(p).valid


def test_proximity_table_guard():
    base = standard_base(6)
    u = QUniformity(base, [Relation.diagonal(base)], symmetric_flag=True)
    with pytest.raises(ValueError):
        proximity_from(u).table()


def test_smirnov_proximity_sees_closures(sier):
    sm = smirnov_proximity(sier, ["p1"])
    assert sm.near(["p0"], ["p1"])
    assert sm.near(["p1"], ["p1"])
    assert check_proximity(sm).valid


def test_symmetrize_yields_uniformity(sier):
    s = symmetrize(pervin(sier))
    rep = check_quniformity(s)
    assert rep.is_uniformity


def test_hausdorff_quotient_collapses_core():
    u = uniform_two_blocks()
    q, mapping = hausdorff_quotient(u)
    assert q.e_min == Relation.diagonal(q.base)
    assert mapping["a"] == mapping["b"] == "a+b"
    assert mapping["c"] == "c"


def test_quotient_requires_symmetric(sier):
    with pytest.raises(ValueError):
        hausdorff_quotient(pervin(sier))


def test_uniformly_continuous_collapse():
    u = uniform_two_blocks()
    base = FiniteSet(["x"])
    point = QUniformity(base, [Relation.diagonal(base)], symmetric_flag=True)
    ok, _ = is_uniformly_continuous(
        {"a": "x", "b": "x", "c": "x"}, u, point)
    assert ok


def test_uniformly_continuous_witness():
    u = uniform_two_blocks()
    disc = QUniformity.discrete(u.base)
    ok, wit = is_uniformly_continuous(
        {"a": "a", "b": "b", "c": "c"}, u, disc)
    assert not ok
    assert set(wit) == {"a", "b"}


def test_finite_spaces_are_precompact():
    assert is_precompact(uniform_two_blocks())

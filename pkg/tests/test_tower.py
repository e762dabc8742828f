import pytest

from unifkit.enumeration import standard_base
from unifkit.quniform import QUniformity, pervin, symmetrize
from unifkit.relations import FiniteSet, Relation
from unifkit.topology import FiniteTopology
from unifkit.tower import (bornology_at_depth, check_uniform_continuity,
                           enumerate_threads, is_tukey_at_depth,
                           is_uniform_covering, level_covering, make_tower,
                           named_covering, puncture_cohomology,
                           puncture_quotient, verify_tower)


def finite_uniformity():
    base = FiniteSet(["a", "b", "c"])
    e = Relation.from_pairs(base, [("a", "a"), ("b", "b"), ("c", "c"),
                                   ("a", "b"), ("b", "a")])
    return QUniformity(base, [e], symmetric_flag=True)


def test_make_tower_argument_checks():
    with pytest.raises(ValueError):
        make_tower("padic_disk", 3)
    with pytest.raises(ValueError):
        make_tower("formal", 3)
    with pytest.raises(ValueError):
        make_tower("finite", 1)
    with pytest.raises(ValueError):
        make_tower("klein_bottle", 3)


def test_square_tower_verifies():
    rep = verify_tower(make_tower("metric_disk", 4))
    assert rep.ok
    assert tuple(rep.checked_levels) == (4,)
    assert "star=ok" in rep.lines()


def test_deep_tower_star_checks_every_level():
    rep = verify_tower(make_tower("metric_disk", 9))
    assert rep.ok
    assert tuple(rep.checked_levels) == tuple(range(4, 10))


def test_square_thread_classes():
    rep = enumerate_threads(make_tower("metric_disk", 4))
    assert rep.count_by_tag() == {"puncture": 1, "interior": 1020}


def test_sectorial_thread_classes_form_a_cycle():
    rep = enumerate_threads(make_tower("sectorial_disk", 3))
    assert rep.count_by_tag()["tangential"] == 8
    assert rep.tangential_cycle_ok()


def test_padic_leaf_classes_and_note():
    rep = enumerate_threads(make_tower("padic_disk", 4, p=2))
    assert rep.count_by_tag() == {"end": 16}
    assert any(line.startswith("note: ") for line in rep.lines())


def test_formal_branch_classes():
    rep = enumerate_threads(make_tower("formal", 4, p=3))
    assert rep.count_by_tag() == {"branch": 3}


def test_parent_chain():
    t = make_tower("metric_disk", 4)
    assert t.parent(4, (3, -2)) == (1, -1)
    assert t.ancestor(4, (3, -2), 1) == (0, -1)


def test_sector_covering_uniform_only_for_sectorial():
    sec = make_tower("sectorial_disk", 3)
    met = make_tower("metric_disk", 3)
    assert is_uniform_covering(sec, named_covering(sec, "sectors")).ok
    rep = is_uniform_covering(met, named_covering(met, "sectors"))
    assert not rep.ok
    assert rep.witness == "puncture b-1,-1"


def test_level_covering_is_uniform():
    met = make_tower("metric_disk", 3)
    assert is_uniform_covering(met, level_covering(met, 3)).ok


def test_residue_covering_uniform():
    t = make_tower("padic_disk", 3, p=3)
    assert is_uniform_covering(t, named_covering(t, "residues")).ok


def test_named_covering_parser():
    t = make_tower("metric_disk", 3)
    assert named_covering(t, "level:2").level == 2
    with pytest.raises(ValueError):
        named_covering(t, "moebius")


def test_tukey_refinement_levels():
    sec = make_tower("sectorial_disk", 4)
    rep = is_tukey_at_depth(sec, named_covering(sec, "sectors"))
    assert rep.ok
    assert rep.level == 2
    met = make_tower("metric_disk", 4)
    bad = is_tukey_at_depth(met, named_covering(met, "sectors"))
    assert not bad.ok
    assert bad.witness.endswith("b-1,-1")


def test_identity_continuity_needs_no_refinement():
    t = make_tower("metric_disk", 4)
    rep = check_uniform_continuity("identity", t, t)
    assert rep.ok
    assert [(m, n) for m, n, _ in rep.rows] == [(k, k) for k in range(1, 5)]


def test_identity_on_formal_towers_is_flat():
    t = make_tower("formal", 3, p=2)
    rep = check_uniform_continuity("identity", t, t)
    assert rep.ok
    assert all(n == 1 for _, n, _ in rep.rows)


def test_identity_rejects_mismatched_generators():
    a = make_tower("metric_disk", 3)
    b = make_tower("sectorial_disk", 3)
    with pytest.raises(ValueError):
        check_uniform_continuity("identity", a, b)


def test_chart_change_has_five_level_modulus():
    sec = make_tower("sectorial_disk", 6)
    met = make_tower("metric_disk", 6)
    rep = check_uniform_continuity("polar_to_cartesian", sec, met)
    rows = {m: n for m, n, _ in rep.rows}
    assert rows[1] == 6
    assert all(rows[m] is None for m in range(2, 7))


def test_reverse_chart_change_fails_at_the_origin():
    met = make_tower("metric_disk", 3)
    sec = make_tower("sectorial_disk", 3)
    rep = check_uniform_continuity("cartesian_to_polar", met, sec)
    assert not rep.ok
    assert all(n is None and w.endswith(":b-1,-1") for _, n, w in rep.rows)


def test_bornology_golden_triangle():
    t = make_tower("metric_disk", 5)
    rep = bornology_at_depth(t, 3, [(2, 2), (2, 3), (3, 3)])
    assert rep.lines() == [
        "precompact=true", "bounded=true", "meets[1]=8", "meets[2]=9",
        "meets[3]=15", "meets[4]=45", "meets[5]=128", "Z=b2,2",
        "iterations=2"]


def test_bornology_separated_seeds():
    t = make_tower("metric_disk", 5)
    rep = bornology_at_depth(t, 3, [(-8, -8), (7, 7)])
    assert len(rep.z) == 2


def test_puncture_quotients():
    met = make_tower("metric_disk", 3)
    top, labels = puncture_quotient(met)
    assert len(top.base) == 1 and labels == ("p0",)
    sec = make_tower("sectorial_disk", 2)
    top, _ = puncture_quotient(sec)
    assert len(top.base) == 8
    sheaf_betti, complex_betti = puncture_cohomology(sec)
    assert tuple(sheaf_betti) == (1, 1)
    assert tuple(complex_betti) == (1, 1)


def test_finite_embedding_tower():
    t = make_tower("finite", 1, uniformity=finite_uniformity())
    assert verify_tower(t).ok
    names = {t.block_name(1, b) for b in t.gen.block_ids(1)}
    assert names == {"ea", "ec"}

import random

import pytest

from unifkit.relations import (FiniteSet, Relation, all_relations,
                               intersect_all, random_relation)


@pytest.fixture
def base():
    return FiniteSet(["a", "b", "c"])


def test_labels_and_masks(base):
    assert base.labels == ("a", "b", "c")
    assert base.index("b") == 1
    assert base.mask_of(["a", "c"]) == 0b101
    assert base.labels_of(0b110) == frozenset({"b", "c"})


def test_subsets_counts(base):
    assert len(list(base.subsets())) == 8
    assert len(list(base.subsets(nonempty=True))) == 7


def test_from_pairs_and_pairs_round_trip(base):
    r = Relation.from_pairs(base, [("a", "b"), ("b", "c"), ("a", "a")])
    assert set(r.pairs) == {("a", "b"), ("b", "c"), ("a", "a")}


def test_compose_is_relational_composition(base):
    r = Relation.from_pairs(base, [("a", "b")])
    s = Relation.from_pairs(base, [("b", "c")])
    assert set(r.compose(s).pairs) == {("a", "c")}
    assert not set(s.compose(r).pairs)


def test_inverse_swaps(base):
    r = Relation.from_pairs(base, [("a", "b"), ("a", "c")])
    assert set(r.inverse().pairs) == {("b", "a"), ("c", "a")}


def test_diagonal_and_full(base):
    d = Relation.diagonal(base)
    f = Relation.full(base)
    assert d.contains_diagonal() and d.is_transitive() and d.is_antisymmetric()
    assert f.is_equivalence()
    assert d.compose(f) == f


def test_closures(base):
    r = Relation.from_pairs(base, [("a", "b"), ("b", "c")])
    t = r.reflexive_transitive_closure()
    assert t.is_preorder()
    assert ("a", "c") in set(t.pairs)
    e = (r | r.inverse()).reflexive_transitive_closure()
    assert e.is_equivalence()
    assert e == Relation.full(base)


def test_predicates_disagree_on_strict_order(base):
    r = Relation.from_pairs(base, [("a", "b")])
    assert not r.contains_diagonal()
    assert r.is_transitive()
    assert not r.is_symmetric()


def test_intersect_all(base):
    r = Relation.from_pairs(base, [("a", "a"), ("a", "b"), ("b", "b"),
                                   ("c", "c")])
    s = Relation.from_pairs(base, [("a", "a"), ("b", "b"), ("c", "c"),
                                   ("b", "a")])
    m = intersect_all([r, s])
    assert m == Relation.diagonal(base)


def test_all_relations_count():
    two = FiniteSet(["x", "y"])
    assert sum(1 for _ in all_relations(two)) == 16


def test_random_relation_is_seed_deterministic(base):
    a = random_relation(base, random.Random(7))
    b = random_relation(base, random.Random(7))
    assert a == b


def test_subset_order(base):
    small = Relation.from_pairs(base, [("a", "b")])
    big = small | Relation.diagonal(base)
    assert small.is_subset(big)
    assert not big.is_subset(small)

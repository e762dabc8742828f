from unifkit.enumeration import (all_equivalences, all_partial_orders,
                                 all_preorders, all_topologies,
                                 dense_subsets, standard_base)
from unifkit.relations import FiniteSet, Relation
from unifkit.topology import FiniteTopology


def chain3():
    base = FiniteSet(["a", "b", "c"])
    r = Relation.from_pairs(base, [("a", "b"), ("b", "c")])
    return FiniteTopology.from_preorder(r.reflexive_transitive_closure())


def test_from_opens_matches_preorder_dictionary():
    base = FiniteSet(["p", "q"])
    top = FiniteTopology.from_opens(base, [[], ["q"], ["p", "q"]])
    r = Relation.from_pairs(base, [("p", "p"), ("q", "q"), ("p", "q")])
    assert top.open_masks == FiniteTopology.from_preorder(r).open_masks


def test_interior_closure_duality():
    top = chain3()
    full = 0b111
    for m in range(8):
        assert top.interior_mask(m) == full & ~top.closure_mask(full & ~m)


def test_minimal_open_of_chain():
    top = chain3()
    # a sees everything above it, c only itself
    assert top.minimal_open("a") == frozenset({"a", "b", "c"})
    assert top.minimal_open("c") == frozenset({"c"})


def test_specialization_round_trip():
    base = standard_base(3)
    for r in all_preorders(base):
        assert FiniteTopology.from_preorder(r).specialization() == r


def test_t0_iff_antisymmetric():
    base = standard_base(3)
    for r in all_preorders(base):
        top = FiniteTopology.from_preorder(r)
        assert top.is_t0() == r.is_antisymmetric()


def test_hasse_edges_of_chain():
    top = chain3()
    assert set(top.hasse_edges()) == {(0, 1), (1, 2)}


def test_discrete_indiscrete():
    base = standard_base(2)
    assert len(FiniteTopology.discrete(base).open_masks) == 4
    assert len(FiniteTopology.indiscrete(base).open_masks) == 2


def test_is_dense():
    top = chain3()
    assert top.is_dense(["c"])
    assert not top.is_dense(["a"])


def test_dense_subsets_of_chain():
    # any subset containing the generic point c is dense
    ds = dense_subsets(chain3())
    assert frozenset({"c"}) in ds
    assert len(ds) == 4


def test_enumeration_counts():
    assert len(all_preorders(standard_base(1))) == 1
    assert len(all_preorders(standard_base(2))) == 4
    assert len(all_preorders(standard_base(3))) == 29
    assert len(all_preorders(standard_base(4))) == 355
    assert len(all_partial_orders(standard_base(5))) == 4231
    assert len(all_equivalences(standard_base(4))) == 15
    assert len(all_topologies(standard_base(3))) == 29

import random
from fractions import Fraction

import pytest

from unifkit.enumeration import standard_base
from unifkit.gtop import (DensePair, GCoveringSystem, PosetSheaf,
                          cech_adequate, cech_cohomology, check_gluing,
                          check_grothendieck, check_l7, constant_sheaf,
                          finest_g_covering, pseudo_circle, random_sheaf,
                          sheaf_cohomology, sierpinski_pair,
                          simplicial_cohomology, uniform_g_topology)
from unifkit.relations import FiniteSet, Relation
from unifkit.topology import FiniteTopology


def test_sierpinski_orientation():
    pair = sierpinski_pair()
    assert pair.x_labels == frozenset({"p1"})
    assert pair.xhat.is_dense(["p1"])


def test_trace_opens():
    pair = sierpinski_pair()
    assert set(pair.trace_open_masks()) == {0, pair.x_mask}


def test_u_check_of_the_dense_point():
    pair = sierpinski_pair()
    # the largest open tracing into {p1} is the whole completion
    assert pair.u_check(("p1",)) == frozenset({"p0", "p1"})


def test_u_check_rejects_non_trace_open():
    base = FiniteSet(["p0", "p1"])
    top = FiniteTopology.from_opens(base, [[], ["p1"], ["p0", "p1"]])
    pair = DensePair(top, ["p0", "p1"])
    with pytest.raises(ValueError):
        pair.u_check(("p0",))


def test_l7_on_sierpinski():
    rep = check_l7(sierpinski_pair())
    assert rep.items1to5_ok
    assert not rep.items[7]


def test_l7_on_full_pseudo_circle():
    rep = check_l7(pseudo_circle(True))
    assert rep.items1to5_ok


def test_grothendieck_axioms_hold():
    for pair in (sierpinski_pair(), pseudo_circle(True), pseudo_circle(False)):
        rep = check_grothendieck(uniform_g_topology(pair, 2))
        assert rep.valid, pair.x_labels


def test_g_covering_detection():
    pair = pseudo_circle(False)
    base = pair.xhat.base
    g = GCoveringSystem(pair)
    both = [base.mask_of(["a"]), base.mask_of(["b"])]
    # u-checks of the two singletons miss the closed points
    assert not g.is_g_covering(pair.x_mask, both)
    assert g.is_g_covering(pair.x_mask, [pair.x_mask])


def test_constant_sheaf_on_circle_model():
    pair = pseudo_circle(True)
    f = constant_sheaf(pair.xhat)
    assert tuple(sheaf_cohomology(f)) == (1, 1)
    assert tuple(simplicial_cohomology(pair.xhat)) == (1, 1)


def test_cech_matches_on_adequate_covering():
    pair = pseudo_circle(True)
    members = finest_g_covering(pair)
    assert cech_adequate(pair, members)
    f = constant_sheaf(pair.xhat)
    assert tuple(cech_cohomology(pair, f, members)) == (1, 1)


def test_half_circle_finest_covering_is_degenerate():
    pair = pseudo_circle(False)
    members = finest_g_covering(pair)
    assert not cech_adequate(pair, members)


def test_cech_requires_a_distinguished_covering():
    pair = pseudo_circle(False)
    base = pair.xhat.base
    f = constant_sheaf(pair.xhat)
    with pytest.raises(ValueError):
        cech_cohomology(pair, f, [base.mask_of(["a"])])


def test_sheaf_shape_validation():
    base = FiniteSet(["x", "y"])
    top = FiniteTopology.from_opens(base, [[], ["y"], ["x", "y"]])
    with pytest.raises(ValueError):
        PosetSheaf(top, (1, 1), {})  # missing the edge matrix
    PosetSheaf(top, (1, 1), {(0, 1): ((Fraction(1),),)})


def test_gluing_on_constant_sheaf():
    pair = sierpinski_pair()
    f = constant_sheaf(pair.xhat)
    ok, _ = check_gluing(pair, f)
    assert ok


def test_random_sheaf_determinism_and_dims():
    top = pseudo_circle(True).xhat
    a = random_sheaf(top, random.Random(11))
    b = random_sheaf(top, random.Random(11))
    assert a.dims == b.dims and a.edge_mats == b.edge_mats
    assert all(d <= 2 for d in a.dims)


def test_euler_characteristic_is_chain_count():
    # sum of (-1)^k betti equals the alternating chain count
    top = pseudo_circle(True).xhat
    betti = sheaf_cohomology(constant_sheaf(top))
    chi = sum((-1) ** k * d for k, d in enumerate(betti))
    chains = top.strict_chains()
    assert chi == sum((-1) ** (len(c) - 1) for c in chains)

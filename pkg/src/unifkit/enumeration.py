"""Exhaustive generators for small structures.

These back the desk-scale checks: every preorder, poset, topology,
equivalence or covering on a handful of points.  Counts for sanity:
355 topologies on 4 labeled points, 4231 posets on 5, Bell(4) = 15
equivalences, 32297 coverings of a 4-set.
"""

from __future__ import annotations

import itertools

from .relations import FiniteSet, Relation
from .topology import FiniteTopology


def _transitive_rows(rows):
    for r in rows:
        m, acc = r, 0
        while m:
            low = m & -m
            acc |= rows[low.bit_length() - 1]
            m ^= low
        if acc & ~r:
            return False
    return True


def all_preorders(base):
    """Every preorder on base. 2^(n^2-n) candidates get filtered, so
    n above 4 is not realistic here."""
    n = len(base)
    others = [[m for m in range(1 << n) if m >> i & 1] for i in range(n)]
    out = []
    for rows in itertools.product(*others):
        if _transitive_rows(rows):
            out.append(Relation(base, rows))
    return out


def all_partial_orders(base):
    """Every partial order on base, built from the 3^(n(n-1)/2)
    orientation assignments on unordered pairs. Fine up to n = 5."""
    n = len(base)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    diag = [1 << i for i in range(n)]
    out = []
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        rows = diag[:]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                rows[i] |= 1 << j
            elif c == 2:
                rows[j] |= 1 << i
        if _transitive_rows(rows):
            out.append(Relation(base, tuple(rows)))
    return out


def all_topologies(base):
    """Every topology on base, via the preorder dictionary."""
    return [FiniteTopology.from_preorder(r) for r in all_preorders(base)]


def all_equivalences(base):
    """Every equivalence relation, one per set partition (restricted
    growth strings)."""
    n = len(base)
    out = []

    def grow(assign, nblocks):
        if len(assign) == n:
            rows = [0] * n
            for i, bi in enumerate(assign):
                for j, bj in enumerate(assign):
                    if bi == bj:
                        rows[i] |= 1 << j
            out.append(Relation(base, rows))
            return
        for b in range(nblocks + 1):
            grow(assign + [b], max(nblocks, b + 1))
    if n == 0:
        return [Relation(base, [])]
    grow([0], 1)
    return out


MAX_COVERING_BASE = 4


def covering_universe(base):
    """All coverings of base as family bitmasks over the list of nonempty
    blocks. Returns (blocks, families) where blocks[k] is the block mask
    selected by bit k and families lists every covering family."""
    n = len(base)
    if n > MAX_COVERING_BASE:
        raise ValueError(
            "covering families are only materialized for |X| <= %d" % MAX_COVERING_BASE
        )
    blocks = list(range(1, 1 << n))
    full = (1 << n) - 1
    nb = len(blocks)
    # union of selected blocks, lowbit DP
    union = [0] * (1 << nb)
    for f in range(1, 1 << nb):
        low = f & -f
        union[f] = union[f ^ low] | blocks[low.bit_length() - 1]
    families = [f for f in range(1, 1 << nb) if union[f] == full]
    return blocks, families


def all_coverings(base):
    """Every covering of base as a frozenset of frozensets."""
    blocks, families = covering_universe(base)
    out = []
    for f in families:
        cov = []
        m = f
        while m:
            low = m & -m
            cov.append(base.labels_of(blocks[low.bit_length() - 1]))
            m ^= low
        out.append(frozenset(cov))
    return out


def dense_subsets(top):
    """Subsets of the base whose closure is everything."""
    out = []
    for m in range(1 << len(top.base)):
        if top.closure_mask(m) == (1 << len(top.base)) - 1:
            out.append(top.base.labels_of(m))
    return out


def standard_base(n):
    """x0, x1, ... labels, the default test bench."""
    return FiniteSet("x%d" % i for i in range(n))

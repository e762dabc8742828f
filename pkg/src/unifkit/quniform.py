"""Entourage filters on finite sets and their covering-family twins.

A QUniformity is a finite basis of relations plus a symmetry claim.
On a finite set the generated filter is principal, so every axiom
reduces to a statement about the smallest entourage E_min, and every
check here is exact and total.  The covering side (Tukey families) is
materialized only on very small sets; the translation in both
directions preserves E_min, which is what the round-trip tests pin.

Orientation: (x, y) in E reads "y is E-close to x", so E(x) is a
neighborhood of x and opens are the V with E_min(x) inside V for all
x in V.
"""

from __future__ import annotations

import itertools

from .relations import FiniteSet, Relation, intersect_all
from .topology import FiniteTopology
from .enumeration import covering_universe, MAX_COVERING_BASE


class QUniformity:
    """Finite entourage basis with a symmetry claim.

    The basis is deduplicated and kept in a deterministic order.
    symmetric_flag records intent; check_quniformity confirms or
    refutes it.
    """

    __slots__ = ("base", "basis", "symmetric_flag", "_e_min")

    def __init__(self, base, basis, symmetric_flag=False):
        basis = tuple(sorted(set(basis), key=lambda r: r.rows))
        if not basis:
            raise ValueError("entourage basis must be nonempty")
        for e in basis:
            if e.base != base:
                raise ValueError("incompatible base sets")
        self.base = base
        self.basis = basis
        self.symmetric_flag = bool(symmetric_flag)
        self._e_min = None

    @classmethod
    def discrete(cls, base):
        return cls(base, [Relation.diagonal(base)], symmetric_flag=True)

    @classmethod
    def indiscrete(cls, base):
        return cls(base, [Relation.full(base)], symmetric_flag=True)

    @property
    def e_min(self):
        """Intersection of the basis, the smallest entourage of the
        principal filter."""
        if self._e_min is None:
            self._e_min = intersect_all(self.basis)
        return self._e_min

    def __eq__(self, other):
        return (
            isinstance(other, QUniformity)
            and self.base == other.base
            and self.basis == other.basis
            and self.symmetric_flag == other.symmetric_flag
        )

    def __hash__(self):
        return hash((self.base, self.basis, self.symmetric_flag))

    def __repr__(self):
        return "QUniformity(%r, %d entourages, symmetric=%r)" % (
            self.base.labels, len(self.basis), self.symmetric_flag)


class QUniformReport:
    """Outcome of check_quniformity. Witnesses are (axiom, entourage,
    pair) triples pointing at a concrete failure."""

    __slots__ = ("reflexive_ok", "cotransitive_ok", "symmetric_ok",
                 "is_quasi_uniformity", "is_uniformity", "e_min", "witnesses")

    def __init__(self, reflexive_ok, cotransitive_ok, symmetric_ok,
                 is_quasi_uniformity, is_uniformity, e_min, witnesses):
        self.reflexive_ok = reflexive_ok
        self.cotransitive_ok = cotransitive_ok
        self.symmetric_ok = symmetric_ok
        self.is_quasi_uniformity = is_quasi_uniformity
        self.is_uniformity = is_uniformity
        self.e_min = e_min
        self.witnesses = tuple(witnesses)


def check_quniformity(u):
    """Validate the filter axioms.

    Reflexivity is per basis element; cotransitivity (some entourage
    composes into any given one) collapses to transitivity of E_min
    because the filter is principal; the symmetry claim collapses to
    symmetry of E_min the same way.
    """
    witnesses = []
    e_min = u.e_min
    labs = u.base.labels

    reflexive_ok = True
    for e in u.basis:
        for i, r in enumerate(e.rows):
            if not r >> i & 1:
                reflexive_ok = False
                witnesses.append(("reflexivity", e, (labs[i], labs[i])))
                break
        if not reflexive_ok:
            break

    cotransitive_ok = True
    sq = e_min.compose(e_min)
    for i, r in enumerate(sq.rows):
        bad = r & ~e_min.rows[i]
        if bad:
            j = (bad & -bad).bit_length() - 1
            culprit = next(e for e in u.basis if not e.rows[i] >> j & 1)
            witnesses.append(("cotransitivity", culprit, (labs[i], labs[j])))
            cotransitive_ok = False
            break

    symmetric_ok = None
    if u.symmetric_flag:
        symmetric_ok = True
        inv = e_min.inverse()
        for i, r in enumerate(e_min.rows):
            bad = r & ~inv.rows[i]
            if bad:
                j = (bad & -bad).bit_length() - 1
                culprit = next(e for e in u.basis if not e.rows[j] >> i & 1)
                witnesses.append(("symmetry", culprit, (labs[j], labs[i])))
                symmetric_ok = False
                break

    is_quasi = reflexive_ok and cotransitive_ok
    is_unif = bool(is_quasi and u.symmetric_flag and symmetric_ok)
    return QUniformReport(reflexive_ok, cotransitive_ok, symmetric_ok,
                          is_quasi, is_unif, e_min, witnesses)


# covering side


class CoveringFamily:
    """A family of coverings of a small base set.

    Coverings live as bitmask families over the list of nonempty blocks,
    the label view being derived.  Only defined for |X| <= 4; the family
    of all coverings of a 4-set already has 32297 members.
    """

    __slots__ = ("base", "blocks", "families")

    def __init__(self, base, family_masks):
        if len(base) > MAX_COVERING_BASE:
            raise ValueError(
                "covering families are only materialized for |X| <= %d"
                % MAX_COVERING_BASE)
        self.base = base
        self.blocks = tuple(range(1, 1 << len(base)))
        self.families = frozenset(family_masks)

    @classmethod
    def from_coverings(cls, base, coverings):
        masks = []
        for cov in coverings:
            f = 0
            total = 0
            for block in cov:
                bm = base.mask_of(block)
                if bm == 0:
                    raise ValueError("empty block in covering")
                f |= 1 << (bm - 1)
                total |= bm
            if total != (1 << len(base)) - 1:
                raise ValueError("family member does not cover the base set")
            masks.append(f)
        return cls(base, masks)

    def covering_from_mask(self, f):
        out = []
        m = f
        while m:
            low = m & -m
            out.append(self.base.labels_of(low.bit_length() - 1 + 1))
            m ^= low
        return frozenset(out)

    def mask_from_covering(self, cov):
        f = 0
        for block in cov:
            bm = self.base.mask_of(block)
            if bm == 0:
                raise ValueError("empty block in covering")
            f |= 1 << (bm - 1)
        return f

    @property
    def coverings(self):
        return tuple(self.covering_from_mask(f) for f in sorted(self.families))

    def __len__(self):
        return len(self.families)

    def __contains__(self, cov):
        return self.mask_from_covering(cov) in self.families

    def __repr__(self):
        return "CoveringFamily(%r, %d coverings)" % (self.base.labels, len(self.families))


def star(cov, block):
    """Union of the members of cov meeting block. block must itself be
    a member."""
    cov = set(cov)
    block = frozenset(block)
    if block not in cov:
        raise ValueError("block is not a member of the covering")
    out = set()
    for a in cov:
        if a & block:
            out |= a
    return frozenset(out)


def _star_refines(fine, coarse, base):
    """Does fine star-refine coarse: star(fine, B) inside a member of
    coarse for every member B of fine. Masks in, masks out."""
    fine_blocks = []
    m = fine
    while m:
        low = m & -m
        fine_blocks.append(low.bit_length() - 1 + 1)
        m ^= low
    coarse_blocks = []
    m = coarse
    while m:
        low = m & -m
        coarse_blocks.append(low.bit_length() - 1 + 1)
        m ^= low
    for b in fine_blocks:
        st = 0
        for a in fine_blocks:
            if a & b:
                st |= a
        if not any(st & ~c == 0 for c in coarse_blocks):
            return False
    return True


def weil_to_tukey(u):
    """Entourage filter to covering family.

    Materializes every covering refined by the neighborhood covering of
    E_min (guard |X| <= 4).  Input must be a validated uniformity.
    """
    if not u.symmetric_flag:
        raise ValueError("weil_to_tukey requires symmetric_flag")
    rep = check_quniformity(u)
    if not rep.is_uniformity:
        axiom = rep.witnesses[0][0] if rep.witnesses else "unknown"
        raise ValueError("not a uniformity (%s fails)" % axiom)
    blocks, families = covering_universe(u.base)
    n = len(u.base)
    # S_i = family-bit set of blocks containing E_min(i)
    s = []
    for i in range(n):
        need = u.e_min.rows[i]
        acc = 0
        for k, bm in enumerate(blocks):
            if need & ~bm == 0:
                acc |= 1 << k
        s.append(acc)
    selected = [f for f in families if all(f & si for si in s)]
    return CoveringFamily(u.base, selected)


def tukey_to_weil(t):
    """Covering family to entourage filter, one symmetric entourage
    per covering (union of squares of its blocks)."""
    if not t.families:
        raise ValueError("empty covering family")
    base = t.base
    n = len(base)
    rels = set()
    for f in t.families:
        rows = [0] * n
        m = f
        while m:
            low = m & -m
            bm = low.bit_length() - 1 + 1
            for i in range(n):
                if bm >> i & 1:
                    rows[i] |= bm
            m ^= low
        rels.add(Relation(base, rows))
    return QUniformity(base, rels, symmetric_flag=True)


class TukeyReport:
    __slots__ = ("valid", "all_coverings_ok", "meet_ok", "coarsening_ok",
                 "star_ok", "witnesses", "exhaustive")

    def __init__(self, all_coverings_ok, meet_ok, coarsening_ok, star_ok,
                 witnesses, exhaustive):
        self.all_coverings_ok = all_coverings_ok
        self.meet_ok = meet_ok
        self.coarsening_ok = coarsening_ok
        self.star_ok = star_ok
        self.valid = all_coverings_ok and meet_ok and coarsening_ok and star_ok
        self.witnesses = tuple(witnesses)
        self.exhaustive = exhaustive


def _meet_mask(f1, f2):
    out = 0
    m1 = f1
    while m1:
        l1 = m1 & -m1
        b1 = l1.bit_length() - 1 + 1
        m2 = f2
        while m2:
            l2 = m2 & -m2
            b2 = l2.bit_length() - 1 + 1
            inter = b1 & b2
            if inter:
                out |= 1 << (inter - 1)
            m2 ^= l2
        m1 ^= m1 & -m1
    return out


def is_tukey_family(t, sample=None, rng=None):
    """Check the covering-family axioms.

    Families small enough get the exhaustive pairwise treatment.  Large
    ones (weil_to_tukey output can have tens of thousands of members)
    need sample > 0 and an rng; meet-stability and star-refinement are
    then spot-checked while coarsening-closure stays exhaustive, one
    added block at a time.
    """
    base = t.base
    full = (1 << len(base)) - 1
    blocks, _ = covering_universe(base)
    fams = sorted(t.families)
    witnesses = []

    all_cov = True
    for f in fams:
        u = 0
        m = f
        while m:
            low = m & -m
            u |= low.bit_length() - 1 + 1
            m ^= low
        if u != full:
            all_cov = False
            witnesses.append(("covers", f))
            break

    exhaustive = len(fams) * len(fams) <= 250_000
    if not exhaustive and not sample:
        raise ValueError(
            "family too large for exhaustive meet check; pass sample and rng")

    fam_set = t.families
    meet_ok = True
    if exhaustive:
        pair_iter = itertools.product(fams, fams)
    else:
        pair_iter = ((rng.choice(fams), rng.choice(fams)) for _ in range(sample))
    for f1, f2 in pair_iter:
        if _meet_mask(f1, f2) not in fam_set:
            meet_ok = False
            witnesses.append(("meet", f1, f2))
            break

    # adding any block keeps a covering a covering and only coarsens it
    coarsening_ok = True
    nb = len(blocks)
    for f in fams:
        for k in range(nb):
            g = f | 1 << k
            if g not in fam_set:
                coarsening_ok = False
                witnesses.append(("coarsening", f, blocks[k]))
                break
        if not coarsening_ok:
            break

    # star-refinement: candidates are the finest members
    def weight(f):
        w = 0
        m = f
        while m:
            low = m & -m
            w += (low.bit_length() - 1 + 1).bit_count()
            m ^= low
        return w

    cands = sorted(fams, key=weight)[:200]
    star_ok = True
    if exhaustive:
        targets = fams
    else:
        targets = [rng.choice(fams) for _ in range(min(sample, 500))]
    for f in targets:
        if not any(_star_refines(c, f, base) for c in cands):
            star_ok = False
            witnesses.append(("star", f))
            break

    return TukeyReport(all_cov, meet_ok, coarsening_ok, star_ok, witnesses,
                       exhaustive)


# proximity side


class Proximity:
    """Nearness predicate on subset pairs, always evaluated lazily."""

    __slots__ = ("base", "_near", "source")

    def __init__(self, base, near_fn, source=""):
        self.base = base
        self._near = near_fn
        self.source = source

    def near(self, a, b):
        a = frozenset(a)
        b = frozenset(b)
        if not a or not b:
            return False
        return self._near(a, b)

    def separated(self, a, b):
        return not self.near(a, b)

    def table(self):
        """Sorted list of near pairs over nonempty subsets. Guarded."""
        if len(self.base) > 5:
            raise ValueError("proximity tables are only printed for |X| <= 5")
        subs = sorted(self.base.subsets(nonempty=True),
                      key=lambda s: (len(s), sorted(s)))
        out = []
        for a in subs:
            for b in subs:
                if self.near(a, b):
                    out.append((a, b))
        return out


def proximity_from(u):
    """Nearness induced by an entourage filter: A near B when some
    entourage pair crosses from A to B, which for a principal filter
    means (A x B) meets E_min."""
    e_min = u.e_min
    base = u.base

    def near(a, b):
        bm = base.mask_of(b)
        for x in a:
            if e_min.rows[base.index(x)] & bm:
                return True
        return False

    return Proximity(base, near, source="entourage")


def nu_neighborhood(p, a, b):
    """A is a nu-neighborhood-interior of B: A not near the complement
    of B."""
    comp = frozenset(p.base.labels) - frozenset(b)
    return not p.near(a, comp)


class ProximityReport:
    __slots__ = ("intersection_ok", "additive_ok", "empty_ok", "valid",
                 "witnesses")

    def __init__(self, intersection_ok, additive_ok, empty_ok, witnesses):
        self.intersection_ok = intersection_ok
        self.additive_ok = additive_ok
        self.empty_ok = empty_ok
        self.valid = intersection_ok and additive_ok and empty_ok
        self.witnesses = tuple(witnesses)


def check_proximity(p):
    """Axioms over all subset pairs (so |X| <= 5 in practice):
    intersecting sets are near, nearness is additive in both slots,
    nothing is near the empty set."""
    base = p.base
    subs = list(base.subsets())
    witnesses = []
    intersection_ok = True
    additive_ok = True
    empty_ok = True
    for a in subs:
        if p.near(a, frozenset()) or p.near(frozenset(), a):
            empty_ok = False
            witnesses.append(("empty", a))
            break
    for a in subs:
        for b in subs:
            if a & b and not p.near(a, b):
                intersection_ok = False
                witnesses.append(("intersection", a, b))
                break
        if not intersection_ok:
            break
    for a in subs:
        for a2 in subs:
            u = a | a2
            for b in subs:
                lhs = p.near(u, b)
                rhs = p.near(a, b) or p.near(a2, b)
                if lhs != rhs:
                    additive_ok = False
                    witnesses.append(("additivity", a, a2, b))
                    break
                lhs = p.near(b, u)
                rhs = p.near(b, a) or p.near(b, a2)
                if lhs != rhs:
                    additive_ok = False
                    witnesses.append(("additivity", b, a, a2))
                    break
            if not additive_ok:
                break
        if not additive_ok:
            break
    return ProximityReport(intersection_ok, additive_ok, empty_ok, witnesses)


def strong_axiom(p):
    """The bracketed extra axiom, checked as a whole-structure property:
    whenever A is not near B some C splits them (A not near C and B not
    near the complement of C).  Returns (holds, witness)."""
    base = p.base
    labels = frozenset(base.labels)
    subs = list(base.subsets())
    for a in base.subsets(nonempty=True):
        for b in base.subsets(nonempty=True):
            if p.near(a, b):
                continue
            if not any(not p.near(a, c) and not p.near(b, labels - c)
                       for c in subs):
                return False, (a, b)
    return True, None


def smirnov_proximity(top, dense_labels):
    """Nearness seen from inside a dense subset of a finite (hence
    compact) space: closures taken upstairs must meet."""
    dense_labels = frozenset(dense_labels)
    if not top.is_dense(dense_labels):
        raise ValueError("subset is not dense")
    sub = FiniteSet(lab for lab in top.base.labels if lab in dense_labels)

    def near(a, b):
        return bool(top.closure(a) & top.closure(b))

    return Proximity(sub, near, source="compactification")


# topology and the standard quasi-uniformities


def topology_from(u):
    """Opens are the E_min-stable sets."""
    n = len(u.base)
    rows = u.e_min.rows
    masks = []
    for v in range(1 << n):
        ok = True
        for i in range(n):
            if v >> i & 1 and rows[i] & ~v:
                ok = False
                break
        if ok:
            masks.append(v)
    return FiniteTopology(u.base, masks, validate=False)


def pervin(top):
    """One entourage per open: leave the open where it is, send the rest
    anywhere."""
    base = top.base
    n = len(base)
    full = (1 << n) - 1
    rels = set()
    for um in top.open_masks:
        rows = [um if um >> i & 1 else full for i in range(n)]
        rels.add(Relation(base, rows))
    return QUniformity(base, rels, symmetric_flag=False)


def kunzi(top):
    """Pervin refined by a compact (here: arbitrary) kernel inside each
    open: points outside the kernel move freely."""
    base = top.base
    n = len(base)
    full = (1 << n) - 1
    rels = set()
    for um in top.open_masks:
        # all kernels K inside the open
        sub = um
        k = sub
        while True:
            rows = [um if k >> i & 1 else full for i in range(n)]
            rels.add(Relation(base, rows))
            if k == 0:
                break
            k = (k - 1) & sub
    return QUniformity(base, rels, symmetric_flag=False)


def symmetrize(u):
    """Meet each entourage with its inverse. The result claims symmetry."""
    return QUniformity(u.base, [e.intersection(e.inverse()) for e in u.basis],
                       symmetric_flag=True)


def hausdorff_quotient(u):
    """Collapse the E_min-equivalence classes of a validated uniformity.

    Returns (quotient, mapping) with class labels joining the member
    labels by '+'.
    """
    if not u.symmetric_flag:
        raise ValueError("hausdorff_quotient needs symmetric_flag")
    rep = check_quniformity(u)
    if not rep.is_uniformity:
        raise ValueError("hausdorff_quotient needs a validated uniformity")
    e = rep.e_min
    base = u.base
    seen = {}
    classes = []
    for i, lab in enumerate(base.labels):
        m = e.rows[i]
        if m not in seen:
            seen[m] = len(classes)
            classes.append(m)
    cls_labels = ["+".join(sorted(base.labels_of(m))) for m in classes]
    qbase = FiniteSet(cls_labels)
    mapping = {}
    for i, lab in enumerate(base.labels):
        mapping[lab] = cls_labels[seen[e.rows[i]]]
    qrels = set()
    for ent in u.basis:
        pairs = set()
        for (a, b) in ent.pairs:
            pairs.add((mapping[a], mapping[b]))
        qrels.add(Relation.from_pairs(qbase, pairs))
    return QUniformity(qbase, qrels, symmetric_flag=True), mapping


def is_uniformly_continuous(f, ux, uy):
    """f maps labels of ux.base to labels of uy.base. Principal filters
    again: the one condition is that f x f sends E_min into E_min.
    Returns (ok, witness_pair)."""
    xl = set(ux.base.labels)
    if set(f.keys()) != xl:
        raise ValueError("map must be defined on exactly the source labels")
    for v in f.values():
        if v not in uy.base:
            raise ValueError("map must send every point to a target label")
    ex = ux.e_min
    ey = uy.e_min
    for (a, b) in sorted(ex.pairs):
        if (f[a], f[b]) not in ey:
            return False, (a, b)
    return True, None


def is_precompact(u):
    """Always true on a finite set; the content is the minimal witness
    Z with E_min(Z) = X."""
    base = u.base
    n = len(base)
    full = (1 << n) - 1
    rows = u.e_min.rows
    for size in range(n + 1):
        for comb in itertools.combinations(range(n), size):
            acc = 0
            for i in comb:
                acc |= rows[i]
            if acc == full:
                return True, frozenset(base.labels[i] for i in comb)
    return True, frozenset(base.labels)


def canonical_bornology(u):
    """Bounded = absorbed by finitely many E_min-balls. On a finite set
    every subset is bounded; the witness (Z, n) is minimized in |Z| then
    n. Guarded for |X| <= 10."""
    base = u.base
    n = len(base)
    if n > 10:
        raise ValueError("bornology tables are only built for |X| <= 10")
    e = u.e_min
    out = {}
    for a in base.subsets():
        if not a:
            out[a] = (frozenset(), 1)
            continue
        found = None
        for size in range(1, n + 1):
            for comb in itertools.combinations(sorted(base.labels), size):
                z = frozenset(comb)
                cur = z
                for steps in range(1, n + 1):
                    cur = e.image(cur)
                    if a <= cur:
                        found = (z, steps)
                        break
                if found:
                    break
            if found:
                break
        out[a] = found
    return out

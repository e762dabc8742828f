"""Dense pairs, the largest-trace-open calculus, uniform G-coverings,
and sheaf cohomology on finite completions.

A DensePair is a finite space Xhat with a chosen dense subset X.  For
each open U of the subspace, check(U) is the union of the opens of
Xhat whose trace on X is exactly U; hat(U) is the closure of U.  A
family of opens of U is a distinguished covering of U when the member
reaches (union of ambient opens whose trace on U sits inside the
member) cover hat(U); over the full trace the reach of a member is
just its check-open, so both descriptions agree there.  The whole
calculus is exhaustively checkable at this scale.

Sheaves on the completion are poset functors with rational matrices;
their cohomology comes from the ordered-chain complex, and the Cech
complex over a distinguished covering of X gives the second road to
the same numbers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .relations import FiniteSet
from .topology import FiniteTopology


class DensePair:
    """A finite space together with a dense subset carrying the
    subspace topology."""

    __slots__ = ("xhat", "x_mask", "_ucheck_cache", "_reach_cache",
                 "_trace_opens")

    def __init__(self, xhat, x_labels):
        x_mask = xhat.base.mask_of(x_labels)
        full = (1 << len(xhat.base)) - 1
        if xhat.closure_mask(x_mask) != full:
            raise ValueError("subset is not dense")
        self.xhat = xhat
        self.x_mask = x_mask
        self._ucheck_cache = {}
        self._reach_cache = {}
        self._trace_opens = tuple(sorted({m & x_mask for m in xhat.open_masks}))

    @property
    def x_labels(self):
        return self.xhat.base.labels_of(self.x_mask)

    def __repr__(self):
        return "DensePair(%r, X=%r)" % (self.xhat, sorted(self.x_labels))

    def __eq__(self, other):
        return (isinstance(other, DensePair) and self.xhat == other.xhat
                and self.x_mask == other.x_mask)

    def __hash__(self):
        return hash((self.xhat, self.x_mask))

    def trace_open_masks(self):
        return self._trace_opens

    def is_trace_open(self, um):
        return um in self._ucheck_cache or um in set(self._trace_opens)

    def u_check_mask(self, um):
        """Largest open of Xhat with trace exactly um."""
        try:
            return self._ucheck_cache[um]
        except KeyError:
            pass
        if um not in set(self._trace_opens):
            raise ValueError("set is not open in the dense subspace")
        acc = 0
        for m in self.xhat.open_masks:
            if m & self.x_mask == um:
                acc |= m
        self._ucheck_cache[um] = acc
        return acc

    def u_check(self, labels):
        return self.xhat.base.labels_of(
            self.u_check_mask(self.xhat.base.mask_of(labels)))

    def u_hat_mask(self, um):
        """Closure of the trace-open in Xhat."""
        return self.xhat.closure_mask(um)

    def member_reach_mask(self, um, ui):
        """Union of the ambient opens whose trace on um lies inside ui:
        how far the member ui of a covering of um extends into the
        closure of um.  Over the full trace this equals the check-open
        of ui, because the check operator is monotone."""
        key = (um, ui)
        try:
            return self._reach_cache[key]
        except KeyError:
            pass
        acc = 0
        for m in self.xhat.open_masks:
            if m & um & ~ui == 0:
                acc |= m
        self._reach_cache[key] = acc
        return acc


def sierpinski_pair():
    base = FiniteSet(["p0", "p1"])
    top = FiniteTopology.from_opens(base, [[], ["p1"], ["p0", "p1"]])
    return DensePair(top, ["p1"])


def pseudo_circle(full=True):
    """Four-point model of the circle: two open points a, b glued along
    two closed points c, d.  full=True takes the identity pair;
    otherwise the dense subset is the two open points."""
    base = FiniteSet(["a", "b", "c", "d"])
    top = FiniteTopology.from_opens(base, [
        [], ["a"], ["b"], ["a", "b"], ["a", "b", "c"], ["a", "b", "d"],
        ["a", "b", "c", "d"]])
    return DensePair(top, base.labels if full else ["a", "b"])


class L7Report:
    """Per-item outcome of the trace-open calculus checks. Items 6 and 7
    need more than these finite models generally provide (regularity),
    so their failures are reported as informational, not as errors."""

    __slots__ = ("items", "witnesses")

    def __init__(self, items, witnesses):
        self.items = dict(items)
        self.witnesses = dict(witnesses)

    @property
    def items1to5_ok(self):
        return all(self.items[i] for i in range(1, 6))


def check_l7(pair):
    top = pair.xhat
    base = top.base
    opens = pair.trace_open_masks()
    items = {i: True for i in range(1, 8)}
    wit = {}

    def note(i, w):
        if items[i]:
            items[i] = False
            wit[i] = w

    open_set = set(top.open_masks)
    for um in opens:
        cu = pair.u_check_mask(um)
        # item 1: the union of qualifying opens is open and has trace um
        if cu not in open_set or cu & pair.x_mask != um:
            note(1, base.labels_of(um))
        hu = pair.u_hat_mask(um)
        if cu & ~hu:
            note(2, base.labels_of(um))
        # conditional clause of item 2
        if hu & pair.x_mask == um and cu != top.interior_mask(hu):
            note(2, base.labels_of(um))

    for ua in opens:
        for ub in opens:
            if pair.u_check_mask(ua) & pair.u_check_mask(ub) \
                    != pair.u_check_mask(ua & ub):
                note(3, (base.labels_of(ua), base.labels_of(ub)))
            # trace-opens are closed under union, so item 4 reduces to pairs
            lhs = pair.u_check_mask(ua) | pair.u_check_mask(ub)
            if lhs & ~pair.u_check_mask(ua | ub):
                note(4, (base.labels_of(ua), base.labels_of(ub)))

    # item 5 engine: every open of Xhat sits inside the check of its trace
    for v in top.open_masks:
        if v & ~pair.u_check_mask(v & pair.x_mask):
            note(5, base.labels_of(v))

    # item 6: inside any open, every point has a check-form neighborhood
    check_forms = [pair.u_check_mask(um) for um in opens]
    for v in top.open_masks:
        for i in range(len(base)):
            if not v >> i & 1:
                continue
            if not any(w >> i & 1 and w & ~v == 0 for w in check_forms):
                note(6, (base.labels_of(v), base.labels[i]))

    # item 7: any open is covered by the check-opens of some
    # distinguished covering of its trace; taking every candidate whose
    # check stays inside is the best possible choice
    for v in top.open_masks:
        uv = v & pair.x_mask
        cover_c = 0
        reach_acc = 0
        for um in opens:
            if um & ~uv:
                continue
            cu = pair.u_check_mask(um)
            if cu & ~v == 0:
                cover_c |= cu
                reach_acc |= pair.member_reach_mask(uv, um)
        if v & ~cover_c or pair.u_hat_mask(uv) & ~reach_acc:
            note(7, base.labels_of(v))

    return L7Report(items, wit)


# distinguished covering systems


class GCoveringSystem:
    """For each trace-open U, the distinguished coverings are the
    families of opens of U whose member reaches cover hat(U); this is
    the subspace reading of "check-opens covering the closure", and the
    two coincide on the full trace.  Membership is decided by that
    criterion; listed() materializes a deterministic sample (identity,
    minimal-open decomposition, and all families up to max_family_size)
    for the exhaustive bullet checks."""

    __slots__ = ("pair", "max_family_size", "_listed")

    def __init__(self, pair, max_family_size=2):
        self.pair = pair
        self.max_family_size = max_family_size
        self._listed = {}

    def is_g_covering(self, um, members):
        pair = self.pair
        members = tuple(members)
        trace_set = set(pair.trace_open_masks())
        for m in members:
            if m not in trace_set:
                raise ValueError("covering member is not a subspace open")
            if m & ~um:
                raise ValueError("covering member sticks out of its open")
        acc = 0
        for m in members:
            acc |= pair.member_reach_mask(um, m)
        return pair.u_hat_mask(um) & ~acc == 0

    def minimal_decomposition(self, um):
        """Traces of the minimal opens of the points of U, deduplicated."""
        pair = self.pair
        top = pair.xhat
        out = set()
        for i in range(len(top.base)):
            if um >> i & 1 and pair.x_mask >> i & 1:
                out.add(top.min_open_mask(i) & pair.x_mask)
        return tuple(sorted(out))

    def listed(self, um):
        try:
            return self._listed[um]
        except KeyError:
            pass
        pair = self.pair
        subs = [m for m in pair.trace_open_masks() if m & ~um == 0]
        fams = set()
        if um == 0:
            fams.add(())
        else:
            fams.add((um,))
            dec = self.minimal_decomposition(um)
            if self.is_g_covering(um, dec):
                fams.add(dec)
            for size in range(1, self.max_family_size + 1):
                for combo in itertools.combinations(subs, size):
                    if self.is_g_covering(um, combo):
                        fams.add(tuple(sorted(combo)))
        out = tuple(sorted(fams))
        self._listed[um] = out
        return out


def uniform_g_topology(pair, max_family_size=2):
    return GCoveringSystem(pair, max_family_size)


class GrothReport:
    __slots__ = ("identity_ok", "restriction_ok", "composition_ok",
                 "detection_ok", "saturation_ok", "witnesses")

    def __init__(self):
        self.identity_ok = True
        self.restriction_ok = True
        self.composition_ok = True
        self.detection_ok = True
        self.saturation_ok = True
        self.witnesses = []

    @property
    def valid(self):
        return (self.identity_ok and self.restriction_ok
                and self.composition_ok and self.detection_ok
                and self.saturation_ok)


def check_grothendieck(g):
    """The five bullets: identity coverings, restriction stability,
    composition stability, local detection of openness, and saturation
    under coarsening by refinable families."""
    pair = g.pair
    rep = GrothReport()
    opens = pair.trace_open_masks()
    open_set = set(opens)

    for um in opens:
        ident = () if um == 0 else (um,)
        if not g.is_g_covering(um, ident):
            rep.identity_ok = False
            rep.witnesses.append(("identity", um))

    for um in opens:
        fams = g.listed(um)
        for fam in fams:
            for vm in opens:
                if vm & ~um:
                    continue
                cut = tuple(sorted({m & vm for m in fam}))
                if not g.is_g_covering(vm, cut):
                    rep.restriction_ok = False
                    rep.witnesses.append(("restriction", um, fam, vm))

    for um in opens:
        for fam in g.listed(um):
            # refine each member by its minimal decomposition where that
            # is itself a distinguished covering, by itself otherwise
            composite = set()
            for m in fam:
                dec = g.minimal_decomposition(m)
                if not g.is_g_covering(m, dec):
                    dec = (m,)
                composite.update(dec)
            composite = tuple(sorted(composite))
            if fam and not g.is_g_covering(um, composite):
                rep.composition_ok = False
                rep.witnesses.append(("composition", um, fam))

    for um in opens:
        # scan subsets of U for locally-open implies open
        bits = [i for i in range(len(pair.xhat.base)) if um >> i & 1]
        for fam in g.listed(um):
            for pick in range(1 << len(bits)):
                s = 0
                for t, i in enumerate(bits):
                    if pick >> t & 1:
                        s |= 1 << i
                if all((s & m) in open_set for m in fam):
                    if s not in open_set:
                        rep.detection_ok = False
                        rep.witnesses.append(("detection", um, fam, s))

    for um in opens:
        gfams = g.listed(um)
        subs = [m for m in opens if m & ~um == 0]
        for size in range(1, min(g.max_family_size, len(subs)) + 1):
            for fam in itertools.combinations(subs, size):
                union = 0
                for m in fam:
                    union |= m
                if union != um:
                    continue
                refined = any(
                    all(any(v & ~m == 0 for m in fam) for v in gf)
                    for gf in gfams if gf)
                if refined and not g.is_g_covering(um, tuple(sorted(fam))):
                    rep.saturation_ok = False
                    rep.witnesses.append(("saturation", um, fam))

    return rep


# sheaves on the completion


class PosetSheaf:
    """Stalk dimensions per point of a T0 space plus one rational matrix
    per Hasse edge of its specialization order, validated to compose
    consistently.  Values on opens are the compatible families."""

    __slots__ = ("top", "dims", "edge_mats", "_full_maps", "_sections")

    def __init__(self, top, dims, edge_mats):
        if not top.is_t0():
            raise ValueError("sheaf base must be T0")
        n = len(top.base)
        dims = tuple(int(d) for d in dims)
        if len(dims) != n or any(d < 0 for d in dims):
            raise ValueError("bad stalk dimensions")
        hasse = top.hasse_edges()
        if set(edge_mats.keys()) != set(hasse):
            raise ValueError("restriction matrices must match the Hasse edges")
        for (i, j), m in edge_mats.items():
            if len(m) != dims[j] or any(len(r) != dims[i] for r in m):
                raise ValueError("matrix shape mismatch on edge %r" % ((i, j),))
        self.top = top
        self.dims = dims
        self.edge_mats = {e: [[Fraction(x) for x in row] for row in m]
                          for e, m in edge_mats.items()}
        self._full_maps = None
        self._sections = {}
        self._check_functorial()

    def _order(self):
        # linear extension: larger minimal opens first
        n = len(self.top.base)
        return sorted(range(n),
                      key=lambda i: (-self.top.min_open_mask(i).bit_count(), i))

    def _check_functorial(self):
        n = len(self.top.base)
        mins = [self.top.min_open_mask(i) for i in range(n)]
        preds = {j: [i for (i, jj) in self.edge_mats if jj == j]
                 for j in range(n)}
        full = {}
        for x in range(n):
            full[(x, x)] = linalg.identity(self.dims[x])
        for y in self._order():
            for x in range(n):
                if x == y or not mins[x] >> y & 1:
                    continue
                got = None
                for p in preds[y]:
                    if p != x and not mins[x] >> p & 1:
                        continue
                    m = linalg.matmul(self.edge_mats[(p, y)], full[(x, p)])
                    if got is None:
                        got = m
                    elif got != m:
                        raise ValueError(
                            "restrictions are not functorial at %s"
                            % self.top.base.labels[y])
                full[(x, y)] = got
        self._full_maps = full

    def restriction(self, x, y):
        """Full map stalk(x) -> stalk(y) for x below y."""
        return self._full_maps[(x, y)]

    def section_space(self, mask):
        """Basis of F(W) inside the direct sum of the stalks over W.
        W must be open; edge constraints inside an up-closed W pin the
        whole compatibility."""
        try:
            return self._sections[mask]
        except KeyError:
            pass
        if mask not in set(self.top.open_masks):
            raise ValueError("sections are only defined on opens")
        points = [i for i in range(len(self.top.base)) if mask >> i & 1]
        offs = {}
        total = 0
        for p in points:
            offs[p] = total
            total += self.dims[p]
        rows = []
        for (i, j), m in sorted(self.edge_mats.items()):
            if mask >> i & 1 and mask >> j & 1:
                for rj in range(self.dims[j]):
                    row = [linalg.ZERO] * total
                    row[offs[j] + rj] = linalg.ONE
                    for ci in range(self.dims[i]):
                        row[offs[i] + ci] -= m[rj][ci]
                    rows.append(row)
        basis = linalg.kernel_basis(rows, total)
        out = (tuple(points), offs, basis)
        self._sections[mask] = out
        return out

    def dim_sections(self, mask):
        return len(self.section_space(mask)[2])

    def restrict_sections(self, big, small):
        """Matrix of F(big) -> F(small) in the chosen bases."""
        pb, offb, bb = self.section_space(big)
        ps, offs, bs = self.section_space(small)
        total_s = sum(self.dims[p] for p in ps)
        cut = []
        for v in bb:
            w = [linalg.ZERO] * total_s
            for p in ps:
                for t in range(self.dims[p]):
                    w[offs[p] + t] = v[offb[p] + t]
            cut.append(w)
        if not bs:
            return []
        cols = linalg.solve_many(linalg.transpose(bs), cut)
        return linalg.transpose(cols)


def constant_sheaf(top, dim=1):
    mats = {e: linalg.identity(dim) for e in top.hasse_edges()}
    return PosetSheaf(top, [dim] * len(top.base), mats)


def sheaf_cohomology(f):
    """Betti numbers of the ordered-chain complex: cochains assign to a
    strict chain a vector in the stalk of its top point; the coboundary
    alternates over face deletions, pushing through the restriction when
    the top point is deleted is not needed, but extending the chain at
    the top composes with the restriction matrix."""
    top = f.top
    chains = sorted(top.strict_chains(), key=lambda c: (len(c), c))
    by_len = {}
    for c in chains:
        by_len.setdefault(len(c) - 1, []).append(c)
    if not chains:
        return (0,)
    maxq = max(by_len)
    index = {}
    dims_q = {}
    for q, cs in by_len.items():
        off = 0
        for c in cs:
            index[c] = off
            off += f.dims[c[-1]]
        dims_q[q] = off

    def differential(q):
        if q + 1 not in by_len:
            return None
        rows = dims_q[q + 1]
        cols = dims_q.get(q, 0)
        m = linalg.zeros(rows, cols)
        for c in by_len[q + 1]:
            roff = index[c]
            d_top = f.dims[c[-1]]
            sign = 1
            for t in range(len(c) - 1):
                face = c[:t] + c[t + 1:]
                coff = index[face]
                for r in range(d_top):
                    m[roff + r][coff + r] += sign
                sign = -sign
            face = c[:-1]
            coff = index[face]
            rmat = f.restriction(face[-1], c[-1])
            for r in range(d_top):
                for cc in range(f.dims[face[-1]]):
                    if rmat[r][cc]:
                        m[roff + r][coff + cc] += sign * rmat[r][cc]
        return m

    ranks = {}
    for q in range(maxq + 1):
        d = differential(q)
        ranks[q] = linalg.rank(d) if d else 0
    betti = []
    for q in range(maxq + 1):
        b = dims_q.get(q, 0) - ranks.get(q, 0) - ranks.get(q - 1, 0)
        betti.append(b)
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    return tuple(betti)


def simplicial_cohomology(top):
    """Rational cohomology of the order complex, the independent route
    for constant coefficients."""
    chains = sorted(top.strict_chains(), key=lambda c: (len(c), c))
    by_len = {}
    for c in chains:
        by_len.setdefault(len(c) - 1, []).append(c)
    maxq = max(by_len)
    index = {}
    for q, cs in by_len.items():
        for k, c in enumerate(cs):
            index[c] = k
    ranks = {}
    for q in range(maxq + 1):
        if q + 1 not in by_len:
            ranks[q] = 0
            continue
        rows = len(by_len[q + 1])
        cols = len(by_len[q])
        m = linalg.zeros(rows, cols)
        for c in by_len[q + 1]:
            r = index[c]
            sign = 1
            for t in range(len(c)):
                face = c[:t] + c[t + 1:]
                m[r][index[face]] += sign
                sign = -sign
        ranks[q] = linalg.rank(m)
    betti = []
    for q in range(maxq + 1):
        betti.append(len(by_len.get(q, [])) - ranks.get(q, 0)
                     - ranks.get(q - 1, 0))
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    return tuple(betti)


# Cech side


def finest_g_covering(pair):
    """Deduplicated traces of the minimal opens of the completion's
    points. Always a distinguished covering of X: each check-open
    swallows the minimal open it came from."""
    top = pair.xhat
    out = set()
    for i in range(len(top.base)):
        out.add(top.min_open_mask(i) & pair.x_mask)
    out.discard(0)
    return tuple(sorted(out))


def cech_adequate(pair, members):
    """Acyclicity certificate: every iterated intersection's check-open
    must split into components each having an initial point.  Sections
    over such a component are the stalk of that point, so the Cech
    complex over the covering computes the derived answer."""
    top = pair.xhat
    n = len(top.base)
    mins = [top.min_open_mask(i) for i in range(n)]
    members = tuple(members)
    for r in range(1, len(members) + 1):
        for sigma in itertools.combinations(range(len(members)), r):
            inter = pair.x_mask
            for t in sigma:
                inter &= members[t]
            w = pair.u_check_mask(inter)
            # components via comparability inside w
            todo = w
            while todo:
                seed = todo & -todo
                comp = seed
                frontier = seed
                while frontier:
                    new = 0
                    m = frontier
                    while m:
                        low = m & -m
                        i = low.bit_length() - 1
                        for j in range(n):
                            if w >> j & 1 and not comp >> j & 1:
                                if mins[i] >> j & 1 or mins[j] >> i & 1:
                                    new |= 1 << j
                        m ^= low
                    comp |= new
                    frontier = new
                todo &= ~comp
                if not any(comp >> i & 1 and comp & ~mins[i] == 0
                           for i in range(n)):
                    return False
    return True


def cech_cohomology(pair, f, members):
    """Cech complex of a distinguished covering of X with values
    F(check of the intersections). Returns Betti dimensions per degree."""
    if f.top != pair.xhat:
        raise ValueError("sheaf lives on a different completion")
    members = tuple(sorted(set(members)))
    g = GCoveringSystem(pair)
    full_trace = pair.x_mask
    if not g.is_g_covering(full_trace, members):
        raise ValueError("not a distinguished covering of the dense subset")
    r = len(members)
    w_of = {}
    for size in range(1, r + 1):
        for sigma in itertools.combinations(range(r), size):
            inter = full_trace
            for t in sigma:
                inter &= members[t]
            w_of[sigma] = pair.u_check_mask(inter)

    index = {}
    dims_q = {}
    for size in range(1, r + 1):
        off = 0
        for sigma in itertools.combinations(range(r), size):
            index[sigma] = off
            off += f.dim_sections(w_of[sigma])
        dims_q[size - 1] = off

    ranks = {}
    for q in range(r):
        rows = dims_q.get(q + 1, 0)
        cols = dims_q.get(q, 0)
        if rows == 0 or cols == 0:
            ranks[q] = 0
            continue
        m = linalg.zeros(rows, cols)
        for sigma in itertools.combinations(range(r), q + 2):
            roff = index[sigma]
            wt = w_of[sigma]
            dt = f.dim_sections(wt)
            if dt == 0:
                continue
            sign = 1
            for t in range(len(sigma)):
                face = sigma[:t] + sigma[t + 1:]
                rmat = f.restrict_sections(w_of[face], wt)
                coff = index[face]
                for rr in range(dt):
                    for cc in range(len(rmat[rr]) if rmat else 0):
                        if rmat[rr][cc]:
                            m[roff + rr][coff + cc] += sign * rmat[rr][cc]
                sign = -sign
        ranks[q] = linalg.rank(m)

    betti = []
    for q in range(r):
        betti.append(dims_q.get(q, 0) - ranks.get(q, 0) - ranks.get(q - 1, 0))
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    return tuple(betti)


def check_gluing(pair, f, max_family_size=2):
    """Sheaf condition for the pulled-back presheaf U -> F(check U) on
    every listed distinguished covering: the value embeds as the
    equalizer of the member values against the pairwise intersections.
    Returns (ok, witness)."""
    g = GCoveringSystem(pair, max_family_size)
    for um in pair.trace_open_masks():
        w_u = pair.u_check_mask(um)
        d_u = f.dim_sections(w_u)
        for fam in g.listed(um):
            if not fam:
                if d_u != 0 and um == 0:
                    return False, (um, fam)
                continue
            w_i = [pair.u_check_mask(m) for m in fam]
            offs = []
            total = 0
            for w in w_i:
                offs.append(total)
                total += f.dim_sections(w)
            # alpha: F(check U) -> product of member values
            alpha = linalg.zeros(total, d_u)
            for k, w in enumerate(w_i):
                m = f.restrict_sections(w_u, w)
                for rr in range(len(m)):
                    for cc in range(d_u):
                        alpha[offs[k] + rr][cc] = m[rr][cc]
            # beta: differences into the pairwise intersections
            rows2 = []
            for a in range(len(fam)):
                for b in range(a + 1, len(fam)):
                    w_ab = pair.u_check_mask(fam[a] & fam[b])
                    d_ab = f.dim_sections(w_ab)
                    if d_ab == 0:
                        continue
                    ra = f.restrict_sections(w_i[a], w_ab)
                    rb = f.restrict_sections(w_i[b], w_ab)
                    for t in range(d_ab):
                        row = [linalg.ZERO] * total
                        for cc in range(len(ra[t]) if ra else 0):
                            row[offs[a] + cc] += ra[t][cc]
                        for cc in range(len(rb[t]) if rb else 0):
                            row[offs[b] + cc] -= rb[t][cc]
                        rows2.append(row)
            ker = len(linalg.kernel_basis(rows2, total))
            composed = linalg.matmul(rows2, alpha) if rows2 else []
            square_zero = all(all(x == 0 for x in row) for row in composed)
            if linalg.rank(alpha) != d_u or ker != d_u or not square_zero:
                return False, (um, fam)
    return True, None


def random_sheaf(top, rng, max_gens=2):
    """Random sheaf as a conjugated sum of constant sheaves on closed
    down-sets (closures of one or two points); stalk dims stay at most
    max_gens and cohomology is genuinely varied."""
    n = len(top.base)
    k = rng.randint(1, max_gens)
    downs = []
    for _ in range(k):
        seeds = rng.sample(range(n), rng.randint(1, min(2, n)))
        d = 0
        for s in seeds:
            d |= top.closure_mask(1 << s)
        downs.append(d)
    dims = [sum(1 for d in downs if d >> i & 1) for i in range(n)]

    def rand_invertible(d):
        if d == 0:
            return []
        while True:
            m = [[Fraction(rng.randint(-2, 2)) for _ in range(d)]
                 for _ in range(d)]
            if linalg.rank(m) == d:
                return m

    conj = [rand_invertible(d) for d in dims]
    conj_inv = []
    for m in conj:
        if not m:
            conj_inv.append([])
            continue
        d = len(m)
        sols = linalg.solve_many(m, [[linalg.ONE if i == j else linalg.ZERO
                                      for i in range(d)] for j in range(d)])
        conj_inv.append(linalg.transpose(sols))
    mats = {}
    for (i, j) in top.hasse_edges():
        alive_i = [t for t, d in enumerate(downs) if d >> i & 1]
        alive_j = [t for t, d in enumerate(downs) if d >> j & 1]
        raw = linalg.zeros(dims[j], dims[i])
        for rj, t in enumerate(alive_j):
            if t in alive_i:
                raw[rj][alive_i.index(t)] = linalg.ONE
        m = linalg.matmul(conj[j], linalg.matmul(raw, conj_inv[i])) \
            if dims[j] and dims[i] else raw
        mats[(i, j)] = m
    return PosetSheaf(top, dims, mats)

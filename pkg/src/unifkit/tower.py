"""Star-refining towers of finite coverings over a sample set.

A tower presents a precompact (quasi-)uniform space by a sequence of
finite coverings by named blocks, each refining the one before it.
Depth-N threads (coherent block chains) approximate the points of the
completion; the built-in generators model the punctured square with
its two uniformities, the residue disk tree of the integers under a
prime, the one-level formal disk, and arbitrary finite models from the
entourage modules.

Geometry is exact.  Blocks of the square generators are closed boxes
with integer endpoints in level units; the angular coordinate lives on
the piecewise linear boundary circle of the square, parametrized by
arc length with total length 8.  Blocks at consecutive levels overlap
by construction, which is what makes star-refinement certifiable: a
partition can never absorb the star of a boundary block, an overlap of
half a block width can.  The certificates relate level k to level k-3
for the square generators (the star of a block spans 7 level units and
a block three levels up spans 24, leaving room to place one whatever
the alignment) and to level k-1 for the residue generators, whose
levels are honest partitions with singleton stars.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import ceil, floor

from .relations import FiniteSet
from .topology import FiniteTopology

FULL_CIRCLE = 8  # arc length of the boundary square


def _tau_of(x, y):
    """Arc-length coordinate of the direction of (x, y), in [0, 8)."""
    if x == 0 and y == 0:
        raise ValueError("the origin has no direction")
    if x >= abs(y):
        t = 1 + Fraction(y, x)
    elif y >= abs(x):
        t = 3 - Fraction(x, y)
    elif -x >= abs(y):
        t = 5 + Fraction(y, x)
    else:
        t = 7 - Fraction(x, y)
    return t % FULL_CIRCLE


def _gamma(tau):
    """Point of the boundary square at arc-length coordinate tau."""
    t = Fraction(tau) % FULL_CIRCLE
    if t <= 2:
        return Fraction(1), t - 1
    if t <= 4:
        return 3 - t, Fraction(1)
    if t <= 6:
        return Fraction(-1), 5 - t
    return t - 7, Fraction(-1)


def _circ_contains(s1, l1, s2, l2, modulus):
    """Closed circular arc (start s1, length l1) inside (s2, l2)."""
    if l2 >= modulus:
        return True
    if l1 > l2:
        return False
    return (s1 - s2) % modulus + l1 <= l2


def _circ_intersects(s1, l1, s2, l2, modulus):
    if l1 >= modulus or l2 >= modulus:
        return True
    return (s1 - s2) % modulus <= l2 or (s2 - s1) % modulus <= l1


def _box_minus(boxes, cut):
    """Subtract one closed box from a list of closed boxes.  Leftover
    pieces keep closed boundaries; a truly covered target still empties
    because each boundary strip is swallowed by the neighboring cut."""
    cx0, cx1, cy0, cy1 = cut
    out = []
    for b in boxes:
        x0, x1, y0, y1 = b
        if cx1 < x0 or cx0 > x1 or cy1 < y0 or cy0 > y1:
            out.append(b)
            continue
        if x0 < cx0:
            out.append((x0, cx0, y0, y1))
        if cx1 < x1:
            out.append((cx1, x1, y0, y1))
        mx0, mx1 = max(x0, cx0), min(x1, cx1)
        if y0 < cy0:
            out.append((mx0, mx1, y0, cy0))
        if cy1 < y1:
            out.append((mx0, mx1, cy1, y1))
    return out


def _interval_candidates(lo, hi, imin, imax):
    """Positions i whose block [2i, 2i+3] could meet [lo, hi]; callers
    re-check exactly.  Fraction // int floors to an integer, so mixed
    inputs are fine."""
    first = max((lo - 3) // 2, imin)
    last = min(hi // 2, imax)
    return range(first, last + 1)


class ThreadClass:
    """One depth-N equivalence class of threads: a classification tag,
    a representative block, and the level-N blocks it groups."""

    __slots__ = ("tag", "level", "rep", "blocks")

    def __init__(self, tag, level, rep, blocks):
        self.tag = tag
        self.level = level
        self.rep = rep
        self.blocks = tuple(blocks)

    def __repr__(self):
        return "ThreadClass(%s, %r)" % (self.tag, self.rep)


class Covering:
    """A covering of the tower's space by unions of blocks of one
    level."""

    __slots__ = ("name", "level", "members")

    def __init__(self, name, level, members):
        self.name = name
        self.level = level
        self.members = tuple(tuple(m) for m in members)


# generators


class _MetricGen:
    """Punctured square [-1,1]^2 minus the origin with the euclidean
    uniformity: overlapping cartesian boxes halving per level.  At
    level k each axis carries positions i with block [2i, 2i+3] in
    units of 2^-(k+1): width 3, stride 2, so adjacent positions share
    a unit-wide strip and positions two apart are disjoint."""

    kind = "metric_disk"
    symmetric = True
    star_lag = 3

    def __init__(self):
        self.params = {}

    def half_range(self, k):
        return 1 << (k + 1)

    def irange(self, k):
        return -(1 << k), (1 << k) - 1

    def interval(self, k, i):
        r = self.half_range(k)
        return max(2 * i, -r), min(2 * i + 3, r)

    def block_ids(self, k):
        imin, imax = self.irange(k)
        for i in range(imin, imax + 1):
            for j in range(imin, imax + 1):
                yield (i, j)

    def block_count(self, k):
        imin, imax = self.irange(k)
        return (imax - imin + 1) ** 2

    def has_block(self, k, b):
        imin, imax = self.irange(k)
        return (isinstance(b, tuple) and len(b) == 2
                and all(isinstance(c, int) and imin <= c <= imax for c in b))

    def block_name(self, k, b):
        return "b%d,%d" % b

    def block_box(self, k, b):
        x0, x1 = self.interval(k, b[0])
        y0, y1 = self.interval(k, b[1])
        return (x0, x1, y0, y1)

    def origin_ids(self):
        return ((-1, -1), (-1, 0), (0, -1), (0, 0))

    def is_origin(self, b):
        return b[0] in (-1, 0) and b[1] in (-1, 0)

    def parent(self, k, b):
        return (b[0] // 2, b[1] // 2)

    def neighbors(self, k, b):
        imin, imax = self.irange(k)
        i, j = b
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if di == dj == 0:
                    continue
                ni, nj = i + di, j + dj
                if imin <= ni <= imax and imin <= nj <= imax:
                    yield (ni, nj)

    def _axis_cert(self, k, i):
        imin, imax = self.irange(k - self.star_lag)
        return min(max((2 * i - 2) // 16, imin), imax)

    def star_cert(self, k, b):
        return k - self.star_lag, (self._axis_cert(k, b[0]),
                                   self._axis_cert(k, b[1]))

    def check_star(self, k, b):
        tk, tb = self.star_cert(k, b)
        f = 1 << (k - tk)
        r = self.half_range(k)
        for ax in (0, 1):
            s_lo = max(2 * b[ax] - 2, -r)
            s_hi = min(2 * b[ax] + 5, r)
            t_lo, t_hi = self.interval(tk, tb[ax])
            if t_lo * f > s_lo or s_hi > t_hi * f:
                return False
        return True

    def classes(self, n):
        origin = self.origin_ids()
        yield ThreadClass("puncture", n, origin[0], origin)
        for b in self.block_ids(n):
            if not self.is_origin(b):
                yield ThreadClass("interior", n, b, (b,))

    def path(self, n, b):
        out = [b]
        for k in range(n, 1, -1):
            b = self.parent(k, b)
            out.append(b)
        out.reverse()
        return tuple(out)

    def samples(self, depth):
        h = Fraction(1, 1 << min(depth + 2, 16))
        return [(Fraction(3, 4), Fraction(3, 4)),
                (Fraction(-1, 2), Fraction(1, 2)),
                (Fraction(-2, 3), Fraction(-2, 3)),
                (Fraction(1), Fraction(-1)),
                (Fraction(1, 3), Fraction(0)),
                (Fraction(0), Fraction(-1, 5)),
                (h, h), (-h, h), (h, -h), (-h, -h)]

    def sample_name(self, s):
        return "(%s,%s)" % s

    def member_blocks(self, k, s):
        res = []
        r = self.half_range(k)
        sx = Fraction(s[0]) * r
        sy = Fraction(s[1]) * r
        imin, imax = self.irange(k)
        for i in _interval_candidates(sx, sx, imin, imax):
            x0, x1 = self.interval(k, i)
            if not x0 <= sx <= x1:
                continue
            for j in _interval_candidates(sy, sy, imin, imax):
                y0, y1 = self.interval(k, j)
                if y0 <= sy <= y1:
                    res.append((i, j))
        return res

    def covers_space(self, k):
        imin, imax = self.irange(k)
        r = self.half_range(k)
        lo, hi = self.interval(k, imin)
        if lo != -r:
            return False
        for i in range(imin + 1, imax + 1):
            nlo, nhi = self.interval(k, i)
            if nlo > hi:
                return False
            hi = max(hi, nhi)
        return hi == r

    def tau_extent(self, k, b):
        """Smallest circular arc of directions covering the block, or
        None for a block whose closure contains the origin."""
        if self.is_origin(b):
            return None
        x0, x1, y0, y1 = self.block_box(k, b)
        pts = [(x0, y0), (x0, y1), (x1, y0), (x1, y1)]
        # direction extremes can also sit where an edge crosses one of
        # the diagonals y = x, y = -x
        for yy in (y0, y1):
            for s in (1, -1):
                if x0 <= s * yy <= x1:
                    pts.append((s * yy, yy))
        for xx in (x0, x1):
            for s in (1, -1):
                if y0 <= s * xx <= y1:
                    pts.append((xx, s * xx))
        taus = sorted({_tau_of(px, py) for px, py in pts
                       if (px, py) != (0, 0)})
        if len(taus) == 1:
            return taus[0], Fraction(0)
        best_gap = None
        start_at = 0
        for idx, t in enumerate(taus):
            nxt = taus[(idx + 1) % len(taus)]
            gap = (nxt - t) % FULL_CIRCLE
            if best_gap is None or gap > best_gap:
                best_gap = gap
                start_at = (idx + 1) % len(taus)
        return taus[start_at], (FULL_CIRCLE - best_gap) % FULL_CIRCLE


class _SectorialGen:
    """Same punctured square, finer uniformity: polar blocks, a radial
    interval times an angular window on the boundary circle.  The
    radial axis reuses the width-3 stride-2 schedule on [0, top]; the
    angular windows are (start 2a, length 3) mod 2^(k+1) for 2^k values
    of a, so the tip carries exactly 2^k angular positions."""

    kind = "sectorial_disk"
    symmetric = True
    star_lag = 3

    def __init__(self):
        self.params = {}

    def radial_top(self, k):
        return 1 << (k + 1)

    def angular_mod(self, k):
        return 1 << (k + 1)

    def counts(self, k):
        return 1 << k

    def radial_interval(self, k, i):
        return 2 * i, min(2 * i + 3, self.radial_top(k))

    def angular_window(self, k, a):
        return 2 * a, 3

    def block_ids(self, k):
        c = self.counts(k)
        for i in range(c):
            for a in range(c):
                yield (i, a)

    def block_count(self, k):
        return self.counts(k) ** 2

    def has_block(self, k, b):
        c = self.counts(k)
        return (isinstance(b, tuple) and len(b) == 2
                and all(isinstance(x, int) and 0 <= x < c for x in b))

    def block_name(self, k, b):
        return "r%da%d" % b

    def is_tip(self, b):
        return b[0] == 0

    def parent(self, k, b):
        return (b[0] // 2, b[1] // 2)

    def neighbors(self, k, b):
        c = self.counts(k)
        i, a = b
        for di in (-1, 0, 1):
            ni = i + di
            if not 0 <= ni < c:
                continue
            for da in (-1, 0, 1):
                na = (a + da) % c
                if (ni, na) != (i, a):
                    yield (ni, na)

    def star_cert(self, k, b):
        tk = k - self.star_lag
        ri = min(max((2 * b[0] - 2) // 16, 0), self.counts(tk) - 1)
        aa = ((2 * b[1] - 2) // 16) % self.counts(tk)
        return tk, (ri, aa)

    def check_star(self, k, b):
        tk, tb = self.star_cert(k, b)
        f = 1 << (k - tk)
        top = self.radial_top(k)
        s_lo = max(2 * b[0] - 2, 0)
        s_hi = min(2 * b[0] + 5, top)
        t_lo, t_hi = self.radial_interval(tk, tb[0])
        if t_lo * f > s_lo or s_hi > t_hi * f:
            return False
        mod = self.angular_mod(k)
        ts, tl = self.angular_window(tk, tb[1])
        return _circ_contains((2 * b[1] - 2) % mod, 7, (ts * f) % mod,
                              tl * f, mod)

    def classes(self, n):
        c = self.counts(n)
        for a in range(c):
            yield ThreadClass("tangential", n, (0, a), ((0, a),))
        for b in self.block_ids(n):
            if not self.is_tip(b):
                yield ThreadClass("interior", n, b, (b,))

    def path(self, n, b):
        out = [b]
        for k in range(n, 1, -1):
            b = self.parent(k, b)
            out.append(b)
        out.reverse()
        return tuple(out)

    def samples(self, depth):
        h = Fraction(1, 1 << min(depth + 2, 16))
        return [(Fraction(1), Fraction(0)),
                (Fraction(1, 2), Fraction(3, 2)),
                (Fraction(1, 3), Fraction(7, 2)),
                (Fraction(2, 3), Fraction(13, 2)),
                (Fraction(1, 5), Fraction(4)),
                (h, Fraction(1, 3)), (h, Fraction(5))]

    def sample_name(self, s):
        return "(%s;%s)" % s

    def member_blocks(self, k, s):
        rho = Fraction(s[0]) * self.radial_top(k)
        tau = Fraction(s[1]) * self.angular_mod(k) / FULL_CIRCLE
        c = self.counts(k)
        mod = self.angular_mod(k)
        res = []
        for i in _interval_candidates(rho, rho, 0, c - 1):
            lo, hi = self.radial_interval(k, i)
            if not lo <= rho <= hi:
                continue
            for a in range(c):
                ws, wl = self.angular_window(k, a)
                if (tau - ws) % mod <= wl:
                    res.append((i, a))
        return res

    def covers_space(self, k):
        top = self.radial_top(k)
        hi = 0
        for i in range(self.counts(k)):
            lo, ihi = self.radial_interval(k, i)
            if lo > hi:
                return False
            hi = max(hi, ihi)
        if hi != top:
            return False
        mod = self.angular_mod(k)
        covered = set()
        for a in range(self.counts(k)):
            ws, wl = self.angular_window(k, a)
            for t in range(ws, ws + wl):
                covered.add(t % mod)
        return len(covered) == mod


class _PadicGen:
    """Residue disk tree: level k partitions the integer disk into the
    p^k residue disks of radius p^-k, one per length-k digit string."""

    kind = "padic_disk"
    symmetric = True
    star_lag = 1

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, p)):
            raise ValueError("p must be prime")
        self.p = p
        self.params = {"p": p}

    def block_ids(self, k):
        digits = [str(d) for d in range(self.p)]
        for tup in product(digits, repeat=k):
            yield "".join(tup)

    def block_count(self, k):
        return self.p ** k

    def has_block(self, k, b):
        return (isinstance(b, str) and len(b) == k
                and all(c.isdigit() and int(c) < self.p for c in b))

    def block_name(self, k, b):
        return "d" + b

    def parent(self, k, b):
        return b[:-1]

    def neighbors(self, k, b):
        return iter(())  # one level's residue disks are disjoint

    def star_cert(self, k, b):
        return k - 1, b[:-1]

    def check_star(self, k, b):
        return True  # the star of a disjoint block is the block itself

    def classes(self, n):
        for b in self.block_ids(n):
            yield ThreadClass("end", n, b, (b,))

    def path(self, n, b):
        return tuple(b[:k] for k in range(1, n + 1))

    def samples(self, depth):
        width = min(depth, 8 if self.p == 2 else 5)
        return [s + "0" * (depth - width) for s in self.block_ids(width)]

    def sample_name(self, s):
        return s

    def member_blocks(self, k, s):
        if len(s) < k:
            raise ValueError("sample too short for this level")
        return [s[:k]]

    def covers_space(self, k):
        return True


class _FormalGen:
    """One-level residue covering repeated at every depth: blocks never
    shrink, so every thread keeps a stable radius."""

    kind = "formal"
    symmetric = True
    star_lag = 1

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, p)):
            raise ValueError("p must be prime")
        self.p = p
        self.params = {"p": p}

    def block_ids(self, k):
        return iter(range(self.p))

    def block_count(self, k):
        return self.p

    def has_block(self, k, b):
        return isinstance(b, int) and 0 <= b < self.p

    def block_name(self, k, b):
        return "d%d" % b

    def parent(self, k, b):
        return b

    def neighbors(self, k, b):
        return iter(())

    def star_cert(self, k, b):
        return k - 1, b

    def check_star(self, k, b):
        return True

    def classes(self, n):
        for b in range(self.p):
            yield ThreadClass("branch", n, b, (b,))

    def path(self, n, b):
        return (b,) * n

    def samples(self, depth):
        return list(range(self.p))

    def sample_name(self, s):
        return str(s)

    def member_blocks(self, k, s):
        return [s]

    def covers_space(self, k):
        return True


class _FiniteGen:
    """Tower induced by a finite entourage model: one block per
    distinct minimal ball, identical at every level."""

    kind = "finite"
    star_lag = 1

    def __init__(self, uniformity):
        self.u = uniformity
        self.symmetric = uniformity.symmetric_flag
        self.params = {}
        rows = uniformity.e_min.rows
        seen = {}
        for x, row in enumerate(rows):
            seen.setdefault(row, x)
        self.reps = sorted(seen.values())
        self.masks = {x: rows[x] for x in self.reps}

    def block_ids(self, k):
        return iter(self.reps)

    def block_count(self, k):
        return len(self.reps)

    def has_block(self, k, b):
        return b in self.masks

    def block_name(self, k, b):
        return "e%s" % self.u.base.labels[b]

    def parent(self, k, b):
        return b

    def neighbors(self, k, b):
        m = self.masks[b]
        return iter(x for x in self.reps if x != b and self.masks[x] & m)

    def star_cert(self, k, b):
        return k - 1, b

    def check_star(self, k, b):
        # levels repeat, so the certificate is honest only when the
        # star of the ball stays inside some ball; depth-1 embeddings
        # never reach this check
        m = self.masks[b]
        star = 0
        for x in self.reps:
            if self.masks[x] & m:
                star |= self.masks[x]
        return any(star & ~self.masks[x] == 0 for x in self.reps)

    def classes(self, n):
        for b in self.reps:
            yield ThreadClass("interior", n, b, (b,))

    def path(self, n, b):
        return (b,) * n

    def samples(self, depth):
        return list(range(len(self.u.base)))

    def sample_name(self, s):
        return str(self.u.base.labels[s])

    def member_blocks(self, k, s):
        return [x for x in self.reps if self.masks[x] >> s & 1]

    def covers_space(self, k):
        acc = 0
        for m in self.masks.values():
            acc |= m
        return acc == (1 << len(self.u.base)) - 1


class CoveringTower:
    """Immutable tower of coverings C_1..C_N produced by make_tower."""

    __slots__ = ("gen", "depth")

    def __init__(self, gen, depth):
        if depth < 1:
            raise ValueError("depth must be at least 1")
        self.gen = gen
        self.depth = depth

    @property
    def kind(self):
        return self.gen.kind

    @property
    def symmetric_flag(self):
        return self.gen.symmetric

    @property
    def star_lag(self):
        return self.gen.star_lag

    def levels(self):
        return range(1, self.depth + 1)

    def block_count(self, k):
        self._check_level(k)
        return self.gen.block_count(k)

    def block_ids(self, k):
        self._check_level(k)
        return self.gen.block_ids(k)

    def block_name(self, k, b):
        return self.gen.block_name(k, b)

    def parent(self, k, b):
        if k < 2:
            raise ValueError("level 1 has no parent level")
        return self.gen.parent(k, b)

    def ancestor(self, k, b, target):
        while k > target:
            b = self.gen.parent(k, b)
            k -= 1
        return b

    def _check_level(self, k):
        if not 1 <= k <= self.depth:
            raise ValueError("no such level %r" % (k,))

    def _check_block(self, k, b):
        self._check_level(k)
        if not self.gen.has_block(k, b):
            raise ValueError("no block %r at level %d" % (b, k))


def make_tower(generator, depth, p=None, uniformity=None):
    """Build a tower.  generator is one of metric_disk, sectorial_disk,
    padic_disk, formal, finite; the residue generators take a prime p
    and the finite generator an entourage model."""
    if generator == "metric_disk":
        gen = _MetricGen()
    elif generator == "sectorial_disk":
        gen = _SectorialGen()
    elif generator == "padic_disk":
        if p is None:
            raise ValueError("padic_disk needs p")
        gen = _PadicGen(p)
    elif generator == "formal":
        if p is None:
            raise ValueError("formal needs p")
        gen = _FormalGen(p)
    elif generator == "finite":
        if uniformity is None:
            raise ValueError("finite needs a uniformity")
        gen = _FiniteGen(uniformity)
    else:
        raise ValueError("unknown generator %r" % (generator,))
    return CoveringTower(gen, depth)


# structural verification


class TowerReport:
    __slots__ = ("tower", "refinement_ok", "star_ok", "covering_ok",
                 "sample_ok", "witness", "checked_levels")

    def __init__(self, tower, refinement_ok, star_ok, covering_ok,
                 sample_ok, witness, checked_levels):
        self.tower = tower
        self.refinement_ok = refinement_ok
        self.star_ok = star_ok
        self.covering_ok = covering_ok
        self.sample_ok = sample_ok
        self.witness = witness
        self.checked_levels = tuple(checked_levels)

    @property
    def ok(self):
        return (self.refinement_ok and self.star_ok and self.covering_ok
                and self.sample_ok)

    def lines(self):
        t = self.tower
        out = ["generator=%s" % t.kind]
        for key in sorted(t.gen.params):
            out.append("%s=%s" % (key, t.gen.params[key]))
        out.append("depth=%d" % t.depth)
        out.append("symmetric=%s" % ("true" if t.symmetric_flag else "false"))
        out.append("star_lag=%d" % t.star_lag)
        for k in t.levels():
            out.append("blocks[%d]=%d" % (k, t.block_count(k)))
        for name in ("refinement", "star", "covering", "sample"):
            ok = getattr(self, name + "_ok")
            out.append("%s=%s" % (name, "ok" if ok else "FAIL"))
        if self.witness is not None:
            out.append("witness=%s" % self.witness)
        return out


def _block_inside_parent(gen, k, b):
    pb = gen.parent(k, b)
    if gen.kind == "metric_disk":
        x0, x1, y0, y1 = gen.block_box(k, b)
        px0, px1, py0, py1 = gen.block_box(k - 1, pb)
        return (2 * px0 <= x0 and x1 <= 2 * px1
                and 2 * py0 <= y0 and y1 <= 2 * py1)
    if gen.kind == "sectorial_disk":
        lo, hi = gen.radial_interval(k, b[0])
        plo, phi = gen.radial_interval(k - 1, pb[0])
        if 2 * plo > lo or hi > 2 * phi:
            return False
        mod = gen.angular_mod(k)
        ws, wl = gen.angular_window(k, b[1])
        ps, pl = gen.angular_window(k - 1, pb[1])
        return _circ_contains(ws, wl, (2 * ps) % mod, 2 * pl, mod)
    if gen.kind == "padic_disk":
        return b[:k - 1] == pb
    return pb == b


def _sample_scan_ids(gen, k):
    """Deterministic scan for checks on very large levels: every block
    near the range boundary or the origin plus a fixed stride through
    the interior."""
    if gen.kind == "metric_disk":
        imin, imax = gen.irange(k)
        edge = {imin, imin + 1, -2, -1, 0, 1, imax - 1, imax}
        for i in range(imin, imax + 1):
            for j in range(imin, imax + 1):
                if i in edge or j in edge or (i % 37 == 0 and j % 11 == 0):
                    yield (i, j)
    elif gen.kind == "sectorial_disk":
        c = gen.counts(k)
        edge = {0, 1, c - 2, c - 1}
        for i in range(c):
            for a in range(c):
                if i in edge or a in edge or (i % 37 == 0 and a % 11 == 0):
                    yield (i, a)
    else:
        yield from gen.block_ids(k)


def verify_tower(tower, block_budget=200000):
    """Check parent containment, star certificates, covering of the
    space, and pairwise adjacency of the blocks containing each sample
    point.  Levels whose block count exceeds the budget are checked on
    the boundary-heavy deterministic scan instead of exhaustively."""
    gen = tower.gen
    witness = None

    def level_ids(k):
        if gen.block_count(k) <= block_budget:
            return tower.block_ids(k)
        return _sample_scan_ids(gen, k)

    refinement_ok = True
    for k in range(2, tower.depth + 1):
        for b in level_ids(k):
            if not _block_inside_parent(gen, k, b):
                refinement_ok = False
                witness = "parent@%d:%s" % (k, gen.block_name(k, b))
                break
        if not refinement_ok:
            break

    star_ok = True
    checked = []
    for k in range(gen.star_lag + 1, tower.depth + 1):
        checked.append(k)
        for b in level_ids(k):
            if not gen.check_star(k, b):
                star_ok = False
                witness = witness or "star@%d:%s" % (k, gen.block_name(k, b))
                break
        if not star_ok:
            break

    covering_ok = all(gen.covers_space(k) for k in tower.levels())
    if not covering_ok and witness is None:
        witness = "level fails to cover the space"

    sample_ok = True
    for s in gen.samples(tower.depth):
        for k in tower.levels():
            blocks = gen.member_blocks(k, s)
            if not blocks:
                sample_ok = False
                witness = witness or "uncovered sample %s" % gen.sample_name(s)
                break
            ok = True
            for x in blocks:
                nbs = set(gen.neighbors(k, x))
                for y in blocks:
                    if x != y and y not in nbs:
                        ok = False
                        witness = witness or (
                            "adjacency@%d:%s/%s" %
                            (k, gen.block_name(k, x), gen.block_name(k, y)))
            if not ok:
                sample_ok = False
                break
        if not sample_ok:
            break

    return TowerReport(tower, refinement_ok, star_ok, covering_ok,
                       sample_ok, witness, checked)


# threads


class ThreadReport:
    __slots__ = ("tower", "notes")

    def __init__(self, tower):
        self.tower = tower
        notes = []
        if tower.kind == "padic_disk":
            notes.append("stable-radius chains and limit points of disk "
                         "sequences with empty intersection have no finite "
                         "block chain at this depth and are not enumerated")
        self.notes = tuple(notes)

    def iter_classes(self):
        return self.tower.gen.classes(self.tower.depth)

    def count_by_tag(self):
        out = {}
        for c in self.iter_classes():
            out[c.tag] = out.get(c.tag, 0) + 1
        return out

    def total(self):
        return sum(self.count_by_tag().values())

    def tangential_classes(self):
        return [c for c in self.iter_classes() if c.tag == "tangential"]

    def tangential_cycle_ok(self):
        """The classes over the puncture form one cycle under block
        adjacency: each meets exactly its two angular neighbors."""
        if self.tower.kind != "sectorial_disk":
            return False
        gen = self.tower.gen
        n = self.tower.depth
        mod = gen.angular_mod(n)
        count = gen.counts(n)
        if count < 3:
            return False
        for a in range(count):
            s1, l1 = gen.angular_window(n, a)
            for b in range(count):
                if a == b:
                    continue
                s2, l2 = gen.angular_window(n, b)
                meets = _circ_intersects(s1, l1, s2, l2, mod)
                expected = (a - b) % count in (1, count - 1)
                if meets != expected:
                    return False
        return True

    def class_line(self, c):
        gen = self.tower.gen
        path = gen.path(self.tower.depth, c.rep)
        names = "/".join(gen.block_name(k, b)
                         for k, b in enumerate(path, start=1))
        extra = "" if len(c.blocks) == 1 else " blocks=%d" % len(c.blocks)
        return "%s %s%s" % (c.tag, names, extra)

    def lines(self):
        body = sorted(self.class_line(c) for c in self.iter_classes())
        for note in self.notes:
            body.append("note: %s" % note)
        return body


def enumerate_threads(tower):
    return ThreadReport(tower)


# named coverings


def level_covering(tower, k):
    tower._check_level(k)
    return Covering("level:%d" % k, k, [(b,) for b in tower.block_ids(k)])


def sector_covering(tower, k=None):
    """Four overlapping quarter unions, one per quarter turn of the
    boundary circle: each member collects the level-k blocks whose
    directions stay within a half-circle window starting at that
    quarter."""
    if tower.kind not in ("metric_disk", "sectorial_disk"):
        raise ValueError("sector covering needs a square generator")
    if k is None:
        k = min(tower.depth, 3)
    tower._check_level(k)
    if k < 2:
        raise ValueError("sector covering needs level 2 or deeper")
    gen = tower.gen
    members = []
    if tower.kind == "sectorial_disk":
        mod = gen.angular_mod(k)
        for q in range(4):
            ws = (q * (1 << (k - 1))) % mod
            wl = 1 << k
            members.append([b for b in gen.block_ids(k)
                            if _circ_contains(2 * b[1], 3, ws, wl, mod)])
    else:
        extents = [(b, gen.tau_extent(k, b)) for b in gen.block_ids(k)]
        for q in range(4):
            lo = 2 * q
            mem = []
            for b, ext in extents:
                if ext is None:
                    continue
                es, el = ext
                if (es - lo) % FULL_CIRCLE + el <= 4:
                    mem.append(b)
            members.append(mem)
    return Covering("sectors@%d" % k, k, members)


def residue_covering(tower):
    if tower.kind not in ("padic_disk", "formal"):
        raise ValueError("residue covering needs a residue generator")
    return Covering("residues", 1, [(b,) for b in tower.block_ids(1)])


def named_covering(tower, name):
    if name.startswith("level:"):
        return level_covering(tower, int(name.split(":", 1)[1]))
    if name == "sectors":
        return sector_covering(tower)
    if name.startswith("sectors:"):
        return sector_covering(tower, int(name.split(":", 1)[1]))
    if name == "residues":
        return residue_covering(tower)
    raise ValueError("unknown covering %r" % (name,))


def _validate_covering(tower, cov):
    tower._check_level(cov.level)
    for mem in cov.members:
        for b in mem:
            if not tower.gen.has_block(cov.level, b):
                raise ValueError(
                    "covering member is not a block union: %r" % (b,))


# uniform coverings


def _member_covers_box(gen, cov_level, mset, box, box_level):
    """Exact coverage of a closed cartesian box (in box_level units) by
    the union of a member's blocks."""
    lvl = max(cov_level, box_level)
    fb = 1 << (lvl - box_level)
    fm = 1 << (lvl - cov_level)
    x0, x1, y0, y1 = (c * fb for c in box)
    imin, imax = gen.irange(cov_level)
    region = [(x0, x1, y0, y1)]
    for i in _interval_candidates(x0 // fm, -(-x1 // fm), imin, imax):
        for j in _interval_candidates(y0 // fm, -(-y1 // fm), imin, imax):
            if (i, j) not in mset:
                continue
            bb = gen.block_box(cov_level, (i, j))
            region = _box_minus(region, tuple(c * fm for c in bb))
            if not region:
                return True
    return not region


def _member_covers_polar(gen, cov_level, mset, block, block_level):
    """Coverage of one polar block by a member union: cut the circle at
    the block's window start and subtract (radius, angle) boxes; a
    member window can wrap across the cut, so both lifts are taken."""
    lvl = max(cov_level, block_level)
    fb = 1 << (lvl - block_level)
    fm = 1 << (lvl - cov_level)
    mod = gen.angular_mod(lvl)
    lo, hi = gen.radial_interval(block_level, block[0])
    ws, wl = gen.angular_window(block_level, block[1])
    lo, hi, ws, wl = lo * fb, hi * fb, (ws * fb) % mod, wl * fb
    region = [(lo, hi, 0, wl)]
    for i in _interval_candidates(lo // fm, -(-hi // fm), 0,
                                  gen.counts(cov_level) - 1):
        for a in range(gen.counts(cov_level)):
            if (i, a) not in mset:
                continue
            blo, bhi = gen.radial_interval(cov_level, i)
            bs, bl = gen.angular_window(cov_level, a)
            rel = (bs * fm - ws) % mod
            for start in (rel, rel - mod):
                region = _box_minus(region, (blo * fm, bhi * fm,
                                             start, start + bl * fm))
            if not region:
                return True
    return not region


def _member_covers_disk(p, mset, block, cap):
    """Residue-disk coverage, recursing into child disks down to the
    finest member radius."""

    def covered(s):
        if any(s.startswith(m) for m in mset):
            return True
        if len(s) >= cap:
            return False
        return all(covered(s + str(d)) for d in range(p))

    return covered(block)


def _member_absorbs_origin(gen, level, member):
    """The member contains a full punctured neighborhood of the origin:
    each open corner quadrant is filled near 0 by some block."""
    need = {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    for b in member:
        if not gen.is_origin(b):
            continue
        x0, x1, y0, y1 = gen.block_box(level, b)
        for sx, sy in tuple(need):
            okx = (x0 <= 0 < x1) if sx > 0 else (x0 < 0 <= x1)
            oky = (y0 <= 0 < y1) if sy > 0 else (y0 < 0 <= y1)
            if okx and oky:
                need.discard((sx, sy))
        if not need:
            return True
    return not need


def _member_tips_cover(gen, cov_level, member, ws, wl, n):
    """The member's tip blocks cover the angular window, so the member
    absorbs a thin sector over the whole window."""
    lvl = max(cov_level, n)
    fb = 1 << (lvl - n)
    fm = 1 << (lvl - cov_level)
    mod = gen.angular_mod(lvl)
    ws, wl = (ws * fb) % mod, wl * fb
    pieces = [(0, wl)]  # the window, cut open at its start
    for b in member:
        if not gen.is_tip(b):
            continue
        bs, bl = gen.angular_window(cov_level, b[1])
        rel = (bs * fm - ws) % mod
        for start in (rel, rel - mod):
            cut_lo, cut_hi = start, start + bl * fm
            nxt = []
            for lo, hi in pieces:
                if cut_hi <= lo or cut_lo >= hi:
                    nxt.append((lo, hi))
                    continue
                if lo < cut_lo:
                    nxt.append((lo, cut_lo))
                if cut_hi < hi:
                    nxt.append((cut_hi, hi))
            pieces = nxt
        if not pieces:
            return True
    return not pieces


class UniformCoverReport:
    __slots__ = ("ok", "witness", "covering")

    def __init__(self, ok, witness, covering):
        self.ok = ok
        self.witness = witness
        self.covering = covering

    def lines(self):
        out = ["covering=%s" % self.covering.name,
               "uniform=%s" % ("true" if self.ok else "false")]
        if self.witness is not None:
            out.append("witness=%s" % self.witness)
        return out


def is_uniform_covering(tower, cov):
    """True when every thread class, limit classes included, lies in
    the extension of a single member: an interior class needs its block
    inside the member's union; a class over the puncture needs a member
    absorbing a punctured neighborhood (metric) or a thin sector over
    its angular window (sectorial); a residue class needs its disk
    covered.  Limit classes are tested first, so the failure witness is
    a limit class whenever one fails."""
    _validate_covering(tower, cov)
    gen = tower.gen
    n = tower.depth
    msets = [frozenset(m) for m in cov.members]
    present = frozenset().union(*msets) if msets else frozenset()
    for limit_pass in (True, False):
        for cls in gen.classes(n):
            if (cls.tag != "interior") != limit_pass:
                continue
            if not _class_absorbed(tower, cov, cls, msets, present):
                witness = "%s %s" % (cls.tag, gen.block_name(n, cls.rep))
                return UniformCoverReport(False, witness, cov)
    return UniformCoverReport(True, None, cov)


def _class_absorbed(tower, cov, cls, msets, present):
    gen = tower.gen
    n = tower.depth
    if cov.level <= n and tower.ancestor(n, cls.rep, cov.level) in present:
        # an enclosing block sits in some member outright; that settles
        # every tag: a metric origin block contains the origin in its
        # ambient interior, a tip block's window contains the class
        # window, a residue prefix contains the whole disk
        return True
    if cls.tag == "interior":
        if gen.kind == "metric_disk":
            box = gen.block_box(n, cls.rep)
            return any(_member_covers_box(gen, cov.level, ms, box, n)
                       for ms in msets)
        if gen.kind == "sectorial_disk":
            return any(_member_covers_polar(gen, cov.level, ms, cls.rep, n)
                       for ms in msets)
        masks = gen.masks
        target = masks[cls.rep]
        for ms in msets:
            acc = 0
            for b in ms:
                acc |= masks[b]
            if target & ~acc == 0:
                return True
        return False
    if cls.tag == "puncture":
        return any(_member_absorbs_origin(gen, cov.level, ms) for ms in msets)
    if cls.tag == "tangential":
        ws, wl = gen.angular_window(n, cls.rep[1])
        return any(_member_tips_cover(gen, cov.level, ms, ws, wl, n)
                   for ms in msets)
    if tower.kind == "formal":
        return any(cls.rep in ms for ms in msets)
    cap = max((len(b) for ms in msets for b in ms), default=1)
    return any(_member_covers_disk(gen.p, ms, cls.rep,
                                   max(cap, len(cls.rep))) for ms in msets)


# Tukey refinement


class TukeyReport:
    __slots__ = ("ok", "level", "witness", "covering", "subcover_size")

    def __init__(self, ok, level, witness, covering, subcover_size):
        self.ok = ok
        self.level = level
        self.witness = witness
        self.covering = covering
        self.subcover_size = subcover_size

    def lines(self):
        out = ["covering=%s" % self.covering.name,
               "tukey=%s" % ("true" if self.ok else "false")]
        if self.level is not None:
            out.append("refining_level=%d" % self.level)
        if self.witness is not None:
            out.append("witness=%s" % self.witness)
        out.append("finite_subcover_size=%d" % self.subcover_size)
        return out


def is_tukey_at_depth(tower, cov):
    """Some level of the tower refines the covering: every block of the
    level fits inside a single member.  A finite subcover always exists
    because members are finitely many; its size is reported."""
    _validate_covering(tower, cov)
    gen = tower.gen
    msets = [frozenset(m) for m in cov.members]
    present = frozenset().union(*msets) if msets else frozenset()
    best = None
    witness = None
    for k in tower.levels():
        level_witness = None
        for b in _scan_puncture_first(gen, k):
            if not _block_in_some_member(tower, cov, msets, present, k, b):
                level_witness = "%d:%s" % (k, gen.block_name(k, b))
                break
        if level_witness is None:
            best = k
            break
        witness = level_witness
    return TukeyReport(best is not None, best,
                       None if best is not None else witness,
                       cov, len(cov.members))


def _scan_puncture_first(gen, k):
    # the blocks around the puncture are the ones a sector can never
    # hold; scanning them first keeps failing levels cheap
    if gen.kind == "metric_disk":
        yield from gen.origin_ids()
        for b in gen.block_ids(k):
            if not gen.is_origin(b):
                yield b
    else:
        yield from gen.block_ids(k)


def _block_in_some_member(tower, cov, msets, present, k, b):
    gen = tower.gen
    if cov.level <= k and tower.ancestor(k, b, cov.level) in present:
        return True
    if gen.kind == "metric_disk":
        box = gen.block_box(k, b)
        return any(_member_covers_box(gen, cov.level, ms, box, k)
                   for ms in msets)
    if gen.kind == "sectorial_disk":
        return any(_member_covers_polar(gen, cov.level, ms, b, k)
                   for ms in msets)
    if gen.kind == "formal":
        return any(b in ms for ms in msets)
    if gen.kind == "padic_disk":
        cap = max((len(m) for ms in msets for m in ms), default=1)
        return any(_member_covers_disk(gen.p, ms, b, max(cap, len(b)))
                   for ms in msets)
    masks = gen.masks
    target = masks[b]
    for ms in msets:
        acc = 0
        for x in ms:
            acc |= masks[x]
        if target & ~acc == 0:
            return True
    return False


# uniform continuity


class ContinuityReport:
    __slots__ = ("kind", "rows", "src", "dst")

    def __init__(self, kind, rows, src, dst):
        self.kind = kind
        self.rows = tuple(rows)
        self.src = src
        self.dst = dst

    @property
    def ok(self):
        return all(n is not None for _, n, _ in self.rows)

    def lines(self):
        out = ["map=%s" % self.kind,
               "uniformly_continuous=%s" % ("true" if self.ok else "false")]
        for m, n, w in self.rows:
            if n is not None:
                out.append("target=%d source=%d" % (m, n))
            else:
                out.append("target=%d FAIL witness=%s" % (m, w))
        return out


def check_uniform_continuity(kind, src, dst):
    """Depth table for a structure map: for each target level m, the
    least source level n whose every block maps inside a single target
    block, or FAIL with a witness block.  Least levels are monotone in
    m because target blocks sit inside their parents, so each search
    resumes where the previous row stopped."""
    if kind == "identity":
        if src.kind != dst.kind or src.gen.params != dst.gen.params:
            raise ValueError("incompatible generators for the identity")
    elif kind == "polar_to_cartesian":
        if src.kind != "sectorial_disk" or dst.kind != "metric_disk":
            raise ValueError("polar_to_cartesian maps the sectorial tower "
                             "to the metric tower")
    elif kind == "cartesian_to_polar":
        if src.kind != "metric_disk" or dst.kind != "sectorial_disk":
            raise ValueError("cartesian_to_polar maps the metric tower "
                             "to the sectorial tower")
    else:
        raise ValueError("unknown map %r" % (kind,))
    rows = []
    floor_n = 1
    for m in range(1, dst.depth + 1):
        found = None
        last_witness = None
        for n in range(floor_n, src.depth + 1):
            w = _first_unmapped(kind, src, n, dst, m)
            if w is None:
                found = n
                break
            last_witness = "%d:%s" % (n, src.gen.block_name(n, w))
        if found is not None:
            floor_n = found
            rows.append((m, found, None))
        else:
            rows.append((m, None, last_witness))
    return ContinuityReport(kind, rows, src, dst)


def _first_unmapped(kind, src, n, dst, m):
    gen = src.gen
    if kind == "identity":
        for b in src.block_ids(n):
            if not _identity_fits(gen, n, b, m):
                return b
        return None
    if kind == "polar_to_cartesian":
        # outer blocks have the widest images; scanning them first
        # detects a failing level quickly
        c = gen.counts(n)
        for i in reversed(range(c)):
            for a in range(c):
                if not _polar_block_fits(gen, n, (i, a), dst.gen, m):
                    return (i, a)
        return None
    for b in _scan_puncture_first(gen, n):
        if not _cartesian_block_fits(gen, n, b, dst.gen, m):
            return b
    return None


def _fit_linear(lo, hi, scale, interval_fn, imin, imax):
    """An index whose interval, scaled by scale, contains [lo, hi]:
    only the largest unclipped start and the clipped low edge can
    work.  Returns the index or None."""
    for i in (min(lo // (2 * scale), imax), imin):
        if i < imin or i > imax:
            continue
        blo, bhi = interval_fn(i)
        if blo * scale <= lo and hi <= bhi * scale:
            return i
    return None


def _identity_fits(gen, n, b, m):
    if gen.kind == "metric_disk":
        f = 1 << max(m - n, 0)
        g = 1 << max(n - m, 0)
        imin, imax = gen.irange(m)
        for ax in (0, 1):
            lo, hi = gen.interval(n, b[ax])
            if _fit_linear(lo * f, hi * f, g,
                           lambda i: gen.interval(m, i), imin, imax) is None:
                return False
        return True
    if gen.kind == "sectorial_disk":
        f = 1 << max(m - n, 0)
        g = 1 << max(n - m, 0)
        lo, hi = gen.radial_interval(n, b[0])
        if _fit_linear(lo * f, hi * f, g,
                       lambda i: gen.radial_interval(m, i), 0,
                       gen.counts(m) - 1) is None:
            return False
        mod = gen.angular_mod(max(n, m))
        ws, wl = gen.angular_window(n, b[1])
        ws, wl = (ws * f) % mod, wl * f
        a = (ws // (2 * g)) % gen.counts(m)
        ts, tl = gen.angular_window(m, a)
        return _circ_contains(ws, wl, (ts * g) % mod, tl * g, mod)
    if gen.kind == "padic_disk":
        return n >= m
    return True  # formal and finite levels repeat one covering


def _find_metric_block(gen, m, box):
    """A level-m block containing the rational box, or None."""
    x0, x1, y0, y1 = box
    r = gen.half_range(m)
    imin, imax = gen.irange(m)
    out = []
    for lo, hi in ((x0 * r, x1 * r), (y0 * r, y1 * r)):
        if lo < -r or hi > r:
            return None
        cand = None
        for i in (min(lo // 2, imax), imin):
            if i < imin or i > imax:
                continue
            blo, bhi = gen.interval(m, i)
            if blo <= lo and hi <= bhi:
                cand = i
                break
        if cand is None:
            return None
        out.append(cand)
    return tuple(out)


def _find_polar_block(gen, m, rho0, rho1, tau_s, tau_l):
    """A level-m polar block containing the radial interval times the
    circular tau arc, or None."""
    top = gen.radial_top(m)
    cmax = gen.counts(m) - 1
    p0, p1 = rho0 * top, rho1 * top
    if p0 < 0 or p1 > top:
        return None
    ri = None
    for i in (min(p0 // 2, cmax), 0):
        if i < 0 or i > cmax:
            continue
        lo, hi = gen.radial_interval(m, i)
        if lo <= p0 and p1 <= hi:
            ri = i
            break
    if ri is None:
        return None
    u_tau = Fraction(FULL_CIRCLE, 1 << (m + 1))
    if tau_l > 3 * u_tau:
        return None
    s_units = tau_s / u_tau
    a = (s_units // 2) % gen.counts(m)
    ws, wl = gen.angular_window(m, a)
    if (s_units - ws) % (1 << (m + 1)) + tau_l / u_tau <= wl:
        return (ri, int(a))
    return None


def _polar_block_fits(gen, n, b, dst_gen, m):
    lo, hi = gen.radial_interval(n, b[0])
    v = Fraction(1, 1 << (n + 1))
    rho0, rho1 = lo * v, hi * v
    ws, wl = gen.angular_window(n, b[1])
    u_tau = Fraction(FULL_CIRCLE, 1 << (n + 1))
    t0 = ws * u_tau
    t1 = t0 + wl * u_tau
    cands = [t0, t1]
    t = ceil(t0)
    while t < t1:
        if t % 2 == 0:  # gamma is linear between even integers
            cands.append(Fraction(t))
        t += 1
    gx = [_gamma(t)[0] for t in cands]
    gy = [_gamma(t)[1] for t in cands]
    xs = [r * g for r in (rho0, rho1) for g in (min(gx), max(gx))]
    ys = [r * g for r in (rho0, rho1) for g in (min(gy), max(gy))]
    return _find_metric_block(dst_gen, m,
                              (min(xs), max(xs), min(ys), max(ys))) is not None


def _cartesian_block_fits(gen, n, b, dst_gen, m):
    ext = gen.tau_extent(n, b)
    if ext is None:
        return False  # full angular spread next to the puncture
    x0, x1, y0, y1 = gen.block_box(n, b)
    w = Fraction(1, 1 << (n + 1))

    def minabs(lo, hi):
        if lo <= 0 <= hi:
            return 0
        return min(abs(lo), abs(hi))

    rho0 = max(minabs(x0, x1), minabs(y0, y1)) * w
    rho1 = max(abs(x0), abs(x1), abs(y0), abs(y1)) * w
    return _find_polar_block(dst_gen, m, rho0, rho1, ext[0],
                             ext[1]) is not None


# bornology


class BornologyReport:
    __slots__ = ("precompact", "bounded", "level_counts", "z", "n", "level")

    def __init__(self, precompact, bounded, level_counts, z, n, level):
        self.precompact = precompact
        self.bounded = bounded
        self.level_counts = tuple(level_counts)
        self.z = tuple(z)
        self.n = n
        self.level = level

    def lines(self):
        out = ["precompact=%s" % ("true" if self.precompact else "false"),
               "bounded=%s" % ("true" if self.bounded else "false")]
        for k, c in self.level_counts:
            out.append("meets[%d]=%d" % (k, c))
        out.append("Z=%s" % ",".join(self.z))
        out.append("iterations=%d" % self.n)
        return out


def bornology_at_depth(tower, level, blocks):
    """Finite-subcover counts per level for a block-union subset, and a
    boundedness witness: one seed block per adjacency component of the
    subset, with the number of star iterations needed to reach all of
    it from the seeds."""
    blocks = list(blocks)
    for b in blocks:
        tower._check_block(level, b)
    gen = tower.gen
    counts = []
    for k in tower.levels():
        c = sum(1 for b in tower.block_ids(k)
                if any(_blocks_meet(gen, k, b, level, t) for t in blocks))
        counts.append((k, c))
    bset = set(blocks)
    seen = set()
    seeds = []
    for b in sorted(bset, key=str):
        if b in seen:
            continue
        seeds.append(b)
        stack = [b]
        seen.add(b)
        while stack:
            cur = stack.pop()
            for nb in gen.neighbors(level, cur):
                if nb in bset and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    frontier = set(seeds)
    reached = set(seeds)
    n = 1
    while not bset <= reached:
        nxt = set()
        for b in frontier:
            for nb in gen.neighbors(level, b):
                if nb not in reached:
                    nxt.add(nb)
                    reached.add(nb)
        if not nxt:
            break
        frontier = nxt
        n += 1
    bounded = bset <= reached
    return BornologyReport(True, bounded, counts,
                           [gen.block_name(level, b) for b in seeds],
                           n, level)


def _blocks_meet(gen, k1, b1, k2, b2):
    if gen.kind == "metric_disk":
        lvl = max(k1, k2)
        f1, f2 = 1 << (lvl - k1), 1 << (lvl - k2)
        a = tuple(c * f1 for c in gen.block_box(k1, b1))
        b = tuple(c * f2 for c in gen.block_box(k2, b2))
        return not (a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2])
    if gen.kind == "sectorial_disk":
        lvl = max(k1, k2)
        f1, f2 = 1 << (lvl - k1), 1 << (lvl - k2)
        lo1, hi1 = gen.radial_interval(k1, b1[0])
        lo2, hi2 = gen.radial_interval(k2, b2[0])
        if hi1 * f1 < lo2 * f2 or hi2 * f2 < lo1 * f1:
            return False
        mod = gen.angular_mod(lvl)
        s1, l1 = gen.angular_window(k1, b1[1])
        s2, l2 = gen.angular_window(k2, b2[1])
        return _circ_intersects((s1 * f1) % mod, l1 * f1,
                                (s2 * f2) % mod, l2 * f2, mod)
    if gen.kind == "padic_disk":
        return b1.startswith(b2) or b2.startswith(b1)
    if gen.kind == "formal":
        return b1 == b2
    return gen.masks[b1] & gen.masks[b2] != 0


# the puncture quotient as a finite space


def _basis_topology(base, min_masks):
    """Alexandrov space stored by its minimal-open basis plus the empty
    and full sets.  Specialization, chains, and Hasse data only read
    the minimal opens, so the sheaf machinery works on it; the full
    open lattice is deliberately not materialized, and interior or
    closure of arbitrary sets must not be asked of these instances."""
    n = len(base)
    full = (1 << n) - 1
    mins = tuple(min_masks)
    for i, m in enumerate(mins):
        if not m >> i & 1:
            raise ValueError("minimal open must contain its point")
        rest = m
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            if mins[j] & ~m:
                raise ValueError("minimal opens must be transitive")
            rest ^= low
    top = FiniteTopology(base, sorted({0, full} | set(mins)), validate=False)
    assert top._min_open == mins
    return top


def puncture_quotient(tower):
    """The classes over the puncture as a finite topological space: one
    point for the metric tower; for the sectorial tower the circle of
    angular classes with a junction point between each adjacent pair,
    every junction specializing to its two neighbors."""
    if tower.kind == "metric_disk":
        base = FiniteSet(("p0",))
        return FiniteTopology.indiscrete(base), ("p0",)
    if tower.kind != "sectorial_disk":
        raise ValueError("puncture quotient needs a square generator")
    mcount = tower.gen.counts(tower.depth)
    labels = tuple("c%d" % a for a in range(mcount)) + tuple(
        "j%d" % a for a in range(mcount))
    base = FiniteSet(labels)
    mins = [1 << a for a in range(mcount)]
    for a in range(mcount):
        mins.append(1 << (mcount + a) | 1 << a | 1 << ((a + 1) % mcount))
    if len(labels) <= 16:
        # small enough for the honest full open lattice
        from .relations import Relation
        return FiniteTopology.from_preorder(Relation(base, mins)), labels
    return _basis_topology(base, mins), labels


def puncture_cohomology(tower):
    """Constant-sheaf Betti numbers of the puncture quotient, computed
    by the sheaf route and by the order-complex route."""
    from .gtop import constant_sheaf, sheaf_cohomology, simplicial_cohomology
    top, _ = puncture_quotient(tower)
    return sheaf_cohomology(constant_sheaf(top)), simplicial_cohomology(top)

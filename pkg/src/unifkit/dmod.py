"""Newton polygons, irregularity numbers, and the index of a linear
differential operator on the punctured projective line.

An operator is a list of rational function coefficients of powers of
d/dz.  Local analysis at a point goes through the Euler form: powers
of the derivative are rewritten in delta = (z-x) d/dz, whose
coefficient valuations carry the polygon.  The index formula
n*(2 - #Z) - sum of irregularities is validated against brute-force
linear algebra on growing windows of the partial fraction basis of the
functions regular away from Z.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from . import linalg
from .poly import (ONE, ZERO, Polynomial, RatFunc, partial_fractions,
                   rational_roots)

INF = "inf"


def as_point(x):
    if isinstance(x, str):
        if x == INF:
            return INF
        return Fraction(x)
    return Fraction(x)


def format_point(x):
    return INF if x == INF else str(x)


def _point_key(x):
    # finite points ascending, infinity last
    return (1, Fraction(0)) if x == INF else (0, x)


def _stirling_first(n):
    """Signed Stirling numbers s[i][j]: falling factorial coefficients,
    x(x-1)...(x-i+1) = sum_j s[i][j] x^j."""
    s = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    s[0][0] = ONE
    for i in range(n):
        for j in range(i + 1):
            if s[i][j]:
                s[i + 1][j + 1] += s[i][j]
                s[i + 1][j] -= i * s[i][j]
    return s


def _stirling_second(n):
    """S[j][k] with delta^j = sum_k S[j][k] z^k (d/dz)^k."""
    s = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    s[0][0] = ONE
    for j in range(n):
        for k in range(j + 1):
            if s[j][k]:
                s[j + 1][k + 1] += s[j][k]
                s[j + 1][k] += k * s[j][k]
    return s


class DiffOp:
    """Coefficients a_0..a_n of powers of d/dz; a_n must be nonzero and
    the order n at least 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = []
        for c in coeffs:
            if isinstance(c, RatFunc):
                cs.append(c)
            else:
                cs.append(RatFunc(c))
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        if len(cs) < 2:
            raise ValueError("operator order must be at least 1")
        if cs[-1].is_zero():
            raise ValueError("leading coefficient must be nonzero")
        self.coeffs = tuple(cs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def apply(self, f):
        if not isinstance(f, RatFunc):
            f = RatFunc(f)
        out = RatFunc(0)
        der = f
        for i, a in enumerate(self.coeffs):
            if i:
                der = der.deriv()
            if not a.is_zero():
                out = out + a * der
        return out

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.coeffs == other.coeffs

    def __repr__(self):
        return "DiffOp(%s)" % ", ".join(repr(c) for c in self.coeffs)


def to_delta_form(op, x):
    """Coefficients b_0..b_n with L = sum b_j delta^j, delta the scaled
    derivative (z-x) d/dz at a finite x.  At infinity the substitution
    w = 1/z is applied and the b_j come back as functions of w; the
    sign convention there is (-1)^j per coefficient, which matters to
    nobody downstream since only valuations are consumed."""
    x = as_point(x)
    n = op.order
    s1 = _stirling_first(n)
    if x == INF:
        shifted = RatFunc.variable()  # z, inverted below
        bs = []
        for j in range(n + 1):
            acc = RatFunc(0)
            for i in range(j, n + 1):
                if s1[i][j]:
                    acc = acc + op.coeffs[i] * (shifted ** (-i)) * s1[i][j]
            bs.append(acc.inverted() * ((-1) ** j))
        return tuple(bs)
    lin = RatFunc(Polynomial((-x, ONE)))
    bs = []
    for j in range(n + 1):
        acc = RatFunc(0)
        for i in range(j, n + 1):
            if s1[i][j]:
                acc = acc + op.coeffs[i] * (lin ** (-i)) * s1[i][j]
        bs.append(acc)
    return tuple(bs)


def delta_valuations(op, x):
    """Local orders of the Euler-form coefficients; None marks a zero
    coefficient."""
    x = as_point(x)
    bs = to_delta_form(op, x)
    if x == INF:
        return tuple(b.valuation(0) for b in bs)
    return tuple(b.valuation(x) for b in bs)


def delta_product(bs, cs):
    """Product of two operators given by Euler-form coefficients at 0,
    using the commutation delta f = f delta + z f'."""
    bs = [b if isinstance(b, RatFunc) else RatFunc(b) for b in bs]
    cs = [c if isinstance(c, RatFunc) else RatFunc(c) for c in cs]
    out = [RatFunc(0)] * (len(bs) + len(cs) - 1)
    for i, b in enumerate(bs):
        if b.is_zero():
            continue
        for j, c in enumerate(cs):
            if c.is_zero():
                continue
            # delta^i (c f) expands by the Leibniz rule for the Euler
            # derivative; dc walks through euler()^t of c
            dc = c
            for t in range(0, i + 1):
                out[i - t + j] = out[i - t + j] + b * comb(i, t) * dc
                dc = dc.euler()
    return tuple(out)


def delta_to_partial(bs):
    """Operator in d/dz form from Euler-form coefficients at 0."""
    bs = [b if isinstance(b, RatFunc) else RatFunc(b) for b in bs]
    n = len(bs) - 1
    s2 = _stirling_second(n)
    zz = RatFunc.variable()
    out = [RatFunc(0)] * (n + 1)
    for k in range(n + 1):
        acc = RatFunc(0)
        for j in range(k, n + 1):
            if s2[j][k] and not bs[j].is_zero():
                acc = acc + bs[j] * s2[j][k]
        out[k] = acc * zz ** k
    return DiffOp(out)


class NewtonPolygon:
    """Points (i, -v) for the Euler-form coefficient valuations, their
    upper convex hull, the positive slopes with horizontal lengths, and
    the irregularity.  Zero coefficients contribute no point."""

    __slots__ = ("points", "hull", "slopes", "irregularity")

    def __init__(self, valuations):
        pts = [(i, -v) for i, v in enumerate(valuations) if v is not None]
        if not pts:
            raise ValueError("polygon needs at least one finite valuation")
        self.points = tuple(pts)
        hull = []
        for p in pts:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= 0:
                hull.pop()
            hull.append(p)
        self.hull = tuple(hull)
        slopes = []
        rise = 0
        for (i1, y1), (i2, y2) in zip(hull, hull[1:]):
            lam = Fraction(y1 - y2, i2 - i1)
            if lam > 0:
                slopes.append((lam, i2 - i1))
                rise += y1 - y2
        self.slopes = tuple(slopes)
        # irregularity two ways: hull rise over the positive slopes, and
        # the closed form v(b_n) - min v(b_i); they must agree, integrally
        vn = -pts[-1][1]
        direct = max(0, max(vn + y for _, y in pts))
        assert rise == direct, "polygon rise disagrees with the closed form"
        assert rise == int(rise)
        self.irregularity = int(rise)


def _cross(o, a, b):
    return ((a[0] - o[0]) * (b[1] - o[1])
            - (a[1] - o[1]) * (b[0] - o[0]))


def newton_polygon(op, x):
    return NewtonPolygon(delta_valuations(op, x))


def irregularity(op, x):
    return newton_polygon(op, x).irregularity


def ordinary_at_infinity(op):
    """Whether the pullback under w = 1/z has pole-free monic
    coefficients at w = 0, i.e. infinity is not a singular point."""
    n = op.order
    bs = to_delta_form(op, 0)
    s2 = _stirling_second(n)
    tt = RatFunc.variable()
    cs = []
    for k in range(n + 1):
        acc = RatFunc(0)
        for j in range(k, n + 1):
            if s2[j][k] and not bs[j].is_zero():
                acc = acc + bs[j].inverted() * ((-1) ** j) * s2[j][k]
        cs.append(acc * tt ** k)
    lead = cs[n]
    if lead.is_zero():
        return False
    vl = lead.valuation(0)
    for c in cs[:-1]:
        v = c.valuation(0)
        if v is not None and v < vl:
            return False
    return True


class ConnectionSpec:
    """An operator together with the finite set of punctures it lives
    away from.  Every finite pole of a coefficient and every point
    where a monic coefficient has a pole must be listed; infinity must
    be listed too unless the caller certifies the operator regular
    there and the pullback check confirms it."""

    __slots__ = ("operator", "points", "infinity_regular")

    def __init__(self, operator, points, infinity_regular=False):
        pts = frozenset(as_point(p) for p in points)
        lead = operator.coeffs[-1]
        finite = {p for p in pts if p != INF}
        needed = set()
        for a in operator.coeffs:
            if a.is_zero():
                continue
            for f in (a, a / lead):
                roots, cof = rational_roots(f.den)
                if cof.degree > 0:
                    raise ValueError("operator has non-rational singular points")
                needed.update(roots)
        missing = needed - finite
        if missing:
            raise ValueError("Z omits the singular point %s"
                             % format_point(min(missing)))
        if INF not in pts:
            if not infinity_regular:
                raise ValueError(
                    "infinity must be in Z unless certified regular")
            if not ordinary_at_infinity(operator):
                raise ValueError("operator is not regular at infinity")
        self.operator = operator
        self.points = pts
        self.infinity_regular = INF not in pts

    @property
    def order(self):
        return self.operator.order

    def finite_points(self):
        return sorted(p for p in self.points if p != INF)

    def has_inf(self):
        return INF in self.points

    def sorted_points(self):
        return sorted(self.points, key=_point_key)


def deligne_chi(spec):
    """n*(2 - #Z) minus the total irregularity over Z."""
    if not spec.points:
        raise ValueError("Z must contain inf or be nonempty")
    n = spec.order
    total = 0
    for p in spec.points:
        total += irregularity(spec.operator, p)
    return n * (2 - len(spec.points)) - total


# brute-force index on windows of the partial fraction basis


def _shift_bound(spec):
    """How far one application of the operator can move a basis element
    along the coordinate grid, overestimated on purpose."""
    s = 1
    for i, a in enumerate(spec.operator.coeffs):
        if a.is_zero():
            continue
        for x in spec.finite_points():
            s = max(s, abs(i - a.valuation(x)))
        if spec.has_inf():
            s = max(s, abs((a.num.degree - a.den.degree) - i))
    return s


class _OracleSession:
    """Shared image cache for one spec across growing windows."""

    def __init__(self, spec):
        self.spec = spec
        self.shift = _shift_bound(spec)
        self._images = {}

    def basis_keys(self, d):
        keys = []
        top = d if self.spec.has_inf() else 0
        for m in range(top + 1):
            keys.append(("pw", m))
        for x in self.spec.finite_points():
            for k in range(1, d + 1):
                keys.append(("pole", x, k))
        return keys

    def _element(self, key):
        if key[0] == "pw":
            return RatFunc(Polynomial.monomial(key[1]))
        _, x, k = key
        return RatFunc(1, Polynomial((-x, ONE)) ** k)

    def image(self, key):
        try:
            return self._images[key]
        except KeyError:
            pass
        f = self.spec.operator.apply(self._element(key))
        poly_part, parts = partial_fractions(f, self.spec.finite_points())
        vec = {}
        if not self.spec.has_inf() and poly_part.degree > 0:
            raise ArithmeticError("image leaves the function space")
        for m, c in enumerate(poly_part.coeffs):
            if c:
                vec[("pw", m)] = c
        for x, coeffs in parts.items():
            for k, c in coeffs.items():
                vec[("pole", x, k)] = c
        self._images[key] = vec
        return vec

    def window_dims(self, d):
        """Kernel and cokernel sizes against the window of bound d.
        The kernel is exact inside the window; the cokernel counts
        window coordinates missed by images of the slightly larger
        window, the enlargement swallowing the coordinate shift."""
        inner = self.basis_keys(d)
        outer = self.basis_keys(d + self.shift)
        cols = [self.image(k) for k in outer]
        coords = sorted({c for v in cols for c in v},
                        key=_coord_key)
        cindex = {c: i for i, c in enumerate(coords)}
        inner_set = set(inner)
        full = [[ZERO] * len(outer) for _ in coords]
        for j, vec in enumerate(cols):
            for c, val in vec.items():
                full[cindex[c]][j] = val
        n_inner = len(inner)
        rank_inner = linalg.rank([row[:n_inner] for row in full])
        h0 = n_inner - rank_inner
        out_rows = [row for c, row in zip(coords, full)
                    if c not in inner_set or _beyond(c, d)]
        k_out = len(linalg.kernel_basis(out_rows, len(outer)))
        k_full = len(linalg.kernel_basis(full, len(outer)))
        h1 = n_inner - (k_out - k_full)
        return h0, h1


def _beyond(coord, d):
    if coord[0] == "pw":
        return coord[1] > d
    return coord[2] > d


def _coord_key(c):
    if c[0] == "pw":
        return (0, Fraction(0), c[1])
    return (1, c[1], c[2])


def derham_oracle(spec, degree_bound):
    """Index data from three windows starting at the given bound.
    Returns (h0, h1, stabilized) where the flag records agreement of
    the three consecutive windows.  The comparison with the index
    formula is only meaningful when infinity is punctured; otherwise
    the trivialization by dz, which has a double pole at infinity,
    separates the function-space index from the connection index."""
    if degree_bound < 1:
        raise ValueError("degree bound must be at least 1")
    session = _OracleSession(spec)
    dims = [session.window_dims(d)
            for d in (degree_bound, degree_bound + 5, degree_bound + 10)]
    h0, h1 = dims[-1]
    return h0, h1, dims[0] == dims[1] == dims[2]


class IndexReport:
    __slots__ = ("spec", "irregularities", "chi_formula", "h0", "h1",
                 "stabilized")

    def __init__(self, spec, irregularities, chi_formula, h0, h1, stabilized):
        self.spec = spec
        self.irregularities = irregularities
        self.chi_formula = chi_formula
        self.h0 = h0
        self.h1 = h1
        self.stabilized = stabilized

    @property
    def chi_oracle(self):
        return self.h0 - self.h1

    @property
    def agree(self):
        return self.stabilized and self.chi_formula == self.chi_oracle

    def lines(self):
        out = []
        for p in sorted(self.irregularities, key=_point_key):
            out.append("ir[%s]=%d" % (format_point(p),
                                      self.irregularities[p]))
        out.append("chi_formula=%d" % self.chi_formula)
        out.append("h0=%d" % self.h0)
        out.append("h1=%d" % self.h1)
        out.append("chi_oracle=%d" % self.chi_oracle)
        out.append("stabilized=%s" % ("true" if self.stabilized else "false"))
        out.append("agree=%s" % ("true" if self.agree else "false"))
        return out


def index_report(spec, d_start=10, d_step=5, d_max=80):
    """Irregularities, the formula value, and the stabilized oracle
    index; non-stabilization by d_max is flagged, not fatal."""
    irs = {p: irregularity(spec.operator, p) for p in spec.points}
    chi = deligne_chi(spec)
    session = _OracleSession(spec)
    history = []
    stabilized = False
    d = d_start
    while d <= d_max:
        history.append(session.window_dims(d))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            stabilized = True
            break
        d += d_step
    h0, h1 = history[-1]
    return IndexReport(spec, irs, chi, h0, h1, stabilized)


# built-in operator corpus


class CorpusEntry:
    __slots__ = ("name", "spec", "h0", "h1")

    def __init__(self, name, spec, h0, h1):
        self.name = name
        self.spec = spec
        self.h0 = h0
        self.h1 = h1

    @property
    def chi(self):
        return self.h0 - self.h1


def corpus():
    """Operators spanning regular, single-slope, mixed-slope, and
    rank-2 behavior, with their known cohomology dimensions."""
    z = Polynomial.variable()
    one = Polynomial.const(1)
    entries = []

    def add(name, coeffs, points, h0, h1):
        entries.append(CorpusEntry(
            name, ConnectionSpec(DiffOp(coeffs), points), h0, h1))

    add("gm-trivial", [0, one], [0, INF], 1, 1)
    add("thrice-punctured-trivial", [0, one], [0, 1, INF], 1, 2)
    add("exp-of-inverse", [one, z * z], [0, INF], 0, 1)
    add("euler-integer", [-2, z], [0, INF], 1, 1)
    add("euler-half", [Polynomial.const(Fraction(-1, 2)), z], [0, INF], 0, 0)
    add("mixed-slopes",
        [2 - 4 * z, z ** 4 + z ** 3 + 2 * z ** 2, z ** 5], [0, INF], 0, 3)
    add("airy", [-z, Polynomial(), one], [INF], 0, 1)
    add("hypergeometric-like",
        [Polynomial.const(Fraction(-1, 15)),
         Polynomial((Fraction(1, 2), Fraction(-23, 15))),
         z - z * z], [0, 1, INF], 0, 2)
    return tuple(entries)

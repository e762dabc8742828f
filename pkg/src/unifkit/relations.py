"""Binary relations on small finite label sets.

Everything downstream (entourage filters, specialization preorders,
quotients) works with these two classes.  A Relation is immutable and
carries its base set; mixing relations over different base sets raises
immediately instead of producing silent nonsense.

Rows are cached as integer bitmasks, so composition and closure are
word operations.  Sets of size beyond ~60 are out of scope (the word
trick still works in Python, but nothing here is meant for that).
"""

from __future__ import annotations

import itertools


class FiniteSet:
    """An ordered list of distinct labels. The order fixes element indices."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        for lab in labels:
            if not isinstance(lab, str) or lab == "":
                raise ValueError("labels must be nonempty strings, got %r" % (lab,))
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise ValueError("label %r not in base set" % (label,)) from None

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        return isinstance(other, FiniteSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return "FiniteSet(%r)" % (self.labels,)

    def mask_of(self, labels):
        """Bitmask of a collection of labels."""
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask):
        """Frozenset of labels from a bitmask."""
        return frozenset(lab for i, lab in enumerate(self.labels) if mask >> i & 1)

    def subsets(self, nonempty=False):
        """All subsets as frozensets, in mask order."""
        start = 1 if nonempty else 0
        for m in range(start, 1 << len(self.labels)):
            yield self.labels_of(m)


def _check_same_base(a, b):
    if a.base != b.base:
        raise ValueError("incompatible base sets")


class Relation:
    """A binary relation on a FiniteSet.

    Orientation convention used throughout: (x, y) in E means y is in the
    E-neighborhood E(x) of x.  compose follows arrows left to right:
    (x, z) in E.compose(F) iff (x, y) in E and (y, z) in F for some y.
    """

    __slots__ = ("base", "rows", "_pairs")

    def __init__(self, base, rows):
        # rows[i] = bitmask of successors of element i
        n = len(base)
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError("expected %d rows, got %d" % (n, len(rows)))
        full = (1 << n) - 1
        for r in rows:
            if not 0 <= r <= full:
                raise ValueError("row mask out of range")
        self.base = base
        self.rows = rows
        self._pairs = None

    @classmethod
    def from_pairs(cls, base, pairs):
        rows = [0] * len(base)
        for a, b in pairs:
            rows[base.index(a)] |= 1 << base.index(b)
        return cls(base, rows)

    @classmethod
    def diagonal(cls, base):
        return cls(base, [1 << i for i in range(len(base))])

    @classmethod
    def full(cls, base):
        m = (1 << len(base)) - 1
        return cls(base, [m] * len(base))

    @property
    def pairs(self):
        """Frozenset of label pairs. Built on first use."""
        if self._pairs is None:
            labs = self.base.labels
            self._pairs = frozenset(
                (labs[i], labs[j])
                for i, r in enumerate(self.rows)
                for j in range(len(labs))
                if r >> j & 1
            )
        return self._pairs

    def __eq__(self, other):
        return (
            isinstance(other, Relation)
            and self.base == other.base
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.base, self.rows))

    def __repr__(self):
        return "Relation(%r, %d pairs)" % (self.base.labels, len(self.pairs))

    def __contains__(self, pair):
        a, b = pair
        return self.rows[self.base.index(a)] >> self.base.index(b) & 1 == 1

    # set operations

    def union(self, other):
        _check_same_base(self, other)
        return Relation(self.base, [a | b for a, b in zip(self.rows, other.rows)])

    def intersection(self, other):
        _check_same_base(self, other)
        return Relation(self.base, [a & b for a, b in zip(self.rows, other.rows)])

    __or__ = union
    __and__ = intersection

    def is_subset(self, other):
        _check_same_base(self, other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    # relational algebra

    def compose(self, other):
        """self then other, reading pairs as arrows."""
        _check_same_base(self, other)
        n = len(self.base)
        out = []
        for i in range(n):
            r, acc = self.rows[i], 0
            while r:
                low = r & -r
                acc |= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return Relation(self.base, out)

    def inverse(self):
        n = len(self.base)
        out = [0] * n
        for i, r in enumerate(self.rows):
            for j in range(n):
                if r >> j & 1:
                    out[j] |= 1 << i
        return Relation(self.base, out)

    def image(self, labels):
        """E(A) = union of E(x) for x in A, as a frozenset of labels."""
        m = self.base.mask_of(labels)
        acc = 0
        while m:
            low = m & -m
            acc |= self.rows[low.bit_length() - 1]
            m ^= low
        return self.base.labels_of(acc)

    def neighborhood(self, label):
        return self.base.labels_of(self.rows[self.base.index(label)])

    def iterate(self, n, labels):
        """n-fold image E(E(...E(A))). n must be >= 1."""
        if n < 1:
            raise ValueError("iterate needs n >= 1")
        cur = labels
        for _ in range(n):
            cur = self.image(cur)
        return cur

    # predicates

    def contains_diagonal(self):
        return all(r >> i & 1 for i, r in enumerate(self.rows))

    def is_symmetric(self):
        n = len(self.base)
        return all(
            (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1)
            for i in range(n)
            for j in range(i + 1, n)
        )

    def is_transitive(self):
        # E transitive iff every successor's row folds back into the row
        for i, r in enumerate(self.rows):
            m, acc = r, 0
            while m:
                low = m & -m
                acc |= self.rows[low.bit_length() - 1]
                m ^= low
            if acc & ~r:
                return False
        return True

    def is_preorder(self):
        return self.contains_diagonal() and self.is_transitive()

    def is_equivalence(self):
        return self.is_preorder() and self.is_symmetric()

    def is_antisymmetric(self):
        n = len(self.base)
        return all(
            not (self.rows[i] >> j & 1 and self.rows[j] >> i & 1)
            for i in range(n)
            for j in range(n)
            if i != j
        )

    def transitive_closure(self):
        rows = list(self.rows)
        n = len(rows)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                r, acc = rows[i], rows[i]
                while r:
                    low = r & -r
                    acc |= rows[low.bit_length() - 1]
                    r ^= low
                if acc != rows[i]:
                    rows[i] = acc
                    changed = True
        return Relation(self.base, rows)

    def reflexive_transitive_closure(self):
        return self.union(Relation.diagonal(self.base)).transitive_closure()


def intersect_all(relations):
    """Intersection of a nonempty collection of relations over one base."""
    relations = list(relations)
    if not relations:
        raise ValueError("need at least one relation")
    acc = relations[0]
    for r in relations[1:]:
        acc = acc.intersection(r)
    return acc


def all_relations(base):
    """Every relation on base. 2^(n^2) of them, so keep n small."""
    n = len(base)
    full = (1 << n) - 1
    for rows in itertools.product(range(full + 1), repeat=n):
        yield Relation(base, rows)


def random_relation(base, rng, density=0.5):
    n = len(base)
    rows = []
    for _ in range(n):
        r = 0
        for j in range(n):
            if rng.random() < density:
                r |= 1 << j
        rows.append(r)
    return Relation(base, rows)

"""Ground sets, bitmask subsets, triplets, and the two orders everything uses.

Conventions:

* A ground set N of n variables (1 <= n <= 12) carries single-character
  labels, by default the first n of a, b, c, ...  Subsets of N are int
  bitmasks: bit i set <=> label i in the subset.
* Graded set order on P(N): compare by cardinality first, break ties by
  ascending lexicographic order on the sorted tuple of member indices.
  Subset ranks 0 .. 2^n - 1 enumerate P(N) ascending in this order, so the
  empty set has rank 0 and N has rank 2^n - 1.
* A triplet <A|B|C> has pairwise disjoint subsets A, B, C of N and stands
  for "A independent of B given C".  By symmetry of the first two slots the
  canonical form puts A strictly before B in the graded set order whenever
  both are nonempty.
* Elementary triplets <a|b|C> have singleton A and B.  The elementary order
  compares C in the graded set order, then b, then a; ranks
  0 .. |E(N)| - 1 with |E(N)| = C(n,2) * 2^(n-2).

Serialization: a subset prints as its labels concatenated in index order
("acd"), the empty set prints as "0"; a triplet prints as "A|B|C", e.g.
"a|b|cd" or "a|b|0".
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import cached_property


MAX_GROUND_SIZE = 12


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bit_indices(mask: int) -> tuple[int, ...]:
    """Indices of set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def iter_submasks(mask: int):
    """All submasks of `mask`, in no particular order (includes 0 and mask)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class GroundSet:
    """A fixed set of variables with labels; owns subset/elementary ranking.

    All other types hold a reference to their GroundSet, and two objects are
    only comparable/combinable when they share one (same labels).
    """

    def __init__(self, n_or_labels):
        if isinstance(n_or_labels, int):
            n = n_or_labels
            if not 1 <= n <= MAX_GROUND_SIZE:
                raise ValueError(f"ground set size must be in 1..{MAX_GROUND_SIZE}, got {n}")
            labels = tuple(string.ascii_lowercase[:n])
        else:
            labels = tuple(n_or_labels)
            if not 1 <= len(labels) <= MAX_GROUND_SIZE:
                raise ValueError(f"ground set size must be in 1..{MAX_GROUND_SIZE}, got {len(labels)}")
            if any(not (isinstance(l, str) and len(l) == 1) for l in labels):
                raise ValueError("labels must be single characters")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be distinct")
        self.labels = labels
        self.n = len(labels)
        self.full_mask = (1 << self.n) - 1
        self.num_subsets = 1 << self.n
        self._label_index = {l: i for i, l in enumerate(labels)}

    def __repr__(self):
        return f"GroundSet({''.join(self.labels)!r})"

    def __eq__(self, other):
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    # -- subset ranking ------------------------------------------------

    def subset_key(self, mask: int):
        """Sort key realizing the graded set order."""
        return (popcount(mask), bit_indices(mask))

    @cached_property
    def masks_graded(self) -> tuple[int, ...]:
        """All subset masks ascending in the graded set order."""
        return tuple(sorted(range(self.num_subsets), key=self.subset_key))

    @cached_property
    def _rank_of_mask(self) -> tuple[int, ...]:
        rank = [0] * self.num_subsets
        for r, m in enumerate(self.masks_graded):
            rank[m] = r
        return tuple(rank)

    def subset_rank(self, mask: int) -> int:
        return self._rank_of_mask[mask]

    def mask_of_rank(self, rank: int) -> int:
        return self.masks_graded[rank]

    # -- subset parsing/formatting ---------------------------------------

    def subset_str(self, mask: int) -> str:
        if mask == 0:
            return "0"
        return "".join(self.labels[i] for i in bit_indices(mask))

    def parse_subset(self, text: str) -> int:
        if text == "0":
            return 0
        mask = 0
        for ch in text:
            i = self._label_index.get(ch)
            if i is None:
                raise ValueError(f"unknown label {ch!r} for ground set {''.join(self.labels)}")
            if mask & (1 << i):
                raise ValueError(f"repeated label {ch!r} in subset {text!r}")
            mask |= 1 << i
        return mask

    def subset(self, arg) -> "Subset":
        """Build a Subset from a mask, a label string, or an iterable of labels."""
        if isinstance(arg, Subset):
            if arg.ground != self:
                raise ValueError("subset belongs to a different ground set")
            return arg
        if isinstance(arg, int):
            if not 0 <= arg <= self.full_mask:
                raise ValueError(f"mask {arg} out of range for n={self.n}")
            return Subset(self, arg)
        if isinstance(arg, str):
            return Subset(self, self.parse_subset(arg))
        mask = 0
        for l in arg:
            mask |= 1 << self._label_index[l]
        return Subset(self, mask)

    # -- elementary ranking ----------------------------------------------

    @cached_property
    def elementary_triples(self) -> tuple[tuple[int, int, int], ...]:
        """(a_bit, b_bit, c_mask) for all elementary triplets, ascending rank."""
        out = []
        for c_mask in self.masks_graded:
            rest = bit_indices(self.full_mask & ~c_mask)
            for j, b in enumerate(rest):
                for a in rest[:j]:
                    out.append((a, b, c_mask))
        # masks_graded ascends in C; within a C block the loops ascend in
        # (b, a), which is exactly the elementary order.
        return tuple(out)

    @cached_property
    def _elementary_rank(self) -> dict:
        return {t: r for r, t in enumerate(self.elementary_triples)}

    @property
    def num_elementary(self) -> int:
        return len(self.elementary_triples)


@dataclass(frozen=True)
class Subset:
    """A subset of a ground set, stored as a bitmask."""

    ground: GroundSet
    mask: int

    @property
    def cardinality(self) -> int:
        return popcount(self.mask)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground.labels[i] for i in bit_indices(self.mask))

    @property
    def rank(self) -> int:
        return self.ground.subset_rank(self.mask)

    def key(self):
        return self.ground.subset_key(self.mask)

    def __str__(self):
        return self.ground.subset_str(self.mask)


def graded_set_order(ground: GroundSet, s: int, t: int) -> int:
    """-1/0/+1 comparison of subset masks s, t in the graded set order."""
    ks, kt = ground.subset_key(s), ground.subset_key(t)
    return (ks > kt) - (ks < kt)


@dataclass(frozen=True)
class Triplet:
    """A canonical triplet <A|B|C> of pairwise disjoint subsets.

    Stored as masks.  The constructor canonicalizes by swapping A and B so
    that A comes first in the graded set order (when both are nonempty) and
    rejects overlapping parts.
    """

    ground: GroundSet
    a_mask: int
    b_mask: int
    c_mask: int

    def __post_init__(self):
        g = self.ground
        for m in (self.a_mask, self.b_mask, self.c_mask):
            if not 0 <= m <= g.full_mask:
                raise ValueError("triplet part out of range for ground set")
        if (self.a_mask & self.b_mask) or (self.a_mask & self.c_mask) or (self.b_mask & self.c_mask):
            raise ValueError("triplet parts must be pairwise disjoint")
        if self.a_mask and self.b_mask and g.subset_key(self.b_mask) < g.subset_key(self.a_mask):
            a, b = self.a_mask, self.b_mask
            object.__setattr__(self, "a_mask", b)
            object.__setattr__(self, "b_mask", a)

    @classmethod
    def parse(cls, ground: GroundSet, text: str) -> "Triplet":
        parts = text.split("|")
        if len(parts) != 3:
            raise ValueError(f"triplet must have three '|'-separated parts, got {text!r}")
        a, b, c = (ground.parse_subset(p) for p in parts)
        return cls(ground, a, b, c)

    @property
    def A(self) -> Subset:
        return Subset(self.ground, self.a_mask)

    @property
    def B(self) -> Subset:
        return Subset(self.ground, self.b_mask)

    @property
    def C(self) -> Subset:
        return Subset(self.ground, self.c_mask)

    @property
    def effective_mask(self) -> int:
        return self.a_mask | self.b_mask | self.c_mask

    @property
    def is_elementary(self) -> bool:
        return popcount(self.a_mask) == 1 and popcount(self.b_mask) == 1

    @property
    def is_trivial(self) -> bool:
        """True when A or B is empty (the associated imset is zero)."""
        return self.a_mask == 0 or self.b_mask == 0

    def key(self):
        """Sort key: C, then B, then A in the graded set order.

        Restricted to elementary triplets this realizes the elementary order.
        """
        g = self.ground
        return (g.subset_key(self.c_mask), g.subset_key(self.b_mask), g.subset_key(self.a_mask))

    def __str__(self):
        g = self.ground
        return f"{g.subset_str(self.a_mask)}|{g.subset_str(self.b_mask)}|{g.subset_str(self.c_mask)}"


@dataclass(frozen=True)
class ElementaryIndex:
    """An elementary triplet <a|b|C> together with its rank in E(N).

    a < b as label indices; rank is the position in the elementary order.
    """

    ground: GroundSet
    a_bit: int
    b_bit: int
    c_mask: int

    def __post_init__(self):
        g = self.ground
        if not (0 <= self.a_bit < self.b_bit < g.n):
            raise ValueError("elementary triplet needs distinct singletons a < b")
        if self.c_mask & ((1 << self.a_bit) | (1 << self.b_bit)):
            raise ValueError("conditioning set overlaps {a, b}")
        if not 0 <= self.c_mask <= g.full_mask:
            raise ValueError("conditioning set out of range")

    @classmethod
    def from_rank(cls, ground: GroundSet, rank: int) -> "ElementaryIndex":
        a, b, c = ground.elementary_triples[rank]
        return cls(ground, a, b, c)

    @classmethod
    def from_triplet(cls, t: Triplet) -> "ElementaryIndex":
        if not t.is_elementary:
            raise ValueError(f"triplet {t} is not elementary")
        return cls(t.ground, bit_indices(t.a_mask)[0], bit_indices(t.b_mask)[0], t.c_mask)

    @property
    def rank(self) -> int:
        return self.ground._elementary_rank[(self.a_bit, self.b_bit, self.c_mask)]

    def triplet(self) -> Triplet:
        return Triplet(self.ground, 1 << self.a_bit, 1 << self.b_bit, self.c_mask)

    def __str__(self):
        return str(self.triplet())


def elementary_order(e1: ElementaryIndex, e2: ElementaryIndex) -> int:
    """-1/0/+1 comparison in the elementary order (C graded, then b, then a)."""
    if e1.ground != e2.ground:
        raise ValueError("cannot compare elementary triplets over different ground sets")
    r1, r2 = e1.rank, e2.rank
    return (r1 > r2) - (r1 < r2)


def enumerate_elementary(ground: GroundSet):
    """All ElementaryIndex objects ascending in the elementary order."""
    return [ElementaryIndex(ground, a, b, c) for (a, b, c) in ground.elementary_triples]


def enumerate_triplets(ground: GroundSet, elementary_only: bool = False):
    """All canonical triplets <A|B|C> with A, B nonempty, deterministically.

    The order sorts by (C, B, A) in the graded set order; restricted to
    elementary triplets this is exactly the elementary order, and with
    elementary_only=True the list has length |E(N)| and matches
    enumerate_elementary rank for rank.
    """
    g = ground
    out = []
    for c_mask in g.masks_graded:
        comp = g.full_mask & ~c_mask
        bs = sorted(iter_submasks(comp), key=g.subset_key)
        for b_mask in bs:
            if b_mask == 0:
                continue
            if elementary_only and popcount(b_mask) != 1:
                continue
            rest = comp & ~b_mask
            for a_mask in sorted(iter_submasks(rest), key=g.subset_key):
                if a_mask == 0:
                    continue
                if elementary_only and popcount(a_mask) != 1:
                    continue
                if g.subset_key(a_mask) < g.subset_key(b_mask):
                    out.append(Triplet(g, a_mask, b_mask, c_mask))
    return out

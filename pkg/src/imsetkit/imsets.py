"""Imsets: integer-valued functions on P(N) and the configuration matrix.

An imset is stored as a dense integer vector of length 2^n indexed by subset
rank in the graded set order.  The basic building blocks are

    delta(A)             the indicator of the single subset A,
    u_<A|B|C> = delta(ABC) + delta(C) - delta(AC) - delta(BC)

(the semi-elementary imset of a triplet; zero when A or B is empty).
Elementary imsets are the u_<a|b|C> with singleton a, b; collecting them as
columns, ascending in the elementary order, gives the configuration matrix
of the ground set.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .groundset import (
    ElementaryIndex,
    GroundSet,
    Subset,
    Triplet,
    enumerate_elementary,
    popcount,
)


@dataclass(frozen=True)
class Imset:
    """Integer vector over P(N), indexed by subset rank (graded set order)."""

    ground: GroundSet
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.ground.num_subsets:
            raise ValueError("imset vector length must be 2^n")
        if any(not isinstance(v, int) for v in self.values):
            raise ValueError("imset values must be integers")

    @classmethod
    def zero(cls, ground: GroundSet) -> "Imset":
        return cls(ground, (0,) * ground.num_subsets)

    @classmethod
    def from_dict(cls, ground: GroundSet, entries: dict) -> "Imset":
        """Build from a {subset-string: int} map; missing subsets are 0."""
        vals = [0] * ground.num_subsets
        for key, v in entries.items():
            vals[ground.subset_rank(ground.parse_subset(key))] = int(v)
        return cls(ground, tuple(vals))

    def to_dict(self) -> dict:
        """{subset-string: int} with zero entries omitted, ascending rank."""
        g = self.ground
        return {
            g.subset_str(g.mask_of_rank(r)): v
            for r, v in enumerate(self.values)
            if v != 0
        }

    def at(self, mask: int) -> int:
        """Value at the subset given as a bitmask."""
        return self.values[self.ground.subset_rank(mask)]

    def items(self):
        """(mask, value) pairs for nonzero entries, ascending rank."""
        g = self.ground
        for r, v in enumerate(self.values):
            if v != 0:
                yield g.mask_of_rank(r), v

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def _check_same_ground(self, other: "Imset"):
        if self.ground != other.ground:
            raise ValueError("imsets over different ground sets")

    def __add__(self, other: "Imset") -> "Imset":
        self._check_same_ground(other)
        return Imset(self.ground, tuple(x + y for x, y in zip(self.values, other.values)))

    def __sub__(self, other: "Imset") -> "Imset":
        self._check_same_ground(other)
        return Imset(self.ground, tuple(x - y for x, y in zip(self.values, other.values)))

    def __neg__(self) -> "Imset":
        return Imset(self.ground, tuple(-x for x in self.values))

    def scale(self, c: int) -> "Imset":
        if not isinstance(c, int):
            raise ValueError("imsets scale by integers only")
        return Imset(self.ground, tuple(c * x for x in self.values))

    def __rmul__(self, c: int) -> "Imset":
        return self.scale(c)

    def format_text(self) -> str:
        """Render in delta-notation, descending subset rank (N first).

        The full set prints as N and the empty set as the usual symbol, e.g.
        "δ_N + 2δ_ab − δ_a + δ_∅".
        """
        g = self.ground
        parts = []
        for r in range(g.num_subsets - 1, -1, -1):
            v = self.values[r]
            if v == 0:
                continue
            mask = g.mask_of_rank(r)
            if mask == g.full_mask and g.n > 1:
                name = "N"
            elif mask == 0:
                name = "∅"
            else:
                name = g.subset_str(mask)
            mag = "" if abs(v) == 1 else str(abs(v))
            sign = "−" if v < 0 else "+"
            parts.append((sign, f"{mag}δ_{name}"))
        if not parts:
            return "0"
        first_sign, first_term = parts[0]
        text = ("−" if first_sign == "−" else "") + first_term
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def delta(A: Subset) -> Imset:
    """The imset with value 1 at A and 0 elsewhere."""
    g = A.ground
    vals = [0] * g.num_subsets
    vals[g.subset_rank(A.mask)] = 1
    return Imset(g, tuple(vals))


def semi_elementary(t: Triplet) -> Imset:
    """u_<A|B|C> = delta(ABC) + delta(C) - delta(AC) - delta(BC).

    Returns the zero imset when A or B is empty.
    """
    g = t.ground
    vals = [0] * g.num_subsets
    if not t.is_trivial:
        vals[g.subset_rank(t.a_mask | t.b_mask | t.c_mask)] += 1
        vals[g.subset_rank(t.c_mask)] += 1
        vals[g.subset_rank(t.a_mask | t.c_mask)] -= 1
        vals[g.subset_rank(t.b_mask | t.c_mask)] -= 1
    return Imset(g, tuple(vals))


def elementary_imset(e: ElementaryIndex) -> Imset:
    return semi_elementary(e.triplet())


def inner(f, u: Imset):
    """<f, u> = Σ_S f(S) u(S); f is any object with rank-aligned .values."""
    if f.ground != u.ground:
        raise ValueError("inner product requires a common ground set")
    return sum(fv * uv for fv, uv in zip(f.values, u.values) if uv != 0)


@dataclass(frozen=True)
class Configuration:
    """Columns = elementary imsets over a common ground set.

    The full configuration has one column per element of E(N), ascending in
    the elementary order; sub-configurations restrict to an explicit column
    list.  matrix[i][j] is the value of column j at the subset of rank i.
    """

    ground: GroundSet
    columns: tuple
    matrix: tuple

    @property
    def num_rows(self) -> int:
        return self.ground.num_subsets

    @property
    def num_cols(self) -> int:
        return len(self.columns)

    def column_vector(self, j: int) -> tuple:
        return tuple(row[j] for row in self.matrix)

    def to_csv(self) -> str:
        """CSV with a header row of triplet strings and a first column of
        subset strings."""
        g = self.ground
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(e) for e in self.columns])
        for r in range(self.num_rows):
            w.writerow([g.subset_str(g.mask_of_rank(r))] + list(self.matrix[r]))
        return buf.getvalue()


def configuration(g: GroundSet, columns=None) -> Configuration:
    """The configuration matrix; optionally restricted to given columns.

    columns: list of ElementaryIndex (defaults to all of E(N) ascending).
    """
    if g.n < 2 and columns is None:
        raise ValueError("configuration needs at least two variables")
    if columns is None:
        columns = enumerate_elementary(g)
    cols = []
    for e in columns:
        if e.ground != g:
            raise ValueError("column over a different ground set")
        cols.append(elementary_imset(e).values)
    matrix = tuple(tuple(col[r] for col in cols) for r in range(g.num_subsets))
    return Configuration(g, tuple(columns), matrix)


def decompose_semi_elementary(t: Triplet):
    """Canonical decomposition of u_<A|B|C> into elementary imsets.

    Splits the largest label off B first (u_<A|B|C> = u_<A|B-d|C> +
    u_<A|d|(B-d)C>), then off A once B is a singleton.  Returns a list of
    (ElementaryIndex, positive multiplicity) pairs ascending in rank; the
    total multiplicity is |A||B|.
    """
    if t.is_trivial:
        raise ValueError("decomposition needs A and B nonempty")
    g = t.ground
    counts: dict = {}

    def split(a_mask, b_mask, c_mask):
        if popcount(b_mask) > 1:
            d = 1 << (b_mask.bit_length() - 1)
            split(a_mask, b_mask & ~d, c_mask)
            split(a_mask, d, (b_mask & ~d) | c_mask)
        elif popcount(a_mask) > 1:
            d = 1 << (a_mask.bit_length() - 1)
            split(a_mask & ~d, b_mask, c_mask)
            split(d, b_mask, (a_mask & ~d) | c_mask)
        else:
            a, b = a_mask.bit_length() - 1, b_mask.bit_length() - 1
            e = ElementaryIndex(g, min(a, b), max(a, b), c_mask)
            counts[e] = counts.get(e, 0) + 1

    split(t.a_mask, t.b_mask, t.c_mask)
    return sorted(counts.items(), key=lambda kv: kv[0].rank)


def is_member_L_star(u: Imset) -> bool:
    """Membership in the lattice spanned by the elementary imsets.

    Holds iff the total sum of values is 0 and, for every element e, the sum
    over subsets containing e is 0.
    """
    g = u.ground
    if sum(u.values) != 0:
        return False
    for i in range(g.n):
        bit = 1 << i
        if sum(v for mask, v in u.items() if mask & bit) != 0:
            return False
    return True

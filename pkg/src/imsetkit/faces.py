"""Faces of the supermodular-dual cone spanned by elementary imsets.

The semi-elementary imset u_<A|B|C> sits in the relative interior of a face
whose extreme rays are exactly the elementary imsets

    E_<A|B|C> = { u_<a|b|Γ> : a in A, b in B, C ⊆ Γ ⊆ ABC∖ab },

a set of size |A||B|·2^(|A|+|B|-2) spanning a space of dimension
(2^|A|-1)(2^|B|-1).  The orthogonal description of the same face is a family
M_<A|B|C> of 0/1-valued supermodular functions (four indicator families of
total size 2^n - (2^|A|-1)(2^|B|-1)): an elementary imset belongs to the
face iff it is orthogonal to every member of M, and every outsider is
separated by some member with inner product exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groundset import (
    ElementaryIndex,
    GroundSet,
    Triplet,
    bit_indices,
    iter_submasks,
    popcount,
)
from .imsets import Configuration, Imset, configuration, elementary_imset, inner, semi_elementary
from .linalg import RationalMatrix, lp_feasible, rank
from .supermodular import SetFunction


def _graded_submasks(g: GroundSet, mask: int):
    return sorted(iter_submasks(mask), key=g.subset_key)


def _superset_indicator(g: GroundSet, mask: int) -> SetFunction:
    return SetFunction(g, tuple(1 if m & mask == mask else 0 for m in g.masks_graded))


def _subset_indicator(g: GroundSet, mask: int) -> SetFunction:
    return SetFunction(g, tuple(1 if m & ~mask == 0 else 0 for m in g.masks_graded))


def _require_nontrivial(t: Triplet):
    if t.is_trivial:
        raise ValueError("face analysis needs nonempty A and B")


def extreme_set(t: Triplet) -> list:
    """The elementary imsets <a|b|Γ> with a in A, b in B, C ⊆ Γ ⊆ ABC∖ab,
    ascending in the elementary order."""
    _require_nontrivial(t)
    g = t.ground
    abc = t.a_mask | t.b_mask | t.c_mask
    out = []
    for a in bit_indices(t.a_mask):
        for b in bit_indices(t.b_mask):
            pair = (1 << a) | (1 << b)
            free = abc & ~pair & ~t.c_mask
            for extra in iter_submasks(free):
                lo, hi = (a, b) if a < b else (b, a)
                out.append(ElementaryIndex(g, lo, hi, t.c_mask | extra))
    out.sort(key=lambda e: e.rank)
    return out


def _orthogonal_with_descriptors(t: Triplet) -> list:
    """[(SetFunction, descriptor)] for the four indicator families, in
    canonical order."""
    g = t.ground
    ab = t.a_mask | t.b_mask
    abc = ab | t.c_mask
    d_mask = g.full_mask & ~abc

    def sup(mask):
        return (_superset_indicator(g, mask),
                {"kind": "superset-of", "set": g.subset_str(mask)})

    def sub(mask):
        return (_subset_indicator(g, mask),
                {"kind": "subset-of", "set": g.subset_str(mask)})

    out = []
    for a1 in _graded_submasks(g, t.a_mask):
        out.append(sup(a1 | t.c_mask))
    for b1 in _graded_submasks(g, t.b_mask):
        if b1:
            out.append(sup(b1 | t.c_mask))
    for e in _graded_submasks(g, ab):
        for c1 in _graded_submasks(g, t.c_mask):
            if c1 != t.c_mask:
                out.append(sub(e | c1))
    for e in _graded_submasks(g, abc):
        for d1 in _graded_submasks(g, d_mask):
            if d1:
                out.append(sup(e | d1))
    return out


def orthogonal_set(t: Triplet) -> list:
    """The four indicator families orthogonal to the face of u_<A|B|C>.

    Order: family 1 (supersets of A₁C, A₁ ⊆ A), family 2 (supersets of B₁C,
    ∅ ≠ B₁ ⊆ B), family 3 (subsets of E∪C₁, E ⊆ AB, C₁ ⊊ C), family 4
    (supersets of E∪D₁, E ⊆ ABC, ∅ ≠ D₁ ⊆ D = N∖ABC); within a family the
    major then minor index ascend in the graded set order.
    """
    _require_nontrivial(t)
    return [f for f, _ in _orthogonal_with_descriptors(t)]


@dataclass(frozen=True)
class FaceDescription:
    """Extreme rays, orthogonal family, and dimension of the face of
    u_<A|B|C>."""

    triplet: Triplet
    extreme_set: tuple
    orthogonal_set: tuple
    dimension: int
    descriptors: tuple = ()

    def to_json(self) -> dict:
        return {
            "triplet": str(self.triplet),
            "dimension": self.dimension,
            "extreme_set": [str(e) for e in self.extreme_set],
            "orthogonal_set": [dict(d) for d in self.descriptors],
        }


def face_description(t: Triplet) -> FaceDescription:
    _require_nontrivial(t)
    dim = ((1 << popcount(t.a_mask)) - 1) * ((1 << popcount(t.b_mask)) - 1)
    pairs = _orthogonal_with_descriptors(t)
    return FaceDescription(
        t,
        tuple(extreme_set(t)),
        tuple(f for f, _ in pairs),
        dim,
        tuple(d for _, d in pairs),
    )


def extreme_rank(t: Triplet) -> int:
    """Rank of the span of the face's extreme rays (should equal the
    dimension formula)."""
    rows = [elementary_imset(e).values for e in extreme_set(t)]
    return rank(RationalMatrix.from_rows(rows, t.ground.num_subsets))


def verify_face_theorem(t: Triplet) -> dict:
    """Check both directions of the face characterization over all of E(N),
    plus linear independence of the orthogonal family and the rank of the
    extreme rays.  Failures are reported, not raised."""
    _require_nontrivial(t)
    g = t.ground
    members = set(e.rank for e in extreme_set(t))
    family = orthogonal_set(t)
    failures = []
    for e_rank in range(g.num_elementary):
        e = ElementaryIndex.from_rank(g, e_rank)
        u = elementary_imset(e)
        inners = [inner(f, u) for f in family]
        if e_rank in members:
            if any(v != 0 for v in inners):
                failures.append(f"member {e} not orthogonal to the family")
        else:
            if not any(v == 1 for v in inners):
                failures.append(f"non-member {e} not separated with inner product 1")
    fam_rank = rank(RationalMatrix.from_rows([f.values for f in family], g.num_subsets))
    if fam_rank != len(family):
        failures.append(f"orthogonal family rank {fam_rank} below size {len(family)}")
    dim = ((1 << popcount(t.a_mask)) - 1) * ((1 << popcount(t.b_mask)) - 1)
    ext_rank = extreme_rank(t)
    if ext_rank != dim:
        failures.append(f"extreme-ray rank {ext_rank} differs from dimension {dim}")
    return {
        "ok": not failures,
        "triplet": str(t),
        "orthogonal_family_size": len(family),
        "orthogonal_family_rank": fam_rank,
        "extreme_rank": ext_rank,
        "dimension": dim,
        "failures": failures,
    }


def face_of_structural(u: Imset) -> list:
    """Extreme rays of the least face containing a structural imset u: the
    elementary v with mu*u - v in the cone for some mu >= 0 (exact LP per
    elementary imset)."""
    from .ci import is_structural

    g = u.ground
    if not is_structural(u):
        raise ValueError("imset is not structural")
    cfg = configuration(g)
    nrows = g.num_subsets
    cols = [list(u.values)] + [
        [-v for v in cfg.column_vector(j)] for j in range(cfg.num_cols)
    ]
    A = [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]
    out = []
    for e_rank in range(g.num_elementary):
        e = ElementaryIndex.from_rank(g, e_rank)
        if lp_feasible(A, elementary_imset(e).values).feasible:
            out.append(e)
    return out


def subconfiguration(t: Triplet) -> Configuration:
    """Configuration restricted to the face's extreme rays; needs the
    triplet to use up the whole ground set (ABC = N)."""
    _require_nontrivial(t)
    g = t.ground
    if t.a_mask | t.b_mask | t.c_mask != g.full_mask:
        raise ValueError("sub-configuration needs ABC = N")
    return configuration(g, columns=extreme_set(t))

"""Kernel vectors of the configuration: moves, reduction, classification.

A move is an integer vector z over E(N) with configuration·z = 0; writing
z = z⁺ - z⁻ gives a relation Σα_i u_i = Σβ_j v_j between elementary
imsets.  The basic 2x2 moves

    u_<a|b1|C> + u_<a|b2|b1C> = u_<a|b2|C> + u_<a|b1|b2C>

generate the whole integer kernel; reduce_to_basis implements the
constructive elimination: repeatedly cancel the least nonzero coefficient
(in the elementary order) with the one prescribed basic move whose other
three terms come strictly later, so the leading index climbs until the
vector is exhausted.

Relations with a side of at most three distinct imsets fall into a short
taxonomy: positive multiples of a basic move, positive multiples of the
cyclic 3x3 exchange

    u_<a|b1|b2C> + u_<a|b2|b3C> + u_<a|b3|b1C>
      = u_<a|b2|b1C> + u_<a|b3|b2C> + u_<a|b1|b3C>,

relations one of whose sides contains a full side of a basic move, and a
residual class "other".  enumerate_small_relations machine-checks the
taxonomy by brute force within explicit bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .groundset import ElementaryIndex, GroundSet, Triplet, bit_indices, iter_submasks
from .imsets import Imset, configuration
from .membership import _dfs_witnesses


class BudgetError(RuntimeError):
    """Raised when a computation would exceed its documented budget."""


@dataclass(frozen=True)
class Move:
    """Integer kernel vector of the configuration, indexed by elementary
    rank."""

    ground: GroundSet
    coeffs: tuple

    def __post_init__(self):
        g = self.ground
        if len(self.coeffs) != g.num_elementary:
            raise ValueError("coefficient vector must cover all of E(N)")
        if any(not isinstance(c, int) for c in self.coeffs):
            raise ValueError("move coefficients must be integers")
        if sum(self.coeffs) != 0:
            raise ValueError("move coefficients must sum to zero")
        cfg = configuration(g)
        for r in range(g.num_subsets):
            row = cfg.matrix[r]
            if sum(row[j] * c for j, c in enumerate(self.coeffs) if c) != 0:
                raise ValueError("not a kernel vector of the configuration")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def degree(self) -> int:
        return sum(c for c in self.coeffs if c > 0)

    def __neg__(self) -> "Move":
        return Move(self.ground, tuple(-c for c in self.coeffs))

    def to_json(self) -> dict:
        g = self.ground
        lhs, rhs = {}, {}
        for j, c in enumerate(self.coeffs):
            if c:
                key = str(ElementaryIndex.from_rank(g, j).triplet())
                (lhs if c > 0 else rhs)[key] = abs(c)
        return {"lhs": lhs, "rhs": rhs}

    @classmethod
    def from_json(cls, ground: GroundSet, data: dict) -> "Move":
        coeffs = [0] * ground.num_elementary
        for sign, key in ((1, "lhs"), (-1, "rhs")):
            for name, mult in data.get(key, {}).items():
                t = Triplet.parse(ground, name)
                coeffs[ElementaryIndex.from_triplet(t).rank] += sign * int(mult)
        return cls(ground, tuple(coeffs))


def _rank_of(g: GroundSet, x: int, y: int, c_mask: int) -> int:
    lo, hi = (x, y) if x < y else (y, x)
    return g._elementary_rank[(lo, hi, c_mask)]


def basic_moves(g: GroundSet) -> list:
    """All 2x2 moves δ_<a|b1|C> + δ_<a|b2|b1C> - δ_<a|b2|C> - δ_<a|b1|b2C>
    over ordered distinct (a, b1, b2) and C ⊆ N∖{a,b1,b2}; includes each
    vector together with its negation (swap b1, b2)."""
    if g.n < 3:
        raise ValueError("no kernel relations exist with fewer than 3 variables")
    out = []
    for a in range(g.n):
        for b1 in range(g.n):
            for b2 in range(g.n):
                if len({a, b1, b2}) != 3:
                    continue
                free = g.full_mask & ~((1 << a) | (1 << b1) | (1 << b2))
                for c_mask in sorted(iter_submasks(free), key=g.subset_key):
                    coeffs = [0] * g.num_elementary
                    coeffs[_rank_of(g, a, b1, c_mask)] += 1
                    coeffs[_rank_of(g, a, b2, c_mask | (1 << b1))] += 1
                    coeffs[_rank_of(g, a, b2, c_mask)] -= 1
                    coeffs[_rank_of(g, a, b1, c_mask | (1 << b2))] -= 1
                    out.append(Move(g, tuple(coeffs)))
    return out


def reduce_to_basis(z: Move) -> list:
    """Write z as an exact integer combination of basic moves, returned as
    (basic move, coefficient) pairs in elimination order."""
    g = z.ground
    basis = {m.coeffs: m for m in basic_moves(g)}
    vec = list(z.coeffs)
    out = []
    guard = 0
    last_lead = -1
    while True:
        lead = next((j for j, c in enumerate(vec) if c != 0), None)
        if lead is None:
            return out
        if lead <= last_lead:
            raise RuntimeError("leading index failed to increase")
        last_lead = lead
        guard += 1
        if guard > g.num_elementary:
            raise RuntimeError("reduction did not terminate")
        a, b, c_mask = g.elementary_triples[lead]
        rest = bit_indices(g.full_mask & ~c_mask)
        beta = rest[-1]
        alpha = rest[-2]
        coeffs = [0] * g.num_elementary
        if b < beta:
            coeffs[_rank_of(g, a, b, c_mask)] += 1
            coeffs[_rank_of(g, a, beta, c_mask | (1 << b))] += 1
            coeffs[_rank_of(g, a, beta, c_mask)] -= 1
            coeffs[_rank_of(g, a, b, c_mask | (1 << beta))] -= 1
        elif b == beta and a < alpha:
            coeffs[_rank_of(g, a, b, c_mask)] += 1
            coeffs[_rank_of(g, alpha, b, c_mask | (1 << a))] += 1
            coeffs[_rank_of(g, alpha, b, c_mask)] -= 1
            coeffs[_rank_of(g, a, b, c_mask | (1 << alpha))] -= 1
        else:
            # the two largest labels outside C cannot lead a kernel vector
            raise RuntimeError(f"irreducible leading term at rank {lead}")
        move = basis[tuple(coeffs)]
        c = vec[lead]
        for j, mc in enumerate(coeffs):
            if mc:
                vec[j] -= c * mc
        out.append((move, c))


def _cyclic_moves(g: GroundSet) -> list:
    """One vector per cyclic 3x3 relation (both cycle orientations)."""
    out = []
    for trio in combinations(range(g.n), 3):
        for a in range(g.n):
            if a in trio:
                continue
            free = g.full_mask & ~sum(1 << i for i in trio) & ~(1 << a)
            for c_mask in iter_submasks(free):
                for b1, b2, b3 in ((trio[0], trio[1], trio[2]), (trio[0], trio[2], trio[1])):
                    coeffs = [0] * g.num_elementary
                    coeffs[_rank_of(g, a, b1, c_mask | (1 << b2))] += 1
                    coeffs[_rank_of(g, a, b2, c_mask | (1 << b3))] += 1
                    coeffs[_rank_of(g, a, b3, c_mask | (1 << b1))] += 1
                    coeffs[_rank_of(g, a, b2, c_mask | (1 << b1))] -= 1
                    coeffs[_rank_of(g, a, b3, c_mask | (1 << b2))] -= 1
                    coeffs[_rank_of(g, a, b1, c_mask | (1 << b3))] -= 1
                    out.append(tuple(coeffs))
    return out


@dataclass(frozen=True)
class RelationForm:
    """Shape summary of a nonzero move: side sizes k ≤ m, common degree,
    and its place in the small-relation taxonomy."""

    k: int
    m: int
    degree: int
    classification: str
    move: Move


def _normalize_orientation(z: Move) -> Move:
    pos = sum(1 for c in z.coeffs if c > 0)
    neg = sum(1 for c in z.coeffs if c < 0)
    if neg < pos:
        return -z
    if neg == pos:
        first = next((c for c in z.coeffs if c != 0), 0)
        if first < 0:
            return -z
    return z


def _is_positive_multiple(vec: tuple, base: tuple) -> bool:
    ratio = None
    for v, b in zip(vec, base):
        if b == 0:
            if v != 0:
                return False
            continue
        if v == 0 or v % b != 0:
            return False
        q = v // b
        if q <= 0 or (ratio is not None and q != ratio):
            return False
        ratio = q
    return ratio is not None


def classify_relation(z: Move) -> RelationForm:
    """Normalize orientation and place z in the taxonomy: a positive
    multiple of a basic 2x2 move, a positive multiple of a cyclic 3x3
    relation, a relation one of whose sides contains a full side of a
    basic move, or "other"."""
    if z.is_zero:
        raise ValueError("the zero move has no relation form")
    g = z.ground
    z = _normalize_orientation(z)
    pos = frozenset(j for j, c in enumerate(z.coeffs) if c > 0)
    neg = frozenset(j for j, c in enumerate(z.coeffs) if c < 0)
    k, m = len(pos), len(neg)
    deg = z.degree

    basics = basic_moves(g)
    classification = None
    for bm in basics:
        if _is_positive_multiple(z.coeffs, bm.coeffs):
            classification = "two-by-two-semigraphoid"
            break
    if classification is None:
        for cyc in _cyclic_moves(g):
            if _is_positive_multiple(z.coeffs, cyc):
                classification = "three-by-three-cyclic"
                break
    if classification is None:
        for bm in basics:
            side = frozenset(j for j, c in enumerate(bm.coeffs) if c > 0)
            if side <= pos or side <= neg:
                classification = "contains-2x2"
                break
    if classification is None:
        classification = "other"
    return RelationForm(k, m, deg, classification, z)


def enumerate_small_relations(
    g: GroundSet, k_max: int, coeff_bound: int, degree_bound: int
) -> list:
    """All relations whose smaller side has at most k_max distinct imsets,
    with side coefficients in 1..coeff_bound and degree ≤ degree_bound,
    classified; exhaustive within the bounds."""
    if k_max < 2:
        raise ValueError("a relation needs at least two imsets on a side")
    cfg = configuration(g)
    columns = [cfg.column_vector(j) for j in range(cfg.num_cols)]
    seen = {}

    def coeff_tuples(k):
        def rec(prefix):
            if len(prefix) == k:
                yield tuple(prefix)
                return
            for c in range(1, coeff_bound + 1):
                # remaining slots need at least 1 each
                if sum(prefix) + c + (k - len(prefix) - 1) > degree_bound:
                    break
                prefix.append(c)
                yield from rec(prefix)
                prefix.pop()

        yield from rec([])

    for k in range(2, k_max + 1):
        for support in combinations(range(cfg.num_cols), k):
            support_set = set(support)
            for alphas in coeff_tuples(k):
                target = [0] * g.num_subsets
                for j, a in zip(support, alphas):
                    for r, v in enumerate(columns[j]):
                        target[r] += a * v
                u = Imset(g, tuple(target))
                for witness in _dfs_witnesses(u, excluded=support_set):
                    coeffs = [0] * cfg.num_cols
                    for j, a in zip(support, alphas):
                        coeffs[j] += a
                    for j, c in enumerate(witness):
                        coeffs[j] -= c
                    z = _normalize_orientation(Move(g, tuple(coeffs)))
                    if z.coeffs not in seen:
                        seen[z.coeffs] = z
    forms = [classify_relation(z) for z in seen.values()]
    forms.sort(key=lambda f: (f.degree, f.k, f.m, f.move.coeffs))
    return forms


def _label_permutation_rank_map(g: GroundSet, perm) -> tuple:
    """Elementary-rank permutation induced by the label permutation
    perm[i] = image of label index i."""
    out = []
    for a, b, c_mask in g.elementary_triples:
        pa, pb = perm[a], perm[b]
        pc = 0
        for i in bit_indices(c_mask):
            pc |= 1 << perm[i]
        out.append(_rank_of(g, pa, pb, pc))
    return tuple(out)


def _orbit_canonical(coeffs: tuple, rank_maps) -> tuple:
    best = None
    for rm in rank_maps:
        img = [0] * len(coeffs)
        for j, c in enumerate(coeffs):
            if c:
                img[rm[j]] = c
        for cand in (tuple(img), tuple(-c for c in img)):
            if best is None or cand < best:
                best = cand
    return best


def permutation_rank_maps(g: GroundSet, allowed_ranks=None) -> list:
    """Rank permutations for every label permutation; when allowed_ranks is
    given, only permutations stabilizing that column set."""
    maps = []
    allowed = None if allowed_ranks is None else frozenset(allowed_ranks)
    for perm in permutations(range(g.n)):
        rm = _label_permutation_rank_map(g, perm)
        if allowed is not None:
            if frozenset(rm[j] for j in allowed) != allowed:
                continue
        maps.append(rm)
    return maps


def symmetry_reduce(moves, allowed_ranks=None) -> list:
    """Orbit representatives of moves under label permutations and
    negation; representative = lexicographically least orbit element."""
    moves = list(moves)
    if not moves:
        return []
    g = moves[0].ground
    if any(m.ground != g for m in moves):
        raise ValueError("moves over different ground sets")
    rank_maps = permutation_rank_maps(g, allowed_ranks)
    reps = {}
    for m in moves:
        canon = _orbit_canonical(m.coeffs, rank_maps)
        if canon not in reps:
            reps[canon] = Move(g, canon)
    return [reps[key] for key in sorted(reps)]

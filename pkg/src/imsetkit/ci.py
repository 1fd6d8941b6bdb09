"""Conditional independence semantics for discrete joint distributions.

The multiinformation of a distribution P over the variables in N is the set
function m_P with m_P(S) = relative entropy of the marginal P^S to the
product of its one-dimensional marginals (natural log; m_P(∅) = 0).  A CI
statement <A|B|C> holds for P exactly when

    m(ABC) + m(C) - m(AC) - m(BC) = 0

(the left side is the conditional mutual information, always >= 0), so CI
testing is tolerance-based on floats while the imset side of the theory
stays exact.

A structural imset u induces the CI model {t : some positive multiple of u
minus u_t stays a combination of elementary imsets}; that membership is an
exact LP over the configuration columns.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .groundset import ElementaryIndex, GroundSet, Triplet, bit_indices, enumerate_triplets
from .imsets import Imset, configuration, is_member_L_star, semi_elementary
from .linalg import lp_feasible
from .supermodular import SetFunction

SUM_TOL = 1e-12


class JointTable:
    """Dense joint probability table over the ground-set variables.

    probabilities are row-major in label order: the state of the last label
    varies fastest.  Desk scale: at most 6 variables, at most 8 states each.
    """

    def __init__(self, ground: GroundSet, cardinalities, probabilities):
        if ground.n > 6:
            raise ValueError("joint tables support at most 6 variables")
        cards = tuple(int(c) for c in cardinalities)
        if len(cards) != ground.n or any(not 1 <= c <= 8 for c in cards):
            raise ValueError("need one cardinality in 1..8 per variable")
        size = math.prod(cards)
        probs = [float(p) for p in probabilities]
        if len(probs) != size:
            raise ValueError(f"need {size} probabilities, got {len(probs)}")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(probs) - 1.0) > SUM_TOL:
            raise ValueError("probabilities must sum to 1 within 1e-12")
        self.ground = ground
        self.cardinalities = cards
        self.probabilities = probs
        # strides for row-major indexing
        self._strides = [0] * ground.n
        acc = 1
        for i in range(ground.n - 1, -1, -1):
            self._strides[i] = acc
            acc *= cards[i]

    @classmethod
    def normalized(cls, ground: GroundSet, cardinalities, weights) -> "JointTable":
        """Build from nonnegative weights, dividing by their sum."""
        total = float(sum(weights))
        if total <= 0:
            raise ValueError("weights must have a positive sum")
        return cls(ground, cardinalities, [w / total for w in weights])

    def marginal(self, mask: int):
        """Marginal table over the variables in `mask`, row-major in label
        order."""
        idx = bit_indices(mask)
        cards = [self.cardinalities[i] for i in idx]
        size = math.prod(cards) if cards else 1
        out = [0.0] * size
        n = self.ground.n
        state = [0] * n
        for flat, p in enumerate(self.probabilities):
            if p == 0.0:
                continue
            rem = flat
            for i in range(n):
                state[i], rem = divmod(rem, self._strides[i])
            pos = 0
            for i in idx:
                pos = pos * self.cardinalities[i] + state[i]
            out[pos] += p
        return out

    def to_json(self) -> dict:
        return {
            "labels": "".join(self.ground.labels),
            "cardinalities": list(self.cardinalities),
            "probabilities": list(self.probabilities),
        }

    @classmethod
    def from_json(cls, data: dict) -> "JointTable":
        labels = data.get("labels")
        cards = data["cardinalities"]
        ground = GroundSet(labels) if labels else GroundSet(len(cards))
        return cls(ground, cards, data["probabilities"])

    def to_csv(self) -> str:
        """One row per cell: variable states then the probability."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(self.ground.labels) + ["p"])
        n = self.ground.n
        for flat, p in enumerate(self.probabilities):
            rem = flat
            state = []
            for i in range(n):
                state.append(rem // self._strides[i])
                rem %= self._strides[i]
            w.writerow(state + [repr(p)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "JointTable":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or len(rows[0]) < 2 or rows[0][-1] != "p":
            raise ValueError("CSV joint table needs a header of labels then 'p'")
        labels = rows[0][:-1]
        ground = GroundSet(labels)
        body = [r for r in rows[1:] if r]
        states = [[int(x) for x in r[:-1]] for r in body]
        cards = [max(s[i] for s in states) + 1 for i in range(len(labels))]
        probs = [0.0] * math.prod(cards)
        strides = [0] * len(cards)
        acc = 1
        for i in range(len(cards) - 1, -1, -1):
            strides[i] = acc
            acc *= cards[i]
        for r, s in zip(body, states):
            probs[sum(st * strides[i] for i, st in enumerate(s))] = float(r[-1])
        return cls(ground, cards, probs)


def multiinformation(P: JointTable) -> SetFunction:
    """m_P as a float-valued SetFunction; m_P(S) = D(P^S || Π_i P^i)."""
    g = P.ground
    singles = [P.marginal(1 << i) for i in range(g.n)]
    values = []
    for mask in g.masks_graded:
        idx = bit_indices(mask)
        if len(idx) <= 1:
            values.append(0.0)
            continue
        marg = P.marginal(mask)
        cards = [P.cardinalities[i] for i in idx]
        total = 0.0
        for pos, p in enumerate(marg):
            if p <= 0.0:
                continue
            rem = pos
            log_prod = 0.0
            for j in range(len(idx) - 1, -1, -1):
                rem, st = divmod(rem, cards[j])
                log_prod += math.log(singles[idx[j]][st])
            total += p * (math.log(p) - log_prod)
        values.append(total)
    return SetFunction(g, tuple(values))


def _ci_value(m: SetFunction, t: Triplet) -> float:
    abc = t.a_mask | t.b_mask | t.c_mask
    return (
        m.at(abc) + m.at(t.c_mask) - m.at(t.a_mask | t.c_mask) - m.at(t.b_mask | t.c_mask)
    )


def ci_holds(P: JointTable, t: Triplet, tol: float = 1e-9) -> bool:
    """Does A ⊥ B | C hold for P (within tol)?  Trivial triplets hold."""
    if t.is_trivial:
        return True
    return abs(_ci_value(multiinformation(P), t)) < tol


@dataclass(frozen=True)
class CIModel:
    """A set of canonical CI statements (A, B nonempty) over a ground set.

    Trivial statements <A|0|C> hold implicitly and are never stored.
    """

    ground: GroundSet
    statements: frozenset

    @classmethod
    def from_triplets(cls, ground: GroundSet, triplets) -> "CIModel":
        stmts = set()
        for t in triplets:
            if t.ground != ground:
                raise ValueError("statement over a different ground set")
            if not t.is_trivial:
                stmts.add(t)
        return cls(ground, frozenset(stmts))

    @classmethod
    def from_strings(cls, ground: GroundSet, strings) -> "CIModel":
        return cls.from_triplets(ground, (Triplet.parse(ground, s) for s in strings))

    def contains(self, t: Triplet) -> bool:
        if t.is_trivial:
            return True
        return t in self.statements

    def to_strings(self):
        return sorted(str(t) for t in self.statements)

    def __len__(self):
        return len(self.statements)


def ci_model_of_P(P: JointTable, tol: float = 1e-9) -> CIModel:
    """All canonical triplets that hold for P within tol."""
    m = multiinformation(P)
    g = P.ground
    stmts = [t for t in enumerate_triplets(g) if abs(_ci_value(m, t)) < tol]
    return CIModel.from_triplets(g, stmts)


def _closure_step(ground: GroundSet, stmts: set) -> set:
    """One round of semi-graphoid derivations on canonical (x, y, c) masks."""
    new = set(stmts)
    as_masks = [(t.a_mask, t.b_mask, t.c_mask) for t in stmts]

    def add(a, b, c):
        if a and b:
            new.add(Triplet(ground, a, b, c))

    for a, b, c in as_masks:
        for first, second in ((a, b), (b, a)):
            # decomposition and weak union over proper nonempty parts of
            # the second slot
            sub = (second - 1) & second
            while sub > 0:
                rest = second & ~sub
                add(first, sub, c)          # decomposition
                add(first, sub, c | rest)   # weak union
                sub = (sub - 1) & second
    # contraction: <X|D|BC> and <X|B|C> give <X|BD|C>
    items = list(new)
    for t1 in items:
        for x1, d1 in ((t1.a_mask, t1.b_mask), (t1.b_mask, t1.a_mask)):
            for t2 in items:
                for x2, b2 in ((t2.a_mask, t2.b_mask), (t2.b_mask, t2.a_mask)):
                    if x1 != x2:
                        continue
                    # t1 = <X|D|B2 ∪ C2> with C2 = t2.c, B2 = b2
                    if t1.c_mask == (b2 | t2.c_mask) and not d1 & b2:
                        add(x1, b2 | d1, t2.c_mask)
    return new


def semigraphoid_closure(ground: GroundSet, statements) -> CIModel:
    """Least superset closed under symmetry, decomposition, weak union, and
    contraction.  Symmetry is implicit in the canonical triplet form."""
    stmts = set()
    for t in statements:
        if isinstance(t, str):
            t = Triplet.parse(ground, t)
        if t.ground != ground:
            raise ValueError("statement over a different ground set")
        if not t.is_trivial:
            stmts.add(t)
    while True:
        grown = _closure_step(ground, stmts)
        if grown == stmts:
            return CIModel(ground, frozenset(stmts))
        stmts = grown


def is_structural(u: Imset) -> bool:
    """Does u lie in the cone generated by the elementary imsets, with
    integer lattice membership?"""
    if not is_member_L_star(u):
        return False
    cfg = configuration(u.ground)
    return lp_feasible(cfg.matrix, u.values).feasible


def ci_model_of_imset(u: Imset) -> CIModel:
    """CI model induced by a structural imset u.

    t is in the model iff u_t can be extracted from a positive multiple of
    u: exists mu, lambda >= 0 with mu*u - Σ lambda_w w = u_t over the
    elementary imsets w.  Exact LP per canonical triplet.
    """
    g = u.ground
    if not is_structural(u):
        raise ValueError("imset is not structural")
    cfg = configuration(g)
    # columns: [u | -w for w in E(N)]
    nrows = g.num_subsets
    cols = [list(u.values)] + [[-v for v in cfg.column_vector(j)] for j in range(cfg.num_cols)]
    A = [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]
    stmts = []
    for t in enumerate_triplets(g):
        if lp_feasible(A, semi_elementary(t).values).feasible:
            stmts.append(t)
    return CIModel.from_triplets(g, stmts)


def equivalence_3x3_check(ground: GroundSet | None = None) -> dict:
    """Verify the 3x3 exchange identity among semi-elementary imsets and its
    two three-way expansions of u_<a|bcd|0>, plus the kernel membership of
    the difference vector.  Returns a report of exact booleans."""
    g = ground if ground is not None else GroundSet(4)
    if g.n < 4:
        raise ValueError("needs at least four variables")
    a, b, c, d = g.labels[:4]

    def u(x, y, z):
        return semi_elementary(Triplet(g, g.parse_subset(x), g.parse_subset(y), g.parse_subset(z)))

    lhs = u(a, b, c) + u(a, c, d) + u(a, d, b)
    rhs = u(a, c, b) + u(a, d, c) + u(a, b, d)
    three_three = lhs == rhs

    target = semi_elementary(
        Triplet(g, g.parse_subset(a), g.parse_subset(b + c + d), 0)
    ).scale(3)
    exp1 = (
        (u(a, b, "0") + u(a, c, b) + u(a, d, b + c))
        + (u(a, c, "0") + u(a, d, c) + u(a, b, c + d))
        + (u(a, d, "0") + u(a, b, d) + u(a, c, b + d))
    )
    exp2 = (
        (u(a, b, "0") + u(a, d, b) + u(a, c, b + d))
        + (u(a, c, "0") + u(a, b, c) + u(a, d, b + c))
        + (u(a, d, "0") + u(a, c, d) + u(a, b, c + d))
    )
    expansion_1 = exp1 == target
    expansion_2 = exp2 == target

    # the difference of the two sides, as an elementary-coefficient vector,
    # is annihilated by the configuration
    cfg = configuration(g)
    coeffs = [0] * cfg.num_cols
    for sign, side in ((1, (f"{a}|{b}|{c}", f"{a}|{c}|{d}", f"{a}|{d}|{b}")),
                       (-1, (f"{a}|{c}|{b}", f"{a}|{d}|{c}", f"{a}|{b}|{d}"))):
        for s in side:
            t = Triplet.parse(g, s)
            coeffs[ElementaryIndex.from_triplet(t).rank] += sign
    kernel_ok = all(
        sum(cfg.matrix[r][j] * coeffs[j] for j in range(cfg.num_cols)) == 0
        for r in range(g.num_subsets)
    )
    return {
        "ok": three_three and expansion_1 and expansion_2 and kernel_ok,
        "three_three": three_three,
        "expansion_1": expansion_1,
        "expansion_2": expansion_2,
        "kernel": kernel_ok,
    }

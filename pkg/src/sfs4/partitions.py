"""The partition obstruction for smooth embeddings in the 4-sphere.

A space with eps > 0 that embeds smoothly must be *partitionable*: tor H_1
splits as a direct double and there are two partitions P1, P2 of the fiber
index set {1..k}, each into exactly e classes, such that in each partition

  (a) exactly one class (the deficit class) has reciprocal sum
      1 - 1/lcm(p_1..p_k),
  (b) every other class sums to exactly 1 (these are "complementary"), and
  (c) no nonempty union of a proper sub-collection of P1's classes equals a
      union of classes of P2.

Summing (a)+(b) forces eps = 1/lcm(p_1..p_k), which is used as a fast
refutation.  The search enumerates candidate partitions by exact subset sums
over the sorted reciprocals and then scans pairs for condition (c).

Also here: the e <= (k+1)/2 bound, recognition of the two classified extremal
families, and the structural contraction that rewrites a partitionable space
as an expansion of a smaller one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .homology import h1_formula, is_direct_double, partition_sum_law
from .rationals import complement, lcm_of
from .seifert import StandardForm, euler_invariant

Partition = tuple[tuple[int, ...], ...]

DEFAULT_FIBER_BUDGET = 14

REFUTED_DIRECT_DOUBLE = "torsion_not_direct_double"
REFUTED_EULER = "euler_invariant_not_reciprocal_lcm"
REFUTED_NO_PARTITION = "no_partition_meets_sum_conditions"
REFUTED_NO_PAIR = "no_pair_meets_union_condition"


def canonical_partition(classes) -> Partition:
    return tuple(sorted(tuple(sorted(c)) for c in classes))


@dataclass(frozen=True)
class PartitionPair:
    """Witness for partitionability, classes as sorted 1-based index tuples."""

    p1: Partition
    p2: Partition
    deficit_class_1: tuple[int, ...]
    deficit_class_2: tuple[int, ...]

    def classes(self):
        return self.p1 + self.p2

    def validate(self, s: StandardForm) -> None:
        """Recompute all three conditions; raises AssertionError on failure."""
        for part, deficit in ((self.p1, self.deficit_class_1), (self.p2, self.deficit_class_2)):
            law = partition_sum_law(s, part)
            assert law.ok, f"sum law failed: {law}"
            betas = s.betas()
            assert sum(betas[i - 1] for i in deficit) < 1, "marked deficit class is not strict"
        assert _condition_c(self.p1, self.p2), "union condition fails"
        assert _condition_c(self.p2, self.p1), "union condition must be symmetric"


def _condition_c(p1: Partition, p2: Partition) -> bool:
    """No nonempty union of a proper sub-collection of p1 equals one of p2."""
    def unions(part, proper):
        out = set()
        n = len(part)
        top = n - 1 if proper else n
        for size in range(1, top + 1):
            for combo in combinations(range(n), size):
                out.add(frozenset().union(*(part[i] for i in combo)))
        return out

    return not (unions(p1, proper=True) & unions(p2, proper=False))


@dataclass(frozen=True)
class PartitionSearchResult:
    status: str  # "witness" | "refuted" | "budget_exceeded"
    witness: PartitionPair | None = None
    refuted: str | None = None
    detail: str = ""

    @property
    def is_witness(self) -> bool:
        return self.status == "witness"


def _sum_condition_partitions(betas, e, deficit_target) -> list[Partition]:
    """All partitions of 1..k into e classes: e-1 sum to 1, one to the deficit.

    Indices are assigned in descending beta order; a class whose running sum
    exceeds its target is pruned.  Classes are tracked as (target, sum, members).
    """
    k = len(betas)
    order = sorted(range(1, k + 1), key=lambda i: betas[i - 1], reverse=True)
    results: list[Partition] = []
    classes: list[list] = []  # [target, sum, members]

    def close_ok(c):
        return c[1] == c[0]

    def rec(pos: int, deficit_used: bool):
        if pos == len(order):
            if len(classes) == e and all(close_ok(c) for c in classes):
                results.append(canonical_partition([c[2] for c in classes]))
            return
        idx = order[pos]
        b = betas[idx - 1]
        remaining = len(order) - pos
        open_slots = sum(1 for c in classes if not close_ok(c))
        # every still-open class and every class yet to be created needs a fiber
        if open_slots + (e - len(classes)) > remaining:
            return
        for c in classes:
            if c[1] + b <= c[0]:
                c[1] += b
                c[2].append(idx)
                rec(pos + 1, deficit_used)
                c[1] -= b
                c[2].pop()
        if len(classes) < e:
            for target, flag in ((Fraction(1), deficit_used), (deficit_target, True)):
                if target == deficit_target and deficit_used:
                    continue
                if b > target:
                    continue
                classes.append([target, b, [idx]])
                rec(pos + 1, flag)
                classes.pop()

    rec(0, False)
    return sorted(set(results))


def sum_condition_partitions(s: StandardForm) -> list[Partition]:
    """Partitions of the fibers satisfying conditions (a) and (b)."""
    if euler_invariant(s) <= 0:
        raise ValueError("partition search needs eps > 0")
    k = s.fiber_count
    if k == 0:
        return []
    lcm = lcm_of(s.multiplicities)
    if euler_invariant(s) != Fraction(1, lcm):
        return []
    deficit_target = 1 - Fraction(1, lcm)
    return _sum_condition_partitions(s.betas(), s.central, deficit_target)


def _deficit_class(s: StandardForm, part: Partition) -> tuple[int, ...]:
    betas = s.betas()
    for c in part:
        if sum(betas[i - 1] for i in c) < 1:
            return c
    raise AssertionError("no strict class in a sum-condition partition")


def is_partitionable(
    s: StandardForm, fiber_budget: int = DEFAULT_FIBER_BUDGET
) -> PartitionSearchResult:
    """Decide partitionability; witness, refutation, or budget marker.

    The witness is the lexicographically least pair over all candidate
    partitions in canonical order, independent of search schedule.
    """
    eps = euler_invariant(s)
    if eps <= 0:
        raise ValueError(f"partitionability is defined for eps > 0, got {eps}")
    if s.fiber_count > fiber_budget:
        return PartitionSearchResult(
            "budget_exceeded", detail=f"k = {s.fiber_count} exceeds budget {fiber_budget}"
        )
    h1 = h1_formula(s)
    if not is_direct_double(h1):
        return PartitionSearchResult(
            "refuted", refuted=REFUTED_DIRECT_DOUBLE, detail=f"tor H1 = {h1}"
        )
    k = s.fiber_count
    if k == 0:
        # e = eps > 0 but there is nothing to partition into e classes
        return PartitionSearchResult(
            "refuted", refuted=REFUTED_NO_PARTITION, detail="no fibers to partition"
        )
    lcm = lcm_of(s.multiplicities)
    if eps != Fraction(1, lcm):
        return PartitionSearchResult(
            "refuted",
            refuted=REFUTED_EULER,
            detail=f"eps = {eps} != 1/lcm = 1/{lcm}",
        )
    parts = sum_condition_partitions(s)
    if not parts:
        return PartitionSearchResult(
            "refuted",
            refuted=REFUTED_NO_PARTITION,
            detail="no partition satisfies the class sum conditions",
        )
    for i, pa in enumerate(parts):
        for pb in parts[i:]:
            if _condition_c(pa, pb):
                pair = PartitionPair(pa, pb, _deficit_class(s, pa), _deficit_class(s, pb))
                pair.validate(s)
                return PartitionSearchResult("witness", witness=pair)
    return PartitionSearchResult(
        "refuted",
        refuted=REFUTED_NO_PAIR,
        detail=f"{len(parts)} sum-condition partitions, no pair satisfies the union condition",
    )


@dataclass(frozen=True)
class BoundCheck:
    ok: bool
    detail: str


def bound_e(s: StandardForm) -> BoundCheck:
    """Necessary bound 2e <= k + 1 for eps > 0 (fast pre-filter)."""
    if euler_invariant(s) <= 0:
        raise ValueError("bound applies to eps > 0")
    e, k = s.central, s.fiber_count
    return BoundCheck(2 * e <= k + 1, f"e = {e}, k = {k}")


# ---------------------------------------------------------------------------
# Extremal family recognition


@dataclass(frozen=True)
class FamilyMatch:
    family: str  # "half-plus" (e = (k+1)/2) | "half-pair" | "half-product"
    params: dict

    @property
    def embeds(self) -> bool:
        return self.family in ("half-plus", "half-pair")


def _pair_decompositions(counts: dict, pair_types: list[tuple[Fraction, Fraction]]):
    """Multiset decompositions into the given unordered value pairs."""
    if all(v == 0 for v in counts.values()):
        yield []
        return
    first = next(v for v in counts if counts[v] > 0)
    for t, (x, y) in enumerate(pair_types):
        if first not in (x, y):
            continue
        other = y if first == x else x
        new = dict(counts)
        new[first] -= 1
        if new.get(other, 0) <= 0:
            continue
        new[other] -= 1
        for rest in _pair_decompositions(new, pair_types):
            yield [t] + rest


def match_theorem_families(s: StandardForm) -> FamilyMatch | None:
    """Recognize the classified shapes at e = (k+1)/2 and e = k/2.

    half-plus:    fibers = {a/(a-1)} + (e-1) x {a, a/(a-1)}          (embeds)
    half-pair:    {u, v} + pairs {u, comp u} and {v, comp v}          (embeds)
    half-product: half-pair shape plus >= 1 pair {uv, uv/(uv-1)}      (open)

    where 1/u + 1/v = 1 - 1/(num(u) num(v)) in the half cases.
    """
    if euler_invariant(s) <= 0:
        raise ValueError("family recognition applies to eps > 0")
    e, k = s.central, s.fiber_count
    fibers = list(s.fibers)
    counts_all: dict[Fraction, int] = {}
    for r in fibers:
        counts_all[r] = counts_all.get(r, 0) + 1

    if 2 * e == k + 1:
        candidates = {Fraction(r.numerator) for r in fibers if r.numerator - r.denominator == 1}
        candidates.update(r for r in fibers if r.denominator == 1)
        for a_frac in sorted(candidates):
            a = int(a_frac)
            if a < 2:
                continue
            want = {Fraction(a, a - 1): e}
            if e > 1:
                want[Fraction(a)] = want.get(Fraction(a), 0) + (e - 1)
            if counts_all == want:
                return FamilyMatch("half-plus", {"a": a})
        return None

    if 2 * e == k and k >= 2:
        best = None
        for i, j in combinations(range(k), 2):
            u, v = fibers[i], fibers[j]
            prod = u.numerator * v.numerator
            if 1 / u + 1 / v != 1 - Fraction(1, prod):
                continue
            rest = dict(counts_all)
            rest[u] -= 1
            rest[v] -= 1
            pair_types = [
                (u, complement(u)),
                (v, complement(v)),
                (Fraction(prod), Fraction(prod, prod - 1)),
            ]
            for decomp in _pair_decompositions(rest, pair_types):
                n_prod = decomp.count(2)
                params = {
                    "p": u.numerator, "q": u.denominator,
                    "r": v.numerator, "s": v.denominator,
                    "u_pairs": decomp.count(0), "v_pairs": decomp.count(1),
                    "product_pairs": n_prod,
                }
                match = FamilyMatch("half-pair" if n_prod == 0 else "half-product", params)
                if n_prod == 0:
                    return match
                if best is None:
                    best = match
        return best

    return None


# ---------------------------------------------------------------------------
# Expansion structure of a partitionable space


@dataclass(frozen=True)
class ExpansionStructure:
    comp_pair_case: bool      # enough complementary 2-classes across P1, P2
    singleton_case: bool      # both partitions have a singleton (deficit) class
    ratio_case: bool          # 5e >= 2k + 3
    minimal: bool
    contracted: StandardForm | None = None
    contracted_witness: PartitionPair | None = None
    removed: tuple[int, int] | None = None  # removed fiber indices in s (1-based)

    @property
    def any_case(self) -> bool:
        return self.comp_pair_case or self.singleton_case or self.ratio_case


def _comp_pairs(s, part) -> list[tuple[int, ...]]:
    betas = s.betas()
    return [c for c in part if len(c) == 2 and betas[c[0] - 1] + betas[c[1] - 1] == 1]


def _renumber(cls, removed: tuple[int, int], swap: dict[int, int]) -> tuple[int, ...]:
    out = []
    for i in cls:
        i = swap.get(i, i)
        out.append(i - sum(1 for r in removed if r < i))
    return tuple(sorted(out))


def _contract_by_pair(s, p1, p2) -> tuple[StandardForm, PartitionPair, tuple[int, int]]:
    # complementary pairs {a,b} in P1 and {b,c} in P2 sharing exactly b:
    # fibers a and c carry equal fractions, remove fibers {a, b}.
    for x in _comp_pairs(s, p1):
        for y in _comp_pairs(s, p2):
            common = set(x) & set(y)
            if len(common) == 1:
                b = common.pop()
                a = next(i for i in x if i != b)
                c = next(i for i in y if i != b)
                assert s.fibers[a - 1] == s.fibers[c - 1]
                removed = tuple(sorted((a, b)))
                new_fibers = tuple(
                    r for i, r in enumerate(s.fibers, start=1) if i not in removed
                )
                contracted = StandardForm(s.genus, s.central - 1, new_fibers, s.orientation_reversed)
                swap = {a: c}  # in P2, the class through a inherits c's fiber
                q1 = canonical_partition(
                    _renumber(cl, removed, {}) for cl in p1 if cl != x
                )
                q2 = canonical_partition(
                    _renumber(cl, removed, swap) for cl in p2 if cl != y
                )
                pair = PartitionPair(
                    q1, q2, _deficit_class(contracted, q1), _deficit_class(contracted, q2)
                )
                return contracted, pair, removed
    raise AssertionError("no linked complementary pairs despite the pair-count case")


def _contract_by_singletons(s, p1, p2) -> tuple[StandardForm, PartitionPair, tuple[int, int]]:
    y = next(c for c in p2 if len(c) == 1)[0]          # P2's deficit singleton
    cls1 = next(c for c in p1 if y in c)               # complementary 2-class of P1
    assert len(cls1) == 2, "class through the other deficit fiber must be a pair"
    w = next(i for i in cls1 if i != y)
    removed = tuple(sorted((w, y)))
    new_fibers = tuple(r for i, r in enumerate(s.fibers, start=1) if i not in removed)
    contracted = StandardForm(s.genus, s.central - 1, new_fibers, s.orientation_reversed)
    q1 = canonical_partition(_renumber(c, removed, {}) for c in p1 if c != cls1)
    q2_classes = []
    for c in p2:
        if c == (y,):
            continue
        if w in c:
            c = tuple(i for i in c if i != w)  # becomes the new deficit class
        q2_classes.append(_renumber(c, removed, {}))
    q2 = canonical_partition(q2_classes)
    pair = PartitionPair(q1, q2, _deficit_class(contracted, q1), _deficit_class(contracted, q2))
    return contracted, pair, removed


def expansion_structure(s: StandardForm, witness: PartitionPair) -> ExpansionStructure:
    """Which contraction hypotheses hold, and the contracted witness if any.

    For k >= 3, a partitionable space satisfying any of the three hypotheses
    is an expansion of a partitionable space; the contraction below removes a
    complementary fiber pair and rebuilds the witness partitions.
    """
    witness.validate(s)
    e, k = s.central, s.fiber_count
    p1, p2 = witness.p1, witness.p2
    m1, m2 = len(_comp_pairs(s, p1)), len(_comp_pairs(s, p2))
    case_pairs = k >= 3 and m1 + m2 >= e
    case_singletons = k >= 3 and any(len(c) == 1 for c in p1) and any(len(c) == 1 for c in p2)
    case_ratio = k >= 3 and 5 * e >= 2 * k + 3
    if not (case_pairs or case_singletons or case_ratio):
        return ExpansionStructure(False, False, False, minimal=True)

    if case_pairs or (case_singletons and k == 3):
        contracted, pair, removed = _contract_by_pair(s, p1, p2)
    elif case_singletons and k > 3:
        contracted, pair, removed = _contract_by_singletons(s, p1, p2)
    else:
        # ratio case alone cannot happen: it forces one of the other two
        raise AssertionError("ratio case held but neither construction applies")
    pair.validate(contracted)
    return ExpansionStructure(
        case_pairs,
        case_singletons,
        case_ratio,
        minimal=False,
        contracted=contracted,
        contracted_witness=pair,
        removed=removed,
    )

"""Spin structures on plumbed 3-manifolds and the Neumann-Siebenmann invariant.

Spin structures on the boundary of the canonical positive definite plumbing
correspond to *characteristic subsets* C of the vertex set: the 0/1 indicator
w of C satisfies Q w = diag(Q) mod 2.  On a tree such a subset consists of
isolated vertices and

    mubar(Y, C) = |Gamma| - w^T Q w,

which for isolated C is |Gamma| minus the sum of the weights in C.  The value
vanishes whenever the spin structure extends over a spin rational homology
ball, which is what embedding in the 4-sphere provides; counting spin
structures and mu-bar zeros therefore obstructs embeddings, and with a
partition witness in hand the even-multiplicity fibers are constrained class
by class (parity counts, and a ceiling bound inside classes with two of them).
"""

from __future__ import annotations

from dataclasses import dataclass

from .homology import dim_h1_z2
from .plumbing import IntersectionForm, PlumbingGraph, build_plumbing, intersection_form
from .seifert import StandardForm, euler_invariant

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


def _solve_mod2(rows_bits: list[int], rhs_bits: list[int], n: int):
    """All solutions of a GF(2) system given as row bitmasks.

    Returns (particular, kernel_basis) as bitmasks, or None if insoluble.
    """
    rows = [(r << 1) | b for r, b in zip(rows_bits, rhs_bits)]  # bit 0 = rhs
    pivots = {}
    for row in rows:
        for col in sorted(pivots, reverse=True):
            if row >> (col + 1) & 1:
                row ^= pivots[col]
        lead = row >> 1
        if lead == 0:
            if row & 1:
                return None
            continue
        col = lead.bit_length() - 1
        pivots[col] = row
    # back substitute
    for col in sorted(pivots):
        for other in pivots:
            if other != col and pivots[other] >> (col + 1) & 1:
                pivots[other] ^= pivots[col]
    particular = 0
    for col, row in pivots.items():
        if row & 1:
            particular |= 1 << col
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free_cols:
        vec = 1 << f
        for col, row in pivots.items():
            if row >> (f + 1) & 1:
                vec |= 1 << col
        basis.append(vec)
    return particular, basis


def characteristic_subsets(graph: PlumbingGraph, q: IntersectionForm | None = None):
    """All characteristic subsets, as sorted tuples of vertex indices.

    Solves Q w = diag(Q) over GF(2); the count is 2^dim H^1(Y; Z_2) and each
    subset is isolated in the tree.
    """
    if q is None:
        q = intersection_form(graph)
    n = q.size
    rows_bits = [sum((row[j] & 1) << j for j in range(n)) for row in q.matrix]
    rhs = [q.matrix[i][i] & 1 for i in range(n)]
    solved = _solve_mod2(rows_bits, rhs, n)
    assert solved is not None, "characteristic system is always solvable here"
    particular, basis = solved
    subsets = []
    for mask_bits in range(1 << len(basis)):
        w = particular
        for b, vec in enumerate(basis):
            if mask_bits >> b & 1:
                w ^= vec
        subsets.append(tuple(i for i in range(n) if w >> i & 1))
    subsets.sort()
    edges = set(graph.edges())
    for c in subsets:
        members = set(c)
        assert not any(
            (u, v) in edges or (v, u) in edges for u in members for v in members if u < v
        ), "characteristic subset must be isolated in the tree"
    return subsets


def mubar(graph: PlumbingGraph, q: IntersectionForm, subset) -> int:
    """|Gamma| - w^T Q w for the indicator w of a characteristic subset."""
    n = q.size
    w = [0] * n
    for i in subset:
        w[i] = 1
    lhs = [sum(q.matrix[i][j] * w[j] for j in range(n)) % 2 for i in range(n)]
    if lhs != [q.matrix[i][i] % 2 for i in range(n)]:
        raise ValueError("subset is not characteristic")
    return graph.size - q.norm(w)


@dataclass(frozen=True)
class MubarReport:
    subsets: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]
    z2_dim: int

    @property
    def zero_count(self) -> int:
        return sum(1 for v in self.values if v == 0)


def spin_report(s: StandardForm) -> MubarReport:
    """All spin structures of a genus-0 standard form with their mu-bar values."""
    if s.genus != 0:
        raise ValueError("characteristic subsets classify spin structures for base S^2 only")
    if euler_invariant(s) <= 0:
        raise ValueError("mu-bar uses the positive definite plumbing: eps > 0")
    graph = build_plumbing(s)
    q = intersection_form(graph)
    subsets = characteristic_subsets(graph, q)
    values = tuple(mubar(graph, q, c) for c in subsets)
    dim = dim_h1_z2(s)
    assert len(subsets) == 1 << dim, "spin count must be 2^dim H^1(Y;Z2)"
    return MubarReport(tuple(subsets), values, dim)


def chain_characteristic_subsets(terms) -> list[tuple[int, ...]]:
    """Characteristic subsets of a single linear chain (indices 0-based).

    One subset when the chain's fraction has odd numerator, two (split by
    whether the first vertex is in) when even.
    """
    graph = PlumbingGraph(terms[0], (tuple(terms[1:]),)) if len(terms) > 1 else PlumbingGraph(terms[0], ())
    q = intersection_form(graph)
    n = len(terms)
    rows_bits = [sum((q.matrix[i][j] & 1) << j for j in range(n)) for i in range(n)]
    rhs = [q.matrix[i][i] & 1 for i in range(n)]
    solved = _solve_mod2(rows_bits, rhs, n)
    assert solved is not None
    particular, basis = solved
    out = []
    for mask_bits in range(1 << len(basis)):
        w = particular
        for b, vec in enumerate(basis):
            if mask_bits >> b & 1:
                w ^= vec
        out.append(tuple(i for i in range(n) if w >> i & 1))
    return sorted(out)


def arm_construction_subsets(graph: PlumbingGraph) -> list[tuple[int, ...]]:
    """Characteristic subsets assembled arm by arm (even-multiplicity case).

    Requires at least one arm of even multiplicity.  Odd arms contribute
    their unique chain subset; a chosen set S of even arms contributes the
    chain subset containing the leading vertex, the rest the other one, with
    |S| = alpha + e mod 2 where alpha counts odd arms whose subset contains
    the leading vertex.  The central vertex is never included.
    """
    fractions = graph.arm_fractions()
    evens = [i for i, r in enumerate(fractions) if r.numerator % 2 == 0]
    if not evens:
        raise ValueError("arm construction needs an even-multiplicity arm")
    per_arm = []
    for arm in graph.arms:
        per_arm.append(chain_characteristic_subsets(arm))
    alpha = 0
    for i, subs in enumerate(per_arm):
        if i not in evens:
            assert len(subs) == 1
            if subs[0] and subs[0][0] == 0:
                alpha += 1
    results = []
    for mask in range(1 << len(evens)):
        chosen = [evens[b] for b in range(len(evens)) if mask >> b & 1]
        if (len(chosen) - (alpha + graph.central_weight)) % 2:
            continue
        subset = []
        starts = graph.arm_starts
        for i, subs in enumerate(per_arm):
            if i not in evens:
                pick = subs[0]
            else:
                with_lead = next(c for c in subs if c and c[0] == 0)
                without = next(c for c in subs if not c or c[0] != 0)
                pick = with_lead if i in chosen else without
            subset.extend(starts[i] + v for v in pick)
        results.append(tuple(sorted(subset)))
    return sorted(results)


# ---------------------------------------------------------------------------
# Embedding conditions


@dataclass(frozen=True)
class Condition:
    name: str
    status: str  # pass | fail | not_applicable
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass(frozen=True)
class ConditionReport:
    conditions: tuple[Condition, ...]

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.conditions)

    def failures(self):
        return [c for c in self.conditions if c.failed]


def _even_members(s: StandardForm, cls) -> list[int]:
    return [i for i in cls if s.fibers[i - 1].numerator % 2 == 0]


def partition_even_conditions(s: StandardForm, partition) -> list[Condition]:
    """Per-partition constraints forced by extendable spin structures.

    With at least one even multiplicity: exactly one class contains an odd
    number (1 or 3) of even-multiplicity fibers and every other class 0 or
    2; a complementary class with exactly two even members {x, y, odds...}
    obeys ceil(fiber_x) <= 1 + sum of (p - 1) over the other members, and
    symmetrically.  A size-3 complementary class {u, v, uv} needs uv odd.
    """
    out = []
    betas = s.betas()
    evens_per_class = {tuple(c): _even_members(s, c) for c in partition}
    counts = {c: len(ev) for c, ev in evens_per_class.items()}
    odd_classes = [c for c, n in counts.items() if n % 2 == 1]
    parity_ok = (
        len(odd_classes) == 1
        and counts[odd_classes[0]] in (1, 3)
        and all(n in (0, 2) for c, n in counts.items() if c != odd_classes[0])
    )
    if parity_ok:
        out.append(Condition("even_fiber_class_parity", PASS))
    else:
        out.append(
            Condition(
                "even_fiber_class_parity",
                FAIL,
                f"need one class with 1 or 3 even multiplicities and 0/2 elsewhere; got {counts}",
            )
        )

    ceiling_checked = False
    ceiling = Condition("even_pair_ceiling_bound", NOT_APPLICABLE, "no complementary class with exactly two even members")
    for c in partition:
        ev = evens_per_class[tuple(c)]
        is_comp = sum(betas[i - 1] for i in c) == 1
        if not is_comp or len(ev) != 2:
            continue
        ceiling_checked = True
        for x in ev:
            r = s.fibers[x - 1]
            bound = 1 + sum(s.fibers[i - 1].numerator - 1 for i in c if i != x)
            lhs = -(-r.numerator // r.denominator)  # ceil
            if lhs > bound:
                ceiling = Condition(
                    "even_pair_ceiling_bound",
                    FAIL,
                    f"class {c}: ceil({r}) = {lhs} > {bound}",
                )
                break
        else:
            continue
        break
    if ceiling_checked and ceiling.status == NOT_APPLICABLE:
        ceiling = Condition("even_pair_ceiling_bound", PASS)
    out.append(ceiling)

    prod_rule = Condition("size3_product_class", NOT_APPLICABLE, "no size-3 class of product shape with even product")
    for c in partition:
        if len(c) != 3:
            continue
        if sum(betas[i - 1] for i in c) != 1:
            continue
        vals = sorted((s.fibers[i - 1] for i in c), reverse=True)
        top, u, v = vals[0], vals[1], vals[2]
        if top.denominator == 1 and top.numerator == u.numerator * v.numerator:
            if top.numerator % 2 == 0:
                prod_rule = Condition(
                    "size3_product_class",
                    FAIL,
                    f"complementary class {c} has shape (u, v, uv) with uv = {top} even",
                )
                break
    out.append(prod_rule)
    return out


def mubar_embedding_conditions(
    s: StandardForm, partitions=None
) -> ConditionReport:
    """Necessary spin/mu-bar conditions for embedding, genus 0 and eps > 0.

    Global: dim H^1(Y;Z_2) <= 2e; the spin count must be a perfect square
    with at least 2^(dim/2) characteristic subsets of mu-bar zero.  When a
    partition pair is supplied and some multiplicity is even, the class-wise
    parity, ceiling and product-shape rules are evaluated on both partitions.
    """
    if s.genus != 0:
        raise ValueError("mu-bar conditions apply to base S^2 only")
    if euler_invariant(s) <= 0:
        raise ValueError("mu-bar conditions need eps > 0")
    conditions = []
    dim = dim_h1_z2(s)
    e = s.central
    if dim <= 2 * e:
        conditions.append(Condition("z2_cohomology_bound", PASS, f"dim = {dim} <= 2e = {2 * e}"))
    else:
        conditions.append(Condition("z2_cohomology_bound", FAIL, f"dim = {dim} > 2e = {2 * e}"))
    report = spin_report(s)
    if dim % 2:
        conditions.append(
            Condition("spin_count_square", FAIL, f"2^{dim} spin structures is not a perfect square")
        )
    else:
        need = 1 << (dim // 2)
        if report.zero_count >= need:
            conditions.append(
                Condition("mubar_zero_count", PASS, f"{report.zero_count} mu-bar zeros >= {need}")
            )
        else:
            conditions.append(
                Condition("mubar_zero_count", FAIL, f"{report.zero_count} mu-bar zeros < {need}")
            )
    n_even = sum(1 for p in s.multiplicities if p % 2 == 0)
    if partitions is None or n_even == 0:
        why = "no partition witness supplied" if partitions is None else "all multiplicities odd"
        conditions.append(Condition("even_fiber_class_parity", NOT_APPLICABLE, why))
        conditions.append(Condition("even_pair_ceiling_bound", NOT_APPLICABLE, why))
        conditions.append(Condition("size3_product_class", NOT_APPLICABLE, why))
    else:
        merged: dict[str, Condition] = {}
        for part in (partitions.p1, partitions.p2):
            for cond in partition_even_conditions(s, part):
                cur = merged.get(cond.name)
                rank = {FAIL: 2, PASS: 1, NOT_APPLICABLE: 0}
                if cur is None or rank[cond.status] > rank[cur.status]:
                    merged[cond.name] = cond
        conditions.extend(merged[name] for name in ("even_fiber_class_parity", "even_pair_ceiling_bound", "size3_product_class"))
    return ConditionReport(tuple(conditions))

"""Odd pretzel knots, their double branched covers, and double sliceness.

An odd pretzel link P(c_1, ..., c_k) has all strand twist counts odd; it is a
knot exactly when k is odd.  Its double branched cover is the Seifert fibered
space with one fiber per strand over the 0-weighted base presentation; the
+-1 strands fold into the central weight under normalization.  Verdicts are
stated up to mutation, which for pretzels permutes strands, so everything
here depends only on the strand multiset.

The classification: an odd pretzel knot has double branched cover embedding
smoothly in the 4-sphere (equivalently, is a mutant of a smoothly doubly
slice pretzel) precisely when its strands are a copies of one odd value a
with |a| >= 3 alternating against one fewer copies of -a.  The negative
direction is decided by the mu-bar value, the residual central weight, and
the extremal-family classification of the cover.

Quasi-alternating Montesinos links are never topologically doubly slice:
their normal forms admit a partition that violates the direct-double sum
law, refuting the Hantzsche condition on the cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .homology import h1_formula, is_direct_double, partition_sum_law
from .mubar import spin_report
from .partitions import match_theorem_families
from .seifert import SeifertData, StandardForm, euler_invariant, normalize

DOUBLY_SLICE = "DOUBLY_SLICE_UP_TO_MUTATION"
NOT_DOUBLY_SLICE = "NOT_DOUBLY_SLICE"


@dataclass(frozen=True)
class OddPretzel:
    strands: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(int(c) for c in self.strands))
        if not self.strands:
            raise ValueError("a pretzel needs at least one strand")
        if any(c % 2 == 0 for c in self.strands):
            raise ValueError(f"odd pretzels need odd strands, got {self.strands}")

    @property
    def strand_count(self) -> int:
        return len(self.strands)

    @property
    def is_knot(self) -> bool:
        return self.strand_count % 2 == 1

    def mirror(self) -> "OddPretzel":
        return OddPretzel(tuple(-c for c in self.strands))

    def __str__(self) -> str:
        return "P(" + ",".join(str(c) for c in self.strands) + ")"


def double_branched_cover(k: OddPretzel) -> SeifertData:
    """Double branched cover: one fiber per strand over the 0-weighted base.

    The folded presentation has central weight minus the signed count of
    the +-1 strands; this is the sign that keeps |H_1| equal to the pretzel
    determinant (e.g. P(1,1,3) has determinant 7 and cover S^2(-2; 3)).
    """
    ones = sum(c for c in k.strands if abs(c) == 1)
    big = tuple(Fraction(c) for c in k.strands if abs(c) > 1)
    return SeifertData(0, -ones, big)


def _oriented_cover(k: OddPretzel):
    """(strands*, cover, standard form) with eps(cover) >= 0 after mirroring."""
    cover = double_branched_cover(k)
    if euler_invariant(cover) < 0:
        k = k.mirror()
        cover = double_branched_cover(k)
    return k, cover, normalize(cover)


def pretzel_mubar(k: OddPretzel) -> int:
    """mu-bar of the unique spin structure of the double branched cover.

    All strands are odd so every fiber multiplicity is odd; for knots |H_1|
    is odd and the spin structure is unique.  Cross-checked elsewhere against
    the closed form (#positive strands) - (#negative) + 1 - residual weight
    on the eps > 0 orientation.
    """
    oriented, cover, std = _oriented_cover(k)
    if euler_invariant(std) == 0:
        raise ValueError("mu-bar needs eps != 0 (true for every pretzel knot)")
    rep = spin_report(std)
    if len(rep.values) != 1:
        raise ValueError(f"{k} has {len(rep.values)} spin structures; mu-bar is per structure")
    return rep.values[0]


def pretzel_mubar_formula(k: OddPretzel) -> int:
    """Closed form n - m + 1 - e on the eps > 0 orientation (test oracle)."""
    oriented, _, _ = _oriented_cover(k)
    n = sum(1 for c in oriented.strands if c > 1)
    m = sum(1 for c in oriented.strands if c < -1)
    e = -sum(c for c in oriented.strands if abs(c) == 1)
    return n - m + 1 - e


def reduced_strands(strands) -> tuple[int, ...]:
    """Cancel +1/-1 strand pairs (Reidemeister II across a flype)."""
    big = [c for c in strands if abs(c) > 1]
    ones = sum(c for c in strands if abs(c) == 1)
    return tuple(big + [1 if ones > 0 else -1] * abs(ones))


def _family_shape(strands) -> int | None:
    """The odd a with |a| >= 3 if the reduced strands are {a x (m+1), -a x m}.

    m = 0 is excluded: a lone strand closes to the (2, a) torus knot, which
    is not doubly slice.
    """
    counts: dict[int, int] = {}
    for c in reduced_strands(strands):
        counts[c] = counts.get(c, 0) + 1
    if len(counts) != 2:
        return None
    (x, nx), (y, ny) = sorted(counts.items())
    if x != -y or abs(x) < 3:
        return None
    return x if nx == ny + 1 else (y if ny == nx + 1 else None)


@dataclass(frozen=True)
class DoublySliceVerdict:
    verdict: str
    parameter: int | None = None       # the odd a for the positive family
    failed_condition: str | None = None
    detail: str = ""

    @property
    def is_doubly_slice(self) -> bool:
        return self.verdict == DOUBLY_SLICE


def doubly_slice_classify(k: OddPretzel) -> DoublySliceVerdict:
    """Smooth double sliceness of an odd pretzel knot, up to mutation.

    Positive exactly on the alternating family {a x (m+1), (-a) x m} with
    odd |a| >= 3.  Otherwise the reported failed condition is the first
    broken link in the obstruction chain: nonzero mu-bar, a nonzero residual
    central weight, or the cover failing the extremal-family classification
    (including its direct-double requirement).
    """
    if not k.is_knot:
        raise ValueError(f"{k} has an even number of strands: a link, not a knot")
    a = _family_shape(k.strands)
    if a is not None:
        return DoublySliceVerdict(DOUBLY_SLICE, parameter=a)
    big = [c for c in k.strands if abs(c) > 1]
    ones = sum(c for c in k.strands if abs(c) == 1)
    if len(big) == 1 and ones == 0:
        # the +-1 strands cancel in pairs: this is the (2, c) torus knot,
        # whose cover is the lens space with torsion Z/|c| (the uniform
        # fiber transcription degenerates here)
        c = big[0]
        return DoublySliceVerdict(
            NOT_DOUBLY_SLICE,
            failed_condition="cover_obstructed",
            detail=f"reduces to the (2,{c}) torus knot: cover torsion Z/{abs(c)} "
            "is not a direct double",
        )
    mu = pretzel_mubar(k)
    if mu != 0:
        return DoublySliceVerdict(
            NOT_DOUBLY_SLICE, failed_condition="mubar_nonzero", detail=f"mu-bar = {mu}"
        )
    oriented, _, std = _oriented_cover(k)
    e_res = -sum(c for c in oriented.strands if abs(c) == 1)
    if e_res != 0:
        return DoublySliceVerdict(
            NOT_DOUBLY_SLICE,
            failed_condition="residual_central_weight",
            detail=f"+-1 strands fold to central weight {e_res} != 0",
        )
    h1 = h1_formula(std)
    if not is_direct_double(h1):
        return DoublySliceVerdict(
            NOT_DOUBLY_SLICE,
            failed_condition="cover_obstructed",
            detail=f"tor H1 = {h1} is not a direct double",
        )
    fam = match_theorem_families(std) if euler_invariant(std) > 0 else None
    if fam is None or fam.family != "half-plus":
        return DoublySliceVerdict(
            NOT_DOUBLY_SLICE,
            failed_condition="cover_obstructed",
            detail="cover is not in the classified extremal family",
        )
    raise AssertionError(f"{k}: cover in the extremal family but strands not of family shape")


# ---------------------------------------------------------------------------
# Quasi-alternating Montesinos links

QA_E_GE_K = "e_ge_k"
QA_E_EQ_K_MINUS_1 = "e_eq_k_minus_1"


@dataclass(frozen=True)
class MontesinosNormal:
    """Double-cover normal form of a quasi-alternating Montesinos link."""

    space: StandardForm
    case: str

    @classmethod
    def from_standard(cls, s: StandardForm) -> "MontesinosNormal":
        if euler_invariant(s) <= 0:
            raise ValueError("quasi-alternating normal forms have eps > 0")
        e, k = s.central, s.fiber_count
        if e >= k:
            return cls(s, QA_E_GE_K)
        betas = sorted(s.betas())
        if e == k - 1 and k >= 2 and betas[0] + betas[1] < 1:
            return cls(s, QA_E_EQ_K_MINUS_1)
        raise ValueError("not in quasi-alternating normal form")


@dataclass(frozen=True)
class QAObstructionReport:
    obstructed: bool
    case: str
    partition: tuple[tuple[int, ...], ...]
    law_failure: str | None
    detail: str


def qa_montesinos_obstruction(m: MontesinosNormal) -> QAObstructionReport:
    """Refute topological double sliceness of a quasi-alternating Montesinos link.

    Builds the proof partition for the normal form (all singletons, or
    singletons plus the two smallest-reciprocal fibers paired), runs the sum
    law, and turns its failure into a direct-double violation: the cover of
    a doubly slice link would have to satisfy the law.
    """
    s = m.space
    k = s.fiber_count
    if m.case == QA_E_GE_K:
        partition = tuple((i,) for i in range(1, k + 1))
    else:
        betas = s.betas()
        by_beta = sorted(range(1, k + 1), key=lambda i: betas[i - 1])
        pair = tuple(sorted(by_beta[:2]))
        partition = tuple(sorted([pair] + [(i,) for i in by_beta[2:]]))
    law = partition_sum_law(s, partition)
    if law.ok:
        return QAObstructionReport(
            False, m.case, partition, None,
            "the proof partition satisfies the sum law; no obstruction derived",
        )
    return QAObstructionReport(
        True, m.case, partition, law.failure,
        f"partition violates the sum law ({law.failure}: {law.detail}); "
        "tor H1 of the cover is not a direct double, so the link is not "
        "topologically doubly slice",
    )

"""Three-valued classification of Seifert fibered spaces against the 4-sphere.

``classify`` normalizes its input and runs the obstruction chain cheapest
first (torsion direct double, the central-weight bound, the partition search,
then the spin conditions for base S^2), interleaved with the constructive
side: iterated contraction of complementary fiber pairs down to a recognized
base that is known to embed.  Verdicts carry machine-checkable certificates:

* EMBEDS: a base space, a genus bump count and an expansion sequence whose
  replay reproduces the input, or a cited-fact rule for the eps = 0 families
  and the sporadic known embedding;
* OBSTRUCTED: the violated condition along with its witness;
* UNKNOWN: every implemented test passed and no certificate was found; the
  full trace is attached.

Cited facts (results used, not re-proved, by this package) are kept in a
declarative table separate from the conditions the other modules establish
computationally.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .homology import AbelianGroup, h1_formula, is_direct_double
from .mubar import mubar_embedding_conditions, partition_even_conditions
from .partitions import (
    _condition_c,
    bound_e,
    is_partitionable,
    sum_condition_partitions,
)
from .rationals import format_rational
from .seifert import (
    SeifertData,
    StandardForm,
    euler_invariant,
    expand,
    find_contractions,
    normalize,
)

EMBEDS = "EMBEDS"
OBSTRUCTED = "OBSTRUCTED"
UNKNOWN = "UNKNOWN"
BUDGET_EXCEEDED = "BUDGET_EXCEEDED"

# Facts imported from the literature rather than established by this package.
CITED_FACTS = {
    "s3_empty": "With no exceptional fibers and central weight 1 over S^2 the space is the 3-sphere, which embeds.",
    "s3_one_exceptional": "S^2(1; a/(a-1)) is a Seifert structure on the 3-sphere for every integer a >= 2.",
    "s3_two_exceptional": "S^2(1; p/q, r/s) with q/p + s/r = 1 - 1/(pr) is a lens space with trivial first homology, hence the 3-sphere.",
    "known_embedding_4_4_12_5": "S^2(1; 4, 4, 12/5) embeds smoothly in the 4-sphere.",
    "eps_zero_all_odd": "A doubled disk space whose pair multiplicities are all odd embeds smoothly (2-twist-spin fiber construction).",
    "eps_zero_one_even": "A doubled disk space with at most one even pair multiplicity embeds smoothly.",
    "eps_zero_int_pair_even_odd": "S^2(0; a, -a, b, -b) with a even and b odd embeds smoothly (special case of the one-even rule).",
    "eps_zero_known_disk": "Pairs drawn from {4, 12/5} double a disk piece of the known embedding of S^2(1; 4, 4, 12/5).",
    "furuta_ten_eighths": "S^2(0; a, -a, b, -b) with a, b both even and a != b does not embed smoothly, by the 10/8 bound.",
    "expansion_embeds": "Expanding a fiber into a complementary pair keeps the space embedded (it embeds in Y x [0,1]).",
    "genus_bump_embeds": "Raising the base genus of a smoothly embedded Seifert fibered space keeps it embedded.",
}


@dataclass(frozen=True)
class TraceStep:
    test: str
    result: str
    detail: str = ""

    def to_dict(self):
        return {"test": self.test, "result": self.result, "witness": self.detail}


@dataclass(frozen=True)
class Obstruction:
    name: str
    detail: str

    def to_dict(self):
        return {"name": self.name, "detail": self.detail}


@dataclass(frozen=True)
class Certificate:
    """Replayable evidence for EMBEDS.

    kind "expansion": start from the genus-0 ``base`` (itself covered by the
    cited rule ``rule``), raise the genus ``genus_bumps`` times, then expand
    the recorded fiber values in order; the result must equal the normalized
    input up to fiber permutation.  kind "cited": the rule's hypothesis is
    re-checked directly against the normalized input.
    """

    kind: str  # "expansion" | "cited"
    rule: str
    base_central: int = 0
    base_fibers: tuple[Fraction, ...] = ()
    genus_bumps: int = 0
    expansions: tuple[Fraction, ...] = ()
    pairing: tuple[tuple[int, int], ...] = ()

    def to_dict(self):
        return {
            "kind": self.kind,
            "rule": self.rule,
            "statement": CITED_FACTS[self.rule],
            "base": {
                "central": self.base_central,
                "fibers": [format_rational(r) for r in self.base_fibers],
            },
            "genus_bumps": self.genus_bumps,
            "expansions": [format_rational(r) for r in self.expansions],
            "pairing": [list(p) for p in self.pairing],
        }


@dataclass(frozen=True)
class Verdict:
    tag: str
    standard_form: StandardForm
    epsilon: Fraction
    h1: AbelianGroup
    certificate: Certificate | None = None
    obstruction: Obstruction | None = None
    trace: tuple[TraceStep, ...] = ()

    def to_dict(self):
        return {
            "standard_form": {
                "genus": self.standard_form.genus,
                "central": self.standard_form.central,
                "fibers": [format_rational(r) for r in self.standard_form.fibers],
                "orientation_reversed": self.standard_form.orientation_reversed,
            },
            "epsilon": format_rational(self.epsilon),
            "h1": {
                "free_rank": self.h1.free_rank,
                "invariant_factors": list(self.h1.invariant_factors),
            },
            "verdict": self.tag,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "obstruction": self.obstruction.to_dict() if self.obstruction else None,
            "trace": [t.to_dict() for t in self.trace],
        }


# ---------------------------------------------------------------------------
# eps = 0: complementary pairing and the sufficiency/obstruction rules


@dataclass(frozen=True)
class EpsZeroPairing:
    pairs: tuple[tuple[int, int], ...]       # 1-based indices into the fibers
    disk_fibers: tuple[Fraction, ...]        # one representative > 1 per pair

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(r.numerator for r in self.disk_fibers)


@dataclass(frozen=True)
class PairingImbalance:
    value: Fraction
    count: int
    complement_count: int

    def describe(self) -> str:
        return (
            f"reciprocal class {self.value} occurs {self.count} times but its "
            f"complement occurs {self.complement_count} times"
        )


def eps_zero_pairing(fibers) -> EpsZeroPairing | PairingImbalance:
    """Match fibers into complementary pairs, for spaces with eps = 0.

    Fibers may be in any presentation; two fibers pair when their reciprocals
    sum to an integer.  Returns the pairing with one representative fraction
    per pair (the member with reciprocal <= 1/2), or the first imbalance.
    """
    fibers = tuple(Fraction(r) for r in fibers)
    recip_sum = sum((1 / r for r in fibers), Fraction(0))
    if recip_sum.denominator != 1:
        raise ValueError(
            f"pairing applies to eps = 0 presentations; reciprocal sum {recip_sum} is not integral"
        )
    groups: dict[Fraction, list[int]] = {}
    for i, r in enumerate(fibers, start=1):
        b = (1 / r) % 1
        if b == 0:
            continue  # regular fiber, no pairing constraint
        groups.setdefault(b, []).append(i)
    pairs = []
    reps = []
    for b in sorted(groups):
        if b > Fraction(1, 2):
            continue
        mine = groups[b]
        if b == Fraction(1, 2):
            if len(mine) % 2:
                return PairingImbalance(b, len(mine), len(mine))
            for x, y in zip(mine[0::2], mine[1::2]):
                pairs.append((x, y))
                reps.append(Fraction(2))
            continue
        other = groups.get(1 - b, [])
        if len(mine) != len(other):
            return PairingImbalance(b, len(mine), len(other))
        for x, y in zip(mine, other):
            pairs.append((x, y))
            reps.append(1 / b)
    return EpsZeroPairing(tuple(pairs), tuple(reps))


def _eps_zero_branch(std: StandardForm, trace: list[TraceStep]):
    pairing = eps_zero_pairing(std.fibers)
    if isinstance(pairing, PairingImbalance):
        trace.append(TraceStep("eps_zero_pairing", "fail", pairing.describe()))
        return OBSTRUCTED, None, Obstruction("unpaired_fibers", pairing.describe())
    trace.append(
        TraceStep(
            "eps_zero_pairing",
            "pass",
            "pairs " + ", ".join(format_rational(r) for r in pairing.disk_fibers),
        )
    )
    support = sorted(set(pairing.disk_fibers))
    even_support = [r for r in support if r.numerator % 2 == 0]

    def cert(rule):
        return Certificate(kind="cited", rule=rule, pairing=pairing.pairs,
                           base_fibers=tuple(support))

    if not even_support:
        trace.append(TraceStep("eps_zero_all_odd", "pass", "all pair multiplicities odd"))
        return EMBEDS, cert("eps_zero_all_odd"), None
    trace.append(TraceStep("eps_zero_all_odd", "fail", "even multiplicity present"))
    if len(even_support) == 1:
        trace.append(TraceStep("eps_zero_one_even", "pass", f"single even class {even_support[0]}"))
        return EMBEDS, cert("eps_zero_one_even"), None
    trace.append(TraceStep("eps_zero_one_even", "fail", f"{len(even_support)} even classes"))
    if set(support) <= {Fraction(4), Fraction(12, 5)}:
        trace.append(TraceStep("eps_zero_known_disk", "pass", "pairs inside {4, 12/5}"))
        return EMBEDS, cert("eps_zero_known_disk"), None
    trace.append(TraceStep("eps_zero_known_disk", "fail", "pairs not inside {4, 12/5}"))
    reps = pairing.disk_fibers
    if (
        len(reps) == 2
        and all(r.denominator == 1 for r in reps)
        and all(r.numerator % 2 == 0 for r in reps)
        and reps[0] != reps[1]
    ):
        detail = f"pairs ({reps[0]}, -{reps[0]}), ({reps[1]}, -{reps[1]}), both even, distinct"
        trace.append(TraceStep("furuta_ten_eighths", "fail", detail))
        return OBSTRUCTED, None, Obstruction("furuta_ten_eighths", detail)
    trace.append(TraceStep("furuta_ten_eighths", "skip", "not the two-integer-pair shape"))
    return UNKNOWN, None, None


# ---------------------------------------------------------------------------
# eps > 0: constructive side


def _recognize_base(s: StandardForm) -> str | None:
    """Cited rule name if (e; fibers) is a recognized embeddable base."""
    if s.central != 1:
        return None
    fs = sorted(s.fibers)
    if len(fs) == 1 and fs[0].numerator - fs[0].denominator == 1:
        return "s3_one_exceptional"
    if len(fs) == 2:
        u, v = fs
        if 1 / u + 1 / v == 1 - Fraction(1, u.numerator * v.numerator):
            return "s3_two_exceptional"
    if fs == [Fraction(12, 5), Fraction(4), Fraction(4)]:
        return "known_embedding_4_4_12_5"
    return None


def _contraction_certificate(s: StandardForm) -> Certificate | None:
    """Breadth-first contraction to a recognized base, recording expansions."""
    start_key = s.canonical_key()
    seen = {start_key}
    queue = deque([(s, ())])  # (space, contraction path of duplicated values)
    while queue:
        cur, path = queue.popleft()
        rule = _recognize_base(cur)
        if rule is not None:
            return Certificate(
                kind="expansion",
                rule=rule,
                base_central=cur.central,
                base_fibers=tuple(sorted(cur.fibers)),
                genus_bumps=s.genus,
                expansions=tuple(reversed(path)),
            )
        for j, smaller in find_contractions(cur):
            key = smaller.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            queue.append((smaller, path + (smaller.fibers[j - 1],)))
    return None


def replay_certificate(cert: Certificate, target: StandardForm) -> bool:
    """Re-derive an EMBEDS certificate against the normalized input."""
    if cert.kind == "expansion":
        cur = StandardForm(cert.genus_bumps, cert.base_central, cert.base_fibers)
        for value in cert.expansions:
            if value not in cur.fibers:
                return False
            cur = expand(cur, cur.fibers.index(value) + 1)
        if cur.canonical_key() != target.canonical_key():
            return False
        base = StandardForm(0, cert.base_central, cert.base_fibers)
        return _recognize_base(base) == cert.rule
    if cert.kind == "cited":
        if cert.rule == "s3_empty":
            return target.fiber_count == 0 and target.central == 1 and target.genus == 0
        pairing = eps_zero_pairing(target.fibers)
        if isinstance(pairing, PairingImbalance):
            return False
        support = set(pairing.disk_fibers)
        evens = [r for r in support if r.numerator % 2 == 0]
        if cert.rule == "eps_zero_all_odd":
            return not evens
        if cert.rule in ("eps_zero_one_even", "eps_zero_int_pair_even_odd"):
            return len(evens) <= 1
        if cert.rule == "eps_zero_known_disk":
            return support <= {Fraction(4), Fraction(12, 5)}
        return False
    return False


# ---------------------------------------------------------------------------
# the pipeline


def _spin_filtered_pair_search(s: StandardForm, trace: list[TraceStep]):
    """Re-run the pair search keeping only partitions passing the spin rules.

    The even-multiplicity conditions constrain the partitions induced by an
    actual embedding, so the obstruction only applies if *every* valid pair
    contains a failing partition.
    """
    parts = sum_condition_partitions(s)
    survivors = [
        p for p in parts if not any(c.failed for c in partition_even_conditions(s, p))
    ]
    for i, pa in enumerate(survivors):
        for pb in survivors[i:]:
            if _condition_c(pa, pb):
                trace.append(
                    TraceStep(
                        "spin_partition_conditions",
                        "pass",
                        f"{len(survivors)}/{len(parts)} partitions survive; surviving pair exists",
                    )
                )
                return True
    trace.append(
        TraceStep(
            "spin_partition_conditions",
            "fail",
            f"{len(survivors)} of {len(parts)} sum-condition partitions pass the "
            "even-multiplicity spin conditions, and no surviving pair meets the union condition",
        )
    )
    return False


def classify(data: SeifertData, fiber_budget: int = 14) -> Verdict:
    """Full decision pipeline for one Seifert fibered space."""
    if isinstance(data, StandardForm):
        data = data.as_seifert_data()
    std = normalize(data)
    eps = euler_invariant(std)
    h1 = h1_formula(std)
    trace: list[TraceStep] = [
        TraceStep("normalize", "info", f"{std}; eps = {format_rational(eps)}"),
        TraceStep("h1", "info", str(h1)),
    ]

    def verdict(tag, certificate=None, obstruction=None):
        if certificate is not None:
            assert replay_certificate(certificate, std), "certificate must replay"
        return Verdict(tag, std, eps, h1, certificate, obstruction, tuple(trace))

    if std.fiber_count == 0:
        if std.genus == 0 and std.central == 1:
            trace.append(TraceStep("no_exceptional_fibers", "pass", "the 3-sphere"))
            return verdict(EMBEDS, Certificate(kind="cited", rule="s3_empty"))
        trace.append(
            TraceStep("no_exceptional_fibers", "skip", "no certified family without exceptional fibers")
        )
        return verdict(UNKNOWN)

    if eps == 0:
        tag, certificate, obstruction = _eps_zero_branch(std, trace)
        return verdict(tag, certificate, obstruction)

    # eps > 0 obstruction chain, cheapest first
    if not is_direct_double(h1):
        trace.append(TraceStep("direct_double", "fail", f"tor H1 = {h1}"))
        return verdict(
            OBSTRUCTED, obstruction=Obstruction("torsion_not_direct_double", f"tor H1 = {h1}")
        )
    trace.append(TraceStep("direct_double", "pass", f"tor H1 = {h1}"))

    bound = bound_e(std)
    if not bound.ok:
        trace.append(TraceStep("central_weight_bound", "fail", bound.detail))
        return verdict(OBSTRUCTED, obstruction=Obstruction("central_weight_bound", bound.detail))
    trace.append(TraceStep("central_weight_bound", "pass", bound.detail))

    search = is_partitionable(std, fiber_budget=fiber_budget)
    if search.status == "budget_exceeded":
        trace.append(TraceStep("partitionable", "budget", search.detail))
        return verdict(BUDGET_EXCEEDED)
    if search.status == "refuted":
        detail = f"{search.refuted}: {search.detail}"
        trace.append(TraceStep("partitionable", "fail", detail))
        return verdict(OBSTRUCTED, obstruction=Obstruction("not_partitionable", detail))
    witness = search.witness
    trace.append(
        TraceStep("partitionable", "pass", f"P1 = {witness.p1}, P2 = {witness.p2}")
    )

    if std.genus == 0:
        report = mubar_embedding_conditions(std, witness)
        global_failures = [
            c for c in report.conditions
            if c.failed and c.name in ("z2_cohomology_bound", "spin_count_square", "mubar_zero_count")
        ]
        for c in report.conditions:
            if c.name in ("z2_cohomology_bound", "spin_count_square", "mubar_zero_count"):
                trace.append(TraceStep(c.name, c.status, c.detail))
        if global_failures:
            c = global_failures[0]
            return verdict(OBSTRUCTED, obstruction=Obstruction(c.name, c.detail))
        if any(p % 2 == 0 for p in std.multiplicities):
            if not _spin_filtered_pair_search(std, trace):
                return verdict(
                    OBSTRUCTED,
                    obstruction=Obstruction(
                        "spin_partition_conditions",
                        "every partition pair meeting the sum conditions violates the "
                        "even-multiplicity spin conditions",
                    ),
                )
        else:
            trace.append(TraceStep("spin_partition_conditions", "skip", "all multiplicities odd"))
    else:
        trace.append(TraceStep("spin_conditions", "skip", "base genus > 0"))

    certificate = _contraction_certificate(std)
    if certificate is not None:
        trace.append(
            TraceStep(
                "contraction",
                "pass",
                f"base SFS(g=0; e={certificate.base_central}; "
                + ", ".join(format_rational(r) for r in certificate.base_fibers)
                + f") via {len(certificate.expansions)} expansions, {certificate.genus_bumps} genus bumps",
            )
        )
        return verdict(EMBEDS, certificate)
    trace.append(TraceStep("contraction", "fail", "no contraction path to a recognized base"))
    return verdict(UNKNOWN)

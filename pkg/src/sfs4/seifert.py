"""Seifert fibered spaces over orientable surfaces.

A space is recorded by its surgery data: base genus g, central weight e and an
ordered list of nonzero fiber fractions p_i/q_i.  ``normalize`` reduces any
such presentation (possibly reversing orientation) to the standard form with
every fraction > 1 and generalized Euler invariant

    eps = e - sum(q_i / p_i) >= 0.

Fiber indices are 1-based everywhere in the public API, matching the usual
mathematical indexing; certificates and partition classes always refer to
positions in a space's fiber tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rationals import complement, format_rational


def fiber_pq(r: Fraction) -> tuple[int, int]:
    """Split a nonzero fiber fraction r into (p, q) with p >= 1, gcd(p,q)=1."""
    if r == 0:
        raise ValueError("zero fiber fraction")
    if r.numerator > 0:
        return r.numerator, r.denominator
    return -r.numerator, -r.denominator


@dataclass(frozen=True)
class SeifertData:
    """Raw (possibly unnormalized) Seifert surgery data F(e; p1/q1, ..., pk/qk)."""

    genus: int
    central: int
    fibers: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(Fraction(r) for r in self.fibers))
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if any(r == 0 for r in self.fibers):
            raise ValueError("fiber fractions must be nonzero")

    @property
    def fiber_count(self) -> int:
        return len(self.fibers)

    def __str__(self) -> str:
        rs = ", ".join(format_rational(r) for r in self.fibers)
        return f"SFS(g={self.genus}; e={self.central}; {rs})" if rs else f"SFS(g={self.genus}; e={self.central};)"


@dataclass(frozen=True)
class StandardForm:
    """Standard form: every fiber > 1 and eps >= 0.

    ``orientation_reversed`` records whether normalization had to pass to the
    mirror.  Embeddability in S^4 does not depend on it.
    """

    genus: int
    central: int
    fibers: tuple[Fraction, ...]
    orientation_reversed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(Fraction(r) for r in self.fibers))
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if any(r <= 1 for r in self.fibers):
            raise ValueError("standard form needs every fiber fraction > 1")
        if euler_invariant(self) < 0:
            raise ValueError("standard form needs eps >= 0")

    @property
    def fiber_count(self) -> int:
        return len(self.fibers)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        """The p_i of the fibers, in fiber order."""
        return tuple(r.numerator for r in self.fibers)

    def betas(self) -> tuple[Fraction, ...]:
        """The reciprocals q_i/p_i, each in (0, 1)."""
        return tuple(1 / r for r in self.fibers)

    def as_seifert_data(self) -> SeifertData:
        return SeifertData(self.genus, self.central, self.fibers)

    def canonical_key(self):
        """Equality key treating the fiber list as a multiset."""
        return (self.genus, self.central, tuple(sorted(self.fibers, reverse=True)))

    def __str__(self) -> str:
        rs = ", ".join(format_rational(r) for r in self.fibers)
        return f"SFS(g={self.genus}; e={self.central}; {rs})" if rs else f"SFS(g={self.genus}; e={self.central};)"


def euler_invariant(s) -> Fraction:
    """Generalized Euler invariant e - sum(q_i/p_i), exact."""
    return Fraction(s.central) - sum((1 / r for r in s.fibers), Fraction(0))


def _accumulate(central: int, betas) -> tuple[int, list[Fraction]]:
    # Shift each beta into (0,1) and move the integer parts into the central
    # weight; betas that are integers correspond to regular fibers and vanish.
    kept = []
    e = central
    for b in betas:
        n = math.floor(b)
        e -= n
        frac = b - n
        if frac != 0:
            kept.append(frac)
    return e, kept


def normalize(s: SeifertData) -> StandardForm:
    """Standard form of a Seifert space, reversing orientation if eps < 0.

    Fibers given as negative fractions or with |r| < 1 are folded through
    their reciprocal's fractional part, which is the unique convention
    preserving the Euler invariant.  Surviving fibers keep their input order.
    """
    e, betas = _accumulate(s.central, [1 / r for r in s.fibers])
    reversed_ = False
    if Fraction(e) - sum(betas, Fraction(0)) < 0:
        e, betas = _accumulate(-e, [-b for b in betas])
        reversed_ = True
    return StandardForm(s.genus, e, tuple(1 / b for b in betas), reversed_)


def expand(s: StandardForm, j: int) -> StandardForm:
    """Append the complementary pair of fiber j (1-based) and increment e.

    The Euler invariant is unchanged: the new fractions p_j/(p_j - q_j) and
    p_j/q_j contribute reciprocals summing to 1.
    """
    if not 1 <= j <= s.fiber_count:
        raise IndexError(f"fiber index {j} out of range 1..{s.fiber_count}")
    r = s.fibers[j - 1]
    return StandardForm(
        s.genus,
        s.central + 1,
        s.fibers + (complement(r), r),
        s.orientation_reversed,
    )


def find_contractions(s: StandardForm) -> list[tuple[int, StandardForm]]:
    """All ways of undoing an expansion, up to fiber permutation.

    Each result is (j, contracted) where the removed unordered fiber pair was
    {r, complement(r)} and fiber j (1-based, in the contracted space) carries
    the duplicated fraction, so ``expand(contracted, j)`` reproduces ``s`` as
    a multiset.  Empty when the space is minimal.
    """
    out = []
    seen = set()
    k = s.fiber_count
    for a in range(k):
        for b in range(a + 1, k):
            if complement(s.fibers[a]) != s.fibers[b]:
                continue
            rest = [s.fibers[i] for i in range(k) if i != a and i != b]
            # Some remaining fiber must carry one of the removed values for
            # the pair to be an expansion pair.
            j = next(
                (i + 1 for i, r in enumerate(rest) if r == s.fibers[a] or r == s.fibers[b]),
                None,
            )
            if j is None:
                continue
            contracted = StandardForm(
                s.genus, s.central - 1, tuple(rest), s.orientation_reversed
            )
            key = (contracted.canonical_key(), tuple(sorted((s.fibers[a], s.fibers[b]))))
            if key in seen:
                continue
            seen.add(key)
            out.append((j, contracted))
    out.sort(key=lambda item: (item[1].canonical_key(), item[0]))
    return out

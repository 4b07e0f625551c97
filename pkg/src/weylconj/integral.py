"""Integral collections and the presentation-by-conjugation decision.

For the relevant essential supporting-class members J (subsets of the
isotropic directions of size >= 3, drawn from S1 and/or S2 depending on
type), an assignment eps: J -> {0,1} is *integral* when for every pair
r < s the divisor Delta(r,s) divides the number of chosen J strictly
containing {r,s}.  The extended affine Weyl group has the presentation
by conjugation exactly when the trivial assignment is the only integral
one; the count Inc is always a power of two (the integral assignments
form a GF(2)-subspace under coordinatewise XOR) and n0 = log2(Inc)
counts the 2-torsion factors in the kernel of the canonical epimorphism
from the presented group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

from .semilattice import Semilattice, elems_of, enumerate_semilattices
from .rootsystem import RootSystemSpec, make_spec

MAX_FAMILY = 24
WITNESS_CAP = 16


class FamilyTooLarge(ValueError):
    pass


class NotPowerOfTwo(RuntimeError):
    """Enumeration produced a count that is not a power of two: an implementation bug."""


class SearchExhausted(RuntimeError):
    """The non-minimal construction found no witness; contradicts the existence result."""


def essential_family(spec: RootSystemSpec) -> tuple[int, ...]:
    """The index family governing collections, as sorted global bitmasks.

    B2 draws on both semilattices, B_l (l>2) only on S1, C_l only on S2
    (shifted into the upper coordinates), F4 and G2 on neither.
    """
    t = spec.twist
    if spec.family == "B" and spec.rank == 2:
        masks = set(spec.s1.essential_supp())
        masks |= {m << t for m in spec.s2.essential_supp()}
    elif spec.family == "B":
        masks = set(spec.s1.essential_supp())
    elif spec.family == "C":
        masks = {m << t for m in spec.s2.essential_supp()}
    else:
        masks = set()
    return tuple(sorted(masks))


def _pair_mask(r: int, s: int) -> int:
    return (1 << (r - 1)) | (1 << (s - 1))


def pair_residues(
    spec: RootSystemSpec, eps: Mapping[int, int]
) -> dict[tuple[int, int], tuple[int, int]]:
    """Per pair r < s: (sum of chosen J containing the pair, Delta(r,s))."""
    family = essential_family(spec)
    out = {}
    for r in range(1, spec.nullity + 1):
        for s in range(r + 1, spec.nullity + 1):
            pm = _pair_mask(r, s)
            total = sum(eps[j] for j in family if pm & j == pm)
            out[(r, s)] = (total, spec.pair_divisor(r, s))
    return out


def is_integral(spec: RootSystemSpec, eps: Mapping[int, int]) -> bool:
    """Whether Delta(r,s) divides the chi-weighted sum for every pair r < s."""
    family = essential_family(spec)
    if set(eps) != set(family):
        raise ValueError("assignment must cover exactly the essential family")
    return all(total % delta == 0 for total, delta in pair_residues(spec, eps).values())


def integral_collections(spec: RootSystemSpec) -> Iterator[dict[int, int]]:
    """All integral assignments, in lexicographic bit order (trivial one first)."""
    family = essential_family(spec)
    if len(family) > MAX_FAMILY:
        raise FamilyTooLarge(
            f"|family| = {len(family)} exceeds the enumeration guard {MAX_FAMILY}"
        )
    # precompute, per constrained pair, the mask of family positions containing it
    constraints = []
    for r in range(1, spec.nullity + 1):
        for s in range(r + 1, spec.nullity + 1):
            delta = spec.pair_divisor(r, s)
            if delta == 1:
                continue
            pm = _pair_mask(r, s)
            posmask = 0
            for pos, j in enumerate(family):
                if pm & j == pm:
                    posmask |= 1 << pos
            constraints.append(posmask)
    for bits in range(1 << len(family)):
        if all((bits & c).bit_count() % 2 == 0 for c in constraints):
            yield {j: bits >> pos & 1 for pos, j in enumerate(family)}


@dataclass(frozen=True)
class DecisionReport:
    """Outcome of the collection count for one root system."""

    inc: int
    n0: int
    has_pbc: bool
    witnesses: tuple[tuple[int, ...], ...]  # chosen-J masks of non-trivial collections
    corollary_notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.inc != 1 << self.n0:
            raise NotPowerOfTwo(f"inc = {self.inc} is not 2^{self.n0}")
        if self.has_pbc != (self.inc == 1):
            raise ValueError("has_pbc must mirror inc == 1")

    def to_json(self) -> dict:
        return {
            "inc": self.inc,
            "n0": self.n0,
            "pbc": self.has_pbc,
            "witnesses": [
                [list(elems_of(j)) for j in w] for w in self.witnesses
            ],
            "corollaries": list(self.corollary_notes),
        }


def count_collections(
    spec: RootSystemSpec, max_witnesses: int = WITNESS_CAP
) -> DecisionReport:
    """Count integral collections and decide the presentation by conjugation."""
    inc = 0
    witnesses: list[tuple[int, ...]] = []
    for eps in integral_collections(spec):
        inc += 1
        chosen = tuple(sorted(j for j, bit in eps.items() if bit))
        if chosen and len(witnesses) < max_witnesses:
            witnesses.append(chosen)
    if inc & (inc - 1):
        raise NotPowerOfTwo(f"{inc} integral collections")
    screen = minimality_screen(spec)
    notes = [f"{screen.verdict}: {reason}" for reason in screen.reasons]
    closed = closed_form_exponent(spec)
    if closed is not None:
        notes.append(f"closed-form: n0 = {closed}")
    return DecisionReport(
        inc=inc,
        n0=inc.bit_length() - 1,
        has_pbc=inc == 1,
        witnesses=tuple(sorted(witnesses)),
        corollary_notes=tuple(notes),
    )


def semilattice_collection_count(s: Semilattice) -> int:
    """Integral collections of a single semilattice against its own pair divisors."""
    family = sorted(s.essential_supp())
    if len(family) > MAX_FAMILY:
        raise FamilyTooLarge(f"|family| = {len(family)}")
    constraints = []
    for r in range(1, s.dim + 1):
        for t in range(r + 1, s.dim + 1):
            if s.pair_divisor(r, t) == 1:
                continue
            pm = _pair_mask(r, t)
            posmask = 0
            for pos, j in enumerate(family):
                if pm & j == pm:
                    posmask |= 1 << pos
            constraints.append(posmask)
    return sum(
        1
        for bits in range(1 << len(family))
        if all((bits & c).bit_count() % 2 == 0 for c in constraints)
    )


def decide_by_reduction(spec: RootSystemSpec) -> bool:
    """Presentation-by-conjugation verdict via the per-semilattice reduction."""
    if spec.family in ("F4", "G2"):
        return True
    if spec.family == "B" and spec.rank == 2:
        return (
            semilattice_collection_count(spec.s1) == 1
            and semilattice_collection_count(spec.s2) == 1
        )
    if spec.family == "B":
        return semilattice_collection_count(spec.s1) == 1
    return semilattice_collection_count(spec.s2) == 1


def closed_form_exponent(spec: RootSystemSpec) -> int | None:
    """n0 in the closed-form regimes (every relevant pair supported); None otherwise."""
    if not essential_family(spec):
        return 0

    def all_pairs_supported(s: Semilattice) -> bool:
        return all(
            s.pair_divisor(r, t) == 1
            for r in range(1, s.dim + 1)
            for t in range(r + 1, s.dim + 1)
        )

    if spec.family == "B" and spec.rank == 2:
        if all_pairs_supported(spec.s1) and all_pairs_supported(spec.s2):
            return len(spec.s1.essential_supp()) + len(spec.s2.essential_supp())
        return None
    if spec.family == "B":
        if all_pairs_supported(spec.s1):
            return len(spec.s1.essential_supp())
        return None
    if spec.family == "C":
        if all_pairs_supported(spec.s2):
            return len(spec.s2.essential_supp())
        return None
    return 0


@dataclass(frozen=True)
class ScreenResult:
    verdict: str  # "minimal" | "not_minimal" | "unknown"
    reasons: tuple[str, ...]


def _not_minimal_reasons(s: Semilattice, side: str, span: int) -> list[str]:
    reasons = []
    for j in sorted(s.essential_supp()):
        members = elems_of(j)
        if all(
            s.pair_divisor(r, t) == 1 for r, t in itertools.combinations(members, 2)
        ):
            reasons.append(
                f"essential member {list(members)} of {side} has all pairs supported"
            )
            break
    if span >= 3 and s.is_lattice:
        reasons.append(f"{side} is a lattice of dimension >= 3")
    if span > 3 and s.index == (1 << span) - 2:
        reasons.append(f"{side} has near-full index 2^{span} - 2")
    return reasons


def minimality_screen(spec: RootSystemSpec) -> ScreenResult:
    """Fast sufficient conditions for minimality / non-minimality.

    Applies the index-gap and low-twist bounds for the minimal verdicts
    and the supported-essential-member family for the non-minimal ones;
    returns "unknown" when nothing fires.  Decisive verdicts always
    agree with the full enumeration.
    """
    t, nu = spec.twist, spec.nullity
    minimal: list[str] = []
    not_minimal: list[str] = []
    if spec.family in ("F4", "G2"):
        minimal.append("empty essential family for this type")
    elif spec.family == "B" and spec.rank == 2:
        if spec.s1.index - t <= 3 and spec.s2.index - (nu - t) <= 3:
            minimal.append("ind(S1) - t <= 3 and ind(S2) - (nu - t) <= 3")
        if t <= 3 and nu - t <= 3 and spec.s1.index != 7 and spec.s2.index != 7:
            minimal.append("both blocks have dimension <= 3 and index != 7")
        not_minimal += _not_minimal_reasons(spec.s1, "S1", t)
        not_minimal += _not_minimal_reasons(spec.s2, "S2", nu - t)
    elif spec.family == "B":
        if spec.s1.index - t <= 3:
            minimal.append("ind(S1) - t <= 3")
        if t <= 3 and spec.s1.index != 7:
            minimal.append("twist <= 3 and ind(S1) != 7")
        not_minimal += _not_minimal_reasons(spec.s1, "S1", t)
    else:  # C
        if spec.s2.index - (nu - t) <= 3:
            minimal.append("ind(S2) - (nu - t) <= 3")
        if nu - t <= 3 and spec.s2.index != 7:
            minimal.append("nu - twist <= 3 and ind(S2) != 7")
        not_minimal += _not_minimal_reasons(spec.s2, "S2", nu - t)
    if minimal and not_minimal:  # pragma: no cover
        raise RuntimeError(f"contradictory screen: {minimal} vs {not_minimal}")
    if minimal:
        return ScreenResult("minimal", tuple(minimal))
    if not_minimal:
        return ScreenResult("not_minimal", tuple(not_minimal))
    return ScreenResult("unknown", ())


def construct_nonminimal(
    family: str,
    nullity: int,
    twist: int,
    m1: int | None = None,
    m2: int | None = None,
    rank: int = 3,
) -> RootSystemSpec:
    """Search for a non-minimal system with the demanded semilattice indices.

    For type B the varying side is S1 (index m1, with 7 <= t+4 <= m1 <=
    2^t - 1) and S2 is a lattice; for type C the roles swap.  The search
    runs over permutation representatives of the varying dimension and
    keeps the first class of the right index admitting a non-trivial
    collection; the result is re-certified by full enumeration.
    """
    if family not in ("B", "C"):
        raise ValueError("the construction applies to types B and C")
    t = twist
    if family == "B":
        if m1 is None:
            raise ValueError("type B requires m1")
        if not 7 <= t + 4 <= m1 <= (1 << t) - 1:
            raise ValueError(f"need 7 <= t+4 <= m1 <= 2^t - 1, got t={t}, m1={m1}")
        span, target = t, m1
    else:
        if m2 is None:
            raise ValueError("type C requires m2")
        if not 7 <= nullity - t + 4 <= m2 <= (1 << (nullity - t)) - 1:
            raise ValueError(
                f"need 7 <= nu-t+4 <= m2 <= 2^(nu-t) - 1, got nu-t={nullity - t}, m2={m2}"
            )
        span, target = nullity - t, m2
    for cand in enumerate_semilattices(span, up_to_permutation=True):
        if cand.index != target:
            continue
        if semilattice_collection_count(cand) > 1:
            if family == "B":
                spec = make_spec(
                    family, rank, nullity, t, cand, Semilattice.lattice(nullity - t)
                )
            else:
                spec = make_spec(
                    family, rank, nullity, t, Semilattice.lattice(t), cand
                )
            report = count_collections(spec)
            if report.inc > 1:
                return spec
    raise SearchExhausted(
        f"no index-{target} semilattice of dimension {span} with a non-trivial collection"
    )

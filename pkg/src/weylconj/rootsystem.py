"""Finite root systems B/C/F4/G2 and extended affine systems built on them.

Finite roots are realised abstractly: vectors are integer coordinate
tuples in the simple-root basis and the bilinear form is carried by the
Gram matrix derived from the Cartan data.  Short roots have squared
length 2 and long roots 2k, where k = 3 for G2 and 2 otherwise, which
makes every pairing (alpha, beta^vee) an integer.  The simple roots are
ordered so that alpha_1 is short, alpha_2 is long and the two are
non-orthogonal; the remaining simple roots follow the chain.  Nothing
downstream depends on the realisation beyond Gram pairings and the
short/long sets, so alternative realisations can be substituted.

An extended affine system R(X, S1, S2) of rank l, nullity nu and twist t
consists of the vectors

    (S+S)  u  (R_sh + S1 (+) <S2>)  u  (R_lg + k<S1> (+) S2)

with S = S1 (+) <S2>; roots are stored as (finite part, nu integer
isotropic coordinates).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .semilattice import Semilattice, make_semilattice

FAMILIES = ("B", "C", "F4", "G2")


class SpecValidationError(ValueError):
    """Invalid extended affine root system data."""


class UnsupportedType(SpecValidationError):
    pass


class RankOutOfRange(SpecValidationError):
    pass


class TwistOutOfRange(SpecValidationError):
    pass


class LatticeRequired(SpecValidationError):
    def __init__(self, side: str, family: str) -> None:
        super().__init__(f"{side} must be a lattice for type {family}")
        self.side = side


class IndexRange(SpecValidationError):
    pass


class IntegralityViolation(RuntimeError):
    """A coefficient the construction guarantees integral came out fractional."""


Vec = tuple  # coordinate tuple, entries int or Fraction


def _pairing(gram: Sequence[Sequence[int]], u: Vec, v: Vec) -> Fraction:
    total = Fraction(0)
    for i, ui in enumerate(u):
        if ui:
            row = gram[i]
            total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
    return total


def _as_int(x: Fraction, what: str) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise IntegralityViolation(f"{what} = {x} is not an integer")
    return x.numerator


def _vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _vec_sub_scaled(u: Vec, c, v: Vec) -> Vec:
    return tuple(a - c * b for a, b in zip(u, v))


@dataclass(frozen=True)
class FiniteRoots:
    """A finite root system with distinguished short alpha_1, long alpha_2."""

    family: str
    rank: int
    simple: tuple[Vec, ...]
    short_roots: frozenset
    long_roots: frozenset
    gram: tuple[tuple[int, ...], ...]
    k: int

    @property
    def theta1(self) -> Vec:
        return self.simple[0]

    @property
    def theta2(self) -> Vec:
        return self.simple[1]

    def pairing(self, u: Vec, v: Vec) -> Fraction:
        return _pairing(self.gram, u, v)

    def cartan(self, u: Vec, v: Vec) -> int:
        """(u, v^vee) for a non-isotropic v; integral whenever u, v are roots."""
        return _as_int(2 * self.pairing(u, v) / self.pairing(v, v), "cartan pairing")

    def is_root(self, v: Vec) -> bool:
        return v in self.short_roots or v in self.long_roots

    def reflect(self, v: Vec, alpha: Vec) -> Vec:
        return _vec_sub_scaled(v, self.cartan(v, alpha), alpha)


# Cartan data in the required ordering: half squared lengths per simple
# root, and bonds (i, j) -> ((a_i, a_j^vee), (a_j, a_i^vee)), 1-based.
def _chain_data(family: str, rank: int):
    if family == "B":
        d = [1] + [2] * (rank - 1)
        bonds = {(1, 2): (-1, -2)}
        for i in range(2, rank):
            bonds[(i, i + 1)] = (-1, -1)
    elif family == "C":
        d = [1, 2] + [1] * (rank - 2)
        bonds = {(1, 2): (-1, -2)}
        if rank >= 3:
            bonds[(1, 3)] = (-1, -1)
        for i in range(3, rank):
            bonds[(i, i + 1)] = (-1, -1)
    elif family == "F4":
        d = [1, 2, 2, 1]
        bonds = {(1, 2): (-1, -2), (2, 3): (-1, -1), (1, 4): (-1, -1)}
    elif family == "G2":
        d = [1, 3]
        bonds = {(1, 2): (-1, -3)}
    else:  # pragma: no cover - guarded by finite_roots
        raise UnsupportedType(family)
    return d, bonds


def _validate_family_rank(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise UnsupportedType(f"unknown type {family!r}; expected one of {FAMILIES}")
    if family == "B" and rank < 2:
        raise RankOutOfRange("type B requires rank >= 2")
    if family == "C" and rank < 3:
        raise RankOutOfRange("type C requires rank >= 3")
    if family == "F4" and rank != 4:
        raise RankOutOfRange("type F4 has rank 4")
    if family == "G2" and rank != 2:
        raise RankOutOfRange("type G2 has rank 2")


@lru_cache(maxsize=None)
def finite_roots(family: str, rank: int) -> FiniteRoots:
    """Build the finite root system by reflection closure of the simple roots."""
    _validate_family_rank(family, rank)
    d, bonds = _chain_data(family, rank)
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for (i, j), (cij, cji) in bonds.items():
        cartan[i - 1][j - 1] = cij
        cartan[j - 1][i - 1] = cji
    gram = tuple(
        tuple(cartan[i][j] * d[j] for j in range(rank)) for i in range(rank)
    )
    for i in range(rank):
        for j in range(rank):
            assert gram[i][j] == gram[j][i], "Cartan data must symmetrise"

    simple = tuple(
        tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)
    )
    roots = set(simple) | {tuple(-x for x in v) for v in simple}
    frontier = list(roots)
    cap = 4 * rank * rank + 8
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                c = sum(beta[j] * gram[j][i] for j in range(rank))
                q, rem = divmod(c, d[i])
                assert rem == 0, "non-integral Cartan pairing during closure"
                img = list(beta)
                img[i] -= q
                img_t = tuple(img)
                if img_t not in roots:
                    roots.add(img_t)
                    nxt.append(img_t)
        frontier = nxt
        if len(roots) > cap:  # pragma: no cover - malformed Cartan data only
            raise RuntimeError("reflection closure did not terminate")

    k = 3 if family == "G2" else 2
    short, long_ = set(), set()
    for v in roots:
        sq = _pairing(gram, v, v)
        if sq == 2:
            short.add(v)
        elif sq == 2 * k:
            long_.add(v)
        else:  # pragma: no cover
            raise RuntimeError(f"unexpected root length {sq} for {v}")
    fr = FiniteRoots(
        family=family,
        rank=rank,
        simple=simple,
        short_roots=frozenset(short),
        long_roots=frozenset(long_),
        gram=gram,
        k=k,
    )
    assert fr.theta1 in fr.short_roots and fr.theta2 in fr.long_roots
    assert fr.pairing(fr.theta1, fr.theta2) != 0
    return fr


class Root(NamedTuple):
    """An extended affine root: finite part plus integer isotropic coordinates."""

    finite: Vec
    iso: tuple[int, ...]


class RootClass(enum.Enum):
    SHORT = "short"
    LONG = "long"
    ISOTROPIC = "isotropic"
    NONE = "none"


@dataclass(frozen=True)
class RootSystemSpec:
    """R(X, S1, S2): type, rank, nullity, twist and the two semilattices.

    S1 lives in the first `twist` isotropic coordinates, S2 in the rest;
    S2's own coordinates are 1..nullity-twist and get shifted when a
    global index is needed.
    """

    family: str
    rank: int
    nullity: int
    twist: int
    s1: Semilattice
    s2: Semilattice
    roots: FiniteRoots = field(repr=False)

    @property
    def k(self) -> int:
        return self.roots.k

    def k_r(self, r: int) -> int:
        """Scale of the isotropic direction r: k on the twisted block, else 1."""
        if not 1 <= r <= self.nullity:
            raise IndexRange(f"direction {r} outside 1..{self.nullity}")
        return self.k if r <= self.twist else 1

    def translation_step(self, i: int, r: int) -> int:
        """Least n >= 1 with alpha_i + n sigma_r a root: 1 for short alpha_i, k_r for long."""
        if not 1 <= i <= self.rank:
            raise IndexRange(f"simple-root index {i} outside 1..{self.rank}")
        alpha = self.roots.simple[i - 1]
        return 1 if alpha in self.roots.short_roots else self.k_r(r)

    def pair_divisor(self, r: int, s: int) -> int:
        """Divisor Delta(r,s) for a global pair r < s of isotropic directions."""
        if not 1 <= r < s <= self.nullity:
            raise IndexRange(f"need 1 <= r < s <= {self.nullity}, got ({r}, {s})")
        t = self.twist
        if s <= t:
            return self.s1.pair_divisor(r, s)
        if r <= t:
            return 1
        return self.s2.pair_divisor(r - t, s - t)

    def zero_root(self) -> Root:
        dim = len(self.roots.simple[0])
        return Root((0,) * dim, (0,) * self.nullity)


def make_spec(
    family: str,
    rank: int,
    nullity: int,
    twist: int,
    s1: Semilattice,
    s2: Semilattice,
    roots: FiniteRoots | None = None,
) -> RootSystemSpec:
    """Validate and assemble an extended affine root system description."""
    _validate_family_rank(family, rank)
    if nullity < 0:
        raise SpecValidationError("nullity must be non-negative")
    if not 0 <= twist <= nullity:
        raise TwistOutOfRange(f"twist {twist} outside 0..{nullity}")
    if s1.dim != twist:
        raise SpecValidationError(f"S1 has dimension {s1.dim}, expected twist {twist}")
    if s2.dim != nullity - twist:
        raise SpecValidationError(
            f"S2 has dimension {s2.dim}, expected nullity - twist = {nullity - twist}"
        )
    if family in ("F4", "G2"):
        if not s1.is_lattice:
            raise LatticeRequired("S1", family)
        if not s2.is_lattice:
            raise LatticeRequired("S2", family)
    elif family == "B" and rank >= 3 and not s2.is_lattice:
        raise LatticeRequired("S2", family)
    elif family == "C" and not s1.is_lattice:
        raise LatticeRequired("S1", family)
    if roots is None:
        roots = finite_roots(family, rank)
    return RootSystemSpec(family, rank, nullity, twist, s1, s2, roots)


def conj_exponent(spec: RootSystemSpec, i: int, j: int, r: int) -> int:
    """Exponent a_{i,j}(r) in the conjugation relation w_i t_{j,r} w_i = t_{j,r} t_{i,r}^-a."""
    value = Fraction(spec.translation_step(j, r), spec.translation_step(i, r)) * (
        spec.roots.cartan(spec.roots.simple[i - 1], spec.roots.simple[j - 1])
    )
    return _as_int(value, f"a_({i},{j})({r})")


def commutator_coeff(spec: RootSystemSpec, i: int, j: int, r: int, s: int) -> int:
    """Coefficient a_{i,j}(r,s); its Delta(r,s)-quotient is the commutator exponent."""
    if not 1 <= r <= s <= spec.nullity:
        raise IndexRange(f"need r <= s in 1..{spec.nullity}, got ({r}, {s})")
    fr = spec.roots
    ai = fr.simple[i - 1]
    aj = fr.simple[j - 1]
    covee = 4 * fr.pairing(ai, aj) / (fr.pairing(ai, ai) * fr.pairing(aj, aj))
    value = (
        Fraction(fr.k, spec.k_r(r))
        * spec.translation_step(i, r)
        * spec.translation_step(j, s)
        * covee
    )
    out = _as_int(value, f"a_({i},{j})({r},{s})")
    if r < s and out % spec.pair_divisor(r, s):
        raise IntegralityViolation(
            f"Delta({r},{s}) does not divide a_({i},{j})({r},{s}) = {out}"
        )
    return out


def _iso_mask(coords: Iterable[int]) -> int:
    mask = 0
    for pos, c in enumerate(coords):
        if c % 2:
            mask |= 1 << pos
    return mask


def classify_vector(spec: RootSystemSpec, finite: Vec, iso: Sequence[int]) -> RootClass:
    """Locate (finite, iso) in the extended affine system, if at all."""
    if len(iso) != spec.nullity:
        raise SpecValidationError(
            f"expected {spec.nullity} isotropic coordinates, got {len(iso)}"
        )
    t = spec.twist
    head, tail = tuple(iso[:t]), tuple(iso[t:])
    if not any(finite):
        # isotropic slice: S + S = (S1 + S1) (+) <S2>
        return (
            RootClass.ISOTROPIC
            if _iso_mask(head) in spec.s1.sum_supports()
            else RootClass.NONE
        )
    if finite in spec.roots.short_roots:
        return (
            RootClass.SHORT
            if _iso_mask(head) in spec.s1.supp
            else RootClass.NONE
        )
    if finite in spec.roots.long_roots:
        if any(c % spec.k for c in head):
            return RootClass.NONE
        return (
            RootClass.LONG
            if _iso_mask(tail) in spec.s2.supp
            else RootClass.NONE
        )
    return RootClass.NONE


def root_class(spec: RootSystemSpec, root: Root) -> RootClass:
    return classify_vector(spec, root.finite, root.iso)


def _sigma(spec: RootSystemSpec, r: int, coeff: int = 1) -> tuple[int, ...]:
    return tuple(coeff if q == r - 1 else 0 for q in range(spec.nullity))


def _tau(spec: RootSystemSpec, mask: int) -> tuple[int, ...]:
    return tuple(1 if mask >> q & 1 else 0 for q in range(spec.nullity))


def generating_roots(spec: RootSystemSpec) -> list[Root]:
    """The finite-type simple roots plus the type-dependent affine generators.

    The raw list repeats theta_j whenever the empty set indexes a shift;
    duplicates are removed, keeping first occurrence order.
    """
    fr = spec.roots
    t, nu = spec.twist, spec.nullity
    zero = (0,) * nu
    raw: list[Root] = [Root(a, zero) for a in fr.simple]
    th1, th2 = fr.theta1, fr.theta2
    if spec.family == "B" and spec.rank == 2:
        raw += [Root(th1, _tau(spec, m)) for m in sorted(spec.s1.supp)]
        raw += [Root(th2, _tau(spec, m << t)) for m in sorted(spec.s2.supp)]
    elif spec.family == "B":
        raw += [Root(th1, _tau(spec, m)) for m in sorted(spec.s1.supp)]
        raw += [Root(th2, _sigma(spec, r)) for r in range(t + 1, nu + 1)]
    elif spec.family == "C":
        raw += [Root(th1, _sigma(spec, r)) for r in range(1, t + 1)]
        raw += [Root(th2, _tau(spec, m << t)) for m in sorted(spec.s2.supp)]
    else:  # F4, G2
        raw += [Root(th1, _sigma(spec, r)) for r in range(1, t + 1)]
        raw += [Root(th2, _sigma(spec, s)) for s in range(t + 1, nu + 1)]
    out: list[Root] = []
    seen = set()
    for root in raw:
        if root not in seen:
            seen.add(root)
            out.append(root)
    for root in out:
        cls = root_class(spec, root)
        if cls not in (RootClass.SHORT, RootClass.LONG):  # pragma: no cover
            raise RuntimeError(f"generator {root} classified {cls}")
    return out


def spec_from_json(doc: dict) -> RootSystemSpec:
    """Build a spec from the JSON document form.

    Schema: {"type": "B"|"C"|"F4"|"G2", "rank": l, "nullity": nu,
    "twist": t, "supp1": [[...]], "supp2": [[...]]}; supp2 uses local
    indices 1..nu-t.  An optional "label" is ignored here.
    """
    try:
        family = doc["type"]
        rank = int(doc["rank"])
        nullity = int(doc["nullity"])
        twist = int(doc["twist"])
        supp1 = doc["supp1"]
        supp2 = doc["supp2"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecValidationError(f"malformed spec document: {exc}") from exc
    s1 = make_semilattice(twist, supp1)
    s2 = make_semilattice(nullity - twist, supp2)
    return make_spec(family, rank, nullity, twist, s1, s2)


def spec_to_json(spec: RootSystemSpec, label: str | None = None) -> dict:
    doc = {
        "type": spec.family,
        "rank": spec.rank,
        "nullity": spec.nullity,
        "twist": spec.twist,
        "supp1": spec.s1.to_subsets(),
        "supp2": spec.s2.to_subsets(),
    }
    if label is not None:
        doc["label"] = label
    return doc

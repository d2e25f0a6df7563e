"""Generator sets ``{g^1, ..., g^n}`` obeying the Clifford anticommutation relations.

A :class:`GeneratorSet` caches its ordered products ``g^A`` (built in
ascending index order) and their reciprocals ``g_A = (g^A)^-1``.  The module
also classifies a set by its volume element, computes trace / volume
projections of all blades, counts commuting partners, and applies the
central rescalings that swap basis and non-basis sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

from .algebra import (
    CliffordAlgebra,
    Multivector,
    blade_square_sign,
    commutation_sign,
    mv_mul,
    pi_project,
    popcount,
    trace,
)
from .errors import (
    FieldMismatch,
    OddDimensionRequired,
    RelationViolation,
    SignatureMismatch,
    UnclassifiableVolume,
)

SIGMA_FACTORS = ("neg", "vol+", "vol-", "ivol+", "ivol-")


class GeneratorSet:
    """Validated generator set in a fixed algebra."""

    def __init__(self, algebra: CliffordAlgebra, gens: Sequence[Multivector],
                 label: str = "", validate: bool = True):
        gens = tuple(gens)
        if len(gens) != algebra.n:
            raise ValueError(f"expected {algebra.n} generators, got {len(gens)}")
        for g in gens:
            if not isinstance(g, Multivector) or g.algebra != algebra:
                raise FieldMismatch(f"generator {g!r} does not belong to {algebra!r}")
        self.algebra = algebra
        self.gens = gens
        self.label = label
        self._blades: List[Multivector] | None = None
        if validate:
            _check_relations(algebra, gens, label)

    @classmethod
    def canonical(cls, algebra: CliffordAlgebra) -> "GeneratorSet":
        return cls(algebra, algebra.generators(), validate=False)

    @property
    def n(self) -> int:
        return self.algebra.n

    def __getitem__(self, a: int) -> Multivector:
        """1-based access ``S[a] = g^a``."""
        if not 1 <= a <= self.n:
            raise IndexError(a)
        return self.gens[a - 1]

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorSet) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        body = ", ".join(str(g) for g in self.gens)
        return f"GeneratorSet({self.algebra.sig}, [{body}])"

    @property
    def blades(self) -> List[Multivector]:
        """All ``g^A`` indexed by mask."""
        if self._blades is None:
            alg = self.algebra
            out = [alg.one()] * alg.size
            for m in range(1, alg.size):
                top = m.bit_length() - 1
                out[m] = mv_mul(out[m & ~(1 << top)], self.gens[top])
            self._blades = out
        return self._blades

    def blade(self, A: int) -> Multivector:
        return self.blades[self.algebra.mask(A)]

    def reciprocal(self, A: int) -> Multivector:
        A = self.algebra.mask(A)
        b = self.blades[A]
        return b if blade_square_sign(A, self.algebra.sig) > 0 else -b

    @property
    def volume(self) -> Multivector:
        return self.blades[self.algebra.full]

    def scaled(self, factor: Multivector, label: str | None = None,
               validate: bool = True) -> "GeneratorSet":
        """The set ``{factor * g^a}`` for a central ``factor`` with square ``±e``.

        Blades follow from the parent's: ``(f g)^A = f^|A| g^A``.
        """
        out = GeneratorSet(self.algebra, [mv_mul(factor, g) for g in self.gens],
                           label=self.label if label is None else label, validate=validate)
        if self._blades is not None:
            powers = [self.algebra.one(), factor]
            for _ in range(self.n - 1):
                powers.append(mv_mul(powers[-1], factor))
            out._blades = [b if not m else mv_mul(powers[popcount(m)], b)
                           for m, b in enumerate(self._blades)]
        return out


def _check_relations(algebra: CliffordAlgebra, gens, label: str = "") -> None:
    field = algebra.field
    n = algebra.n
    for a in range(n):
        for b in range(a, n):
            defect = mv_mul(gens[a], gens[b]) + mv_mul(gens[b], gens[a])
            if a == b:
                defect = defect - algebra.scalar(2 * algebra.sig.eta(a + 1))
            if field.exact:
                bad = not defect.is_zero()
            else:
                bad = defect.max_norm() > field.tolerance
            if bad:
                raise RelationViolation(a + 1, b + 1, defect.max_norm(), label)


def validate_generators(algebra: CliffordAlgebra, gens: Sequence[Multivector],
                        label: str = "") -> GeneratorSet:
    return GeneratorSet(algebra, gens, label=label, validate=True)


def gen_blade(S: GeneratorSet, A: int) -> Multivector:
    return S.blade(A)


def gen_reciprocal(S: GeneratorSet, A: int) -> Multivector:
    return S.reciprocal(A)


# --- classification ----------------------------------------------------------

@dataclass(frozen=True)
class BasisClassification:
    """How the volume product ``g^{1...n}`` of a set looks.

    ``kind`` is ``"volume"`` (value ``sign * e^{1..n}``, the blades form a
    basis), ``"scalar"`` (``sign * e``) or ``"imaginary"`` (``sign * i e``).
    """

    kind: str
    sign: int

    @property
    def is_basis(self) -> bool:
        return self.kind == "volume"

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        if self.kind == "volume":
            return f"VolumeBasis({s}1)"
        if self.kind == "scalar":
            return f"ScalarCentral({s}1)"
        return f"ImaginaryCentral({s}i)"


def _matches(u: Multivector, v: Multivector) -> bool:
    if u.algebra.field.exact:
        return u == v
    return u.close_to(v)


def volume_candidates(algebra: CliffordAlgebra):
    """The six possible values of a generator set's volume product."""
    vol, one = algebra.volume(), algebra.one()
    out = [("volume", 1, vol), ("volume", -1, -vol)]
    if algebra.n % 2:
        out += [("scalar", 1, one), ("scalar", -1, -one)]
        if algebra.field.is_complex:
            i = algebra.scalar(algebra.field.i)
            out += [("imaginary", 1, i), ("imaginary", -1, -i)]
    return out


def classify_basis(S: GeneratorSet) -> BasisClassification:
    """Classify ``g^{1..n}``.

    For even n every valid set generates a basis, but ``g^{1..n}`` is only a
    conjugate of ``e^{1..n}`` (the volume blade is not central), so the sign
    is -1 exactly when ``g^{1..n} = -e^{1..n}`` and +1 otherwise.
    """
    omega = S.volume
    if S.n % 2 == 0:
        return BasisClassification("volume", -1 if _matches(omega, -S.algebra.volume()) else 1)
    for kind, sign, target in volume_candidates(S.algebra):
        if _matches(omega, target):
            return BasisClassification(kind, sign)
    raise UnclassifiableVolume(f"volume product {omega} matches none of ±e^(1..n), ±e, ±ie")


def trace_profile(S: GeneratorSet) -> Dict[int, object]:
    """``Tr(g^A)`` for every nonempty multi-index A (keyed by mask)."""
    return {m: trace(S.blades[m]) for m in S.algebra.order if m}


def pi_profile(S: GeneratorSet) -> Dict[int, object]:
    """Volume coefficient of every ``g^A``, A nonempty; odd n only."""
    if S.n % 2 == 0:
        raise OddDimensionRequired("pi_profile needs odd n")
    return {m: pi_project(S.blades[m]) for m in S.algebra.order if m}


@dataclass(frozen=True)
class CommutationProfile:
    even_commute: int
    odd_commute: int
    even_anti: int
    odd_anti: int

    @property
    def total(self) -> int:
        return self.even_commute + self.odd_commute + self.even_anti + self.odd_anti


def commutation_profile(S: GeneratorSet, A: int) -> CommutationProfile:
    """Count blades ``g^B`` by parity of |B| and whether they commute with ``g^A``.

    Uses the sign rule ``g^A g^B = (-1)^(|A||B| - |A n B|) g^B g^A``, which
    holds for every valid set; the multivectors are not multiplied.
    """
    alg = S.algebra
    A = alg.mask(A)
    if A == 0 or A == alg.full:
        raise ValueError("commutation_profile needs a multi-index other than the empty and full one")
    counts = [0, 0, 0, 0]
    for B in range(alg.size):
        odd = popcount(B) & 1
        anti = commutation_sign(A, B) < 0
        counts[2 * anti + odd] += 1
    return CommutationProfile(*counts)


# --- central rescalings ----------------------------------------------------

def sigma_factor(algebra: CliffordAlgebra, factor: str) -> Multivector:
    """Central multivector for a named rescaling, after checking admissibility."""
    if factor not in SIGMA_FACTORS:
        raise ValueError(f"unknown factor {factor!r}; expected one of {SIGMA_FACTORS}")
    if factor == "neg":
        return -algebra.one()
    n, p, q = algebra.n, algebra.p, algebra.q
    sign = 1 if factor.endswith("+") else -1
    if factor.startswith("vol"):
        if n % 2 == 0 or (p - q) % 4 != 1:
            raise SignatureMismatch(f"{factor} needs odd n and p-q = 1 mod 4, got Cl({p},{q})")
        return algebra.volume() * sign
    if not algebra.field.is_complex:
        raise FieldMismatch(f"{factor} needs a complex field, got {algebra.field.name}")
    if n % 2 == 0 or (p - q) % 4 != 3:
        raise SignatureMismatch(f"{factor} needs odd n and p-q = 3 mod 4, got Cl({p},{q})")
    return algebra.volume() * (sign * algebra.field.i)


def sigma_transform(S: GeneratorSet, factor: str, validate: bool = True) -> GeneratorSet:
    """Multiply every generator by ``-e``, ``±e^{1..n}`` or ``±i e^{1..n}``."""
    return S.scaled(sigma_factor(S.algebra, factor), validate=validate)

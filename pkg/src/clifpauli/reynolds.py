"""Averaging operators over generator sets and the intertwiner solvers.

Given two valid generator sets ``gamma`` and ``beta`` of the same algebra,
the mixed averages

    H(U) = 2^-n  sum_A beta^A U gamma_A
    P(V) = 2^-n  sum_A gamma^A V beta_A

satisfy ``beta^B H(U) = H(U) gamma^B`` for every multi-index B, so any
invertible value of ``H`` conjugates one set into the other.  The solvers
search a deterministic list of candidates ``U`` for such a value.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import List, Optional, Tuple, Union

from gmpy2 import mpq

from .algebra import (
    CliffordAlgebra,
    Multivector,
    is_central,
    mv_inverse,
    mv_mul,
    mv_scale,
    mv_sum,
    popcount,
)
from .errors import (
    FieldMismatch,
    NoCandidateFound,
    NotInvertible,
    OddDimensionRequired,
    UnclassifiableCase,
    VerificationFailed,
)
from .generators import GeneratorSet, _matches, classify_basis, sigma_transform

log = logging.getLogger(__name__)

CASE_FACTOR_NAMES = {2: "neg", 3: "vol+", 4: "vol-", 5: "ivol+", 6: "ivol-"}


def _same_algebra(G: GeneratorSet, B: GeneratorSet) -> CliffordAlgebra:
    if G.algebra != B.algebra:
        raise FieldMismatch(f"generator sets live in different algebras: {G.algebra!r}, {B.algebra!r}")
    return G.algebra


def _weight(alg: CliffordAlgebra, k: int):
    return alg.field.coerce(mpq(1, 2 ** k))


def op_F(S: GeneratorSet, U: Multivector) -> Multivector:
    """Average of ``g_A U g^A`` over all multi-indices."""
    alg = S.algebra
    terms = (mv_mul(mv_mul(S.reciprocal(A), U), S.blades[A]) for A in alg.order)
    return mv_scale(mv_sum(terms, alg), _weight(alg, alg.n))


def op_H(G: GeneratorSet, B: GeneratorSet, U: Multivector) -> Multivector:
    alg = _same_algebra(G, B)
    terms = (mv_mul(mv_mul(B.blades[A], U), G.reciprocal(A)) for A in alg.order)
    return mv_scale(mv_sum(terms, alg), _weight(alg, alg.n))


def op_P(G: GeneratorSet, B: GeneratorSet, V: Multivector) -> Multivector:
    alg = _same_algebra(G, B)
    terms = (mv_mul(mv_mul(G.blades[A], V), B.reciprocal(A)) for A in alg.order)
    return mv_scale(mv_sum(terms, alg), _weight(alg, alg.n))


def op_H_even(G: GeneratorSet, B: GeneratorSet, U: Multivector) -> Multivector:
    """Like :func:`op_H` but over even multi-indices only, weight ``2^-(n-1)``."""
    alg = _same_algebra(G, B)
    terms = (mv_mul(mv_mul(B.blades[A], U), G.reciprocal(A))
             for A in alg.order if not popcount(A) & 1)
    return mv_scale(mv_sum(terms, alg), _weight(alg, alg.n - 1))


def sum_identities(G: GeneratorSet, B: GeneratorSet) -> Tuple[Multivector, Multivector]:
    """Evaluate ``sum_A sum_C beta^A gamma^C gamma_A gamma_C`` for C even and C odd.

    Every product is formed explicitly; nothing about commutation signs is
    assumed.
    """
    alg = _same_algebra(G, B)
    even_terms: List[Multivector] = []
    odd_terms: List[Multivector] = []
    for A in alg.order:
        ga = G.reciprocal(A)
        inner_even, inner_odd = [], []
        for C in alg.order:
            t = mv_mul(mv_mul(G.blades[C], ga), G.reciprocal(C))
            (inner_odd if popcount(C) & 1 else inner_even).append(t)
        bA = B.blades[A]
        even_terms.append(mv_mul(bA, mv_sum(inner_even, alg)))
        odd_terms.append(mv_mul(bA, mv_sum(inner_odd, alg)))
    return mv_sum(even_terms, alg), mv_sum(odd_terms, alg)


def sum_identity_targets(G: GeneratorSet, B: GeneratorSet) -> Tuple[Multivector, Multivector]:
    """Closed forms ``2^(n-1) (e ± beta^{1..n} gamma_{1..n})`` for the two sums.

    The odd-C sum carries ``-`` for even n and ``+`` for odd n.
    """
    alg = _same_algebra(G, B)
    w = alg.field.coerce(2 ** (alg.n - 1))
    ratio = mv_mul(B.volume, G.reciprocal(alg.full))
    one = alg.one()
    even = mv_scale(one + ratio, w)
    odd = mv_scale(one - ratio if alg.n % 2 == 0 else one + ratio, w)
    return even, odd


# --- results -----------------------------------------------------------------

@dataclass(frozen=True)
class OddCase:
    """One of the six relations ``beta^{1..n} = c gamma^{1..n}`` for odd n."""

    id: int
    central_factor: Multivector


@dataclass
class SolveResult:
    T: Multivector
    T_inv: Multivector
    case: Union[int, str]
    central_factor: Multivector
    candidate: Tuple[int, ...]
    residual: float
    transforms: Tuple[str, ...] = dc_field(default_factory=tuple)


def normalize(T: Multivector) -> Multivector:
    """Scale so the first nonzero coefficient (canonical order) equals 1."""
    lead = T.first_coefficient()
    if lead is None:
        raise NotInvertible("cannot normalize the zero multivector")
    field = T.algebra.field
    return mv_scale(T, field.div(field.one, lead))


def verify_intertwiner(G: GeneratorSet, B: GeneratorSet, T: Multivector, c: Multivector,
                       T_inv: Optional[Multivector] = None) -> float:
    """Max over a of the max-norm of ``gamma^a - c T^-1 beta^a T``."""
    _same_algebra(G, B)
    if T_inv is None:
        T_inv = mv_inverse(T)
    worst = 0.0
    for g, b in zip(G.gens, B.gens):
        defect = g - mv_mul(c, mv_mul(mv_mul(T_inv, b), T))
        worst = max(worst, defect.max_norm())
    return worst


def _accept(alg: CliffordAlgebra, residual: float) -> bool:
    return residual == 0.0 if alg.field.exact else residual <= alg.field.tolerance


def uniqueness_check(G: GeneratorSet, B: GeneratorSet, T1: Multivector, T2: Multivector) -> bool:
    """Whether ``T1 T2^-1`` is a nonzero scalar (even n) or invertible central (odd n)."""
    alg = _same_algebra(G, B)
    R = mv_mul(T1, mv_inverse(T2))
    if alg.n % 2 == 0:
        rest = R - alg.scalar(R.coeff(0))
        return not alg.field.is_zero(R.coeff(0)) and rest.is_zero()
    if not is_central(R):
        return False
    try:
        mv_inverse(R)
    except NotInvertible:
        return False
    return True


# --- even dimension ----------------------------------------------------------

def even_candidates(G: GeneratorSet, B: GeneratorSet) -> List[int]:
    """Blades ``gamma^A`` to try: even |A| unless ``beta^{1..n} = -gamma^{1..n}``, else odd |A|."""
    alg = G.algebra
    parity = 1 if _matches(B.volume, -G.volume) else 0
    return [A for A in alg.order if popcount(A) & 1 == parity]


def solve_even(G: GeneratorSet, B: GeneratorSet) -> SolveResult:
    """Find T with ``gamma^a = T^-1 beta^a T`` for even n (unique up to a scalar)."""
    alg = _same_algebra(G, B)
    if alg.n % 2:
        raise ValueError("solve_even needs even n")
    one = alg.one()
    for A in even_candidates(G, B):
        H = op_H(G, B, G.blades[A])
        if H.is_zero():
            continue
        T = normalize(H)
        try:
            T_inv = mv_inverse(T)
        except NotInvertible:
            log.debug("H(gamma^%s) is nonzero but singular", A)
            continue
        residual = verify_intertwiner(G, B, T, one, T_inv)
        if not _accept(alg, residual):
            raise VerificationFailed("even-dimension intertwiner check failed", residual)
        return SolveResult(T, T_inv, "even", one, (A,), residual)
    raise NoCandidateFound("every candidate gave H(U) = 0 or a singular H(U)")


# --- odd dimension -----------------------------------------------------------

def admissible_cases(alg: CliffordAlgebra) -> List[Tuple[int, Multivector]]:
    """``(case id, central factor c)`` pairs possible in this algebra (odd n)."""
    if alg.n % 2 == 0:
        raise OddDimensionRequired("the six-case split exists only for odd n")
    one, vol = alg.one(), alg.volume()
    out = [(1, one), (2, -one)]
    r = (alg.p - alg.q) % 4
    if r == 1:
        out += [(3, vol), (4, -vol)]
    elif alg.field.is_complex:
        ivol = vol * alg.field.i
        out += [(5, ivol), (6, -ivol)]
    return out


def classify_odd(G: GeneratorSet, B: GeneratorSet) -> OddCase:
    alg = _same_algebra(G, B)
    if alg.n % 2 == 0:
        raise OddDimensionRequired("classify_odd needs odd n")
    c = mv_mul(B.volume, G.reciprocal(alg.full))
    for case_id, factor in admissible_cases(alg):
        if _matches(c, factor):
            return OddCase(case_id, factor)
    raise UnclassifiableCase(f"beta^(1..n) gamma_(1..n) = {c} is not an admissible central factor")


def odd_candidates(alg: CliffordAlgebra):
    """Singles ``(A,)`` over even A, then pairs ``(A, B)`` in lexicographic order."""
    evens = [A for A in alg.order if not popcount(A) & 1]
    for A in evens:
        yield (A,)
    yield from combinations(evens, 2)


def solve_odd(G: GeneratorSet, B: GeneratorSet) -> SolveResult:
    """Find the case and T with ``gamma^a = c T^-1 beta^a T`` for odd n."""
    alg = _same_algebra(G, B)
    case = classify_odd(G, B)
    c = case.central_factor
    transforms = []

    # Rescale beta by c itself: (c beta)^{1..n} = c^n c gamma^{1..n} = gamma^{1..n}
    # since c^2 = e for every admissible factor.  Central rescalings keep the
    # relations, and the final check runs on the original sets.
    Bw, Gw = B, G
    if case.id != 1:
        Bw = sigma_transform(B, CASE_FACTOR_NAMES[case.id], validate=False)
        transforms.append("beta:" + CASE_FACTOR_NAMES[case.id])
    if not classify_basis(Gw).is_basis:
        f = "vol+" if (alg.p - alg.q) % 4 == 1 else "ivol+"
        Gw = sigma_transform(Gw, f, validate=False)
        Bw = sigma_transform(Bw, f, validate=False)
        transforms += ["gamma:" + f, "beta:" + f]

    singles = {}
    for cand in odd_candidates(alg):
        for A in cand:
            if A not in singles:
                singles[A] = op_H_even(Gw, Bw, Gw.blades[A])
        H = singles[cand[0]] if len(cand) == 1 else singles[cand[0]] + singles[cand[1]]
        if H.is_zero():
            continue
        T = normalize(H)
        try:
            T_inv = mv_inverse(T)
        except NotInvertible:
            continue
        residual = verify_intertwiner(G, B, T, c, T_inv)
        if not _accept(alg, residual):
            raise VerificationFailed(f"case {case.id} intertwiner check failed", residual)
        return SolveResult(T, T_inv, case.id, c, cand, residual, tuple(transforms))
    raise NoCandidateFound(f"no invertible H_even(U) among candidates (case {case.id})")


def solve(G: GeneratorSet, B: GeneratorSet) -> SolveResult:
    """Dispatch to :func:`solve_even` or :func:`solve_odd` by the parity of n."""
    return solve_odd(G, B) if G.algebra.n % 2 else solve_even(G, B)

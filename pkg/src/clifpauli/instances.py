"""Seeded random test instances: conjugated generator sets with a chosen case."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .algebra import CliffordAlgebra, Multivector, mv_inverse, mv_mul
from .errors import AdmissibilityError, NotInvertible
from .fields import Field, GaussianRational
from .generators import GeneratorSet, sigma_transform
from .reynolds import CASE_FACTOR_NAMES

MAX_TRIES = 200


@dataclass(frozen=True)
class GenSpec:
    p: int
    q: int
    field: Field
    seed: int
    case: Optional[int] = None
    bound: int = 3
    # float field: reject S when max|S| * max|S^-1| exceeds this
    condition_limit: float = 50.0


@dataclass
class Instance:
    algebra: CliffordAlgebra
    gamma: GeneratorSet
    beta: GeneratorSet
    S: Multivector
    case: Optional[int]


def random_scalar(rng: random.Random, field: Field, bound: int = 3):
    if not field.exact:
        return field.coerce(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
    if field.is_complex:
        return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
    return field.coerce(rng.randint(-bound, bound))


def random_multivector(algebra: CliffordAlgebra, rng: random.Random, bound: int = 3,
                       density: float = 1.0) -> Multivector:
    coeffs = {}
    for m in range(algebra.size):
        if density >= 1.0 or rng.random() < density:
            coeffs[m] = random_scalar(rng, algebra.field, bound)
    return algebra.mv(coeffs)


def random_invertible(algebra: CliffordAlgebra, rng: random.Random, bound: int = 3,
                      condition_limit: float = 50.0):
    """Random ``(S, S^-1)``; floats are additionally filtered by a condition estimate."""
    for _ in range(MAX_TRIES):
        S = random_multivector(algebra, rng, bound)
        try:
            S_inv = mv_inverse(S)
        except NotInvertible:
            continue
        if not algebra.field.exact and S.max_norm() * S_inv.max_norm() > condition_limit:
            continue
        return S, S_inv
    raise RuntimeError(f"no invertible element found in {MAX_TRIES} draws")


def conjugated_set(S: Multivector, S_inv: Multivector, base: GeneratorSet, label: str = "",
                   validate: bool = True) -> GeneratorSet:
    """The set ``{S g^a S^-1}``."""
    return GeneratorSet(base.algebra, [mv_mul(mv_mul(S, g), S_inv) for g in base.gens],
                        label=label, validate=validate)


def check_admissible(algebra: CliffordAlgebra, case: Optional[int]) -> None:
    n, r = algebra.n, (algebra.p - algebra.q) % 4
    if case is None:
        return
    if n % 2 == 0:
        raise AdmissibilityError(f"case {case} requested but n = {n} is even (single case)")
    if case not in range(1, 7):
        raise AdmissibilityError(f"case must be 1..6, got {case}")
    if case in (3, 4) and r != 1:
        raise AdmissibilityError(f"case {case} needs p-q = 1 mod 4, got Cl({algebra.p},{algebra.q})")
    if case in (5, 6):
        if not algebra.field.is_complex:
            raise AdmissibilityError(f"case {case} exists only over a complex field")
        if r != 3:
            raise AdmissibilityError(f"case {case} needs p-q = 3 mod 4, got Cl({algebra.p},{algebra.q})")


def generate(spec: GenSpec) -> Instance:
    """gamma canonical, beta = c S gamma S^-1 with c the case's central factor."""
    algebra = CliffordAlgebra(spec.p, spec.q, spec.field)
    check_admissible(algebra, spec.case)
    rng = random.Random(spec.seed)
    S, S_inv = random_invertible(algebra, rng, spec.bound, spec.condition_limit)
    gamma = GeneratorSet.canonical(algebra)
    # conjugation and central rescaling preserve the relations exactly, so
    # only float instances (where rounding creeps in) are re-validated
    check = not algebra.field.exact
    beta = conjugated_set(S, S_inv, gamma, label="beta", validate=check)
    if spec.case is not None and spec.case != 1:
        beta = sigma_transform(beta, CASE_FACTOR_NAMES[spec.case], validate=check)
    case = spec.case if algebra.n % 2 else None
    if case is None and algebra.n % 2:
        case = 1
    return Instance(algebra, gamma, beta, S, case)


def admissible_factors(algebra: CliffordAlgebra):
    """Names of the rescalings allowed in this algebra (``neg`` always)."""
    out = ["neg"]
    if algebra.n % 2:
        r = (algebra.p - algebra.q) % 4
        if r == 1:
            out += ["vol+", "vol-"]
        elif algebra.field.is_complex:
            out += ["ivol+", "ivol-"]
    return out


def random_set_pair(algebra: CliffordAlgebra, rng: random.Random, bound: int = 3,
                    condition_limit: float = 50.0):
    """Two independently conjugated canonical sets, each rescaled by a random admissible factor.

    Returns ``(gamma, beta, S_gamma, S_beta)``; either set may be a non-basis
    set when n is odd.
    """
    canon = GeneratorSet.canonical(algebra)
    choices = [None] + admissible_factors(algebra)
    sets, conj = [], []
    for label in ("gamma", "beta"):
        S, S_inv = random_invertible(algebra, rng, bound, condition_limit)
        G = conjugated_set(S, S_inv, canon, label=label)
        factor = rng.choice(choices)
        if factor is not None:
            G = sigma_transform(G, factor)
        sets.append(G)
        conj.append(S)
    return sets[0], sets[1], conj[0], conj[1]


def admissible_cases_for(algebra: CliffordAlgebra):
    """Case ids ``gen`` accepts for this algebra: ``[None]`` for even n."""
    if algebra.n % 2 == 0:
        return [None]
    r = (algebra.p - algebra.q) % 4
    if r == 1:
        return [1, 2, 3, 4]
    return [1, 2, 5, 6] if algebra.field.is_complex else [1, 2]

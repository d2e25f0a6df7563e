"""Randomized identity suite over one signature and field.

Each trial draws a fresh pair of generator sets (conjugated canonical sets,
possibly rescaled into non-basis sets) and checks every algebraic identity
the library relies on.  Exact fields demand exact equality, the float field
uses its tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional

from .algebra import (
    CliffordAlgebra,
    Multivector,
    commutation_sign,
    is_central,
    mv_mul,
    pi_project,
    popcount,
    trace,
)
from .errors import CliffordError
from .fields import Field
from .generators import (
    GeneratorSet,
    _matches,
    classify_basis,
    commutation_profile,
    pi_profile,
    sigma_transform,
    trace_profile,
)
from .instances import (
    GenSpec,
    admissible_cases_for,
    admissible_factors,
    generate,
    random_multivector,
    random_set_pair,
)
from .reynolds import (
    classify_odd,
    op_F,
    op_H,
    op_H_even,
    op_P,
    solve,
    sum_identities,
    sum_identity_targets,
    uniqueness_check,
)

# sampled (A, B) pairs per trial for the blade sign rule
SIGN_RULE_SAMPLES = 16


class _Failed(Exception):
    pass


def _expect(cond: bool, what: str) -> None:
    if not cond:
        raise _Failed(what)


@dataclass
class IdentityResult:
    name: str
    checks: int = 0
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failure is None


@dataclass
class SelftestReport:
    p: int
    q: int
    field: str
    seed: int
    trials: int
    results: List[IdentityResult] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[IdentityResult]:
        return next((r for r in self.results if not r.passed), None)

    def lines(self) -> List[str]:
        out = []
        for r in self.results:
            if r.passed:
                out.append(f"PASS {r.name} ({r.checks} checks)")
            else:
                out.append(f"FAIL {r.name}: {r.failure}")
        return out


@dataclass
class _Trial:
    alg: CliffordAlgebra
    gamma: GeneratorSet
    beta: GeneratorSet
    U: Multivector
    V: Multivector
    rng: random.Random
    seed: int
    index: int


def _center_value(alg: CliffordAlgebra, X: Multivector) -> Multivector:
    """``Tr(X) e`` for even n, ``Tr(X) e + pi(X) e^{1..n}`` for odd n."""
    out = alg.scalar(trace(X))
    if alg.n % 2:
        out = out + alg.volume() * pi_project(X)
    return out


# --- individual identities -------------------------------------------------

def _relations(t: _Trial) -> None:
    # construction already validated; re-run on a rescaled copy too
    GeneratorSet(t.alg, t.gamma.gens, validate=True)
    GeneratorSet(t.alg, t.beta.gens, validate=True)


def _blade_reciprocal(t: _Trial) -> None:
    one = t.alg.one()
    for A in t.alg.order:
        _expect(_matches(mv_mul(t.gamma.reciprocal(A), t.gamma.blades[A]), one),
                f"gamma_A gamma^A != e for A = {A:b}")


def _sign_rule(t: _Trial) -> None:
    alg = t.alg
    for _ in range(SIGN_RULE_SAMPLES):
        A, B = t.rng.randrange(alg.size), t.rng.randrange(alg.size)
        lhs = mv_mul(t.gamma.blades[A], t.gamma.blades[B])
        rhs = mv_mul(t.gamma.blades[B], t.gamma.blades[A]) * commutation_sign(A, B)
        _expect(_matches(lhs, rhs), f"sign rule fails for masks {A:b}, {B:b}")


def _commutation(t: _Trial) -> None:
    alg = t.alg
    if alg.n < 2:
        return
    quarter = 2 ** (alg.n - 2)
    for A in alg.order:
        if A in (0, alg.full):
            continue
        prof = commutation_profile(t.gamma, A)
        _expect((prof.even_commute, prof.odd_commute, prof.even_anti, prof.odd_anti) == (quarter,) * 4,
                f"profile {prof} for mask {A:b}")
        # cross-check one partner by actual multiplication
        B = t.rng.randrange(alg.size)
        gA, gB = t.gamma.blades[A], t.gamma.blades[B]
        comm = _matches(mv_mul(gA, gB), mv_mul(gB, gA))
        _expect(comm == (commutation_sign(A, B) > 0), f"masks {A:b}, {B:b} disagree with the sign rule")


def _profiles(t: _Trial) -> None:
    alg = t.alg
    field = alg.field
    for S in (t.gamma, t.beta):
        cls = classify_basis(S)
        tp = trace_profile(S)
        for A, x in tp.items():
            if A != alg.full:
                _expect(field.is_zero(x), f"Tr of blade {A:b} is {x}, expected 0")
        want_tr = field.zero if cls.kind == "volume" else (
            field.coerce(cls.sign) if cls.kind == "scalar" else field.i * cls.sign)
        _expect(field.is_zero(tp[alg.full] - want_tr), f"volume trace {tp[alg.full]} for {cls}")
        if alg.n % 2:
            pp = pi_profile(S)
            for A, x in pp.items():
                if A != alg.full:
                    _expect(field.is_zero(x), f"pi of blade {A:b} is {x}, expected 0")
            want_pi = field.coerce(cls.sign) if cls.is_basis else field.zero
            _expect(field.is_zero(pp[alg.full] - want_pi), f"volume pi {pp[alg.full]} for {cls}")
        else:
            _expect(cls.is_basis, f"even n set classified {cls}")


def _sigma(t: _Trial) -> None:
    for f in admissible_factors(t.alg):
        before = classify_basis(t.gamma)
        after = classify_basis(sigma_transform(t.gamma, f))
        if f == "neg":
            _expect(after.kind == before.kind, f"neg changed the kind {before} -> {after}")
        else:
            _expect(after.is_basis != before.is_basis, f"{f} kept {before} -> {after}")


def _F(t: _Trial) -> None:
    FU = op_F(t.gamma, t.U)
    _expect(_matches(op_F(t.gamma, FU), FU), "F(F(U)) != F(U)")
    _expect(is_central(FU), "F(U) is not central")
    if classify_basis(t.gamma).is_basis:
        _expect(_matches(FU, _center_value(t.alg, t.U)), "F(U) differs from the center projection")


def _H(t: _Trial) -> None:
    H = op_H(t.gamma, t.beta, t.U)
    for B in t.alg.order:
        _expect(_matches(mv_mul(t.beta.blades[B], H), mv_mul(H, t.gamma.blades[B])),
                f"beta^B H(U) != H(U) gamma^B for mask {B:b}")


def _P(t: _Trial) -> None:
    P = op_P(t.gamma, t.beta, t.V)
    for B in t.alg.order:
        _expect(_matches(mv_mul(t.gamma.blades[B], P), mv_mul(P, t.beta.blades[B])),
                f"gamma^B P(V) != P(V) beta^B for mask {B:b}")


def _H_even(t: _Trial) -> None:
    if t.alg.n % 2 == 0:
        return
    H = op_H_even(t.gamma, t.beta, t.U)
    for B in t.alg.order:
        if popcount(B) & 1:
            continue
        _expect(_matches(mv_mul(t.beta.blades[B], H), mv_mul(H, t.gamma.blades[B])),
                f"H_even fails to intertwine even mask {B:b}")


def _product(t: _Trial) -> None:
    H = op_H(t.gamma, t.beta, t.U)
    P = op_P(t.gamma, t.beta, t.V)
    PH, HP = mv_mul(P, H), mv_mul(H, P)
    _expect(_matches(PH, HP), "P(V)H(U) != H(U)P(V)")
    _expect(_matches(PH, _center_value(t.alg, mv_mul(t.V, H))), "P(V)H(U) differs from the Tr/pi formula")


def _sums(t: _Trial) -> None:
    got = sum_identities(t.gamma, t.beta)
    want = sum_identity_targets(t.gamma, t.beta)
    _expect(_matches(got[0], want[0]), "even-C sum differs from 2^(n-1)(e + beta^(1..n) gamma_(1..n))")
    _expect(_matches(got[1], want[1]), "odd-C sum differs from its closed form")


def _solve_roundtrip(t: _Trial) -> None:
    alg = t.alg
    for case in admissible_cases_for(alg):
        spec = GenSpec(alg.p, alg.q, alg.field, seed=t.rng.getrandbits(32), case=case)
        inst = generate(spec)
        res = solve(inst.gamma, inst.beta)
        if alg.n % 2:
            _expect(classify_odd(inst.gamma, inst.beta).id == case, f"case {case} misclassified")
            _expect(res.case == case, f"solver reported case {res.case} for case {case}")
        if alg.field.exact:
            _expect(res.residual == 0.0, f"residual {res.residual} on an exact field")
        else:
            _expect(res.residual <= alg.field.tolerance, f"residual {res.residual} above tolerance")
        _expect(uniqueness_check(inst.gamma, inst.beta, res.T, inst.S),
                f"T and the generating S differ by more than a central factor (case {case})")


IDENTITIES: Dict[str, Callable[[_Trial], None]] = {
    "relations": _relations,
    "blade_reciprocal": _blade_reciprocal,
    "sign_rule": _sign_rule,
    "commutation_profile": _commutation,
    "trace_pi_profiles": _profiles,
    "sigma_dichotomy": _sigma,
    "F_projector": _F,
    "H_intertwines": _H,
    "P_intertwines": _P,
    "H_even_intertwines": _H_even,
    "product_formula": _product,
    "sum_identities": _sums,
    "solve_roundtrip": _solve_roundtrip,
}


def run_selftest(p: int, q: int, field: Field, seed: int, trials: int,
                 identities: Optional[List[str]] = None, bound: int = 3) -> SelftestReport:
    """Run the identity suite on ``trials`` random set pairs in ``Cl(p, q)``."""
    alg = CliffordAlgebra(p, q, field)
    names = list(IDENTITIES) if identities is None else identities
    unknown = [n for n in names if n not in IDENTITIES]
    if unknown:
        raise ValueError(f"unknown identities: {', '.join(unknown)}")
    report = SelftestReport(p, q, field.name, seed, trials,
                            [IdentityResult(n) for n in names])
    rng = random.Random(seed)
    for k in range(trials):
        gamma, beta, _, _ = random_set_pair(alg, rng, bound)
        trial = _Trial(alg, gamma, beta, random_multivector(alg, rng, bound),
                       random_multivector(alg, rng, bound), random.Random(rng.getrandbits(64)),
                       seed, k)
        for res in report.results:
            if not res.passed:
                continue
            try:
                IDENTITIES[res.name](trial)
            except _Failed as exc:
                res.failure = f"{exc} (seed {seed}, trial {k})"
            except CliffordError as exc:
                res.failure = f"{type(exc).__name__}: {exc} (seed {seed}, trial {k})"
            else:
                res.checks += 1
    return report

import random

import pytest

from clifpauli.algebra import CliffordAlgebra, commutation_sign, multi_index, mv_mul
from clifpauli.errors import (
    FieldMismatch,
    OddDimensionRequired,
    RelationViolation,
    SignatureMismatch,
)
from clifpauli.fields import ComplexExact, RealExact
from clifpauli.generators import (
    GeneratorSet,
    classify_basis,
    commutation_profile,
    gen_blade,
    gen_reciprocal,
    pi_profile,
    sigma_transform,
    trace_profile,
    validate_generators,
)
from clifpauli.instances import conjugated_set, random_invertible


def canonical(p, q, field=None):
    return GeneratorSet.canonical(CliffordAlgebra(p, q, field))


def conjugated(p, q, seed, field=None):
    alg = CliffordAlgebra(p, q, field)
    S, S_inv = random_invertible(alg, random.Random(seed))
    return conjugated_set(S, S_inv, GeneratorSet.canonical(alg))


def test_validation_examples():
    alg = CliffordAlgebra(2, 0)
    validate_generators(alg, alg.generators())
    validate_generators(alg, [alg.e(2), alg.e(1)])
    with pytest.raises(RelationViolation) as exc:
        validate_generators(CliffordAlgebra(1, 0), [CliffordAlgebra(1, 0).e(1) + 1])
    assert (exc.value.a, exc.value.b) == (1, 1)


def test_relation_violation_names_first_pair():
    alg = CliffordAlgebra(3, 0)
    with pytest.raises(RelationViolation) as exc:
        validate_generators(alg, [alg.e(1), alg.e(2), alg.e(1)], label="beta")
    assert (exc.value.a, exc.value.b) == (1, 3)
    assert str(exc.value).startswith("beta: ")


def test_wrong_count_or_algebra():
    alg = CliffordAlgebra(2, 0)
    with pytest.raises(ValueError):
        GeneratorSet(alg, [alg.e(1)])
    with pytest.raises(FieldMismatch):
        GeneratorSet(alg, [alg.e(1), CliffordAlgebra(1, 1).e(2)])


def test_blades_and_reciprocals():
    S = canonical(2, 0)
    assert gen_blade(S, (1, 2)) == S.algebra.blade((1, 2))
    assert gen_blade(S, ()) == S.algebra.one()
    assert gen_reciprocal(canonical(1, 0), (1,)) == CliffordAlgebra(1, 0).e(1)
    assert gen_reciprocal(canonical(0, 1), (1,)) == -CliffordAlgebra(0, 1).e(1)


@pytest.mark.parametrize("p,q", [(2, 2), (1, 3), (3, 1), (4, 0)])
def test_blade_square_sign_rule(p, q):
    S = conjugated(p, q, seed=p)
    alg = S.algebra
    for A in range(alg.size):
        k = bin(A).count("1")
        sign = (-1) ** (k * (k - 1) // 2)
        for a in range(1, alg.n + 1):
            if A >> (a - 1) & 1:
                sign *= alg.sig.eta(a)
        assert mv_mul(S.blades[A], S.blades[A]) == alg.one() * sign
        assert mv_mul(S.reciprocal(A), S.blades[A]) == alg.one()


def test_sign_rule_exhaustive_n4():
    S = conjugated(2, 2, seed=11)
    for A in range(16):
        for B in range(16):
            lhs = mv_mul(S.blades[A], S.blades[B])
            assert lhs == mv_mul(S.blades[B], S.blades[A]) * commutation_sign(A, B)


def test_classification_examples():
    assert str(classify_basis(canonical(3, 0))) == "VolumeBasis(+1)"
    assert str(classify_basis(sigma_transform(canonical(3, 0), "neg"))) == "VolumeBasis(-1)"
    scalar = classify_basis(sigma_transform(canonical(2, 1), "vol+"))
    assert scalar.kind == "scalar" and not scalar.is_basis
    imag = classify_basis(sigma_transform(canonical(3, 0, ComplexExact()), "ivol+"))
    assert imag.kind == "imaginary"
    assert str(imag) in ("ImaginaryCentral(+i)", "ImaginaryCentral(-i)")


@pytest.mark.parametrize("p,q", [(2, 0), (1, 1), (2, 2), (3, 1)])
def test_even_n_sets_are_always_bases(p, q):
    for seed in range(3):
        assert classify_basis(conjugated(p, q, seed)).is_basis


def test_trace_profile():
    assert all(x == 0 for x in trace_profile(canonical(3, 0)).values())
    S = sigma_transform(canonical(2, 1), "vol+")
    tp = trace_profile(S)
    full = S.algebra.full
    assert tp[full] in (1, -1)
    assert all(x == 0 for A, x in tp.items() if A != full)
    assert trace_profile(conjugated(3, 0, 2))[7] == 0


def test_pi_profile():
    assert pi_profile(canonical(3, 0))[7] == 1
    assert pi_profile(sigma_transform(canonical(2, 1), "vol-"))[7] == 0
    pp = pi_profile(conjugated(1, 2, 5))
    assert all(x == 0 for A, x in pp.items() if A != 7)
    with pytest.raises(OddDimensionRequired):
        pi_profile(canonical(2, 0))


def test_commutation_profile():
    prof = commutation_profile(canonical(3, 0), multi_index(1))
    assert (prof.even_commute, prof.odd_commute, prof.even_anti, prof.odd_anti) == (2, 2, 2, 2)
    assert prof.total == 8
    with pytest.raises(ValueError):
        commutation_profile(canonical(3, 0), 0)
    with pytest.raises(ValueError):
        commutation_profile(canonical(3, 0), 7)


def test_commutation_profile_agrees_with_products():
    S = conjugated(2, 1, seed=3)
    for A in range(1, 7):
        counts = [0, 0, 0, 0]
        for B in range(8):
            anti = mv_mul(S.blades[A], S.blades[B]) != mv_mul(S.blades[B], S.blades[A])
            counts[2 * anti + bin(B).count("1") % 2] += 1
        prof = commutation_profile(S, A)
        assert counts == [prof.even_commute, prof.odd_commute, prof.even_anti, prof.odd_anti]


def test_sigma_transform_rules():
    neg = sigma_transform(canonical(3, 0), "neg")
    assert neg.volume == -CliffordAlgebra(3, 0).volume()
    with pytest.raises(SignatureMismatch):
        sigma_transform(canonical(3, 0), "vol+")
    with pytest.raises(SignatureMismatch):
        sigma_transform(canonical(2, 0), "vol+")
    with pytest.raises(FieldMismatch):
        sigma_transform(canonical(3, 0, RealExact()), "ivol+")
    with pytest.raises(ValueError):
        sigma_transform(canonical(3, 0), "bogus")


def test_ivol_twice():
    S = canonical(3, 0, ComplexExact())
    twice = sigma_transform(sigma_transform(S, "ivol+"), "ivol+")
    # (i w)^2 = -w^2 = e in Cl(3,0), so the set comes back unchanged
    assert twice == S
    assert classify_basis(twice).is_basis


def test_scaled_blades_match_direct_products():
    S = conjugated(2, 1, seed=8)
    S.blades
    T = sigma_transform(S, "vol+")
    fresh = GeneratorSet(S.algebra, T.gens)
    assert T.blades == fresh.blades

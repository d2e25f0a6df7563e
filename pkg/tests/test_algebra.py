import random

import pytest
from gmpy2 import mpq

from clifpauli.algebra import (
    CliffordAlgebra,
    Signature,
    blade_product,
    center_support,
    grade_project,
    indices,
    is_central,
    multi_index,
    mv_inverse,
    mv_mul,
    parity_split,
    pi_project,
    trace,
)
from clifpauli.errors import NotInvertible
from clifpauli.fields import ComplexExact, ComplexFloat, GaussianRational, RealExact
from clifpauli.instances import random_multivector

import oracles


def m(*idx):
    return multi_index(*idx)


@pytest.mark.parametrize("A,B,sig,expected", [
    ((1,), (2,), (2, 0), (1, (1, 2))),
    ((2,), (1,), (2, 0), (-1, (1, 2))),
    ((1,), (1,), (1, 1), (1, ())),
    ((2,), (2,), (1, 1), (-1, ())),
    ((1, 2), (2,), (3, 0), (1, (1,))),
])
def test_blade_product_examples(A, B, sig, expected):
    sign, C = blade_product(m(*A), m(*B), Signature(*sig))
    assert (sign, indices(C)) == expected


@pytest.mark.parametrize("p,q", [(3, 0), (2, 1), (1, 2), (0, 3), (2, 2), (1, 3)])
def test_blade_product_matches_rewriting_oracle(p, q):
    n = p + q
    sig = Signature(p, q)
    for A in oracles.all_blades(n):
        for B in oracles.all_blades(n):
            assert blade_product(m(*A), m(*B), sig) == (lambda s, C: (s, m(*C)))(
                *oracles.rewrite_blade(A + B, p))


def test_signature_bounds():
    with pytest.raises(ValueError):
        Signature(0, 0)
    with pytest.raises(ValueError):
        Signature(7, 6)
    s = Signature(2, 1)
    assert [s.eta(a) for a in (1, 2, 3)] == [1, 1, -1]


def test_canonical_order():
    alg = CliffordAlgebra(3, 0)
    assert [indices(x) for x in alg.order] == [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]


def test_product_examples():
    alg = CliffordAlgebra(2, 0)
    e1, e2 = alg.e(1), alg.e(2)
    assert mv_mul(e1 + e2, e1 - e2) == alg.blade((1, 2), -2)
    assert mv_mul(alg.blade((1, 2)), alg.blade((1, 2))) == -alg.one()
    U = random_multivector(alg, random.Random(0))
    assert mv_mul(alg.one(), U) == U


def test_linear_operations_keep_sparsity():
    alg = CliffordAlgebra(2, 0)
    assert alg.e(1) + alg.e(1) == alg.e(1) * 2
    U = alg.mv({(): 1, (1, 2): 3})
    assert (U - U).support == []
    assert (alg.blade((1, 2)) * mpq(1, 2)).coeff((1, 2)) == mpq(1, 2)


def test_projections():
    alg = CliffordAlgebra(2, 0)
    U = alg.mv({(): 1, (1,): 1, (1, 2): 1})
    assert grade_project(U, 1) == alg.e(1)
    assert grade_project(alg.blade((1, 2)), 1).is_zero()
    assert sum((grade_project(U, k) for k in range(3)), alg.zero()) == U
    assert trace(alg.mv({(): 3, (1,): 1})) == 3
    assert trace(alg.blade((1, 2))) == 0
    assert pi_project(alg.volume()) == 1 and pi_project(alg.one()) == 0
    even, odd = parity_split(alg.mv({(): 1, (1,): 1}))
    assert even == alg.one() and odd == alg.e(1)


def test_trace_and_pi_are_cyclic():
    rng = random.Random(4)
    for p, q in [(2, 1), (1, 2), (3, 2)]:
        alg = CliffordAlgebra(p, q)
        for _ in range(5):
            U, V = random_multivector(alg, rng), random_multivector(alg, rng)
            assert trace(mv_mul(U, V)) == trace(mv_mul(V, U))
            assert pi_project(mv_mul(U, V)) == pi_project(mv_mul(V, U))


def test_even_part_closed_under_product():
    rng = random.Random(5)
    alg = CliffordAlgebra(2, 2)
    for _ in range(5):
        a = parity_split(random_multivector(alg, rng))[0]
        b = parity_split(random_multivector(alg, rng))[0]
        assert parity_split(mv_mul(a, b))[1].is_zero()


def test_inverse_examples():
    assert mv_inverse(CliffordAlgebra(1, 0).e(1)) == CliffordAlgebra(1, 0).e(1)
    assert mv_inverse(CliffordAlgebra(0, 1).e(1)) == -CliffordAlgebra(0, 1).e(1)
    # (e + w)(e - w) = e - w^2 vanishes exactly when w^2 = e
    alg = CliffordAlgebra(2, 1)
    with pytest.raises(NotInvertible):
        mv_inverse(alg.one() + alg.volume())
    with pytest.raises(NotInvertible):
        mv_inverse(alg.zero())
    # in Cl(3,0) the volume squares to -e and e + w is invertible
    alg = CliffordAlgebra(3, 0)
    assert mv_inverse(alg.one() + alg.volume()) == (alg.one() - alg.volume()) * mpq(1, 2)
    assert oracles.exhaustive_inverse({(): oracles.CONE, (1, 2, 3): oracles.CONE}, 3, 3) is not None


@pytest.mark.parametrize("field", [RealExact(), ComplexExact()], ids=lambda f: f.name)
@pytest.mark.parametrize("p,q", [(1, 0), (1, 1), (3, 0), (1, 2)])
def test_inverse_matches_exhaustive_oracle(field, p, q):
    rng = random.Random(p * 10 + q)
    alg = CliffordAlgebra(p, q, field)
    for _ in range(6):
        U = random_multivector(alg, rng, bound=2, density=0.6)
        want = oracles.exhaustive_inverse(oracles.from_mv(U), alg.n, p)
        if want is None:
            with pytest.raises(NotInvertible):
                mv_inverse(U)
        else:
            assert mv_inverse(U) == oracles.to_mv(alg, want)


def test_float_inverse_two_sided():
    alg = CliffordAlgebra(2, 1, ComplexFloat())
    U = alg.mv({(): 2, (1,): 0.5j, (2, 3): -1})
    X = mv_inverse(U)
    assert mv_mul(U, X).close_to(alg.one()) and mv_mul(X, U).close_to(alg.one())


def test_center():
    assert is_central(CliffordAlgebra(3, 0).volume())
    assert not is_central(CliffordAlgebra(2, 0).volume())
    for n in range(1, 7):
        alg = CliffordAlgebra(n, 0)
        for A in range(alg.size):
            assert is_central(alg.blade(A)) == (A in center_support(alg))


def test_exact_zeros_are_dropped():
    alg = CliffordAlgebra(2, 0, ComplexExact())
    U = alg.mv({(): GaussianRational(0, 0), (1,): 1})
    assert U.support == [m(1)]


def test_display():
    alg = CliffordAlgebra(3, 0)
    assert str(alg.mv({(1, 2): mpq(1, 2), (1, 2, 3): -1})) == "1/2*e12 - e123"
    assert str(alg.zero()) == "0"


def test_strict_multi_index():
    alg = CliffordAlgebra(3, 0)
    with pytest.raises(ValueError):
        alg.blade((2, 1))
    with pytest.raises(ValueError):
        alg.blade((1, 4))

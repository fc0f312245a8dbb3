import pytest
from hypothesis import given, settings, strategies as st

from greenring.cyclotomic import (
    CyclotomicInt,
    conjugate,
    cyclotomic_polynomial,
    euler_phi,
    factorization_shape,
    is_ramified,
    phi_derivative_at,
    primes_above,
    reduce_mod,
)
from greenring.exactmath import IntPolynomial

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def test_cyclotomic_examples():
    assert str(cyclotomic_polynomial(12)) == "x^4 - x^2 + 1"
    assert str(cyclotomic_polynomial(2)) == "x + 1"
    assert str(cyclotomic_polynomial(8)) == "x^4 + 1"
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_degree_and_product(n):
    assert cyclotomic_polynomial(n).degree == euler_phi(n)
    prod = IntPolynomial([1])
    for d in _divisors(n):
        prod = prod * cyclotomic_polynomial(d)
    assert prod == IntPolynomial.monomial(n) - IntPolynomial([1])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 12, 15, 24, 60, 360])
def test_root_of_unity(n):
    xi = CyclotomicInt.root(n)
    assert xi**n == 1
    # primitive: no proper divisor power is 1
    assert all(xi**d != 1 for d in _divisors(n) if d < n)
    # Phi_n(xi) = 0 by Horner in Z[xi]
    acc = CyclotomicInt.from_int(n, 0)
    for c in reversed(cyclotomic_polynomial(n).coeffs):
        acc = acc * xi + c
    assert acc == 0


def test_primes_above_examples():
    (Q,) = primes_above(12, 2)
    assert str(Q.f) == "x^2 + x + 1" and Q.ram_exponent == 2
    (Q,) = primes_above(12, 3)
    assert str(Q.f) == "x^2 + 1" and Q.ram_exponent == 2
    assert [str(Q.f) for Q in primes_above(60, 5)] == ["x^2 + 2x + 4", "x^2 + 3x + 4"]


@pytest.mark.parametrize("n", range(1, 61))
def test_degree_sum_identity(n):
    for p in SMALL_PRIMES:
        Qs = primes_above(n, p)
        assert len({Q.f for Q in Qs}) == len(Qs)
        d, e = Qs[0].residue_degree, Qs[0].ram_exponent
        assert all(Q.residue_degree == d for Q in Qs)
        assert len(Qs) * d * e == euler_phi(n)
        assert (e > 1) == is_ramified(n, p)
        # each f divides Phi_n mod p
        phi = cyclotomic_polynomial(n).mod_p(p)
        assert all((phi % Q.f).is_zero() for Q in Qs)


def test_is_ramified_examples():
    assert is_ramified(12, 3)
    assert not is_ramified(6, 2)
    assert not is_ramified(12, 5)
    assert is_ramified(12, 2)


def test_reduce_mod_examples():
    (Q2,) = primes_above(12, 2)
    (Q3,) = primes_above(12, 3)
    assert reduce_mod(CyclotomicInt.from_int(12, 3), Q3) == 0
    t = Q2.field.gen
    assert reduce_mod(CyclotomicInt.root(12), Q2) == t
    # xi^4 -> t^4 = t in F_4, by repeated squaring
    assert reduce_mod(CyclotomicInt.root(12, 4), Q2) == (t * t) * (t * t)
    assert reduce_mod(CyclotomicInt.root(12, 4), Q2) == t
    with pytest.raises(ValueError):
        reduce_mod(CyclotomicInt.root(6), Q2)


def test_conjugate_examples():
    assert conjugate(CyclotomicInt.from_int(12, 5)) == 5
    xi = CyclotomicInt.root(12)
    assert conjugate(xi) == CyclotomicInt.root(12, 11)
    real = xi + CyclotomicInt.root(12, 11)
    assert conjugate(real) == real
    assert xi * conjugate(xi) == 1


def test_phi_derivative_examples():
    (Q,) = primes_above(12, 2)
    assert phi_derivative_at(Q) == 0
    (Q,) = primes_above(12, 3)
    assert phi_derivative_at(Q) == 0
    (Q,) = primes_above(6, 2)
    assert phi_derivative_at(Q) == 1


@pytest.mark.parametrize("n", range(1, 61))
def test_lemma_dichotomy(n):
    for p in SMALL_PRIMES:
        for Q in primes_above(n, p):
            assert (phi_derivative_at(Q) == 0) == is_ramified(n, p)


def test_factorization_shape():
    assert factorization_shape(12, 2) == "(x^2 + x + 1)^2"
    assert factorization_shape(12, 3) == "(x^2 + 1)^2"
    assert factorization_shape(6, 2) == "(x^2 + x + 1)^1"


def test_embed():
    z = CyclotomicInt.root(3)
    assert z.embed(12) == CyclotomicInt.root(12, 4)
    assert str(z.embed(12)) == "-1 + xi^2"
    with pytest.raises(ValueError):
        z.embed(10)


elements = st.integers(0, 3).flatmap(
    lambda i: st.tuples(
        st.just([12, 15, 20, 24][i]),
        st.lists(st.integers(-9, 9), min_size=12, max_size=12),
        st.lists(st.integers(-9, 9), min_size=12, max_size=12),
    )
)


@settings(max_examples=60, deadline=None)
@given(elements)
def test_reduce_mod_is_a_homomorphism(data):
    n, u, v = data
    a = CyclotomicInt.from_exponents(n, enumerate(u))
    b = CyclotomicInt.from_exponents(n, enumerate(v))
    for p in (2, 3, 5, 7):
        for Q in primes_above(n, p):
            assert reduce_mod(a + b, Q) == reduce_mod(a, Q) + reduce_mod(b, Q)
            assert reduce_mod(a * b, Q) == reduce_mod(a, Q) * reduce_mod(b, Q)


@settings(max_examples=60, deadline=None)
@given(elements)
def test_ring_axioms(data):
    n, u, v = data
    a = CyclotomicInt.from_exponents(n, enumerate(u))
    b = CyclotomicInt.from_exponents(n, enumerate(v))
    c = a - b
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    # compare with naive multiplication of exponent sums
    naive = CyclotomicInt.from_exponents(n, ((i + j, x * y) for i, x in enumerate(a.coeffs) for j, y in enumerate(b.coeffs)))
    assert a * b == naive

"""Vectorised routes checked against their scalar twins."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ring
from greenring.cyclotomic import (
    CyclotomicInt,
    _pack,
    _unpack,
    array_products,
    coefficient_array,
    conjugate,
    conjugate_array,
    cyclotomic_matmul,
    cyclotomic_products,
    from_coefficient_array,
    primes_above,
    reduce_array,
    reduce_mod,
)
from greenring.exactmath import (
    FieldElement,
    FieldMatrix,
    FiniteField,
    PrimeFieldPolynomial,
    certified_ranks,
    field_inverse,
    kernel_dimension,
    kernel_dimensions,
    matmul_mod,
    sketch_matrix,
    stack_ranks,
)

CONDUCTORS = [1, 4, 7, 12, 15, 24]


def cyclo(n, bound=50):
    return st.lists(st.integers(-bound, bound), min_size=n, max_size=n).map(
        lambda cs: CyclotomicInt.from_exponents(n, enumerate(cs))
    )


# ---------------------------------------------------------------- packing


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-(1 << 60), 1 << 60), min_size=1, max_size=12))
def test_pack_roundtrip_word(coeffs):
    assert _unpack(_pack(coeffs, 64), 64, len(coeffs)) == coeffs


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-(1 << 90), 1 << 90), min_size=1, max_size=8))
def test_pack_roundtrip_wide(coeffs):
    assert _unpack(_pack(coeffs, 94), 94, len(coeffs)) == coeffs


def test_unpack_overflow_is_detected():
    with pytest.raises(ArithmeticError):
        _unpack(1 << 200, 64, 2)
    with pytest.raises(ArithmeticError):
        _unpack(1 << 200, 70, 2)


# ---------------------------------------------------------------- Z[xi] arrays


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONDUCTORS).flatmap(lambda n: st.lists(st.tuples(cyclo(n), cyclo(n)), min_size=1, max_size=5)))
def test_products_match_scalar(pairs):
    xs, ys = [a for a, _ in pairs], [b for _, b in pairs]
    assert cyclotomic_products(xs, ys) == [a * b for a, b in pairs]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CONDUCTORS), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_matmul_matches_scalar(n, r, k, c, data):
    A = [[data.draw(cyclo(n)) for _ in range(k)] for _ in range(r)]
    B = [[data.draw(cyclo(n)) for _ in range(c)] for _ in range(k)]
    w = data.draw(st.lists(st.integers(-5, 5), min_size=k, max_size=k))
    got = cyclotomic_matmul(A, B, w)
    for i in range(r):
        for j in range(c):
            want = CyclotomicInt.from_int(n, 0)
            for t in range(k):
                want = want + A[i][t] * B[t][j] * w[t]
            assert got[i][j] == want


def test_products_with_huge_coefficients():
    n = 12
    a = CyclotomicInt(n, [1 << 70, -3, 5, 1 << 40])
    b = CyclotomicInt(n, [-(1 << 69), 7, 0, 2])
    assert cyclotomic_products([a], [b]) == [a * b]
    assert cyclotomic_matmul([[a]], [[b]]) == [[a * b]]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONDUCTORS).flatmap(lambda n: st.lists(cyclo(n), min_size=1, max_size=6)))
def test_coefficient_array_roundtrip_and_conjugation(xs):
    n = xs[0].n
    V = coefficient_array(xs, n)
    assert from_coefficient_array(V, n) == xs
    assert from_coefficient_array(conjugate_array(V, n), n) == [conjugate(x) for x in xs]
    assert np.array_equal(array_products(V, V, n), coefficient_array([x * x for x in xs], n))


def test_coefficient_array_rejects_mixed_conductors():
    with pytest.raises(ValueError):
        coefficient_array([CyclotomicInt.from_int(4, 1), CyclotomicInt.from_int(3, 1)], 4)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([12, 15, 20, 24]).flatmap(lambda n: st.lists(cyclo(n, 1000), min_size=1, max_size=5)))
def test_reduce_array_matches_reduce_mod(xs):
    n = xs[0].n
    V = coefficient_array(xs, n)
    for p in (2, 3, 5, 7, 11):
        for Q in primes_above(n, p):
            got = reduce_array(V, Q)
            assert [tuple(row) for row in got.tolist()] == [reduce_mod(x, Q).value for x in xs]


# ---------------------------------------------------------------- finite fields


FIELDS = [
    (2, [1, 1, 1]),
    (3, [1, 0, 1]),
    (5, [2, 1]),
    (2, [1, 1, 0, 0, 1]),
    (13, [2, 0, 1]),
    (3, [1, 0, 2, 0, 0, 0, 0, 1]),  # F_{3^7}, beyond the inverse table
    (7, [3, 1]),
    (1000003, [0, 1]),  # too large to defer reduction
    ((1 << 31) - 1, [0, 1]),  # int64 arithmetic
]


def field(spec):
    return FiniteField(PrimeFieldPolynomial(*spec))


@pytest.mark.parametrize("spec", FIELDS[:5])
def test_inverse_table(spec):
    F = field(spec)
    p, d = F.p, F.degree
    table = F.inverse_table
    for v in range(1, F.size):
        x = FieldElement(F, tuple((v // p**i) % p for i in range(d)))
        assert x * FieldElement(F, tuple(int(c) for c in table[v])) == F.one


def _oracle_rank(F, rows):
    # plain Gaussian elimination with FieldElement arithmetic
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field_inverse(rows[rank][c])
        for i in range(rank + 1, len(rows)):
            f = rows[i][c] * inv
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _random_stack(F, rng, batch, nrows, ncols, max_rank):
    # products of random factors give every rank up to max_rank
    out = []
    for _ in range(batch):
        k = int(rng.integers(0, max_rank + 1))
        L = rng.integers(0, F.p, size=(nrows, k, F.degree))
        R = rng.integers(0, F.p, size=(k, ncols, F.degree))
        M = np.zeros((nrows, ncols, F.degree), dtype=np.int64)
        for t in range(k):
            for i in range(nrows):
                for j in range(ncols):
                    a = FieldElement(F, tuple(int(v) for v in L[i, t]))
                    b = FieldElement(F, tuple(int(v) for v in R[t, j]))
                    M[i, j] = np.add(M[i, j], (a * b).value) % F.p
        out.append(M)
    return np.array(out)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(1, 6), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_batched_ranks_match_oracle(spec, nrows, ncols, batch, seed):
    F = field(spec)
    rng = np.random.default_rng(seed)
    A = _random_stack(F, rng, batch, nrows, ncols, min(nrows, ncols))
    want = []
    for M in A:
        rows = [[FieldElement(F, tuple(int(v) for v in M[i, j])) for j in range(ncols)] for i in range(nrows)]
        want.append(_oracle_rank(F, rows))
    assert stack_ranks(F, A).tolist() == want
    assert kernel_dimensions(F, A) == [ncols - r for r in want]
    assert [kernel_dimension(FieldMatrix(F, M)) for M in A] == [ncols - r for r in want]


@pytest.mark.parametrize("spec", [FIELDS[0], FIELDS[4], FIELDS[5]])
def test_tall_matrices_go_through_the_sketch(spec):
    F = field(spec)
    rng = np.random.default_rng(5)
    A = _random_stack(F, rng, 4, 20, 4, 4)
    want = [
        _oracle_rank(F, [[FieldElement(F, tuple(int(v) for v in M[i, j])) for j in range(4)] for i in range(20)])
        for M in A
    ]
    assert kernel_dimensions(F, A) == [4 - r for r in want]


def test_certified_ranks_falls_back_when_the_sketch_is_short():
    F = field(FIELDS[1])
    rng = np.random.default_rng(1)
    A = _random_stack(F, rng, 3, 5, 5, 5)
    calls = []

    def full(idx):
        calls.append(idx.tolist())
        return A[idx]

    # a zero sketch certifies nothing, so every matrix is eliminated in full
    ranks = certified_ranks(F, np.zeros_like(A), full)
    assert calls == [[0, 1, 2]]
    assert ranks.tolist() == stack_ranks(F, A).tolist()
    # a bound of zero is met by any sketch
    calls.clear()
    assert certified_ranks(F, np.zeros_like(A), full, bounds=np.zeros(3)).tolist() == [0, 0, 0]
    assert calls == []


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40), st.sampled_from([2, 13, 65537, (1 << 31) - 1]), st.integers(0, 2**32 - 1))
def test_matmul_mod(r, c, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(r, c))
    b = rng.integers(0, p, size=(c, 3))
    want = (a.astype(object) @ b.astype(object)) % p
    assert (matmul_mod(a, b, p) == want).all()


# ---------------------------------------------------------------- Jacobians


@pytest.mark.parametrize("desc", ["S3", "A4", "D8", "S4"])
def test_sketched_jacobian_is_sketch_times_jacobian(desc):
    R = ring(desc)
    rs = R.relation_set
    rng = np.random.default_rng(0)
    for p in (2, 3, 5):
        for Q in primes_above(R.order, p):
            x = reduce_array(R.values, Q).transpose(1, 0, 2)  # one point per class
            J = rs.jacobian_array(x, p)
            S = sketch_matrix(rs.nvars + 3, len(rs), p)
            got = rs.sketched_jacobian(x, S, p)
            batch, m, nv, d = J.shape
            flat = J.reshape(batch, m, nv * d).astype(object)
            want = np.array([(S.astype(object) @ M) % p for M in flat]).reshape(got.shape)
            assert (got == want).all()
            # and a random sketch as well
            S = rng.integers(0, p, size=(2, m))
            assert (rs.sketched_jacobian(x, S, p) == np.array([(S @ M) % p for M in J.reshape(batch, m, -1)]).reshape(batch, 2, nv, d)).all()

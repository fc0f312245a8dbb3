"""Cyclotomic polynomials, the ring Z[xi_n] and its nonzero primes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .exactmath import (
    FieldElement,
    FiniteField,
    IntPolynomial,
    PrimeFieldPolynomial,
    factor_equal_degree,
)


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation of a positive integer."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def multiplicative_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """Phi_n, by exact division of x^n - 1 by the Phi_d with d | n, d < n."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    num = IntPolynomial.monomial(n) - IntPolynomial([1])
    for d in range(1, n):
        if n % d == 0:
            q, r = num.divmod_monic(cyclotomic_polynomial(d))
            if not r.is_zero():
                raise ArithmeticError("inexact division computing Phi_%d" % n)
            num = q
    return num


class _Ring:
    """Per-conductor data for Z[xi_n]: the degree and the sparse modulus."""

    def __init__(self, n: int):
        self.n = n
        phi = cyclotomic_polynomial(n)
        self.phi = phi
        self.degree = int(phi.degree) if n > 1 else 1
        # x^deg = -sum(tail); kept sparse since Phi_n usually is
        self.tail = [(k, c) for k, c in enumerate(phi.coeffs[:-1]) if c]

    def reduce(self, coeffs: list[int]) -> tuple[int, ...]:
        d = self.degree
        c = list(coeffs)
        tail = self.tail
        for k in range(len(c) - 1, d - 1, -1):
            v = c[k]
            if v:
                c[k] = 0
                shift = k - d
                for j, t in tail:
                    c[shift + j] -= v * t
        c = c[:d]
        return tuple(c) + (0,) * (d - len(c))


@lru_cache(maxsize=None)
def _ring(n: int) -> _Ring:
    return _Ring(n)


# Kronecker substitution: a coefficient vector becomes one big integer, so
# a polynomial product is a single bignum multiply.


_WORD = 64
_SIGN = np.uint64(1 << 63)


@lru_cache(maxsize=None)
def _offset(length: int) -> int:
    # sum of 2^63 * 2^(64 i), i < length: shifts balanced 64-bit digits to unsigned
    return (1 << 63) * (((1 << (_WORD * length)) - 1) // ((1 << _WORD) - 1))


def _pack(coeffs: Sequence[int], bits: int) -> int:
    if bits == _WORD:
        u = np.asarray(coeffs, dtype=np.int64).view(np.uint64) ^ _SIGN
        return int.from_bytes(u.tobytes(), "little") - _offset(len(coeffs))
    v = 0
    for c in reversed(coeffs):
        v = (v << bits) + c
    return v


def _unpack(v: int, bits: int, length: int) -> list[int]:
    if bits == _WORD:
        try:
            raw = (v + _offset(length)).to_bytes(8 * length, "little")
        except OverflowError:
            raise ArithmeticError("Kronecker unpack overflow") from None
        return (np.frombuffer(raw, dtype=np.uint64) ^ _SIGN).view(np.int64).tolist()
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    for _ in range(length):
        r = v & mask
        if r >= half:
            r -= full
        out.append(r)
        v = (v - r) >> bits
    if v:
        raise ArithmeticError("Kronecker unpack overflow")
    return out


def _bits_for(bound: int) -> int:
    """Digit width for coefficients bounded by ``bound`` in absolute value."""
    bits = max(bound, 1).bit_length() + 2
    return _WORD if bits <= _WORD else bits


class CyclotomicInt:
    """An element of Z[xi_n] on the power basis 1, xi, ..., xi^(phi(n)-1)."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: Iterable[int]):
        ring = _ring(n)
        c = [int(x) for x in coeffs]
        if len(c) > ring.degree:
            c = list(ring.reduce(c))
        self.n = n
        self.coeffs = tuple(c) + (0,) * (ring.degree - len(c))
        self._hash = None

    @classmethod
    def from_int(cls, n: int, value: int) -> "CyclotomicInt":
        return cls(n, [value])

    @classmethod
    def root(cls, n: int, k: int = 1) -> "CyclotomicInt":
        """xi_n^k."""
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def from_exponents(cls, n: int, terms: Iterable[tuple[int, int]]) -> "CyclotomicInt":
        """sum of c * xi_n^k over ``(k, c)`` pairs, any k >= 0."""
        c = [0] * n
        for k, v in terms:
            c[k % n] += v
        return cls(n, _ring(n).reduce(c))

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.n, other)
        if other.n != self.n:
            raise ValueError(f"conductor mismatch: {self.n} vs {other.n}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return CyclotomicInt(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        return CyclotomicInt(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.n, [other * a for a in self.coeffs])
        other = self._coerce(other)
        return cyclotomic_dot([1], [self], [other])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[xi]")
        result, base = CyclotomicInt.from_int(self.n, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CyclotomicInt):
            return self.n == other.n and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.coeffs))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def conjugate(self) -> "CyclotomicInt":
        return conjugate(self)

    def embed(self, m: int) -> "CyclotomicInt":
        """Image under Z[xi_n] -> Z[xi_m], xi_n -> xi_m^(m/n)."""
        if m % self.n:
            raise ValueError(f"{self.n} does not divide {m}")
        step = m // self.n
        return CyclotomicInt.from_exponents(m, ((k * step, c) for k, c in enumerate(self.coeffs) if c))

    def sparse(self) -> list[list[int]]:
        return [[k, c] for k, c in enumerate(self.coeffs) if c]

    def sort_key(self) -> tuple[int, ...]:
        return self.coeffs

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"CyclotomicInt({self.n}, {str(self)!r})"


def cyclotomic_dot(
    weights: Sequence[int], xs: Sequence[CyclotomicInt], ys: Sequence[CyclotomicInt]
) -> CyclotomicInt:
    """sum_k weights[k] * xs[k] * ys[k], reduced once at the end."""
    if not xs:
        raise ValueError("empty dot product")
    n = xs[0].n
    ring = _ring(n)
    d = ring.degree
    mx = max((abs(c) for x in xs for c in x.coeffs), default=0)
    my = max((abs(c) for y in ys for c in y.coeffs), default=0)
    bound = mx * my * d * sum(abs(w) for w in weights)
    bits = _bits_for(bound)
    acc = 0
    for w, x, y in zip(weights, xs, ys):
        if x.n != n or y.n != n:
            raise ValueError("conductor mismatch")
        if w:
            acc += w * _pack(x.coeffs, bits) * _pack(y.coeffs, bits)
    return CyclotomicInt(n, ring.reduce(_unpack(acc, bits, 2 * d - 1)))


def _max_coeff(xs: Iterable[CyclotomicInt]) -> int:
    return max((max(map(abs, x.coeffs)) for x in xs), default=0)


# Batched products on coefficient arrays.  K[a * d + b] is xi^(a+b) reduced,
# so x * y = outer(x, y) @ K; every matmul below is exact by a size bound.

_FLOAT_EXACT = 1 << 53
_INT64_EXACT = 1 << 63


def _absmax(a: np.ndarray) -> int:
    return int(np.abs(a).max()) if a.size else 0


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a @ b for integer arrays without overflow: float64 BLAS, int64 or
    Python integers, whichever the bound max|a| * max|b| * inner allows."""
    bound = _absmax(a) * _absmax(b) * a.shape[-1]
    if bound < _FLOAT_EXACT:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < _INT64_EXACT:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


@lru_cache(maxsize=None)
def _product_tensor(n: int) -> np.ndarray:
    ring = _ring(n)
    d = ring.degree
    K = np.zeros((d * d, d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            e = [0] * (a + b + 1)
            e[a + b] = 1
            K[a * d + b] = ring.reduce(e)
    return K


def coefficient_array(rows, n: int) -> np.ndarray:
    """Nested sequences of CyclotomicInt as an integer array with a trailing
    coefficient axis (int64 when the coefficients fit, else object)."""
    items = np.empty(np.shape(rows), dtype=object)
    items[...] = rows
    flat = items.ravel()
    if any(x.n != n for x in flat):
        raise ValueError("conductor mismatch")
    coeffs = [x.coeffs for x in flat]
    shape = items.shape + (_ring(n).degree,)
    try:
        return np.array(coeffs, dtype=np.int64).reshape(shape)
    except OverflowError:
        return np.array(coeffs, dtype=object).reshape(shape)


def from_coefficient_array(arr: np.ndarray, n: int):
    """Inverse of coefficient_array: nested lists of CyclotomicInt."""
    if arr.ndim == 1:
        return CyclotomicInt(n, arr.tolist())
    return [from_coefficient_array(sub, n) for sub in arr]


def multiplication_matrices(Y: np.ndarray, n: int) -> np.ndarray:
    """M[..., a, e] with x * y = x @ M for every y in ``Y`` (shape (..., d))."""
    d = _ring(n).degree
    K = _product_tensor(n).reshape(d, d, d).transpose(1, 0, 2).reshape(d, d * d)
    return exact_matmul(Y.reshape(-1, d), K).reshape(Y.shape[:-1] + (d, d))


def array_products(X: np.ndarray, Y: np.ndarray, n: int) -> np.ndarray:
    """Elementwise products in Z[xi_n] of coefficient arrays of equal shape."""
    d = _ring(n).degree
    x, y = X.reshape(-1, d), Y.reshape(-1, d)
    if _absmax(x) * _absmax(y) >= _INT64_EXACT:
        x, y = x.astype(object), y.astype(object)
    outer = (x[:, :, None] * y[:, None, :]).reshape(-1, d * d)
    return exact_matmul(outer, _product_tensor(n)).reshape(X.shape)


def array_matmul(A: np.ndarray, B: np.ndarray, n: int, weights=None) -> np.ndarray:
    """A diag(weights) B over Z[xi_n]; A is (r, k, d), B is (k, c, d)."""
    r, k, d = A.shape
    c = B.shape[1]
    if weights is not None:
        A = A * np.asarray(weights, dtype=object if A.dtype == object else np.int64)[None, :, None]
    M = multiplication_matrices(B, n)  # (k, c, d, d)
    return exact_matmul(A.reshape(r, k * d), M.transpose(0, 2, 1, 3).reshape(k * d, c * d)).reshape(r, c, d)


def cyclotomic_matmul(
    A: Sequence[Sequence[CyclotomicInt]],
    B: Sequence[Sequence[CyclotomicInt]],
    weights: Sequence[int] | None = None,
) -> list[list[CyclotomicInt]]:
    """(A diag(weights) B) over Z[xi_n]."""
    r, k = len(A), len(B)
    c = len(B[0]) if k else 0
    if r == 0 or k == 0 or c == 0:
        raise ValueError("empty matrix product")
    n = A[0][0].n
    out = array_matmul(coefficient_array(A, n), coefficient_array(B, n), n, weights)
    return from_coefficient_array(out, n)


def cyclotomic_products(xs: Sequence[CyclotomicInt], ys: Sequence[CyclotomicInt]) -> list[CyclotomicInt]:
    """Elementwise products xs[k] * ys[k]."""
    if not xs:
        return []
    n = xs[0].n
    return from_coefficient_array(array_products(coefficient_array(xs, n), coefficient_array(ys, n), n), n)


def conjugate(a: CyclotomicInt) -> CyclotomicInt:
    """Complex conjugation xi -> xi^(n-1)."""
    n = a.n
    return CyclotomicInt.from_exponents(n, (((n - k) % n, c) for k, c in enumerate(a.coeffs) if c))


@lru_cache(maxsize=None)
def _conjugation_matrix(n: int) -> np.ndarray:
    d = _ring(n).degree
    return np.array([conjugate(CyclotomicInt.root(n, k)).coeffs for k in range(d)], dtype=np.int64)


def conjugate_array(arr: np.ndarray, n: int) -> np.ndarray:
    """Complex conjugation on a coefficient array (..., phi(n))."""
    return exact_matmul(arr, _conjugation_matrix(n))


# --------------------------------------------------------------------------
# primes of Z[xi_n]


def is_ramified(n: int, p: int) -> bool:
    """True iff p | n and (p != 2 or 4 | n)."""
    return n % p == 0 and (p != 2 or n % 4 == 0)


def _split_off(n: int, p: int) -> tuple[int, int]:
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


@dataclass(frozen=True)
class CyclotomicPrime:
    """The prime (p, f(xi)) of Z[xi_n]."""

    n: int
    p: int
    f: PrimeFieldPolynomial
    ram_exponent: int

    @property
    def residue_degree(self) -> int:
        return int(self.f.degree)

    @cached_property
    def field(self) -> FiniteField:
        return FiniteField(self.f, check=False)

    @cached_property
    def _basis_images(self) -> tuple[tuple[int, ...], ...]:
        # images of xi^k, k < phi(n), in the residue field
        F = self.field
        out = []
        cur = F.one.value
        gen = F.gen.value
        for _ in range(_ring(self.n).degree):
            out.append(cur)
            cur = F.r_mul(cur, gen)
        return tuple(out)

    def sort_key(self):
        return (self.p, self.f.sort_key())

    def __str__(self):
        return f"({self.p}, {self.f})"


def primes_above(n: int, p: int, seed: int | None = None) -> list[CyclotomicPrime]:
    return list(_primes_above(n, p, seed))


@lru_cache(maxsize=4096)
def _primes_above(n: int, p: int, seed: int | None) -> tuple[CyclotomicPrime, ...]:
    """The primes of Z[xi_n] containing p, sorted by their f.

    Uses Phi_n = Phi_m^phi(p^a) mod p where n = p^a m, so only the squarefree
    Phi_m needs splitting.
    """
    a, m = _split_off(n, p)
    e = euler_phi(p**a)
    d = multiplicative_order(p, m)
    g = cyclotomic_polynomial(m).mod_p(p)
    factors = factor_equal_degree(g, d, seed)
    return tuple(CyclotomicPrime(n, p, f, e) for f in factors)


def reduce_mod(a: CyclotomicInt, Q: CyclotomicPrime) -> FieldElement:
    """Image of ``a`` in Z[xi]/Q = F_p[x]/(f)."""
    if a.n != Q.n:
        raise ValueError(f"conductor mismatch: {a.n} vs {Q.n}")
    F = Q.field
    p = Q.p
    acc = [0] * F.degree
    for c, img in zip(a.coeffs, Q._basis_images):
        c %= p
        if c:
            for i, v in enumerate(img):
                acc[i] += c * v
    return FieldElement(F, tuple(v % p for v in acc))


def reduce_array(arr: np.ndarray, Q: CyclotomicPrime) -> np.ndarray:
    """reduce_mod over a coefficient array (..., phi(n)): shape (..., f.degree)."""
    images = np.array(Q._basis_images, dtype=np.int64)
    return exact_matmul(arr % Q.p, images) % Q.p


def phi_derivative_at(Q: CyclotomicPrime) -> FieldElement:
    """Phi_n'(zeta) in k = F_p[x]/(f), zeta the class of x."""
    F = Q.field
    dphi = cyclotomic_polynomial(Q.n).derivative().mod_p(Q.p)
    return F(dphi)


def factorization_shape(n: int, p: int, seed: int | None = None) -> str:
    """``(f_1)^e (f_2)^e ...`` for Phi_n mod p."""
    return " ".join(f"({Q.f})^{Q.ram_exponent}" for Q in primes_above(n, p, seed))

"""Exact arithmetic: integer polynomials, polynomials over F_p, finite fields
F_p[x]/(f) and kernel dimensions of matrices over them.

Everything here is dense and schoolbook.  The inputs we care about are tiny
(cyclotomic polynomials of degree at most a few hundred, matrices with a few
hundred rows), so clarity wins over asymptotics.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

DEFAULT_SEED = 20200613

#: degree of the zero polynomial
NEG_INF = -math.inf


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _render(coeffs: Sequence[int], var: str = "x", latex: bool = False) -> str:
    """Render ``coeffs`` (index = degree) as ``x^4 - x^2 + 1``."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            if k == 1:
                mono = var
            elif latex and k > 9:
                mono = f"{var}^{{{k}}}"
            else:
                mono = f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------
# Z[x]


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial over Z; ``coeffs[k]`` is the coefficient of x^k."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def divmod_monic(self, m: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division by a monic polynomial."""
        if not m.is_monic():
            raise ValueError(f"modulus must be monic, got {m}")
        r = list(self.coeffs)
        dm = len(m.coeffs) - 1
        if len(r) <= dm:
            return IntPolynomial(), IntPolynomial(r)
        q = [0] * (len(r) - dm)
        mc = m.coeffs
        for k in range(len(r) - 1, dm - 1, -1):
            c = r[k]
            if c:
                q[k - dm] = c
                for i in range(dm + 1):
                    r[k - dm + i] -= c * mc[i]
        return IntPolynomial(q), IntPolynomial(r[:dm])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def mod_p(self, p: int) -> "PrimeFieldPolynomial":
        return PrimeFieldPolynomial(p, self.coeffs)

    def __str__(self) -> str:
        return _render(self.coeffs)


def poly_mul_mod(a: IntPolynomial, b: IntPolynomial, m: IntPolynomial) -> IntPolynomial:
    """Return ``a*b mod m`` for a monic modulus ``m`` of degree at least one."""
    if not m.is_monic():
        raise ValueError(f"modulus must be monic, got {m}")
    if m.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    return (a * b).divmod_monic(m)[1]


# --------------------------------------------------------------------------
# F_p[x]


@dataclass(frozen=True)
class PrimeFieldPolynomial:
    """Dense polynomial over F_p with coefficients in ``range(p)``."""

    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _trim(int(c) % p for c in coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def _new(self, coeffs) -> "PrimeFieldPolynomial":
        return PrimeFieldPolynomial(self.p, coeffs)

    def monic(self) -> "PrimeFieldPolynomial":
        if not self.coeffs:
            return self
        inv = pow(self.leading, -1, self.p)
        return self._new(c * inv for c in self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return self._new((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self):
        return self._new(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._new(out)

    def scale(self, c: int) -> "PrimeFieldPolynomial":
        return self._new(c * x for x in self.coeffs)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(r) <= db:
            return self._new(()), self._new(r)
        inv = pow(other.leading, -1, p)
        bc = other.coeffs[:-1]
        q = [0] * (len(r) - db)
        # remainders are reduced only when read; Python ints do not overflow
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] % p
            if c:
                c = c * inv % p
                q[k - db] = c
                base = k - db
                for i, b in enumerate(bc):
                    if b:
                        r[base + i] -= c * b
        return self._new(q), self._new(r[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def derivative(self):
        return self._new(k * c for k, c in enumerate(self.coeffs) if k)

    def powmod(self, e: int, m: "PrimeFieldPolynomial") -> "PrimeFieldPolynomial":
        result = self._new((1,)) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def sort_key(self) -> tuple:
        """Lexicographic key on coefficients read from the leading term down."""
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        return _render(self.coeffs)

    def latex(self) -> str:
        return _render(self.coeffs, latex=True)


def poly_gcd(a: PrimeFieldPolynomial, b: PrimeFieldPolynomial) -> PrimeFieldPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_irreducible(f: PrimeFieldPolynomial) -> bool:
    """Rabin's irreducibility test."""
    n = f.degree
    if n == NEG_INF or n < 1:
        return False
    if n == 1:
        return True
    p = f.p
    f = f.monic()
    x = PrimeFieldPolynomial(p, (0, 1))
    if (x.powmod(p**n, f) - x) % f != PrimeFieldPolynomial(p):
        return False
    for q in _prime_factors(n):
        h = x.powmod(p ** (n // q), f) - x
        if poly_gcd(h, f).degree != 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def factor_equal_degree(
    g: PrimeFieldPolynomial, d: int, seed: int | None = None
) -> list[PrimeFieldPolynomial]:
    """Split a squarefree ``g`` whose irreducible factors all have degree ``d``.

    Cantor-Zassenhaus with a seeded generator.  Returns the monic factors
    sorted by :meth:`PrimeFieldPolynomial.sort_key`.
    """
    p = g.p
    g = g.monic()
    if g.degree == NEG_INF or g.degree < 1:
        return []
    if g.degree % d:
        raise ValueError(f"degree {g.degree} is not a multiple of {d}")
    if poly_gcd(g, g.derivative()).degree != 0:
        raise ValueError(f"{g} is not squarefree over F_{p}")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)

    def split(h: PrimeFieldPolynomial) -> PrimeFieldPolynomial:
        while True:
            a = PrimeFieldPolynomial(p, [rng.randrange(p) for _ in range(h.degree)])
            if a.degree < 1:
                continue
            if p == 2:
                t, acc = a % h, a % h
                for _ in range(d - 1):
                    t = (t * t) % h
                    acc = acc + t
                b = acc
            else:
                b = a.powmod((p**d - 1) // 2, h) - PrimeFieldPolynomial(p, (1,))
            c = poly_gcd(b, h)
            if 0 < c.degree < h.degree:
                return c

    pending, done = [g], []
    while pending:
        h = pending.pop()
        if h.degree == d:
            done.append(h)
            continue
        c = split(h)
        pending.extend([c, (h // c).monic()])
    return sorted(done, key=PrimeFieldPolynomial.sort_key)


# --------------------------------------------------------------------------
# F_p[x]/(f)


class FiniteField:
    """The field F_p[t]/(f) for an irreducible ``f``.

    Elements are handled internally as coefficient tuples of length ``degree``;
    :class:`FieldElement` wraps them for the public API.
    """

    def __init__(self, modulus: PrimeFieldPolynomial, check: bool = True):
        modulus = modulus.monic()
        if check and not is_irreducible(modulus):
            raise ValueError(f"{modulus} is not irreducible over F_{modulus.p}")
        self.p = modulus.p
        self.modulus = modulus
        self.degree = int(modulus.degree)
        # t^k mod f for k < 2*degree - 1, used by the raw multiply
        d = self.degree
        powers = []
        for k in range(max(2 * d - 1, 1)):
            r = PrimeFieldPolynomial(self.p, [0] * k + [1]) % modulus
            powers.append(tuple(r.coeffs) + (0,) * (d - len(r.coeffs)))
        self._reduce_rows = powers
        self._inverses: dict[tuple, tuple] = {}

    @property
    def size(self) -> int:
        return self.p**self.degree

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"FiniteField(F_{self.p}[t]/({self.modulus}))"

    @cached_property
    def mul_tensor(self) -> np.ndarray:
        """T[i] is the matrix of multiplication by t^i on coefficient vectors."""
        d = self.degree
        t = self.raw((0, 1)) if d > 1 else self.raw(0)
        powers = [self.raw(1)]
        for _ in range(2 * d - 2):
            powers.append(self.r_mul(powers[-1], t))
        P = np.array(powers, dtype=np.int64)  # P[e] = t^e
        i, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
        return P[i + k].transpose(0, 2, 1)  # T[i, :, k] = t^(i+k)

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """Row v holds the inverse of the element whose base-p digits spell v
        (row 0 is zero)."""
        p, d = self.p, self.degree
        digits = (np.arange(self.size)[:, None] // p ** np.arange(d)) % p
        out = np.zeros_like(digits)
        T_rows = self.mul_tensor.reshape(d, d * d).astype(np.float64)
        out[1:] = _batch_inverse(digits[1:].astype(np.float64), T_rows, p)
        return out

    # raw arithmetic -------------------------------------------------------
    def raw(self, value) -> tuple[int, ...]:
        if isinstance(value, int):
            coeffs: Sequence[int] = (value,)
        elif isinstance(value, PrimeFieldPolynomial):
            coeffs = (value % self.modulus).coeffs if value.degree >= self.degree else value.coeffs
        else:
            coeffs = tuple(value)
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.degree:
            return self.raw(PrimeFieldPolynomial(self.p, coeffs))
        return tuple(coeffs) + (0,) * (self.degree - len(coeffs))

    def r_add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def r_sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def r_mul(self, a, b):
        d, p = self.degree, self.p
        if d == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = prod[:d]
        rows = self._reduce_rows
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = rows[k]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(v % p for v in out)

    def r_inv(self, a):
        a = tuple(a)
        cache = self._inverses
        if a not in cache:
            cache[a] = self._inv(a)
        return cache[a]

    def _inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.degree == 1:
            return (pow(a[0], -1, self.p),)
        # extended Euclid on (a, f)
        p = self.p
        r0, r1 = self.modulus, PrimeFieldPolynomial(p, a)
        s0, s1 = PrimeFieldPolynomial(p), PrimeFieldPolynomial(p, (1,))
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 is a nonzero constant
        inv = pow(r0.coeffs[0], -1, p)
        return self.raw(s0.scale(inv))

    # public constructors --------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.raw(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.degree)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t."""
        return self((0, 1))


@dataclass(frozen=True)
class FieldElement:
    parent: FiniteField
    value: tuple[int, ...]

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.parent(other)
        if other.parent != self.parent:
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.parent, self.parent.r_add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.parent, self.parent.r_sub(self.value, other.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return self.parent.zero - self

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.parent, self.parent.r_mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * field_inverse(self._check(other))

    def __pow__(self, e: int):
        if e < 0:
            return field_inverse(self) ** (-e)
        result, base = self.parent.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.parent.raw(other)
        if isinstance(other, FieldElement):
            return self.parent == other.parent and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.parent, self.value))

    def __bool__(self):
        return any(self.value)

    def __str__(self):
        return _render(self.value, var="t")

    def __repr__(self):
        return f"FieldElement({self})"


def field_inverse(a: FieldElement) -> FieldElement:
    """Multiplicative inverse via extended Euclid; raises ZeroDivisionError on 0."""
    return FieldElement(a.parent, a.parent.r_inv(a.value))


# --------------------------------------------------------------------------
# matrices


class FieldMatrix:
    """A rows x cols matrix over one finite field F_{p^d}.

    Entries are packed in an int64 array of shape (rows, cols, d) holding
    coefficient vectors; :meth:`__getitem__` and :meth:`rows` wrap them as
    :class:`FieldElement`.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: FiniteField, data: np.ndarray):
        data = np.asarray(data, dtype=np.int64)
        if data.ndim != 3 or data.shape[2] != field.degree:
            raise ValueError(f"expected an array of shape (rows, cols, {field.degree})")
        self.field = field
        self.data = data % field.p

    @classmethod
    def from_rows(cls, F: FiniteField, rows, ncols: int | None = None) -> "FieldMatrix":
        grid = []
        for row in rows:
            cells = []
            for x in row:
                if isinstance(x, FieldElement):
                    if x.parent is not F and x.parent != F:
                        raise ValueError("matrix entries from mixed fields")
                    cells.append(x.value)
                else:
                    cells.append(F.raw(x))
            grid.append(cells)
        if ncols is None:
            ncols = len(grid[0]) if grid else 0
        if any(len(r) != ncols for r in grid):
            raise ValueError("ragged matrix")
        data = np.zeros((len(grid), ncols, F.degree), dtype=np.int64)
        if grid and ncols:
            data[:] = grid
        return cls(F, data)

    @classmethod
    def zeros(cls, F: FiniteField, nrows: int, ncols: int) -> "FieldMatrix":
        return cls(F, np.zeros((nrows, ncols, F.degree), dtype=np.int64))

    @property
    def nrows(self) -> int:
        return self.data.shape[0]

    @property
    def ncols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, tuple(int(v) for v in self.data[i, j]))

    def rows(self) -> list[list[FieldElement]]:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"FieldMatrix({self.nrows}x{self.ncols} over {self.field!r})"


SKETCH_EXTRA = 8
_FLOAT_EXACT = 1 << 53


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for entries in range(p); float BLAS when it is exact."""
    bound = a.shape[-1] * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    if bound < 1 << 63:
        return (a.astype(np.int64) @ b.astype(np.int64)) % p
    return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)


def kernel_dimension(M: FieldMatrix) -> int:
    """``ncols - rank(M)`` by Gaussian elimination over the parent field."""
    return kernel_dimensions(M.field, M.data[None])[0]


def kernel_dimensions(F: FiniteField, A: np.ndarray) -> list[int]:
    """Kernel dimensions of a stack of matrices over F, shape (batch, rows, cols, d)."""
    batch, nrows, ncols, d = A.shape
    if nrows > ncols + SKETCH_EXTRA:
        S = sketch_matrix(ncols + SKETCH_EXTRA, nrows, F.p)
        sketch = matmul_mod(S, A.reshape(batch, nrows, ncols * d), F.p)
        ranks = certified_ranks(F, sketch.reshape(batch, -1, ncols, d), lambda idx: A[idx])
    else:
        ranks = stack_ranks(F, A)
    return [ncols - int(r) for r in ranks]


def certified_ranks(F: FiniteField, sketches: np.ndarray, full, bounds=None) -> np.ndarray:
    """Ranks from sketches S A of a stack of matrices A.

    rank(S A) <= rank(A) <= bound for any S, so a sketch reaching the bound
    (default ncols) certifies the rank; the remaining matrices,
    ``full(indices)``, are eliminated directly.
    """
    if bounds is None:
        bounds = np.full(sketches.shape[0], sketches.shape[2])
    ranks = stack_ranks(F, sketches)
    todo = np.flatnonzero(ranks < bounds)
    if todo.size:
        ranks[todo] = stack_ranks(F, full(todo))
    return ranks


def stack_ranks(F: FiniteField, A: np.ndarray) -> np.ndarray:
    """Ranks of a stack (batch, rows, cols, d) by batched elimination."""
    return _eliminate(F, A % F.p)


@lru_cache(maxsize=256)
def sketch_matrix(rows: int, cols: int, p: int) -> np.ndarray:
    rng = np.random.default_rng(DEFAULT_SEED)
    return rng.integers(0, p, size=(rows, cols))


def _work_dtype(p: int, d: int):
    # dtype in which (d * (p-1)^2)-bounded sums of products stay exact
    bound = max(d, 1) * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        return np.float64
    if bound < 1 << 63:
        return np.int64
    raise ValueError(f"field of characteristic {p} is too large for word arithmetic")


def _mod(x: np.ndarray, p: int) -> np.ndarray:
    # floor division is exact for integral floats below 2^53 and much
    # cheaper than the float remainder
    if x.dtype == np.float64:
        return x - p * np.floor(x / p)
    return x % p


@lru_cache(maxsize=64)
def _fp_inverse_table(p: int) -> np.ndarray:
    return np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)


def _fp_inverses(a: np.ndarray, p: int) -> np.ndarray:
    if p <= 1 << 16:
        return _fp_inverse_table(p)[a.astype(np.int64)].astype(a.dtype)
    return np.array([pow(int(v), -1, p) for v in a], dtype=a.dtype)


def _batch_inverse(x: np.ndarray, T_rows: np.ndarray, p: int) -> np.ndarray:
    """Inverses of a stack of nonzero elements (shape (k, d)): solve
    M_x y = 1 over F_p by Gauss-Jordan on every distinct system at once."""
    k, d = x.shape
    aug = np.zeros((k, d, d + 1), dtype=x.dtype)
    aug[:, :, :d] = _mod(x @ T_rows, p).reshape(k, d, d)
    aug[:, 0, d] = 1
    batch = np.arange(k)
    for col in range(d):
        piv = col + (aug[:, col:, col] != 0).argmax(axis=1)
        if (piv != col).any():
            aug[batch, col], aug[batch, piv] = aug[batch, piv], aug[batch, col]
        scale = _fp_inverses(aug[:, col, col], p)
        aug[:, col] = _mod(aug[:, col] * scale[:, None], p)
        factor = aug[:, :, col].copy()
        factor[:, col] = 0
        aug = _mod(aug - factor[:, :, None] * aug[:, col][:, None, :], p)
    return aug[:, :, d]


_INVERSE_TABLE_MAX = 1 << 10


def _inverses(F: FiniteField, x: np.ndarray, T_rows: np.ndarray) -> np.ndarray:
    """Inverses of a stack of nonzero elements; small fields use a table."""
    if F.size <= _INVERSE_TABLE_MAX:
        keys = (x @ (F.p ** np.arange(F.degree))).astype(np.int64)
        return F.inverse_table[keys].astype(x.dtype)
    # the stack repeats itself a lot (J and the bordered J share pivots)
    rows = np.ascontiguousarray(x.astype(np.int64))
    keys = rows.view(np.dtype((np.void, rows.itemsize * F.degree))).ravel()
    _, first, back = np.unique(keys, return_index=True, return_inverse=True)
    return _batch_inverse(x[first], T_rows, F.p)[back.ravel()]


def _eliminate(F: FiniteField, A: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices, shape (batch, rows, cols, d), entries reduced.

    Batched Gaussian elimination: each matrix picks its own first nonzero
    pivot per column; products go through the multiplication matrices M_x,
    with x * y = y @ M_x.T.
    """
    p = F.p
    batch, nrows, ncols, d = A.shape
    dtype = _work_dtype(p, d)
    A = A.astype(dtype)
    T_rows = F.mul_tensor.reshape(d, d * d).astype(dtype)  # x @ T_rows is M_x, flattened
    # M_x entries for reduced x stay below d p^2; one more product with a
    # reduced vector is still exact when d^2 p^3 fits
    lazy = dtype is np.float64 and d * d * (p - 1) ** 3 < _FLOAT_EXACT
    # with ncols such steps still exact, the block is reduced only where it
    # is read: the current column and the pivot row
    deferred = lazy and (ncols + 1) * d * d * (p - 1) ** 3 < _FLOAT_EXACT
    rank = np.zeros(batch, dtype=np.int64)
    row_index = np.arange(nrows)
    for col in range(ncols):
        live = np.flatnonzero(rank < nrows)
        if live.size == 0:
            break
        if deferred:
            A[:, :, col] = _mod(A[:, :, col], p)
        r = rank[live]
        cand = A[live, :, col].any(axis=2) & (row_index >= r[:, None])
        has = cand.any(axis=1)
        live, r, cand = live[has], r[has], cand[has]
        if live.size == 0:
            continue
        piv = cand.argmax(axis=1)
        swap = piv != r
        if swap.any():
            b, i, j = live[swap], r[swap], piv[swap]
            A[b, i], A[b, j] = A[b, j], A[b, i]
        k, w = live.size, ncols - col - 1
        uniform = k == batch and (r == r[0]).all()
        if uniform:
            # the usual case: plain slices, and only the rows below the pivot
            r0 = int(r[0])
            pivot = A[:, r0, col:]
        else:
            pivot = A[live, r, col:]  # (k, w + 1, d)
        rank[live] += 1
        if w == 0:
            continue
        if deferred:
            pivot = _mod(pivot, p)
        Minv = _mod(_inverses(F, pivot[:, 0], T_rows) @ T_rows, p).reshape(k, d, d)
        rest = _mod(pivot[:, 1:] @ Minv.transpose(0, 2, 1), p)  # pivot row / pivot
        MP = rest.reshape(k * w, d) @ T_rows
        if not lazy:
            MP = _mod(MP, p)
        MP = MP.reshape(k, w, d, d).transpose(0, 3, 1, 2).reshape(k, d, w * d)
        # column col is left as is: later columns never look at it again
        if uniform:
            block = A[:, r0 + 1 :, col + 1 :]
            block -= (A[:, r0 + 1 :, col] @ MP).reshape(block.shape)
            if not deferred:
                block[...] = _mod(block, p)
        else:
            block = A[live, :, col + 1 :]  # (k, rows, w, d)
            minus = A[live, :, col] @ MP
            below = (row_index[None, :] > r[:, None])[:, :, None, None]
            update = block - minus.reshape(block.shape)
            A[live, :, col + 1 :] = np.where(below, update if deferred else _mod(update, p), block)
    return rank


# --------------------------------------------------------------------------
# integer matrices mod a prime (used by the Dixon computation)


def row_echelon_mod(A: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``A`` over F_q and its pivot columns."""
    A = np.array(A, dtype=np.int64) % q
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, q) % q
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r]) % q) % q
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace_mod(A: np.ndarray, q: int) -> np.ndarray:
    """Basis (as rows) of the right nullspace of ``A`` over F_q."""
    R, pivots = row_echelon_mod(A, q)
    ncols = R.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, c in enumerate(pivots):
            basis[t, c] = (-R[i, f]) % q
    return basis


def solve_mod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    """Solve ``A X = B`` over F_q for square invertible ``A``."""
    A = np.array(A, dtype=np.int64) % q
    B = np.array(B, dtype=np.int64) % q
    n = A.shape[0]
    M = np.concatenate([A, B], axis=1)
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            raise ZeroDivisionError("singular matrix mod q")
        k = c + nz[0]
        if k != c:
            M[[c, k]] = M[[k, c]]
        M[c] = M[c] * pow(int(M[c, c]), -1, q) % q
        col = M[:, c].copy()
        col[c] = 0
        M = (M - np.outer(col, M[c]) % q) % q
    return M[:, n:]


def charpoly_mod(A: np.ndarray, q: int) -> PrimeFieldPolynomial:
    """Characteristic polynomial of a square matrix over F_q (Hessenberg method)."""
    H = np.array(A, dtype=np.int64) % q
    n = H.shape[0]
    # reduce to upper Hessenberg form by similarity transforms
    for c in range(n - 2):
        nz = np.nonzero(H[c + 1 :, c])[0]
        if nz.size == 0:
            continue
        k = c + 1 + nz[0]
        if k != c + 1:
            H[[c + 1, k]] = H[[k, c + 1]]
            H[:, [c + 1, k]] = H[:, [k, c + 1]]
        inv = pow(int(H[c + 1, c]), -1, q)
        for i in range(c + 2, n):
            m = H[i, c] * inv % q
            if m:
                H[i] = (H[i] - m * H[c + 1]) % q
                H[:, c + 1] = (H[:, c + 1] + m * H[:, i]) % q
    # recurrence on leading principal minors
    polys = [PrimeFieldPolynomial(q, (1,))]
    x = PrimeFieldPolynomial(q, (0, 1))
    for m in range(1, n + 1):
        p_m = (x - PrimeFieldPolynomial(q, (int(H[m - 1, m - 1]),))) * polys[m - 1]
        t = 1
        for i in range(1, m):
            t = t * int(H[m - i, m - i - 1]) % q
            coeff = t * int(H[m - i - 1, m - 1]) % q
            if coeff:
                p_m = p_m - polys[m - i - 1].scale(coeff)
        polys.append(p_m)
    return polys[n]


def roots_mod(f: PrimeFieldPolynomial, seed: int | None = None) -> list[int]:
    """Distinct roots of ``f`` in F_q."""
    q = f.p
    x = PrimeFieldPolynomial(q, (0, 1))
    g = poly_gcd(x.powmod(q, f) - x, f)
    if g.degree == NEG_INF or g.degree < 1:
        return []
    return sorted((-h.coeffs[0]) % q for h in factor_equal_degree(g, 1, seed))

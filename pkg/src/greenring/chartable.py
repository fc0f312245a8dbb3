"""Ordinary character tables: Burnside-Dixon computation, JSON I/O and exact
orthogonality checks in Z[xi_n].

A table computed modulo a prime is never trusted on its own; every table
that leaves this module has passed both orthogonality relations exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from math import isqrt, lcm
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .cyclotomic import (
    CyclotomicInt,
    array_matmul,
    coefficient_array,
    conjugate_array,
    factorize,
    is_prime,
)
from .exactmath import charpoly_mod, nullspace_mod, roots_mod, row_echelon_mod, solve_mod
from .groups import ConjClass, PermGroup, label_classes

MAX_DIXON_ORDER = 10**4


class TableError(ValueError):
    """Base class for character-table problems."""


class TableSchemaError(TableError):
    """The JSON document does not match the table schema."""


class TableValidationError(TableError):
    """The values violate a character-table invariant."""


class ConductorError(TableError):
    """A conductor that does not divide the group order."""


class DixonError(RuntimeError):
    """Internal failure of the modular computation (never a user error)."""


@dataclass(frozen=True)
class CharacterTable:
    order: int
    classes: tuple[ConjClass, ...]
    conductor: int
    values: tuple[tuple[CyclotomicInt, ...], ...]

    @property
    def s(self) -> int:
        return len(self.classes)

    @property
    def exponent(self) -> int:
        return reduce(lcm, (c.element_order for c in self.classes), 1)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row[0].rational() for row in self.values)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    @property
    def labels(self) -> list[str]:
        return label_classes([c.element_order for c in self.classes])

    def __eq__(self, other):
        if not isinstance(other, CharacterTable):
            return NotImplemented
        return (
            self.order == other.order
            and self.conductor == other.conductor
            and self.values == other.values
            and [(c.size, c.element_order) for c in self.classes]
            == [(c.size, c.element_order) for c in other.classes]
        )

    def __hash__(self):
        return hash((self.order, self.conductor, self.values))


# --------------------------------------------------------------------------
# verification


def verify_table(t: CharacterTable) -> None:
    """Check every table invariant exactly; raise TableValidationError."""
    n, s = t.order, t.s
    if n < 1 or s < 1:
        raise TableValidationError("empty table")
    if n % t.conductor:
        raise ConductorError(f"conductor {t.conductor} does not divide {n}")
    if len(t.values) != s or any(len(row) != s for row in t.values):
        raise TableValidationError("character table is not square")
    sizes = t.class_sizes
    if sum(sizes) != n or any(n % c for c in sizes):
        raise TableValidationError("class sizes do not form a class equation for the order")
    if sizes[0] != 1 or t.classes[0].element_order != 1:
        raise TableValidationError("first class must be the identity")
    if any(n % c.element_order for c in t.classes):
        raise TableValidationError("element order does not divide the group order")
    if any(v != 1 for v in t.values[0]):
        raise TableValidationError("first character must be trivial")
    for row in t.values:
        if not row[0].is_rational() or row[0].rational() <= 0:
            raise TableValidationError("character degree must be a positive integer")
    if sum(d * d for d in t.degrees) != n:
        raise TableValidationError("sum of squared degrees differs from the group order")
    e = t.conductor
    V = coefficient_array(t.values, e)  # (character, class, coefficient)
    conj = conjugate_array(V, e)
    gram = array_matmul(V, conj.transpose(1, 0, 2), e, sizes)
    want = np.zeros_like(gram)
    want[..., 0] = n * np.eye(s, dtype=np.int64)
    bad = np.argwhere((gram != want).any(axis=2))
    if bad.size:
        i, j = bad[0]
        raise TableValidationError(f"row orthogonality fails for characters {i}, {j}")
    cols = array_matmul(V.transpose(1, 0, 2), conj, e)
    want = np.zeros_like(cols)
    want[..., 0] = np.diag([n // c for c in sizes])
    bad = np.argwhere((cols != want).any(axis=2))
    if bad.size:
        c, d = bad[0]
        raise TableValidationError(f"column orthogonality fails for classes {c}, {d}")


def _sorted_characters(values: Sequence[Sequence[CyclotomicInt]]) -> list[tuple[CyclotomicInt, ...]]:
    rows = [tuple(r) for r in values]
    trivial = [r for r in rows if all(v == 1 for v in r)]
    if len(trivial) != 1:
        raise TableValidationError("expected exactly one trivial character")
    rest = [r for r in rows if r is not trivial[0]]
    rest.sort(key=lambda r: (r[0].rational(), tuple(v.sort_key() for v in r)))
    return [trivial[0]] + rest


def embed_conductor(t: CharacterTable, m: int | None = None) -> CharacterTable:
    """Re-express every value at conductor ``m`` (default: the group order)."""
    m = t.order if m is None else m
    if t.order % m or m % t.conductor:
        raise ConductorError(f"cannot embed conductor {t.conductor} into {m} for order {t.order}")
    if m == t.conductor:
        return t
    values = tuple(tuple(v.embed(m) for v in row) for row in t.values)
    out = CharacterTable(t.order, t.classes, m, tuple(_sorted_characters(values)))
    verify_table(out)
    return out


# --------------------------------------------------------------------------
# Burnside-Dixon


def _primitive_root(q: int) -> int:
    fac = list(factorize(q - 1))
    for g in range(2, q):
        if all(pow(g, (q - 1) // r, q) != 1 for r in fac):
            return g
    raise DixonError(f"no primitive root mod {q}")


def dixon_primes(n: int, e: int) -> Iterator[int]:
    """Primes q = 1 (mod e) with q > 2 sqrt(n), ascending."""
    root = isqrt(n)
    if root * root < n:
        root += 1
    start = 2 * root + 1
    q = start + ((1 - start) % e)
    while True:
        if is_prime(q):
            yield q
        q += e


def class_multiplication_coefficients(G: PermGroup) -> np.ndarray:
    """a[i, j, k] = #{(x, y) in C_i x C_j : x y = z_k} for fixed z_k in C_k."""
    classes = G.classes
    s = len(classes)
    E = np.array([g.images for g in G.elements], dtype=np.int32)
    inv = np.argsort(E, axis=1).astype(np.int32)
    keys = {row.tobytes(): i for i, row in enumerate(E)}
    cls = np.array(G.class_of_element, dtype=np.int64)
    a = np.zeros((s, s, s), dtype=np.int64)
    for k, c in enumerate(classes):
        z = np.array(c.representative.images, dtype=np.int32)
        Y = inv[:, z]  # rows are x^-1 z
        yidx = np.fromiter((keys[row.tobytes()] for row in Y), dtype=np.int64, count=len(E))
        np.add.at(a, (cls, cls[yidx], k), 1)
    return a


def _split_spaces(mats: np.ndarray, q: int, s: int, seed: int | None) -> list[np.ndarray]:
    # each space: s x dim basis matrix, columns are vectors; invariant under all mats
    spaces = [np.eye(s, dtype=np.int64)]
    for M in mats:
        if all(B.shape[1] == 1 for B in spaces):
            break
        nxt = []
        for B in spaces:
            dim = B.shape[1]
            if dim == 1:
                nxt.append(B)
                continue
            _, piv = row_echelon_mod(B.T, q)
            MB = M @ B % q
            A = solve_mod(B[piv], MB[piv], q)
            if np.array_equal(A, (A[0, 0] * np.eye(dim, dtype=np.int64)) % q):
                nxt.append(B)
                continue
            total = 0
            for lam in roots_mod(charpoly_mod(A, q), seed):
                K = nullspace_mod((A - lam * np.eye(dim, dtype=np.int64)) % q, q)
                total += K.shape[0]
                nxt.append(B @ K.T % q)
            if total != dim:
                raise DixonError("class matrix not diagonalisable over F_q")
        spaces = nxt
    if any(B.shape[1] != 1 for B in spaces):
        raise DixonError("class matrices failed to separate the characters")
    return spaces


def dixon_character_table(G: PermGroup, q: int | None = None, seed: int | None = None) -> CharacterTable:
    """Character table of ``G`` by the Burnside-Dixon method.

    ``q`` overrides the Dixon prime (it must be = 1 mod the exponent and
    exceed 2 sqrt(|G|)).  The result is stored at conductor |G| and has
    passed exact orthogonality checks.
    """
    n = G.order
    if n > MAX_DIXON_ORDER:
        raise TableError(f"group order {n} exceeds the Dixon cap {MAX_DIXON_ORDER}")
    classes = G.classes
    s = len(classes)
    e = G.exponent
    if q is None:
        q = next(dixon_primes(n, e))
    elif not is_prime(q) or (q - 1) % e or q * q <= 4 * n:
        raise ValueError(f"{q} is not a valid Dixon prime for order {n}, exponent {e}")

    a = class_multiplication_coefficients(G)
    spaces = _split_spaces(a[1:] if s > 1 else a, q, s, seed)

    sizes = [c.size for c in classes]
    inv_class = [G.class_of(c.representative.inverse()) for c in classes]
    z = pow(_primitive_root(q), (q - 1) // e, q)
    power_classes = []
    for c in classes:
        pw, g = [], c.representative ** 0
        for _ in range(c.element_order):
            pw.append(G.class_of(g))
            g = g * c.representative
        power_classes.append(pw)

    degrees, chi_q = [], []
    for B in spaces:
        w = B[:, 0] % q
        if w[0] == 0:
            raise DixonError("central character vanishes on the identity")
        w = w * pow(int(w[0]), -1, q) % q
        norm = sum(int(w[k]) * int(w[inv_class[k]]) * pow(sizes[k], -1, q) for k in range(s)) % q
        target = n * pow(norm, -1, q) % q
        degree = next((d for d in range(1, isqrt(n) + 1) if d * d % q == target), None)
        if degree is None:
            raise DixonError("no admissible character degree")
        degrees.append(degree)
        chi_q.append([int(w[k]) * degree * pow(sizes[k], -1, q) % q for k in range(s)])
    chi = np.array(chi_q, dtype=np.int64)
    deg = np.array(degrees, dtype=np.int64)

    # multiplicity of zeta^l as an eigenvalue of a representative of class k:
    # (1/o) sum_t chi(g^t) zeta^(-l t), all characters at once
    zeta_mats: dict[int, np.ndarray] = {}
    columns = []
    for k, c in enumerate(classes):
        o = c.element_order
        if o not in zeta_mats:
            zo = pow(z, e // o, q)
            zp = [pow(zo, j, q) for j in range(o)]
            zeta_mats[o] = np.array([[zp[(-l * t) % o] for t in range(o)] for l in range(o)], dtype=np.int64)
        mult = (chi[:, power_classes[k]] @ zeta_mats[o].T) % q * pow(o, -1, q) % q
        if (mult > deg[:, None]).any() or (mult.sum(axis=1) != deg).any():
            raise DixonError("eigenvalue multiplicities inconsistent with the degree")
        step = e // o
        columns.append(
            [
                CyclotomicInt.from_exponents(e, [(l * step, int(m)) for l, m in enumerate(row) if m])
                for row in mult
            ]
        )
    rows = [tuple(col[i] for col in columns) for i in range(len(spaces))]

    table = CharacterTable(n, tuple(classes), e, tuple(_sorted_characters(rows)))
    verify_table(table)
    return embed_conductor(table)


# --------------------------------------------------------------------------
# JSON


def table_to_json(t: CharacterTable) -> dict:
    return {
        "order": t.order,
        "exponent": t.exponent,
        "classes": [{"size": c.size, "element_order": c.element_order} for c in t.classes],
        "conductor": t.conductor,
        "values": [[v.sparse() for v in row] for row in t.values],
    }


def _want_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TableSchemaError(f"{what} must be an integer, got {x!r}")
    return x


def table_from_json(doc) -> CharacterTable:
    if not isinstance(doc, dict):
        raise TableSchemaError("table document must be a JSON object")
    missing = {"order", "exponent", "classes", "conductor", "values"} - set(doc)
    if missing:
        raise TableSchemaError(f"missing keys: {sorted(missing)}")
    n = _want_int(doc["order"], "order")
    e = _want_int(doc["exponent"], "exponent")
    N = _want_int(doc["conductor"], "conductor")
    if n < 1 or N < 1:
        raise TableSchemaError("order and conductor must be positive")
    if n % N:
        raise ConductorError(f"conductor {N} does not divide the order {n}")
    if not isinstance(doc["classes"], list) or not doc["classes"]:
        raise TableSchemaError("classes must be a nonempty list")
    classes = []
    for i, c in enumerate(doc["classes"]):
        if not isinstance(c, dict) or set(c) != {"size", "element_order"}:
            raise TableSchemaError(f"class {i} must have exactly 'size' and 'element_order'")
        classes.append(
            ConjClass(i, None, _want_int(c["size"], "size"), _want_int(c["element_order"], "element_order"))
        )
    if any(c.size < 1 or c.element_order < 1 for c in classes):
        raise TableSchemaError("class sizes and orders must be positive")
    if e != reduce(lcm, (c.element_order for c in classes), 1):
        raise TableValidationError("exponent is not the lcm of the element orders")
    s = len(classes)
    vals = doc["values"]
    if not isinstance(vals, list) or len(vals) != s:
        raise TableSchemaError("values must be an s x s array")
    rows = []
    for row in vals:
        if not isinstance(row, list) or len(row) != s:
            raise TableSchemaError("values must be an s x s array")
        out = []
        for v in row:
            if not isinstance(v, list):
                raise TableSchemaError("each value is a list of [exponent, coefficient] pairs")
            terms = []
            for pair in v:
                if not isinstance(pair, list) or len(pair) != 2:
                    raise TableSchemaError("each term must be an [exponent, coefficient] pair")
                k = _want_int(pair[0], "exponent")
                if k < 0:
                    raise TableSchemaError("exponents must be nonnegative")
                terms.append((k, _want_int(pair[1], "coefficient")))
            out.append(CyclotomicInt.from_exponents(N, terms))
        rows.append(tuple(out))
    for row in rows:
        if not row[0].is_rational():
            raise TableValidationError("character degree must be a rational integer")
    t = CharacterTable(n, tuple(classes), N, tuple(_sorted_characters(rows)))
    verify_table(t)
    return embed_conductor(t)


def save_table(t: CharacterTable, path) -> None:
    Path(path).write_text(dumps_table(t), encoding="utf-8")


def dumps_table(t: CharacterTable) -> str:
    return json.dumps(table_to_json(t), indent=2) + "\n"


def load_table(path) -> CharacterTable:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise TableSchemaError(f"invalid JSON: {exc}") from exc
    return table_from_json(doc)


def _reject_float(text: str):
    raise TableSchemaError(f"floating point value {text} is not allowed")

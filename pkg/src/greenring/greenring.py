"""The representation ring R(G) and its multiplication-table presentation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .chartable import CharacterTable
from .cyclotomic import (
    CyclotomicInt,
    CyclotomicPrime,
    conjugate_array,
    array_matmul,
    array_products,
    coefficient_array,
    exact_matmul,
    reduce_mod,
)
from .exactmath import FieldElement, matmul_mod


class StructureConstantError(RuntimeError):
    """Structure constants that are not nonnegative integers: the table is broken."""


@dataclass(frozen=True)
class GreenRing:
    """R(G) with ``alpha[i, j, k]`` the multiplicity of chi_k in chi_i chi_j
    (0-based; index 0 is the trivial character)."""

    table: CharacterTable
    alpha: np.ndarray = field(repr=False)

    @property
    def s(self) -> int:
        return self.table.s

    @property
    def order(self) -> int:
        return self.table.order

    @cached_property
    def values(self) -> np.ndarray:
        """Character values as an integer array (character, class, coefficient)."""
        return coefficient_array(self.table.values, self.table.conductor)

    @cached_property
    def relation_set(self) -> "RelationSet":
        return relations(self)


def structure_constants(t: CharacterTable) -> GreenRing:
    """alpha_ij^k = (1/n) sum_c |c| chi_i(c) chi_j(c) conj(chi_k(c)), exactly."""
    n, s = t.order, t.s
    if t.conductor != n:
        raise ValueError("table must be stored at conductor |G|")
    V = coefficient_array(t.values, n)  # (character, class, coefficient)
    conj = conjugate_array(V, n)
    I, J = np.triu_indices(s)
    prods = array_products(V[I], V[J], n)  # (pair, class, coefficient)
    sums = array_matmul(prods, conj.transpose(1, 0, 2), n, t.class_sizes)  # (pair, k, coefficient)

    def fail(mask, what):
        hit = np.argwhere(mask)
        if hit.size:
            r, k = hit[0]
            raise StructureConstantError(f"<chi_{I[r]+1} chi_{J[r]+1}, chi_{k+1}> is {what}")

    fail(sums[..., 1:].any(axis=2), "not rational")
    fail(sums[..., 0] % n != 0, "not an integer")
    fail(sums[..., 0] < 0, "negative")
    alpha = np.zeros((s, s, s), dtype=np.int64)
    alpha[I, J] = alpha[J, I] = (sums[..., 0] // n).astype(np.int64)

    # pointwise recheck: chi_i chi_j = sum_k alpha_ij^k chi_k at every class
    rhs = exact_matmul(alpha[I, J], V.reshape(s, -1)).reshape(prods.shape)
    bad = np.argwhere((prods != rhs).any(axis=2))
    if bad.size:
        r, c = bad[0]
        raise StructureConstantError(f"product chi_{I[r]+1} chi_{J[r]+1} fails at class {c}")
    return GreenRing(t, alpha)


@dataclass(frozen=True)
class Relation:
    """x_i x_j - constant - sum_k linear[k] x_k, character indices 0-based (>= 1)."""

    i: int
    j: int
    constant: int
    linear: tuple[tuple[int, int], ...]

    def evaluate(self, x: Sequence):
        """Value at ``x`` where ``x[k]`` is the value of x_k (``x[0]`` unused)."""
        out = x[self.i] * x[self.j] - self.constant
        for k, a in self.linear:
            out = out - a * x[k]
        return out

    def gradient(self, x: Sequence, nvars: int) -> list:
        """Partial derivatives in x_1 .. x_{nvars}, at ``x``."""
        zero = x[self.i] * 0
        grad = [zero] * nvars
        grad[self.i - 1] = grad[self.i - 1] + x[self.j]
        grad[self.j - 1] = grad[self.j - 1] + x[self.i]
        for k, a in self.linear:
            grad[k - 1] = grad[k - 1] - a
        return grad

    def __str__(self) -> str:
        a, b = self.i + 1, self.j + 1
        out = f"x_{a}^2" if a == b else f"x_{a}*x_{b}"
        if self.constant:
            out += f" - {self.constant}" if self.constant > 0 else f" + {-self.constant}"
        for k, c in self.linear:
            mono = f"x_{k + 1}"
            out += f" - {mono}" if c == 1 else f" - {c}*{mono}"
        return out


@dataclass(frozen=True)
class RelationSet:
    nvars: int
    relations: tuple[Relation, ...]

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    @cached_property
    def _layout(self):
        m = len(self.relations)
        I = np.array([r.i for r in self.relations], dtype=np.intp)
        J = np.array([r.j for r in self.relations], dtype=np.intp)
        L = np.zeros((m, self.nvars), dtype=np.int64)
        for row, r in enumerate(self.relations):
            for k, a in r.linear:
                L[row, k - 1] = a
        return I, J, L

    def jacobian_array(self, x: np.ndarray, p: int) -> np.ndarray:
        """All gradients at once over F_{p^d}.

        ``x`` has shape (..., nvars + 1, d): coefficient vectors of the values
        of x_1 = 1, x_2, ..., x_s.  Returns shape (..., len(self), nvars, d).
        """
        I, J, L = self._layout
        lead, d = x.shape[:-2], x.shape[-1]
        m = len(self.relations)
        out = np.zeros(lead + (m, self.nvars, d), dtype=np.int64)
        out[..., 0] -= L
        rows = np.arange(m)
        # (row, I-1) pairs are distinct, as are (row, J-1), so += is safe
        out[..., rows, I - 1, :] += x[..., J, :]
        out[..., rows, J - 1, :] += x[..., I, :]
        return out % p


    def sketched_jacobian(self, x: np.ndarray, S: np.ndarray, p: int) -> np.ndarray:
        """S @ J(x) for a sketch S of shape (k, len(self)), without forming J.

        Row r of J holds x_{j_r} at column i_r, x_{i_r} at column j_r and the
        constants -alpha in coefficient 0, so S @ J = W @ x - S @ L with W
        gathering the columns of S by (column, variable).
        """
        I, J, L = self._layout
        k = S.shape[0]
        W = np.zeros((self.nvars, self.nvars + 1, k), dtype=np.int64)
        np.add.at(W, (I - 1, J), S.T)
        np.add.at(W, (J - 1, I), S.T)
        W = W.transpose(2, 0, 1).reshape(k * self.nvars, self.nvars + 1) % p
        out = matmul_mod(W, x, p).reshape(x.shape[:-2] + (k, self.nvars, x.shape[-1]))
        out[..., 0] = (out[..., 0] - matmul_mod(S, L, p)) % p
        return out


def relations(R: GreenRing) -> RelationSet:
    """The (s-1)s/2 quadrics x_i x_j - sum_k alpha_ij^k x_k (x_1 = 1), i <= j."""
    s = R.s
    out = []
    for i in range(1, s):
        for j in range(i, s):
            lin = tuple((k, int(R.alpha[i, j, k])) for k in range(1, s) if R.alpha[i, j, k])
            out.append(Relation(i, j, int(R.alpha[i, j, 0]), lin))
    return RelationSet(s - 1, tuple(out))


def character_point(R: GreenRing, c: int) -> list[CyclotomicInt]:
    """(chi_1(c), ..., chi_s(c)) in Z[xi]."""
    return [row[c] for row in R.table.values]


def evaluate_point(R: GreenRing, c: int, Q: CyclotomicPrime) -> tuple[FieldElement, ...]:
    """Residues of chi_2(c), ..., chi_s(c) modulo Q."""
    if Q.n != R.table.conductor:
        raise ValueError(f"prime lives over conductor {Q.n}, table over {R.table.conductor}")
    return tuple(reduce_mod(R.table.values[k][c], Q) for k in range(1, R.s))

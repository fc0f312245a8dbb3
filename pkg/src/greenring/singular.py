"""Closed points of C = Spec(R(G) (x) Z[xi]), their Jacobians and the
tangent-space invariants.

A closed point is P = P'_{Q,c} for a prime Q = (p, f(xi)) of Z[xi] and a
class c; two classes give the same point exactly when their p-regular parts
are conjugate.  The point is singular iff that fiber has at least two
classes.  Generic points (Q = 0) are always regular and are never analysed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .cyclotomic import (
    CyclotomicPrime,
    factorize,
    is_ramified,
    phi_derivative_at,
    primes_above,
    reduce_array,
    reduce_mod,
)
from .exactmath import (
    SKETCH_EXTRA,
    FieldMatrix,
    certified_ranks,
    sketch_matrix,
    stack_ranks,
)
from .greenring import GreenRing, evaluate_point
from .groups import PermGroup, abelian_invariants, fusion_map


class InvariantViolation(RuntimeError):
    """Two independent routes to the same invariant disagree."""


@dataclass(frozen=True)
class PointDescriptor:
    prime: CyclotomicPrime
    base_class: int
    fiber: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.prime.p


@dataclass(frozen=True)
class PointReport:
    point: PointDescriptor
    singular: bool
    edim: int
    dimT_Z: int
    dimT_Zxi: int
    ramified: bool
    p_in_P_squared: bool
    kernel_dim: int


class Crossing(NamedTuple):
    base_class: int
    fiber: tuple[int, ...]
    components: int


def _fibers(fusion: Sequence[int]) -> dict[int, tuple[int, ...]]:
    out: dict[int, list[int]] = {}
    for c, e in enumerate(fusion):
        out.setdefault(e, []).append(c)
    return {e: tuple(v) for e, v in sorted(out.items())}


def residue_fusion(R: GreenRing, Q: CyclotomicPrime) -> tuple[int, ...]:
    """Fusion map read off the table: c and d fuse iff all characters agree mod Q.

    Each fiber is sent to its unique class of order prime to p.
    """
    t = R.table
    key = {}
    for c in range(t.s):
        key.setdefault(tuple(reduce_mod(row[c], Q).value for row in t.values), []).append(c)
    fusion = [0] * t.s
    for members in key.values():
        regular = [c for c in members if t.classes[c].element_order % Q.p]
        if len(regular) != 1:
            raise InvariantViolation(f"fiber {members} has {len(regular)} p-regular classes")
        for c in members:
            fusion[c] = regular[0]
    return tuple(fusion)


def _check_group_matches(R: GreenRing, G: PermGroup) -> None:
    got = [(c.size, c.element_order) for c in G.classes]
    want = [(c.size, c.element_order) for c in R.table.classes]
    if got != want or G.order != R.order:
        raise ValueError("group classes do not match the character table")


def enumerate_points(
    R: GreenRing,
    p: int,
    group: PermGroup | None = None,
    all_points: bool = False,
    seed: int | None = None,
) -> list[PointDescriptor]:
    """Closed points above p: one per (Q, p-regular class).

    With ``group`` the fusion comes from p-regular parts of elements,
    otherwise from residues of the character table.  Unless ``all_points``,
    only fibers with two or more classes (the singular points) are kept.
    """
    n = R.order
    if group is not None:
        _check_group_matches(R, group)
        group_fusion = fusion_map(group, p)
    out = []
    for Q in primes_above(n, p, seed):
        fusion = group_fusion if group is not None else residue_fusion(R, Q)
        for base, fiber in _fibers(fusion).items():
            if all_points or len(fiber) >= 2:
                out.append(PointDescriptor(Q, base, fiber))
    return out


def _point_array(R: GreenRing, pt: PointDescriptor, at_class: int | None) -> np.ndarray:
    c = pt.base_class if at_class is None else at_class
    F = pt.prime.field
    vals = [F.one.value] + [v.value for v in evaluate_point(R, c, pt.prime)]
    return np.array(vals, dtype=np.int64).reshape(R.s, F.degree)


def jacobian(R: GreenRing, pt: PointDescriptor, at_class: int | None = None) -> FieldMatrix:
    """Jacobian of the multiplication-table relations at the point, over k_P.

    ``at_class`` evaluates at another member of the fiber instead of the base.
    """
    F = pt.prime.field
    data = R.relation_set.jacobian_array(_point_array(R, pt, at_class), F.p)
    return FieldMatrix(F, data)


def _bordered(J: np.ndarray, corner: np.ndarray) -> np.ndarray:
    *lead, m, k, d = J.shape
    out = np.zeros((*lead, m + 1, k + 1, d), dtype=np.int64)
    out[..., :m, :k, :] = J
    out[..., m, k, :] = corner
    return out


def extended_jacobian(R: GreenRing, pt: PointDescriptor) -> FieldMatrix:
    """J bordered by one zero row and column, with Phi_n'(zeta) in the corner."""
    J = jacobian(R, pt)
    corner = np.array(phi_derivative_at(pt.prime).value, dtype=np.int64)
    return FieldMatrix(J.field, _bordered(J.data, corner))


def analyze_points(R: GreenRing, points: Sequence[PointDescriptor]) -> list[PointReport]:
    """Reports for many points; points over the same Q share one batched
    elimination."""
    n = R.order
    kernels: dict[PointDescriptor, tuple[int, int]] = {}
    by_prime: dict[CyclotomicPrime, list[PointDescriptor]] = {}
    for pt in points:
        by_prime.setdefault(pt.prime, []).append(pt)
    rs = R.relation_set
    m, nv = len(rs), rs.nvars
    for Q, pts in by_prime.items():
        F = Q.field
        # coordinates (chi_1(c), ..., chi_s(c)) mod Q for every point at once
        x = reduce_array(R.values[:, [pt.base_class for pt in pts]], Q).transpose(1, 0, 2)
        corner = np.array(phi_derivative_at(Q).value, dtype=np.int64)

        def full(idx):
            return rs.jacobian_array(x[idx], F.p)

        # J padded by a zero row and column (same rank) and the bordered J
        # share one batched elimination
        b = len(pts)
        zero = np.zeros_like(corner)

        def both(A):
            return np.concatenate([_bordered(A, zero), _bordered(A, corner)])

        if m > nv + SKETCH_EXTRA:
            # [[S, 0], [0, 1]] sketches the bordered matrices
            S = sketch_matrix(nv + SKETCH_EXTRA, m, F.p)
            sketches = both(rs.sketched_jacobian(x, S, F.p))
            bounds = np.repeat([nv, nv + int(corner.any())], b)

            def fallback(idx):
                J = full(idx % b)
                ext = (idx >= b)[:, None, None, None]
                return np.where(ext, _bordered(J, corner), _bordered(J, zero))

            ranks = certified_ranks(F, sketches, fallback, bounds)
        else:
            ranks = stack_ranks(F, both(full(slice(None))))
        ranks, ranks_ext = ranks[:b], ranks[b:]
        kernels.update(zip(pts, zip((nv - ranks).tolist(), (nv + 1 - ranks_ext).tolist())))

    out = []
    for pt in points:
        k, check = kernels[pt]
        ramified = is_ramified(n, pt.p)
        dim_z = k + 1 if ramified else k
        if check != dim_z:
            raise InvariantViolation(
                f"extended Jacobian kernel {check} != {dim_z} at {pt.prime}, class {pt.base_class}"
            )
        edim = k + 1
        singular = len(pt.fiber) >= 2
        if singular != (edim >= 2):
            raise InvariantViolation(
                f"fiber of size {len(pt.fiber)} but embedding dimension {edim} at {pt.prime}"
            )
        out.append(PointReport(pt, singular, edim, dim_z, k, ramified, ramified, k))
    return out


def analyze_point(R: GreenRing, pt: PointDescriptor) -> PointReport:
    return analyze_points(R, [pt])[0]


def analyze(
    R: GreenRing,
    primes: Iterable[int] | None = None,
    group: PermGroup | None = None,
    all_points: bool = False,
    seed: int | None = None,
) -> list[PointReport]:
    """Reports for every point above the given primes (default: p | |G|),
    ordered by p, then Q, then base class."""
    if primes is None:
        primes = sorted(factorize(R.order))
    points = []
    for p in sorted(set(primes)):
        points.extend(enumerate_points(R, p, group=group, all_points=all_points, seed=seed))
    return analyze_points(R, points)


def crossing_report(G: PermGroup, p: int) -> list[Crossing]:
    """Fibers of the p-fusion with two or more classes: the components C_c that
    meet above every prime Q over p."""
    return [
        Crossing(base, fiber, len(fiber))
        for base, fiber in _fibers(fusion_map(G, p)).items()
        if len(fiber) >= 2
    ]


def component_count(G: PermGroup) -> int:
    """Irreducible components of C, one per conjugacy class."""
    return len(G.classes)


# --------------------------------------------------------------------------
# abelian groups


def abelian_tangent_dim(G: PermGroup, p: int) -> int:
    """log_p |G / G^p|: the number of primary invariants that are powers of p."""
    return sum(1 for q in abelian_invariants(G) if q % p == 0)


def _dual_group(R: GreenRing):
    s = R.s
    if any(d != 1 for d in R.table.degrees):
        raise ValueError("group is not abelian")
    if (R.alpha.sum(axis=2) != 1).any():
        raise InvariantViolation("products of linear characters are not linear characters")
    mul = R.alpha.argmax(axis=2).tolist()

    def order(a: int) -> int:
        m, x = 1, a
        while x != 0:
            x = mul[x][a]
            m += 1
        return m

    return mul, [order(a) for a in range(s)]


def _span(mul, gens: Sequence[int]) -> set[int]:
    span = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul[x][g]
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


def dual_basis(R: GreenRing, invariants: Sequence[int]) -> list[int]:
    """Linear characters psi_t of orders ``invariants`` generating the dual
    group as a direct product."""
    mul, orders = _dual_group(R)
    target = sorted(invariants, reverse=True)

    def search(chosen: list[int], size: int) -> list[int] | None:
        if len(chosen) == len(target):
            return chosen
        q = target[len(chosen)]
        for a in range(R.s):
            if orders[a] == q and len(_span(mul, chosen + [a])) == size * q:
                found = search(chosen + [a], size * q)
                if found is not None:
                    return found
        return None

    basis = search([], 1)
    if basis is None:
        raise InvariantViolation("no basis of the dual group with the given invariants")
    return basis


def cyclic_presentation_jacobian(
    R: GreenRing, pt: PointDescriptor, invariants: Sequence[int]
) -> FieldMatrix:
    """Jacobian of x_t^{q_t} - 1 (one variable per basis character psi_t of
    order q_t) at the point: diagonal with entries q_t * psi_t(c)^(q_t - 1)."""
    basis = dual_basis(R, invariants)
    mul, orders = _dual_group(R)
    F = pt.prime.field
    diag = []
    for a in basis:
        q = orders[a]
        v = reduce_mod(R.table.values[a][pt.base_class], pt.prime)
        diag.append(v ** (q - 1) * (q % pt.p))
    m = len(diag)
    rows = [[diag[i] if i == j else F.zero for j in range(m)] for i in range(m)]
    return FieldMatrix.from_rows(F, rows, m)

import pytest

from greenring.cyclotomic import is_ramified, primes_above
from greenring.exactmath import FieldMatrix, kernel_dimension
from greenring.greenring import relations
from greenring.groups import abelian_from_invariants, abelian_groups, make_group
from greenring.singular import (
    abelian_tangent_dim,
    analyze,
    analyze_point,
    component_count,
    crossing_report,
    cyclic_presentation_jacobian,
    enumerate_points,
    extended_jacobian,
    jacobian,
    residue_fusion,
)
from greenring.chartable import dixon_character_table
from greenring.greenring import structure_constants

from conftest import SMALL_GROUPS, group, ring

J_P2 = [(2, 1, 0), (1, 1, 0), (1, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]
J_P3 = [(2, 2, 0), (1, 1, 0), (0, 0, 0), (2, 2, 0), (0, 0, 0), (2, 2, 1)]


def _single_point(desc, p):
    pts = enumerate_points(ring(desc), p, group=group(desc))
    assert len(pts) == 1
    return pts[0]


def _matches(M: FieldMatrix, rows, p):
    return [[M[i, j] == rows[i][j] % p for j in range(M.ncols)] for i in range(M.nrows)]


def test_a4_points():
    P2 = _single_point("A4", 2)
    assert str(P2.prime.f) == "x^2 + x + 1" and P2.fiber == (0, 1)
    P3 = _single_point("A4", 3)
    assert str(P3.prime.f) == "x^2 + 1" and P3.fiber == (0, 2, 3)


@pytest.mark.parametrize("p,rows", [(2, J_P2), (3, J_P3)])
def test_a4_jacobians(p, rows):
    pt = _single_point("A4", p)
    J = jacobian(ring("A4"), pt)
    assert (J.nrows, J.ncols) == (6, 3)
    assert all(all(r) for r in _matches(J, rows, p))
    assert kernel_dimension(J) == 1
    rep = analyze_point(ring("A4"), pt)
    assert (rep.edim, rep.dimT_Z, rep.dimT_Zxi) == (2, 2, 1)


def test_s3_and_a5_examples():
    (r2,) = analyze(ring("S3"), primes=[2], group=group("S3"))
    assert (str(r2.point.prime.f), r2.edim, r2.dimT_Z, r2.dimT_Zxi) == ("x^2 + x + 1", 2, 1, 1)
    assert enumerate_points(ring("S3"), 5, group=group("S3")) == []
    R = structure_constants(dixon_character_table(make_group("A5")))
    reps = [r for r in analyze(R, primes=[5]) if str(r.point.prime.f) == "x^2 + 2x + 4"]
    assert [(r.edim, r.dimT_Z, r.dimT_Zxi) for r in reps] == [(2, 2, 1)]


def test_trivial_group():
    R = ring("C1")
    assert analyze(R) == []
    for p in (2, 3):
        for pt in enumerate_points(R, p, all_points=True):
            J = jacobian(R, pt)
            assert (J.nrows, J.ncols) == (0, 0)


def test_extended_jacobian_corner():
    pt = _single_point("A4", 2)
    E = extended_jacobian(ring("A4"), pt)
    assert (E.nrows, E.ncols) == (7, 4)
    assert E[6, 3] == 0  # 2 ramifies in Z[xi_12]
    pt = _single_point("S3", 2)
    assert extended_jacobian(ring("S3"), pt)[3, 2] == 1


@pytest.mark.parametrize("desc", SMALL_GROUPS + ["D16"])
def test_theorem_identities(desc):
    R = ring(desc)
    for rep in analyze(R, group=group(desc), all_points=True):
        k = kernel_dimension(jacobian(R, rep.point))
        ke = kernel_dimension(extended_jacobian(R, rep.point))
        assert rep.edim == rep.dimT_Zxi + 1 == k + 1
        assert rep.dimT_Z - rep.dimT_Zxi == int(rep.ramified) == ke - k
        assert rep.ramified == is_ramified(R.order, rep.point.p)
        assert rep.p_in_P_squared == rep.ramified
        assert rep.singular == (len(rep.point.fiber) >= 2) == (rep.edim >= 2)
        if not rep.singular:
            assert rep.kernel_dim == 0


@pytest.mark.parametrize("desc", SMALL_GROUPS + ["A5"])
def test_fiber_member_independence(desc):
    R = ring(desc) if desc in SMALL_GROUPS else structure_constants(dixon_character_table(group(desc)))
    for p in (2, 3, 5):
        for pt in enumerate_points(R, p, group=group(desc)):
            base = jacobian(R, pt)
            for c in pt.fiber:
                assert jacobian(R, pt, at_class=c) == base


@pytest.mark.parametrize("desc", SMALL_GROUPS)
def test_residue_fusion_equals_group_fusion(desc):
    R = ring(desc)
    for p in (2, 3, 5, 7):
        with_group = enumerate_points(R, p, group=group(desc), all_points=True)
        table_only = enumerate_points(R, p, all_points=True)
        assert with_group == table_only


def test_redundant_relations_do_not_change_kernel():
    # Jacobian kernel does not depend on the presentation: append sums of relations
    R = ring("S4")
    rels = relations(R)
    for pt in enumerate_points(R, 2) + enumerate_points(R, 3):
        F = pt.prime.field
        J = jacobian(R, pt)
        extra = [[a + b for a, b in zip(J.rows()[0], J.rows()[-1])], [2 * x for x in J.rows()[1]]]
        J2 = FieldMatrix.from_rows(F, list(J.rows()) + extra, rels.nvars)
        assert kernel_dimension(J2) == kernel_dimension(J)


def test_crossing_report():
    A4 = group("A4")
    (c3,) = crossing_report(A4, 3)
    assert c3.fiber == (0, 2, 3) and c3.components == 3
    (c2,) = crossing_report(A4, 2)
    assert c2.fiber == (0, 1) and c2.components == 2
    assert crossing_report(A4, 5) == []
    assert component_count(A4) == 4


def test_abelian_tangent_examples():
    assert abelian_tangent_dim(make_group("C2xC4"), 2) == 2
    assert abelian_tangent_dim(make_group("C6"), 2) == 1
    assert abelian_tangent_dim(make_group("C2xC2xC3"), 3) == 1
    with pytest.raises(ValueError):
        abelian_tangent_dim(make_group("S3"), 2)


@pytest.mark.parametrize("n", [4, 6, 8, 9, 12, 16])
def test_abelian_oracle(n):
    for inv in abelian_groups(n):
        G = abelian_from_invariants(inv)
        R = structure_constants(dixon_character_table(G))
        for p in {q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))}:
            want = abelian_tangent_dim(G, p)
            reps = analyze(R, primes=[p], group=G)
            assert reps
            for rep in reps:
                assert rep.dimT_Zxi == want
                Jc = cyclic_presentation_jacobian(R, rep.point, inv)
                assert kernel_dimension(Jc) == rep.kernel_dim


def test_analyze_order_and_prime_filter():
    R = ring("S4")
    reps = analyze(R, group=group("S4"))
    keys = [(r.point.p, r.point.prime.f.sort_key(), r.point.base_class) for r in reps]
    assert keys == sorted(keys)
    assert all(r.point.p == 3 for r in analyze(R, primes=[3]))


def test_group_table_mismatch_rejected():
    with pytest.raises(ValueError):
        enumerate_points(ring("A4"), 2, group=group("C6"))


@pytest.mark.parametrize("desc", ["A4", "S4", "Q8", "C6"])
def test_jacobian_matches_symbolic_gradients(desc):
    from greenring.greenring import evaluate_point

    R = ring(desc)
    rels = relations(R)
    for p in (2, 3):
        for pt in enumerate_points(R, p, all_points=True):
            F = pt.prime.field
            x = [F.one, *evaluate_point(R, pt.base_class, pt.prime)]
            by_hand = FieldMatrix.from_rows(F, [f.gradient(x, rels.nvars) for f in rels], rels.nvars)
            assert jacobian(R, pt) == by_hand

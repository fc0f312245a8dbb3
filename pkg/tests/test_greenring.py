import numpy as np
import pytest

from greenring.cyclotomic import CyclotomicInt, cyclotomic_dot, primes_above
from greenring.greenring import (
    StructureConstantError,
    character_point,
    evaluate_point,
    relations,
    structure_constants,
)
from greenring.chartable import CharacterTable

from conftest import SMALL_GROUPS, ring, table

A4_RELATIONS = [
    "x_2^2 - x_3",
    "x_2*x_3 - 1",
    "x_2*x_4 - x_4",
    "x_3^2 - x_2",
    "x_3*x_4 - x_4",
    "x_4^2 - 1 - x_2 - x_3 - 2*x_4",
]


def test_a4_relations():
    assert [str(f) for f in relations(ring("A4"))] == A4_RELATIONS
    assert relations(ring("A4")).nvars == 3


def test_trivial_and_c2_relations():
    assert len(relations(ring("C1"))) == 0 and relations(ring("C1")).nvars == 0
    assert [str(f) for f in relations(ring("C2"))] == ["x_2^2 - 1"]


def test_a4_products():
    a = ring("A4").alpha
    # chi_4^2 = 1 + chi_2 + chi_3 + 2 chi_4
    assert a[3, 3].tolist() == [1, 1, 1, 2]
    assert a[1, 2].tolist() == [1, 0, 0, 0]


@pytest.mark.parametrize("desc", SMALL_GROUPS + ["A5"])
def test_structure_constant_properties(desc):
    R = ring(desc)
    a, s = R.alpha, R.s
    deg = np.array(R.table.degrees)
    assert (a >= 0).all()
    assert (a == a.transpose(1, 0, 2)).all()
    assert (a[0] == np.eye(s, dtype=a.dtype)).all()
    # degree homomorphism
    assert (a @ deg == np.outer(deg, deg)).all()
    # alpha_ij^1 is 1 exactly when chi_j is the dual of chi_i
    t = R.table
    for i in range(s):
        dual = [j for j in range(s) if all(t.values[j][c] == t.values[i][c].conjugate() for c in range(s))]
        assert [j for j in range(s) if a[i, j, 0]] == dual
        assert a[i, dual[0], 0] == 1


@pytest.mark.parametrize("desc", SMALL_GROUPS)
def test_relations_vanish_at_every_class(desc):
    R = ring(desc)
    for c in range(R.s):
        x = character_point(R, c)
        for f in relations(R):
            assert f.evaluate(x) == 0


@pytest.mark.parametrize("desc", ["C6", "C2xC4", "C2xC2xC3", "C4xC4"])
def test_abelian_tensor_is_a_group_ring(desc):
    from greenring.chartable import dixon_character_table
    from conftest import group

    R = structure_constants(dixon_character_table(group(desc)))
    a = R.alpha
    assert set(np.unique(a)) <= {0, 1}
    for i in range(R.s):
        # row i permutes the characters
        assert (a[i].sum(axis=1) == 1).all() and (a[i].sum(axis=0) == 1).all()


def test_evaluate_point_a4():
    R = ring("A4")
    (Q2,) = primes_above(12, 2)
    (Q3,) = primes_above(12, 3)
    assert [v == 1 for v in evaluate_point(R, 0, Q2)] == [True] * 3
    assert evaluate_point(R, 0, Q3) == (Q3.field.one, Q3.field.one, Q3.field.zero)
    with pytest.raises(ValueError):
        evaluate_point(R, 0, primes_above(6, 2)[0])


def test_broken_table_is_rejected():
    t = table("S3")
    # swap in a non-character: rescale the sign character's value at 3a
    bad_row = (t.values[1][0], t.values[1][1], CyclotomicInt.from_int(6, 2))
    broken = CharacterTable(t.order, t.classes, t.conductor, (t.values[0], bad_row, t.values[2]))
    with pytest.raises(StructureConstantError):
        structure_constants(broken)


def test_requires_full_conductor():
    t = table("C2")
    low = CharacterTable(2, t.classes, 1, tuple(tuple(CyclotomicInt(1, v.coeffs[:1]) for v in row) for row in t.values))
    with pytest.raises(ValueError):
        structure_constants(low)


def test_inner_product_formula_by_hand():
    # alpha recomputed with plain Z[xi] arithmetic for S4
    R = ring("S4")
    t = R.table
    for i in range(R.s):
        for j in range(R.s):
            for k in range(R.s):
                prods = [t.values[i][c] * t.values[j][c] for c in range(R.s)]
                conj = [t.values[k][c].conjugate() for c in range(R.s)]
                total = cyclotomic_dot(list(t.class_sizes), prods, conj)
                assert total == R.order * int(R.alpha[i, j, k])

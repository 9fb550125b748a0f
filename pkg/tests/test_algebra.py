import json
import random

import pytest

from symhom.algebra import (
    FinRankAlgebra,
    builtin_algebra,
    builtin_names,
    change_basis,
    cyclic_group_algebra,
    dump_algebra,
    load_algebra,
    matrix_algebra,
    multiply,
    truncated_polynomial,
    validate,
)


def test_builders_validate():
    for A in (
        truncated_polynomial(1),
        truncated_polynomial(4),
        cyclic_group_algebra(1),
        cyclic_group_algebra(5),
        matrix_algebra(1),
        matrix_algebra(2),
        matrix_algebra(3),
    ):
        assert validate(A) == []


def test_builders_reject_bad_rank():
    with pytest.raises(ValueError):
        truncated_polynomial(0)
    with pytest.raises(ValueError):
        cyclic_group_algebra(0)
    with pytest.raises(ValueError):
        matrix_algebra(0)


def test_multiply_unit():
    A = truncated_polynomial(3)
    for i in range(3):
        e = A.basis_vector(i)
        assert multiply(A, A.unit, e) == e
        assert multiply(A, e, A.unit) == e


def test_truncated_polynomial_relation():
    A = truncated_polynomial(2)
    t = A.basis_vector(1)
    assert multiply(A, t, t) == (0, 0)
    B = truncated_polynomial(4)
    t = B.basis_vector(1)
    t2 = multiply(B, t, t)
    assert t2 == B.basis_vector(2)
    assert multiply(B, t2, t2) == (0,) * 4


def test_cyclic_group_law():
    A = cyclic_group_algebra(3)
    g, g2 = A.basis_vector(1), A.basis_vector(2)
    assert multiply(A, g, g2) == A.basis_vector(0)
    assert A.is_commutative()


def test_cyclic_rank_one_is_integers():
    A = cyclic_group_algebra(1)
    assert A.rank == 1
    assert multiply(A, (3,), (4,)) == (12,)


def test_matrix_units():
    A = matrix_algebra(2)
    e12 = A.basis_vector(A.basis_labels.index("E12"))
    e21 = A.basis_vector(A.basis_labels.index("E21"))
    e11 = A.basis_vector(A.basis_labels.index("E11"))
    assert multiply(A, e12, e21) == e11
    assert multiply(A, e12, e12) == (0,) * 4
    assert not A.is_commutative()


def test_multiply_length_mismatch():
    A = truncated_polynomial(2)
    with pytest.raises(ValueError):
        multiply(A, (1,), (0, 1))


def test_builtin_registry():
    assert builtin_algebra("trunc-poly-2").label == "Z[t]/(t^2)"
    assert builtin_algebra("cyclic-5").label == "Z[C_5]"
    assert builtin_algebra("matrix-2").label == "M_2(Z)"
    with pytest.raises(ValueError):
        builtin_algebra("frobenius-3")
    assert "cyclic-N" in builtin_names()


def test_dump_load_round_trip():
    for name in ("trunc-poly-2", "cyclic-3", "matrix-2"):
        A = builtin_algebra(name)
        B = load_algebra(dump_algebra(A))
        assert B == A


def test_load_rejects_broken_associativity():
    A = truncated_polynomial(3)
    doc = json.loads(dump_algebra(A))
    # t*t = 1 while t*t^2 stays 0: then (t*t)*t^2 = t^2 but t*(t*t^2) = 0
    doc["mul"][1][1] = [1, 0, 0]
    with pytest.raises(ValueError) as err:
        load_algebra(json.dumps(doc))
    assert "associativity fails at triple" in str(err.value)


def test_load_rejects_broken_unit():
    A = truncated_polynomial(2)
    doc = json.loads(dump_algebra(A))
    doc["unit"] = [0, 1]
    with pytest.raises(ValueError) as err:
        load_algebra(json.dumps(doc))
    assert "unit axiom" in str(err.value)


def test_load_rejects_malformed():
    with pytest.raises(ValueError):
        load_algebra("not json at all {")
    with pytest.raises(ValueError):
        load_algebra(json.dumps({"rank": 1, "basis": ["1"], "unit": [1]}))
    with pytest.raises(ValueError):
        load_algebra(
            json.dumps(
                {"rank": 2, "basis": ["1"], "unit": [1, 0], "mul": [[[1, 0]]]}
            )
        )


def test_load_accepts_decimal_strings():
    big = 10**40
    doc = {
        "rank": 1,
        "basis": ["1"],
        "unit": ["1"],
        "mul": [[[str(1)]]],
        "label": "Z",
    }
    A = load_algebra(json.dumps(doc))
    assert multiply(A, (big,), (big,)) == (big * big,)


def test_change_basis_preserves_validity():
    rng = random.Random(0)
    A = builtin_algebra("cyclic-3")
    for _ in range(10):
        n = A.rank
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(3 * n):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randint(-2, 2)
                rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        cols = [[rows[i][j] for i in range(n)] for j in range(n)]
        B = change_basis(A, cols)
        assert validate(B) == []


def test_constructor_rejects_invalid_table():
    mul = (((0, 1), (1, 0)), ((1, 0), (0, 1)))  # 1*1 = t: no unit element
    with pytest.raises(ValueError):
        FinRankAlgebra(2, ("1", "t"), (1, 0), mul)


def test_mul_table_symmetry_detects_commutativity():
    assert cyclic_group_algebra(6).is_commutative()
    assert truncated_polynomial(5).is_commutative()
    assert not matrix_algebra(3).is_commutative()

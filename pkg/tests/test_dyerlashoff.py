import pytest

from symhom.dyerlashoff import (
    OperationDescriptor,
    is_prime,
    nu,
    operation_descriptor,
    pi_embedding,
    w_complex,
)
from symhom.homalg import IntMatrix, homology_mod_p, matmul, rank_mod_p
from symhom.perm import compose, identity


def test_w_complex_p2_matrices():
    w = w_complex(2, 4)
    ones = ((1, 1), (1, 1))
    for degree in (1, 2, 3, 4):
        assert w.differential(degree).entries == ones


def test_w_complex_d_squared_zero():
    for p in (2, 3, 5):
        w = w_complex(p, 10)
        for degree in range(2, 11):
            prod = matmul(w.differential(degree - 1), w.differential(degree))
            assert all(x % p == 0 for row in prod.entries for x in row)


def test_w_complex_homology_vanishes_in_middle_degrees():
    for p in (2, 3, 5):
        w = w_complex(p, 10)
        for degree in range(1, 10):
            h = homology_mod_p(w.differential(degree + 1), w.differential(degree), p)
            assert h.is_trivial(), (p, degree)


def test_w_complex_degree_zero_homology():
    for p in (2, 3, 5):
        w = w_complex(p, 3)
        # H_0 = coker(tau - 1) on Z/p^p has dimension 1
        h = homology_mod_p(w.differential(1), IntMatrix.zero(0, p), p)
        assert h.torsion == (p,)


def test_w_complex_rejects_bad_input():
    with pytest.raises(ValueError):
        w_complex(4, 3)
    with pytest.raises(ValueError):
        w_complex(3, 0)
    with pytest.raises(ValueError):
        w_complex(3, 3).differential(4)


def test_pi_embedding_values():
    assert pi_embedding(2).cycle_string() == "(1 2)"
    p3 = pi_embedding(3)
    assert p3.images == (3, 1, 2)
    assert p3.cycle_string() == "(1 3 2)"


def test_pi_embedding_order_and_free_action():
    for p in (2, 3, 5, 7):
        tau = pi_embedding(p)
        assert tau.order() == p
        power = tau
        for _ in range(p - 1):
            assert all(power(i) != i for i in range(1, p + 1))
            power = compose(power, tau)
        assert power == identity(p)


def test_nu_frozen_values():
    assert nu(0, 0, 3) == 1
    assert nu(0, 1, 3) == 2  # -1 mod 3
    assert nu(2, 1, 5) == 1  # (-1)^3 * (2!)^2 = -4


def test_nu_period_two_in_s():
    for p in (3, 5, 7):
        for q in range(5):
            for s in range(4):
                assert nu(q, s, p) == nu(q, s + 2, p)
                assert (nu(q, s, p) + nu(q, s + 1, p)) % p == 0


def test_nu_rejects_p2_and_non_primes():
    with pytest.raises(ValueError):
        nu(1, 1, 2)
    with pytest.raises(ValueError):
        nu(1, 1, 9)


def test_descriptor_p2_boundary_case():
    d = operation_descriptor(2, "P", 3, 3)
    assert not d.vanishes
    assert d.d_index == 0
    assert d.target_degree == 6  # 2q at the s = q boundary


def test_descriptor_p2_degree_consistency():
    # q+s must equal pq + (s-q) whenever the operation survives
    for q in range(6):
        for s in range(6):
            d = operation_descriptor(2, "P", s, q)
            assert d.target_degree == q + s
            if not d.vanishes:
                under = operation_descriptor(2, "D", d.d_index, q)
                assert under.target_degree == d.target_degree


def test_descriptor_odd_prime_cases():
    d = operation_descriptor(3, "P", 1, 3)  # 2s < q
    assert d.vanishes and d.coefficient == 0
    d = operation_descriptor(3, "betaP", 1, 2)  # 2s = q
    assert d.vanishes and d.coefficient == 0
    d = operation_descriptor(3, "P", 2, 3)
    assert not d.vanishes
    assert d.target_degree == 3 + 2 * 2 * 2
    assert d.d_index == (2 * 2 - 3) * 2
    assert d.coefficient == nu(3, 2, 3)
    d = operation_descriptor(3, "betaP", 2, 3)
    assert d.target_degree == 3 + 2 * 2 * 2 - 1
    assert d.d_index == (2 * 2 - 3) * 2 - 1


def test_descriptor_d_maps():
    for p in (2, 3):
        for i in range(4):
            for q in range(4):
                d = operation_descriptor(p, "D", i, q)
                assert d.target_degree == p * q + i
                assert not d.vanishes and d.coefficient == 1


def test_descriptor_underlying_degree_agreement_odd():
    # target of P_s equals target of the underlying D map: pq + (2s-q)(p-1)
    for p in (3, 5):
        for q in range(6):
            for s in range(6):
                d = operation_descriptor(p, "P", s, q)
                if not d.vanishes:
                    assert d.target_degree == p * q + d.d_index


def test_descriptor_rejects_bad_combinations():
    with pytest.raises(ValueError):
        operation_descriptor(2, "betaP", 1, 1)
    with pytest.raises(ValueError):
        operation_descriptor(6, "P", 1, 1)
    with pytest.raises(ValueError):
        operation_descriptor(3, "Q", 1, 1)
    with pytest.raises(ValueError):
        operation_descriptor(3, "P", -1, 1)


def test_descriptor_json():
    d = operation_descriptor(3, "P", 2, 1)
    doc = d.to_json_dict()
    assert doc == {
        "p": 3,
        "kind": "P",
        "s": 2,
        "q": 1,
        "target_degree": 1 + 2 * 2 * 2,
        "vanishes": False,
        "coefficient": nu(1, 2, 3),
    }
    assert '"kind":"P"' in d.to_json()


def test_descriptor_coefficient_invariant():
    with pytest.raises(ValueError):
        OperationDescriptor(3, "P", 1, 1, 5, vanishes=True, coefficient=2)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

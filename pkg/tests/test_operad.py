import itertools
import random

import pytest

from symhom import ncset
from symhom.ncset import NCMorphism, from_permutation, nc_identity
from symhom.operad import (
    DOperadElement,
    check_operad_axioms,
    delta,
    k_project,
    k_pseudo_compose,
    mu,
    mu_on_morphisms,
)
from symhom.perm import (
    act_on_list,
    all_permutations,
    block_permutation,
    compose as pcompose,
    direct_sum,
    identity as perm_identity,
    parse_cycles,
)
from tests.test_ncset import all_morphisms, random_morphism


def test_delta_units():
    for m in range(4):
        for sigma in all_permutations(m):
            assert delta(sigma, (perm_identity(1),) * m) == sigma
    for tau in all_permutations(3):
        assert delta(perm_identity(1), (tau,)) == tau
    assert delta(perm_identity(2), (perm_identity(2), perm_identity(3))).is_identity()


def test_delta_frozen_example():
    got = delta(parse_cycles("(1 2)"), (perm_identity(2), perm_identity(1)))
    assert got == block_permutation(parse_cycles("(1 2)"), (2, 1))


def test_delta_arity_mismatch():
    with pytest.raises(ValueError):
        delta(perm_identity(2), (perm_identity(1),))


def test_mu_left_unit():
    rng = random.Random(0)
    for _ in range(30):
        f = random_morphism(rng, rng.randint(0, 4))
        assert mu(perm_identity(1), (f,)) == f


def test_mu_swap_of_points():
    got = mu(parse_cycles("(1 2)"), (nc_identity(1), nc_identity(1)))
    assert got == NCMorphism(2, ((2,), (1,)))
    assert got == from_permutation(parse_cycles("(1 2)"))


def fiberwise_mu_oracle(sigma, fs):
    """Juxtapose the fiber partitions with shifted letters, then reorder the
    list of target fibers by the left action of sigma on whole blocks."""
    shifted_blocks = []
    offset = 0
    for f in fs:
        shifted_blocks.append(
            [tuple(x + offset for x in fiber) for fiber in f.fibers]
        )
        offset += f.source_size
    reordered = act_on_list(sigma, shifted_blocks)
    fibers = tuple(fiber for block in reordered for fiber in block)
    return NCMorphism(offset, fibers)


def test_mu_against_fiber_level_oracle():
    rng = random.Random(1)
    for sigma in all_permutations(3):
        for _ in range(40):
            fs = [
                random_morphism(rng, rng.randint(0, 2), rng.randint(1, 2))
                for _ in range(3)
            ]
            assert mu(sigma, fs) == fiberwise_mu_oracle(sigma, fs)


def test_mu_arity_mismatch():
    with pytest.raises(ValueError):
        mu(perm_identity(2), (nc_identity(1),))


def test_mu_on_morphisms_identity_cases():
    rng = random.Random(2)
    for m in (1, 2, 3):
        for sigma in all_permutations(m):
            fs = [random_morphism(rng, rng.randint(0, 2)) for _ in range(m)]
            gs = [nc_identity(f.target_size) for f in fs]
            src, conn, tgt = mu_on_morphisms(sigma, sigma, fs, gs)
            assert conn == nc_identity(src.target_size)
            assert src == tgt


def test_mu_on_morphisms_arity_one_is_g():
    rng = random.Random(3)
    for _ in range(20):
        f = random_morphism(rng, rng.randint(0, 3))
        g = random_morphism(rng, f.target_size)
        src, conn, tgt = mu_on_morphisms(
            perm_identity(1), perm_identity(1), (f,), (g,)
        )
        assert conn == g
        assert src == f and tgt == ncset.compose(g, f)


def test_mu_on_morphisms_functoriality():
    rng = random.Random(4)
    for _ in range(200):
        m = rng.randint(1, 3)
        sigma = rng.choice(all_permutations(m))
        tau = rng.choice(all_permutations(m))
        fs = [random_morphism(rng, rng.randint(0, 2), rng.randint(1, 2)) for _ in range(m)]
        gs = [random_morphism(rng, f.target_size, rng.randint(1, 2)) for f in fs]
        src, conn, tgt = mu_on_morphisms(sigma, tau, fs, gs)
        assert ncset.compose(conn, src) == tgt


def test_k_project_is_operad_map():
    # projecting the composite equals composing the projections
    rng = random.Random(5)
    for _ in range(100):
        m = rng.randint(1, 3)
        f0 = random_morphism(rng, m)
        fs = [random_morphism(rng, rng.randint(0, 2)) for _ in range(m)]
        lhs = k_project(k_pseudo_compose(f0, fs))
        rhs = delta(k_project(f0), [k_project(f) for f in fs])
        assert lhs == rhs


def test_k_pseudo_compose_unit_like_cases():
    rng = random.Random(6)
    for _ in range(20):
        f = random_morphism(rng, rng.randint(0, 3))
        assert k_pseudo_compose(nc_identity(1), (f,)) == f


def test_k_pseudo_compose_associativity():
    rng = random.Random(7)
    for _ in range(150):
        m = rng.randint(1, 2)
        f0 = random_morphism(rng, m, rng.randint(1, 2))
        fs = [random_morphism(rng, rng.randint(0, 2), rng.randint(1, 2)) for _ in range(m)]
        hs = []
        blocks = []
        for f in fs:
            hs_f = [
                random_morphism(rng, rng.randint(0, 2), rng.randint(1, 2))
                for _ in range(f.source_size)
            ]
            blocks.append(hs_f)
            hs.extend(hs_f)
        lhs = k_pseudo_compose(k_pseudo_compose(f0, fs), hs)
        rhs = k_pseudo_compose(
            f0, [k_pseudo_compose(f, tuple(b)) for f, b in zip(fs, blocks)]
        )
        assert lhs == rhs


def test_k_pseudo_compose_equivariance_instance():
    # an instance of equivariance B through the projection
    rng = random.Random(8)
    for _ in range(50):
        m = rng.randint(1, 2)
        f0 = random_morphism(rng, m, rng.randint(1, 2))
        fs = [random_morphism(rng, rng.randint(0, 2), rng.randint(1, 2)) for _ in range(m)]
        taus = [rng.choice(all_permutations(f.source_size)) for f in fs]
        lhs = k_pseudo_compose(
            f0, [ncset.right_action(f, t) for f, t in zip(fs, taus)]
        )
        rhs = ncset.right_action(k_pseudo_compose(f0, fs), direct_sum(taus))
        assert lhs == rhs


def test_k_pseudo_compose_arity_mismatch():
    with pytest.raises(ValueError):
        k_pseudo_compose(nc_identity(2), (nc_identity(1),))


def test_doperad_element_validation():
    DOperadElement(2, parse_cycles("(1 2)"))
    DOperadElement(2, parse_cycles("(1 2)"), (perm_identity(2), parse_cycles("(1 2)")))
    with pytest.raises(ValueError):
        DOperadElement(3, parse_cycles("(1 2)"))
    with pytest.raises(ValueError):
        DOperadElement(2, parse_cycles("(1 2)"), ())
    with pytest.raises(ValueError):
        DOperadElement(2, parse_cycles("(1 2)"), (perm_identity(3),))


def test_check_operad_axioms_arity_one():
    report = check_operad_axioms(1)
    assert report.passed
    assert all(c.cases > 0 for c in report.checks)


def test_check_operad_axioms_rejects_bad_arity():
    with pytest.raises(ValueError):
        check_operad_axioms(0)


def test_check_operad_axioms_report_shape():
    report = check_operad_axioms(2)
    assert report.passed
    d = report.to_json_dict()
    assert d["passed"] is True and d["max_arity"] == 2
    names = [c["axiom"] for c in d["checks"]]
    assert "delta equivariance A" in names and "mu module associativity" in names


def test_chains_name_nerve_simplices():
    # a simplex of the nerve of the arity-m groupoid is its vertex run,
    # which is exactly what DOperadElement.chain stores
    from symhom.perm import Permutation
    from symhom.simplicial import es_symmetric_group, nerve_truncated

    nerve = nerve_truncated(es_symmetric_group(2), 2)
    for chain in nerve.simplices[2]:
        # morphism names in the translation groupoid are (src, dst) pairs
        vertices = (chain[0][0], chain[0][1], chain[1][1])
        elem = DOperadElement(
            2,
            Permutation(vertices[-1]),
            tuple(Permutation(v) for v in vertices),
        )
        assert len(elem.chain) == 3


def test_corrupted_delta_fails_equivariance_a():
    # dropping the block reorder leaves only the direct sum
    def bad_delta(sigma, taus):
        return direct_sum(tuple(taus))

    report = check_operad_axioms(2, delta_fn=bad_delta)
    assert not report.passed
    failed = {c.axiom for c in report.checks if not c.passed}
    assert "delta equivariance A" in failed
    bad = next(c for c in report.checks if c.axiom == "delta equivariance A")
    assert bad.counterexample is not None

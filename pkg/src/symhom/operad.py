"""Symmetric-group operad structure and its module of non-commutative sets.

Arity m of the operad is carried by the symmetric group S_m (the object
set of the contractible groupoid on S_m); its composition is

    delta(sigma; tau_1, ..., tau_m) = sigma{k_1, ..., k_m} (tau_1 (+) ... (+) tau_m),

with the right S_m-action given by right multiplication.  The
under-categories of non-commutative sets with fixed source m form a module
over this operad via

    mu(sigma; f_1, ..., f_m) = sigma{p_1, ..., p_m} ∘ (f_1 ⊙ ... ⊙ f_m),

where p_s is the target size of f_s.  Dropping the units, the module
carries a pseudo-operad composition of its own: project the outer
morphism to its isomorphism part and apply mu.

``check_operad_axioms`` verifies the defining diagrams (associativity,
units, both equivariance conditions, and the module analogues) by
exhaustive enumeration at small arity; the diagrams quantify over finitely
many cases at that scale, so the enumeration is complete there.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .perm import (
    Permutation,
    act_on_list,
    all_permutations,
    block_permutation,
    compose as pcompose,
    direct_sum,
    identity as perm_identity,
)
from . import ncset
from .ncset import NCMorphism

# Objects of the module category in arity m are just morphisms out of m.
KObject = NCMorphism


@dataclass(frozen=True)
class DOperadElement:
    """An arity-m operad element: a permutation, optionally with a chain.

    ``chain`` (a nonempty run of permutations in S_m) names a simplex of
    the nerve of the arity-m groupoid; it is only carried along for
    chain-level tests, the operad structure acts through ``value``.
    """

    arity: int
    value: Permutation
    chain: tuple[Permutation, ...] | None = None

    def __post_init__(self):
        if self.value.n != self.arity:
            raise ValueError(f"degree {self.value.n} element in arity {self.arity}")
        if self.chain is not None:
            if not self.chain:
                raise ValueError("chain must be nonempty")
            if any(p.n != self.arity for p in self.chain):
                raise ValueError("chain degrees must all match the arity")


def delta(sigma: Permutation, taus: Sequence[Permutation]) -> Permutation:
    """Operad composition: sigma{k_1, ..., k_m} (tau_1 (+) ... (+) tau_m)."""
    if len(taus) != sigma.n:
        raise ValueError(f"{len(taus)} arguments for arity {sigma.n}")
    sizes = tuple(t.n for t in taus)
    return pcompose(block_permutation(sigma, sizes), direct_sum(taus))


def mu(sigma: Permutation, fs: Sequence[NCMorphism]) -> NCMorphism:
    """Module structure map: sigma{p_1, ..., p_m} ∘ (f_1 ⊙ ... ⊙ f_m)."""
    if len(fs) != sigma.n:
        raise ValueError(f"{len(fs)} arguments for arity {sigma.n}")
    targets = tuple(f.target_size for f in fs)
    prod = ncset.monoidal_product_all(fs)
    bp = block_permutation(sigma, targets)
    # composing with an iso on the left just reorders the fibers
    fibers = act_on_list(bp, prod.fibers)
    return ncset._unsafe_ncm(prod.source_size, fibers)


def mu_on_morphisms(
    sigma: Permutation,
    tau: Permutation,
    fs: Sequence[NCMorphism],
    gs: Sequence[NCMorphism],
) -> tuple[NCMorphism, NCMorphism, NCMorphism]:
    """Value of mu on the morphism (tau sigma^-1; g_1, ..., g_m).

    Returns (mu(sigma, fs), connecting, mu(tau, [g∘f])) where the
    connecting morphism is (tau sigma^-1){q reordered by sigma} ∘ (⊙ of the
    g_s reordered by sigma); composing it with the first component gives
    the third (functoriality).
    """
    m = sigma.n
    if not (len(fs) == len(gs) == m == tau.n):
        raise ValueError("arity mismatch")
    for f, g in zip(fs, gs):
        if g.source_size != f.target_size:
            raise ValueError("g_i not composable with f_i")
    qs = tuple(g.target_size for g in gs)
    sigma_inv = sigma.inverse()
    reordered = [gs[sigma_inv(s) - 1] for s in range(1, m + 1)]
    conn_perm = block_permutation(pcompose(tau, sigma_inv), act_on_list(sigma, qs))
    connecting = ncset.compose(
        ncset.from_permutation(conn_perm), ncset.monoidal_product_all(reordered)
    )
    source = mu(sigma, fs)
    target = mu(tau, [ncset.compose(g, f) for f, g in zip(fs, gs)])
    return source, connecting, target


def k_project(f: NCMorphism) -> Permutation:
    """Projection onto the isomorphism part of the unique factorization."""
    return ncset.decompose(f)[1]


def k_pseudo_compose(f0: NCMorphism, fs: Sequence[NCMorphism]) -> NCMorphism:
    """Pseudo-operad composition on the module: mu after projecting f0."""
    if f0.source_size != len(fs):
        raise ValueError(f"{len(fs)} arguments for source size {f0.source_size}")
    return mu(k_project(f0), fs)


# ---------------------------------------------------------------------------
# Axiom checking by exhaustive enumeration.


@dataclass
class AxiomCheck:
    axiom: str
    arity: int  # the sweep bound the axiom was checked under
    cases: int
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


@dataclass
class OperadCheckReport:
    max_arity: int
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "max_arity": self.max_arity,
            "passed": self.passed,
            "checks": [
                {
                    "axiom": c.axiom,
                    "arity": c.arity,
                    "cases": c.cases,
                    **(
                        {"counterexample": c.counterexample}
                        if c.counterexample is not None
                        else {}
                    ),
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[Permutation, ...]:
    return tuple(all_permutations(n))


@lru_cache(maxsize=None)
def _kobjects(source: int, max_target: int) -> tuple[NCMorphism, ...]:
    """All morphisms out of ``source`` with target size at most ``max_target``."""
    out = []
    for target in range(0 if source == 0 else 1, max_target + 1):
        for assignment in itertools.product(range(target), repeat=source):
            groups: list[list[int]] = [[] for _ in range(target)]
            for letter, t in enumerate(assignment, start=1):
                groups[t].append(letter)
            for ordered in itertools.product(
                *(itertools.permutations(g) for g in groups)
            ):
                out.append(NCMorphism(source, tuple(ordered)))
    return tuple(out)


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All tuples of ``parts`` non-negatives summing to ``total``."""
    if parts == 0:
        return [()] if total == 0 else []
    return [
        (head,) + rest
        for head in range(total + 1)
        for rest in _compositions(total - head, parts - 1)
    ]


def _shapes(max_arity: int) -> list[tuple[int, tuple[int, ...]]]:
    """(outer arity k, inner arities (j_1..j_k)) with k and sum(j) <= max_arity."""
    out = []
    for k in range(max_arity + 1):
        for total in range(max_arity + 1):
            out.extend((k, js) for js in _compositions(total, k))
    return out


def check_operad_axioms(
    max_arity: int,
    delta_fn: Callable[..., Permutation] = delta,
    mu_fn: Callable[..., NCMorphism] = mu,
    max_kobj_source: int = 2,
    max_kobj_target: int = 2,
) -> OperadCheckReport:
    """Exhaustively verify the operad and module diagrams at small arity.

    Every arity appearing in a diagram (the outer arity, each inner arity,
    and their sums) is bounded by ``max_arity``; module arguments range
    over all morphisms with source and target sizes at most
    ``max_kobj_source`` / ``max_kobj_target``.  Injectable ``delta_fn`` /
    ``mu_fn`` let tests probe corrupted structure maps.
    """
    if max_arity < 1:
        raise ValueError("max_arity must be at least 1")
    report = OperadCheckReport(max_arity=max_arity)

    def run(axiom: str, gen) -> None:
        cases = 0
        counterexample = None
        for label in gen:
            cases += 1
            if label is not None:
                counterexample = label
                break
        report.checks.append(AxiomCheck(axiom, max_arity, cases, counterexample))

    def describe(**kw) -> dict:
        return {k: str(v) for k, v in kw.items()}

    # --- operad layer -----------------------------------------------------
    def gen_delta_assoc():
        for k, js in _shapes(max_arity):
            j = sum(js)
            for i_total in range(max_arity + 1):
                for iss in _compositions(i_total, j):
                    blocks = _split(iss, js)
                    for sigma in _perms(k):
                        for taus in itertools.product(*(_perms(n) for n in js)):
                            for rhos in itertools.product(*(_perms(n) for n in iss)):
                                lhs = delta_fn(delta_fn(sigma, taus), rhos)
                                inner = [
                                    delta_fn(taus[s], rhos[b0:b1])
                                    for s, (b0, b1) in enumerate(blocks)
                                ]
                                rhs = delta_fn(sigma, inner)
                                yield (
                                    None
                                    if lhs == rhs
                                    else describe(sigma=sigma, taus=taus, rhos=rhos)
                                )

    def gen_delta_units():
        one = perm_identity(1)
        for j in range(max_arity + 1):
            for tau in _perms(j):
                left = delta_fn(one, (tau,))
                right = delta_fn(tau, (one,) * j)
                ok = left == tau and right == tau
                yield None if ok else describe(tau=tau)

    def gen_delta_equiv_a():
        for k, js in _shapes(max_arity):
            for c in _perms(k):
                for sigma in _perms(k):
                    for taus in itertools.product(*(_perms(n) for n in js)):
                        lhs = delta_fn(pcompose(c, sigma), taus)
                        reordered = act_on_list(sigma, taus)
                        rhs = pcompose(
                            delta_fn(c, reordered), block_permutation(sigma, js)
                        )
                        yield (
                            None
                            if lhs == rhs
                            else describe(c=c, sigma=sigma, taus=taus, sizes=js)
                        )

    def gen_delta_equiv_b():
        for k, js in _shapes(max_arity):
            for c in _perms(k):
                for ds in itertools.product(*(_perms(n) for n in js)):
                    for taus in itertools.product(*(_perms(n) for n in js)):
                        lhs = delta_fn(c, tuple(map(pcompose, ds, taus)))
                        rhs = pcompose(delta_fn(c, ds), direct_sum(taus))
                        yield (
                            None
                            if lhs == rhs
                            else describe(c=c, ds=ds, taus=taus)
                        )

    # --- module layer ------------------------------------------------------
    def gen_mu_assoc():
        for m, ks in _shapes(max_arity):
            total = sum(ks)
            blocks = _split((0,) * total, ks)
            for sigma in _perms(m):
                for taus in itertools.product(*(_perms(n) for n in ks)):
                    for fs in itertools.product(
                        *(_kobjects_any(max_kobj_source, max_kobj_target),) * total
                    ):
                        lhs = mu_fn(delta_fn(sigma, taus), fs)
                        inner = [
                            mu_fn(taus[s], fs[b0:b1])
                            for s, (b0, b1) in enumerate(blocks)
                        ]
                        rhs = mu_fn(sigma, inner)
                        yield (
                            None
                            if lhs == rhs
                            else describe(sigma=sigma, taus=taus, fs=fs)
                        )

    def gen_mu_unit():
        one = perm_identity(1)
        for f in _kobjects_any(max_kobj_source, max_kobj_target):
            yield None if mu_fn(one, (f,)) == f else describe(f=f)

    def gen_mu_equiv_a():
        for m in range(max_arity + 1):
            for c in _perms(m):
                for sigma in _perms(m):
                    for fs in itertools.product(
                        *(_kobjects_any(max_kobj_source, max_kobj_target),) * m
                    ):
                        js = tuple(f.source_size for f in fs)
                        lhs = mu_fn(pcompose(c, sigma), fs)
                        reordered = act_on_list(sigma, fs)
                        rhs = ncset.right_action(
                            mu_fn(c, reordered), block_permutation(sigma, js)
                        )
                        yield (
                            None
                            if lhs == rhs
                            else describe(c=c, sigma=sigma, fs=fs)
                        )

    def gen_mu_equiv_b():
        for m in range(max_arity + 1):
            for c in _perms(m):
                for fs in itertools.product(
                    *(_kobjects_any(max_kobj_source, max_kobj_target),) * m
                ):
                    for taus in itertools.product(
                        *(_perms(f.source_size) for f in fs)
                    ):
                        lhs = mu_fn(
                            c,
                            tuple(
                                ncset.right_action(f, t) for f, t in zip(fs, taus)
                            ),
                        )
                        rhs = ncset.right_action(mu_fn(c, fs), direct_sum(taus))
                        yield (
                            None
                            if lhs == rhs
                            else describe(c=c, fs=fs, taus=taus)
                        )

    run("delta associativity", gen_delta_assoc())
    run("delta units", gen_delta_units())
    run("delta equivariance A", gen_delta_equiv_a())
    run("delta equivariance B", gen_delta_equiv_b())
    run("mu module associativity", gen_mu_assoc())
    run("mu left unit", gen_mu_unit())
    run("mu equivariance A", gen_mu_equiv_a())
    run("mu equivariance B", gen_mu_equiv_b())
    return report


def _split(items, sizes):
    """Half-open index ranges cutting ``items`` into blocks of ``sizes``."""
    out = []
    pos = 0
    for s in sizes:
        out.append((pos, pos + s))
        pos += s
    return out


@lru_cache(maxsize=None)
def _kobjects_any(max_source: int, max_target: int) -> tuple[NCMorphism, ...]:
    out = []
    for source in range(max_source + 1):
        out.extend(_kobjects(source, max_target))
    return tuple(out)

"""Per-algebra homology reports and the seven-row computation table.

A report carries the invariants of HS_0 and HS_1, whether HS_1 is cyclic
over HS_0, and the relations satisfied by the chosen generator.  The
generator is deterministic: the lexicographically first nonzero class (in
the group's own coordinates) whose orbit under the basis actions spans
HS_1.  Relations list the additive order of u and the action of every
non-unit basis class on it, so rows like "2u=0, t^2*u=0" can be read off
directly.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .algebra import FinRankAlgebra, builtin_algebra
from .hs import HsClass, hs0, hs0_class, hs1, hs1_class, module_action, unit_class

TABLE_BUILTINS = (
    "trunc-poly-2",
    "trunc-poly-3",
    "trunc-poly-4",
    "cyclic-2",
    "cyclic-3",
    "cyclic-4",
    "cyclic-5",
)


def _group_elements(torsion: Sequence[int]):
    return itertools.product(*(range(t) for t in torsion))


def _additive_span(vectors, torsion):
    """All sums of the given coordinate tuples inside (+) Z/t_i."""
    span = {tuple([0] * len(torsion))}
    frontier = list(span)
    while frontier:
        base = frontier.pop()
        for v in vectors:
            s = tuple((a + b) % t for a, b, t in zip(base, v, torsion))
            if s not in span:
                span.add(s)
                frontier.append(s)
    return span


def _orbit_span(A: FinRankAlgebra, u: HsClass):
    """The HS_0-submodule generated by u, as a set of coordinate tuples."""
    group = hs1(A)
    torsion = group.torsion
    basis_classes = [hs0_class(A, A.basis_vector(i)) for i in range(A.rank)]
    orbit = [u.coordinates]
    span = _additive_span(orbit, torsion)
    frontier = [u]
    while frontier:
        z = frontier.pop()
        for b in basis_classes:
            w = module_action(A, b, z)
            if w.coordinates not in span:
                orbit.append(w.coordinates)
                span = _additive_span(orbit, torsion)
                frontier.append(w)
    return span


def module_structure(A: FinRankAlgebra) -> dict:
    """Cyclicity of HS_1 over HS_0 and the generator's relations.

    Only meaningful for finite HS_1 (all table rows are); a free part
    would make the generator search non-enumerable and is reported as
    not-analyzed.
    """
    group = hs1(A)
    if group.is_trivial():
        return {"module_cyclic": True, "generator": None, "generator_relations": []}
    if group.free_rank:
        return {"module_cyclic": None, "generator": None, "generator_relations": []}
    full = set(_group_elements(group.torsion))
    generator = None
    for coords in sorted(full):
        if not any(coords):
            continue
        u = hs1_class(A, group.representative(coords))
        if _orbit_span(A, u) == full:
            generator = u
            break
    if generator is None:
        return {"module_cyclic": False, "generator": None, "generator_relations": []}

    relations = []
    # additive order of u
    order = 1
    while any((order * c) % t for c, t in zip(generator.coordinates, group.torsion)):
        order += 1
    relations.append(f"{order}u=0")
    unit = unit_class(A)
    for i in range(A.rank):
        cls = hs0_class(A, A.basis_vector(i))
        if cls == unit:
            continue
        label = A.basis_labels[i]
        w = module_action(A, cls, generator)
        if w.is_zero():
            relations.append(f"{label}*u=0")
        else:
            relations.append(f"{label}*u={list(w.coordinates)}".replace(" ", ""))
    return {
        "module_cyclic": True,
        "generator": list(generator.coordinates),
        "generator_relations": relations,
    }


def hs_report(A: FinRankAlgebra, label: str | None = None) -> dict:
    structure = module_structure(A)
    return {
        "algebra": label if label is not None else A.describe(),
        "hs0": hs0(A).to_json_dict(),
        "hs1": hs1(A).to_json_dict(),
        "module_cyclic": structure["module_cyclic"],
        "generator_relations": structure["generator_relations"],
    }


def make_table(parallel: bool = True) -> list[dict]:
    """The seven-row table, in fixed row order."""
    algebras = [builtin_algebra(name) for name in TABLE_BUILTINS]
    if parallel:
        with ThreadPoolExecutor(max_workers=4) as pool:
            return list(pool.map(hs_report, algebras))
    return [hs_report(A) for A in algebras]

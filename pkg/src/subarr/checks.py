"""Structural self-checks run by ``subarr check``.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
property, so a whole suite can be reported at once.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .classify import classify, codim_sum_test, direct_sum_test
from .cohomology import betti_euler_characteristic, betti_numbers, euler_characteristic
from .dga import GradedDga, members
from .errors import DisagreementError
from .lattice import IntersectionLattice, join

# exhaustive pair checks above this many basis pairs fall back to sampling
PAIR_BUDGET = 1 << 14


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _pairs(n_subsets: int, rng: random.Random):
    if n_subsets * n_subsets <= PAIR_BUDGET:
        for s in range(n_subsets):
            for t in range(n_subsets):
                yield s, t
    else:
        for _ in range(PAIR_BUDGET):
            yield rng.randrange(n_subsets), rng.randrange(n_subsets)


def check_d_squared(dga: GradedDga) -> CheckResult:
    for k in dga.degrees:
        if not dga.basis(k + 1) or not dga.basis(k + 2):
            continue
        prod = dga.differential_matrix(k + 1) @ dga.differential_matrix(k)
        if not prod.is_zero():
            return CheckResult("d∘d = 0", False, f"fails from degree {k}")
    return CheckResult("d∘d = 0", True)


def check_leibniz(dga: GradedDga, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    n = 1 << dga.n
    d = [dga.differential(s) for s in range(n)]
    for s, t in _pairs(n, rng):
        lhs = dga.differential(dga.product(s, t))
        rhs = dga.product(d[s], t) + (-1) ** dga.degree(s) * dga.product(s, d[t])
        if lhs != rhs:
            return CheckResult("Leibniz rule", False, f"fails on {members(s)}, {members(t)}")
    return CheckResult("Leibniz rule", True)


def check_graded_commutativity(dga: GradedDga, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    for s, t in _pairs(1 << dga.n, rng):
        sign = (-1) ** (dga.degree(s) * dga.degree(t))
        if dga.product(s, t) != sign * dga.product(t, s):
            return CheckResult("graded commutativity", False, f"fails on {members(s)}, {members(t)}")
    return CheckResult("graded commutativity", True)


def check_euler(dga: GradedDga, betti: dict[int, int]) -> CheckResult:
    chain, coh = euler_characteristic(dga), betti_euler_characteristic(betti)
    return CheckResult("Euler characteristic", chain == coh, f"chain {chain}, cohomology {coh}")


def check_simply_connected_shadow(dga: GradedDga, betti: dict[int, int]) -> CheckResult:
    codims = dga.arrangement.codims
    if not all(c >= 2 for c in codims):
        return CheckResult("H^1 = 0 for codim >= 2", True, "not applicable")
    ok = betti.get(1, 0) == 0
    return CheckResult("H^1 = 0 for codim >= 2", ok)


def check_lattice(lat: IntersectionLattice) -> CheckResult:
    m = len(lat)
    el = lat.elements
    for x in range(m):
        for y in range(m):
            # the bitset order must agree with real containment
            if lat.order[x][y] != linalg.contains(el[x], el[y]):
                return CheckResult("lattice order", False, f"order mismatch at {x}, {y}")
            jx = lat.join_table[x][y]
            if el[jx] != linalg.intersect(el[x], el[y]):
                return CheckResult("lattice order", False, f"join mismatch at {x}, {y}")
            if lat.meet_table[x][lat.join_table[x][y]] != x or lat.join_table[x][lat.meet_table[x][y]] != x:
                return CheckResult("lattice order", False, f"absorption fails at {x}, {y}")
        if lat.rank[x] > el[x].codim:
            return CheckResult("lattice order", False, f"rank exceeds codim at {x}")
        if x and join(lat, [lat.atom_element[a] for a in members(lat.atoms_below[x])]) != x:
            return CheckResult("lattice order", False, f"{x} is not the join of its atoms")
    return CheckResult("lattice order", True)


def check_equivalences(dga: GradedDga) -> CheckResult:
    arr = dga.arrangement
    if codim_sum_test(arr) != direct_sum_test(arr):
        return CheckResult("equivalent criteria agree", False, "codim sum vs direct sum")
    try:
        classify(arr, atom_cap=max(dga.n, 1))
    except DisagreementError as exc:
        return CheckResult("equivalent criteria agree", False, str(exc))
    return CheckResult("equivalent criteria agree", True)


def run_all(dga: GradedDga) -> list[CheckResult]:
    betti = betti_numbers(dga)
    return [
        check_lattice(dga.lattice),
        check_d_squared(dga),
        check_leibniz(dga),
        check_graded_commutativity(dga),
        check_euler(dga, betti),
        check_simply_connected_shadow(dga, betti),
        check_equivalences(dga),
    ]

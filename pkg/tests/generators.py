"""Seeded random arrangement generators for fuzz and acceptance tests."""

from __future__ import annotations

import random

from subarr.lattice import Arrangement
from subarr.linalg import Subspace, rank, RatMatrix


def _random_rows(rng, k, l, lo=-2, hi=2):
    return [[rng.randint(lo, hi) for _ in range(l)] for _ in range(k)]


def random_subspace(rng: random.Random, l: int, min_codim: int = 1) -> Subspace:
    mode = rng.random()
    dim = rng.randint(0, max(0, l - min_codim))
    if mode < 0.3:
        return Subspace.coordinate(rng.sample(range(l), dim), l)
    if mode < 0.6:
        # sparse vectors give non-generic intersections more often
        rows = [[rng.choice([0, 0, 1, -1]) for _ in range(l)] for _ in range(dim)]
        return Subspace.span(rows, l)
    return Subspace.span(_random_rows(rng, dim, l), l)


def random_arrangement(rng: random.Random, max_ambient: int = 6, max_atoms: int = 6,
                       min_codim: int = 1) -> Arrangement:
    l = rng.randint(max(2, min_codim), max_ambient)
    n = rng.randint(0, max_atoms)
    subs: list[Subspace] = []
    for _ in range(8 * n + 8):
        if len(subs) == n:
            break
        s = random_subspace(rng, l, min_codim)
        if s.codim < min_codim or s.dim == l or s in subs:
            continue
        subs.append(s)
    return Arrangement.from_subspaces(subs, l)


def random_direct_sum_arrangement(rng: random.Random, max_ambient: int = 6) -> Arrangement:
    """x_i = y_i^perp for independent blocks y_i, so codimension adds up."""
    l = rng.randint(2, max_ambient)
    while True:
        m = _random_rows(rng, l, l, -3, 3)
        if rank(RatMatrix.from_rows(m)) == l:
            break
    codims = []
    budget = l
    while budget >= 2 and (not codims or rng.random() < 0.7):
        c = rng.randint(2, budget)
        codims.append(c)
        budget -= c
    subs, start = [], 0
    for c in codims:
        subs.append(Subspace.from_equations(m[start:start + c], l))
        start += c
    rng.shuffle(subs)
    return Arrangement.from_subspaces(subs, l)


def random_generic_arrangement(rng: random.Random, max_ambient: int = 6,
                               max_atoms: int = 6) -> Arrangement:
    """Dense random subspaces of codim >= 2; mostly hyperbolic complements."""
    l = rng.randint(3, max_ambient)
    n = rng.randint(2, max_atoms)
    subs: list[Subspace] = []
    while len(subs) < n:
        s = Subspace.span(_random_rows(rng, rng.randint(1, l - 2), l, -3, 3), l)
        if s.codim >= 2 and s not in subs:
            subs.append(s)
    return Arrangement.from_subspaces(subs, l)


def fuzz_corpus(seed: int, count: int, max_ambient: int = 6, max_atoms: int = 6) -> list[Arrangement]:
    """Round-robin mix of the four generators above."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        r = i % 4
        if r == 0:
            out.append(random_arrangement(rng, max_ambient, max_atoms))
        elif r == 1:
            out.append(random_arrangement(rng, max_ambient, max_atoms, min_codim=2))
        elif r == 2:
            out.append(random_generic_arrangement(rng, max_ambient, max_atoms))
        else:
            out.append(random_direct_sum_arrangement(rng, max_ambient))
    return out

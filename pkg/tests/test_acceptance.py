"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Every comparison is exact.  The fuzz population is fixed by seed so the
suite is reproducible; minimum coverage counts are asserted alongside the
properties so a generator change cannot silently thin out a criterion.
"""

import pytest

from subarr.checks import PAIR_BUDGET, check_d_squared, check_leibniz
from subarr.classify import (
    Verdict,
    atom_count_diagnostic,
    chain_homology_diagnostic,
    classify,
    codim_sum_test,
    direct_sum_test,
    minimal_model,
)
from subarr.cohomology import (
    betti_euler_characteristic,
    betti_numbers,
    cohomology_ring,
    euler_characteristic,
    poincare_polynomial,
    poly_mul,
)
from subarr.dga import GradedDga
from subarr.errors import DisagreementError
from subarr.lattice import Arrangement, build_lattice
from subarr.linalg import Subspace

from conftest import coord, record_criterion
from generators import fuzz_corpus
from oracles import intersection, naive_betti

FUZZ_SEED = 2024
FUZZ_COUNT = 600


class Case:
    def __init__(self, label, arr):
        self.label = label
        self.arr = arr
        self.lattice = build_lattice(arr)
        self.dga = GradedDga(arr, self.lattice)
        self.betti = betti_numbers(self.dga)


@pytest.fixture(scope="module")
def fuzz_cases():
    return [Case(f"fuzz[{i}]", a) for i, a in enumerate(fuzz_corpus(FUZZ_SEED, FUZZ_COUNT))]


@pytest.fixture(scope="module")
def corpus_cases(corpus):
    return [Case(name, a) for name, a in sorted(corpus.items())]


@pytest.fixture(scope="module")
def reports(fuzz_cases):
    """Classification of every fuzz case; a DisagreementError is kept as the value."""
    out = []
    for c in fuzz_cases:
        try:
            out.append(classify(c.arr))
        except DisagreementError as exc:
            out.append(exc)
    return out


def finish(name, failures, detail):
    ok = not failures
    record_criterion(name, ok, detail if ok else f"{detail}; first failures: {failures[:3]}")
    assert ok, failures[:3]


def test_c1_dga_well_formed(fuzz_cases, corpus_cases):
    failures = []
    for c in fuzz_cases + corpus_cases:
        # Leibniz is checked on every basis pair, never sampled
        assert (1 << c.dga.n) ** 2 <= PAIR_BUDGET
        for res in (check_d_squared(c.dga), check_leibniz(c.dga)):
            if not res.ok:
                failures.append((c.label, res.name, res.detail))
    n_fuzz = len(fuzz_cases)
    assert n_fuzz >= 200
    assert all(c.arr.ambient_dim <= 6 and len(c.arr) <= 6 for c in fuzz_cases)
    finish("1 d∘d = 0 and Leibniz", failures,
           f"{n_fuzz} fuzz + {len(corpus_cases)} corpus arrangements")


def test_c2_codim_sum_equals_direct_sum(fuzz_cases, corpus_cases):
    failures = []
    for c in fuzz_cases + corpus_cases:
        a, b = codim_sum_test(c.arr), direct_sum_test(c.arr)
        # a third, test-local computation of the intersection codimension
        spans = [s.rows() for s in c.arr.subspaces]
        codim = c.arr.ambient_dim - len(intersection(spans, c.arr.ambient_dim))
        oracle = codim == sum(c.arr.codims)
        if not a == b == oracle:
            failures.append((c.label, a, b, oracle))
    assert len(fuzz_cases) >= 500
    n_true = sum(codim_sum_test(c.arr) for c in fuzz_cases)
    assert 0 < n_true < len(fuzz_cases)
    finish("2 codim sum = direct sum", failures,
           f"{len(fuzz_cases)} fuzz cases, {n_true} additive")


def test_c3_four_conditions_agree(fuzz_cases, reports):
    failures, applicable, elliptic = [], 0, 0
    for c, r in zip(fuzz_cases, reports):
        if isinstance(r, DisagreementError):
            failures.append((c.label, str(r)))
            continue
        if not r.applicable:
            continue
        applicable += 1
        elliptic += r.verdict is Verdict.ELLIPTIC
        four = {r.codim_sum_test, r.direct_sum_test, r.pd_test, r.ring_is_free_exterior}
        if len(four) != 1 or (r.verdict is Verdict.ELLIPTIC) != r.codim_sum_test:
            failures.append((c.label, four))
    assert applicable >= 100 and 0 < elliptic < applicable
    finish("3 four conditions agree", failures,
           f"{applicable} applicable ({elliptic} elliptic, {applicable - elliptic} hyperbolic)")


def test_c4_known_complements():
    failures = []
    for k in (2, 3, 4):
        got = betti_numbers(GradedDga(Arrangement.from_subspaces([Subspace.zero(k)])))
        if got != {0: 1, 2 * k - 1: 1}:
            failures.append((f"S^{2 * k - 1}", got))
    for m in (1, 2, 3):
        # x_i is cut out by the coordinates 2i-1, 2i
        eye = [[int(r == c) for c in range(2 * m)] for r in range(2 * m)]
        planes = [Subspace.from_equations(eye[2 * i:2 * i + 2], 2 * m) for i in range(m)]
        got = poincare_polynomial(cohomology_ring(GradedDga(Arrangement.from_subspaces(planes))))
        want = (1,)
        for _ in range(m):
            want = poly_mul(want, (1, 0, 0, 1))
        if got != want:
            failures.append((f"boolean m={m}", got))
    got = betti_numbers(GradedDga(Arrangement.from_subspaces([coord(2, 1), coord(2, 2)])))
    if got != {0: 1, 1: 2, 2: 1}:
        failures.append(("two lines", got))
    finish("4 known complements", failures, "S^3, S^5, S^7, (1+t^3)^m for m=1..3, (C*)^2")


def test_c5_elliptic_structure(fuzz_cases, reports):
    failures, n = [], 0
    for c, r in zip(fuzz_cases, reports):
        if isinstance(r, DisagreementError) or r.verdict is not Verdict.ELLIPTIC:
            continue
        n += 1
        degs = [2 * k - 1 for k in c.arr.codims]
        want = (1,)
        for d in degs:
            want = poly_mul(want, (1,) + (0,) * (d - 1) + (1,))
        ring = cohomology_ring(c.dga)
        model = minimal_model(c.arr)
        if poincare_polynomial(ring) != want:
            failures.append((c.label, "poincaré polynomial"))
        if ring.formal_dim != sum(degs):
            failures.append((c.label, "formal dimension"))
        if [d for _, d in model.generators] != degs or set(model.differential.values()) - {"0"}:
            failures.append((c.label, "minimal model"))
        if sorted(degs) != r.sphere_dims:
            failures.append((c.label, "sphere dimensions"))
    assert n >= 100
    finish("5 elliptic structure", failures, f"{n} elliptic cases")


def test_c6_diagnostics(fuzz_cases, reports, triple_plane):
    failures, n, n_chains = [], 0, 0
    for c, r in zip(fuzz_cases, reports):
        if isinstance(r, DisagreementError) or r.verdict is not Verdict.ELLIPTIC:
            continue
        n += 1
        chains = chain_homology_diagnostic(c.arr, lattice=c.lattice)
        n_chains += len(chains)
        if any(v != 1 for v in chains.values()):
            failures.append((c.label, "chain homology", chains))
        if any(a != b for a, b in atom_count_diagnostic(c.arr, c.lattice).values()):
            failures.append((c.label, "rank vs atoms below"))
    lat = build_lattice(triple_plane)
    h2 = {v for (_, k), v in chain_homology_diagnostic(triple_plane).items() if k == 2}
    if h2 != {2}:
        failures.append(("triple plane", "H_2", h2))
    if atom_count_diagnostic(triple_plane)[lat.top] != (2, 3):
        failures.append(("triple plane", "mismatch at {0}"))
    assert n >= 100
    finish("6 chain and atom-count diagnostics", failures,
           f"{n} elliptic cases, {n_chains} (chain, k) pairs; triple plane H_2 = 2, (2, 3) at {{0}}")


def test_c7_brute_force_oracle(corpus_cases, fuzz_cases):
    failures = []
    small_corpus = [c for c in corpus_cases if len(c.arr) <= 4]
    small_fuzz = [c for c in fuzz_cases if len(c.arr) <= 4][:60]
    for c in small_corpus + small_fuzz:
        want = naive_betti([s.rows() for s in c.arr.subspaces], c.arr.ambient_dim)
        if c.betti != want:
            failures.append((c.label, c.betti, want))
    assert len(small_corpus) >= 10
    finish("7 naive dense oracle", failures,
           f"{len(small_corpus)} corpus + {len(small_fuzz)} fuzz arrangements with <= 4 atoms")


def test_c8_euler(fuzz_cases, corpus_cases):
    failures = []
    for c in fuzz_cases + corpus_cases:
        chain, coh = euler_characteristic(c.dga), betti_euler_characteristic(c.betti)
        if chain != coh:
            failures.append((c.label, chain, coh))
    finish("8 Euler characteristic", failures, f"{len(fuzz_cases) + len(corpus_cases)} instances")


def test_c9_h1_vanishes(fuzz_cases, corpus_cases):
    failures, n = [], 0
    for c in fuzz_cases + corpus_cases:
        if c.arr.codims and all(k >= 2 for k in c.arr.codims):
            n += 1
            if c.betti.get(1, 0):
                failures.append((c.label, c.betti))
    assert n >= 300
    finish("9 betti[1] = 0 for codim >= 2", failures, f"{n} arrangements")

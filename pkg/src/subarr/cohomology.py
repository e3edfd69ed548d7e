"""Cohomology of the atomic DGA: Betti numbers, ring structure, duality test."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .dga import ChainComplex, DgaElement, GradedDga
from .linalg import rref_rows

Polynomial = tuple[int, ...]

BETTI_ASYMMETRY = "betti_asymmetry"
TOP_NOT_ONE_DIMENSIONAL = "top_not_one_dimensional"
DEGENERATE_PAIRING = "degenerate_pairing"


def rank_of_rows(rows: list[list[Fraction]], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return len(rref_rows(rows, ncols)[1])


def _columns(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    return [[r[j] for r in rows] for j in range(ncols)]


def _kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """RREF basis of the null space of the matrix given by ``rows``."""
    red, pivots = rref_rows(rows, ncols)
    pivset = set(pivots)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        vecs.append(v)
    return rref_rows(vecs, ncols)[0] if vecs else []


class _Echelon:
    """Incremental row echelon basis that remembers how each row was built.

    Rows are added one at a time with a tag; ``express`` writes a vector in
    the span as a combination of the tagged originals.
    """

    def __init__(self, ncols: int, ntags: int):
        self.ncols = ncols
        self.ntags = ntags
        self.rows: list[tuple[int, list[Fraction], list[Fraction]]] = []

    def _reduce(self, v: Sequence[Fraction]):
        v = list(v)
        combo = [Fraction(0)] * self.ntags
        for p, row, rcombo in self.rows:
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
                combo = [a + c * b for a, b in zip(combo, rcombo)]
        return v, combo

    def add(self, v: Sequence[Fraction], tag: int) -> bool:
        res, combo = self._reduce(v)
        p = next((j for j, x in enumerate(res) if x), None)
        if p is None:
            return False
        # row = v - sum(c_k row_k) = e_tag - combo in terms of originals
        own = [-c for c in combo]
        own[tag] += 1
        piv = res[p]
        self.rows.append((p, [x / piv for x in res], [x / piv for x in own]))
        return True

    def express(self, v: Sequence[Fraction]) -> list[Fraction] | None:
        res, combo = self._reduce(v)
        if any(res):
            return None
        return combo

    def __len__(self) -> int:
        return len(self.rows)


def betti_numbers(dga: GradedDga) -> dict[int, int]:
    """Betti numbers for every degree where the complex is nonzero."""
    ranks = {k: rank_of_rows(dga.differential_rows(k), len(dga.basis(k))) for k in dga.degrees}
    return {k: len(dga.basis(k)) - ranks[k] - ranks.get(k - 1, 0) for k in dga.degrees}


def euler_characteristic(dga: GradedDga) -> int:
    """Chain-level Euler characteristic, sum of (-1)^k dim D^k."""
    return sum((-1) ** k * len(b) for k, b in dga.basis_by_degree.items())


def betti_euler_characteristic(betti: dict[int, int]) -> int:
    return sum((-1) ** k * b for k, b in betti.items())


@dataclass
class _DegreeData:
    size: int
    boundaries: list[list[Fraction]]
    cocycles: list[list[Fraction]]
    representatives: list[list[Fraction]]
    solver: _Echelon


class CohomologyRing:
    """H*(D_A) with chosen cocycle representatives and the induced product.

    Representatives in degree k are the earliest rows of the RREF cocycle basis
    that stay independent modulo coboundaries.  Classes are handled as
    coordinate vectors against those representatives.
    """

    def __init__(self, dga: GradedDga):
        self.dga = dga
        self._data: dict[int, _DegreeData] = {}
        for k in dga.degrees:
            n = len(dga.basis(k))
            prev = dga.differential_rows(k - 1)
            # image of d_(k-1) lives in D^k: it is the column space of that matrix
            bnd = rref_rows(_columns(prev, len(dga.basis(k - 1))), n)[0] if prev else []
            cyc = _kernel(dga.differential_rows(k), n)
            solver = _Echelon(n, len(bnd) + len(cyc))
            for t, b in enumerate(bnd):
                solver.add(b, t)
            reps = []
            for z in cyc:
                if solver.add(z, len(bnd) + len(reps)):
                    reps.append(z)
            self._data[k] = _DegreeData(n, bnd, cyc, reps, solver)

    @cached_property
    def betti(self) -> dict[int, int]:
        return {k: len(d.representatives) for k, d in self._data.items()}

    @cached_property
    def representatives(self) -> dict[int, list[DgaElement]]:
        return {
            k: [self.dga.from_vector(v, k) for v in d.representatives]
            for k, d in self._data.items()
        }

    @property
    def formal_dim(self) -> int:
        return max((k for k, b in self.betti.items() if b), default=0)

    def dim(self, k: int) -> int:
        return self.betti.get(k, 0)

    def class_of(self, x: DgaElement, k: int | None = None) -> tuple[Fraction, ...]:
        """Coordinates of the cohomology class of the cocycle ``x`` in degree ``k``."""
        if k is None:
            k = self.dga.degree_of_element(x)
            if k is None:
                raise ValueError("degree of the zero element must be given")
        data = self._data.get(k)
        if data is None:
            if x:
                raise ValueError(f"no cochains in degree {k}")
            return ()
        combo = data.solver.express(self.dga.to_vector(x, k))
        if combo is None:
            raise ValueError(f"{x!r} is not a cocycle")
        start = len(data.boundaries)
        return tuple(combo[start:start + len(data.representatives)])

    def is_coboundary(self, x: DgaElement, k: int) -> bool:
        return not any(self.class_of(x, k))

    def element_of(self, k: int, coords: Sequence[Fraction]) -> DgaElement:
        out = DgaElement()
        for c, rep in zip(coords, self.representatives.get(k, [])):
            if c:
                out = out + c * rep
        return out

    def multiply(self, k: int, a: Sequence[Fraction], m: int, b: Sequence[Fraction]):
        """Product of class ``a`` in degree k and class ``b`` in degree m."""
        prod = self.dga.product(self.element_of(k, a), self.element_of(m, b))
        if k + m not in self._data:
            assert not prod
            return ()
        return self.class_of(prod, k + m)

    def basis_product(self, k: int, i: int, m: int, j: int) -> tuple[Fraction, ...]:
        reps = self.representatives
        prod = self.dga.product(reps[k][i], reps[m][j])
        if k + m not in self._data:
            return ()
        return self.class_of(prod, k + m)

    @cached_property
    def product_table(self) -> dict[tuple[int, int, int, int], tuple[Fraction, ...]]:
        """Structure constants: (k, i, m, j) -> coordinates of rep_k_i * rep_m_j."""
        table = {}
        for k, bk in self.betti.items():
            for m, bm in self.betti.items():
                if not bk or not bm or not self.dim(k + m):
                    continue
                for i in range(bk):
                    for j in range(bm):
                        table[(k, i, m, j)] = self.basis_product(k, i, m, j)
        return table


def cohomology_ring(dga: GradedDga) -> CohomologyRing:
    return CohomologyRing(dga)


def poincare_polynomial(ring_or_betti: CohomologyRing | dict[int, int]) -> Polynomial:
    """Coefficient tuple (index = power of t) of the Poincaré series."""
    betti = ring_or_betti.betti if isinstance(ring_or_betti, CohomologyRing) else ring_or_betti
    top = max((k for k, b in betti.items() if b), default=0)
    coeffs = [0] * (top + 1)
    for k, b in betti.items():
        if b:
            coeffs[k] += b
    return tuple(coeffs)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def sphere_product_polynomial(dims: Iterable[int]) -> Polynomial:
    """Poincaré polynomial of a product of spheres of the given dimensions."""
    poly: Polynomial = (1,)
    for d in dims:
        poly = poly_mul(poly, (1,) + (0,) * (d - 1) + (1,))
    return poly


def format_polynomial(p: Polynomial) -> str:
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if not mono:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts) if parts else "0"


@dataclass
class PdReport:
    is_pd: bool
    formal_dim: int
    failures: list[tuple[int, str]] = field(default_factory=list)


def is_poincare_duality_algebra(ring: CohomologyRing) -> PdReport:
    top = ring.formal_dim
    failures: list[tuple[int, str]] = []
    if ring.dim(top) != 1:
        failures.append((top, TOP_NOT_ONE_DIMENSIONAL))
    for k in range(0, top // 2 + 1):
        if ring.dim(k) != ring.dim(top - k):
            failures.append((k, BETTI_ASYMMETRY))
    if ring.dim(top) == 1:
        for k in range(0, top // 2 + 1):
            bk = ring.dim(k)
            if not bk or bk != ring.dim(top - k):
                continue
            pairing = [
                [ring.basis_product(k, i, top - k, j)[0] for j in range(bk)]
                for i in range(bk)
            ]
            if rank_of_rows(pairing, bk) < bk:
                failures.append((k, DEGENERATE_PAIRING))
    return PdReport(not failures, top, failures)


def homology_of_complex(c: ChainComplex) -> dict[int, int]:
    """Homology dimensions of a size-graded subcomplex, per occupied degree."""
    ranks = {p: rank_of_rows(c.boundary_rows(p), len(c.cells[p])) for p in c.cells}
    return {p: len(cells) - ranks[p] - ranks.get(p + 1, 0) for p, cells in c.cells.items()}

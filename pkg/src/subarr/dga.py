"""The relative atomic differential graded algebra of an arrangement.

Basis elements are subsets of the arrangement, encoded as int bitmasks where
bit ``i`` is the ``i``-th atom in the arrangement's linear order.  A subset
``s`` sits in degree ``2 * codim(join s) - |s|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import AtomCapExceeded, InvalidChainIndex, OverlappingSubsets
from .lattice import Arrangement, IntersectionLattice, build_lattice
from .linalg import RatMatrix

AtomSubset = int

DEFAULT_ATOM_CAP = 20


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def members(mask: int) -> list[int]:
    """Atom indices of ``mask`` in increasing (linear) order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def subset_of(indices: Iterable[int]) -> AtomSubset:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def subset_sort_key(mask: int) -> tuple[int, list[int]]:
    return (popcount(mask), members(mask))


def epsilon_sign(sigma: AtomSubset, tau: AtomSubset) -> int:
    """Sign of the shuffle putting sigma's atoms before tau's.

    Counts pairs (a in sigma, b in tau) with a after b in the linear order.
    """
    if sigma & tau:
        raise OverlappingSubsets(f"subsets {members(sigma)} and {members(tau)} overlap")
    inversions = 0
    for b in members(tau):
        inversions += popcount(sigma >> (b + 1))
    return -1 if inversions & 1 else 1


class DgaElement:
    """A finite Q-linear combination of atom subsets with no zero terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[AtomSubset, Fraction | int] | None = None):
        self.terms: dict[AtomSubset, Fraction] = {}
        if terms:
            for s, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[s] = c

    @classmethod
    def basis(cls, s: AtomSubset, coeff=1) -> DgaElement:
        return cls({s: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, DgaElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: DgaElement) -> DgaElement:
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return DgaElement(out)

    def __neg__(self) -> DgaElement:
        return DgaElement({s: -c for s, c in self.terms.items()})

    def __sub__(self, other: DgaElement) -> DgaElement:
        return self + (-other)

    def __rmul__(self, scalar) -> DgaElement:
        scalar = Fraction(scalar)
        return DgaElement({s: scalar * c for s, c in self.terms.items()})

    def items(self) -> Iterator[tuple[AtomSubset, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: subset_sort_key(kv[0])))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{members(s)}" for s, c in self.items())


class GradedDga:
    """The atomic DGA D_A, with joins resolved through the lattice tables."""

    def __init__(self, arrangement: Arrangement, lattice: IntersectionLattice | None = None,
                 atom_cap: int = DEFAULT_ATOM_CAP):
        if len(arrangement) > atom_cap:
            raise AtomCapExceeded(
                f"{len(arrangement)} atoms exceeds the cap of {atom_cap} (set ATOM_CAP to raise it)"
            )
        self.arrangement = arrangement
        self.lattice = lattice if lattice is not None else build_lattice(arrangement)
        self.n = len(arrangement)

    @cached_property
    def _joins(self) -> list[int]:
        lat = self.lattice
        joins = [0] * (1 << self.n)
        for mask in range(1, 1 << self.n):
            low = mask & -mask
            joins[mask] = lat.join_table[joins[mask ^ low]][lat.atom_element[low.bit_length() - 1]]
        return joins

    @cached_property
    def _codims(self) -> list[int]:
        return [e.codim for e in self.lattice.elements]

    def join_of(self, s: AtomSubset) -> int:
        return self._joins[s]

    def degree(self, s: AtomSubset) -> int:
        return 2 * self._codims[self._joins[s]] - popcount(s)

    @cached_property
    def basis_by_degree(self) -> dict[int, list[AtomSubset]]:
        buckets: dict[int, list[AtomSubset]] = {}
        for s in range(1 << self.n):
            buckets.setdefault(self.degree(s), []).append(s)
        return {k: sorted(v, key=subset_sort_key) for k, v in sorted(buckets.items())}

    @cached_property
    def _position(self) -> dict[AtomSubset, int]:
        return {s: i for basis in self.basis_by_degree.values() for i, s in enumerate(basis)}

    def basis(self, k: int) -> list[AtomSubset]:
        return self.basis_by_degree.get(k, [])

    def position(self, s: AtomSubset) -> int:
        return self._position[s]

    @property
    def degrees(self) -> list[int]:
        return list(self.basis_by_degree)

    def degree_of_element(self, x: DgaElement) -> int | None:
        degs = {self.degree(s) for s in x.terms}
        if len(degs) > 1:
            raise ValueError(f"element {x!r} is not homogeneous")
        return degs.pop() if degs else None

    def differential_terms(self, s: AtomSubset) -> list[tuple[AtomSubset, int]]:
        j = self._joins[s]
        out = []
        for pos, i in enumerate(members(s), start=1):
            t = s & ~(1 << i)
            if self._joins[t] == j:
                out.append((t, -1 if pos & 1 else 1))
        return out

    def differential(self, x: DgaElement | AtomSubset) -> DgaElement:
        if isinstance(x, int):
            x = DgaElement.basis(x)
        out: dict[AtomSubset, Fraction] = {}
        for s, c in x.terms.items():
            for t, sign in self.differential_terms(s):
                out[t] = out.get(t, 0) + sign * c
        return DgaElement(out)

    def product_term(self, s: AtomSubset, t: AtomSubset) -> int:
        """Structure constant of s*t on the basis element s|t (0, 1 or -1)."""
        if s & t:
            return 0
        cod = self._codims
        if cod[self._joins[s]] + cod[self._joins[t]] != cod[self._joins[s | t]]:
            return 0
        return epsilon_sign(s, t)

    def product(self, x: DgaElement | AtomSubset, y: DgaElement | AtomSubset) -> DgaElement:
        if isinstance(x, int):
            x = DgaElement.basis(x)
        if isinstance(y, int):
            y = DgaElement.basis(y)
        out: dict[AtomSubset, Fraction] = {}
        for s, a in x.terms.items():
            for t, b in y.terms.items():
                sign = self.product_term(s, t)
                if sign:
                    out[s | t] = out.get(s | t, 0) + sign * a * b
        return DgaElement(out)

    def to_vector(self, x: DgaElement, k: int) -> list[Fraction]:
        vec = [Fraction(0)] * len(self.basis(k))
        for s, c in x.terms.items():
            if self.degree(s) != k:
                raise ValueError(f"term {members(s)} has degree {self.degree(s)}, not {k}")
            vec[self.position(s)] = c
        return vec

    def from_vector(self, vec, k: int) -> DgaElement:
        return DgaElement({s: c for s, c in zip(self.basis(k), vec) if c})

    def differential_rows(self, k: int) -> list[list[Fraction]]:
        """Matrix of d: D^k -> D^(k+1) as a list of rows."""
        src, dst = self.basis(k), self.basis(k + 1)
        rows = [[Fraction(0)] * len(src) for _ in dst]
        if not src or not dst:
            return rows
        pos = self._position
        for col, s in enumerate(src):
            for t, sign in self.differential_terms(s):
                rows[pos[t]][col] += sign
        return rows

    def differential_matrix(self, k: int) -> RatMatrix:
        return RatMatrix.from_rows(self.differential_rows(k), cols=len(self.basis(k)))

    def chain_complex_for_chain(self, chain: list[int], i: int) -> ChainComplex:
        """The complex of subsets whose join is ``chain[i]``, graded by size."""
        if not 1 <= i < len(chain):
            raise InvalidChainIndex(f"index {i} outside 1..{len(chain) - 1}")
        target = chain[i]
        below = self.lattice.atoms_below[target]
        cells: dict[int, list[AtomSubset]] = {}
        sub = below
        while sub:
            if self._joins[sub] == target:
                cells.setdefault(popcount(sub), []).append(sub)
            sub = (sub - 1) & below
        cells = {p: sorted(v, key=subset_sort_key) for p, v in sorted(cells.items())}
        return ChainComplex(self, target, cells)


@dataclass
class ChainComplex:
    """Subcomplex of D_A spanned by subsets with a fixed join, graded by size.

    The inherited differential lowers size by one; only join-preserving
    deletions occur, so it never leaves the complex.
    """

    dga: GradedDga
    element: int
    cells: dict[int, list[AtomSubset]]

    def boundary_rows(self, p: int) -> list[list[Fraction]]:
        """Matrix of the boundary C_p -> C_(p-1) as rows."""
        src = self.cells.get(p, [])
        dst = self.cells.get(p - 1, [])
        pos = {s: i for i, s in enumerate(dst)}
        rows = [[Fraction(0)] * len(src) for _ in dst]
        for col, s in enumerate(src):
            for t, sign in self.dga.differential_terms(s):
                rows[pos[t]][col] += sign
        return rows

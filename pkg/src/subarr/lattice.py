"""Central subspace arrangements and their intersection lattices.

Lattice elements are ordered by reverse inclusion: ``x <= y`` iff ``y`` is a
subspace of ``x``, so the whole space is the bottom element and the
intersection of all atoms is the top.  Every element is the intersection of
the atoms containing it, which lets the order, join and meet be read off the
``atoms_below`` bitsets once the closure has been computed with real linear
algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from . import linalg
from .errors import AmbientMismatch, AmbientSubspace, DuplicateSubspace
from .linalg import Subspace


@dataclass(frozen=True)
class Arrangement:
    """An ordered finite set of proper linear subspaces of Q^l.

    The order of ``atoms`` is the linear order used for every sign in the
    atomic complex.
    """

    ambient_dim: int
    atoms: tuple[tuple[str, Subspace], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((str(n), s) for n, s in self.atoms))
        seen: dict[Subspace, str] = {}
        for name, sub in self.atoms:
            if sub.ambient_dim != self.ambient_dim:
                raise AmbientMismatch(
                    f"{name} lives in Q^{sub.ambient_dim}, arrangement in Q^{self.ambient_dim}"
                )
            if sub.dim == self.ambient_dim:
                raise AmbientSubspace(f"{name} is the whole space Q^{self.ambient_dim}")
            if sub in seen:
                raise DuplicateSubspace(f"{name} repeats {seen[sub]}")
            seen[sub] = name

    @classmethod
    def from_subspaces(cls, subspaces: Sequence[Subspace], ambient_dim: int | None = None,
                       names: Sequence[str] | None = None) -> Arrangement:
        if ambient_dim is None:
            if not subspaces:
                raise ValueError("ambient_dim is required for an empty arrangement")
            ambient_dim = subspaces[0].ambient_dim
        if names is None:
            names = [f"x{i + 1}" for i in range(len(subspaces))]
        return cls(ambient_dim, tuple(zip(names, subspaces)))

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.atoms]

    @property
    def subspaces(self) -> list[Subspace]:
        return [s for _, s in self.atoms]

    @property
    def codims(self) -> list[int]:
        return [s.codim for _, s in self.atoms]


@dataclass(frozen=True, eq=False)
class IntersectionLattice:
    """The poset L(A) with precomputed order, rank, join and meet tables.

    Element 0 is always the ambient space.  ``atoms_below[e]`` is a bitmask
    over arrangement indices; ``atom_element[i]`` is the element index of the
    i-th arrangement member.
    """

    arrangement: Arrangement
    elements: tuple[Subspace, ...]
    atoms_below: tuple[int, ...]
    atom_element: tuple[int, ...]
    order: tuple[tuple[bool, ...], ...]
    rank: tuple[int, ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[int, ...], ...]
    _by_mask: dict[int, int] = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self._by_mask[(1 << len(self.arrangement)) - 1]

    def leq(self, x: int, y: int) -> bool:
        return self.order[x][y]

    def codim(self, x: int) -> int:
        return self.elements[x].codim

    def element_of_mask(self, mask: int) -> int:
        """Index of the flat whose atoms_below set is exactly ``mask``."""
        return self._by_mask[mask]

    def index_of(self, sub: Subspace) -> int:
        for i, e in enumerate(self.elements):
            if e == sub:
                return i
        raise KeyError(sub)


def build_lattice(arr: Arrangement) -> IntersectionLattice:
    l = arr.ambient_dim
    elements: list[Subspace] = [Subspace.whole(l)]
    index: dict[Subspace, int] = {elements[0]: 0}
    atom_element = []
    for _, sub in arr.atoms:
        index[sub] = len(elements)
        atom_element.append(len(elements))
        elements.append(sub)

    # every flat is an intersection of atoms, so extending by one atom at a time
    # from each discovered flat reaches the full closure
    queue = list(range(1, len(elements)))
    while queue:
        e = queue.pop(0)
        for a in atom_element:
            z = linalg.intersect(elements[e], elements[a])
            if z not in index:
                index[z] = len(elements)
                elements.append(z)
                queue.append(index[z])

    m = len(elements)
    atoms_below = []
    for e in elements:
        mask = 0
        for i, a in enumerate(atom_element):
            if linalg.contains(elements[a], e):
                mask |= 1 << i
        atoms_below.append(mask)
    by_mask = {mask: i for i, mask in enumerate(atoms_below)}

    # x <= y  iff  y ⊆ x  iff  atoms_below[x] ⊆ atoms_below[y]
    order = tuple(
        tuple((atoms_below[x] & ~atoms_below[y]) == 0 for y in range(m)) for x in range(m)
    )

    by_dim = sorted(range(m), key=lambda e: -elements[e].dim)
    rank = [0] * m
    for pos, e in enumerate(by_dim):
        below = [rank[p] + 1 for p in by_dim[:pos] if p != e and order[p][e]
                 and elements[p].dim > elements[e].dim]
        rank[e] = max(below, default=0)

    popcount = [bin(mask).count("1") for mask in atoms_below]
    join_table = []
    meet_table = []
    for x in range(m):
        jrow, mrow = [], []
        for y in range(m):
            union = atoms_below[x] | atoms_below[y]
            jrow.append(min((z for z in range(m) if (union & ~atoms_below[z]) == 0),
                            key=lambda z: popcount[z]))
            common = atoms_below[x] & atoms_below[y]
            mrow.append(max((z for z in range(m) if (atoms_below[z] & ~common) == 0),
                            key=lambda z: popcount[z]))
        join_table.append(tuple(jrow))
        meet_table.append(tuple(mrow))

    covers = []
    for x in range(m):
        ups = [y for y in range(m) if y != x and order[x][y]]
        covers.append(tuple(
            y for y in ups
            if not any(z != y and order[z][y] for z in ups)
        ))

    return IntersectionLattice(
        arrangement=arr,
        elements=tuple(elements),
        atoms_below=tuple(atoms_below),
        atom_element=tuple(atom_element),
        order=order,
        rank=tuple(rank),
        join_table=tuple(join_table),
        meet_table=tuple(meet_table),
        covers=tuple(covers),
        _by_mask=by_mask,
    )


def join(lat: IntersectionLattice, xs: Iterable[int]) -> int:
    xs = list(xs)
    if not xs:
        raise ValueError("join of an empty family is undefined here")
    return reduce(lambda a, b: lat.join_table[a][b], xs)


def meet(lat: IntersectionLattice, xs: Iterable[int]) -> int:
    xs = list(xs)
    if not xs:
        raise ValueError("meet of an empty family is undefined here")
    return reduce(lambda a, b: lat.meet_table[a][b], xs)


def rank_of(lat: IntersectionLattice, x: int) -> int:
    return lat.rank[x]


def is_geometric(lat: IntersectionLattice) -> tuple[bool, tuple[int, int] | None]:
    """Check rk(x) + rk(y) >= rk(x meet y) + rk(x join y) over all pairs.

    Returns ``(True, None)`` or ``(False, (x, y))`` with the first violating pair.
    """
    rk = lat.rank
    m = len(lat)
    for x in range(m):
        for y in range(x + 1, m):
            if rk[x] + rk[y] < rk[lat.meet_table[x][y]] + rk[lat.join_table[x][y]]:
                return False, (x, y)
    return True, None


def is_atomic(lat: IntersectionLattice) -> bool:
    """True when every arrangement member is a rank-one element of the lattice.

    Fails exactly when one member is contained in another.
    """
    return all(lat.rank[a] == 1 for a in lat.atom_element)


def maximal_chains(lat: IntersectionLattice) -> list[list[int]]:
    """All saturated chains from the bottom to the top, as element-index lists."""
    top = lat.top
    chains = []

    def walk(path):
        x = path[-1]
        if x == top:
            chains.append(list(path))
            return
        for y in lat.covers[x]:
            if lat.order[y][top]:
                path.append(y)
                walk(path)
                path.pop()

    walk([0])
    return chains


def element_label(lat: IntersectionLattice, e: int) -> str:
    """Human-readable name: the ambient space, an atom name, or an intersection of atoms."""
    if e == 0:
        return f"Q^{lat.arrangement.ambient_dim}"
    names = lat.arrangement.names
    if e in lat.atom_element:
        return names[lat.atom_element.index(e)]
    mask, i, parts = lat.atoms_below[e], 0, []
    while mask:
        if mask & 1:
            parts.append(names[i])
        mask >>= 1
        i += 1
    return "∩".join(parts)

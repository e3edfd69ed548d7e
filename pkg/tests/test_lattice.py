import random

import pytest

from subarr import linalg
from subarr.errors import AmbientSubspace, DuplicateSubspace
from subarr.lattice import (
    Arrangement,
    build_lattice,
    is_geometric,
    join,
    maximal_chains,
    meet,
    rank_of,
)
from subarr.linalg import Subspace

from conftest import coord
from generators import fuzz_corpus
from oracles import longest_chain_ranks


def idx(lat, sub):
    return lat.index_of(sub)


def test_boolean_pair_closure(boolean2):
    lat = build_lattice(boolean2)
    assert len(lat) == 4
    assert set(lat.elements) == {Subspace.whole(4), coord(4, 1, 2), coord(4, 3, 4), Subspace.zero(4)}


def test_empty_arrangement():
    lat = build_lattice(Arrangement(3))
    assert lat.elements == (Subspace.whole(3),)
    assert maximal_chains(lat) == [[0]]
    assert is_geometric(lat) == (True, None)


def test_chain3_closure(chain3):
    lat = build_lattice(chain3)
    assert len(lat) == 7
    assert set(lat.elements) == {
        Subspace.whole(4), coord(4, 1, 2), coord(4, 2, 3), coord(4, 3, 4),
        coord(4, 2), coord(4, 3), Subspace.zero(4),
    }


def test_join_examples(boolean2):
    lat = build_lattice(boolean2)
    x1, x2 = lat.atom_element
    assert join(lat, [x1]) == x1
    assert lat.elements[join(lat, [x1, x2])] == Subspace.zero(4)
    assert join(lat, [x1, 0]) == x1


def test_meet_examples(chain3):
    lat = build_lattice(chain3)
    x1, x2, _ = lat.atom_element
    assert meet(lat, [x1, x1]) == x1
    e2, e3 = idx(lat, coord(4, 2)), idx(lat, coord(4, 3))
    assert meet(lat, [e2, e3]) == x2
    assert meet(lat, [x1, 0]) == 0


def test_rank_examples(chain3):
    lat = build_lattice(chain3)
    assert rank_of(lat, 0) == 0
    assert all(rank_of(lat, a) == 1 for a in lat.atom_element)
    assert rank_of(lat, idx(lat, Subspace.zero(4))) == 3


def test_geometric_examples(boolean2, chain3):
    assert is_geometric(build_lattice(boolean2)) == (True, None)
    lat = build_lattice(chain3)
    ok, pair = is_geometric(lat)
    assert not ok
    assert pair == (lat.atom_element[0], lat.atom_element[2])
    single = Arrangement.from_subspaces([coord(3, 1)])
    assert is_geometric(build_lattice(single))[0]


def test_maximal_chain_examples(boolean2):
    lat = build_lattice(boolean2)
    chains = maximal_chains(lat)
    assert sorted(c[1] for c in chains) == sorted(lat.atom_element)
    assert all(len(c) == 3 and c[0] == 0 and c[-1] == lat.top for c in chains)
    single = build_lattice(Arrangement.from_subspaces([coord(3, 1)]))
    assert maximal_chains(single) == [[0, 1]]


def test_duplicates_and_ambient_rejected():
    with pytest.raises(DuplicateSubspace):
        Arrangement.from_subspaces([coord(3, 1), Subspace.span([[2, 0, 0]], 3)])
    with pytest.raises(AmbientSubspace):
        Arrangement.from_subspaces([Subspace.whole(3)])


FUZZ = [a for a in fuzz_corpus(7, 80) if len(a) <= 5]


@pytest.mark.parametrize("arr", FUZZ[:40])
def test_lattice_invariants(arr):
    lat = build_lattice(arr)
    m = len(lat)
    el = lat.elements
    # closure under intersection, checked with real linear algebra
    for x in range(m):
        for y in range(m):
            z = linalg.intersect(el[x], el[y])
            assert el[join(lat, [x, y])] == z
    # partial order, agreeing with containment
    for x in range(m):
        assert lat.order[x][x]
        for y in range(m):
            assert lat.order[x][y] == linalg.contains(el[x], el[y])
            if x != y:
                assert not (lat.order[x][y] and lat.order[y][x])
            for z in range(m):
                if lat.order[x][y] and lat.order[y][z]:
                    assert lat.order[x][z]
    # absorption
    for x in range(m):
        for y in range(m):
            assert meet(lat, [x, join(lat, [x, y])]) == x
            assert join(lat, [x, meet(lat, [x, y])]) == x
    # every element is the join of the atoms below it; rank <= codim
    for x in range(1, m):
        atoms = [lat.atom_element[i] for i in range(len(arr)) if lat.atoms_below[x] >> i & 1]
        assert join(lat, atoms) == x
    assert all(lat.rank[x] <= el[x].codim for x in range(m))
    # rank agrees with brute-force longest-chain enumeration
    below = [{y for y in range(m) if y != x and lat.order[y][x]} for x in range(m)]
    assert list(lat.rank) == longest_chain_ranks([e.dim for e in el], below)
    # Jordan-Hölder on geometric lattices
    if is_geometric(lat)[0]:
        lengths = {len(c) - 1 for c in maximal_chains(lat)}
        assert lengths == {lat.rank[lat.top]}


def test_meet_is_smallest_containing_element():
    rng = random.Random(3)
    for arr in fuzz_corpus(11, 30):
        lat = build_lattice(arr)
        for _ in range(10):
            x, y = rng.randrange(len(lat)), rng.randrange(len(lat))
            containing = [z for z in range(len(lat))
                          if linalg.contains(lat.elements[z], lat.elements[x])
                          and linalg.contains(lat.elements[z], lat.elements[y])]
            smallest = min(containing, key=lambda z: lat.elements[z].dim)
            assert meet(lat, [x, y]) == smallest

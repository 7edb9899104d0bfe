from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixlocus import _kernels_py
from fixlocus import kernels
from fixlocus.errors import CapExceeded, MalformedPermutation, NotAMember
from fixlocus.groups import abelian_group, cyclic_group, dihedral_group, symmetric_group
from fixlocus.perm import (
    Permutation,
    are_conjugate,
    centralizer,
    conjugacy_class,
    conjugacy_classes,
    cyclic_subgroup,
    element_order,
    enumerate_group,
    format_cycles,
    is_conjugate_to_power,
    normalizer_of_cyclic,
    subgroup_generated,
)


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


S3_GENS = [P([(0, 1)], 3), P([(0, 1, 2)], 3)]


def test_enumeration_examples():
    assert enumerate_group(3, [P([(0, 1, 2)], 3)]).order == 3
    assert enumerate_group(1, [Permutation.identity(1)]).order == 1
    G = enumerate_group(3, S3_GENS)
    assert G.order == 6
    assert set(G.elements) == {Permutation(p) for p in itertools.permutations(range(3))}
    assert G.index(Permutation.identity(3)) == 0


def test_element_orders():
    G = enumerate_group(3, S3_GENS)
    assert element_order(G, Permutation.identity(3)) == 1
    assert element_order(G, P([(0, 1)], 3)) == 2
    assert element_order(G, P([(0, 1, 2)], 3)) == 3


def test_cyclic_subgroups():
    G = enumerate_group(3, S3_GENS)
    assert cyclic_subgroup(G, Permutation.identity(3)).order == 1
    t = P([(0, 1)], 3)
    assert set(cyclic_subgroup(G, t).elements) == {Permutation.identity(3), t}
    assert cyclic_subgroup(G, P([(0, 1, 2)], 3)).order == 3


def test_normalizer_and_centralizer_examples():
    Z = abelian_group([3, 3, 3])
    assert normalizer_of_cyclic(Z, Z.generators[0]).order == 27
    assert centralizer(Z, Z.generators[1]).order == 27
    G = enumerate_group(3, S3_GENS)
    assert normalizer_of_cyclic(G, Permutation.identity(3)).order == 6
    assert normalizer_of_cyclic(G, P([(0, 1)], 3)).order == 2
    assert centralizer(G, Permutation.identity(3)).order == 6
    assert centralizer(G, P([(0, 1, 2)], 3)).order == 3


def test_conjugate_to_power_examples():
    Z = abelian_group([3, 3, 3])
    a1, a2 = Z.generators[:2]
    assert not is_conjugate_to_power(Z, a1, a2)
    assert is_conjugate_to_power(Z, a1, a1)
    assert is_conjugate_to_power(Z, Z.identity(), a2)
    assert is_conjugate_to_power(Z, a1 ** 2, a1)


def test_subgroup_generated_examples():
    G = enumerate_group(3, S3_GENS)
    assert subgroup_generated(G, []).order == 1
    g = P([(0, 1, 2)], 3)
    assert subgroup_generated(G, [g]).members == cyclic_subgroup(G, g).members
    assert subgroup_generated(G, [P([(0, 1)], 3), P([(1, 2)], 3)]).order == 6


def test_cap_and_membership_errors(monkeypatch):
    with pytest.raises(CapExceeded):
        enumerate_group(6, symmetric_group(6).generators, cap=100)
    monkeypatch.setenv("FIXLOCUS_GROUP_CAP", "50")
    with pytest.raises(CapExceeded):
        symmetric_group(5)
    G = cyclic_group(4)
    with pytest.raises(NotAMember):
        G.index(Permutation((1, 0, 2, 3)))
    with pytest.raises(MalformedPermutation):
        Permutation((0, 0, 1))


def test_cycle_formatting():
    assert format_cycles(Permutation.identity(4)) == "()"
    assert format_cycles(P([(0, 2), (1, 3)], 4)) == "(1 3)(2 4)"


def test_composition_is_left_to_right():
    a, b = P([(0, 1)], 3), P([(1, 2)], 3)
    # a first, then b: 0 -> 1 -> 2
    assert (a * b)(0) == 2


def test_dihedral_classes():
    # D5 has 4 classes: identity, two rotation classes, reflections
    assert sorted(len(c) for c in conjugacy_classes(dihedral_group(5))) == [1, 2, 2, 5]
    # D6 has 6
    assert len(conjugacy_classes(dihedral_group(6))) == 6


# --- properties --------------------------------------------------------------

GROUPS = [symmetric_group(4), dihedral_group(6), abelian_group([2, 4]), dihedral_group(5),
          enumerate_group(5, [P([(0, 1, 2)], 5), P([(2, 3, 4)], 5)])]


def brute_conjugate(G, g, h):
    g, h = G.element(g), G.element(h)
    return any(w.inverse() * g * w == h for w in G.elements)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(range(len(GROUPS))), st.data())
def test_group_properties(k, data):
    G = GROUPS[k]
    g = data.draw(st.integers(0, G.order - 1))
    h = data.draw(st.integers(0, G.order - 1))
    gp = G.element(g)
    C, N, cyc = centralizer(G, g), normalizer_of_cyclic(G, g), cyclic_subgroup(G, g)
    assert C.issubset(N)
    assert cyc.issubset(C)
    assert cyc.order == gp.order() == element_order(G, g)
    assert N.members == tuple(i for i in range(G.order)
                              if (G.element(i).inverse() * gp * G.element(i)) in
                              {gp ** t for t in range(1, gp.order() + 1)})
    assert are_conjugate(G, g, h) == brute_conjugate(G, g, h)
    assert G.order % len(conjugacy_class(G, g)) == 0
    assert len(conjugacy_class(G, g)) * C.order == G.order


@settings(max_examples=30, deadline=None)
@given(st.lists(st.permutations(range(6)), min_size=1, max_size=3))
def test_enumeration_is_canonical(perms):
    gens = [Permutation(tuple(p)) for p in perms]
    G = enumerate_group(6, gens)
    again = enumerate_group(6, list(reversed(gens)) + list(G.elements[:3]))
    assert G == again
    rows = [g.images for g in G.elements]
    assert rows == sorted(rows)
    assert G.order % max(g.order() for g in gens) == 0


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
@settings(max_examples=25, deadline=None)
@given(st.sampled_from(range(len(GROUPS))), st.data())
def test_backends_agree(k, data):
    from fixlocus import _kernels

    G = GROUPS[k]
    table, inv = G._table, G._inv_table
    g = data.draw(st.integers(0, G.order - 1))
    targets = np.array(sorted(set(data.draw(st.lists(st.integers(0, G.order - 1), max_size=4)))),
                       dtype=np.intc)
    tgt_rows = np.ascontiguousarray(table[targets]) if len(targets) else np.zeros((0, G.degree), np.intc)
    for fn in ("conjugates",):
        assert np.array_equal(getattr(_kernels, fn)(table, inv, table[g]),
                              getattr(_kernels_py, fn)(table, inv, table[g]))
    assert np.array_equal(_kernels.conjugator_mask(table, inv, table[g], tgt_rows),
                          _kernels_py.conjugator_mask(table, inv, table[g], tgt_rows))
    assert (_kernels.first_conjugator(table, inv, table[g], tgt_rows)
            == _kernels_py.first_conjugator(table, inv, table[g], tgt_rows))
    gens = np.ascontiguousarray(table[[1, G.order - 1]])
    a = _kernels.closure(gens, 10_000)
    b = _kernels_py.closure(gens, 10_000)
    assert sorted(map(tuple, a)) == sorted(map(tuple, b))

import itertools
import random
from fractions import Fraction

import pytest

from plucker.graph_core import enumerate_matchings
from plucker.invariant_ring import RingElement, x_of
from plucker.relations import (
    SymElement,
    component_partition_of_monomial,
    sym_basis,
)
from plucker.symmetry_rep import (
    ClassFunction,
    act,
    act_ring,
    act_sym,
    character_of_action,
    class_size,
    cycle_type,
    decompose,
    even_partitions,
    expected_partition_set,
    filtration_dim,
    filtration_span,
    gr_dim,
    hook_length_dim,
    inner_product,
    irreducible_character,
    mn_character,
    partitions,
    perm_from_cycles,
    refines,
    representative_of_type,
)


def test_act_examples():
    # identity fixes everything
    ident = {i: i for i in range(1, 5)}
    e = SymElement.monomial(4, (((1, 2), (3, 4)),))
    assert act(ident, e) == e
    # the transposition (1 2) fixes the matching but flips the sign
    swap = perm_from_cycles(4, [(1, 2)])
    assert act(swap, e) == e.scale(-1)
    r = x_of(4, [(1, 3), (2, 4)])
    assert act(ident, r) == r
    with pytest.raises(TypeError):
        act(ident, 7)
    with pytest.raises(ValueError):
        act_sym({1: 1}, e)


def test_action_is_a_group_action():
    rng = random.Random(0)
    matchings = enumerate_matchings(6)
    labels = list(range(1, 7))
    for _ in range(20):
        img1, img2 = labels[:], labels[:]
        rng.shuffle(img1)
        rng.shuffle(img2)
        sig = dict(zip(labels, img1))
        tau = dict(zip(labels, img2))
        compose = {i: sig[tau[i]] for i in labels}
        e = SymElement.monomial(6, tuple(rng.choice(matchings) for _ in range(2)))
        assert act_sym(compose, e) == act_sym(sig, act_sym(tau, e))
        r = RingElement.from_terms(
            6, [(rng.choice(matchings), Fraction(rng.randint(1, 3)))])
        assert act_ring(compose, r) == act_ring(sig, act_ring(tau, r))


def test_mn_character_examples():
    for mu in partitions(5):
        assert mn_character((5,), mu) == 1
    for mu in partitions(4):
        parity = (-1) ** (4 - len(mu))
        assert mn_character((1, 1, 1, 1), mu) == parity
    assert mn_character((2, 2), (1, 1, 1, 1)) == 2
    with pytest.raises(AssertionError):
        mn_character((2, 1), (4,))


def test_hook_length_examples():
    assert hook_length_dim((5, 1, 1, 1, 1, 1)) == 126
    assert hook_length_dim((4, 1, 1, 1, 1, 1, 1)) == 84
    assert hook_length_dim((4, 3, 1, 1, 1, 1, 1)) == 2079
    assert hook_length_dim((4, 4, 1, 1, 1, 1)) == 1925
    assert hook_length_dim((3, 3, 1, 1, 1, 1, 1, 1)) == 616


def test_hook_lengths_agree_with_mn_dimension():
    for n in range(1, 13):
        ones = (1,) * n
        for lam in partitions(n):
            assert hook_length_dim(lam) == mn_character(lam, ones)


def test_character_table_orthonormal():
    for n in (4, 5, 6, 7, 8):
        chars = {lam: irreducible_character(lam) for lam in partitions(n)}
        for lam, mu in itertools.combinations_with_replacement(partitions(n), 2):
            want = 1 if lam == mu else 0
            assert inner_product(chars[lam], chars[mu]) == want


def test_class_sizes_sum_to_group_order():
    from math import factorial

    for n in (3, 5, 8):
        assert sum(class_size(mu) for mu in partitions(n)) == factorial(n)


def test_decompose_regular_representation():
    # chi_reg(e) = |G|, zero elsewhere; multiplicities are the dimensions
    n = 3
    values = {mu: Fraction(0) for mu in partitions(n)}
    values[(1, 1, 1)] = Fraction(6)
    dec = decompose(ClassFunction(n, values))
    assert dec == {lam: hook_length_dim(lam) for lam in partitions(n)}
    with pytest.raises(ValueError):
        decompose(ClassFunction(n, {mu: Fraction(1, 2) for mu in partitions(n)}))


def test_v_character():
    chi = character_of_action(6, "V")
    assert chi((1, 1, 1, 1, 1, 1)) == 5  # dimension = Catalan(3)
    assert decompose(chi) == {(3, 3): 1}
    chi8 = character_of_action(8, "V")
    assert chi8((1,) * 8) == 14
    assert decompose(chi8) == {(4, 4): 1}


def test_representation_table():
    for n in (6, 8):
        for space in ("Sym2V", "Lam2V", "R2", "I2"):
            dec = decompose(character_of_action(n, space))
            assert set(dec) == expected_partition_set(n, space)
            assert all(v == 1 for v in dec.values())
    with pytest.raises(ValueError):
        character_of_action(10, "V")
    with pytest.raises(ValueError):
        character_of_action(6, "nope")


def test_cycle_type_and_representative():
    perm = perm_from_cycles(6, [(1, 2, 3), (4, 5)])
    assert cycle_type(perm) == (3, 2, 1)
    rep = representative_of_type((3, 2, 1))
    assert cycle_type(rep) == (3, 2, 1)


def test_refinement_order():
    assert refines((2, 2, 2), (4, 2))
    assert refines((2, 2, 2), (6,))
    assert refines((4, 2), (6,))
    assert not refines((4, 4), (6, 2))
    assert not refines((6, 2), (4, 4))
    assert refines((4, 2), (4, 2))
    assert even_partitions(6) == ((2, 2, 2), (4, 2), (6,))


def test_gr_dims():
    assert gr_dim(4, 3, (2, 2)) == 3
    assert gr_dim(4, 3, (4,)) == 1
    assert gr_dim(6, 3, (2, 2, 2)) == 15
    assert gr_dim(6, 3, (4, 2)) == 15
    assert gr_dim(6, 3, (6,)) == 5
    assert filtration_dim(6, (4, 2)) == 30
    # totals recover the symmetric power dimensions
    assert sum(gr_dim(4, 3, p) for p in even_partitions(4)) == len(sym_basis(4, 3))
    assert sum(gr_dim(6, 3, p) for p in even_partitions(6)) == 35
    with pytest.raises(ValueError):
        gr_dim(8, 3, (2, 2, 2, 2))
    with pytest.raises(ValueError):
        gr_dim(6, 2, (4, 2))
    with pytest.raises(ValueError):
        gr_dim(6, 3, (3, 3))


def _is_benzene_union(n, mono):
    """Every component a benzene 2-, 4- or 6-cycle."""
    from collections import Counter

    multiplicity = Counter(e for m in mono for e in m)
    adj = {}
    for (a, b), k in multiplicity.items():
        adj.setdefault(a, []).append((b, k))
        adj.setdefault(b, []).append((a, k))
    seen = set()
    for start in adj:
        if start in seen:
            continue
        comp = set()
        stack = [start]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(w for w, _ in adj[v])
        seen |= comp
        edges = [((a, b), k) for (a, b), k in multiplicity.items()
                 if a in comp]
        if len(comp) == 2:
            if edges[0][1] != 3:
                return False
            continue
        if len(comp) not in (4, 6) or len(edges) != len(comp):
            return False
        for v in comp:
            mults = sorted(k for _, k in adj[v])
            if mults != [1, 2]:
                return False
    return True


def test_benzene_monomials_span_sym3_v6():
    span = filtration_span(6, even_partitions(6))  # full space, for the size
    full = span.dim
    assert full == 35
    from plucker.exact_linalg import IncrementalSpan
    from plucker.symmetry_rep import _monomial_coords

    benzene = IncrementalSpan(len(sym_basis(6, 3)))
    count = 0
    for mono in itertools.combinations_with_replacement(enumerate_matchings(6), 3):
        if _is_benzene_union(6, mono):
            benzene.add(_monomial_coords(6, mono))
            count += 1
    assert count > 0 and benzene.dim == 35


def test_component_partition_of_monomial():
    m = ((1, 2), (3, 4), (5, 6))
    assert component_partition_of_monomial(6, (m, m, m)) == (2, 2, 2)
    hexagon = ((1, 2), (3, 4), (5, 6))
    other = ((2, 3), (4, 5), (1, 6))
    assert component_partition_of_monomial(6, (hexagon, hexagon, other)) == (6,)

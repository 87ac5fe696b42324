import itertools
import random
from fractions import Fraction

import pytest

from plucker.exact_linalg import IncrementalSpan
from plucker.figures import (
    degenerate_genseg8_datum,
    genseg6_datum,
    square_rotation_even_datum,
)
from plucker.graph_core import catalan, enumerate_matchings, noncrossing_matchings
from plucker.invariant_ring import straighten, x_of, y_of
from plucker.relations import (
    BinomialQuadDatum,
    GenSegreDatum,
    SquareRotationDatum,
    SymElement,
    coords_vector,
    count_good_bipartitions,
    evaluate_sym,
    generalized_segre,
    ideal_component_dim,
    ideal_kernel_basis,
    in_quadratic_ideal,
    iota_relation,
    orbit_span_check,
    outer_product,
    project_to_ring,
    quadratic_ideal_component,
    segre8,
    segre_cubic,
    simple_binomial,
    simplest_binomial,
    square_rotation,
    sym_basis,
    sym_unit,
    to_coords,
)
from plucker.reports import random_config
from plucker.symmetry_rep import act_ring, act_sym, perm_from_cycles


def test_project_examples():
    m = ((1, 2), (3, 4))
    e = SymElement.monomial(4, (m,))
    assert project_to_ring(e) == straighten(y_of(4, m))
    assert project_to_ring(segre_cubic()).is_zero()
    sq = SymElement.monomial(4, (m, m))
    doubled = straighten(x_of(4, [(1, 2), (3, 4), (1, 2), (3, 4)]))
    assert project_to_ring(sq) == doubled.scale(
        project_to_ring(sq).terms.get(((1, 2), (1, 2), (3, 4), (3, 4))) /
        doubled.terms.get(((1, 2), (1, 2), (3, 4), (3, 4))))


def test_segre_cubic_is_a_relation():
    s = segre_cubic()
    assert len(s.terms) == 2
    assert project_to_ring(s).is_zero()
    rng = random.Random(0)
    for _ in range(10):
        assert evaluate_sym(s, random_config(6, rng)) == 0


def test_segre_sign_twisted_action():
    # sigma . segre = sgn(sigma) * (segre built from the relabeled layers)
    from plucker.relations import recoloring_relation

    left = (((1, 2), (3, 6), (4, 5)), ((1, 4), (2, 3), (5, 6)),
            ((1, 6), (2, 5), (3, 4)))
    right = (((1, 4), (2, 5), (3, 6)), ((1, 2), (3, 4), (5, 6)),
             ((1, 6), (2, 3), (4, 5)))
    for a, b in itertools.combinations(range(1, 7), 2):
        sigma = perm_from_cycles(6, [(a, b)])
        relabeled = recoloring_relation(
            6, [[(sigma[x], sigma[y]) for x, y in m] for m in left],
            [[(sigma[x], sigma[y]) for x, y in m] for m in right])
        assert act_sym(sigma, segre_cubic()) == relabeled.scale(-1)


def test_equivariance_of_projection():
    rng = random.Random(1)
    matchings = enumerate_matchings(6)
    for _ in range(20):
        mono = tuple(rng.choice(matchings) for _ in range(2))
        e = SymElement.monomial(6, mono, rng.randint(1, 5))
        img = list(range(1, 7))
        rng.shuffle(img)
        sigma = dict(zip(range(1, 7), img))
        lhs = project_to_ring(act_sym(sigma, e))
        rhs = straighten(act_ring(sigma, project_to_ring(e)))
        assert lhs == rhs


def test_simplest_binomial_examples():
    rel = simplest_binomial((1, 2, 6, 5), (3, 4, 8, 7))
    assert len(rel.terms) == 2 and not rel.is_zero()
    assert project_to_ring(rel).is_zero()
    # adding doubled edges keeps it a relation
    rel10 = simplest_binomial((1, 2, 6, 5), (3, 4, 8, 7), [(9, 10)])
    assert not rel10.is_zero() and project_to_ring(rel10).is_zero()
    with pytest.raises(ValueError):
        simplest_binomial((1, 2, 3, 4), (3, 5, 6, 7))


def test_simple_binomial_degenerate_cases():
    # all 2-cycles: recoloring is the identity on monomials
    m = ((1, 2), (3, 4), (5, 6), (7, 8))
    datum = BinomialQuadDatum(8, frozenset({1, 2, 3, 4}), m, m)
    assert simple_binomial(datum).is_zero()
    # only 4-cycle inside U: recoloring swaps the two layers
    l1 = ((1, 2), (3, 4), (5, 6), (7, 8))
    l2 = ((1, 3), (2, 4), (5, 6), (7, 8))
    datum = BinomialQuadDatum(8, frozenset({1, 2, 3, 4}), l1, l2)
    assert simple_binomial(datum).is_zero()
    # simplest datum agrees with the simplest_binomial constructor
    rel = simplest_binomial((1, 2, 6, 5), (3, 4, 8, 7))
    datum = BinomialQuadDatum(
        8, frozenset({3, 4, 7, 8}),
        layer1=((1, 2), (3, 4), (5, 6), (7, 8)),
        layer2=((1, 5), (2, 6), (3, 7), (4, 8)))
    assert simple_binomial(datum) == rel
    with pytest.raises(ValueError):
        BinomialQuadDatum(8, frozenset({1, 2, 3}), l1, l2).validate()


def test_simple_binomials_span_of_simplest_n8():
    # every simple binomial with U = {5,6,7,8} is a combination of simplest
    # binomials with the same U (exhaustive over the generating family)
    u = frozenset({5, 6, 7, 8})
    inside = enumerate_matchings(4)
    shift = {1: 5, 2: 6, 3: 7, 4: 8}
    inside8 = [tuple(sorted((shift[a], shift[b]) for a, b in m)) for m in inside]
    outside = enumerate_matchings(4)
    dim = len(sym_basis(8, 2))
    span = IncrementalSpan(dim)
    for m_in1, m_in2 in itertools.permutations(inside8, 2):
        for m_out1, m_out2 in itertools.permutations(outside, 2):
            datum = BinomialQuadDatum(
                8, u, tuple(sorted(m_out1 + m_in1)), tuple(sorted(m_out2 + m_in2)))
            span.add(coords_vector(simple_binomial(datum)))
    for m_in1, m_in2 in itertools.product(inside8, repeat=2):
        for m_out1, m_out2 in itertools.product(outside, repeat=2):
            datum = BinomialQuadDatum(
                8, u, tuple(sorted(m_out1 + m_in1)), tuple(sorted(m_out2 + m_in2)))
            rel = simple_binomial(datum)
            assert span.contains(coords_vector(rel))


def test_six_cycle_simple_binomial_in_simplest_span_n10():
    # a simple binomial whose graph has a 6-cycle outside U is a combination
    # of simplest binomials with the same U
    u = (7, 8, 9, 10)
    uset = frozenset(u)
    inside = [tuple(sorted(((u[a], u[b]), (u[c], u[d]))))
              for (a, b), (c, d) in (((0, 1), (2, 3)), ((0, 2), (1, 3)),
                                     ((0, 3), (1, 2)))]
    span = IncrementalSpan(len(sym_basis(10, 2)))
    for subset in itertools.combinations(range(1, 7), 4):
        rest = [v for v in range(1, 7) if v not in subset]
        doubled = (rest[0], rest[1])

        def lift(m):
            return tuple(sorted((subset[a - 1], subset[b - 1]) for a, b in m))

        for m1, m2 in itertools.permutations(enumerate_matchings(4), 2):
            for i1, i2 in itertools.permutations(inside, 2):
                l1 = tuple(sorted(lift(m1) + (doubled,) + i1))
                l2 = tuple(sorted(lift(m2) + (doubled,) + i2))
                span.add(coords_vector(simple_binomial(
                    BinomialQuadDatum(10, uset, l1, l2))))
    l1 = tuple(sorted(((1, 2), (3, 4), (5, 6), (7, 8), (9, 10))))
    l2 = tuple(sorted(((2, 3), (4, 5), (1, 6), (7, 9), (8, 10))))
    rel = simple_binomial(BinomialQuadDatum(10, uset, l1, l2))
    assert not rel.is_zero()
    assert project_to_ring(rel).is_zero()
    assert span.contains(coords_vector(rel))


def test_ideal_dim_n10_matches_hook_length():
    from plucker.symmetry_rep import hook_length_dim

    # the only partition of 10 into exactly four even parts is 4+2+2+2
    assert ideal_component_dim(10, 2) == hook_length_dim((4, 2, 2, 2)) == 300


def test_iota_images_are_simple_binomials():
    # the wedge map lands in the quadratic ideal and in the simple-binomial span
    u = (5, 6, 7, 8)
    outs = noncrossing_matchings(4)
    ins = [((5, 6), (7, 8)), ((5, 8), (6, 7))]
    for g1, g2 in itertools.combinations(outs, 2):
        for d1, d2 in itertools.combinations(ins, 2):
            rel = iota_relation(8, u, (g1, g2), (d1, d2))
            assert project_to_ring(rel).is_zero()


def test_generalized_segre_figure_datum():
    datum = genseg6_datum()
    datum.validate()
    assert datum.is_small() and not datum.is_degenerate()
    rel = generalized_segre(datum)
    assert project_to_ring(rel).is_zero()
    # proportional to the Segre cubic (Q is zero at n = 6)
    span = IncrementalSpan(len(sym_basis(6, 3)))
    span.add(coords_vector(rel))
    span.add(coords_vector(segre_cubic()))
    assert span.dim == 1
    rng = random.Random(2)
    for _ in range(10):
        assert evaluate_sym(rel, random_config(6, rng)) == 0


def test_generalized_segre_validation():
    datum = genseg6_datum()
    bad = GenSegreDatum(6, datum.u_red, datum.u_green, datum.u_blue,
                        red=((1, 2), (3, 5), (4, 6)),  # wrong color pattern
                        green=datum.green, blue=datum.blue)
    with pytest.raises(ValueError):
        bad.validate()


def test_degenerate_generalized_segre_lies_in_q():
    datum = degenerate_genseg8_datum()
    datum.validate()
    assert datum.is_degenerate()
    rel = generalized_segre(datum)
    assert project_to_ring(rel).is_zero()
    assert in_quadratic_ideal(rel)


def test_square_rotation():
    datum = square_rotation_even_datum()
    datum.validate()
    paths = datum.special_paths()
    assert sorted(len(p) for p in paths) == [4, 4]  # both even length
    rel = square_rotation(datum)
    assert project_to_ring(rel).is_zero()
    assert in_quadratic_ideal(rel)
    rng = random.Random(3)
    for _ in range(5):
        assert evaluate_sym(rel, random_config(8, rng)) == 0
    # minimal datum: purple cycles absent, the lift is a single monomial per side
    assert len(rel.terms) == 2
    with pytest.raises(ValueError):
        SquareRotationDatum(8, (1, 2, 3, 4),
                            purple=((1, 5), (5, 6), (2, 6), (3, 7), (7, 8), (4, 8)),
                            black=((5, 7), (6, 7))).validate()


def test_outer_product():
    s = segre_cubic()
    # unit law
    assert outer_product(s, sym_unit(3), n=6,
                         relabel_b={}) == s
    # the eight-point extension matches the explicit encoding
    s8 = segre8()
    assert s8.n == 8 and s8.degree == 3
    triple = tuple(sorted(m + ((7, 8),) for m in sorted(s.terms)[0]))
    assert triple in s8.terms
    assert project_to_ring(s8).is_zero()
    # degree mismatch and label collisions are rejected
    with pytest.raises(ValueError):
        outer_product(s, SymElement.monomial(2, (((1, 2),),) * 2))
    with pytest.raises(ValueError):
        outer_product(s, SymElement.monomial(2, (((1, 2),),) * 3),
                      n=8, relabel_b={1: 1, 2: 2})


def _embed(e, n, relabel):
    from plucker.graph_core import canonicalize
    from plucker.invariant_ring import RingElement

    items = []
    for key, c in e.terms.items():
        cf = canonicalize([(relabel[a], relabel[b]) for a, b in key])
        items.append((cf.graph, c * cf.sign))
    return RingElement.from_terms(n, items)


def test_outer_product_commutes_with_projection():
    from plucker.invariant_ring import multiply

    rng = random.Random(7)
    keep = {i: i for i in range(1, 5)}
    shift = {i: i + 4 for i in range(1, 5)}
    for _ in range(10):
        ma = tuple(rng.choice(enumerate_matchings(4)) for _ in range(2))
        mb = tuple(rng.choice(enumerate_matchings(4)) for _ in range(2))
        a = SymElement.monomial(4, ma)
        b = SymElement.monomial(4, mb)
        prod = project_to_ring(outer_product(a, b))
        ra = _embed(project_to_ring(a), 8, keep)
        rb = _embed(project_to_ring(b), 8, shift)
        assert prod == straighten(multiply(ra, rb))


def test_outer_product_associative_and_projects():
    m2 = SymElement.monomial(2, (((1, 2),),) * 3)
    a = outer_product(outer_product(segre_cubic(), m2), m2)
    b = outer_product(segre_cubic(), outer_product(m2, m2))
    assert a == b and a.n == 10
    # relation (x) anything is still a relation
    rng = random.Random(4)
    for _ in range(5):
        layers = tuple(rng.choice(enumerate_matchings(2)) for _ in range(3))
        rel = outer_product(segre_cubic(), SymElement.monomial(2, layers))
        assert project_to_ring(rel).is_zero()
        assert evaluate_sym(rel, random_config(8, rng)) == 0


def test_ideal_dimensions_and_guards():
    assert ideal_component_dim(6, 2) == 0
    assert ideal_component_dim(8, 2) == 14
    assert ideal_component_dim(6, 3) == 1
    with pytest.raises(ValueError):
        ideal_component_dim(12, 2)
    with pytest.raises(ValueError):
        ideal_component_dim(10, 3)
    with pytest.raises(ValueError):
        quadratic_ideal_component(10)


def test_ideal_kernel_is_segre_at_6_3():
    kernel = ideal_kernel_basis(6, 3)
    assert len(kernel) == 1
    vec = [Fraction(0)] * len(sym_basis(6, 3))
    for i, c in coords_vector(segre_cubic()).items():
        vec[i] = c
    k = kernel[0]
    ratio = None
    for a, b in zip(k, vec):
        if bool(a) != bool(b):
            assert False, "supports differ"
        if a:
            r = b / a
            assert ratio in (None, r)
            ratio = r


def test_sym2_dimension_formula():
    for n in (6, 8, 10):
        cat = catalan(n // 2)
        assert len(sym_basis(n, 2)) == cat * (cat + 1) // 2
    assert len(sym_basis(6, 3)) == 35


def test_hook_cross_check_for_i2_8():
    from plucker.symmetry_rep import hook_length_dim

    assert ideal_component_dim(8, 2) == hook_length_dim((2, 2, 2, 2))


def test_orbit_span_checks():
    rel = simplest_binomial((1, 2, 6, 5), (3, 4, 8, 7))
    rank, spans = orbit_span_check(rel)
    assert (rank, spans) == (14, True)
    rank, spans = orbit_span_check(segre_cubic())
    assert (rank, spans) == (1, True)
    assert orbit_span_check(SymElement.zero(6, 2)) == (0, True)  # I2_6 = 0
    assert orbit_span_check(SymElement.zero(8, 2)) == (0, False)
    with pytest.raises(ValueError):
        orbit_span_check(SymElement.monomial(6, (((1, 2), (3, 4), (5, 6)),) * 2))


def test_quadratic_ideal_component():
    vecs, dim = quadratic_ideal_component(6)
    assert dim == 0 and not vecs
    vecs, dim = quadratic_ideal_component(8)
    assert dim == 196
    assert ideal_component_dim(8, 3) == 196


def test_count_good_bipartitions():
    assert count_good_bipartitions(10) == 25
    assert count_good_bipartitions(12) == 112
    with pytest.raises(ValueError):
        count_good_bipartitions(8)


def test_evaluate_sym_matches_projection():
    rng = random.Random(5)
    matchings = enumerate_matchings(6)
    from plucker.invariant_ring import evaluate

    for _ in range(20):
        mono = tuple(rng.choice(matchings) for _ in range(2))
        e = SymElement.monomial(6, mono, Fraction(rng.randint(1, 4), 3))
        p = random_config(6, rng)
        assert evaluate_sym(e, p) == evaluate(project_to_ring(e), p)


def test_sym_element_json_round_trip():
    s = segre_cubic().scale(Fraction(3, 2))
    assert SymElement.from_json(s.to_json()) == s


def test_to_coords_agrees_with_projection():
    # coordinates recombine to the same ring element
    rng = random.Random(6)
    matchings = enumerate_matchings(6)
    for _ in range(10):
        mono = tuple(rng.choice(matchings) for _ in range(3))
        e = SymElement.monomial(6, mono)
        coords = to_coords(e)
        rebuilt = SymElement.from_terms(6, 3, list(coords.items()))
        assert project_to_ring(rebuilt) == project_to_ring(e)

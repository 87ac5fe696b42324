import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

import plucker.invariant_ring as ir
from plucker.graph_core import catalan, enumerate_matchings
from plucker.invariant_ring import (
    FuelExhausted,
    PointConfig,
    RingElement,
    StraightenCache,
    evaluate,
    hilbert_dim,
    kempe_factor,
    multiply,
    straighten,
    straighten_graph,
    x_of,
    y_of,
)


def rand_config(n, rng):
    xs = []
    while len(xs) < n:
        x = rng.randint(-9, 9)
        if x not in xs:
            xs.append(x)
    return PointConfig.from_integers(xs)


def rand_element(n, rng, max_edges=8, max_terms=3):
    items = []
    for _ in range(rng.randint(1, max_terms)):
        edges = []
        for _ in range(rng.randint(1, max_edges)):
            a, b = rng.sample(range(1, n + 1), 2)
            edges.append((a, b))
        cf = ir.canonicalize(edges)
        items.append((cf.graph, Fraction(rng.randint(-3, 3)) * cf.sign))
    return RingElement.from_terms(n, items)


def test_x_of_and_y_of_examples():
    assert x_of(2, [(2, 1)]) == RingElement(2, {((1, 2),): Fraction(-1)})
    assert x_of(2, [(1, 1)]).is_zero()
    assert y_of(4, [(1, 2), (3, 4)]) == RingElement(
        4, {((1, 2), (3, 4)): Fraction(1)})


def test_multiply_examples():
    a = x_of(4, [(1, 2)])
    b = x_of(4, [(3, 4)])
    assert multiply(a, b) == RingElement(4, {((1, 2), (3, 4)): Fraction(1)})
    sq = multiply(a, a)
    assert sq == RingElement(4, {((1, 2), (1, 2)): Fraction(1)})
    c = (a + b)
    d = x_of(6, [(5, 6)])
    with pytest.raises(ValueError):
        multiply(c, d)
    dist = multiply(RingElement.from_terms(6, [(((1, 2),), 1), (((3, 4),), 1)]),
                    x_of(6, [(5, 6)]))
    assert len(dist.terms) == 2


def test_straighten_examples():
    e = x_of(4, [(1, 2), (3, 4)])
    assert straighten(e) == e
    crossing = x_of(4, [(1, 3), (2, 4)])
    expanded = straighten(crossing)
    assert expanded.terms == {((1, 2), (3, 4)): Fraction(1),
                              ((1, 4), (2, 3)): Fraction(1)}
    combo = crossing - x_of(4, [(1, 2), (3, 4)]) - x_of(4, [(1, 4), (2, 3)])
    assert straighten(combo).is_zero()


def test_straighten_idempotent_and_linear():
    rng = random.Random(3)
    for _ in range(30):
        e = rand_element(8, rng)
        s = straighten(e)
        assert straighten(s) == s
        f = rand_element(8, rng)
        assert straighten(e + f) == straighten(e) + straighten(f)


def test_straighten_supported_on_noncrossing():
    rng = random.Random(4)
    from plucker.graph_core import crossing as chords_cross

    for _ in range(30):
        e = rand_element(8, rng)
        for key in straighten(e).terms:
            assert not any(chords_cross(p, q)
                           for p, q in itertools.combinations(key, 2))


def test_evaluate_examples():
    e = x_of(2, [(1, 2)])
    p = PointConfig(((Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))))
    assert evaluate(e, p) == -1
    assert evaluate(RingElement.zero(2), p) == 0
    with pytest.raises(ValueError):
        evaluate(e, PointConfig(((Fraction(1), Fraction(1)),)))


def test_evaluation_oracle_for_straightening():
    # evaluation is a ring homomorphism killing the relations
    rng = random.Random(5)
    for _ in range(100):
        n = rng.choice((4, 6, 8, 10))
        e = rand_element(n, rng, max_edges=3 * n // 2 if n <= 8 else 6)
        s = straighten(e)
        for _ in range(5):
            p = rand_config(n, rng)
            assert evaluate(s, p) == evaluate(e, p)


def test_evaluate_is_multiplicative():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.choice((4, 6))
        a, b = rand_element(n, rng, 4), rand_element(n, rng, 4)
        p = rand_config(n, rng)
        assert evaluate(multiply(a, b), p) == evaluate(a, p) * evaluate(b, p)


def test_undirected_plucker_identity():
    # the three-term Y relation on two edges of a matching straightens to zero
    for n in (4, 6, 8):
        for m in enumerate_matchings(n):
            for (a, b), (c, d) in itertools.combinations(m, 2):
                rest = [e for e in m if e not in ((a, b), (c, d))]
                y1 = y_of(n, list(m))
                y2 = y_of(n, rest + [(a, c), (b, d)])
                y3 = y_of(n, rest + [(a, d), (b, c)])
                assert straighten(y1 + y2 + y3).is_zero()


def test_hilbert_dims():
    assert hilbert_dim(6, 1) == 5
    assert hilbert_dim(6, 2) == 15
    assert hilbert_dim(6, 3) == 34
    for n in (2, 4, 6, 8, 10):
        assert hilbert_dim(n, 1) == catalan(n // 2)


def test_noncrossing_family_is_a_basis_of_functions():
    # independence certificate: evaluating the non-crossing graphs at enough
    # random configurations gives a full-rank exact matrix, and the full
    # matching family only spans a Catalan-dimensional function space
    from plucker.exact_linalg import QMatrix, rank
    from plucker.graph_core import enumerate_noncrossing_regular

    rng = random.Random(8)
    for n, d in ((6, 1), (6, 2), (8, 1)):
        basis = enumerate_noncrossing_regular(n, d)
        configs = [rand_config(n, rng) for _ in range(2 * len(basis))]
        m = QMatrix(len(basis), len(configs))
        for i, g in enumerate(basis):
            e = RingElement(n, {g: Fraction(1)})
            for j, p in enumerate(configs):
                m.set(i, j, evaluate(e, p))
        assert rank(m.freeze()) == len(basis)
    for n in (6, 8):
        matchings = enumerate_matchings(n)
        configs = [rand_config(n, rng) for _ in range(2 * len(matchings))]
        m = QMatrix(len(matchings), len(configs))
        for i, g in enumerate(matchings):
            e = y_of(n, g)
            for j, p in enumerate(configs):
                m.set(i, j, evaluate(e, p))
        assert rank(m.freeze()) == catalan(n // 2)


def test_kempe_factor_examples():
    from plucker.relations import project_to_ring

    # a matching factors as itself
    m = ((1, 2), (3, 4))
    kf = kempe_factor(4, m)
    assert set(kf.terms) == {(m,)}
    # 2-regular union of two matchings on n=4: single monomial
    kf = kempe_factor(4, [(1, 2), (3, 4), (1, 3), (2, 4)])
    assert set(kf.terms) == {(((1, 2), (3, 4)), ((1, 3), (2, 4)))}
    # one positive and one negative edge; the graph is a single even cycle,
    # so the direct peel applies and the straightening oracle is the check
    g = [(1, 2), (4, 5), (1, 6), (3, 6), (3, 4), (2, 5)]
    kf = kempe_factor(6, g)
    assert (project_to_ring(kf) - straighten(x_of(6, g))).is_zero()
    # two odd cycles force the positive/negative Plucker phase
    g = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]
    kf = kempe_factor(6, g)
    assert len(kf.terms) > 1
    assert (project_to_ring(kf) - straighten(x_of(6, g))).is_zero()


def test_kempe_factor_random_oracle():
    from plucker.relations import project_to_ring

    rng = random.Random(7)
    for _ in range(25):
        n = rng.choice((4, 6, 8))
        d = rng.choice((2, 3))
        layers = [rng.choice(enumerate_matchings(n)) for _ in range(d)]
        edges = [e for m in layers for e in m]
        kf = kempe_factor(n, edges)
        assert (project_to_ring(kf) - straighten(x_of(n, edges))).is_zero()


def test_kempe_factor_rejects_bad_input():
    with pytest.raises(ValueError):
        kempe_factor(4, [(1, 2)])
    with pytest.raises(ValueError):
        kempe_factor(2, [(1, 1)])


def test_json_round_trip():
    e = RingElement.from_terms(
        6, [(((1, 2), (3, 4), (5, 6)), Fraction(3, 2)),
            (((1, 4), (2, 3), (5, 6)), Fraction(-1))])
    assert RingElement.from_json(e.to_json()) == e
    assert '"3/2"' in e.to_json()


def test_fuel_exhaustion_signals_internal_error(monkeypatch):
    monkeypatch.setattr(ir, "STRAIGHTEN_FUEL", 1)
    with pytest.raises(FuelExhausted):
        straighten_graph(6, ((1, 3), (2, 4), (2, 5), (4, 6)),
                         cache=StraightenCache())


def test_concurrent_straightening_shares_cache():
    keys = list(enumerate_matchings(8))[:40]

    def work(m):
        return straighten_graph(8, m)

    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(work, keys))
    for m, got in zip(keys, results):
        assert got == straighten_graph(8, m)


def test_cache_stats_move():
    cache = StraightenCache()
    straighten_graph(6, ((1, 3), (2, 5), (4, 6)), cache=cache)
    assert cache.stats()["entries"] > 0
    first = cache.stats()["misses"]
    straighten_graph(6, ((1, 3), (2, 5), (4, 6)), cache=cache)
    assert cache.stats()["misses"] == first
    assert cache.stats()["hits"] >= 1


def test_save_and_load_cache(tmp_path):
    cache = StraightenCache()
    keys = [((1, 3), (2, 5), (4, 6)), ((1, 4), (2, 6), (3, 5))]
    expected = {k: straighten_graph(6, k, cache=cache) for k in keys}
    files = ir.save_cache(tmp_path, cache)
    assert files
    fresh = StraightenCache()
    outcome = ir.load_cache(tmp_path, fresh)
    assert outcome["loaded"] >= len(keys) and not outcome["skipped"]
    for k, exp in expected.items():
        assert fresh.bucket(6, len(k))[k] == exp
    # corrupt file: skipped with a reason, nothing raised
    (tmp_path / "straighten_n4_m2.json").write_text("{broken")
    outcome = ir.load_cache(tmp_path, StraightenCache())
    assert outcome["skipped"]
    # version mismatch: ignored with a warning entry
    import json as _json

    payload = _json.loads(open(files[0]).read())
    payload["version"] = 999
    open(files[0], "w").write(_json.dumps(payload))
    outcome = ir.load_cache(tmp_path, StraightenCache())
    assert any("version mismatch" in s for s in outcome["skipped"])

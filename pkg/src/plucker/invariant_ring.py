"""The invariant ring: graph combinations, straightening, Kempe factorization.

A ring element is a finitely supported rational combination of canonical
loop-free directed graphs on 1..n.  The straightening algorithm rewrites any
element into the non-crossing basis by resolving crossing edge pairs with the
Plucker relation

    X_ab X_cd = X_ad X_cb + X_ac X_bd

always picking the lexicographically smallest crossing pair.  Expansions of
single graphs are memoized in a process-wide cache that can be persisted to
disk (see the cli module).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .graph_core import (
    Edge,
    GraphKey,
    canonicalize,
    crossing,
    enumerate_noncrossing_regular,
    is_regular,
    matching_key,
    orientation_sign,
    valences,
)

_LOG = logging.getLogger(__name__)

# One straighten() call may not exceed this many Plucker rewrites; hitting the
# bound means a bug in the termination argument, not bad user input.
STRAIGHTEN_FUEL = 10_000_000


class FuelExhausted(RuntimeError):
    """Internal error: the rewrite engine exceeded its fuel budget."""


class StraightenCache:
    """Memo of canonical graph -> non-crossing expansion, bucketed by (n, edges).

    Buckets exist so the cache can be persisted one (n, degree) file at a
    time.  Entries map a canonical graph key to an integer-coefficient
    expansion supported on non-crossing graphs.  Concurrent readers are fine;
    inserts are idempotent (entries are canonical), so last-writer-wins.
    """

    VERSION = 1

    def __init__(self):
        self.buckets: dict[tuple[int, int], dict[GraphKey, dict[GraphKey, int]]] = {}
        self.hits = 0
        self.misses = 0

    def bucket(self, n: int, m: int) -> dict:
        return self.buckets.setdefault((n, m), {})

    def clear(self) -> None:
        self.buckets.clear()
        self.hits = 0
        self.misses = 0

    def stats(self) -> dict:
        return {
            "hits": self.hits,
            "misses": self.misses,
            "entries": sum(len(b) for b in self.buckets.values()),
        }


GLOBAL_CACHE = StraightenCache()


def save_cache(directory, cache: StraightenCache | None = None) -> list[str]:
    """Persist the memo, one versioned JSON file per (n, edge count) bucket."""
    import os

    cache = cache or GLOBAL_CACHE
    os.makedirs(directory, exist_ok=True)
    written = []
    for (n, m), bucket in sorted(cache.buckets.items()):
        if not bucket:
            continue
        path = os.path.join(directory, f"straighten_n{n}_m{m}.json")
        payload = {
            "version": StraightenCache.VERSION,
            "n": n,
            "edges": m,
            "entries": [[list(map(list, key)),
                         [[list(map(list, g)), c] for g, c in sorted(exp.items())]]
                        for key, exp in sorted(bucket.items())],
        }
        with open(path, "w") as fh:
            json.dump(payload, fh)
        written.append(path)
    return written


def load_cache(directory, cache: StraightenCache | None = None) -> dict:
    """Merge persisted buckets back in; bad or mismatched files are skipped.

    Returns {"loaded": k, "skipped": [reasons]} so callers can warn.
    """
    import glob
    import os

    cache = cache or GLOBAL_CACHE
    loaded = 0
    skipped = []
    for path in sorted(glob.glob(os.path.join(str(directory), "straighten_n*_m*.json"))):
        try:
            with open(path) as fh:
                payload = json.load(fh)
            if payload.get("version") != StraightenCache.VERSION:
                skipped.append(f"{path}: version mismatch")
                continue
            bucket = cache.bucket(int(payload["n"]), int(payload["edges"]))
            for key_l, exp_l in payload["entries"]:
                key = tuple(tuple(e) for e in key_l)
                bucket[key] = {tuple(tuple(e) for e in g): int(c) for g, c in exp_l}
                loaded += 1
        except (OSError, ValueError, KeyError, TypeError) as exc:
            skipped.append(f"{path}: {exc}")
    return {"loaded": loaded, "skipped": skipped}


def first_crossing_pair(edges: GraphKey):
    """Lexicographically smallest crossing pair, keyed by sorted endpoint 4-tuple."""
    best = None
    k = len(edges)
    for i in range(k):
        for j in range(i + 1, k):
            if crossing(edges[i], edges[j]):
                key = tuple(sorted(edges[i] + edges[j]))
                if best is None or key < best[0]:
                    best = (key, i, j)
    return None if best is None else (best[1], best[2])


def _plucker_children(edges: GraphKey, i: int, j: int) -> tuple[GraphKey, GraphKey]:
    """Rewrite a CROSSING canonical pair; children stay canonical, signs +1."""
    rest = edges[:i] + edges[i + 1:j] + edges[j + 1:]
    a, b = edges[i]
    c, d = edges[j]
    if a > c:
        (a, b), (c, d) = (c, d), (a, b)
    # a < c < b < d; both replacement pairs are already min->max and non-crossing
    g1 = tuple(sorted(rest + ((a, d), (c, b))))
    g2 = tuple(sorted(rest + ((a, c), (b, d))))
    return g1, g2


def plucker_rewrite(edges: GraphKey, i: int, j: int):
    """X_ab X_cd = X_ad X_cb + X_ac X_bd on any edge pair, re-canonicalized.

    Returns up to two (graph, sign) children; loop children are dropped.
    """
    rest = edges[:i] + edges[i + 1:j] + edges[j + 1:]
    a, b = edges[i]
    c, d = edges[j]
    out = []
    for pair in (((a, d), (c, b)), ((a, c), (b, d))):
        cf = canonicalize(rest + pair)
        if cf.sign:
            out.append((cf.graph, cf.sign))
    return out


def straighten_graph(n: int, key: GraphKey,
                     cache: StraightenCache | None = None) -> dict[GraphKey, int]:
    """Expand one canonical graph in the non-crossing basis (integer coeffs).

    Iterative worklist with memoization; termination is guaranteed because a
    Plucker step strictly decreases the total Euclidean chord length of every
    branch, but a fuel counter guards against implementation bugs.
    """
    cache = cache or GLOBAL_CACHE
    memo = cache.bucket(n, len(key))
    if key in memo:
        cache.hits += 1
        return memo[key]
    cache.misses += 1
    fuel = STRAIGHTEN_FUEL
    stack = [key]
    children: dict[GraphKey, tuple[GraphKey, GraphKey] | None] = {}
    while stack:
        g = stack[-1]
        if g in memo:
            stack.pop()
            continue
        pair = children.get(g)
        if pair is None and g not in children:
            found = first_crossing_pair(g)
            if found is None:
                memo[g] = {g: 1}
                stack.pop()
                continue
            fuel -= 1
            if fuel <= 0:
                raise FuelExhausted(
                    f"straightening exceeded {STRAIGHTEN_FUEL} rewrites on n={n}")
            pair = _plucker_children(g, *found)
            children[g] = pair
        g1, g2 = children[g]
        pending = [c for c in (g1, g2) if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        acc = dict(memo[g1])
        for h, c in memo[g2].items():
            acc[h] = acc.get(h, 0) + c
        memo[g] = {h: c for h, c in acc.items() if c}
        stack.pop()
    return memo[key]


@dataclass(frozen=True)
class RingElement:
    """Rational combination of canonical loop-free directed graphs on 1..n."""

    n: int
    terms: dict[GraphKey, Fraction] = field(default_factory=dict)

    @classmethod
    def zero(cls, n: int) -> "RingElement":
        return cls(n, {})

    @classmethod
    def from_terms(cls, n: int, items) -> "RingElement":
        acc: dict[GraphKey, Fraction] = {}
        for key, coeff in items:
            coeff = Fraction(coeff)
            if coeff:
                acc[key] = acc.get(key, Fraction(0)) + coeff
        return cls(n, {k: v for k, v in acc.items() if v})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "RingElement") -> "RingElement":
        assert self.n == other.n, "label-set mismatch"
        return RingElement.from_terms(
            self.n, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + other.scale(-1)

    def scale(self, c) -> "RingElement":
        c = Fraction(c)
        if not c:
            return RingElement.zero(self.n)
        return RingElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElement) and self.n == other.n \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"RingElement(n={self.n}, 0)"
        bits = [f"{c}*X{list(k)}" for k, c in sorted(self.terms.items())]
        return f"RingElement(n={self.n}, " + " + ".join(bits) + ")"

    def to_json(self) -> str:
        terms = [{"coeff": str(c), "edges": [list(e) for e in k]}
                 for k, c in sorted(self.terms.items())]
        return json.dumps({"n": self.n, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "RingElement":
        obj = json.loads(text)
        n = int(obj["n"])
        items = []
        for t in obj["terms"]:
            cf = canonicalize([tuple(e) for e in t["edges"]])
            items.append((cf.graph, Fraction(t["coeff"]) * cf.sign))
        return cls.from_terms(n, items)


def x_of(n: int, edges) -> RingElement:
    """X of a directed graph: sign-canonicalized basis graph, or 0 on loops."""
    cf = canonicalize(edges)
    if cf.sign == 0:
        return RingElement.zero(n)
    return RingElement(n, {cf.graph: Fraction(cf.sign)})


def y_of(n: int, pairs) -> RingElement:
    """Y of an undirected matching: eps(min->max direction) times its X."""
    key = matching_key(pairs)
    return RingElement(n, {key: Fraction(orientation_sign(key))})


def multiply(a: RingElement, b: RingElement) -> RingElement:
    """Bilinear extension of the semigroup product (disjoint union of edges)."""
    if a.n != b.n:
        raise ValueError("label-set mismatch")
    items = []
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            items.append((tuple(sorted(ka + kb)), ca * cb))
    return RingElement.from_terms(a.n, items)


def straighten(e: RingElement, cache: StraightenCache | None = None) -> RingElement:
    """Rewrite into the non-crossing basis; a projection onto normal forms."""
    acc: dict[GraphKey, Fraction] = {}
    for key, coeff in e.terms.items():
        for h, c in straighten_graph(e.n, key, cache).items():
            acc[h] = acc.get(h, Fraction(0)) + coeff * c
    out = RingElement(e.n, {k: v for k, v in acc.items() if v})
    # observed, not asserted: integer inputs straighten to integer outputs
    # (the single-graph expansions are integral), so integrality can only
    # break through non-integer input coefficients
    if all(v.denominator == 1 for v in e.terms.values()) and \
            any(v.denominator != 1 for v in out.terms.values()):
        _LOG.info("integrality broke during straightening on n=%d", e.n)
    return out


@dataclass(frozen=True)
class PointConfig:
    """n points on the projective line, exact projective coordinates (x, y)."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for x, y in self.points:
            assert x != 0 or y != 0, "(0,0) is not a projective point"

    @classmethod
    def from_integers(cls, xs) -> "PointConfig":
        return cls(tuple((Fraction(x), Fraction(1)) for x in xs))


def evaluate(e: RingElement, p: PointConfig) -> Fraction:
    """Evaluate at a configuration: product of 2x2 determinants per edge."""
    if len(p.points) != e.n:
        raise ValueError("configuration size mismatch")
    total = Fraction(0)
    for key, coeff in e.terms.items():
        prod = Fraction(1)
        for a, b in key:
            xa, ya = p.points[a - 1]
            xb, yb = p.points[b - 1]
            prod *= xa * yb - xb * ya
            if not prod:
                break
        total += coeff * prod
    return total


def hilbert_dim(n: int, d: int) -> int:
    """dim of the degree-d graded piece: count of non-crossing d-regular graphs."""
    assert n % 2 == 0 and d >= 0
    return len(enumerate_noncrossing_regular(n, d))


# --- Kempe factorization ------------------------------------------------------

def _find_perfect_matching(left, edges) -> list[Edge] | None:
    """Perfect matching in a bipartite multigraph by augmenting paths."""
    adj: dict[int, list[int]] = {u: [] for u in left}
    for a, b in edges:
        if a in adj:
            adj[a].append(b)
        else:
            adj[b].append(a)
    match_r: dict[int, int] = {}

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_r or augment(match_r[v], seen):
                match_r[v] = u
                return True
        return False

    for u in left:
        if not augment(u, set()):
            return None
    return [(u, v) for v, u in match_r.items()]


def _peel_matchings(n: int, key: GraphKey, d: int) -> list[GraphKey]:
    """Split a d-regular bipartite-neutral graph into d matchings (Hall)."""
    pos = [v for v in range(1, n // 2 + 1)]
    remaining = list(key)
    layers = []
    for _ in range(d):
        m = _find_perfect_matching(pos, remaining)
        assert m is not None, "Hall factorization failed on a regular bipartite graph"
        layer = matching_key(m)
        layers.append(layer)
        for e in layer:
            remaining.remove(e)
    assert not remaining
    return layers


def _cycle_peel_two_regular(n: int, key: GraphKey):
    """Split a 2-regular graph into two matchings by alternating its cycles.

    Returns None when some cycle is odd.  Deterministic: in each cycle the
    edge from the smallest vertex toward its smallest neighbor opens layer 1.
    """
    slots: dict[int, list[tuple[int, int]]] = {}
    for idx, (a, b) in enumerate(key):
        slots.setdefault(a, []).append((idx, b))
        slots.setdefault(b, []).append((idx, a))
    used = [False] * len(key)
    layers: tuple[list, list] = ([], [])
    for start in sorted(slots):
        begin = [(idx, w) for idx, w in sorted(slots[start]) if not used[idx]]
        if not begin:
            continue
        idx, nxt = begin[0]
        parity = 0
        cur = start
        while True:
            used[idx] = True
            layers[parity].append((min(cur, nxt), max(cur, nxt)))
            parity ^= 1
            cur = nxt
            options = [(i2, w2) for i2, w2 in sorted(slots[cur]) if not used[i2]]
            if not options:
                break
            idx, nxt = options[0]
        if parity != 0:
            return None  # odd cycle
    return tuple(sorted(layers[0])), tuple(sorted(layers[1]))


def kempe_factor(n: int, edges, d: int | None = None):
    """Write a regular graph as a combination of products of matchings.

    A matching maps to itself and a 2-regular union of even cycles peels
    directly by alternation; otherwise the +/- split is fixed (positives
    1..n/2, negatives n/2+1..n), positive edges are Pluckered against
    negative ones until everything is neutral, and each bipartite term is
    factored into matchings via Hall's theorem.  The image in the ring always
    straightens to the same expansion as X of the input.
    """
    from .relations import SymElement  # local import to avoid a cycle

    cf = canonicalize(edges)
    if cf.sign == 0:
        raise ValueError("graph has a loop")
    if d is None:
        vals = valences(n, cf.graph)[1:]
        d = vals[0]
    if not is_regular(n, cf.graph, d):
        raise ValueError("graph is not regular")
    if d == 0:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return SymElement.from_terms(
            n, 1, [((cf.graph,), Fraction(cf.sign * orientation_sign(cf.graph)))])
    if d == 2:
        peeled = _cycle_peel_two_regular(n, cf.graph)
        if peeled is not None:
            m1, m2 = peeled
            sign = cf.sign * orientation_sign(m1) * orientation_sign(m2)
            return SymElement.from_terms(n, 2, [((m1, m2), Fraction(sign))])
    half = n // 2

    def edge_type(e: Edge) -> int:
        a, b = e
        pa, pb = a <= half, b <= half
        if pa and pb:
            return 1
        if not pa and not pb:
            return -1
        return 0

    work: dict[GraphKey, int] = {cf.graph: cf.sign}
    done: dict[GraphKey, int] = {}
    while work:
        key, coeff = work.popitem()
        pos = [i for i, e in enumerate(key) if edge_type(e) == 1]
        neg = [i for i, e in enumerate(key) if edge_type(e) == -1]
        if not pos:
            assert not neg
            done[key] = done.get(key, 0) + coeff
            continue
        i, j = min(pos[0], neg[0]), max(pos[0], neg[0])
        for child, sign in plucker_rewrite(key, i, j):
            work[child] = work.get(child, 0) + coeff * sign
    terms = []
    for key, coeff in done.items():
        if not coeff:
            continue
        layers = _peel_matchings(n, key, d)
        sign = 1
        for layer in layers:
            sign *= orientation_sign(layer)
        terms.append((tuple(sorted(layers)), Fraction(coeff * sign)))
    return SymElement.from_terms(n, d, terms)

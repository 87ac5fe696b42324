"""Labeled multigraphs on circled points: canonical forms, matchings, signs.

Vertices are the integers 1..n, thought of as sitting on a circle in that
clockwise order.  A directed graph is a multiset of ordered pairs; loops are
allowed on input but are killed by canonicalization.  Everything here is a
pure function on immutable tuples, so values can be hashed, cached and shared
freely.

Representation conventions, used throughout the package:

* directed edge: pair ``(a, b)`` of ints in 1..n
* canonical directed graph: tuple of edges, each with ``a < b``, sorted
  lexicographically -- this is the hash key for ring elements
* matching: canonical graph whose edges partition 1..n into pairs
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import lru_cache

Edge = tuple[int, int]
GraphKey = tuple[Edge, ...]


@dataclass(frozen=True)
class LabelSet:
    """The vertex set {1..n}, circularly ordered 1 < 2 < ... < n clockwise."""

    n: int

    def __post_init__(self):
        assert self.n >= 1

    def labels(self) -> range:
        return range(1, self.n + 1)


@dataclass(frozen=True)
class ColoredGraph:
    """k matchings stacked on one label set; color i is layer i (ordered)."""

    n: int
    layers: tuple[GraphKey, ...]

    def __post_init__(self):
        for layer in self.layers:
            word = sorted(v for e in layer for v in e)
            assert word == list(range(1, self.n + 1)), \
                "every layer must be a perfect matching on 1..n"

    @property
    def degree(self) -> int:
        return len(self.layers)

    def union_edges(self) -> list[Edge]:
        return [e for layer in self.layers for e in layer]


@dataclass(frozen=True)
class CanonicalForm:
    """A canonical graph together with the sign picked up canonicalizing.

    ``sign`` is 0 exactly when the source graph contained a loop, otherwise
    (-1)**(number of edges reversed).
    """

    graph: GraphKey
    sign: int


def canonicalize(edges) -> CanonicalForm:
    """Rewrite every edge min->max, sort, and track the sign relation."""
    out = []
    sign = 1
    for a, b in edges:
        if a == b:
            return CanonicalForm(graph=(), sign=0)
        if a > b:
            a, b = b, a
            sign = -sign
        out.append((a, b))
    out.sort()
    return CanonicalForm(graph=tuple(out), sign=sign)


def valences(n: int, edges) -> list[int]:
    """Number of edge endpoints at each vertex (index 0 unused)."""
    val = [0] * (n + 1)
    for a, b in edges:
        val[a] += 1
        val[b] += 1
    return val


def is_regular(n: int, edges, d: int) -> bool:
    return all(v == d for v in valences(n, edges)[1:])


def perm_sign(word) -> int:
    """Sign of a permutation given as a sequence of distinct integers."""
    word = list(word)
    sign = 1
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] > word[j]:
                sign = -sign
    return sign


def orientation_sign(edges) -> int:
    """The fixed orientation eps on directed perfect matchings.

    eps(m) is the sign of the permutation (a1,b1,a2,b2,...) of 1..n, edges
    listed by increasing min endpoint.  Reordering whole edges permutes the
    word by blocks of two, an even permutation, so the edge order does not
    actually matter; sorting just pins the definition down.
    """
    edges = sorted(edges, key=lambda e: min(e))
    word = [v for e in edges for v in e]
    n = len(word)
    assert sorted(word) == list(range(1, n + 1)), "not a perfect matching"
    return perm_sign(word)


def matching_key(pairs) -> GraphKey:
    """Canonical key for an undirected perfect matching."""
    cf = canonicalize(pairs)
    assert cf.sign != 0, "loop in matching"
    word = [v for e in cf.graph for v in e]
    assert sorted(word) == list(range(1, len(word) + 1)), "not a perfect matching"
    return cf.graph


def crossing(e1: Edge, e2: Edge) -> bool:
    """Do two chords cross?  Arithmetic test, endpoints sorted, no geometry."""
    a, b = min(e1), max(e1)
    c, d = min(e2), max(e2)
    if a > c:
        a, b, c, d = c, d, a, b
    return a < c < b < d


def connected_component_partition(n: int, edges):
    """Vertex sets of connected components, plus the integer partition.

    Isolated vertices count as singleton components.  The partition is the
    multiset of component sizes, sorted descending.
    """
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    comps: dict[int, set[int]] = {}
    for v in range(1, n + 1):
        comps.setdefault(find(v), set()).add(v)
    blocks = sorted(comps.values(), key=lambda s: (-len(s), min(s)))
    partition = tuple(sorted((len(b) for b in blocks), reverse=True))
    return blocks, partition


@lru_cache(maxsize=None)
def enumerate_matchings(n: int) -> tuple[GraphKey, ...]:
    """All (n-1)!! perfect matchings on 1..n, in a fixed deterministic order."""
    assert n >= 0 and n % 2 == 0

    def rec(verts):
        if not verts:
            yield ()
            return
        first = verts[0]
        for i in range(1, len(verts)):
            rest = verts[1:i] + verts[i + 1:]
            for tail in rec(rest):
                yield ((first, verts[i]),) + tail

    return tuple(tuple(sorted(m)) for m in rec(tuple(range(1, n + 1))))


@lru_cache(maxsize=None)
def enumerate_noncrossing_regular(n: int, d: int) -> tuple[GraphKey, ...]:
    """All loop-free non-crossing d-regular multigraphs on 1..n, lex sorted.

    Enumeration completes the lowest vertex with remaining valence first;
    within a vertex, partners are chosen in increasing order, never below the
    previous partner, so each edge multiset appears exactly once.
    """
    assert n >= 2 and n % 2 == 0 and d >= 0
    results: list[GraphKey] = []

    def rec(remaining, chosen, min_partner):
        verts = [v for v in range(1, n + 1) if remaining[v] > 0]
        if not verts:
            results.append(tuple(sorted(chosen)))
            return
        v = verts[0]
        for w in range(max(v + 1, min_partner), n + 1):
            if remaining[w] == 0:
                continue
            e = (v, w)
            if any(crossing(e, f) for f in chosen):
                continue
            remaining[v] -= 1
            remaining[w] -= 1
            chosen.append(e)
            rec(remaining, chosen, w if remaining[v] > 0 else 0)
            chosen.pop()
            remaining[v] += 1
            remaining[w] += 1

    rec([d] * (n + 1), [], 0)
    return tuple(sorted(set(results)))


@lru_cache(maxsize=None)
def noncrossing_matchings(n: int) -> tuple[GraphKey, ...]:
    """The Catalan(n/2) non-crossing matchings, the degree-one basis."""
    return enumerate_noncrossing_regular(n, 1)


def catalan(k: int) -> int:
    """Catalan numbers by the convolution recurrence (independent oracle)."""
    cat = [1]
    for m in range(1, k + 1):
        cat.append(sum(cat[i] * cat[m - 1 - i] for i in range(m)))
    return cat[k]


def relabel_edges(edges, perm: dict[int, int]) -> list[Edge]:
    return [(perm[a], perm[b]) for a, b in edges]


# --- text / JSON interchange -------------------------------------------------

_GRAPH_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*;\s*edges\s*=\s*(.*)$")


def parse_graph(text: str) -> tuple[int, list[Edge]]:
    """Parse ``n=<int>; edges=<a>-<b>,<a>-<b>,...`` (repetition = multiplicity)."""
    m = _GRAPH_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad graph text: {text!r}")
    n = int(m.group(1))
    body = m.group(2).strip()
    edges: list[Edge] = []
    if body:
        for part in body.split(","):
            a, b = part.strip().split("-")
            edges.append((int(a), int(b)))
    for a, b in edges:
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"edge ({a},{b}) out of range 1..{n}")
    return n, edges


def graph_to_text(n: int, edges) -> str:
    return "n=%d; edges=%s" % (n, ",".join("%d-%d" % e for e in edges))


def parse_graph_json(text: str) -> tuple[int, list[Edge]]:
    """JSON mirror of the text format: ``{"n":8,"edges":[[1,2],[3,4]]}``."""
    obj = json.loads(text)
    n = int(obj["n"])
    edges = [(int(a), int(b)) for a, b in obj["edges"]]
    for a, b in edges:
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"edge ({a},{b}) out of range 1..{n}")
    return n, edges


def graph_to_json(n: int, edges) -> str:
    return json.dumps({"n": n, "edges": [list(e) for e in edges]})


def all_permutations(n: int):
    """All permutations of 1..n as dicts, in itertools order."""
    base = list(range(1, n + 1))
    for img in itertools.permutations(base):
        yield dict(zip(base, img))


def perm_sign_of_map(perm: dict[int, int]) -> int:
    return perm_sign([perm[i] for i in sorted(perm)])

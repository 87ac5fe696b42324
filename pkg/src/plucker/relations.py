"""Symmetric powers of the degree-one invariants and the relation ideal.

A SymElement of degree k is a rational combination of monomials, each
monomial an unordered multiset of k perfect matchings (a k-colored graph with
the colors forgotten).  Monomials are written in the Y-convention, so the
coefficient of a monomial is the coefficient of the product of the
corresponding Y generators.

The relation ideal in a fixed degree is computed as the kernel of the
projection onto the invariant ring, written as an exact integer matrix over
the monomial basis (multisets of non-crossing matchings) and the non-crossing
graph basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import exact_linalg
from .graph_core import (
    GraphKey,
    canonicalize,
    connected_component_partition,
    matching_key,
    noncrossing_matchings,
    orientation_sign,
    valences,
)
from .invariant_ring import RingElement, kempe_factor, straighten, straighten_graph

Monomial = tuple[GraphKey, ...]  # sorted multiset of matchings


@lru_cache(maxsize=None)
def matching_in_y_basis(n: int, mkey: GraphKey) -> dict[GraphKey, int]:
    """Expand Y of a matching in the non-crossing Y-basis (integer coeffs)."""
    eps = orientation_sign(mkey)
    return {g: eps * c * orientation_sign(g)
            for g, c in straighten_graph(n, mkey).items()}


@dataclass(frozen=True)
class SymElement:
    """Finitely supported map {multiset of k matchings} -> Q."""

    n: int
    degree: int
    terms: dict[Monomial, Fraction]

    @classmethod
    def zero(cls, n: int, degree: int) -> "SymElement":
        return cls(n, degree, {})

    @classmethod
    def from_terms(cls, n: int, degree: int, items) -> "SymElement":
        acc: dict[Monomial, Fraction] = {}
        for key, coeff in items:
            key = tuple(sorted(matching_key(m) for m in key))
            assert len(key) == degree
            coeff = Fraction(coeff)
            if coeff:
                acc[key] = acc.get(key, Fraction(0)) + coeff
        return cls(n, degree, {k: v for k, v in acc.items() if v})

    @classmethod
    def monomial(cls, n: int, matchings, coeff=1) -> "SymElement":
        return cls.from_terms(n, len(tuple(matchings)), [(tuple(matchings), coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymElement") -> "SymElement":
        assert (self.n, self.degree) == (other.n, other.degree)
        return SymElement.from_terms(
            self.n, self.degree,
            list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "SymElement") -> "SymElement":
        return self + other.scale(-1)

    def scale(self, c) -> "SymElement":
        c = Fraction(c)
        if not c:
            return SymElement.zero(self.n, self.degree)
        return SymElement(self.n, self.degree,
                          {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SymElement) and \
            (self.n, self.degree, self.terms) == (other.n, other.degree, other.terms)

    def __hash__(self):
        return hash((self.n, self.degree, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"SymElement(n={self.n}, deg={self.degree}, 0)"
        bits = [f"{c}*{[list(m) for m in k]}" for k, c in sorted(self.terms.items())]
        return f"SymElement(n={self.n}, deg={self.degree}, " + " + ".join(bits) + ")"

    def to_json(self) -> str:
        import json

        terms = [{"coeff": str(c),
                  "monomial": [[list(e) for e in m] for m in key]}
                 for key, c in sorted(self.terms.items())]
        return json.dumps({"n": self.n, "degree": self.degree, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "SymElement":
        import json

        obj = json.loads(text)
        items = []
        for t in obj["terms"]:
            mono = tuple(tuple(tuple(e) for e in m) for m in t["monomial"])
            items.append((mono, Fraction(t["coeff"])))
        return cls.from_terms(int(obj["n"]), int(obj["degree"]), items)


def project_to_ring(e: SymElement) -> RingElement:
    """Multiply out each monomial (with Y-signs) and straighten the result."""
    items = []
    for mono, coeff in e.terms.items():
        sign = 1
        edges: list = []
        for m in mono:
            sign *= orientation_sign(m)
            edges.extend(m)
        items.append((tuple(sorted(edges)), coeff * sign))
    return straighten(RingElement.from_terms(e.n, items))


def evaluate_sym(e: SymElement, config) -> Fraction:
    """Evaluate the image of a SymElement at a point configuration.

    Computed term by term from the determinant products, with no
    straightening involved, so it is an independent oracle for relations.
    """
    from .invariant_ring import PointConfig, evaluate

    assert isinstance(config, PointConfig)
    total = Fraction(0)
    for mono, coeff in e.terms.items():
        prod = coeff
        for m in mono:
            prod *= orientation_sign(m) * evaluate(
                RingElement(e.n, {m: Fraction(1)}), config)
        total += prod
    return total


def to_coords(e: SymElement) -> dict[Monomial, Fraction]:
    """Coordinates in the Sym^k basis of multisets of non-crossing matchings."""
    acc: dict[Monomial, Fraction] = {}
    for mono, coeff in e.terms.items():
        expansions = [matching_in_y_basis(e.n, m) for m in mono]
        for combo in itertools.product(*[ex.items() for ex in expansions]):
            key = tuple(sorted(g for g, _ in combo))
            c = coeff
            for _, a in combo:
                c *= a
            acc[key] = acc.get(key, Fraction(0)) + c
    return {k: v for k, v in acc.items() if v}


@lru_cache(maxsize=None)
def sym_basis(n: int, k: int) -> tuple[Monomial, ...]:
    """Monomial basis of Sym^k(V): sorted multisets of non-crossing matchings."""
    return tuple(itertools.combinations_with_replacement(noncrossing_matchings(n), k))


def coords_vector(e: SymElement, basis=None) -> dict[int, Fraction]:
    basis = sym_basis(e.n, e.degree) if basis is None else basis
    index = _basis_index(e.n, e.degree)
    out = {}
    for key, c in to_coords(e).items():
        out[index[key]] = c
    return out


@lru_cache(maxsize=None)
def _basis_index(n: int, k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(sym_basis(n, k))}


def component_partition_of_monomial(n: int, mono: Monomial):
    edges = [e for m in mono for e in m]
    _, partition = connected_component_partition(n, edges)
    return partition


# --- outer multiplication -----------------------------------------------------

def outer_product(a: SymElement, b: SymElement, n: int | None = None,
                  relabel_a: dict[int, int] | None = None,
                  relabel_b: dict[int, int] | None = None) -> SymElement:
    """Disjoint-union product; layers are aligned by sorted list position.

    Default relabeling keeps ``a`` in place and shifts ``b`` above it.  The
    images must be disjoint; degrees must agree.
    """
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    if n is None:
        n = a.n + b.n
    if relabel_a is None:
        relabel_a = {i: i for i in range(1, a.n + 1)}
    if relabel_b is None:
        relabel_b = {i: a.n + i for i in range(1, b.n + 1)}
    image_a = set(relabel_a.values())
    image_b = set(relabel_b.values())
    if image_a & image_b:
        raise ValueError("label collision")
    if not (image_a | image_b) <= set(range(1, n + 1)):
        raise ValueError("relabeling escapes 1..n")
    items = []
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            layers = []
            for la, lb in zip(ma, mb):
                edges = [(relabel_a[x], relabel_a[y]) for x, y in la]
                edges += [(relabel_b[x], relabel_b[y]) for x, y in lb]
                layers.append(tuple(sorted(edges)))
            items.append((tuple(layers), ca * cb))
    return SymElement.from_terms(n, a.degree, items)


def sym_unit(degree: int) -> SymElement:
    """The empty-label monomial of the given degree (unit for outer product)."""
    return SymElement(0, degree, {tuple(() for _ in range(degree)): Fraction(1)})


def append_matching(e: SymElement, m: GraphKey) -> SymElement:
    """Multiply by the degree-one generator of a matching (as a Y-monomial)."""
    key = matching_key(m)
    return SymElement.from_terms(
        e.n, e.degree + 1,
        [(mono + (key,), c) for mono, c in e.terms.items()])


# --- relation constructors ------------------------------------------------------

def recoloring_relation(n: int, layers_left, layers_right) -> SymElement:
    """Y-monomial difference of two colorings of one underlying graph.

    Both sides must have the same edge multiset; the relative sign is fixed by
    the Y-convention, so the difference projects to zero in the ring.
    """
    left = tuple(matching_key(m) for m in layers_left)
    right = tuple(matching_key(m) for m in layers_right)
    union_l = tuple(sorted(e for m in left for e in m))
    union_r = tuple(sorted(e for m in right for e in m))
    if union_l != union_r:
        raise ValueError("recoloring must preserve the edge multiset")
    sign = 1
    for m in left:
        sign *= orientation_sign(m)
    for m in right:
        sign *= orientation_sign(m)
    return SymElement.from_terms(
        n, len(left), [(left, 1), (right, -sign)])


def segre_cubic() -> SymElement:
    """The Segre cubic relation on six points, hexagon 1..6 in circular order."""
    red = ((1, 2), (3, 6), (4, 5))
    blue = ((1, 4), (2, 3), (5, 6))
    green = ((1, 6), (2, 5), (3, 4))
    red2 = ((1, 4), (2, 5), (3, 6))
    blue2 = ((1, 2), (3, 4), (5, 6))
    green2 = ((1, 6), (2, 3), (4, 5))
    return recoloring_relation(6, (red, blue, green), (red2, blue2, green2))


def segre8() -> SymElement:
    """The eight-point cubic: Segre hexagon on 1..6 plus a tripled edge 7-8."""
    return outer_product(segre_cubic(),
                         SymElement.monomial(2, (((1, 2),),) * 3))


@dataclass(frozen=True)
class BinomialQuadDatum:
    """2-colored regular graph plus a subset U not split by any edge."""

    n: int
    u: frozenset[int]
    layer1: GraphKey
    layer2: GraphKey

    def validate(self) -> None:
        l1 = matching_key(self.layer1)
        l2 = matching_key(self.layer2)
        assert set(self.u) <= set(range(1, self.n + 1))
        for a, b in l1 + l2:
            if (a in self.u) != (b in self.u):
                raise ValueError(f"edge ({a},{b}) crosses U")

    def is_simple(self) -> bool:
        return len(self.u) == 4

    def recolored(self) -> tuple[GraphKey, GraphKey]:
        move1 = [e for e in self.layer1 if e[0] in self.u]
        keep1 = [e for e in self.layer1 if e[0] not in self.u]
        move2 = [e for e in self.layer2 if e[0] in self.u]
        keep2 = [e for e in self.layer2 if e[0] not in self.u]
        return (tuple(sorted(keep1 + move2)), tuple(sorted(keep2 + move1)))

    @classmethod
    def from_json_dict(cls, obj) -> "BinomialQuadDatum":
        return cls(int(obj["n"]), frozenset(int(v) for v in obj["U"]),
                   matching_key([tuple(e) for e in obj["color1"]]),
                   matching_key([tuple(e) for e in obj["color2"]]))


def simple_binomial(d: BinomialQuadDatum) -> SymElement:
    """Rel(D) = Y_Gamma - Y_Gamma' with the colors inverted inside U."""
    d.validate()
    if not d.is_simple():
        raise ValueError("datum is not simple (|U| != 4)")
    g1, g2 = d.recolored()
    return SymElement.from_terms(
        d.n, 2, [((d.layer1, d.layer2), 1), ((g1, g2), -1)])


def simplest_binomial(cycle_a, cycle_b, doubled_rest=()) -> SymElement:
    """The simplest binomial relation: recolor one of two 4-cycles.

    ``cycle_a`` and ``cycle_b`` are 4-tuples (w, x, y, z) read as the 4-cycle
    w-x-y-z with color-1 edges {wx, yz} and color-2 edges {xy, zw};
    ``doubled_rest`` is a matching on the remaining labels, doubled in both
    colors.  U is the vertex set of ``cycle_b``.
    """
    rest = [tuple(e) for e in doubled_rest]
    labels = set(cycle_a) | set(cycle_b)
    for a, b in rest:
        labels.update((a, b))
    n = max(labels)
    if len(labels) != len(cycle_a) + len(cycle_b) + 2 * len(rest):
        raise ValueError("vertex sets overlap")

    def cyc(c):
        w, x, y, z = c
        return [(w, x), (y, z)], [(x, y), (z, w)]

    a1, a2 = cyc(cycle_a)
    b1, b2 = cyc(cycle_b)
    layer1 = tuple(sorted(matching_key(a1 + b1 + rest)))
    layer2 = tuple(sorted(matching_key(a2 + b2 + rest)))
    datum = BinomialQuadDatum(n, frozenset(cycle_b), layer1, layer2)
    return simple_binomial(datum)


def iota_relation(n: int, u, pair_out, pair_in) -> SymElement:
    """The wedge-to-relation map: (G ^ G') x (D ^ D') -> quadratic relations.

    ``pair_out`` are matchings on the complement of ``u``, ``pair_in`` on
    ``u``; the image is Y_{GD} Y_{G'D'} - Y_{G'D} Y_{GD'}.
    """
    g1, g2 = pair_out
    d1, d2 = pair_in
    m11 = tuple(sorted(tuple(g1) + tuple(d1)))
    m22 = tuple(sorted(tuple(g2) + tuple(d2)))
    m21 = tuple(sorted(tuple(g2) + tuple(d1)))
    m12 = tuple(sorted(tuple(g1) + tuple(d2)))
    return SymElement.from_terms(n, 2, [((m11, m22), 1), ((m21, m12), -1)])


@dataclass(frozen=True)
class GenSegreDatum:
    """A 3-colored graph with a 3-part even partition and the special-edge rules."""

    n: int
    u_red: frozenset[int]
    u_green: frozenset[int]
    u_blue: frozenset[int]
    red: GraphKey
    green: GraphKey
    blue: GraphKey

    OPPOSITE = {frozenset(("green", "blue")): "red",
                frozenset(("red", "blue")): "green",
                frozenset(("red", "green")): "blue"}

    def parts(self) -> dict[str, frozenset[int]]:
        return {"red": self.u_red, "green": self.u_green, "blue": self.u_blue}

    def layers(self) -> dict[str, GraphKey]:
        return {"red": matching_key(self.red),
                "green": matching_key(self.green),
                "blue": matching_key(self.blue)}

    def part_of(self, v: int) -> str:
        for name, p in self.parts().items():
            if v in p:
                return name
        raise ValueError(f"label {v} in no part")

    def validate(self) -> None:
        parts = self.parts()
        union: set[int] = set()
        total = 0
        for name, p in parts.items():
            if not p or len(p) % 2:
                raise ValueError(f"part {name} must be even and nonempty")
            union |= p
            total += len(p)
        if union != set(range(1, self.n + 1)) or total != self.n:
            raise ValueError("parts must partition the labels")
        counts: dict[frozenset[str], int] = {k: 0 for k in self.OPPOSITE}
        for color, layer in self.layers().items():
            for a, b in layer:
                pa, pb = self.part_of(a), self.part_of(b)
                if pa == pb:
                    continue
                pair = frozenset((pa, pb))
                counts[pair] += 1
                if color != self.OPPOSITE[pair]:
                    raise ValueError(
                        f"edge ({a},{b}) between {pa},{pb} must be "
                        f"{self.OPPOSITE[pair]}, got {color}")
        for pair, count in counts.items():
            if count not in (0, 2):
                raise ValueError(f"{count} edges between {sorted(pair)}, need 0 or 2")

    def is_small(self) -> bool:
        return any(len(p) == 2 for p in self.parts().values())

    def black_purple(self) -> tuple[GraphKey, GraphKey]:
        """Recolor: own-color edges inside each part go black, the rest purple."""
        parts = self.parts()
        layers = self.layers()
        black: list = []
        purple: list = []
        for color, layer in layers.items():
            for a, b in layer:
                if a in parts[color] and b in parts[color]:
                    black.append((a, b))
                else:
                    purple.append((a, b))
        return tuple(sorted(black)), tuple(sorted(purple))

    def is_degenerate(self) -> bool:
        """Missing special pair, or special pairs disconnected inside a part."""
        parts = self.parts()
        layers = self.layers()
        cross: dict[frozenset[str], list] = {k: [] for k in self.OPPOSITE}
        for layer in layers.values():
            for a, b in layer:
                pa, pb = self.part_of(a), self.part_of(b)
                if pa != pb:
                    cross[frozenset((pa, pb))].append((a, b))
        if any(not v for v in cross.values()):
            return True
        for name, part in parts.items():
            inside = [e for layer in layers.values() for e in layer
                      if e[0] in part and e[1] in part]
            blocks, _ = connected_component_partition(self.n, inside)
            comp_of = {v: i for i, blk in enumerate(blocks) for v in blk}
            anchors = [{comp_of[v] for e in edges for v in e if v in part}
                       for pair, edges in cross.items() if name in pair]
            assert len(anchors) == 2
            if anchors[0].isdisjoint(anchors[1]):
                return True
        return False

    @classmethod
    def from_json_dict(cls, obj) -> "GenSegreDatum":
        parts = [frozenset(obj[k]) for k in ("UR", "UG", "UB")]
        n = sum(len(p) for p in parts)
        return cls(n, parts[0], parts[1], parts[2],
                   matching_key([tuple(e) for e in obj["red"]]),
                   matching_key([tuple(e) for e in obj["green"]]),
                   matching_key([tuple(e) for e in obj["blue"]]))


def generalized_segre(s: GenSegreDatum) -> SymElement:
    """Y of the datum minus a Sym^3 lift of its black/purple recoloring.

    The lift factors the purple 2-regular layer into matchings with the fixed
    Kempe split, so the element is canonical only modulo the quadratic ideal;
    it projects to exactly zero regardless.
    """
    s.validate()
    layers = s.layers()
    black, purple = s.black_purple()
    assert all(v == 1 for v in valences(s.n, black)[1:]), "black layer not a matching"
    assert all(v == 2 for v in valences(s.n, purple)[1:]), "purple layer not 2-regular"
    sign = orientation_sign(black)
    for m in layers.values():
        sign *= orientation_sign(m)
    lift = append_matching(kempe_factor(s.n, purple, 2), black).scale(sign)
    lead = SymElement.monomial(s.n, (layers["red"], layers["green"], layers["blue"]))
    return lead - lift


@dataclass(frozen=True)
class SquareRotationDatum:
    """Purple/black graph with a 4-set U of purple path endpoints.

    ``u`` is stored as the square's corner order (u1, u2, u3, u4); the
    associated relation swaps colors on the appended square.
    """

    n: int
    u: tuple[int, int, int, int]
    purple: GraphKey
    black: GraphKey

    def validate(self) -> None:
        uset = set(self.u)
        assert len(uset) == 4 and uset <= set(range(1, self.n + 1))
        pv = valences(self.n, self.purple)
        bv = valences(self.n, self.black)
        for v in range(1, self.n + 1):
            want_p, want_b = (1, 0) if v in uset else (2, 1)
            if pv[v] != want_p or bv[v] != want_b:
                raise ValueError(f"valences at {v}: purple {pv[v]} black {bv[v]}")

    def special_paths(self) -> list[list[int]]:
        """The two purple paths ending in U, as vertex lists.

        Assumes the purple subgraph is simple along the paths (true for every
        datum we construct; cycles through doubled edges never touch U).
        """
        adj: dict[int, list[int]] = {}
        for a, b in self.purple:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        paths = []
        seen = set()
        for start in self.u:
            if start in seen or start not in adj:
                continue
            path = [start]
            prev, cur = None, start
            while cur not in self.u or cur == start and len(path) == 1:
                nxt = next(w for w in adj[cur] if w != prev)
                path.append(nxt)
                prev, cur = cur, nxt
            seen.update((path[0], path[-1]))
            paths.append(path)
        return paths

    @classmethod
    def from_json_dict(cls, obj) -> "SquareRotationDatum":
        return cls(int(obj["n"]), tuple(int(v) for v in obj["U"]),
                   canonicalize([tuple(e) for e in obj["purple"]]).graph,
                   canonicalize([tuple(e) for e in obj["black"]]).graph)


def square_rotation(p: SquareRotationDatum) -> SymElement:
    """Append the square swap to the datum and lift both sides to Sym^3."""
    p.validate()
    u1, u2, u3, u4 = p.u

    def side(purple_extra, black_extra):
        purple = canonicalize(list(p.purple) + purple_extra).graph
        black = matching_key(list(p.black) + black_extra)
        return append_matching(kempe_factor(p.n, purple, 2), black) \
            .scale(orientation_sign(black))

    left = side([(u1, u2), (u3, u4)], [(u1, u4), (u2, u3)])
    right = side([(u1, u4), (u2, u3)], [(u1, u2), (u3, u4)])
    return left - right


# --- ideal components, spans, dimensions ---------------------------------------

def _check_feasible(n: int, k: int) -> None:
    if n % 2 or k < 1:
        raise ValueError("need even n and k >= 1")
    if (k <= 2 and n > 10) or (k == 3 and n > 8) or k > 3:
        raise ValueError(f"(n={n}, k={k}) exceeds the feasibility guard")


@lru_cache(maxsize=None)
def relation_matrix(n: int, k: int) -> exact_linalg.QMatrix:
    """Matrix of the projection Sym^k(V) -> R^(k) in the canonical bases.

    Rows: non-crossing k-regular graphs (lex order).  Columns: sorted
    monomial multisets of non-crossing matchings (lex order).
    """
    from .graph_core import enumerate_noncrossing_regular

    _check_feasible(n, k)
    rows = enumerate_noncrossing_regular(n, k)
    row_index = {g: i for i, g in enumerate(rows)}
    basis = sym_basis(n, k)
    m = exact_linalg.QMatrix(len(rows), len(basis))
    for j, mono in enumerate(basis):
        sign = 1
        edges: list = []
        for layer in mono:
            sign *= orientation_sign(layer)
            edges.extend(layer)
        for g, c in straighten_graph(n, tuple(sorted(edges))).items():
            m.set(row_index[g], j, sign * c)
    return m.freeze()


@lru_cache(maxsize=None)
def ideal_component_dim(n: int, k: int) -> int:
    """dim I^(k) = dim Sym^k(V) - dim R^(k), by exact kernel rank."""
    m = relation_matrix(n, k)
    return m.cols - exact_linalg.rank(m)


def ideal_kernel_basis(n: int, k: int) -> list[list[Fraction]]:
    """Exact basis of I^(k) in Sym^k coordinates."""
    return exact_linalg.kernel_basis(relation_matrix(n, k))


def quadratic_ideal_component(n: int, k: int = 3):
    """Spanning set and dimension of Q^(k): V-multiples of quadratic relations."""
    if k != 3:
        raise ValueError("only the cubic component of Q is implemented")
    if n > 8:
        raise ValueError("feasibility guard: n <= 8")
    quads = ideal_kernel_basis(n, 2)
    basis2 = sym_basis(n, 2)
    index3 = _basis_index(n, 3)
    vectors: list[dict[int, Fraction]] = []
    for v in noncrossing_matchings(n):
        for q in quads:
            vec: dict[int, Fraction] = {}
            for j, c in enumerate(q):
                if c:
                    key = tuple(sorted(basis2[j] + (v,)))
                    idx = index3[key]
                    vec[idx] = vec.get(idx, Fraction(0)) + c
            vec = {i: c for i, c in vec.items() if c}
            if vec:
                vectors.append(vec)
    span = exact_linalg.IncrementalSpan(len(sym_basis(n, 3)))
    for vec in vectors:
        span.add(vec)
    return vectors, span.dim


def in_quadratic_ideal(e: SymElement) -> bool:
    """Membership of a cubic element in Q^(3), by exact span arithmetic."""
    vectors, _ = quadratic_ideal_component(e.n, 3)
    span = exact_linalg.IncrementalSpan(len(sym_basis(e.n, 3)))
    for vec in vectors:
        span.add(vec)
    return span.contains(coords_vector(e))


def orbit_span_check(rel: SymElement, n: int | None = None):
    """Rank of the S_n-orbit span of a relation; does it fill I^(k)?

    Requires the input to project to zero (so the orbit stays inside the
    ideal and the rank scan may stop early at the ideal dimension).
    """
    from .symmetry_rep import act_sym, all_perms

    n = rel.n if n is None else n
    k = rel.degree
    target = ideal_component_dim(n, k)
    if rel.is_zero():
        return 0, target == 0
    if not project_to_ring(rel).is_zero():
        raise ValueError("element is not a relation")
    span = exact_linalg.IncrementalSpan(len(sym_basis(n, k)))
    for sigma in all_perms(n):
        span.add(coords_vector(act_sym(sigma, rel)))
        if span.dim == target:
            return target, True
    return span.dim, span.dim == target


def count_good_bipartitions(n: int) -> int:
    """Bipartitions (P, Q), |P| = 6, with few Q-elements above P's 2nd smallest."""
    if n not in (10, 12):
        raise ValueError("good bipartitions are defined for n in {10, 12}")
    allowed_excess = 1 if n == 10 else 2
    count = 0
    labels = range(1, n + 1)
    for p in itertools.combinations(labels, 6):
        cutoff = sorted(p)[1]
        q = [v for v in labels if v not in p]
        if sum(1 for v in q if v > cutoff) <= allowed_excess:
            count += 1
    return count

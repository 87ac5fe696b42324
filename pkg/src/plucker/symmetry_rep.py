"""Symmetric group actions, characters, and the partition filtration.

The symmetric group acts on graphs by relabeling; on the Y generators the
action is twisted by the sign character.  Characters of the induced actions
on V, Sym^2(V), Lambda^2(V), R^(2) and I^(2) are computed by acting on each
basis vector, renormalizing into the non-crossing basis, and reading off the
diagonal coefficient -- the permutation does not permute the basis, so there
is no shortcut.

All representation arithmetic is exact: Murnaghan-Nakayama for irreducible
characters, the cycle-type formula for class sizes, hook lengths for
dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import exact_linalg
from .graph_core import (
    canonicalize,
    enumerate_matchings,
    enumerate_noncrossing_regular,
    noncrossing_matchings,
    perm_sign_of_map,
)
from .invariant_ring import RingElement, straighten_graph
from .relations import (
    SymElement,
    component_partition_of_monomial,
    matching_in_y_basis,
    sym_basis,
    to_coords,
)

Perm = dict[int, int]
PartitionT = tuple[int, ...]


def all_perms(n: int):
    base = list(range(1, n + 1))
    for img in itertools.permutations(base):
        yield dict(zip(base, img))


def perm_from_cycles(n: int, cycles) -> Perm:
    perm = {i: i for i in range(1, n + 1)}
    for cyc in cycles:
        for i, v in enumerate(cyc):
            perm[v] = cyc[(i + 1) % len(cyc)]
    return perm


def cycle_type(perm: Perm) -> PartitionT:
    seen = set()
    lengths = []
    for v in perm:
        if v in seen:
            continue
        length = 0
        w = v
        while w not in seen:
            seen.add(w)
            w = perm[w]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def representative_of_type(mu: PartitionT) -> Perm:
    n = sum(mu)
    cycles = []
    nxt = 1
    for part in mu:
        cycles.append(tuple(range(nxt, nxt + part)))
        nxt += part
    return perm_from_cycles(n, cycles)


# --- action on elements ---------------------------------------------------------

def act_ring(perm: Perm, e: RingElement) -> RingElement:
    """Relabel directed graphs and re-canonicalize signs (no sign twist)."""
    if set(perm) != set(range(1, e.n + 1)):
        raise ValueError("permutation acts on the wrong label set")
    items = []
    for key, coeff in e.terms.items():
        cf = canonicalize([(perm[a], perm[b]) for a, b in key])
        items.append((cf.graph, coeff * cf.sign))
    return RingElement.from_terms(e.n, items)


def act_sym(perm: Perm, e: SymElement) -> SymElement:
    """Sign-twisted action on Y-monomials: each layer contributes sgn(perm)."""
    if set(perm) != set(range(1, e.n + 1)):
        raise ValueError("permutation acts on the wrong label set")
    twist = perm_sign_of_map(perm) ** e.degree
    items = []
    for mono, coeff in e.terms.items():
        new = tuple(canonicalize([(perm[a], perm[b]) for a, b in m]).graph
                    for m in mono)
        items.append((new, coeff * twist))
    return SymElement.from_terms(e.n, e.degree, items)


def act(perm: Perm, e):
    if isinstance(e, RingElement):
        return act_ring(perm, e)
    if isinstance(e, SymElement):
        return act_sym(perm, e)
    raise TypeError(f"cannot act on {type(e).__name__}")


# --- partitions, characters, hook lengths ---------------------------------------

@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[PartitionT, ...]:
    """All partitions of n, parts descending, in lexicographic order."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, maxpart), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(sorted(out))


def class_size(mu: PartitionT) -> int:
    """|conjugacy class| = n! / prod(k^{m_k} m_k!) over cycle lengths k."""
    n = sum(mu)
    denom = 1
    for k in set(mu):
        m = mu.count(k)
        denom *= k ** m * factorial(m)
    return factorial(n) // denom


@lru_cache(maxsize=None)
def mn_character(lam: PartitionT, mu: PartitionT) -> int:
    """Murnaghan-Nakayama by border-strip removal on beta-numbers."""
    assert sum(lam) == sum(mu)
    if not lam:
        return 1
    k = mu[0]
    rest = mu[1:]
    ell = len(lam)
    betas = [lam[i] + (ell - 1 - i) for i in range(ell)]
    beta_set = set(betas)
    total = 0
    for b in betas:
        nb = b - k
        if nb < 0 or nb in beta_set:
            continue
        new = sorted((beta_set - {b}) | {nb}, reverse=True)
        height = sum(1 for b2 in beta_set if nb < b2 < b)
        new_lam = tuple(v - (len(new) - 1 - i) for i, v in enumerate(new))
        new_lam = tuple(v for v in new_lam if v > 0)
        total += (-1) ** height * mn_character(new_lam, rest)
    return total


def hook_length_dim(lam: PartitionT) -> int:
    """n! divided by the product of hook lengths."""
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return factorial(n) // prod


@dataclass(frozen=True)
class ClassFunction:
    """Rational class function on S_n, stored per cycle type."""

    n: int
    values: dict[PartitionT, Fraction]

    def __call__(self, mu: PartitionT) -> Fraction:
        return self.values[tuple(mu)]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        assert self.n == other.n
        return ClassFunction(self.n, {mu: self.values[mu] + other.values[mu]
                                      for mu in self.values})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        assert self.n == other.n
        return ClassFunction(self.n, {mu: self.values[mu] - other.values[mu]
                                      for mu in self.values})


def irreducible_character(lam: PartitionT) -> ClassFunction:
    n = sum(lam)
    return ClassFunction(n, {mu: Fraction(mn_character(lam, mu))
                             for mu in partitions(n)})


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Fraction:
    n = chi.n
    total = Fraction(0)
    for mu in partitions(n):
        total += class_size(mu) * chi.values[mu] * psi.values[mu]
    return total / factorial(n)


def decompose(chi: ClassFunction) -> dict[PartitionT, int]:
    """Multiplicities of the irreducibles; raises on non-integral values."""
    out: dict[PartitionT, int] = {}
    for lam in partitions(chi.n):
        mult = inner_product(chi, irreducible_character(lam))
        if mult.denominator != 1 or mult < 0:
            raise ValueError(f"non-integral multiplicity {mult} at {lam}")
        if mult:
            out[lam] = int(mult)
    return out


# --- traces on the concrete spaces ----------------------------------------------

def _v_action_coords(n: int, perm: Perm):
    """Columns of the twisted action on V in the non-crossing basis."""
    twist = perm_sign_of_map(perm)
    cols = {}
    for m in noncrossing_matchings(n):
        img = canonicalize([(perm[a], perm[b]) for a, b in m]).graph
        cols[m] = {g: twist * c for g, c in matching_in_y_basis(n, img).items()}
    return cols


def _trace_v(n: int, perm: Perm) -> int:
    cols = _v_action_coords(n, perm)
    return sum(cols[m].get(m, 0) for m in cols)


def _trace_sym2(n: int, perm: Perm) -> int:
    cols = _v_action_coords(n, perm)
    total = 0
    for mi, mj in sym_basis(n, 2):
        a, b = cols[mi], cols[mj]
        if mi == mj:
            total += a.get(mi, 0) * b.get(mj, 0)
        else:
            total += a.get(mi, 0) * b.get(mj, 0) + a.get(mj, 0) * b.get(mi, 0)
    return total


def _trace_wedge2(n: int, perm: Perm) -> int:
    cols = _v_action_coords(n, perm)
    basis = noncrossing_matchings(n)
    total = 0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            a, b = cols[basis[i]], cols[basis[j]]
            total += a.get(basis[i], 0) * b.get(basis[j], 0) \
                - a.get(basis[j], 0) * b.get(basis[i], 0)
    return total


def _trace_r2(n: int, perm: Perm) -> int:
    total = 0
    for g in enumerate_noncrossing_regular(n, 2):
        cf = canonicalize([(perm[a], perm[b]) for a, b in g])
        total += cf.sign * straighten_graph(n, cf.graph).get(g, 0)
    return total


SPACES = ("V", "Sym2V", "Lam2V", "R2", "I2")


def character_of_action(n: int, space: str) -> ClassFunction:
    """Character of the action on one of V, Sym2V, Lam2V, R2, I2 (n <= 8)."""
    if n > 8:
        raise ValueError("feasibility guard: n <= 8")
    if space not in SPACES:
        raise ValueError(f"space must be one of {SPACES}")
    if space == "I2":
        return character_of_action(n, "Sym2V") - character_of_action(n, "R2")
    tracer = {"V": _trace_v, "Sym2V": _trace_sym2,
              "Lam2V": _trace_wedge2, "R2": _trace_r2}[space]
    values = {}
    for mu in partitions(n):
        perm = representative_of_type(mu)
        values[mu] = Fraction(tracer(n, perm))
    return ClassFunction(n, values)


def expected_partition_set(n: int, space: str) -> set[PartitionT]:
    """The partition sets of the degree-two decomposition table."""
    sets = {
        "Sym2V": lambda p: len(p) <= 4 and all(v % 2 == 0 for v in p),
        "Lam2V": lambda p: len(p) == 4 and all(v % 2 == 1 for v in p),
        "R2": lambda p: len(p) <= 3 and all(v % 2 == 0 for v in p),
        "I2": lambda p: len(p) == 4 and all(v % 2 == 0 for v in p),
    }
    pred = sets[space]
    return {p for p in partitions(n) if pred(p)}


# --- the partition filtration on Sym^3 -------------------------------------------

@lru_cache(maxsize=None)
def even_partitions(n: int) -> tuple[PartitionT, ...]:
    return tuple(p for p in partitions(n) if all(v % 2 == 0 for v in p))


@lru_cache(maxsize=None)
def refines(q: PartitionT, p: PartitionT) -> bool:
    """q <= p in the refinement order: q can be grouped into blocks summing to p."""
    if sum(q) != sum(p):
        return False
    if not p:
        return not q
    target = p[0]
    rest_p = p[1:]
    items = list(q)

    def pick(idx, remaining, chosen):
        if remaining == 0:
            left = list(items)
            for c in chosen:
                left.remove(c)
            return refines(tuple(sorted(left, reverse=True)), rest_p)
        for i in range(idx, len(items)):
            if i > idx and items[i] == items[i - 1]:
                continue
            if items[i] <= remaining and pick(i + 1, remaining - items[i],
                                              chosen + [items[i]]):
                return True
        return False

    return pick(0, target, [])


@lru_cache(maxsize=None)
def _sym3_monomials_by_partition(n: int):
    """All degree-3 multi-matching monomials, grouped by component partition."""
    groups: dict[PartitionT, list] = {}
    for mono in itertools.combinations_with_replacement(enumerate_matchings(n), 3):
        part = component_partition_of_monomial(n, mono)
        groups.setdefault(part, []).append(mono)
    return groups


def _monomial_coords(n: int, mono) -> dict[int, Fraction]:
    from .relations import _basis_index

    index = _basis_index(n, 3)
    e = SymElement.from_terms(n, 3, [(mono, 1)])
    return {index[k]: c for k, c in to_coords(e).items()}


def filtration_span(n: int, parts) -> exact_linalg.IncrementalSpan:
    """Span of all degree-3 monomials whose component partition is in parts."""
    groups = _sym3_monomials_by_partition(n)
    span = exact_linalg.IncrementalSpan(len(sym_basis(n, 3)))
    for part in parts:
        for mono in groups.get(part, []):
            span.add(_monomial_coords(n, mono))
    return span


def filtration_dim(n: int, p: PartitionT) -> int:
    """dim F_p(Sym^3 V): span of monomials with partition <= p (refinement)."""
    parts = [q for q in even_partitions(n) if refines(q, p)]
    return filtration_span(n, parts).dim


def gr_dim(n: int, k: int, p) -> int:
    """dim of the associated graded piece gr_p(Sym^3 V) for n in {4, 6}.

    Quotient of F_p by the joint span of all F_q with q strictly finer; if
    several incomparable q sit below p, all of them are subtracted.
    """
    if k != 3:
        raise ValueError("only k = 3 is implemented")
    if n not in (4, 6):
        raise ValueError("feasibility guard: n in {4, 6}")
    p = tuple(sorted(p, reverse=True))
    if p not in even_partitions(n):
        raise ValueError(f"{p} is not an even partition of {n}")
    below = [q for q in even_partitions(n) if q != p and refines(q, p)]
    span = filtration_span(n, below)
    dim_below = span.dim
    for mono in _sym3_monomials_by_partition(n).get(p, []):
        span.add(_monomial_coords(n, mono))
    return span.dim - dim_below

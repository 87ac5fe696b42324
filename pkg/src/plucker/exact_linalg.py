"""Exact rational sparse linear algebra: rank, kernel, span membership.

Everything is over Q with arbitrary-precision arithmetic; no floats anywhere.
Rows are cleared to integers and kept gcd-reduced during elimination, which
controls coefficient growth without leaving exact arithmetic.  Pivots are
chosen as the smallest bit-size entry of the current column, ties broken by
row index, so runs are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class QMatrix:
    """Immutable sparse matrix over Q.

    Build with ``QMatrix(rows, cols)`` + ``set`` calls, then ``freeze()``;
    the convenience constructors below cover the common cases.  Zero entries
    are never stored.
    """

    def __init__(self, rows: int, cols: int):
        assert rows >= 0 and cols >= 0
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        self._frozen = False

    def set(self, r: int, c: int, value) -> None:
        assert not self._frozen, "matrix is frozen"
        assert 0 <= r < self.rows and 0 <= c < self.cols
        value = Fraction(value)
        if value:
            self.entries[(r, c)] = value
        else:
            self.entries.pop((r, c), None)

    def freeze(self) -> "QMatrix":
        self._frozen = True
        return self

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        m = cls(len(rows), cols)
        for i, row in enumerate(rows):
            assert len(row) == cols, "ragged rows"
            for j, v in enumerate(row):
                m.set(i, j, v)
        return m.freeze()

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _int_rows(rows) -> list[dict[int, int]]:
    """Clear denominators and divide by content, keeping rows integral."""
    out = []
    for row in rows:
        if not row:
            continue
        denom = 1
        for v in row.values():
            f = Fraction(v)
            denom = denom * f.denominator // gcd(denom, f.denominator)
        ints = {c: int(Fraction(v) * denom) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


def _reduce_content(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _echelon(rows, cols: int):
    """Integer echelon form; returns (pivot rows, pivot columns, in order).

    Column-major elimination.  In each column the pivot is the candidate row
    whose entry has the fewest bits (ties by position in the current list).
    """
    work = _int_rows(rows)
    pivot_rows: list[dict[int, int]] = []
    pivot_cols: list[int] = []
    for col in range(cols):
        best = None
        for idx, row in enumerate(work):
            v = row.get(col)
            if v:
                key = (abs(v).bit_length(), idx)
                if best is None or key < best[0]:
                    best = (key, idx)
        if best is None:
            continue
        idx = best[1]
        piv = work.pop(idx)
        p = piv[col]
        nxt = []
        for row in work:
            q = row.get(col)
            if q:
                row = {c: p * row.get(c, 0) - q * piv.get(c, 0)
                       for c in set(row) | set(piv)}
                row = {c: v for c, v in row.items() if v}
                if row:
                    row = _reduce_content(row)
                    nxt.append(row)
            else:
                nxt.append(row)
        work = nxt
        pivot_rows.append(piv)
        pivot_cols.append(col)
    return pivot_rows, pivot_cols


def rank(m: QMatrix) -> int:
    """Rank over Q by exact elimination."""
    _, pivot_cols = _echelon(m.row_dicts(), m.cols)
    return len(pivot_cols)


def rref(m: QMatrix):
    """Reduced row echelon form; returns (rows as col->Fraction, pivot cols)."""
    pivot_rows, pivot_cols = _echelon(m.row_dicts(), m.cols)
    frows = [{c: Fraction(v) for c, v in row.items()} for row in pivot_rows]
    # back-substitute to clear pivot columns above, then normalize pivots to 1
    for i in range(len(frows) - 1, -1, -1):
        col = pivot_cols[i]
        p = frows[i][col]
        frows[i] = {c: v / p for c, v in frows[i].items()}
        for j in range(i):
            q = frows[j].get(col)
            if q:
                frows[j] = {c: frows[j].get(c, Fraction(0)) - q * frows[i].get(c, Fraction(0))
                            for c in set(frows[j]) | set(frows[i])}
                frows[j] = {c: v for c, v in frows[j].items() if v}
    order = sorted(range(len(frows)), key=lambda i: pivot_cols[i])
    return [frows[i] for i in order], [pivot_cols[i] for i in order]


def kernel_basis(m: QMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel; m.v = 0 exactly for every returned v."""
    frows, pivot_cols = rref(m)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for row, pc in zip(frows, pivot_cols):
            coeff = row.get(fc)
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return basis


def matvec(m: QMatrix, v) -> list[Fraction]:
    out = [Fraction(0)] * m.rows
    for (r, c), val in m.entries.items():
        if v[c]:
            out[r] += val * v[c]
    return out


class IncrementalSpan:
    """Grow a row space one vector at a time, tracking its dimension.

    ``add`` reduces the vector against the current echelon basis and returns
    True when it enlarged the span.  Used for orbit-span computations where
    early termination at a known target rank saves a lot of work.
    """

    def __init__(self, cols: int):
        self.cols = cols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            p, q = piv[lead], row[lead]
            row = {c: p * row.get(c, 0) - q * piv.get(c, 0)
                   for c in set(row) | set(piv)}
            row = {c: v for c, v in row.items() if v}
            if row:
                row = _reduce_content(row)
        return row

    def add(self, vector) -> bool:
        if isinstance(vector, dict):
            row = {c: v for c, v in vector.items() if v}
        else:
            row = {c: v for c, v in enumerate(vector) if v}
        rows = _int_rows([row])
        if not rows:
            return False
        row = self._reduce(rows[0])
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def contains(self, vector) -> bool:
        if isinstance(vector, dict):
            row = {c: v for c, v in vector.items() if v}
        else:
            row = {c: v for c, v in enumerate(vector) if v}
        rows = _int_rows([row])
        if not rows:
            return True
        return not self._reduce(rows[0])


def span_dim(vectors) -> int:
    """Dimension of the span of a family of equal-length rational vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    cols = len(vectors[0])
    for v in vectors:
        if len(v) != cols:
            raise ValueError("dimension mismatch")
    span = IncrementalSpan(cols)
    for v in vectors:
        span.add(v)
    return span.dim


def span_contains(vectors, v) -> bool:
    """Exact membership of v in the span of the given vectors."""
    vectors = list(vectors)
    cols = len(v)
    for w in vectors:
        if len(w) != cols:
            raise ValueError("dimension mismatch")
    span = IncrementalSpan(cols)
    for w in vectors:
        span.add(w)
    return span.contains(v)

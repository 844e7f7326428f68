"""Exact sparse matrices, Smith normal form and rational rank.

Scalars are Python ints or :class:`fractions.Fraction`; nothing here touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "SparseMatrix",
    "smith_normal_form",
    "invariant_factors",
    "rank_and_kernel",
    "rank",
    "determinant",
    "DENSE_LIMIT",
]

# Below this size (in both dimensions) the dense algorithms are used.
DENSE_LIMIT = 64


class SparseMatrix:
    """A rows x cols matrix stored as {(row, col): value} with no zero entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (i, j), v in items:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
                if v:
                    self.entries[i, j] = self.entries.get((i, j), 0) + v
                    if not self.entries[i, j]:
                        del self.entries[i, j]

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else 0
        return cls(m, n, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def identity(cls, n: int, scale=1):
        return cls(n, n, {(i, i): scale for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int):
        return cls(rows, cols)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def triples(self):
        """(row, col, value) triples in row-major order."""
        return [(i, j, v) for (i, j), v in sorted(self.entries.items())]

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def copy(self):
        m = SparseMatrix(self.rows, self.cols)
        m.entries = dict(self.entries)
        return m

    def transpose(self):
        m = SparseMatrix(self.cols, self.rows)
        m.entries = {(j, i): v for (i, j), v in self.entries.items()}
        return m

    def row_dicts(self):
        rows = {}
        for (i, j), v in self.entries.items():
            rows.setdefault(i, {})[j] = v
        return rows

    def __add__(self, other):
        self._check_same(other)
        out = self.copy()
        for k, v in other.entries.items():
            s = out.entries.get(k, 0) + v
            if s:
                out.entries[k] = s
            else:
                out.entries.pop(k, None)
        return out

    def __neg__(self):
        m = SparseMatrix(self.rows, self.cols)
        m.entries = {k: -v for k, v in self.entries.items()}
        return m

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        m = SparseMatrix(self.rows, self.cols)
        if s:
            m.entries = {k: v * s for k, v in self.entries.items()}
        return m

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc = {}
        for (i, k), v in self.entries.items():
            r = right.get(k)
            if not r:
                continue
            for j, w in r.items():
                acc[i, j] = acc.get((i, j), 0) + v * w
        m = SparseMatrix(self.rows, other.cols)
        m.entries = {k: v for k, v in acc.items() if v}
        return m

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    @property
    def shape(self):
        return self.rows, self.cols

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def submatrix(self, row_ids, col_ids):
        rmap = {r: k for k, r in enumerate(row_ids)}
        cmap = {c: k for k, c in enumerate(col_ids)}
        m = SparseMatrix(len(row_ids), len(col_ids))
        m.entries = {(rmap[i], cmap[j]): v for (i, j), v in self.entries.items()
                     if i in rmap and j in cmap}
        return m


def _as_dense(M):
    if isinstance(M, SparseMatrix):
        return M.to_dense(), M.rows, M.cols
    rows = [list(r) for r in M]
    return rows, len(rows), (len(rows[0]) if rows else 0)


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` as dense lists with ``U @ M @ V == D``, ``U`` and
    ``V`` unimodular, and the diagonal of ``D`` non-negative with each entry
    dividing the next.
    """
    A, m, n = _as_dense(M)
    A = [[int(v) for v in row] for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest absolute value, then smallest index
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, "r")
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return A, U, V


def _normalize_factors(diag):
    """Turn a list of nonzero diagonal entries into invariant factors."""
    d = sorted(abs(v) for v in diag if v)
    k = len(d)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def invariant_factors(M) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    if isinstance(M, SparseMatrix):
        if M.rows <= DENSE_LIMIT and M.cols <= DENSE_LIMIT:
            D, _, _ = smith_normal_form(M)
            return [D[i][i] for i in range(min(M.rows, M.cols)) if D[i][i]]
        return _sparse_invariant_factors(M)
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def _sparse_invariant_factors(M: SparseMatrix) -> list[int]:
    rows = {i: dict(r) for i, r in M.row_dicts().items()}
    cols: dict[int, set] = {}
    for (i, j) in M.entries:
        cols.setdefault(j, set()).add(i)
    diag = []

    def set_entry(i, j, v):
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r = rows.get(i)
            if r is not None and j in r:
                del r[j]
                if not r:
                    del rows[i]
            c = cols.get(j)
            if c is not None:
                c.discard(i)
                if not c:
                    del cols[j]

    while rows:
        # unit pivots first (cheap), then minimal absolute value
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                a = abs(v)
                if best is None or a < best[0] or (a == best[0] and (i, j) < best[1:]):
                    best = (a, i, j)
            if best[0] == 1:
                break
        _, pi, pj = best
        while True:
            p = rows[pi][pj]
            dirty = False
            for i in sorted(cols[pj] - {pi}):
                q = rows[i][pj] // p
                for j, v in list(rows[pi].items()):
                    set_entry(i, j, rows.get(i, {}).get(j, 0) - q * v)
                if rows.get(i, {}).get(pj):
                    dirty = True
            prow = rows[pi]
            for j in sorted(set(prow) - {pj}):
                q = prow[j] // p
                for i in list(cols[pj]):
                    set_entry(i, j, rows.get(i, {}).get(j, 0) - q * rows[i][pj])
                if rows.get(pi, {}).get(j):
                    dirty = True
            if not dirty:
                break
            # move the pivot to a smaller remainder in its row or column
            cand = [(abs(rows[i][pj]), i, pj) for i in cols[pj]]
            cand += [(abs(v), pi, j) for j, v in rows[pi].items()]
            _, pi, pj = min(cand)
        diag.append(rows[pi][pj])
        set_entry(pi, pj, 0)
    return _normalize_factors(diag)


def _to_fraction_rows(M):
    A, m, n = _as_dense(M)
    return [[Fraction(v) for v in row] for row in A], m, n


def rank_and_kernel(M) -> tuple[int, int]:
    """(rank, kernel dimension) over Q by fraction-free (Bareiss) elimination."""
    if isinstance(M, SparseMatrix) and (M.rows > DENSE_LIMIT or M.cols > DENSE_LIMIT):
        r = _sparse_rank(M)
        return r, M.cols - r
    A, m, n = _to_fraction_rows(M)
    # clear denominators row by row so elimination stays in Z
    rows = []
    for row in A:
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        rows.append([int(v * den) for v in row])
    r = 0
    prev = 1
    for col in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][col]:
                if piv is None or abs(rows[i][col]) < abs(rows[piv][col]):
                    piv = i
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, m):
            a = rows[i][col]
            rows[i] = [(p * rows[i][k] - a * rows[r][k]) // prev for k in range(n)]
        prev = p
        r += 1
        if r == m:
            break
    return r, n - r


def _sparse_rank(M: SparseMatrix) -> int:
    rows = {}
    for (i, j), v in M.entries.items():
        rows.setdefault(i, {})[j] = Fraction(v)
    pivots: dict[int, dict] = {}  # pivot column -> normalised row
    r = 0
    for i in sorted(rows):
        row = rows[i]
        while row:
            j = min(row)
            if j not in pivots:
                inv = 1 / row[j]
                pivots[j] = {k: v * inv for k, v in row.items()}
                r += 1
                break
            f = row[j]
            for k, v in pivots[j].items():
                s = row.get(k, 0) - f * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return r


def rank(M) -> int:
    return rank_and_kernel(M)[0]


def determinant(M) -> int:
    """Exact determinant of a square integer or rational matrix by elimination over Q."""
    A, m, n = _as_dense(M)
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [[Fraction(v) for v in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        p = A[col][col]
        det *= p
        for i in range(col + 1, n):
            f = A[i][col] / p
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return det if det.denominator != 1 else int(det)

"""Exact Gauss-Jordan elimination over any exact field type (Fraction, FieldElement)."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence


class SparseEchelon:
    """Incrementally maintained reduced row echelon form of sparse vectors.

    Vectors are dicts column -> coefficient.  Each row is normalised so that
    its pivot (the column that is largest under ``key``) has coefficient 1,
    and no other row has a nonzero entry in that column.
    """

    def __init__(self, key: Callable[[Hashable], object]):
        self.key = key
        self.rows: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        vec = {c: v for c, v in vec.items() if v}
        for col in [c for c in vec if c in self.rows]:
            coeff = vec.get(col)
            if not coeff:
                continue
            for c, v in self.rows[col].items():
                nv = vec.get(c, 0) - coeff * v
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
        return vec

    def add(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        pivot = max(vec, key=self.key)
        inv = 1 / vec[pivot]
        vec = {c: v * inv for c, v in vec.items()}
        for row in self.rows.values():
            coeff = row.get(pivot)
            if coeff:
                for c, v in vec.items():
                    nv = row.get(c, 0) - coeff * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        self.rows[pivot] = vec
        return True

    def extend(self, vecs: Iterable[dict]) -> None:
        for v in vecs:
            self.add(v)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def _copy(matrix: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in matrix]


def row_reduce(matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Return (RREF, pivot columns) of a dense matrix."""
    m = _copy(matrix)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix:
        return 0
    return len(row_reduce(matrix)[1])


def inverse(matrix: Sequence[Sequence], one=1, zero=0) -> list[list]:
    n = len(matrix)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def kernel(matrix: Sequence[Sequence], one=1, zero=0) -> list[list]:
    """Basis of the right null space."""
    if not matrix:
        return []
    cols = len(matrix[0])
    red, pivots = row_reduce(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence, zero=0) -> list | None:
    """One solution of matrix @ x = rhs, or None if inconsistent."""
    cols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = row_reduce(aug)
    if cols in pivots:
        return None
    x = [zero] * cols
    for i, p in enumerate(pivots):
        x[p] = red[i][cols]
    return x

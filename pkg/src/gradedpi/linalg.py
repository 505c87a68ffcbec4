"""Exact Gaussian elimination over any field whose elements support
``+ - * /`` and truthiness (CycScalar, Fraction)."""
from __future__ import annotations


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if not _is_one(lead):
            inv = 1 / lead
            rows[r] = [x * inv if x else x for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _is_one(x):
    return x == 1


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(matrix, ncols: int, zero, one):
    """Basis of {v : M v = 0} for M given as a list of rows."""
    red, piv = rref(matrix, ncols) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, piv):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(matrix, rhs, ncols: int, zero):
    """One solution of M x = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [zero] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


class Subspace:
    """Incrementally grown subspace kept in reduced echelon form."""

    def __init__(self, dim: int, zero):
        self.dim = dim
        self.zero = zero
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        """Add v; return True when the dimension grew."""
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [x * inv if x else x for x in w]
        for i, row in enumerate(self.rows):
            if row[p]:
                f = row[p]
                self.rows[i] = [a - f * b if b else a for a, b in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(p)
        order = sorted(range(len(self.pivots)), key=self.pivots.__getitem__)
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def __len__(self):
        return len(self.rows)

    def basis(self):
        return [list(r) for r in self.rows]

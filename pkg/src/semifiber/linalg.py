"""Exact dense linear algebra over a coefficient field.

Matrices are lists of row lists of field scalars.  Everything is Gaussian
elimination with a fixed pivot order (first nonzero entry scanning rows top
to bottom, columns left to right) so results are bit-reproducible.
"""

from __future__ import annotations


def rref(field, rows):
    """Reduced row echelon form.  Returns (rref_rows, pivot_column_list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != field.zero:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != field.zero:
                f = mat[i][c]
                mat[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(field, rows) -> int:
    return len(rref(field, rows)[0])


def kernel_basis(field, rows, ncols):
    """Basis of the null space of the matrix (rows of length ncols).

    Returned vectors have a 1 in their free column and are produced in
    ascending free-column order.
    """
    red, pivots = rref(field, rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(red[i][free])
        basis.append(v)
    return basis


class SpanTracker:
    """Incrementally maintained row space; answers membership queries."""

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows = []    # rows in echelon form (not necessarily reduced)
        self.pivots = []  # pivot column per row

    def _reduce(self, vec):
        f = self.field
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc] != f.zero:
                c = v[pc]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return all(x == self.field.zero for x in self._reduce(vec))

    def add(self, vec) -> bool:
        """Add vec to the span; returns True if it enlarged the span."""
        f = self.field
        v = self._reduce(vec)
        for c in range(self.ncols):
            if v[c] != f.zero:
                inv = f.inv(v[c])
                v = [f.mul(inv, x) for x in v]
                self.rows.append(v)
                self.pivots.append(c)
                return True
        return False

    @property
    def dim(self) -> int:
        return len(self.rows)

"""Exact integer linear algebra: column Hermite forms, lattice membership,
kernel bases and diagonalization for quotient presentations.

Everything runs on Python's arbitrary-precision integers, so overflow
cannot occur and no result is ever approximate.
"""

from __future__ import annotations

from dataclasses import dataclass


class DimensionError(ValueError):
    pass


def _xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise DimensionError("row count mismatch")
        for r in self.entries:
            if len(r) != self.cols:
                raise DimensionError("column count mismatch")

    @staticmethod
    def from_rows(rows_list):
        rows_list = [tuple(int(x) for x in r) for r in rows_list]
        cols = len(rows_list[0]) if rows_list else 0
        return IntMatrix(len(rows_list), cols, tuple(rows_list))

    @staticmethod
    def from_cols(cols_list, rows=None):
        if cols_list:
            rows = len(cols_list[0])
        elif rows is None:
            raise DimensionError("need explicit row count for empty column list")
        return IntMatrix(
            rows,
            len(cols_list),
            tuple(tuple(int(c[i]) for c in cols_list) for i in range(rows)),
        )

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows, cols):
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def col(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def matvec(self, v):
        if len(v) != self.cols:
            raise DimensionError("matvec length mismatch")
        return tuple(sum(row[j] * v[j] for j in range(self.cols)) for row in self.entries)

    def mul(self, other):
        if self.cols != other.rows:
            raise DimensionError("matmul shape mismatch")
        ocols = [other.col(j) for j in range(other.cols)]
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum(row[k] * c[k] for k in range(self.cols)) for c in ocols)
                for row in self.entries
            ),
        )

    def add(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix add shape mismatch")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)),
        )

    def scale(self, c):
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionError("hstack row mismatch")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(ra + rb for ra, rb in zip(self.entries, other.entries)),
        )

    def is_zero(self):
        return all(x == 0 for r in self.entries for x in r)

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in self.entries) + "]"


def hnf(m: IntMatrix):
    """Column-style Hermite normal form.

    Returns (H, U) with M*U = H, U unimodular.  Pivots are positive,
    entries to the left of a pivot (within its row) lie in [0, pivot),
    entries to its right are zero, and zero columns trail.
    """
    rows, cols = m.rows, m.cols
    a = [list(m.col(j)) for j in range(cols)]
    u = [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    c = 0
    for r in range(rows):
        piv = None
        for j in range(c, cols):
            if a[j][r] != 0:
                piv = j
                break
        if piv is None:
            continue
        a[c], a[piv] = a[piv], a[c]
        u[c], u[piv] = u[piv], u[c]
        for j in range(c + 1, cols):
            if a[j][r] == 0:
                continue
            g, x, y = _xgcd(a[c][r], a[j][r])
            p, q = a[c][r] // g, a[j][r] // g
            colc, colj = a[c], a[j]
            a[c] = [x * s + y * t for s, t in zip(colc, colj)]
            a[j] = [-q * s + p * t for s, t in zip(colc, colj)]
            ucc, ucj = u[c], u[j]
            u[c] = [x * s + y * t for s, t in zip(ucc, ucj)]
            u[j] = [-q * s + p * t for s, t in zip(ucc, ucj)]
        if a[c][r] < 0:
            a[c] = [-s for s in a[c]]
            u[c] = [-s for s in u[c]]
        for j in range(c):
            q = a[j][r] // a[c][r]
            if q:
                a[j] = [s - q * t for s, t in zip(a[j], a[c])]
                u[j] = [s - q * t for s, t in zip(u[j], u[c])]
        c += 1
    return IntMatrix.from_cols(a, rows=rows), IntMatrix.from_cols(u, rows=cols)


class Lattice:
    """The integer column span of a matrix, with membership certificates.

    The Hermite form is computed once, so repeated membership queries are
    cheap.
    """

    def __init__(self, m: IntMatrix):
        self.matrix = m
        self.h, self.u = hnf(m)
        self._pivot_col = {}
        for j in range(self.h.cols):
            col = self.h.col(j)
            r = next((i for i, x in enumerate(col) if x != 0), None)
            if r is None:
                break
            self._pivot_col[r] = j

    def membership(self, v):
        """Return (True, certificate) with M*certificate = v, or (False, None)."""
        if len(v) != self.matrix.rows:
            raise DimensionError("vector length mismatch")
        w = list(v)
        x = [0] * self.matrix.cols
        for r in range(self.matrix.rows):
            if w[r] == 0:
                continue
            j = self._pivot_col.get(r)
            if j is None:
                return False, None
            q, rem = divmod(w[r], self.h.entries[r][j])
            if rem:
                return False, None
            x[j] = q
            col = self.h.col(j)
            for i in range(r, self.matrix.rows):
                w[i] -= q * col[i]
        return True, self.u.matvec(x)

    def contains(self, v):
        return self.membership(v)[0]


def in_lattice(m: IntMatrix, v):
    """Decide whether v is an integer combination of the columns of m.

    Returns (True, certificate) or (False, None).
    """
    return Lattice(m).membership(v)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """An integer basis for the lattice {x : m*x = 0}."""
    h, u = hnf(m)
    kcols = [u.col(j) for j in range(h.cols) if all(x == 0 for x in h.col(j))]
    return IntMatrix.from_cols(kcols, rows=m.cols)


def diagonalize(m: IntMatrix):
    """Diagonalize by unimodular row and column operations.

    Returns (d, L, Linv) with L*M*R = diag(d) for some (untracked)
    unimodular R; L is unimodular with inverse Linv.  The entries of d are
    nonzero; divisibility is not enforced, which is enough to detect
    torsion in the cokernel and to read off its free part.
    """
    rows, cols = m.rows, m.cols
    a = [list(r) for r in m.entries]
    lm = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    li = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        lm[i], lm[j] = lm[j], lm[i]
        for row in li:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def row_combine(i, j, x, y, p, q):
        # rows (i, j) <- (x*i + y*j, -q*i + p*j), det = x*p + y*q = 1
        ai, aj = a[i], a[j]
        a[i] = [x * s + y * t for s, t in zip(ai, aj)]
        a[j] = [-q * s + p * t for s, t in zip(ai, aj)]
        gi, gj = lm[i], lm[j]
        lm[i] = [x * s + y * t for s, t in zip(gi, gj)]
        lm[j] = [-q * s + p * t for s, t in zip(gi, gj)]
        for row in li:
            s, t = row[i], row[j]
            row[i] = p * s + q * t
            row[j] = -y * s + x * t

    def col_combine(i, j, x, y, p, q):
        for row in a:
            s, t = row[i], row[j]
            row[i] = x * s + y * t
            row[j] = -q * s + p * t

    t = 0
    while True:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    if pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    # exact elimination leaves the pivot row alone; the xgcd
                    # combine is reserved for inexact division, where it
                    # strictly shrinks the pivot, so the loop terminates
                    if a[i][t] % a[t][t] == 0:
                        row_combine(t, i, 1, 0, 1, a[i][t] // a[t][t])
                    else:
                        g, x, y = _xgcd(a[t][t], a[i][t])
                        row_combine(t, i, x, y, a[t][t] // g, a[i][t] // g)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    if a[t][j] % a[t][t] == 0:
                        col_combine(t, j, 1, 0, 1, a[t][j] // a[t][t])
                    else:
                        g, x, y = _xgcd(a[t][t], a[t][j])
                        col_combine(t, j, x, y, a[t][t] // g, a[t][j] // g)
                        done = False
            if done:
                break
        t += 1
    d = [a[i][i] for i in range(min(t, rows, cols))]
    return d, IntMatrix.from_rows(lm), IntMatrix.from_rows(li)


class QuotientTorsionError(ArithmeticError):
    """The cokernel has a finite cyclic factor, so it is not free."""


def lattice_quotient(ambient_rank: int, m: IntMatrix):
    """Present Z^ambient_rank / colspan(m) as a free module.

    Returns (rank, proj, lift): proj maps ambient coordinates onto quotient
    coordinates, lift is a section (proj * lift = identity).  Raises
    QuotientTorsionError when the quotient has torsion.
    """
    if m.rows != ambient_rank:
        raise DimensionError("relation matrix has wrong ambient rank")
    d, lm, li = diagonalize(m)
    if any(abs(x) != 1 for x in d):
        raise QuotientTorsionError(
            "quotient has torsion (invariant factors %s)" % [abs(x) for x in d if abs(x) != 1]
        )
    t = len(d)
    rank = ambient_rank - t
    proj = IntMatrix.from_rows([lm.entries[i] for i in range(t, ambient_rank)]) if rank else IntMatrix.zero(0, ambient_rank)
    lift = IntMatrix.from_cols([li.col(j) for j in range(t, ambient_rank)], rows=ambient_rank)
    return rank, proj, lift

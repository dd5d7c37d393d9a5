"""Exact linear algebra over the rationals and the integers.

Everything here works with ``int`` and ``fractions.Fraction`` only.  The
matrices involved are tiny (mostly 3x3, occasionally a few dozen rows in
the verification harness), so clarity wins over asymptotics throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import SingularMatrix, ZeroDeterminant


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"matrix entries must be int or Fraction, got {type(x)!r}")


class Mat:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Mat[{body}]"

    @property
    def t(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self.rows == self.t.rows

    def __add__(self, other: "Mat") -> "Mat":
        self._need_same_shape(other)
        return Mat([[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._need_same_shape(other)
        return Mat([[a - b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.rows])

    def _need_same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    def scaled(self, c) -> "Mat":
        c = _as_fraction(c)
        return Mat([[c * a for a in row] for row in self.rows])

    def __mul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        cols = other.t.rows
        return Mat([[sum(a * b for a, b in zip(row, col)) for col in cols]
                    for row in self.rows])

    def apply(self, vec):
        """Matrix times column vector (a sequence), returned as a tuple."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * _as_fraction(b) for a, b in zip(row, vec))
                     for row in self.rows)

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        # fraction-free Bareiss on a denominator-cleared copy
        scale = Fraction(1)
        work = []
        for row in self.rows:
            d = 1
            for x in row:
                d = d * x.denominator // gcd(d, x.denominator)
            scale *= d
            work.append([int(x * d) for x in row])
        d = _bareiss_det(work)
        return Fraction(d) / scale

    def rank(self) -> int:
        work = []
        for row in self.rows:
            d = 1
            for x in row:
                d = d * x.denominator // gcd(d, x.denominator)
            work.append([int(x * d) for x in row])
        return _int_rank(work)

    def inv(self) -> "Mat":
        if self.nrows != self.ncols:
            raise SingularMatrix("non-square matrix")
        n = self.nrows
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise SingularMatrix("matrix has no inverse")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Mat([row[n:] for row in aug])


RationalMatrix = Mat


def _bareiss_det(a):
    # a: list of lists of int, consumed destructively
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _int_rank(a):
    # fraction-free elimination with full pivoting; a is consumed
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(nc):
        pivot = next((r for r in range(row, nr) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        for i in range(row + 1, nr):
            for j in range(col + 1, nc):
                a[i][j] = (a[i][j] * a[row][col] - a[i][col] * a[row][j]) // prev
            a[i][col] = 0
        prev = a[row][col]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def matrix_rank(m: Mat) -> int:
    return m.rank()


def invert(m: Mat) -> Mat:
    return m.inv()


def has_eigenvalue(m: Mat, v) -> bool:
    """Exact test: is ``v`` an eigenvalue of the square matrix ``m``?"""
    shifted = m - Mat.identity(m.nrows).scaled(_as_fraction(v))
    return shifted.det() == 0


def smith_normal_form(m: Mat):
    """Elementary divisors (d1, ..., dk) of a square integral matrix.

    Nonnegative, each dividing the next, with product ``abs(det)``.
    """
    if not m.is_integral():
        raise ValueError("Smith form needs an integral matrix")
    if m.nrows != m.ncols:
        raise ValueError("Smith form of non-square matrix")
    if m.det() == 0:
        raise ZeroDeterminant("matrix is singular")
    a = [[int(x) for x in row] for row in m.rows]
    n = len(a)
    divisors = []
    for top in range(n):
        while True:
            # locate a nonzero entry of minimal absolute value
            best = None
            for i in range(top, n):
                for j in range(top, n):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            bi, bj = best
            if bi != top:
                a[top], a[bi] = a[bi], a[top]
            if bj != top:
                for row in a:
                    row[top], row[bj] = row[bj], row[top]
            piv = a[top][top]
            dirty = False
            for i in range(top + 1, n):
                q = a[i][top] // piv
                if q:
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                if a[i][top]:
                    dirty = True
            for j in range(top + 1, n):
                q = a[top][j] // piv
                if q:
                    for i in range(top, n):
                        a[i][j] -= q * a[i][top]
                if a[top][j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry
            offender = None
            for i in range(top + 1, n):
                for j in range(top + 1, n):
                    if a[i][j] % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(top, n):
                a[top][j] += a[offender][j]
        divisors.append(abs(a[top][top]))
    return tuple(divisors)


# ---- integer row modules (used for sublattice bookkeeping) ----

def hnf_rows(rows):
    """Hermite form of the row module spanned by integer ``rows``.

    Returns a tuple of nonzero rows in echelon shape: pivots positive,
    entries above each pivot reduced into [0, pivot).  Canonical for the
    module, so two generating sets span the same module iff forms match.
    """
    work = [[int(x) for x in r] for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return ()
    ncols = len(work[0])
    out = []
    for col in range(ncols):
        sel = [r for r in work if r[col] != 0]
        if not sel:
            continue
        while len(sel) > 1:
            sel.sort(key=lambda r: abs(r[col]))
            piv = sel[0]
            for r in sel[1:]:
                q = r[col] // piv[col]
                if q:
                    for j in range(ncols):
                        r[j] -= q * piv[j]
            sel = [piv] + [r for r in sel[1:] if r[col] != 0]
        piv = sel[0]
        if piv[col] < 0:
            for j in range(ncols):
                piv[j] = -piv[j]
        out.append(piv)
        work = [r for r in work if r is not piv and any(r)]
    # reduce entries above pivots; ascending pivot order fixes each
    # column after earlier subtractions may have disturbed it
    pcols = [next(j for j in range(ncols) if r[j] != 0) for r in out]
    for k in range(len(out)):
        for i in range(k + 1, len(out)):
            q = out[k][pcols[i]] // out[i][pcols[i]]
            if q:
                for j in range(ncols):
                    out[k][j] -= q * out[i][j]
    return tuple(tuple(r) for r in out)


def module_key(rows):
    """Canonical key for the rational row module spanned by ``rows``.

    Accepts Fraction entries; scales to a primitive integer generating set
    first, so the key identifies the module inside Q^n exactly.
    """
    denom = 1
    for r in rows:
        for x in r:
            f = _as_fraction(x)
            denom = denom * f.denominator // gcd(denom, f.denominator)
    scaled = [[int(_as_fraction(x) * denom) for x in r] for r in rows]
    return hnf_rows(scaled), denom


def intersect_row_modules(rows_a, rows_b):
    """Intersection of two full-rank integer row modules in Z^n.

    Uses duality: (A ∩ B)* = A* + B* with respect to the dot product.
    Returns a Hermite-form row basis.
    """
    a = Mat(rows_a)
    b = Mat(rows_b)
    a_dual = a.inv().t
    b_dual = b.inv().t
    joint = list(a_dual.rows) + list(b_dual.rows)
    form, denom = module_key(joint)
    dual_basis = Mat(form).scaled(Fraction(1, denom))
    inter = dual_basis.inv().t
    form2, denom2 = module_key(inter.rows)
    if denom2 != 1:
        raise ValueError("intersection of integer modules must be integral")
    return form2

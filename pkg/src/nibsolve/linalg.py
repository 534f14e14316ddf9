"""Exact linear algebra over the rationals and the integers.

Everything here is denominator-exact: matrices hold Python ints or
``fractions.Fraction`` entries (or any field type supporting +,-,*,/ and
equality with 0/1, e.g. cyclotomic elements), and no floating point is used
anywhere.  Lattice bases are canonicalised with a single Hermite normal form
convention used across the whole package: column-style, upper triangular,
positive pivots, entries to the right of each pivot reduced modulo the pivot.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Callable, Iterator, Sequence


class SingularMatrixError(ZeroDivisionError):
    """Raised when a solve/inverse hits a singular matrix."""


class NotPositiveDefiniteError(ValueError):
    """Raised when a Gram matrix fails a positive-definiteness check."""


# ---------------------------------------------------------------------------
# Matrix container

class Matrix:
    """Dense rectangular matrix with exact entries, row-major storage."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix")

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int, zero=0) -> "Matrix":
        return cls([[zero] * cols for _ in range(rows)])

    def copy(self) -> "Matrix":
        return Matrix(self.data)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.data[i][j] = value

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(self.data[i][j] == other.data[i][j]
                    for i in range(self.rows) for j in range(self.cols))
        )

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix[{body}]"

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.data[i][0] * other.data[0][j]
                for t in range(1, self.cols):
                    acc = acc + self.data[i][t] * other.data[t][j]
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def mul_vector(self, vec: Sequence) -> list:
        if self.cols != len(vec):
            raise ValueError("dimension mismatch in matrix-vector product")
        out = []
        for i in range(self.rows):
            acc = self.data[i][0] * vec[0]
            for t in range(1, self.cols):
                acc = acc + self.data[i][t] * vec[t]
            out.append(acc)
        return out

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    """Assemble a matrix from a list of column vectors."""
    rows = len(cols[0])
    return Matrix([[col[i] for col in cols] for i in range(rows)])


# ---------------------------------------------------------------------------
# Hermite normal form (column style)

def hnf(mat: Matrix) -> tuple[Matrix, Matrix]:
    """Column-style HNF of the column lattice of an integer matrix.

    Returns (H, U) with U unimodular and mat*U = H (H padded with zero
    columns on the right if the column rank is deficient).  H is upper
    triangular with positive pivots and every entry to the right of a pivot
    reduced into [0, pivot).
    """
    work = [list(col) for col in mat.columns()]
    n = mat.rows
    m = len(work)
    trans = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    # assign pivots bottom row first into the right-most columns, so pivot
    # columns end upper triangular (column for row r has support in rows <= r)
    piv_end = m
    pivots: list[tuple[int, int]] = []  # (row, column) pairs, built bottom-up
    for r in range(n - 1, -1, -1):
        if piv_end == 0:
            break
        found = None
        for c in range(piv_end - 1, -1, -1):
            if work[c][r] != 0:
                found = c
                break
        if found is None:
            continue
        target = piv_end - 1
        if found != target:
            work[target], work[found] = work[found], work[target]
            trans[target], trans[found] = trans[found], trans[target]
        for c in range(target - 1, -1, -1):
            while work[c][r] != 0:
                a, b = work[target][r], work[c][r]
                if a == 0 or abs(b) < abs(a):
                    work[target], work[c] = work[c], work[target]
                    trans[target], trans[c] = trans[c], trans[target]
                    a, b = work[target][r], work[c][r]
                q = b // a
                if q:
                    for i in range(n):
                        work[c][i] -= q * work[target][i]
                    for i in range(m):
                        trans[c][i] -= q * trans[target][i]
        if work[target][r] < 0:
            work[target] = [-x for x in work[target]]
            trans[target] = [-x for x in trans[target]]
        pivots.append((r, target))
        piv_end = target
    # reduce entries to the right of each pivot into [0, pivot)
    for r, c in pivots:
        a = work[c][r]
        for c2 in range(c + 1, m):
            q = work[c2][r] // a
            if q:
                for i in range(n):
                    work[c2][i] -= q * work[c][i]
                for i in range(m):
                    trans[c2][i] -= q * trans[c][i]
    h = from_columns([work[c] for c in range(m)]) if m else Matrix([[]])
    u = Matrix(trans).transpose()
    return h, u


def hnf_basis(mat: Matrix) -> Matrix:
    """Square HNF basis of a full-column-rank lattice (pivot columns only)."""
    h, _ = hnf(mat)
    cols = [h.column(j) for j in range(h.cols)
            if any(x != 0 for x in h.column(j))]
    if len(cols) != mat.rows:
        raise ValueError("lattice is not full rank")
    return from_columns(cols)


def lattice_membership(basis: Matrix, vec: Sequence[int]) -> list[int] | None:
    """Integer coordinates of vec over an upper-triangular HNF basis, or None."""
    n = basis.rows
    v = list(vec)
    coeffs = [0] * n
    for i in range(n - 1, -1, -1):
        piv = basis.data[i][i]
        if v[i] % piv != 0:
            return None
        c = v[i] // piv
        coeffs[i] = c
        if c:
            for t in range(i + 1):
                v[t] -= c * basis.data[t][i]
    if any(x != 0 for x in v):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# Smith normal form (used to normalise group presentations)

def smith_normal_form(mat: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (D, U, V) with U*mat*V = D diagonal,
    U, V unimodular, and each diagonal entry dividing the next."""
    a = [list(row) for row in mat.data]
    n, m = mat.rows, mat.cols
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        for t in range(m):
            a[dst][t] += q * a[src][t]
        for t in range(n):
            u[dst][t] += q * u[src][t]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    k = 0
    while k < min(n, m):
        # find a nonzero pivot
        pi = pj = None
        for i in range(k, n):
            for j in range(k, m):
                if a[i][j] != 0:
                    pi, pj = i, j
                    break
            if pi is not None:
                break
        if pi is None:
            break
        swap_rows(k, pi)
        swap_cols(k, pj)
        while True:
            # clear column k
            done = True
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    add_row(k, i, -q)
                    if a[i][k] != 0:
                        swap_rows(k, i)
                        done = False
            for j in range(k + 1, m):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    add_col(k, j, -q)
                    if a[k][j] != 0:
                        swap_cols(k, j)
                        done = False
            if done:
                break
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]
        k += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            d1, d2 = a[i][i], a[i + 1][i + 1]
            if d2 % d1 != 0:
                changed = True
                add_col(i, i + 1, 1)
                # re-eliminate the 2x2 block (gcd appears at (i, i))
                while a[i + 1][i] != 0 or a[i][i + 1] != 0:
                    if a[i + 1][i] != 0:
                        q = a[i + 1][i] // a[i][i]
                        add_row(i, i + 1, -q)
                        if a[i + 1][i] != 0:
                            swap_rows(i, i + 1)
                    if a[i][i + 1] != 0:
                        q = a[i][i + 1] // a[i][i]
                        add_col(i, i + 1, -q)
                        if a[i][i + 1] != 0:
                            swap_cols(i, i + 1)
                if a[i][i] < 0:
                    a[i] = [-x for x in a[i]]
                    u[i] = [-x for x in u[i]]
                if a[i + 1][i + 1] < 0:
                    a[i + 1] = [-x for x in a[i + 1]]
                    u[i + 1] = [-x for x in u[i + 1]]
    return Matrix(a), Matrix(u), Matrix(v)


# ---------------------------------------------------------------------------
# Determinant / solve / inverse

def det_bareiss(mat: Matrix) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = mat.rows
    if n != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in mat.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
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


def det(mat: Matrix):
    """Exact determinant; Bareiss for integer matrices, division-free scaling
    for rational ones, plain elimination for other exact field entries."""
    n = mat.rows
    if n != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    entries = [x for row in mat.data for x in row]
    if all(isinstance(x, int) for x in entries):
        return det_bareiss(mat)
    if all(isinstance(x, (int, Fraction)) for x in entries):
        # clear denominators, then Bareiss
        denom = 1
        for x in entries:
            if isinstance(x, Fraction):
                d = x.denominator
                denom = denom * d // _gcd(denom, d)
        scaled = Matrix([[int(x * denom) for x in row] for row in mat.data])
        return Fraction(det_bareiss(scaled), denom ** n)
    return _det_field(mat)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _det_field(mat: Matrix):
    """Gaussian-elimination determinant for matrices over an exact field."""
    n = mat.rows
    a = [list(row) for row in mat.data]
    sign = 1
    result = None
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            zero = a[0][0] - a[0][0]
            return zero
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        piv = a[k][k]
        result = piv if result is None else result * piv
        for i in range(k + 1, n):
            if a[i][k] != 0:
                factor = a[i][k] / piv
                for j in range(k, n):
                    a[i][j] = a[i][j] - factor * a[k][j]
    return -result if sign < 0 else result


def solve_linear(mat: Matrix, vec: Sequence) -> list:
    """Unique exact solution of mat * x = vec for square nonsingular mat."""
    sols = solve_many(mat, [list(vec)])
    return sols[0]


def solve_many(mat: Matrix, vecs: Sequence[Sequence]) -> list[list]:
    """Solve mat * x = v for several right-hand sides at once."""
    n = mat.rows
    if n != mat.cols:
        raise ValueError("solve requires a square matrix")
    k = len(vecs)
    a = [list(mat.data[i]) + [v[i] for v in vecs] for i in range(n)]
    for colk in range(n):
        pivot_row = next((i for i in range(colk, n) if a[i][colk] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != colk:
            a[colk], a[pivot_row] = a[pivot_row], a[colk]
        piv = a[colk][colk]
        for i in range(n):
            if i != colk and a[i][colk] != 0:
                factor = a[i][colk] / piv
                for j in range(colk, n + k):
                    a[i][j] = a[i][j] - factor * a[colk][j]
    out = []
    for t in range(k):
        out.append([_exact_div(a[i][n + t], a[i][i]) for i in range(n)])
    return out


def _exact_div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def solve_overdetermined(columns: Sequence[Sequence], vec: Sequence) -> list | None:
    """Exact solution x of A x = vec where A has the given columns (may have
    more rows than columns); returns None if the system is inconsistent."""
    sols = solve_overdetermined_many(columns, [vec])
    return sols[0] if sols is not None else None


def solve_overdetermined_many(columns: Sequence[Sequence],
                              vecs: Sequence[Sequence]) -> list[list] | None:
    """Like solve_overdetermined but with several right-hand sides sharing
    one elimination; returns None if any system is inconsistent."""
    rows = len(columns[0])
    cols = len(columns)
    k = len(vecs)
    a = [[columns[j][i] for j in range(cols)] + [v[i] for v in vecs]
         for i in range(rows)]
    width = cols + k
    piv_of_col = {}
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        piv = a[r][c]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                factor = a[i][c] / piv
                for j in range(c, width):
                    a[i][j] = a[i][j] - factor * a[r][j]
        piv_of_col[c] = r
        r += 1
    for i in range(r, rows):
        for t in range(k):
            if a[i][cols + t] != 0:
                return None
    out = []
    for t in range(k):
        sol = []
        for c in range(cols):
            if c in piv_of_col:
                i = piv_of_col[c]
                sol.append(_exact_div(a[i][cols + t], a[i][c]))
            else:
                sol.append(Fraction(0))
        out.append(sol)
    return out


def inverse(mat: Matrix) -> Matrix:
    """Exact inverse of a square nonsingular matrix."""
    n = mat.rows
    one = None
    for row in mat.data:
        for x in row:
            if x != 0:
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        raise SingularMatrixError("matrix is singular")
    zero = one - one
    rhs = [[one if i == j else zero for i in range(n)] for j in range(n)]
    cols = solve_many(mat, rhs)
    return from_columns(cols)


# ---------------------------------------------------------------------------
# Exact LLL on a Gram matrix

LLL_DELTA = Fraction(3, 4)


def lll_reduce(gram: Matrix) -> Matrix:
    """LLL-reduce the lattice described by an exact SPD Gram matrix.

    Works entirely on the Gram matrix (no embedding needed) with the
    classical parameter delta = 3/4, and returns the unimodular transform U
    such that U^T * gram * U is the Gram matrix of the reduced basis.
    """
    n = gram.rows
    if n != gram.cols:
        raise ValueError("Gram matrix must be square")
    g = [[Fraction(gram.data[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def gs():
        """Gram-Schmidt data (mu, Bstar) of the current basis from g."""
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        # inner products of basis vectors with GS vectors, built row by row
        for i in range(n):
            # <b_i, b*_j> for j < i
            ip = [Fraction(0)] * i
            for j in range(i):
                acc = Fraction(g[i][j])
                for t in range(j):
                    acc -= mu[j][t] * ip[t]
                ip[j] = acc
                mu[i][j] = acc / bstar[j]
            acc = Fraction(g[i][i])
            for t in range(i):
                acc -= mu[i][t] * ip[t]
            bstar[i] = acc
            if bstar[i] <= 0:
                raise NotPositiveDefiniteError("Gram matrix is not positive definite")
        return mu, bstar

    def apply_colop(dst, src, q):
        """basis[dst] -= q * basis[src] (column operation on g and u)."""
        for t in range(n):
            g[dst][t] -= q * g[src][t]
        for t in range(n):
            g[t][dst] -= q * g[t][src]
        for t in range(n):
            u[t][dst] -= q * u[t][src]

    def swap(i, j):
        g[i], g[j] = g[j], g[i]
        for row in g:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    mu, bstar = gs()
    k = 1
    while k < n:
        # size-reduce b_k against b_{k-1}..b_0
        for j in range(k - 1, -1, -1):
            q = _nearest_int(mu[k][j])
            if q:
                apply_colop(k, j, q)
                mu, bstar = gs()
        if bstar[k] >= (LLL_DELTA - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k, k - 1)
            mu, bstar = gs()
            k = max(k - 1, 1)
    return Matrix(u)


def _nearest_int(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


# ---------------------------------------------------------------------------
# Exact rational square-root bounds and Fincke-Pohst enumeration

def floor_sqrt_fraction(x: Fraction) -> int:
    """Largest integer s with s*s <= x (x >= 0)."""
    if x < 0:
        raise ValueError("negative argument")
    num, den = x.numerator, x.denominator
    return isqrt(num * den) // den


def iroot_floor(value: int, k: int) -> int:
    """Largest integer s with s**k <= value (value >= 0), Newton iteration."""
    if value < 0:
        raise ValueError("negative argument")
    if value == 0:
        return 0
    if k == 1:
        return value
    x = 1 << -(-value.bit_length() // k)
    while True:
        y = ((k - 1) * x + value // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > value:
        x -= 1
    while (x + 1) ** k <= value:
        x += 1
    return x


def ceil_root(value: int, k: int) -> int:
    """Smallest integer s with s**k >= value (value >= 0)."""
    f = iroot_floor(value, k)
    return f if f ** k == value else f + 1


def _floor_sqrt_minus(bound: Fraction, shift: Fraction) -> int:
    """floor(sqrt(bound) - shift) computed exactly (bound >= 0)."""
    x = floor_sqrt_fraction(bound) - _ceil_frac(shift) + 2
    while Fraction(x) + shift > 0 and (Fraction(x) + shift) ** 2 > bound:
        x -= 1
    return x


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def fincke_pohst(gram: Matrix, bound: Fraction,
                 limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Enumerate nonzero integer vectors x with x^T gram x <= bound.

    Exact rational Cholesky recursion; one vector of each antipodal pair
    (+-x) is produced, with deterministic ordering.  Raises RuntimeError via
    the caller's count if limit is exceeded (the caller counts).
    """
    n = gram.rows
    bound = Fraction(bound)
    if bound < 0:
        return
    # rational Cholesky: q[i][i] and q[i][j] = mu coefficients
    q = [[Fraction(gram.data[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise NotPositiveDefiniteError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k2 in range(i + 1, n):
            for l2 in range(k2, n):
                q[k2][l2] = q[k2][l2] - q[k2][i] * q[i][l2]
                if l2 != k2:
                    q[l2][k2] = q[k2][l2]
    for i in range(n):
        if q[i][i] <= 0:
            raise NotPositiveDefiniteError("Gram matrix is not positive definite")

    x = [0] * n
    t = [Fraction(0)] * (n + 1)  # remaining bound per level
    u = [Fraction(0)] * n        # offset per level
    t[n - 1] = bound

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        ti = t[i]
        if ti < 0:
            return
        ui = u[i]
        upper = _floor_sqrt_minus(ti / q[i][i], ui)
        lower = -_floor_sqrt_minus(ti / q[i][i], -ui)
        for xi in range(lower, upper + 1):
            x[i] = xi
            step = Fraction(xi) + ui
            rem = ti - q[i][i] * step * step
            if i == 0:
                if any(x):
                    # canonical representative of {x, -x}: first nonzero > 0
                    lead = next(v for v in reversed(x) if v != 0)
                    if lead > 0:
                        yield tuple(x)
            else:
                t[i - 1] = rem
                u[i - 1] = sum(q[i - 1][j] * x[j] for j in range(i, n))
                yield from rec(i - 1)
        x[i] = 0

    u[n - 1] = Fraction(0)
    yield from rec(n - 1)

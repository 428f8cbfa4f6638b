"""Exact integer and rational matrix kernel.

All arithmetic is arbitrary precision: matrices hold Python ``int`` or
``fractions.Fraction`` entries, and every algorithm below is fraction-free
(Bareiss, integer pivoting) or exact rational.  No floating point anywhere.

Conventions:

* ``Matrix`` is immutable and dense; zero-by-n and n-by-zero shapes are legal
  (they show up as empty lattice bases and fully-rooted relative boundaries).
* Characteristic polynomials are monic in ``z`` with coefficients stored in
  ascending order, so ``coeffs[k]`` multiplies ``z**k``.
* Smith normal form returns positive invariant factors ``d_1 | d_2 | ... | d_r``
  (zeros are implicit padding) together with both unimodular transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Num = "int | Fraction"


def _canon(x):
    """Normalize an entry: Fractions with unit denominator collapse to int."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"matrix entries must be int or Fraction, got {type(x).__name__}")


class Matrix:
    """Immutable dense matrix over exact integers / rationals."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, rows, ncols=None):
        data = tuple(tuple(_canon(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row width")
            ncols = width
        elif ncols is None:
            raise ValueError("a matrix with no rows needs an explicit ncols")
        self.data = data
        self.nrows = len(data)
        self.ncols = ncols

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = tuple(tuple(c) for c in cols)
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            raise ValueError("a matrix with no columns needs an explicit nrows")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)), ncols=len(cols))

    @classmethod
    def diagonal(cls, entries, nrows=None, ncols=None):
        entries = tuple(entries)
        n = len(entries)
        nrows = n if nrows is None else nrows
        ncols = n if ncols is None else ncols
        return cls(
            tuple(
                tuple(entries[i] if i == j and i < n else 0 for j in range(ncols))
                for i in range(nrows)
            ),
            ncols=ncols,
        )

    # -- accessors --------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    @property
    def is_integral(self):
        return all(isinstance(x, int) for row in self.data for x in row)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return tuple(zip(*self.data)) if self.nrows else ()

    def submatrix(self, rows, cols):
        rows = tuple(rows)
        cols = tuple(cols)
        return Matrix(tuple(tuple(self.data[i][j] for j in cols) for i in rows), ncols=len(cols))

    def transpose(self):
        return Matrix(tuple(zip(*self.data)), ncols=self.nrows) if self.nrows else Matrix.zeros(self.ncols, 0)

    # -- arithmetic -------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            bcols = other.columns()
            return Matrix(
                tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bcols) for row in self.data),
                ncols=other.ncols,
            )
        return self.scale(other)

    def scale(self, s):
        s = _canon(s)
        return Matrix(tuple(tuple(s * x for x in row) for row in self.data), ncols=self.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
            ncols=self.ncols,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    @property
    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.data))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial det(z*I - M), ascending coefficients."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _canon(acc) if isinstance(acc, (int, Fraction)) else acc

    def strip_zero_roots(self):
        """Drop the z^m factor: coefficients above the lowest nonzero one."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return self.coeffs[k:]


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form: left * M * right is diagonal(invariant_factors) padded with zeros."""

    invariant_factors: tuple
    left: Matrix
    right: Matrix

    @property
    def rank(self):
        return len(self.invariant_factors)

    def diagonal_matrix(self, nrows, ncols):
        return Matrix.diagonal(self.invariant_factors, nrows=nrows, ncols=ncols)


# ---------------------------------------------------------------------------
# helpers shared by the elimination routines
# ---------------------------------------------------------------------------


def _integer_rows(M):
    """Scale each row by its denominator lcm; returns (rows, product of scalars).

    Row scaling preserves rank and kernel, and multiplies the determinant by
    the product of the scalars.
    """
    rows = []
    denom = 1
    for row in M.data:
        s = 1
        for x in row:
            if isinstance(x, Fraction):
                s = s * x.denominator // math.gcd(s, x.denominator)
        rows.append([int(x * s) for x in row])
        denom *= s
    return rows, denom


def _normalize_row(row):
    g = 0
    for x in row:
        g = math.gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


# ---------------------------------------------------------------------------
# rank / determinant / characteristic polynomial
# ---------------------------------------------------------------------------


def greedy_column_basis(M):
    """Lexicographically first maximal independent set of column indices."""
    pivots = []  # (pivot_row, integer row vector of length nrows)
    basis = []
    for j in range(M.ncols):
        v = [x for x in M.column(j)]
        s = 1
        for x in v:
            if isinstance(x, Fraction):
                s = s * x.denominator // math.gcd(s, x.denominator)
    # scale column to integers
        v = [int(x * s) for x in v]
        for prow, pvec in pivots:
            c = v[prow]
            if c:
                p = pvec[prow]
                v = [a * p - b * c for a, b in zip(v, pvec)]
        v = _normalize_row(v)
        for i, x in enumerate(v):
            if x:
                pivots.append((i, v))
                basis.append(j)
                break
    return tuple(basis)


def greedy_row_basis(M):
    return greedy_column_basis(M.transpose())


def rank(M):
    """Exact rank over the rationals."""
    return len(greedy_column_basis(M))


def _bareiss_det(rows, n):
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pkk - rik * rk[j]) // prev
            ri[k] = 0
        prev = pkk
    return sign * rows[n - 1][n - 1]


def det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    if M.nrows == 0:
        return 1
    rows, denom = _integer_rows(M)
    d = _bareiss_det(rows, M.nrows)
    return _canon(Fraction(d, denom))


def char_poly(M):
    """Monic det(z*I - M) with exact coefficients (Faddeev-LeVerrier)."""
    if not M.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.nrows
    if n == 0:
        return CharPoly((1,))
    scale = 1
    for row in M.data:
        for x in row:
            if isinstance(x, Fraction):
                scale = scale * x.denominator // math.gcd(scale, x.denominator)
    N = [[int(x * scale) for x in row] for row in M.data]
    ncols_range = range(n)
    # descending coefficients of det(z*I - scale*M)
    desc = [1]
    B = [row[:] for row in N]
    for k in range(1, n + 1):
        tr = sum(B[i][i] for i in ncols_range)
        if tr % k:
            raise ArithmeticError("inexact trace division in char poly recursion")
        ak = -(tr // k)
        desc.append(ak)
        if k < n:
            for i in ncols_range:
                B[i][i] += ak
            Bcols = list(zip(*B))
            B = [[sum(a * b for a, b in zip(row, col)) for col in Bcols] for row in N]
    # det(z*I - M) coefficient of z^j is desc[n-j] / scale^(n-j)
    coeffs = tuple(_canon(Fraction(desc[n - j], scale ** (n - j))) for j in range(n + 1))
    return CharPoly(coeffs)


def pseudodet(M):
    """Product of the nonzero eigenvalues, from the characteristic polynomial.

    The sign is fixed assuming positive-semidefinite input (the Laplacian
    case); the zero matrix yields 1 by the empty-product convention.
    """
    cp = char_poly(M)
    for c in cp.coeffs:
        if c != 0:
            return abs(c)
    raise AssertionError("monic polynomial cannot be zero")


# ---------------------------------------------------------------------------
# Smith normal form and invariant factors
# ---------------------------------------------------------------------------


def _snf_core(A, m, n, want_transforms):
    """Diagonalize integer matrix A in place; returns (factors, L, R)."""
    L = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_transforms else None
    R = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_transforms else None
    factors = []
    t = 0
    while True:
        # locate a pivot of smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v:
                    a = abs(v)
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            if L:
                L[t], L[bi] = L[bi], L[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
            if R:
                for row in R:
                    row[t], row[bj] = row[bj], row[t]
        while True:
            # clear the pivot column with row operations
            restart = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                        if L:
                            Li, Lt = L[i], L[t]
                            for j in range(m):
                                Li[j] -= q * Lt[j]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        if L:
                            L[t], L[i] = L[i], L[t]
                        restart = True
            if restart:
                continue
            # clear the pivot row with column operations
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                        if R:
                            for row in R:
                                row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        if R:
                            for row in R:
                                row[t], row[j] = row[j], row[t]
                        restart = True
            if restart:
                continue
            # divisibility: the pivot must divide every remaining entry
            p = A[t][t]
            offender = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            At = A[t]
            Ao = A[offender]
            for j in range(t, n):
                At[j] += Ao[j]
            if L:
                Lt, Lo = L[t], L[offender]
                for j in range(m):
                    Lt[j] += Lo[j]
        if A[t][t] < 0:
            for j in range(t, n):
                A[t][j] = -A[t][j]
            if L:
                for j in range(m):
                    L[t][j] = -L[t][j]
        factors.append(A[t][t])
        t += 1
    return factors, L, R


def smith_normal_form(M):
    """Smith normal form with unimodular transforms: left*M*right = diag(factors)."""
    if not M.is_integral:
        raise ValueError("Smith normal form requires an integer matrix")
    m, n = M.shape
    A = [list(row) for row in M.data]
    factors, L, R = _snf_core(A, m, n, want_transforms=True)
    return SNFResult(tuple(factors), Matrix(L, ncols=m), Matrix(R, ncols=n))


def invariant_factors(M):
    """Positive invariant factors of an integer matrix (no transforms)."""
    if not M.is_integral:
        raise ValueError("invariant factors require an integer matrix")
    A = [list(row) for row in M.data]
    factors, _, _ = _snf_core(A, M.nrows, M.ncols, want_transforms=False)
    return tuple(factors)


def torsion_order(M):
    """Product of the invariant factors exceeding 1."""
    out = 1
    for f in invariant_factors(M):
        if f > 1:
            out *= f
    return out


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


def _row_hermite(rows, ncols):
    """Canonical row Hermite form (positive pivots, reduced entries above)."""
    work = [list(r) for r in rows if any(r)]
    pivots = []  # (row index in echelon, column)
    r = 0
    for c in range(ncols):
        live = [i for i in range(r, len(work)) if work[i][c]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda i: abs(work[i][c]))
            i0 = live[0]
            for i in live[1:]:
                q = work[i][c] // work[i0][c]
                if q:
                    wi, w0 = work[i], work[i0]
                    for j in range(ncols):
                        wi[j] -= q * w0[j]
            live = [i for i in live if work[i][c]]
        i0 = live[0]
        work[r], work[i0] = work[i0], work[r]
        if work[r][c] < 0:
            work[r] = [-x for x in work[r]]
        p = work[r][c]
        for i in range(r):
            q = work[i][c] // p
            if q:
                wi, wr = work[i], work[r]
                for j in range(ncols):
                    wi[j] -= q * wr[j]
        pivots.append((r, c))
        r += 1
        work = [row for k, row in enumerate(work) if k < r or any(row)]
    return work[:r]


def column_lattice_basis(A):
    """Integer basis (as matrix columns) of the lattice spanned by A's columns.

    Column-style Hermite normal form with zero columns dropped.
    """
    if not A.is_integral:
        raise ValueError("lattice basis requires an integer matrix")
    rows = [list(col) for col in A.columns()]
    h = _row_hermite(rows, A.nrows)
    return Matrix.from_columns([tuple(r) for r in h], nrows=A.nrows)


def kernel_lattice_basis(M):
    """Integer basis of ker M as matrix columns (saturated automatically)."""
    rows, _ = _integer_rows(M)
    A = [row[:] for row in rows]
    factors, _, R = _snf_core(A, M.nrows, M.ncols, want_transforms=True)
    r = len(factors)
    cols = [tuple(R[i][j] for i in range(M.ncols)) for j in range(r, M.ncols)]
    return Matrix.from_columns(cols, nrows=M.ncols)


def saturation_basis(M):
    """Integer basis of (rational column span of M) ∩ Z^nrows."""
    W = kernel_lattice_basis(M.transpose())
    return kernel_lattice_basis(W.transpose())


def solve_matrix(A, B):
    """Solve A*X = B exactly; A must have full column rank and the system be consistent."""
    if A.nrows != B.nrows:
        raise ValueError("row mismatch in solve")
    m, n = A.shape
    aug = [[Fraction(x) for x in row_a] + [Fraction(x) for x in row_b]
           for row_a, row_b in zip(A.data, B.data)]
    width = n + B.ncols
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            raise ValueError("coefficient matrix does not have full column rank")
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if any(aug[i][n:]):
            raise ValueError("inconsistent linear system")
    X = [[_canon(aug[i][n + j]) for j in range(B.ncols)] for i in range(n)]
    return Matrix(X, ncols=B.ncols)


def covolume_squared(A):
    """Gram determinant det(A^T A) of an independent-column matrix."""
    g = det(A.transpose() * A)
    if g == 0:
        raise ValueError("columns are linearly dependent")
    return g


def lattice_quotient_order(K, S):
    """Order of (lattice spanned by K's columns) / (sublattice generated by S's columns).

    Returns None when the ranks differ (infinite quotient).  S's columns must
    lie in the lattice spanned by K (integer coordinates).
    """
    nk = K.ncols
    if nk == 0:
        return 1 if S.ncols == 0 or S.is_zero else None
    if S.ncols == 0:
        return None
    coords = solve_matrix(K, S)
    if not coords.is_integral:
        raise ValueError("generators do not lie in the lattice")
    factors = invariant_factors(coords)
    if len(factors) < nk:
        return None
    out = 1
    for f in factors:
        out *= f
    return out

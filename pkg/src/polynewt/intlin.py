"""Exact integer linear algebra: gcd transforms, Smith form, kernels, determinants.

Everything works on plain Python ints (lists of lists), so there is no
overflow and no floating point anywhere.  Matrices are row-major.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def vec_gcd(v) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (0 vector unchanged)."""
    g = vec_gcd(v)
    if g <= 1:
        return list(v)
    return [a // g for a in v]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def bareiss_det(mat) -> int:
    """Fraction-free exact determinant of a square integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(mat) -> int:
    """Rank of an integer matrix, by fraction-free elimination."""
    if not mat:
        return 0
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            if m[i][c]:
                a, b = m[r][c], m[i][c]
                m[i] = [a * m[i][j] - b * m[r][j] for j in range(cols)]
        r += 1
        if r == rows:
            break
    return r


def smith_transform(mat, n: int):
    """Column data of the Smith normal form of `mat` (rows of length n).

    Returns (r, T, Tinv) where r is the rank and T, Tinv are unimodular
    n x n matrices with mat = S.D.T for some row transform S and diagonal D
    whose first r diagonal entries are nonzero.  Consequences used
    throughout:

    * the first r rows of T are a basis of the saturation of the row
      space of `mat` inside Z^n;
    * for v in that saturation, its coordinates are (v . Tinv)[:r];
    * the last n-r coordinates of (v . Tinv) are quotient-lattice
      coordinates for Z^n / (rowspace saturated).
    """
    d = [row[:] for row in mat] if mat else []
    rows = len(d)
    t = identity(n)
    tinv = identity(n)

    def col_op(j1, j2, m2):
        # columns (j1, j2) of d times 2x2 matrix m2; update t, tinv
        (a, b), (c, e) = m2
        for row in d:
            x, y = row[j1], row[j2]
            row[j1], row[j2] = a * x + c * y, b * x + e * y
        # d <- d.R with R acting on columns j1,j2; then t <- Rinv.t, tinv <- tinv.R
        det = a * e - b * c
        assert det in (1, -1)
        ia, ib, ic, ie = e * det, -b * det, -c * det, a * det
        for j in range(n):
            x, y = t[j1][j], t[j2][j]
            t[j1][j], t[j2][j] = ia * x + ib * y, ic * x + ie * y
        for row in tinv:
            x, y = row[j1], row[j2]
            row[j1], row[j2] = a * x + c * y, b * x + e * y

    def row_op(i1, i2, m2):
        (a, b), (c, e) = m2
        r1, r2 = d[i1], d[i2]
        for j in range(n):
            x, y = r1[j], r2[j]
            r1[j], r2[j] = a * x + b * y, c * x + e * y

    k = 0
    limit = min(rows, n)
    while k < limit:
        # find a pivot
        piv = None
        for i in range(k, rows):
            for j in range(k, n):
                if d[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        if i0 != k:
            d[k], d[i0] = d[i0], d[k]
        if j0 != k:
            col_op(k, j0, [[0, 1], [1, 0]])
        # alternate clearing row k and column k until both are clear; plain
        # subtraction when the pivot divides (keeps the pivot row/col fixed),
        # gcd rotation otherwise (strictly shrinks the pivot)
        while True:
            dirty = False
            for i in range(k + 1, rows):
                if d[i][k]:
                    if d[i][k] % d[k][k] == 0:
                        q = d[i][k] // d[k][k]
                        row_op(k, i, [[1, 0], [-q, 1]])
                    else:
                        x, y, g = xgcd(d[k][k], d[i][k])
                        a, b = d[k][k] // g, d[i][k] // g
                        row_op(k, i, [[x, y], [-b, a]])
                        dirty = True
            for j in range(k + 1, n):
                if d[k][j]:
                    if d[k][j] % d[k][k] == 0:
                        q = d[k][j] // d[k][k]
                        col_op(k, j, [[1, -q], [0, 1]])
                    else:
                        x, y, g = xgcd(d[k][k], d[k][j])
                        a, b = d[k][k] // g, d[k][j] // g
                        col_op(k, j, [[x, -b], [y, a]])
                        dirty = True
            if not dirty:
                break
        k += 1

    r = sum(1 for i in range(limit) if d[i][i])
    return r, t, tinv


def row_saturation_basis(mat, n: int):
    """Basis (list of rows) of the saturation of the row lattice of mat in Z^n."""
    r, t, _ = smith_transform(mat, n)
    return [t[i][:] for i in range(r)]


def coords_in_saturation(vectors, mat, n: int):
    """Coordinates of each vector in the saturated row-space basis of mat.

    The vectors must lie in the rational row space; coordinates are integers
    exactly when a vector lies in the saturated lattice.
    """
    r, _, tinv = smith_transform(mat, n)
    out = []
    for v in vectors:
        c = [sum(v[i] * tinv[i][j] for i in range(n)) for j in range(n)]
        assert all(x == 0 for x in c[r:]), "vector outside the row space"
        out.append(c[:r])
    return out


def quotient_coords(vectors, kill, n: int):
    """Images of vectors in Z^n / sat(rowspace(kill)), as integer coordinates."""
    r, _, tinv = smith_transform(kill, n)
    out = []
    for v in vectors:
        c = [sum(v[i] * tinv[i][j] for i in range(n)) for j in range(n)]
        out.append(c[r:])
    return out


def integer_kernel_rows(mat, n: int):
    """Basis rows of {x in Z^n : mat . x = 0} (mat given as rows acting on x)."""
    rows = [list(r) for r in mat] if mat else []
    if not rows:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r, _, tinv = smith_transform(rows, n)
    # mat = S.D.T, so mat.x = 0 iff the first r coordinates of T.x vanish;
    # a kernel basis is columns r..n-1 of Tinv.
    return [[tinv[i][j] for i in range(n)] for j in range(r, n)]


def hyperplane_normal(diffs, n: int):
    """Primitive integer normal of the hyperplane spanned by n-1 difference rows.

    Returns None if the rows do not span a hyperplane.  Computed by cofactor
    expansion (the generalized cross product).
    """
    if len(diffs) != n - 1:
        return None
    if n == 1:
        return [1]
    normal = []
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in diffs]
        c = bareiss_det(minor)
        normal.append(-c if j % 2 else c)
    if all(x == 0 for x in normal):
        return None
    return primitive(normal)


def solve_rational(mat, rhs):
    """One rational solution x of mat . x = rhs, or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [[Fraction(mat[i][j]) for j in range(cols)] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [v / a[r][c] for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [a[i][j] - f * a[r][j] for j in range(cols + 1)]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return x


def in_rational_span(vector, basis_rows) -> bool:
    """Whether vector lies in the rational span of the given rows."""
    if all(v == 0 for v in vector):
        return True
    if not basis_rows:
        return False
    n = len(vector)
    cols = [[row[j] for row in basis_rows] for j in range(n)]
    return solve_rational(cols, list(vector)) is not None

"""Exact integer and rational linear algebra on small matrices.

Everything here works over Python ints and fractions.Fraction; no floats.
Matrices are lists of row-tuples unless noted.  Sizes are tiny (lattice
rank <= 6 or so), so clarity beats asymptotics throughout.
"""

from fractions import Fraction
from math import gcd


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def vec_dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_is_zero(a):
    return all(x == 0 for x in a)


def vec_gcd(a):
    """gcd of the entries, 0 for the zero vector."""
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    return g


def primitive(a):
    """Primitive vector on the same ray (first nonzero entry keeps its sign)."""
    g = vec_gcd(a)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in a)


def mat_mul_vec(m, v):
    return tuple(vec_dot(row, v) for row in m)


def mat_transpose(m):
    return [tuple(col) for col in zip(*m)]


def identity_matrix(n):
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def column_hermite(mat):
    """Column-reduce an integer matrix by unimodular column operations.

    Returns (H, U) with mat @ U == H (as column lists), U unimodular, and
    the nonzero columns of H in column echelon form.  Zero columns of H sit
    at the right, so the corresponding columns of U form a kernel basis.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    # work on columns
    h = [list(col) for col in zip(*mat)] if rows else []
    u = [list(col) for col in zip(*identity_matrix(cols))]
    piv_col = 0
    for r in range(rows):
        if piv_col >= cols:
            break
        # euclidean elimination within row r across columns >= piv_col
        while True:
            nonzero = [c for c in range(piv_col, cols) if h[c][r] != 0]
            if not nonzero:
                break
            c_min = min(nonzero, key=lambda c: abs(h[c][r]))
            if c_min != piv_col:
                h[piv_col], h[c_min] = h[c_min], h[piv_col]
                u[piv_col], u[c_min] = u[c_min], u[piv_col]
            done = True
            for c in range(piv_col, cols):
                if c == piv_col or h[c][r] == 0:
                    continue
                q = h[c][r] // h[piv_col][r]
                h[c] = [x - q * y for x, y in zip(h[c], h[piv_col])]
                u[c] = [x - q * y for x, y in zip(u[c], u[piv_col])]
                if h[c][r] != 0:
                    done = False
            if done:
                break
        if h[piv_col][r] != 0:
            if h[piv_col][r] < 0:
                h[piv_col] = [-x for x in h[piv_col]]
                u[piv_col] = [-x for x in u[piv_col]]
            piv_col += 1
    H = [tuple(h[c][r] for c in range(cols)) for r in range(rows)]
    U = [tuple(u[c][r] for c in range(cols)) for r in range(cols)]
    return H, U, piv_col


def integer_kernel_basis(mat):
    """Basis of the integer kernel {v : mat @ v = 0} of an integer matrix."""
    if not mat or not mat[0]:
        n = len(mat[0]) if mat else 0
        return identity_matrix(n)
    _, U, rank = column_hermite(mat)
    cols = len(mat[0])
    return [tuple(U[r][c] for r in range(cols)) for c in range(rank, cols)]


def image_basis_and_section(mat):
    """Basis of the column lattice of `mat` plus integral preimages.

    Returns (basis, section) where basis[j] is an integer vector in the
    ambient target, the basis[j] generate the image lattice, and
    mat @ section[j] == basis[j].
    """
    _, U, rank = column_hermite(mat)
    cols = len(mat[0]) if mat else 0
    basis = []
    section = []
    for c in range(rank):
        t = tuple(U[r][c] for r in range(cols))
        basis.append(mat_mul_vec(mat, t))
        section.append(t)
    return basis, section


def rational_solve(mat, rhs):
    """One exact solution of mat @ x = rhs over Q, or None if inconsistent.

    mat is a list of rows (ints or Fractions); returns a tuple of Fractions
    including free variables set to 0.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(mat, rhs)]
    piv_of_col = {}
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_of_col[c] = r
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for c, i in piv_of_col.items():
        x[c] = a[i][cols]
    return tuple(x)


def rational_solve_unique(mat, rhs):
    """Solve mat @ x = rhs requiring a unique solution.

    Returns (solution, status) with status one of "unique", "inconsistent",
    "underdetermined".
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(mat, rhs)]
    rank = 0
    for c in range(cols):
        p = next((i for i in range(rank, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        inv = 1 / a[rank][c]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    for i in range(rank, rows):
        if a[i][cols] != 0:
            return None, "inconsistent"
    if rank < cols:
        return None, "underdetermined"
    # after full reduction the leading 1 of row i sits in some column;
    # with rank == cols the pivots are exactly the columns in order
    x = [Fraction(0)] * cols
    piv = 0
    for i in range(rank):
        c = next(j for j in range(cols) if a[i][j] != 0)
        x[c] = a[i][cols]
        piv += 1
    return tuple(x), "unique"


def rational_rank(mat):
    """Rank over Q."""
    rows = [list(map(Fraction, row)) for row in mat]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(cols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def minors_gcd(mat, size):
    """gcd of all size x size minors of an integer matrix."""
    from itertools import combinations

    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if size > rows or size > cols:
        return 0
    g = 0
    for rr in combinations(range(rows), size):
        for cc in combinations(range(cols), size):
            sub = [[mat[i][j] for j in cc] for i in rr]
            g = gcd(g, abs(int_det(sub)))
    return g


def int_det(mat):
    """Determinant of a small integer matrix (fraction-free is overkill here)."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    det = 0
    for j in range(n):
        if mat[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        det += (-1) ** j * mat[0][j] * int_det(minor)
    return det


# -- 2d helpers (used by the rank-2 scattering geometry) --

def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


_NEG_INF = Fraction(-(10 ** 30))


def angle_key(v):
    """Sort key realizing the counterclockwise angle of a nonzero 2d vector.

    Exact: splits the plane into the half-turns [0, pi) and [pi, 2pi); inside
    either half the angle grows with -x/y, which stays a Fraction.
    """
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no angle")
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    if y == 0:
        # angle exactly 0 (half 0) or exactly pi (half 1): first of its half
        return (half, _NEG_INF)
    return (half, Fraction(-x, y))

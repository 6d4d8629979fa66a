"""Dense exact linear algebra over any field scalar (Fraction or QuadExt).

Row reduction uses first-nonzero pivoting; there is no notion of magnitude,
so every result is exact.  Matrices are plain lists of lists and systems at
play are small (at most a few hundred rows), which keeps this simple.
"""

from __future__ import annotations

from fractions import Fraction


def rref(mat):
    """Reduce mat in place to reduced row echelon form; return pivot columns."""
    if not mat:
        return []
    nrows, ncols = len(mat), len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                row, prow = mat[i], mat[r]
                mat[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(mat) -> int:
    return len(rref([row[:] for row in mat]))


def nullspace(mat, ncols=None):
    """Basis of the right kernel, one vector per free column (echelon-canonical)."""
    if ncols is None:
        if not mat:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(mat[0])
    work = [row[:] for row in mat]
    pivots = rref(work)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][free]
        basis.append(vec)
    return basis


def solve_affine(mat, rhs, ncols=None):
    """Solve mat @ x = rhs exactly.

    Returns (particular, nullspace_basis) with the particular solution taking
    all free variables zero, or None if the system is inconsistent.
    """
    nrows = len(mat)
    if nrows == 0:
        if ncols is None:
            raise ValueError("ncols required when the system has no equations")
        ident = [[Fraction(1) if j == i else Fraction(0) for j in range(ncols)]
                 for i in range(ncols)]
        return [Fraction(0)] * ncols, ident
    ncols = len(mat[0])
    aug = [list(mat[i]) + [rhs[i]] for i in range(nrows)]
    pivots = rref(aug)
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    particular = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        particular[pc] = aug[r][ncols]
    plain = [row[:ncols] for row in aug[: len(pivots)]]
    kernel = _nullspace_from_echelon(plain, pivots, ncols)
    return particular, kernel


def _nullspace_from_echelon(work, pivots, ncols):
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][free]
        basis.append(vec)
    return basis


def inv(mat):
    """Exact inverse; raises ValueError if mat is singular."""
    n = len(mat)
    aug = [list(mat[i]) + [Fraction(1) if j == i else Fraction(0) for j in range(n)]
           for i in range(n)]
    pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in aug]


def mat_vec(mat, vec):
    return [sum((row[j] * vec[j] for j in range(len(vec))), Fraction(0)) for row in mat]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = Fraction(0)
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out

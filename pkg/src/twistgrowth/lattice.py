"""Integer lattice algebra: column Hermite normal form, integer solving, coset membership."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def _col_op(a: Matrix, u: Matrix, dst: int, src: int, k: int) -> None:
    """column dst -= k * column src, applied to both a and u."""
    if k == 0:
        return
    for row in a:
        row[dst] -= k * row[src]
    for row in u:
        row[dst] -= k * row[src]


def _col_swap(a: Matrix, u: Matrix, i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in u:
        row[i], row[j] = row[j], row[i]


def _col_neg(a: Matrix, u: Matrix, i: int) -> None:
    for row in a:
        row[i] = -row[i]
    for row in u:
        row[i] = -row[i]


def hermite_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix]:
    """Column-style HNF: returns (H, U) with H = M U, U unimodular.

    The nonzero columns of H come first, are in echelon form with positive
    pivots, and entries left of each pivot are reduced into [0, pivot).
    ``ncols`` is needed only when M has no rows.
    """
    a = [list(map(int, row)) for row in m]
    k = len(a[0]) if a else (ncols or 0)
    u = identity(k)
    c = 0
    for i in range(len(a)):
        if c >= k:
            break
        while True:
            nz = [j for j in range(c, k) if a[i][j] != 0]
            if not nz:
                break
            p = min(nz, key=lambda j: abs(a[i][j]))
            if p != c:
                _col_swap(a, u, p, c)
            done = True
            for j in range(c + 1, k):
                if a[i][j]:
                    _col_op(a, u, j, c, a[i][j] // a[i][c])
                    if a[i][j]:
                        done = False
            if done:
                break
        if a[i][c] == 0:
            continue
        if a[i][c] < 0:
            _col_neg(a, u, c)
        piv = a[i][c]
        for j in range(c):
            _col_op(a, u, j, c, a[i][j] // piv)
        c += 1
    return a, u


def hnf_rank(h: Matrix) -> int:
    if not h:
        return 0
    return sum(1 for j in range(len(h[0])) if any(row[j] for row in h))


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """A basis (HNF columns) of the Z-span of ``vectors`` in Z^dim."""
    if not vectors:
        return []
    m = transpose(vectors)
    h, _ = hermite_normal_form(m)
    r = hnf_rank(h)
    return [[h[i][j] for i in range(dim)] for j in range(r)]


def rank(m: Sequence[Sequence[int]]) -> int:
    if not m or not m[0]:
        return 0
    h, _ = hermite_normal_form(m)
    return hnf_rank(h)


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """Integer solutions of A x = b.

    Returns (x0, kernel) with every solution x0 + kernel-combination, or None
    if there is no integer solution.
    """
    k = len(a[0]) if a else (ncols or 0)
    h, u = hermite_normal_form(a, ncols=k)
    r = hnf_rank(h)
    y = [0] * k
    # pivot rows: first row where each column is nonzero
    c = 0
    for i in range(len(h)):
        acc = b[i] - sum(h[i][j] * y[j] for j in range(c))
        if c < r and h[i][c] != 0:
            if acc % h[i][c]:
                return None
            y[c] = acc // h[i][c]
            c += 1
        elif acc != 0:
            return None
    x0 = matvec(u, y)
    kernel = [[u[i][j] for i in range(k)] for j in range(r, k)]
    return x0, kernel


def solution_lattice(dim: int, eq_rows: Sequence[Sequence[int]], eq_rhs: Sequence[int],
                     cong_rows: Sequence[Sequence[int]] = (), cong_rhs: Sequence[int] = (),
                     moduli: Sequence[int] = ()):
    """x0, L with {x : eq_rows x = eq_rhs, cong_rows x = cong_rhs mod moduli} = x0 + L Z^d.

    L is a list of d independent vectors, or the result is None when there is no solution.
    """
    m = len(cong_rows)
    rows, rhs = [], []
    for u, a in zip(eq_rows, eq_rhs):
        rows.append(list(u) + [0] * m)
        rhs.append(a)
    for i, (u, a, b) in enumerate(zip(cong_rows, cong_rhs, moduli)):
        rows.append(list(u) + [-b if j == i else 0 for j in range(m)])
        rhs.append(a)
    if not rows:
        return [0] * dim, [[int(i == j) for i in range(dim)] for j in range(dim)]
    sol = solve_integer(rows, rhs, ncols=dim + m)
    if sol is None:
        return None
    x0, kernel = sol
    return x0[:dim], lattice_basis([v[:dim] for v in kernel if any(v[:dim])], dim)


def in_lattice_coset(x: Sequence[int], basis: Sequence[Sequence[int]], shift: Sequence[int]) -> bool:
    """True iff x - shift lies in the Z-span of ``basis``."""
    diff = [xi - si for xi, si in zip(x, shift)]
    if not basis:
        return all(d == 0 for d in diff)
    return solve_integer(transpose(basis), diff) is not None


lattice_coset_membership = in_lattice_coset


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse_fraction(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse over Q by Gauss-Jordan; raises on singular input."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def nullspace_vector(rows: Sequence[Sequence[int]], dim: int) -> Vector | None:
    """A primitive integer generator of the kernel when it is 1-dimensional."""
    if not rows:
        return None
    h, u = hermite_normal_form(rows, ncols=dim)
    r = hnf_rank(h)
    if dim - r != 1:
        return None
    v = [u[i][r] for i in range(dim)]
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else v


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else list(v)

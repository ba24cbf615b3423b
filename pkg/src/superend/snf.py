"""Smith normal form over Z with explicit unimodular transforms."""

from __future__ import annotations

Matrix = list[list[int]]

__all__ = ["smith_normal_form", "identity", "matmul", "determinant", "invariant_factors"]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def determinant(a: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, S, V) with U * a * V == S, U and V unimodular.

    S is diagonal with nonnegative entries d_1 | d_2 | ... (zeros last).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    s = [list(map(int, r)) for r in a]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for m in (s, v):
            for r in m:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        for m in (s, u):
            m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]

    def add_col(dst, src, k):
        for m in (s, v):
            for r in m:
                r[dst] += k * r[src]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    def quotient(x, y):
        # nearest-integer quotient keeps remainders within |y|/2
        k, r = divmod(x, y)
        if 2 * abs(r) > abs(y):
            k += 1 if (r > 0) == (y > 0) else -1
        return k

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(s[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if s[i][j]]
            if not nonzero:
                return _finish(u, s, v)
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = s[t][t]
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(i, t, -quotient(s[i][t], piv))
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(j, t, -quotient(s[t][j], piv))
            if any(s[i][t] for i in range(t + 1, rows)) or any(s[t][j] for j in range(t + 1, cols)):
                continue
            # pivot must divide the remaining block
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            negate_row(t)
    return u, s, v


def _finish(u, s, v):
    for t in range(min(len(s), len(s[0]) if s else 0)):
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return u, s, v


def invariant_factors(a: Matrix) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    _, s, _ = smith_normal_form(a)
    return [s[k][k] for k in range(min(len(s), len(s[0]) if s else 0)) if s[k][k]]

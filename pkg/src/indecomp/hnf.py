"""Canonical lower-triangular Hermite normal form of full-rank integer row lattices."""

from __future__ import annotations


def _upper_hnf(rows: list[list[int]]) -> list[list[int]]:
    m = [list(r) for r in rows]
    n = len(m)
    for j in range(n):
        while True:
            nz = [i for i in range(j, n) if m[i][j] != 0]
            if not nz:
                raise ValueError("matrix is singular")
            pivot = min(nz, key=lambda i: abs(m[i][j]))
            m[j], m[pivot] = m[pivot], m[j]
            done = True
            for i in range(j + 1, n):
                if m[i][j] != 0:
                    q = m[i][j] // m[j][j]
                    m[i] = [m[i][k] - q * m[j][k] for k in range(n)]
                    if m[i][j] != 0:
                        done = False
            if done:
                break
        if m[j][j] < 0:
            m[j] = [-x for x in m[j]]
        for i in range(j):
            q = m[i][j] // m[j][j]
            m[i] = [m[i][k] - q * m[j][k] for k in range(n)]
    return m


def row_hnf_lower(rows) -> tuple[tuple[int, ...], ...]:
    """Unique lower-triangular HNF basis of the row lattice (full rank required).

    Diagonal entries are positive and every entry below the diagonal is
    reduced into [0, diagonal of its column).
    """
    n = len(rows)
    reversed_cols = [[row[n - 1 - j] for j in range(n)] for row in rows]
    upper = _upper_hnf(reversed_cols)
    return tuple(
        tuple(upper[n - 1 - i][n - 1 - j] for j in range(n)) for i in range(n)
    )


def hnf_det(h) -> int:
    d = 1
    for i in range(len(h)):
        d *= h[i][i]
    return d

"""Exact integer matrix utilities: Smith normal form and determinants.

Everything works on lists of lists of Python ints, so there is no overflow;
matrices in this package stay small (a few dozen rows) and these routines are
deliberately simple rather than asymptotically clever.
"""

from __future__ import annotations


def copy_matrix(m) -> list[list[int]]:
    return [list(row) for row in m]


def determinant(m) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = copy_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            a[i][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m) -> list[int]:
    """Determinants of the k x k top-left submatrices, k = 1..n."""
    n = len(m)
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, n + 1)]


def smith_diagonal(m) -> list[int]:
    """Diagonal of the Smith normal form: nonnegative d_1 | d_2 | ... .

    Pivots are chosen as the smallest nonzero absolute value in the remaining
    block, scanned row-major, so intermediate states are deterministic.
    The returned list has length min(rows, cols) and includes trailing zeros.
    """
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    diag = []
    t = 0
    while t < min(rows, cols):
        # locate pivot
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    # remainder smaller than the pivot: swap it up and retry
                    a[t], a[i] = a[i], a[t]
                    if a[t][t] < 0:
                        a[t] = [-x for x in a[t]]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    if a[t][t] < 0:
                        a[t] = [-x for x in a[t]]
                    dirty = True
                    break
            if dirty:
                continue
            # pivot must divide the remaining block for the divisibility chain
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        diag.append(a[t][t])
        t += 1
    diag.extend([0] * (min(rows, cols) - len(diag)))
    return diag


def invariant_factors(m) -> list[int]:
    """Smith diagonal entries that are neither 0 nor 1."""
    return [d for d in smith_diagonal(m) if d not in (0, 1)]

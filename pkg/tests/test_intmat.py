import math
import random
from itertools import combinations, permutations

from sfs4.intmat import determinant, invariant_factors, leading_principal_minors, smith_diagonal


def brute_determinant(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        # count inversions for the sign
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def determinantal_divisors(m):
    """gcd of all k x k minors, k = 1..min(rows, cols); 0 when all vanish."""
    rows, cols = len(m), len(m[0])
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rsel in combinations(range(rows), k):
            for csel in combinations(range(cols), k):
                sub = [[m[i][j] for j in csel] for i in rsel]
                g = math.gcd(g, brute_determinant(sub))
        out.append(g)
    return out


def test_determinant_matches_permanent_expansion():
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == brute_determinant(m), m


def test_smith_diagonal_matches_determinantal_divisors():
    rng = random.Random(9)
    for _ in range(80):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        diag = smith_diagonal(m)
        ds = determinantal_divisors(m)
        prev = 1
        for k, dk in enumerate(ds):
            if dk == 0:
                assert all(d == 0 for d in diag[k:]), (m, diag, ds)
                break
            assert diag[k] == dk // prev, (m, diag, ds)
            prev = dk
        for a, b in zip(diag, diag[1:]):
            if b != 0:
                assert a != 0 and b % a == 0


def test_invariant_factors_drop_units_and_zeros():
    assert invariant_factors([[1, 0], [0, 6]]) == [6]
    assert invariant_factors([[0, 0], [0, 0]]) == []


def test_leading_principal_minors():
    m = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert leading_principal_minors(m) == [2, 3, 4]

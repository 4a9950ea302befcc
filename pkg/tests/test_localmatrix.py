import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dvrpart.errors import DomainError, PrecisionError
from dvrpart.oracle import LocalMatrix, local_snf, span_logorder, valuation


def determinantal_valuations(rows, p, K):
    """Smith valuations from minimal valuations of k x k minors (integer lift)."""
    nr, nc = len(rows), len(rows[0])
    M = sympy.Matrix(rows)
    deltas = [0]
    for k in range(1, min(nr, nc) + 1):
        best = None
        for ri in itertools.combinations(range(nr), k):
            for ci in itertools.combinations(range(nc), k):
                minor = int(M.extract(list(ri), list(ci)).det())
                if minor:
                    v = sympy.multiplicity(p, minor)
                    best = v if best is None else min(best, v)
        if best is None:
            deltas.extend([None] * (min(nr, nc) - k + 1))
            break
        deltas.append(best)
    out = []
    for k in range(1, len(deltas)):
        if deltas[k] is None:
            out.append(K)
        else:
            out.append(min(deltas[k] - deltas[k - 1], K))
    return out


def brute_span_size(rows, p, K):
    mod = p ** K
    cols = list(zip(*rows))
    seen = set()
    for coeffs in itertools.product(range(mod), repeat=len(cols)):
        vec = tuple(sum(c * col[i] for c, col in zip(coeffs, cols)) % mod
                    for i in range(len(rows)))
        seen.add(vec)
    return len(seen)


@st.composite
def local_matrices(draw, max_dim=4):
    p = draw(st.sampled_from([2, 3, 5]))
    K = draw(st.integers(1, 4))
    nr = draw(st.integers(1, max_dim))
    nc = draw(st.integers(1, max_dim))
    # bias entries towards multiples of p so non-trivial valuations show up
    entry = st.tuples(st.integers(0, p ** K - 1), st.integers(0, K)).map(
        lambda t: (t[0] * p ** t[1]) % p ** K)
    rows = draw(st.lists(st.lists(entry, min_size=nc, max_size=nc), min_size=nr, max_size=nr))
    return LocalMatrix.from_rows(rows, p, K, nc)


def random_unimodular(n, p, K, rng):
    U = LocalMatrix.identity(n, p, K)
    mod = p ** K
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        E = [[int(a == b) for b in range(n)] for a in range(n)]
        if i != j:
            E[i][j] = rng.randrange(mod)
        else:
            E[i][i] = rng.choice([u for u in range(1, mod) if u % p])
        U = LocalMatrix.from_rows(E, p, K, n) @ U
    # a random unit scaling and a permutation
    perm = list(range(n))
    rng.shuffle(perm)
    P = LocalMatrix.from_rows([[int(perm[a] == b) for b in range(n)] for a in range(n)], p, K, n)
    return P @ U


class TestValuation:
    def test_basic(self):
        assert valuation(0, 3, 4) == 4
        assert valuation(81, 3, 4) == 4
        assert valuation(18, 3, 4) == 2
        assert valuation(7, 3, 4) == 0


class TestSNF:
    def test_examples(self):
        p = 3
        assert local_snf(LocalMatrix.from_rows([[p, 0], [0, 1]], p, 2)) == [0, 1]
        assert local_snf(LocalMatrix.from_rows([[0, p], [p, 0]], p, 3)) == [1, 1]
        assert local_snf(LocalMatrix.from_rows([[p, p], [p, p]], p, 3)) == [1, 3]

    def test_zero_and_empty(self):
        assert local_snf(LocalMatrix.zeros(2, 3, 2, 3)) == [3, 3]
        assert local_snf(LocalMatrix.from_rows([], 2, 3, 0)) == []

    @settings(max_examples=150, deadline=None)
    @given(local_matrices(max_dim=3))
    def test_determinantal_divisors(self, A):
        got = local_snf(A)
        assert got == sorted(got)
        assert got == determinantal_valuations(A.rows(), A.p, A.K)

    @settings(max_examples=80, deadline=None)
    @given(local_matrices(), st.integers(0, 2 ** 32))
    def test_unimodular_invariance(self, A, seed):
        rng = random.Random(seed)
        U = random_unimodular(A.nrows, A.p, A.K, rng)
        V = random_unimodular(A.ncols, A.p, A.K, rng)
        assert local_snf(U @ A @ V) == local_snf(A)


class TestSpan:
    def test_examples(self):
        assert span_logorder(4, LocalMatrix.identity(4, 3, 5)) == 20
        assert span_logorder(3, LocalMatrix.zeros(3, 2, 3, 5)) == 0
        assert span_logorder(2, LocalMatrix.from_rows([[2], [0]], 2, 2)) == 1

    def test_row_count_checked(self):
        with pytest.raises(DomainError):
            span_logorder(3, LocalMatrix.identity(2, 2, 2))

    @pytest.mark.parametrize("seed", range(12))
    def test_brute_force(self, seed):
        rng = random.Random(seed)
        p, K = rng.choice([(2, 2), (3, 1), (2, 3)])
        nr, nc = rng.randint(1, 3), rng.randint(1, 3)
        rows = [[rng.randrange(p ** K) * rng.choice([1, p]) for _ in range(nc)] for _ in range(nr)]
        A = LocalMatrix.from_rows(rows, p, K, nc)
        assert p ** span_logorder(nr, A) == brute_span_size(A.rows(), p, K)


class TestMatrixOps:
    def test_matmul_and_power(self):
        A = LocalMatrix.from_rows([[0, 1], [1, 1]], 2, 5)
        assert (A ** 10).entries[0][1] == 55 % 32
        assert A ** 0 == LocalMatrix.identity(2, 2, 5)

    def test_block_diag_and_kron(self):
        a = LocalMatrix.from_rows([[1, 2], [3, 4]], 5, 2)
        b = LocalMatrix.from_rows([[7]], 5, 2)
        bd = LocalMatrix.block_diag([a, b], 5, 2)
        assert bd.entries == ((1, 2, 0), (3, 4, 0), (0, 0, 7))
        k = LocalMatrix.identity(2, 5, 2).kron(b)
        assert k.entries == ((7, 0), (0, 7))

    def test_mismatches(self):
        a = LocalMatrix.identity(2, 3, 2)
        with pytest.raises(DomainError):
            a @ LocalMatrix.identity(3, 3, 2)
        with pytest.raises(DomainError):
            a @ LocalMatrix.identity(2, 5, 2)
        with pytest.raises(PrecisionError):
            a.reduce(3)
        with pytest.raises(PrecisionError):
            LocalMatrix.identity(2, 3, 0)

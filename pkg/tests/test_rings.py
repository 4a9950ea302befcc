import itertools

import pytest
import sympy
from sympy.abc import x

from dvrpart.errors import DomainError, PrecisionError
from dvrpart.oracle import (
    LocalMatrix,
    build_ring,
    check_eisenstein,
    cyclotomic_eisenstein,
    find_irreducible,
    is_irreducible_mod_p,
)


def sympy_shifted_cyclotomic(p, m):
    poly = sympy.Poly(sympy.cyclotomic_poly(p ** m, x).subs(x, x + 1), x)
    return [int(c) for c in reversed(poly.all_coeffs())]


class TestCyclotomic:
    def test_examples(self):
        assert cyclotomic_eisenstein(3, 1) == [3, 3, 1]
        assert cyclotomic_eisenstein(2, 1) == [2, 1]
        assert cyclotomic_eisenstein(3, 2) == [3, 9, 18, 21, 15, 6, 1]

    @pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (11, 1)])
    def test_against_sympy(self, p, m):
        coeffs = cyclotomic_eisenstein(p, m)
        assert coeffs == sympy_shifted_cyclotomic(p, m)
        assert len(coeffs) - 1 == (p - 1) * p ** (m - 1)
        assert check_eisenstein(coeffs, p, 3)

    @pytest.mark.parametrize("p", [1, 4, 15])
    def test_not_prime(self, p):
        with pytest.raises(DomainError):
            cyclotomic_eisenstein(p, 1)


class TestEisenstein:
    def test_examples(self):
        assert check_eisenstein([3, 3, 1], 3)
        assert not check_eisenstein([1, 0, 1], 3)
        assert not check_eisenstein([9, 0, 1], 3)

    def test_reads_coefficients_mod_pk(self):
        # X^2 + 3X + 12: constant 12 = 3 * 4 is fine mod 27 ...
        assert check_eisenstein([12, 3, 1], 3, 3)
        # ... but X^2 + 3X + 30 has 30 = 3 (mod 27)
        assert check_eisenstein([30, 3, 1], 3, 3)
        assert not check_eisenstein([27 + 9, 3, 1], 3, 3)

    def test_precision(self):
        with pytest.raises(PrecisionError):
            check_eisenstein([3, 3, 1], 3, 1)

    def test_shape(self):
        with pytest.raises(DomainError):
            check_eisenstein([3], 3)
        with pytest.raises(DomainError):
            check_eisenstein([3, 3, 2], 3)


class TestIrreducible:
    @pytest.mark.parametrize("p,max_deg", [(2, 4), (3, 4), (5, 3)])
    def test_against_sympy(self, p, max_deg):
        for deg in range(1, max_deg + 1):
            for low in itertools.product(range(p), repeat=deg):
                coeffs = list(low) + [1]
                expected = sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible
                assert is_irreducible_mod_p(coeffs, p) == expected, coeffs

    def test_find(self):
        assert find_irreducible(5, 2) == [2, 0, 1]
        assert find_irreducible(2, 2) == [1, 1, 1]
        assert find_irreducible(3, 1) == [0, 1]
        for p in (2, 3, 5):
            for d in (2, 3, 4):
                assert is_irreducible_mod_p(find_irreducible(p, d), p)


class TestBuildRing:
    def test_cyclotomic(self):
        ring = build_ring(3, 4, m=1)
        assert (ring.e, ring.d, ring.rank) == (2, 1, 2)
        assert ring.pi_matrix == LocalMatrix.from_rows([[0, -3], [1, -3]], 3, 4)

    def test_power_minus_p_over_galois_ring(self):
        ring = build_ring(5, 3, d=2, e=3)
        assert ring.rank == 6
        assert ring.eisenstein_poly == (-5, 0, 0, 1)
        assert ring.base_poly == (2, 0, 1)
        pi3 = ring.pi_matrix ** 3
        assert pi3 == ring.identity().scale(5)

    def test_trivial_extension(self):
        ring = build_ring(2, 3, e=1, poly=[-2, 1])
        assert ring.pi_matrix.entries == ((2,),)

    @pytest.mark.parametrize("kwargs", [
        dict(p=3, K=4, m=1),
        dict(p=3, K=3, m=2),
        dict(p=2, K=4, m=3),
        dict(p=5, K=3, d=2, e=3),
        dict(p=3, K=5, d=3, e=2),
        dict(p=2, K=3, d=4, e=2),
        dict(p=7, K=2, poly=[7, 14, 0, 1]),
    ])
    def test_validated(self, kwargs):
        ring = build_ring(**kwargs)
        ring.validate()
        assert ring.rank == ring.e * ring.d

    def test_rejects(self):
        with pytest.raises(DomainError):
            build_ring(3, 4, poly=[1, 0, 1])
        with pytest.raises(DomainError):
            build_ring(3, 4, poly=[9, 3, 1])
        with pytest.raises(DomainError):
            build_ring(3, 4, m=1, d=2)
        with pytest.raises(DomainError):
            build_ring(3, 4, m=1, e=3)
        with pytest.raises(DomainError):
            build_ring(4, 4, e=2)
        with pytest.raises(DomainError):
            build_ring(3, 4)
        with pytest.raises(DomainError):
            build_ring(2, 3, d=9, e=8)
        with pytest.raises(PrecisionError):
            build_ring(3, 1, e=2)

    def test_validate_catches_corruption(self):
        ring = build_ring(3, 4, e=2)
        broken = type(ring)(ring.p, ring.K, ring.d, ring.e, ring.base_poly,
                            (-3, 1, 1), ring.pi_matrix, ring.y_matrix)
        with pytest.raises(DomainError):
            broken.validate()

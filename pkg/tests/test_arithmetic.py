import pytest
from sympy import factorint, isprime
from sympy.ntheory import jacobi_symbol

from arithmetic.maps import CrtIso, ProjectionMap, natural_map, project_sequence
from arithmetic.jacobi import jacobi
from arithmetic.modulus import factorize
from utils.errors import ModulusError, ProjectionError


class TestFactorize:
    """Factorization of odd moduli"""

    def test_squarefree_two_primes(self):
        m = factorize(77)
        assert m.factors == ((7, 1), (11, 1))
        assert m.omega == 2
        assert m.squarefree is True

    def test_prime_power_factor(self):
        m = factorize(63)
        assert m.factors == ((3, 2), (7, 1))
        assert m.omega == 2
        assert m.big_omega == 3
        assert m.squarefree is False

    def test_three_primes(self, mod1001):
        assert mod1001.factors == ((7, 1), (11, 1), (13, 1))
        assert mod1001.omega == 3
        assert mod1001.big_omega == 3

    @pytest.mark.parametrize("n", [1, 0, -7, 2, 4, 100])
    def test_rejects_even_or_small(self, n):
        with pytest.raises(ModulusError, match="odd and ≥ 3"):
            factorize(n)

    def test_rejects_non_integer(self):
        with pytest.raises(ModulusError):
            factorize("77")

    def test_ceiling(self):
        with pytest.raises(ModulusError, match="ceiling"):
            factorize(1003, ceiling=1001)

    def test_matches_sympy(self):
        for n in range(3, 2000, 2):
            m = factorize(n)
            assert dict(m.factors) == factorint(n)
            assert m.is_prime == isprime(n)
            assert m.big_omega == sum(factorint(n).values())

    def test_divisor_modulus(self, mod1001):
        sub = mod1001.divisor(91)
        assert sub.n == 91
        assert sub.factors == ((7, 1), (13, 1))
        assert mod1001.divisor(1).n == 1
        with pytest.raises(ModulusError):
            mod1001.divisor(5)

    def test_derived_quantities(self):
        m = factorize(45)
        assert m.phi == 24
        assert m.valuation(3) == 2
        assert m.valuation(7) == 0
        assert m.divisors() == [1, 3, 5, 9, 15, 45]
        assert factorize(225).is_perfect_square
        assert not m.is_perfect_square


class TestJacobi:
    """Jacobi symbol against sympy"""

    def test_examples(self):
        assert jacobi(7, 77) == 0
        assert jacobi(2, 7) == 1
        for n in (3, 9, 77, 1001):
            assert jacobi(1, n) == 1

    def test_matches_sympy(self):
        for n in range(3, 200, 2):
            for x in range(n):
                assert jacobi(x, n) == jacobi_symbol(x, n), (x, n)

    def test_accepts_modulus_object(self, mod77):
        assert jacobi(3, mod77) == jacobi_symbol(3, 77)

    def test_multiplicative_in_top_argument(self, mod77):
        for a in range(1, 77):
            for b in (2, 5, 13):
                assert jacobi(a * b, 77) == jacobi(a, 77) * jacobi(b, 77)

    def test_even_modulus_rejected(self):
        with pytest.raises(ModulusError):
            jacobi(3, 8)


class TestProjection:
    """Natural maps f_{n|m}"""

    def test_natural_map(self, mod77):
        pm = ProjectionMap.to(mod77, 7)
        assert natural_map(12, pm) == 5
        assert natural_map(0, pm) == 0

    def test_out_of_range(self, mod77):
        pm = ProjectionMap.to(mod77, 7)
        with pytest.raises(ProjectionError):
            natural_map(78, pm)

    def test_non_divisor(self, mod77):
        with pytest.raises(ProjectionError):
            ProjectionMap.to(mod77, 5)

    def test_project_sequence(self, mod77):
        assert project_sequence((12, 0, 76), ProjectionMap.to(mod77, 7)) == (5, 0, 6)
        assert project_sequence((), ProjectionMap.to(mod77, 7)) == ()
        assert project_sequence((11, 22), ProjectionMap.to(mod77, 11)) == (0, 0)

    def test_homomorphism(self, mod1001):
        pm = ProjectionMap.to(mod1001, 91)
        for x in range(0, 1001, 37):
            for y in range(0, 1001, 53):
                assert natural_map((x + y) % 1001, pm) == (natural_map(x, pm) + natural_map(y, pm)) % 91
                assert natural_map(x * y % 1001, pm) == natural_map(x, pm) * natural_map(y, pm) % 91


class TestCrt:
    """Chinese remainder isomorphism"""

    def test_identity_and_zero(self, mod77):
        iso = CrtIso(mod77, 7, 11)
        assert iso.split(1) == (1, 1)
        assert iso.combine(0, 0) == 0

    def test_combine_matches_scan(self, mod77):
        iso = CrtIso(mod77, 7, 11)
        x = iso.combine(3, 5)
        assert x == next(y for y in range(77) if y % 7 == 3 and y % 11 == 5)
        assert iso.split(x) == (3, 5)

    def test_bijection(self, mod1001):
        iso = CrtIso.split_off(mod1001, 13)
        images = {iso.split(x) for x in range(1001)}
        assert len(images) == 1001
        for x in range(0, 1001, 7):
            assert iso.combine(*iso.split(x)) == x

    def test_not_coprime(self):
        with pytest.raises(ModulusError):
            CrtIso(factorize(63), 3, 21)

    def test_wrong_product(self, mod77):
        with pytest.raises(ModulusError):
            CrtIso(mod77, 7, 13)

import pytest
from sympy.ntheory import jacobi_symbol

from arithmetic.modulus import factorize
from utils.errors import WeightSetError
from weights.orbits import canonicalize_term, orbit_table
from weights.weight_sets import (
    WeightKind, build_weight_set, custom_weights, l_weights, product_preimage, s_weights,
    subgroup_weights, unit_squares, units,
)


class TestConstructors:
    """U(n), Q_p, S(n), L(n;p) and custom sets"""

    def test_units(self, mod7, mod77):
        assert units(mod7).elements == (1, 2, 3, 4, 5, 6)
        assert units(mod77).size == 60

    def test_unit_squares(self, mod7):
        assert unit_squares(mod7).elements == (1, 2, 4)
        assert unit_squares(factorize(11)).elements == (1, 3, 4, 5, 9)

    def test_s_of_prime_is_q(self, mod7):
        assert s_weights(mod7).members == unit_squares(mod7).members

    def test_s_index_two(self, mod77):
        s = s_weights(mod77)
        assert s.size == 30
        assert all(jacobi_symbol(x, 77) == 1 for x in s.elements)

    def test_s_of_square_is_units(self):
        m = factorize(9)
        assert s_weights(m).members == units(m).members
        assert s_weights(m).size == 6

    def test_l_weights(self, mod77):
        lw = l_weights(mod77, 7)
        assert lw.size == 30
        assert lw.parameter == 7
        assert lw.label == "L:7"
        for a in lw.elements:
            assert jacobi_symbol(a, 77) == jacobi_symbol(a, 7)

    def test_l_unique_odd_exponent_prime(self):
        m = factorize(63)
        assert l_weights(m, 7).members == units(m).members

    def test_l_of_prime(self):
        m = factorize(13)
        assert l_weights(m, 13).members == units(m).members

    def test_l_rejects_non_divisor(self, mod77):
        with pytest.raises(WeightSetError, match="not a prime divisor"):
            l_weights(mod77, 13)

    def test_custom(self, mod7):
        w = custom_weights(mod7, [3, 1])
        assert w.elements == (1, 3)
        assert w.kind is WeightKind.CUSTOM
        assert w.label == "custom:1,3"
        with pytest.raises(WeightSetError):
            custom_weights(mod7, [])
        with pytest.raises(WeightSetError):
            custom_weights(mod7, [7])

    def test_build_weight_set(self, mod77):
        assert build_weight_set(mod77, WeightKind.S).members == s_weights(mod77).members
        assert build_weight_set(mod77, WeightKind.L, 11).parameter == 11
        with pytest.raises(WeightSetError):
            build_weight_set(mod77, WeightKind.L)


class TestGroupStructure:
    """Closure checks, generators, images"""

    @pytest.mark.parametrize("n", [7, 9, 15, 45, 77, 1001])
    def test_named_kinds_are_groups(self, n):
        m = factorize(n)
        assert units(m).is_group
        assert unit_squares(m).is_group
        assert s_weights(m).is_group
        for p in m.primes:
            assert l_weights(m, p).is_group

    def test_non_group(self, mod7):
        assert not custom_weights(mod7, [1, 3]).is_group
        assert not custom_weights(mod7, [0, 1]).is_group
        with pytest.raises(WeightSetError):
            _ = custom_weights(mod7, [1, 3]).generators

    def test_generators_span(self, mod1001):
        s = s_weights(mod1001)
        assert subgroup_weights(mod1001, s.generators).members == s.members

    def test_contains_zero(self, mod7):
        assert custom_weights(mod7, [0, 2]).contains_zero
        assert not units(mod7).contains_zero

    def test_image_of_s_onto_units(self, mod77):
        assert s_weights(mod77).image(11) == frozenset(units(factorize(11)).elements)

    def test_product_preimage(self, mod77):
        q7, q11 = unit_squares(factorize(7)).elements, unit_squares(factorize(11)).elements
        w = product_preimage(mod77, 7, q7, q11)
        assert w.size == 15
        assert all(x % 7 in q7 and x % 11 in q11 for x in w.elements)
        assert w.is_subset_of(s_weights(mod77))

    def test_translates(self, mod7):
        assert unit_squares(mod7).translates(3) == frozenset({3, 6, 5})
        assert unit_squares(mod7).translates(0) == frozenset({0})


class TestOrbits:
    """Orbit tables for group weight sets"""

    def test_q7_orbits(self, mod7):
        table = orbit_table(unit_squares(mod7))
        assert table.representatives == (0, 1, 3)
        assert table.orbit_size(5) == 3
        assert canonicalize_term(6, table) == 3

    def test_orbits_partition(self, mod77):
        table = orbit_table(s_weights(mod77))
        assert sum(table.orbit_sizes.values()) == 77
        assert table.nonzero_representatives[0] == 1
        for x in range(77):
            assert table.representative[x] == min(table.orbit(x))

    def test_non_group_rejected(self, mod7):
        with pytest.raises(WeightSetError, match="requires a group weight set"):
            orbit_table(custom_weights(mod7, [1, 3]))

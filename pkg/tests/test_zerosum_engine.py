import random
from itertools import combinations

import pytest

from arithmetic.modulus import factorize
from engine.extender import creates_zero, empty_state, incremental_extender
from engine.sequence import Sequence, ZeroSumMode
from engine.zerosum import (
    has_zero_consecutive, has_zero_subsequence, has_zero_sum, is_weighted_zero_sum_sequence,
    terms_have_zero_sum, translate_table, weighted_translates,
)
from weights.weight_sets import custom_weights, l_weights, s_weights, subgroup_weights, unit_squares, units


def _sums(terms, weights, n):
    """Every weighted sum of the given terms, each term weighted once"""
    sums = {0}
    for x in terms:
        sums = {(s + a * x) % n for s in sums for a in weights}
    return sums


def naive_subsequence(terms, weights, n):
    for k in range(1, len(terms) + 1):
        for idx in combinations(range(len(terms)), k):
            if 0 in _sums([terms[i] for i in idx], weights, n):
                return True
    return False


def naive_consecutive(terms, weights, n):
    for i in range(len(terms)):
        for j in range(i + 1, len(terms) + 1):
            if 0 in _sums(terms[i:j], weights, n):
                return True
    return False


class TestWeightedTranslates:

    def test_q7_translates(self, mod7):
        assert weighted_translates(unit_squares(mod7), 3).members == (3, 5, 6)

    def test_zero(self, mod77):
        assert weighted_translates(s_weights(mod77), 0).members == (0,)

    def test_units_of_unit(self, mod77):
        assert weighted_translates(units(mod77), 5).members == units(mod77).elements


class TestZeroSubsequence:
    """D-mode decisions"""

    def test_zero_term(self, mod7):
        assert has_zero_subsequence(Sequence(mod7, (3, 0)), unit_squares(mod7))

    def test_q7_pair_free(self, mod7):
        assert not has_zero_subsequence(Sequence(mod7, (1, 4)), unit_squares(mod7))

    def test_opposite_pair(self, mod77):
        for x in (1, 12, 40):
            for w in (units(mod77), s_weights(mod77), l_weights(mod77, 7)):
                assert has_zero_subsequence(Sequence(mod77, (x, 77 - x)), w)

    def test_empty_sequence(self, mod7):
        assert not has_zero_subsequence(Sequence(mod7, ()), unit_squares(mod7))

    def test_witness_verifies(self, mod77):
        seq = Sequence(mod77, (3, 14, 22, 5))
        w = s_weights(mod77)
        check = has_zero_subsequence(seq, w, want_witness=True)
        assert check.found == naive_subsequence(seq.terms, w.elements, 77)
        if check.found:
            assert check.witness.verify(seq, w.elements)


class TestZeroConsecutive:
    """C-mode decisions"""

    def test_zero_term(self, mod7):
        assert has_zero_consecutive(Sequence(mod7, (1, 0, 1)), unit_squares(mod7))

    def test_q7_length_three_has_window(self, mod7):
        # C_{Q_7} = 3: 1·1 + 1·4 + 2·1 = 7
        seq = Sequence(mod7, (1, 4, 1))
        q = unit_squares(mod7)
        check = has_zero_consecutive(seq, q, want_witness=True)
        assert check.found
        assert naive_consecutive(seq.terms, q.elements, 7)
        indices, weights = check.witness.indices, check.witness.weights
        assert list(indices) == list(range(indices[0], indices[-1] + 1))
        assert all(a in q for a in weights)
        assert sum(a * seq.terms[i] for i, a in zip(indices, weights)) % 7 == 0

    def test_q7_pair_window_free(self, mod7):
        assert not has_zero_consecutive(Sequence(mod7, (1, 4)), unit_squares(mod7))

    def test_trivial_weights(self, mod7):
        one = custom_weights(mod7, [1])
        assert not has_zero_consecutive(Sequence(mod7, (1, 3, 1)), one)
        assert has_zero_consecutive(Sequence(mod7, (1, 6)), one)

    def test_witness_is_window(self, mod7):
        seq = Sequence(mod7, (2, 1, 6, 3))
        check = has_zero_consecutive(seq, custom_weights(mod7, [1]), want_witness=True)
        assert check.found
        indices = check.witness.indices
        assert list(indices) == list(range(indices[0], indices[-1] + 1))
        assert check.witness.verify(seq, [1])

    def test_d_implies_from_c(self, mod77):
        rng = random.Random(5)
        w = s_weights(mod77)
        for _ in range(200):
            seq = Sequence(mod77, tuple(rng.randrange(77) for _ in range(rng.randint(1, 4))))
            if has_zero_consecutive(seq, w):
                assert has_zero_subsequence(seq, w)


class TestWholeSequence:
    """Every term weighted"""

    def test_pair(self, mod7):
        assert is_weighted_zero_sum_sequence(Sequence(mod7, (1, 6)), units(mod7))
        assert not is_weighted_zero_sum_sequence(Sequence(mod7, (1, 4)), unit_squares(mod7))

    def test_single_zero(self, mod7):
        assert is_weighted_zero_sum_sequence(Sequence(mod7, (0,)), unit_squares(mod7))
        assert not is_weighted_zero_sum_sequence(Sequence(mod7, (2,)), unit_squares(mod7))

    def test_empty(self, mod7):
        assert not is_weighted_zero_sum_sequence(Sequence(mod7, ()), units(mod7))

    def test_matches_naive(self, mod77):
        rng = random.Random(11)
        w = l_weights(mod77, 11)
        for _ in range(150):
            terms = tuple(rng.randrange(77) for _ in range(rng.randint(1, 4)))
            assert is_weighted_zero_sum_sequence(Sequence(mod77, terms), w) == (0 in _sums(terms, w.elements, 77))


class TestOracleEquivalence:
    """DP decisions against enumeration of weight assignments on random instances"""

    def test_random_triples(self):
        rng = random.Random(20240117)
        moduli = [n for n in range(3, 46, 2)]
        disagreements = []
        for _ in range(200):
            m = factorize(rng.choice(moduli))
            unit_list = units(m).elements
            gens = [rng.choice(unit_list) for _ in range(rng.randint(0, 2))]
            w = subgroup_weights(m, gens)
            terms = tuple(rng.randrange(m.n) for _ in range(rng.randint(1, 5)))
            seq = Sequence(m, terms)
            if bool(has_zero_subsequence(seq, w)) != naive_subsequence(terms, w.elements, m.n):
                disagreements.append(("D", m.n, w.elements, terms))
            if bool(has_zero_consecutive(seq, w)) != naive_consecutive(terms, w.elements, m.n):
                disagreements.append(("C", m.n, w.elements, terms))
        assert disagreements == []

    @pytest.mark.parametrize("mode", [ZeroSumMode.D, ZeroSumMode.C])
    def test_fast_path_agrees(self, mod77, mode):
        rng = random.Random(3)
        w = s_weights(mod77)
        table = translate_table(w)
        for _ in range(200):
            terms = tuple(rng.randrange(77) for _ in range(rng.randint(1, 5)))
            assert terms_have_zero_sum(terms, table, mode) == bool(has_zero_sum(Sequence(mod77, terms), w, mode))


class TestExtender:
    """Incremental state matches the one-shot decision on every prefix"""

    @pytest.mark.parametrize("mode", [ZeroSumMode.D, ZeroSumMode.C])
    def test_prefixes(self, mod77, mode):
        rng = random.Random(17)
        w = l_weights(mod77, 7)
        table = translate_table(w)
        for _ in range(100):
            terms = [rng.randrange(1, 77) for _ in range(5)]
            state = empty_state(mode)
            for i, x in enumerate(terms):
                new_zero = creates_zero(state, x, table)
                state = incremental_extender(state, x, table)
                assert state.length == i + 1
                assert state.zero == terms_have_zero_sum(terms[:i + 1], table, mode)
                if not terms_have_zero_sum(terms[:i], table, mode):
                    assert new_zero == state.zero

    def test_zero_term(self, mod7):
        table = translate_table(unit_squares(mod7))
        state = empty_state(ZeroSumMode.D)
        assert creates_zero(state, 0, table)
        assert incremental_extender(state, 0, table).zero


class TestEngineInvariants:
    """Appending terms and multiplying a term by a weight"""

    @staticmethod
    def _random_instances(seed, count):
        rng = random.Random(seed)
        for _ in range(count):
            m = factorize(rng.choice(range(3, 46, 2)))
            unit_list = units(m).elements
            w = subgroup_weights(m, [rng.choice(unit_list) for _ in range(rng.randint(0, 2))])
            terms = tuple(rng.randrange(m.n) for _ in range(rng.randint(1, 5)))
            yield rng, m, w, terms

    @pytest.mark.parametrize("mode", [ZeroSumMode.D, ZeroSumMode.C])
    def test_append_keeps_zero_sum(self, mode):
        for rng, m, w, terms in self._random_instances(31, 150):
            before = bool(has_zero_sum(Sequence(m, terms), w, mode))
            after = bool(has_zero_sum(Sequence(m, terms + (rng.randrange(m.n),)), w, mode))
            assert after or not before

    @pytest.mark.parametrize("mode", [ZeroSumMode.D, ZeroSumMode.C])
    def test_orbit_invariance(self, mode):
        for rng, m, w, terms in self._random_instances(37, 150):
            i = rng.randrange(len(terms))
            a = rng.choice(w.elements)
            moved = terms[:i] + (a * terms[i] % m.n,) + terms[i + 1:]
            assert bool(has_zero_sum(Sequence(m, terms), w, mode)) == bool(has_zero_sum(Sequence(m, moved), w, mode))

    def test_orbit_invariance_s77(self, mod77):
        w = s_weights(mod77)
        seq = Sequence(mod77, (3, 14, 22))
        for a in w.elements:
            moved = Sequence(mod77, (a * 3 % 77, 14, 22))
            assert bool(has_zero_subsequence(moved, w)) == bool(has_zero_subsequence(seq, w))
            assert bool(has_zero_consecutive(moved, w)) == bool(has_zero_consecutive(seq, w))

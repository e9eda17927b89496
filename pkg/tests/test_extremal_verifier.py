import pytest

from arithmetic.modulus import factorize
from engine.sequence import Sequence, ZeroSumMode
from utils.errors import HypothesisError, UnknownIdentifierError, UsageError, WeightSetError
from verifier.extremal import (
    Strategy, audit_family, class_tuples, enumerate_extremal, expand_class, is_extremal, term_classes,
)
from verifier.forms import form_params, matches_form
from verifier.registry import ResultRegistry, get_registry
from verifier.theorems import Verdict, compare_sides, verify_theorem
from weights.weight_sets import custom_weights, l_weights, s_weights, unit_squares, units

D, C = ZeroSumMode.D, ZeroSumMode.C


class TestRegistry:
    """theorems_and_lemmas.yaml"""

    def test_known_ids(self):
        registry = get_registry()
        for theorem_id in ("dexts", "dexts2", "cexts", "dextl", "extl3", "extl2", "cextl", "lext2", "qp_remark"):
            assert registry.is_theorem(theorem_id)
        for lemma_id in ("u2s", "lifts'", "gs", "gs'", "s2l", "u2l", "gl'", "gl", "obs3", "s2l3"):
            assert registry.is_lemma(lemma_id)

    def test_unknown_id(self):
        with pytest.raises(UnknownIdentifierError, match="unknown theorem id 'nope'"):
            get_registry().get_theorem("nope")

    def test_entry_fields(self):
        entry = get_registry().get_theorem("lext2")
        assert entry.modes == (C,)
        assert entry.needs_parameter
        assert entry.permutation_diagnostic
        assert entry.omega_allowed(2) and not entry.omega_allowed(3)
        assert get_registry().get_theorem("dexts2").forms_for(2) == ("pair_split_S",)
        assert get_registry().get_theorem("dexts2").forms_for(3) == ()

    def test_missing_file(self, tmp_path):
        with pytest.raises(UnknownIdentifierError):
            ResultRegistry(str(tmp_path / "missing.yaml"))

    def test_custom_file(self, tmp_path):
        path = tmp_path / "registry.yaml"
        path.write_text("theorems:\n  - id: t1\n    restricted: S\n    modes: [C]\nlemmas: []\n")
        registry = ResultRegistry(str(path))
        assert registry.identifiers() == ["t1"]
        assert registry.get_theorem("t1").modes == (C,)


class TestIsExtremal:

    def test_q7_pairs(self, mod7):
        q = unit_squares(mod7)
        assert is_extremal(Sequence(mod7, (1, 4)), q, D)
        assert not is_extremal(Sequence(mod7, (1, 6)), q, D)
        assert not is_extremal(Sequence(mod7, (0, 1)), q, D)

    def test_wrong_length(self, mod7):
        assert not is_extremal(Sequence(mod7, (1,)), unit_squares(mod7), D)

    def test_uncovered_needs_constant(self, mod7):
        w = custom_weights(mod7, [1, 3])
        with pytest.raises(UsageError):
            is_extremal(Sequence(mod7, (1, 1)), w, D)


class TestEnumeration:
    """Complete extremal families and their audits"""

    def test_q7_family(self, mod7):
        q = unit_squares(mod7)
        family = enumerate_extremal(mod7, q, D, Strategy.FULL)
        assert family.complete
        expected = {tuple(sorted((x, y))) for x in range(1, 7) for y in range(1, 7) if (-y * pow(x, -1, 7)) % 7 not in q}
        assert family.keys() == expected
        assert family.full_count == sum(1 for x in range(1, 7) for y in range(1, 7)
                                        if (-y * pow(x, -1, 7)) % 7 not in q)

    def test_canonical_matches_full(self, mod77):
        w = s_weights(mod77)
        full = enumerate_extremal(mod77, w, D, Strategy.FULL)
        canonical = enumerate_extremal(mod77, w, D, Strategy.CANONICAL)
        assert full.complete and canonical.complete
        assert canonical.full_count == full.full_count
        assert canonical.class_count < full.class_count
        expanded = {tuple(sorted(s.terms)) for seq in canonical.sequences for s in expand_class(seq, canonical)}
        assert expanded == full.keys()

    @pytest.mark.parametrize("strategy", [Strategy.FULL, Strategy.CANONICAL])
    def test_audit_d(self, mod77, strategy):
        family = enumerate_extremal(mod77, l_weights(mod77, 7), D, strategy)
        audit = audit_family(family)
        assert audit.ok
        assert audit.checked == family.class_count

    @pytest.mark.parametrize("n", [91, 143])
    @pytest.mark.parametrize("mode", [D, C])
    def test_audit_without_minus_one(self, n, mode):
        m = factorize(n)
        family = enumerate_extremal(m, s_weights(m), mode, Strategy.CANONICAL)
        assert family.complete
        audit = audit_family(family)
        assert audit.ok, audit.as_dict()
        assert audit.checked == family.class_count > 0

    @pytest.mark.parametrize("p", [7, 11, 13])
    @pytest.mark.parametrize("mode", [D, C])
    @pytest.mark.parametrize("strategy", [Strategy.FULL, Strategy.CANONICAL])
    def test_audit_q_p(self, p, mode, strategy):
        m = factorize(p)
        family = enumerate_extremal(m, unit_squares(m), mode, strategy)
        assert family.complete
        assert audit_family(family).ok
        # (x1, x2) is extremal exactly when -x2/x1 is a non-residue
        expected = sum(1 for x in range(1, p) for y in range(1, p) if (-y * pow(x, -1, p)) % p not in unit_squares(m))
        assert family.full_count == expected

    def test_audit_c(self, mod77):
        family = enumerate_extremal(mod77, s_weights(mod77), C, Strategy.CANONICAL)
        assert family.complete
        assert all(len(s) == 3 for s in family.sequences)
        assert audit_family(family).ok

    def test_reversal_closure(self, mod77):
        family = enumerate_extremal(mod77, l_weights(mod77, 7), C, Strategy.CANONICAL)
        keys = family.keys()
        assert all(terms[::-1] in keys for terms in keys)

    def test_budget(self, mod77, serial_config):
        family = enumerate_extremal(mod77, l_weights(mod77, 7), C, Strategy.CANONICAL,
                                    config=serial_config.with_overrides(node_budget=5))
        assert not family.complete
        assert audit_family(family).checked == 0

    def test_non_group_falls_back_to_full(self, mod7, serial_config):
        w = custom_weights(mod7, [1, 3])
        family = enumerate_extremal(mod7, w, D, Strategy.CANONICAL, constant=3, config=serial_config)
        assert family.strategy is Strategy.FULL

    def test_group_must_lie_in_weights(self, mod77):
        with pytest.raises(WeightSetError):
            enumerate_extremal(mod77, s_weights(mod77), D, Strategy.CANONICAL, group=units(mod77))

    def test_class_tuples(self, mod7):
        classes = term_classes(mod7, Strategy.CANONICAL, unit_squares(mod7))
        assert classes.terms == (1, 3)
        assert list(class_tuples(classes, 2, D)) == [(0, 0), (0, 1), (1, 1)]
        assert len(list(class_tuples(classes, 2, C))) == 4
        assert classes.multiplicity((0, 1), D) == 18
        assert classes.multiplicity((0, 1), C) == 9


class TestForms:

    def test_pair_split_s(self, mod77):
        params = form_params(mod77)
        s = s_weights(mod77)
        a = s.elements[1]
        b = next(x for x in units(mod77).elements if (77 - x) % 77 not in s)
        assert matches_form(Sequence(mod77, (a, b)), "pair_split_S", params)
        assert matches_form(Sequence(mod77, (b, a)), "pair_split_S", params)
        assert not matches_form(Sequence(mod77, (a, 0)), "pair_split_S", params)

    def test_extl2_bullet2(self, mod77):
        params = form_params(mod77, 7)
        # x1 coprime to 7, (x2, x3) multiples of 7 reducing to the Q_11-extremal pair (1, 1)
        x2 = next(x for x in range(7, 77, 7) if x % 11 == 1)
        assert matches_form(Sequence(mod77, (1, x2, x2)), "extl2_bullet2", params)
        assert not matches_form(Sequence(mod77, (1, x2, 77 - x2)), "extl2_bullet2", params)

    def test_lext2_positions_fixed(self, mod77):
        params = form_params(mod77, 7)
        x = next(x for x in range(7, 77, 7) if x % 11 == 1)
        seq = (11, x, 22, x, 33)
        assert matches_form(Sequence(mod77, seq), "lext2_bullet1", params)
        assert not matches_form(Sequence(mod77, (x, 11, 22, x, 33)), "lext2_bullet1", params)

    def test_wrong_omega(self, mod1001):
        with pytest.raises(HypothesisError):
            matches_form(Sequence(mod1001, (1, 2)), "pair_split_S", form_params(mod1001))

    def test_unknown_form(self, mod77):
        with pytest.raises(UnknownIdentifierError):
            matches_form(Sequence(mod77, (1, 2)), "nope", form_params(mod77))

    def test_needs_p_prime(self, mod77):
        with pytest.raises(HypothesisError):
            matches_form(Sequence(mod77, (1, 2, 3)), "extl2_bullet1", form_params(mod77))


class TestCompareSides:

    def test_equality(self):
        result = compare_sides({(1, 2), (3, 4)}, {(1, 2), (5, 6)}, "equality")
        assert not result.holds
        assert result.only_left == [(3, 4)]
        assert result.only_right == [(5, 6)]

    def test_subset(self):
        result = compare_sides({(1, 2)}, {(1, 2), (5, 6)}, "subset")
        assert result.holds
        assert result.only_right == []


class TestTheorems:
    """Exhaustive set comparisons at n = 77"""

    def test_dexts2_77(self, mod77, serial_config):
        report = verify_theorem("dexts2", mod77, config=serial_config)
        assert report.verdict is Verdict.VERIFIED
        assert report.counterexamples == []
        assert report.counterexample_count == 0
        stats = report.stats["modes"][0]
        assert stats["left_sequences"] == stats["right_sequences"]
        assert stats["constant"] == stats["predicted_constant"] == 3
        assert stats["scanned"] > 0

    def test_dexts_subset_77(self, mod77, serial_config):
        assert verify_theorem("dexts", mod77, config=serial_config).verified

    def test_dexts2_full_strategy_agrees(self, mod77, serial_config):
        canonical = verify_theorem("dexts2", mod77, config=serial_config)
        full = verify_theorem("dexts2", mod77, config=serial_config, strategy=Strategy.FULL)
        assert full.verified
        assert full.stats["modes"][0]["left_sequences"] == canonical.stats["modes"][0]["left_sequences"]

    def test_dexts2_without_minus_one(self, serial_config):
        # -1 is not in S(91): two non-residue units form a pair the split form misses
        report = verify_theorem("dexts2", factorize(91), config=serial_config)
        assert report.verdict is Verdict.COUNTEREXAMPLE
        assert [s.serialize() for s in report.counterexamples] == ["2,2"]
        assert report.counterexample_count == 1

    def test_dexts2_143_without_minus_one(self, serial_config):
        # 5 is the least unit outside S(143) and -5 lies inside it
        report = verify_theorem("dexts2", factorize(143), config=serial_config)
        assert report.verdict is Verdict.COUNTEREXAMPLE
        assert [s.serialize() for s in report.counterexamples] == ["5,5"]
        assert report.counterexample_count == 1
        assert report.stats["modes"][0]["only_left_classes"] == 1

    @pytest.mark.parametrize("n", [7, 11, 13])
    @pytest.mark.parametrize("theorem_id", ["dextl", "cextl"])
    def test_l_equals_u_at_primes(self, n, theorem_id, serial_config):
        # L(p;p) = U(p), so both families coincide
        report = verify_theorem(theorem_id, factorize(n), n, serial_config)
        assert report.verdict is Verdict.VERIFIED
        stats = report.stats["modes"][0]
        assert stats["left_sequences"] == stats["right_sequences"] > 0
        assert stats["constant"] == stats["units_constant"] == 2

    def test_cexts_77(self, mod77, serial_config):
        report = verify_theorem("cexts", mod77, config=serial_config)
        assert report.verdict is Verdict.VERIFIED
        assert report.stats["modes"][0]["units_constant"] == 4
        # no forms listed: both sides come from the extremal DFS
        assert report.stats["modes"][0]["scanned"] == 0

    @pytest.mark.parametrize("p_prime", [7, 11])
    def test_extl2_77(self, mod77, p_prime, serial_config):
        assert verify_theorem("extl2", mod77, p_prime, serial_config).verified

    def test_lext2_77(self, mod77, serial_config):
        report = verify_theorem("lext2", mod77, 7, serial_config)
        assert report.verified
        stats = report.stats["modes"][0]
        assert stats["length"] == 5
        assert "permutation_closed_reading_holds" in stats

    def test_qp_remark(self, serial_config):
        assert verify_theorem("qp_remark", factorize(13), config=serial_config).verified
        report = verify_theorem("qp_remark", factorize(7), config=serial_config)
        assert report.verdict is Verdict.COUNTEREXAMPLE
        assert {s.serialize() for s in report.counterexamples} == {"3,3"}

    def test_hypothesis_gate(self, serial_config):
        with pytest.raises(HypothesisError, match="--exploratory"):
            verify_theorem("dexts2", factorize(15), config=serial_config)

    def test_omega_gate(self, mod1001, serial_config):
        with pytest.raises(HypothesisError):
            verify_theorem("extl2", mod1001, 7, serial_config)

    def test_missing_parameter(self, mod77, serial_config):
        with pytest.raises(UsageError, match="--p"):
            verify_theorem("extl2", mod77, config=serial_config)
        with pytest.raises(UsageError):
            verify_theorem("extl2", mod77, 13, serial_config)

    def test_unknown_theorem(self, mod77):
        with pytest.raises(UnknownIdentifierError):
            verify_theorem("nope", mod77)

    def test_withheld_on_budget(self, mod77, serial_config):
        report = verify_theorem("cexts", mod77, config=serial_config.with_overrides(node_budget=2))
        assert report.verdict is Verdict.WITHHELD
        assert report.counterexamples == []
        assert not report.exhaustive

    def test_max_counterexamples(self, serial_config):
        report = verify_theorem("qp_remark", factorize(7), config=serial_config.with_overrides(max_counterexamples=1))
        assert len(report.counterexamples) == 1
        assert report.counterexample_count == 2


@pytest.mark.slow
class TestTheoremsAcceptance:

    @pytest.mark.parametrize("n", [91, 143])
    @pytest.mark.parametrize("p_index", [0, 1])
    def test_extl2(self, n, p_index, serial_config):
        m = factorize(n)
        assert verify_theorem("extl2", m, m.primes[p_index], serial_config).verified

    def test_extl3_1001(self, mod1001, serial_config):
        report = verify_theorem("extl3", mod1001, 7, serial_config)
        assert report.verdict is not Verdict.WITHHELD

    @pytest.mark.parametrize("p_prime", [7, 11, 13])
    def test_cextl_1001(self, mod1001, p_prime, serial_config):
        # the left family comes from the pruned DFS, no full scan of length-7 class tuples
        report = verify_theorem("cextl", mod1001, p_prime, serial_config)
        assert report.verified
        stats = report.stats["modes"][0]
        assert stats["length"] == 7
        assert stats["scanned"] == 0
        assert stats["left_sequences"] == stats["right_sequences"]

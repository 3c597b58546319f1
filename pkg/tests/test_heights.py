import random
from fractions import Fraction

import pytest
from conftest import named_group

import pifinite as pf
from pifinite import InputError, LayerClass, ResourceBudgetError, vp


def random_p_integral(rng: random.Random, p: int, v: int) -> Fraction:
    """Random rational with exact valuation v."""
    def unit():
        while True:
            s = rng.randint(1, 9999) * rng.choice((1, -1))
            if s % p:
                return s
    return Fraction(p) ** v * Fraction(unit(), unit() * rng.choice((1, 1, -1)))


class TestDelta:
    def test_fixed_points_and_values(self):
        for p in (2, 3, 5):
            assert pf.delta(1, p) == 0
            assert pf.delta(0, p) == 0
        assert pf.delta(2, 2) == -1
        assert pf.delta(6, 3) == -70
        assert pf.delta(Fraction(2, 3), 2) == Fraction(1, 9)

    def test_rejects_negative_valuation(self):
        with pytest.raises(InputError):
            pf.delta(Fraction(1, 2), 2)
        with pytest.raises(InputError):
            pf.delta(Fraction(5, 9), 3)

    def test_integers_stay_integers(self):
        rng = random.Random(0)
        for _ in range(50):
            a = rng.randint(-500, 500)
            out = pf.delta(a, 3)
            assert out.denominator == 1

    def test_valuation_drop(self):
        rng = random.Random(1)
        for _ in range(300):
            p = rng.choice((2, 3, 5))
            v = rng.randint(1, 6)
            a = random_p_integral(rng, p, v)
            assert vp(a, p) == v
            assert vp(pf.delta(a, p), p) == v - 1

    def test_additive_deviation_law(self):
        rng = random.Random(2)
        for _ in range(300):
            p = rng.choice((2, 3))
            x = random_p_integral(rng, p, rng.randint(0, 4))
            y = random_p_integral(rng, p, rng.randint(0, 4))
            deviation = Fraction(x ** p + y ** p - (x + y) ** p, p)
            assert pf.delta(x + y, p) == pf.delta(x, p) + pf.delta(y, p) + deviation


class TestDeltaIter:
    def test_values(self):
        assert pf.delta_iter(4, 2, 1) == -6
        assert pf.delta_iter(Fraction(7, 5), 3, 0) == Fraction(7, 5)

    def test_gamma_valuation_pattern(self):
        for p in (2, 3):
            for k in range(1, 4):
                for n in range(k, 7):
                    gamma = pf.delta_iter(p ** (n - 1), p, k - 1)
                    assert vp(gamma, p) == n - k

    def test_spot_value(self):
        assert pf.delta_iter(2 ** 3, 2, 1) == -28
        assert vp(-28, 2) == 2

    def test_digit_budget(self):
        with pytest.raises(ResourceBudgetError):
            pf.delta_iter(10 ** 40, 2, 6, max_digits=15)
        with pytest.raises(InputError):
            pf.delta_iter(2, 2, -1)


class TestProfilesAndClasses:
    def test_space_profiles(self):
        prof = pf.height_profile(pf.classifying(named_group("C2")), 2, 4)
        assert prof.values == (Fraction(1, 2), 1, 2, 4, 8)
        prof = pf.height_profile(pf.classifying(named_group("S3")), 2, 2)
        assert prof.values == (Fraction(1, 6), Fraction(2, 3), Fraction(5, 3))
        prof = pf.height_profile(pf.PT, 5, 3)
        assert prof.values == (1, 1, 1, 1)

    def test_classify_constant_p(self):
        prof = pf.HeightProfile(3, (3,) * 5)
        assert pf.classify_layer(prof, 0) is LayerClass.DIVISIBLE
        for n in range(1, 5):
            assert pf.classify_layer(prof, n) is LayerClass.COMPLETE

    def test_classify_bc2(self):
        prof = pf.height_profile(pf.classifying(named_group("C2")), 2, 4)
        assert pf.classify_layer(prof, 1) is LayerClass.DIVISIBLE
        assert pf.classify_layer(prof, 3) is LayerClass.COMPLETE

    def test_layer_zero_rules(self):
        prof = pf.HeightProfile(2, (0, 4, Fraction(1, 3)))
        assert pf.classify_layer(prof, 0) is LayerClass.ZERO
        assert pf.classify_layer(prof, 2) is LayerClass.DIVISIBLE
        with pytest.raises(InputError):
            pf.classify_layer(prof, 3)
        with pytest.raises(InputError):
            pf.classify_layer(pf.HeightProfile(2, (1, Fraction(1, 2))), 1)

    def test_zero_layer_above_zero(self):
        prof = pf.HeightProfile(2, (1, 0, 1))
        assert pf.classify_layer(prof, 1) is LayerClass.ZERO


class TestR1Element:
    def test_linearity(self):
        g = named_group("S3")
        el = 2 * pf.R1Element.group_symbol(g) - 3
        for n in range(4):
            expected = 2 * pf.height_cardinality(pf.classifying(g), 2, n) - 3
            assert el.value_at(2, n) == expected

    def test_generator_products(self):
        g, h = named_group("C2"), named_group("S3")
        prod = pf.R1Element.group_symbol(g) * pf.R1Element.group_symbol(h)
        for n in range(4):
            assert prod.value_at(2, n) == \
                pf.R1Element.group_symbol(g).value_at(2, n) * \
                pf.R1Element.group_symbol(h).value_at(2, n)

    def test_delta_symbols_do_not_multiply(self):
        beta2 = pf.beta_element(2, 2)
        with pytest.raises(InputError):
            beta2 * beta2

    def test_terms_merge(self):
        g = named_group("C2")
        el = pf.R1Element.group_symbol(g) + pf.R1Element.group_symbol(g)
        assert el == 2 * pf.R1Element.group_symbol(g)
        assert (el - el).terms == ()


class TestBeta:
    def test_k_zero_profile(self):
        prof = pf.beta_element(2, 0).profile(2, 5)
        assert prof.values == (0, 1, 3, 7, 15, 31)
        prof3 = pf.beta_element(3, 0).profile(3, 3)
        assert prof3.values == (0, 2, 8, 26)

    def test_k_one(self):
        el = pf.beta_element(2, 1)
        assert el.constant == -1
        prof = el.profile(2, 3)
        assert prof.values[1:] == (0, 1, 3)

    def test_k_two(self):
        el = pf.beta_element(2, 2)
        assert el.constant == -1
        prof = el.profile(2, 4)
        assert prof.values[2:] == (-2, -7, -29)
        assert [vp(v, 2) for v in prof.values[2:]] == [1, 0, 0]

    def test_separation(self):
        for p in (2, 3):
            for k in range(4):
                prof = pf.beta_element(p, k).profile(p, 6)
                assert prof[k] == 0 or vp(prof[k], p) > 0
                for n in range(k + 1, 7):
                    assert vp(prof[n], p) == 0

    def test_budget(self):
        with pytest.raises(ResourceBudgetError):
            pf.beta_element(2, 5)
        with pytest.raises(InputError):
            pf.beta_element(2, -1)


class TestAlpha:
    def test_example_profile(self):
        prof = pf.alpha_splitter(2, 1, 3)
        assert prof.values == (0, 0, 3, 21)
        classes = [pf.classify_layer(prof, n) for n in range(4)]
        assert classes == [LayerClass.ZERO, LayerClass.ZERO,
                           LayerClass.DIVISIBLE, LayerClass.DIVISIBLE]

    def test_k_zero(self):
        for p in (2, 3):
            prof = pf.alpha_splitter(p, 0, 4)
            assert prof[0] == 0
            assert prof.values[1:] == tuple(p ** n - 1 for n in range(1, 5))

    def test_splits_layers(self):
        for p in (2, 3):
            for k in range(4):
                prof = pf.alpha_splitter(p, k, 6)
                for n in range(k + 1):
                    assert pf.classify_layer(prof, n) in (LayerClass.COMPLETE, LayerClass.ZERO)
                for n in range(k + 1, 7):
                    assert pf.classify_layer(prof, n) is LayerClass.DIVISIBLE

    def test_range_check(self):
        with pytest.raises(InputError):
            pf.alpha_splitter(2, 4, 3)


class TestWreathIdentity:
    def test_c2_rows(self):
        c2 = named_group("C2")
        rows = [pf.verify_wreath_identity(c2, 2, n) for n in (1, 2, 3)]
        assert [(r.lhs, r.rhs) for r in rows] == [(0, 0), (-1, 1), (-6, 6)]
        assert [r.sign for r in rows] == [None, -1, -1]
        assert all(r.magnitudes_match for r in rows)

    def test_uniform_sign_on_grid(self):
        signs = set()
        for text, p in (("C2", 2), ("C2 x C2", 2), ("S3", 2), ("C3", 3)):
            g = named_group(text)
            for n in (1, 2, 3):
                report = pf.verify_wreath_identity(g, p, n)
                assert report.magnitudes_match
                if report.sign is not None:
                    signs.add(report.sign)
        assert signs == {-1}

    def test_rational_layer_agrees(self):
        # delta(1/|G|) = 1/(p|G|) - 1/(p|G|^p) exactly, same sign as layers >= 1
        for text, p in (("C2", 2), ("S3", 2), ("C3", 3)):
            report = pf.verify_wreath_identity(named_group(text), p, 0)
            assert report.magnitudes_match and report.sign == -1

    def test_cap_applies(self):
        with pytest.raises(ResourceBudgetError):
            pf.verify_wreath_identity(named_group("S3"), 5, 1)


class TestPkRelations:
    def test_alternation_at_height_zero(self):
        values = [Fraction(3) ** pf.binom_ext(-1, k) for k in range(6)]
        assert values == [3, Fraction(1, 3), 3, Fraction(1, 3), 3, Fraction(1, 3)]
        assert pf.pk_relation_check(3, 0, 5)

    def test_higher_layers(self):
        assert pf.pk_relation_check(2, 2, 6)
        assert pf.pk_relation_check(5, 1, 4)
        for p in (2, 3, 5):
            for n in range(4):
                assert pf.pk_relation_check(p, n, 6)

    def test_input_validation(self):
        with pytest.raises(InputError):
            pf.pk_relation_check(2, 3, 2)
        with pytest.raises(InputError):
            pf.pk_relation_check(4, 0, 3)

import random

import pytest
from conftest import named_group, random_space_expr

import pifinite as pf
from pifinite import ParseError, parse_space, space_text


class TestGrammar:
    def test_em_times_set(self):
        x = parse_space("B^2(C3) * 2")
        assert pf.normal_form(x) == pf.normal_form(
            pf.product(pf.em_space([3], 2), pf.finite_set(2)))

    def test_classifying_plus_point(self):
        x = parse_space("B(S3) + pt")
        assert pf.normal_form(x) == pf.normal_form(
            pf.disjoint_union(pf.classifying(named_group("S3")), pf.PT))

    def test_em_of_product_group(self):
        x = parse_space("B^3(C2 x C4)")
        assert x == pf.em_space([2, 4], 3)

    def test_zero_and_point(self):
        assert parse_space("0") == pf.EMPTY
        assert parse_space("pt") == pf.PT
        assert parse_space("1") == pf.PT

    def test_degree_zero_collapses(self):
        assert parse_space("B^0(C3)") == pf.finite_set(3)
        assert parse_space("B^0(C2 x C3)") == pf.finite_set(6)

    def test_degree_one_matches_classifying(self):
        assert pf.normal_form(parse_space("B^1(C2)")) == pf.normal_form(parse_space("B(C2)"))
        assert pf.normal_form(parse_space("B(C6)")) == pf.normal_form(parse_space("B^1(C2 x C3)"))

    def test_precedence(self):
        x = parse_space("B(C2) + 2 * B^2(C3)")
        assert isinstance(x, pf.Disjoint)
        y = parse_space("(B(C2) + 2) * 2")
        assert isinstance(y, pf.Product)
        assert pf.height_cardinality(y, 2, 0) == 5

    def test_wreath_groups(self):
        x = parse_space("B(C2 wr C2)")
        assert isinstance(x, pf.Classifying) and x.group.order == 8
        nested = parse_space("B(C2 wr C2 wr C2)")
        assert nested.group.order == 8 ** 2 * 2

    def test_wreath_binds_tighter_than_product(self):
        x = parse_space("B(C2 x C2 wr C2)")
        assert x.group.order == 2 * 8

    def test_dihedral_and_symmetric(self):
        assert parse_space("B(D8)").group.order == 8
        assert parse_space("B(S4)").group.order == 24


class TestErrors:
    @pytest.mark.parametrize("text,pos", [
        ("B(", 2),
        ("2 +", 3),
        ("B^(C2)", 2),
        ("B(Q8)", 2),
        ("B(C2))", 5),
        ("", 0),
        ("B(C2) @ pt", 6),
    ])
    def test_position_reported(self, text, pos):
        with pytest.raises(ParseError) as err:
            parse_space(text)
        assert err.value.position == pos
        assert f"position {pos}" in str(err.value)

    def test_bad_group_sizes_are_input_errors(self):
        with pytest.raises(pf.InputError):
            parse_space("B(S9)")
        with pytest.raises(pf.InputError):
            parse_space("B(D7)")


class TestPrinting:
    def test_examples(self):
        assert space_text(parse_space("B^2(C3) * 2")) == "B^2(C3) * 2"
        assert space_text(parse_space("B(S3) + pt")) == "B(S3) + pt"
        assert space_text(pf.EMPTY) == "0"
        assert space_text(pf.PT) == "pt"

    def test_parenthesizes_sums_inside_products(self):
        x = pf.product(pf.disjoint_union(pf.PT, pf.PT), pf.classifying(named_group("C2")))
        text = space_text(x)
        assert pf.normal_form(parse_space(text)) == pf.normal_form(x)

    def test_roundtrip_small_corpus(self):
        rng = random.Random(12)
        for _ in range(60):
            x = random_space_expr(rng)
            text = space_text(x)
            reparsed = parse_space(text)
            assert pf.normal_form(reparsed) == pf.normal_form(x)
            assert pf.normal_form(parse_space(space_text(reparsed))) == pf.normal_form(x)

    def test_normal_form_expr_is_printable(self):
        x = parse_space("B(S3) * B(D8) + 4")
        nf = pf.normal_form(x)
        assert pf.normal_form(parse_space(space_text(nf.to_expr()))) == nf

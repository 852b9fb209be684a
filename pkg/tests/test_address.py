import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complextrees.address import (
    Address,
    Alphabet,
    apply_map,
    eval_node,
    eval_tip,
    format_address,
    parse_address,
    prefix_product,
    shift,
)
from complextrees.errors import AddressParseError, DomainError, LetterRangeError

from conftest import FIG0, GOLDEN


class TestParse:
    def test_preperiod_and_period(self):
        a = parse_address("23(1)")
        assert a.preperiod == (2, 3)
        assert a.period == (1,)

    def test_empty_string_is_root(self):
        a = parse_address("")
        assert a.is_finite and a.letters == ()
        assert a.first_letter is None

    def test_absorbs_trailing_periodic_letter(self):
        assert parse_address("231(1)") == parse_address("23(1)")
        assert format_address(parse_address("231(1)")) == "23(1)"

    @pytest.mark.parametrize(
        "text, canonical",
        [("(11)", "(1)"), ("(1212)", "(12)"), ("12(12)", "(12)"), ("312(312)", "(312)"), ("2(12)", "(21)"), ("", "")],
    )
    def test_canonical_spelling(self, text, canonical):
        assert format_address(parse_address(text)) == canonical

    @pytest.mark.parametrize("text, offset", [("23((", 3), ("()", 1), ("2a", 1), ("1(2", 3), ("1(2)3", 4), ("0", 0)])
    def test_errors_name_offset(self, text, offset):
        with pytest.raises(AddressParseError) as info:
            parse_address(text)
        assert info.value.offset == offset

    def test_letter_zero_rejected_at_construction(self):
        with pytest.raises(LetterRangeError):
            Address((0,), ())


class TestEvaluation:
    def test_prefix_product_empty_is_one(self):
        assert prefix_product([], FIG0) == 1

    def test_prefix_product_power(self):
        assert prefix_product([1, 1], (0.5, 0.3)) == 0.25

    def test_prefix_product_fig0(self):
        # (0.2+0.3i)(0.2-0.1i) = 0.04 + 0.03 + (0.06 - 0.02)i
        assert abs(prefix_product([2, 3], FIG0) - (0.07 + 0.04j)) < 1e-15

    def test_root_and_first_level(self):
        assert eval_node([], FIG0) == 1
        assert abs(eval_node([1], FIG0) - (1.4 + 0.1j)) < 1e-15

    def test_node_23_against_tip_minus_tail(self):
        c1, c2, c3 = GOLDEN
        node = eval_node([2, 3], GOLDEN)
        assert abs(node - (1 + c2 + c2 * c3)) < 1e-15
        tail = c2 * c3 * c1 / (1 - c1)
        assert abs(eval_tip(parse_address("23(1)"), GOLDEN) - tail - node) < 1e-15

    def test_fixed_point_of_f1(self):
        assert eval_tip(parse_address("(1)"), (0.5, 0.2)) == 2

    @pytest.mark.parametrize("alphabet", [FIG0, GOLDEN, (0.3 - 0.4j, 0.5j, -0.6)])
    def test_closed_form_reductions(self, alphabet):
        c1, c2, c3 = alphabet
        geo = 1 / (1 - c1)
        cases = {
            "(1)": geo,
            "23(1)": 1 + c2 + c2 * c3 * geo,
            "122(1)": 1 + c1 + c1 * c2 + c1 * c2**2 * geo,
            "32(1)": 1 + c3 + c3 * c2 * geo,
            "133(1)": 1 + c1 + c1 * c3 + c1 * c3**2 * geo,
        }
        for text, expected in cases.items():
            assert abs(eval_tip(parse_address(text), alphabet) - expected) < 1e-14

    def test_golden_relations_hold(self):
        for a, b in [("23(1)", "122(1)"), ("32(1)", "133(1)")]:
            diff = eval_tip(parse_address(a), GOLDEN) - eval_tip(parse_address(b), GOLDEN)
            assert abs(diff) < 1e-12

    def test_letter_out_of_range(self):
        with pytest.raises(LetterRangeError):
            eval_tip(parse_address("4(1)"), FIG0)
        with pytest.raises(LetterRangeError):
            apply_map(4, 0, FIG0)

    def test_apply_map(self):
        c = FIG0
        p1 = eval_tip(parse_address("(1)"), c)
        assert abs(apply_map(1, p1, c) - p1) < 1e-15
        assert abs(apply_map(2, p1, c) - eval_tip(parse_address("2(1)"), c)) < 1e-15
        assert apply_map(3, 0, c) == 1


class TestAlphabet:
    @pytest.mark.parametrize("ratios", [(0.5,), (0.5, 1.0), (0.0, 0.5), (0.5, 1.2j)])
    def test_rejects_invalid(self, ratios):
        with pytest.raises(DomainError):
            Alphabet(ratios)

    def test_degenerate_repeated_ratio_allowed(self):
        assert Alphabet((0.3, 0.3, 0.3)).n == 3


letters = st.integers(1, 3)
words = st.lists(letters, max_size=6)
addresses = st.builds(
    lambda pre, per: Address(tuple(pre), tuple(per)), words, st.lists(letters, min_size=1, max_size=4)
)
ratio = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(0.05, 0.9),
    st.floats(0, 6.283),
)
alphabets = st.tuples(ratio, ratio, ratio)


@settings(max_examples=200, deadline=None)
@given(addresses, alphabets)
def test_shift_recursion(address, alphabet):
    j = address.first_letter
    lhs = eval_tip(address, alphabet)
    rhs = apply_map(j, eval_tip(shift(address), alphabet), alphabet)
    assert abs(lhs - rhs) < 1e-11 * max(1, abs(lhs))


@settings(max_examples=200, deadline=None)
@given(words, words, alphabets)
def test_concatenation(u, v, alphabet):
    lhs = eval_node(u + v, alphabet)
    rhs = eval_node(u, alphabet) + prefix_product(u, alphabet) * (eval_node(v, alphabet) - 1)
    assert abs(lhs - rhs) < 1e-12 * max(1, abs(lhs))


@settings(max_examples=100, deadline=None)
@given(words, st.lists(letters, min_size=1, max_size=3), alphabets)
def test_truncation_bound(u, v, alphabet):
    tip = eval_tip(Address(tuple(u), tuple(v)), alphabet)
    pu = abs(prefix_product(u, alphabet))
    P = abs(prefix_product(v, alphabet))
    S = abs(eval_node(v, alphabet) - 1)
    for k in range(1, 31):
        approx = eval_node(u + v * k, alphabet)
        bound = pu * P**k * S / (1 - P)
        assert abs(tip - approx) <= bound + 1e-12


@given(addresses)
def test_canonicalization_idempotent(address):
    text = format_address(address)
    once = parse_address(text)
    assert parse_address(format_address(once)) == once
    assert once == address


@given(st.lists(letters, max_size=5), st.lists(letters, min_size=1, max_size=3), st.integers(1, 3))
def test_unrolled_spellings_agree(u, v, k):
    # u v^k (v) and u (v) name the same tip
    assert Address(tuple(u + v * k), tuple(v)) == Address(tuple(u), tuple(v))

from __future__ import annotations

from journey_forge.providers.answer_check import (
    CheckReport,
    extract_boxed,
    extract_final_answer,
    final_answer,
    normalize_answer,
)


class TestExtraction:
    def test_boxed_marker_wins(self):
        assert extract_boxed("the correct value of a+b is \\boxed{-1}") == "-1"

    def test_last_boxed_occurrence_used(self):
        text = "first guess \\boxed{7} ... revised answer \\boxed{2220}"
        assert extract_boxed(text) == "2220"

    def test_nested_braces_balanced(self):
        assert extract_boxed("\\boxed{\\frac{1}{2}}") == "\\frac{1}{2}"

    def test_fallback_last_number_on_final_line(self):
        assert extract_final_answer("some working\nx = 3/6") == "3/6"

    def test_fallback_picks_last_number(self):
        assert extract_final_answer("adding 4 and 5 gives 9") == "9"

    def test_unextractable_flagged(self):
        report = CheckReport()
        assert extract_final_answer("no numbers here at all", report) is None
        assert "unextractable" in report.flags


class TestNormalization:
    def test_leading_plus_stripped(self):
        assert normalize_answer("+5") == "5"

    def test_fraction_reduced(self):
        assert normalize_answer("3/6") == "1/2"

    def test_negative_denominator_canonicalized(self):
        assert normalize_answer("4/-2") == "-2"
        assert normalize_answer("-3/-6") == "1/2"

    def test_whitespace_collapsed(self):
        assert normalize_answer(" -13x + 3 ") == "-13x+3"


class TestFinalAnswer:
    def test_boxed_negative_one(self):
        assert final_answer("so the correct value of a+b is \\boxed{-1}", "-1")

    def test_boxed_2220(self):
        assert final_answer("the least such multiple is \\boxed{2220}", "2220")

    def test_unreduced_fraction_matches_reduced_gold(self):
        assert final_answer("working...\nx = 3/6", "1/2")

    def test_wrong_answer_rejected(self):
        assert not final_answer("\\boxed{4}", "3")

    def test_unextractable_is_false_with_flag(self):
        report = CheckReport()
        assert not final_answer("I give up entirely", "3", report)
        assert report.flags == ["unextractable"]

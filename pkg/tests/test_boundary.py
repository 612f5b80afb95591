"""The five-case boundary engine: enumeration, per-case values, reference
verdicts, and the assembled boundary term."""

from fractions import Fraction

import pytest

from wres4.boundary import (
    assemble_phi,
    enumerate_cases,
    fjet_monomials_only,
    hp_part,
    theorem42_report,
)
from wres4.interior import trace_interior
from wres4.scalars import GaussianRational, ScalarExpr

OMEGA = ScalarExpr.var("OMEGA")
PI = ScalarExpr.var("PI")
HP = ScalarExpr.var("HP")
FINV = ScalarExpr.f_inverse


@pytest.fixture(scope="module")
def phi():
    return assemble_phi()


class TestEnumeration:
    def test_exactly_five_cases(self):
        specs = enumerate_cases()
        assert [s.label for s in specs] == ["a1", "a2", "a3", "b", "c"]

    def test_index_tuples(self):
        by_label = {s.label: s for s in enumerate_cases()}
        assert (by_label["a1"].r, by_label["a1"].l,
                by_label["a1"].alpha) == (-1, -1, 1)
        assert by_label["a2"].j == 1 and by_label["a2"].k == 0
        assert by_label["a3"].k == 1 and by_label["a3"].j == 0
        assert (by_label["b"].r, by_label["b"].l) == (-2, -1)
        assert (by_label["c"].r, by_label["c"].l) == (-1, -2)

    def test_coefficients(self):
        by_label = {s.label: s for s in enumerate_cases()}
        assert by_label["a1"].coefficient == GaussianRational(-1)
        assert by_label["a2"].coefficient == GaussianRational(
            Fraction(-1, 2))
        assert by_label["a3"].coefficient == GaussianRational(
            Fraction(-1, 2))
        assert by_label["b"].coefficient == GaussianRational(0, -1)
        assert by_label["c"].coefficient == GaussianRational(0, -1)


class TestCaseValues:
    def test_a1_vanishes(self, phi):
        assert phi.cases["a1"].symbolic_value.is_zero()
        assert phi.cases["a1"].verdict == "match"

    def test_a2_value(self, phi):
        expected = (ScalarExpr.const(-3) / 2 * HP * PI * OMEGA * FINV(2)
                    - ScalarExpr.const(2) * ScalarExpr.var("FI4") * PI
                    * OMEGA * FINV(3))
        assert phi.cases["a2"].symbolic_value == expected

    def test_a3_is_minus_a2(self, phi):
        assert (phi.cases["a2"].symbolic_value
                + phi.cases["a3"].symbolic_value).is_zero()

    def test_b_value_matches_reference(self, phi):
        expected = (ScalarExpr.const(9) / 2 * HP * PI * OMEGA * FINV(2)
                    - ScalarExpr.const(4) * ScalarExpr.var("FI4") * PI
                    * OMEGA * FINV(3))
        assert phi.cases["b"].symbolic_value == expected
        assert phi.cases["b"].verdict == "match"

    def test_c_value_matches_reference(self, phi):
        assert phi.cases["c"].verdict == "match"
        assert (phi.cases["b"].symbolic_value
                + phi.cases["c"].symbolic_value).is_zero()

    def test_a2_a3_reference_mismatch_is_the_cross_integral(self, phi):
        # the documented discrepancy: engine and reference differ by the
        # f-jet term, i.e. by the nonzero value of the cross integral
        diff = (phi.cases["a2"].symbolic_value
                - phi.cases["a2"].paper_value)
        expected = (ScalarExpr.const(-2) * ScalarExpr.var("FI4") * PI
                    * OMEGA * FINV(3))
        assert diff == expected
        assert phi.cases["a2"].verdict == "mismatch"
        assert phi.cases["a3"].verdict == "mismatch"


class TestIntermediates:
    def test_all_printed_steps_match_except_documented(self, phi):
        expected_mismatches = {"4.19", "4.46", "4.49"}
        seen = {}
        for res in phi.cases.values():
            seen.update(res.intermediate_verdicts)
        mismatched = {k for k, v in seen.items() if v != "match"}
        assert mismatched == expected_mismatches
        # and a healthy number of steps genuinely checked
        assert len(seen) >= 20


class TestPhi:
    def test_total_is_zero(self, phi):
        assert phi.total.is_zero()

    def test_certification_flags(self, phi):
        assert phi.b_plus_c_zero
        assert phi.hp_cancellation
        assert phi.fjet_only  # vacuously true for the zero sum

    def test_no_hp_term_in_total(self, phi):
        assert hp_part(phi.total).is_zero()

    def test_reference_total_retains_hp_freedom(self, phi):
        # the stored reference total is nonzero; the comparison is a
        # documented discrepancy, never patched
        assert phi.paper_value is not None
        assert not phi.paper_value.is_zero()
        assert phi.verdict == "mismatch"

    def test_report_assembly(self, phi):
        doc = theorem42_report(phi, trace_interior())
        assert doc["boundary"]["b_plus_c_zero"] is True
        assert set(doc["cases"]) == {"a1", "a2", "a3", "b", "c"}
        assert doc["interior"]["verdict"] == "mismatch"


class TestHelpers:
    def test_hp_part_extraction(self):
        e = HP * PI + ScalarExpr.var("FI4")
        assert hp_part(e) == HP * PI

    def test_fjet_monomials_only(self):
        assert fjet_monomials_only(ScalarExpr.var("FI4") * PI)
        assert not fjet_monomials_only(ScalarExpr.var("FI4") + PI)

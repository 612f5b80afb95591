"""Interior Lichnerowicz-type data: the endomorphism E, its closed form,
the trace, and the residue prefactor."""

from wres4.clifford import CliffordElem, spin_trace
from wres4.interior import (
    E_closed_form,
    E_closed_form_engine,
    build_dbar_squared_data,
    closed_form_verdict,
    compute_E_at_x0,
    df_norm_sq,
    laplacian_f,
    paper_theorem32_value,
    theorem32_prefactor,
    theorem32_value,
    trace_interior,
)
from wres4.scalars import S_CURV, ScalarExpr, frac

FINV = ScalarExpr.f_inverse


class TestEndomorphism:
    def test_raw_equals_engine_closed_form(self):
        assert compute_E_at_x0() == E_closed_form_engine()

    def test_reference_closed_form_differs_by_scalar(self):
        # documented discrepancy: the two closed forms differ by exactly
        # |df|^2/f^2, the sign flip of the mixed term
        diff = E_closed_form() - compute_E_at_x0()
        assert diff == CliffordElem.scalar(df_norm_sq() * FINV(2))
        assert closed_form_verdict() == "mismatch"

    def test_pure_dirac_limit(self):
        # all f-jets zero and f = 1: E collapses to -s/4
        data = build_dbar_squared_data()
        names = [n for n in ("FI1", "FI2", "FI3", "FI4")]
        binding = {n: ScalarExpr.zero() for n in names}
        binding.update({f"FIJ{j}{k}": ScalarExpr.zero()
                        for j in range(1, 5) for k in range(j, 5)})
        binding["F"] = ScalarExpr.one()
        E = data.E.substitute(binding)
        assert E == CliffordElem.scalar(frac(-1, 4) * S_CURV)

    def test_mixed_clifford_square_identity(self):
        cdf = CliffordElem.c_df()
        total = CliffordElem.zero()
        for j in range(1, 5):
            a = cdf * CliffordElem.gen(j)
            total = total + a * a
        assert total == CliffordElem.scalar(
            ScalarExpr.const(-2) * df_norm_sq())

    def test_connection_coefficients(self):
        data = build_dbar_squared_data()
        for j in range(1, 5):
            expected = (CliffordElem.c_df()
                        * CliffordElem.gen(j)).scale(
                            ScalarExpr.const(-1) / 2 * FINV())
            assert data.omega[j - 1] == expected


class TestTrace:
    def test_engine_trace_value(self):
        res = trace_interior()
        expected = (ScalarExpr.const(-1) / 3 * S_CURV
                    + ScalarExpr.const(2) * laplacian_f() * FINV()
                    + ScalarExpr.const(4) * df_norm_sq() * FINV(2))
        assert res.trace_value == expected

    def test_reference_braces_mismatch_is_documented_shape(self):
        res = trace_interior()
        assert res.verdict == "mismatch"
        diff = res.trace_value - res.paper_value
        expected = (ScalarExpr.const(4) * laplacian_f() * FINV()
                    + ScalarExpr.const(10) * df_norm_sq() * FINV(2))
        assert diff == expected

    def test_trace_is_scalar_extraction(self):
        E = compute_E_at_x0()
        s6 = CliffordElem.scalar(frac(1, 6) * S_CURV)
        assert trace_interior(E).trace_value == spin_trace(s6 + E)


class TestResidueBridge:
    def test_prefactor(self):
        expected = (ScalarExpr.const(-512) * ScalarExpr.var("PI") ** 2
                    * FINV(2))
        assert theorem32_prefactor() == expected

    def test_value_factorization(self):
        res = trace_interior()
        bridge = (ScalarExpr.const(128) * ScalarExpr.var("PI") ** 2
                  * FINV(2))
        assert theorem32_value(res) == bridge * res.trace_value

    def test_reference_value_uses_reference_braces(self):
        res = trace_interior()
        bridge = (ScalarExpr.const(128) * ScalarExpr.var("PI") ** 2
                  * FINV(2))
        assert paper_theorem32_value() == bridge * res.paper_value

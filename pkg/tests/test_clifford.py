"""Clifford algebra over the scalar ring: relations, traces, and the
collar-frame derivative rule."""

import random

from wres4.clifford import CliffordElem, cmul, spin_trace
from wres4.scalars import ScalarExpr, reduce_sphere


def rand_elem(rng, depth=3):
    out = CliffordElem.zero()
    for _ in range(depth):
        term = CliffordElem.scalar(ScalarExpr.const(rng.randint(-5, 5)))
        for _ in range(rng.randint(0, 3)):
            term = term * CliffordElem.gen(rng.randint(1, 4))
        out = out + term
    return out


class TestRelations:
    def test_generators_square_to_minus_one(self):
        for i in range(1, 5):
            g = CliffordElem.gen(i)
            assert g * g == CliffordElem.scalar(ScalarExpr.const(-1))

    def test_anticommutation(self):
        for i in range(1, 5):
            for j in range(1, 5):
                if i == j:
                    continue
                gi, gj = CliffordElem.gen(i), CliffordElem.gen(j)
                assert gi * gj + gj * gi == CliffordElem.zero()

    def test_associativity_random(self):
        rng = random.Random(23)
        for _ in range(100):
            a, b, c = (rand_elem(rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)

    def test_cmul_matches_operator(self):
        rng = random.Random(29)
        for _ in range(50):
            a, b = rand_elem(rng), rand_elem(rng)
            assert cmul(a, b) == a * b


class TestTrace:
    def test_trace_identities(self):
        cxp = CliffordElem.c_xi_prime()
        cdxn = CliffordElem.c_dxn()
        dcxp = cxp.x_derivative(4)
        hp = ScalarExpr.var("HP")
        assert spin_trace(cxp * cdxn) == ScalarExpr.zero()
        assert spin_trace(cdxn * cdxn) == ScalarExpr.const(-4)
        assert reduce_sphere(spin_trace(cxp * cxp)) == ScalarExpr.const(-4)
        assert spin_trace(dcxp * cdxn) == ScalarExpr.zero()
        assert (reduce_sphere(spin_trace(dcxp * cxp))
                == ScalarExpr.const(-2) * hp)

    def test_trace_of_volume_element(self):
        vol = (CliffordElem.gen(1) * CliffordElem.gen(2)
               * CliffordElem.gen(3) * CliffordElem.gen(4))
        assert spin_trace(vol) == ScalarExpr.zero()

    def test_cyclicity_and_linearity_random(self):
        rng = random.Random(31)
        for _ in range(250):
            a, b = rand_elem(rng), rand_elem(rng)
            assert spin_trace(a * b) == spin_trace(b * a)
            assert (spin_trace(a + b)
                    == spin_trace(a) + spin_trace(b))

    def test_trace_is_four_times_scalar_part(self):
        rng = random.Random(37)
        for _ in range(50):
            a = rand_elem(rng)
            assert spin_trace(a) == ScalarExpr.const(4) * a.scalar_part()


class TestDerivatives:
    def test_collar_frame_rule(self):
        hp = ScalarExpr.var("HP")
        for i in (1, 2, 3):
            g = CliffordElem.gen(i)
            assert g.x_derivative(4) == g.scale(hp * ScalarExpr.const(1) / 2)
        assert CliffordElem.gen(4).x_derivative(4) == CliffordElem.zero()

    def test_interior_frame_is_constant(self):
        for i in range(1, 5):
            g = CliffordElem.gen(i)
            assert (g.x_derivative(4, scale_frame=False)
                    == CliffordElem.zero())

    def test_c_df_spatial_derivative(self):
        cdf = CliffordElem.c_df()
        d = cdf.x_derivative(1, scale_frame=False)
        expected = CliffordElem(
            {(k,): ScalarExpr.var(f"FI{k}").x_derivative(1)
             for k in range(1, 5)})
        assert d == expected

    def test_xi_derivative_of_c_xi_prime(self):
        cxp = CliffordElem.c_xi_prime()
        for i in (1, 2, 3):
            assert cxp.xi_derivative(i) == CliffordElem.gen(i)

    def test_leibniz_random(self):
        rng = random.Random(41)
        cxp = CliffordElem.c_xi_prime()
        for _ in range(50):
            a = rand_elem(rng)
            lhs = (a * cxp).xi_derivative(2)
            rhs = (a.xi_derivative(2) * cxp + a * cxp.xi_derivative(2))
            assert lhs == rhs

"""Half-plane projection and real-line residue integration.

On-shell symbols are rational in xi_n with poles only at +-i.  pi_plus
retains the principal part at +i (the component analytic in the lower
half-plane); the real-line integral of a decaying rational is 2*pi*i times
the sum of its upper half-plane residues, computed by exact differentiation.
"""

from __future__ import annotations

from typing import Dict

from .clifford import CliffordElem, spin_trace
from .errors import DecayViolation, ShellViolation, UnsupportedPole
from .scalars import GAUSS_I, GaussianRational, PI_SYM, ScalarExpr
from .symbols import ON, BoundarySymbol, XinPoly


class PoleDecomposition:
    """Exact split into principal parts at +-i plus a polynomial part."""

    def __init__(self,
                 principal_plus: Dict[int, CliffordElem],
                 principal_minus: Dict[int, CliffordElem],
                 polynomial_part: XinPoly):
        self.principal_plus = {k: v for k, v in principal_plus.items()
                               if not v.is_zero()}
        self.principal_minus = {k: v for k, v in principal_minus.items()
                                if not v.is_zero()}
        self.polynomial_part = polynomial_part

    def recombine(self) -> BoundarySymbol:
        out = BoundarySymbol.zero(ON)
        for k, elem in self.principal_plus.items():
            out = out + BoundarySymbol.on_shell_term(XinPoly.const(elem), k, 0)
        for k, elem in self.principal_minus.items():
            out = out + BoundarySymbol.on_shell_term(XinPoly.const(elem), 0, k)
        if not self.polynomial_part.is_zero():
            out = out + BoundarySymbol.on_shell_term(self.polynomial_part, 0, 0)
        return out


def _check_on_shell(s: BoundarySymbol):
    if s.shell != ON:
        raise ShellViolation("operation requires an on-shell symbol")
    for poly in s.terms.values():
        for elem in poly.coeffs.values():
            for coeff in elem.terms.values():
                if "XIN" in coeff.free_names():
                    raise UnsupportedPole(
                        "xi_n leaked into a coefficient slot"
                    )


def _gauss_poly_mul(a: Dict[int, GaussianRational],
                    b: Dict[int, GaussianRational]) -> Dict[int, GaussianRational]:
    out: Dict[int, GaussianRational] = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            s = out.get(d, GaussianRational(0)) + ca * cb
            out[d] = s
    return {d: c for d, c in out.items() if not c.is_zero()}


def _denominator_poly(a: int, b: int) -> Dict[int, GaussianRational]:
    out = {0: GaussianRational(1)}
    for _ in range(a):
        out = _gauss_poly_mul(out, {1: GaussianRational(1), 0: -GAUSS_I})
    for _ in range(b):
        out = _gauss_poly_mul(out, {1: GaussianRational(1), 0: GAUSS_I})
    return out


def _poly_divmod(num: XinPoly, den: Dict[int, GaussianRational]):
    """Long division of a Clifford-coefficient polynomial by a monic
    Gaussian-coefficient polynomial."""
    dd = max(den)
    assert den[dd] == GaussianRational(1)
    rem = {d: e for d, e in num.coeffs.items()}
    quo: Dict[int, CliffordElem] = {}
    while rem and max(rem) >= dd:
        d = max(rem)
        lead = rem.pop(d)
        shift = d - dd
        quo[shift] = quo.get(shift, CliffordElem.zero()) + lead
        for dk, ck in den.items():
            if dk == dd:
                continue
            tgt = shift + dk
            delta = lead.scale(ScalarExpr.const(-ck))
            cur = rem.get(tgt, CliffordElem.zero()) + delta
            if cur.is_zero():
                rem.pop(tgt, None)
            else:
                rem[tgt] = cur
    return XinPoly(quo), XinPoly(rem)


def _principal_part(num: XinPoly, order_here: int, order_other: int,
                    pole: GaussianRational,
                    other_pole: GaussianRational) -> Dict[int, CliffordElem]:
    """Principal-part coefficients at `pole` of
    num / ((xi - pole)^order_here (xi - other_pole)^order_other)
    via Taylor expansion: A_k = g^(order_here - k)(pole) / (order_here - k)!
    with g = num / (xi - other_pole)^order_other.
    """
    out: Dict[int, CliffordElem] = {}
    p_num, m = num, order_other
    fact = 1
    for step in range(order_here):
        k = order_here - step
        # evaluate current derivative at the pole
        base = (pole - other_pole) ** m
        val = p_num.eval_at(pole).scale(
            ScalarExpr.const(GaussianRational(1) / base)
        )
        out[k] = val.scale(ScalarExpr.const(GaussianRational(1, 0) / fact))
        # differentiate g once: (P' (xi - q) - m P) / (xi - q)^(m+1)
        shifted = p_num.d_xin().shift(1) + p_num.d_xin().scale(
            ScalarExpr.const(-other_pole)
        )
        p_num = shifted + p_num.scale(ScalarExpr.const(GaussianRational(-m)))
        m += 1
        fact *= step + 1
    return out


def partial_fractions(s: BoundarySymbol) -> PoleDecomposition:
    """Exact decomposition of an on-shell symbol into poles at +-i."""
    _check_on_shell(s)
    s = s.canonical()
    plus: Dict[int, CliffordElem] = {}
    minus: Dict[int, CliffordElem] = {}
    poly_part = XinPoly()
    for (a, b), num in s.terms.items():
        if num.degree() >= a + b and a + b > 0:
            quo, num = _poly_divmod(num, _denominator_poly(a, b))
            poly_part = poly_part + quo
        elif a + b == 0:
            poly_part = poly_part + num
            continue
        i = GAUSS_I
        for k, elem in _principal_part(num, a, b, i, -i).items():
            cur = plus.get(k, CliffordElem.zero()) + elem
            plus[k] = cur
        for k, elem in _principal_part(num, b, a, -i, i).items():
            cur = minus.get(k, CliffordElem.zero()) + elem
            minus[k] = cur
    return PoleDecomposition(plus, minus, poly_part)


def pi_plus(s: BoundarySymbol) -> BoundarySymbol:
    """Principal part at +i; the projection onto functions analytic in the
    lower half-plane.  Idempotent."""
    _check_on_shell(s)
    canon = s.canonical()
    for (a, b), num in canon.terms.items():
        if num.degree() > a + b - 1:
            raise DecayViolation(
                "pi_plus requires deg(num) <= deg(den) - 1"
            )
    dec = partial_fractions(s)
    out = BoundarySymbol.zero(ON)
    for k, elem in dec.principal_plus.items():
        out = out + BoundarySymbol.on_shell_term(XinPoly.const(elem), k, 0,
                                                 xder=s.xder)
    return BoundarySymbol(ON, out.terms, s.xder)


def pi_minus_functional(s: BoundarySymbol) -> CliffordElem:
    """(1/2pi) * integral over the upper contour: the sum of upper residues
    times i."""
    res = _upper_residue(s)
    return res.scale(ScalarExpr.i_unit())


def _upper_residue(s: BoundarySymbol) -> CliffordElem:
    _check_on_shell(s)
    total = CliffordElem.zero()
    for (a, b), num in s.canonical().terms.items():
        if a == 0:
            continue
        parts = _principal_part(num, a, b, GAUSS_I, -GAUSS_I)
        first = parts.get(1)
        if first is not None:
            total = total + first
    return total


def _lower_residue(s: BoundarySymbol) -> CliffordElem:
    _check_on_shell(s)
    total = CliffordElem.zero()
    for (a, b), num in s.canonical().terms.items():
        if b == 0:
            continue
        parts = _principal_part(num, b, a, -GAUSS_I, GAUSS_I)
        first = parts.get(1)
        if first is not None:
            total = total + first
    return total


def _check_decay(s: BoundarySymbol, gap: int = 2):
    for (a, b), num in s.canonical().terms.items():
        if num.degree() > a + b - gap:
            raise DecayViolation(
                f"integrand needs degree gap >= {gap} for convergence"
            )


def line_integral(s: BoundarySymbol) -> ScalarExpr:
    """Integral over the real line of a decaying on-shell rational:
    2*pi*i times the sum of residues in the upper half-plane."""
    _check_decay(s, 2)
    res = _upper_residue(s)
    if set(res.terms) - {()}:
        raise ValueError("line_integral expects a scalar integrand")
    two_pi_i = ScalarExpr.const(2) * PI_SYM * ScalarExpr.i_unit()
    return two_pi_i * res.scalar_part()


def line_integral_lower(s: BoundarySymbol) -> ScalarExpr:
    """Same integral computed by closing the contour below: -2*pi*i times
    the lower residues.  Used as an exactness cross-check."""
    _check_decay(s, 2)
    res = _lower_residue(s)
    if set(res.terms) - {()}:
        raise ValueError("line_integral expects a scalar integrand")
    two_pi_i = ScalarExpr.const(-2) * PI_SYM * ScalarExpr.i_unit()
    return two_pi_i * res.scalar_part()


def trace_symbol(s: BoundarySymbol) -> BoundarySymbol:
    """Apply the spinor trace coefficient-wise, keeping the xi_n structure."""
    return BoundarySymbol(
        s.shell,
        {key: poly.map_coeffs(lambda e: CliffordElem.scalar(spin_trace(e)))
         for key, poly in s.terms.items()},
        s.xder,
    )

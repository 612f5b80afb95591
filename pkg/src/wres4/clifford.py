"""Clifford algebra on four generators with c(e_i)c(e_j) + c(e_j)c(e_i) = -2 delta_ij.

Elements are finite sums of the 16 basis monomials (sorted subsets of
{1,2,3,4}) with ScalarExpr coefficients.  The normalized spinor trace is
4 times the scalar component; every nonempty basis monomial is traceless,
including the volume monomial, as in the irreducible 4x4 representation.
"""

from __future__ import annotations

from typing import Mapping, Tuple

from .scalars import (
    HP,
    ScalarExpr,
    _coerce_scalar,
    fi,
    half,
    xi,
)

Basis = Tuple[int, ...]

N_GENERATORS = 4
TRACE_DIM = 4  # dim of the spinor space, 2^(4/2)


def _basis_mul(a: Basis, b: Basis) -> Tuple[int, Basis]:
    """Multiply two basis monomials; returns (sign, monomial).

    Indices anticommute and each generator squares to -1.
    """
    sign = 1
    out = list(a)
    for g in b:
        # move g left past the tail of `out` to keep indices sorted
        pos = len(out)
        while pos > 0 and out[pos - 1] > g:
            pos -= 1
            sign = -sign
        if pos > 0 and out[pos - 1] == g:
            # c(e_g)^2 = -1; removing the pair costs no extra swaps beyond
            # those already counted
            del out[pos - 1]
            sign = -sign
        else:
            out.insert(pos, g)
    return sign, tuple(out)


class CliffordElem:
    """Sum of Clifford basis monomials with exact scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Basis, ScalarExpr] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                c = _coerce_scalar(c)
                if not c.is_zero():
                    t[tuple(m)] = c
        self.terms = t

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero() -> "CliffordElem":
        return CliffordElem()

    @staticmethod
    def one() -> "CliffordElem":
        return CliffordElem({(): ScalarExpr.one()})

    @staticmethod
    def scalar(c) -> "CliffordElem":
        return CliffordElem({(): _coerce_scalar(c)})

    @staticmethod
    def gen(i: int) -> "CliffordElem":
        if not 1 <= i <= N_GENERATORS:
            raise ValueError("generator index must be 1..4")
        return CliffordElem({(i,): ScalarExpr.one()})

    @staticmethod
    def vector(coeffs) -> "CliffordElem":
        """sum_i coeffs[i-1] * c(e_i)."""
        return CliffordElem({(i,): _coerce_scalar(c)
                             for i, c in enumerate(coeffs, start=1)})

    @staticmethod
    def c_xi_prime() -> "CliffordElem":
        """c(xi') = sum_{i<4} xi_i c(e_i)."""
        return CliffordElem({(i,): xi(i) for i in (1, 2, 3)})

    @staticmethod
    def c_dxn() -> "CliffordElem":
        return CliffordElem.gen(4)

    @staticmethod
    def c_df() -> "CliffordElem":
        """c(df) = sum_j (d_j f) c(e_j), all four directions."""
        return CliffordElem({(j,): ScalarExpr.var(fi(j)) for j in range(1, 5)})

    # -- algebra -----------------------------------------------------------
    def __add__(self, other: "CliffordElem") -> "CliffordElem":
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(m, None)
            else:
                t[m] = s
        out = CliffordElem.__new__(CliffordElem)
        out.terms = t
        return out

    def __neg__(self) -> "CliffordElem":
        out = CliffordElem.__new__(CliffordElem)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "CliffordElem") -> "CliffordElem":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordElem):
            return cmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    def scale(self, c) -> "CliffordElem":
        c = _coerce_scalar(c)
        if c.is_zero():
            return CliffordElem.zero()
        out = CliffordElem.__new__(CliffordElem)
        out.terms = {m: c * v for m, v in self.terms.items()}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self) -> ScalarExpr:
        return self.terms.get((), ScalarExpr.zero())

    def __eq__(self, other):
        if isinstance(other, CliffordElem):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "CliffordElem<0>"
        bits = []
        for m in sorted(self.terms):
            label = "1" if not m else "".join(f"c{i}" for i in m)
            bits.append(f"({self.terms[m]!r})*{label}")
        return "CliffordElem<" + " + ".join(bits) + ">"

    # -- calculus ----------------------------------------------------------
    def map_scalars(self, fn) -> "CliffordElem":
        return CliffordElem({m: fn(c) for m, c in self.terms.items()})

    def substitute(self, binding) -> "CliffordElem":
        return self.map_scalars(lambda c: c.substitute(binding))

    def xi_derivative(self, i: int) -> "CliffordElem":
        return self.map_scalars(lambda c: c.xi_derivative(i))

    def x_derivative(self, j: int, scale_frame: bool = True) -> "CliffordElem":
        """Spatial derivative at the base point.

        With scale_frame, the boundary collar rule applies: the tangential
        coframe scales, d_{x_n} c(e_i) = (h'(0)/2) c(e_i) for i < 4, while
        c(e_4) is constant.  Interior normal coordinates pass
        scale_frame=False (all frame derivatives vanish).
        """
        out = CliffordElem.zero()
        for m, c in self.terms.items():
            out = out + CliffordElem({m: c.x_derivative(j)})
            if scale_frame and j == 4:
                n_tangential = sum(1 for i in m if i < 4)
                if n_tangential:
                    out = out + CliffordElem({m: c * half() * HP * n_tangential})
        return out


def cmul(a: CliffordElem, b: CliffordElem) -> CliffordElem:
    t: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = _basis_mul(ma, mb)
            c = ca * cb
            if sign < 0:
                c = -c
            s = t.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(m, None)
            else:
                t[m] = s
    out = CliffordElem.__new__(CliffordElem)
    out.terms = t
    return out


def spin_trace(a: CliffordElem) -> ScalarExpr:
    """Normalized spinor trace: 4 x (scalar component)."""
    return ScalarExpr.const(TRACE_DIM) * a.scalar_part()

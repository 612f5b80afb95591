"""Serialization: deterministic printing and bit-exact round trips."""

import random

import pytest

from wres4 import sexpr
from wres4.clifford import CliffordElem
from wres4.scalars import GaussianRational, ScalarExpr
from wres4.symbols import build_sigma, derive, restrict_on_shell


def rand_scalar(rng):
    out = ScalarExpr.zero()
    for _ in range(4):
        term = ScalarExpr.const(GaussianRational(rng.randint(-9, 9),
                                                 rng.randint(-9, 9)))
        for name in ("HP", "FI4", "XI1", "XI3", "S"):
            term = term * ScalarExpr.var(name, rng.randint(0, 2))
        out = out + term
    return out * ScalarExpr.f_inverse(rng.randint(0, 3))


class TestRoundTrip:
    def test_scalar_random(self):
        rng = random.Random(59)
        for _ in range(100):
            e = rand_scalar(rng)
            text = sexpr.dumps(e)
            assert sexpr.loads(text) == e
            assert sexpr.dumps(sexpr.loads(text)) == text

    def test_clifford(self):
        rng = random.Random(61)
        for _ in range(50):
            elem = CliffordElem.zero()
            for _ in range(3):
                term = CliffordElem.scalar(rand_scalar(rng))
                for _ in range(rng.randint(0, 3)):
                    term = term * CliffordElem.gen(rng.randint(1, 4))
                elem = elem + term
            text = sexpr.dumps(elem)
            assert sexpr.loads(text) == elem
            assert sexpr.dumps(sexpr.loads(text)) == text

    def test_symbols_off_and_on_shell(self):
        for sym in (build_sigma("Dtilde", -1),
                    build_sigma("D", -2),
                    restrict_on_shell(build_sigma("Dtilde", -1)),
                    derive(restrict_on_shell(build_sigma("D", -1)), "xi_n")):
            text = sexpr.dumps(sym)
            assert sexpr.loads(text) == sym
            assert sexpr.dumps(sexpr.loads(text)) == text

    def test_printing_is_construction_independent(self):
        a = ScalarExpr.var("XI1") + ScalarExpr.var("HP")
        b = ScalarExpr.var("HP") + ScalarExpr.var("XI1")
        assert sexpr.dumps(a) == sexpr.dumps(b)

    def test_zero_and_constants(self):
        assert sexpr.dumps(ScalarExpr.zero()) == "0"
        assert sexpr.loads("0") == ScalarExpr.zero()
        assert sexpr.loads("i") == ScalarExpr.i_unit()
        assert sexpr.loads("(/ -3 4)") == ScalarExpr.const(
            GaussianRational(-3)) / 4


class TestParseErrors:
    def test_unbalanced(self):
        with pytest.raises(ValueError):
            sexpr.parse("(+ 1 2")

    def test_trailing_tokens(self):
        with pytest.raises(ValueError):
            sexpr.parse("1 2")

    def test_unknown_atom(self):
        with pytest.raises(ValueError):
            sexpr.loads("BOGUS")

    def test_unknown_head(self):
        with pytest.raises(ValueError):
            sexpr.loads("(% 1 2)")

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            sexpr.dumps(3.14)

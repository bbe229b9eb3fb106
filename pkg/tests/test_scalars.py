"""Field arithmetic, Laurent polynomials, and their text syntax."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clpa.errors import DivisionByZero, FieldMismatch, ParseError, PeriodMismatch
from clpa.scalars import (
    QQ,
    LaurentPoly,
    PFElement,
    PrimeField,
    field_from_spec,
    laurent_involution,
    laurent_mul,
    parse_laurent,
    parse_scalar,
    scalar_arith,
)

GF5 = PrimeField(5)
GF2 = PrimeField(2)


class TestScalarArith:
    def test_rational_add(self):
        assert scalar_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)

    def test_gf5_mul(self):
        assert scalar_arith(PFElement(3, 5), PFElement(4, 5), "mul") == PFElement(2, 5)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            scalar_arith(Fraction(1, 2), Fraction(0), "div")
        with pytest.raises(DivisionByZero):
            PFElement(1, 5) / PFElement(0, 5)

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldMismatch):
            scalar_arith(Fraction(1), PFElement(1, 5), "add")
        with pytest.raises(FieldMismatch):
            PFElement(1, 5) + PFElement(1, 7)

    def test_reduced_representation(self):
        # Fraction keeps rationals reduced with positive denominators
        a = scalar_arith(Fraction(2, 4), Fraction(1, 2), "add")
        assert (a.numerator, a.denominator) == (1, 1)

    def test_prime_validation(self):
        with pytest.raises(ValueError):
            PrimeField(6)
        with pytest.raises(ValueError):
            PrimeField(2**31 + 11)

    def test_field_from_spec(self):
        assert field_from_spec("q") == QQ
        assert field_from_spec("gf:7") == PrimeField(7)
        with pytest.raises(ValueError):
            field_from_spec("gf:otter")


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
gf5_elements = st.integers(min_value=0, max_value=4).map(lambda n: PFElement(n, 5))


class TestFieldAxioms:
    @given(a=rationals, b=rationals, c=rationals)
    def test_rational_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0

    @given(a=gf5_elements, b=gf5_elements, c=gf5_elements)
    def test_gf5_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a / a == PFElement(1, 5)


def lp(period, coeffs, field=QQ):
    mapped = {k: field.from_int(v) if isinstance(v, int) else v
              for k, v in coeffs.items()}
    return LaurentPoly.from_dict(period, mapped, field)


class TestLaurent:
    def test_inverse_pair(self):
        t = lp(1, {1: 1})
        tinv = lp(1, {-1: 1})
        assert laurent_mul(t, tinv) == lp(1, {0: 1})

    def test_one_plus_t_times_one_minus_t(self):
        assert laurent_mul(lp(1, {0: 1, 1: 1}), lp(1, {0: 1, 1: -1})) == lp(1, {0: 1, 2: -1})

    def test_period_mismatch(self):
        with pytest.raises(PeriodMismatch):
            laurent_mul(lp(1, {1: 1}), lp(2, {1: 1}))

    def test_involution_reverses_exponents(self):
        assert laurent_involution(lp(1, {1: 1})) == lp(1, {-1: 1})
        assert laurent_involution(lp(1, {0: 2, 1: 3})) == lp(1, {0: 2, -1: 3})

    def test_involution_order_two(self):
        f = lp(1, {0: 1, 1: 1, 3: -1})
        assert laurent_involution(laurent_involution(f)) == f

    def test_degree_of_homogeneous_term_scales_with_period(self):
        f = lp(3, {2: 5})
        assert set(f.degree_components()) == {6}

    def test_zero_coefficients_dropped(self):
        f = lp(1, {0: 1}) - lp(1, {0: 1})
        assert f.is_zero() and f.terms == ()


laurent_polys = st.builds(
    lambda coeffs: lp(2, coeffs),
    st.dictionaries(st.integers(min_value=-4, max_value=4),
                    st.integers(min_value=-5, max_value=5), max_size=4),
)


class TestLaurentProperties:
    @settings(max_examples=60)
    @given(f=laurent_polys, g=laurent_polys)
    def test_involution_antimultiplicative(self, f, g):
        assert laurent_involution(f * g) == laurent_involution(g) * laurent_involution(f)

    @settings(max_examples=60)
    @given(f=laurent_polys, g=laurent_polys)
    def test_mul_against_evaluation_oracle(self, f, g):
        # independent check: Laurent polynomials are functions on Q \ {0}
        for point in (Fraction(2), Fraction(-1), Fraction(1, 3)):
            fg = f * g
            assert _eval(fg, point) == _eval(f, point) * _eval(g, point)

    @settings(max_examples=60)
    @given(f=laurent_polys, g=laurent_polys)
    def test_convolution_coefficient_rule(self, f, g):
        fg = f * g
        exponents = {k for k, _ in f.terms} | {k for k, _ in g.terms}
        for d in range(-8, 9):
            expected = sum(
                (f.coeff(k) * g.coeff(d - k) for k in exponents),
                start=Fraction(0),
            )
            assert fg.coeff(d) == expected


def _eval(f, x):
    return sum((a * x**k for k, a in f.terms), start=Fraction(0))


class TestTextSyntax:
    def test_parse_scalars(self):
        assert parse_scalar("7", QQ) == Fraction(7)
        assert parse_scalar("-3/6", QQ) == Fraction(-1, 2)
        assert parse_scalar("3 mod 5", GF5) == PFElement(3, 5)
        with pytest.raises(ParseError):
            parse_scalar("3 mod 5", QQ)
        with pytest.raises(ParseError):
            parse_scalar("x", QQ)

    def test_parse_laurent_round_trip(self):
        f = parse_laurent("3*t^-2 + 1 + t^5", 1, QQ)
        assert f == lp(1, {-2: 3, 0: 1, 5: 1})
        assert parse_laurent(str(f), 1, QQ) == f

    def test_parse_laurent_signs(self):
        assert parse_laurent("-t + 2", 2, QQ) == lp(2, {1: -1, 0: 2})

    def test_parse_laurent_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_laurent("t^", 1, QQ)
        with pytest.raises(ParseError):
            parse_laurent("", 1, QQ)

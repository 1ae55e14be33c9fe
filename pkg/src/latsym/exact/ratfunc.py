"""Reduced rational functions in lambda."""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly, as_poly, poly_gcd, _frac


class RationalFunction:
    """num/den with gcd(num, den) = 1 and a monic denominator.

    The canonical form makes ``==`` an exact structural comparison.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = as_poly(num)
        den = Poly.const(1) if den is None else as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lead
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, a) -> "RationalFunction":
        return cls(Poly.const(a), _reduced=True)

    # queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def in_w_pi(self) -> bool:
        """Numerator degree does not exceed the denominator degree."""
        return self.num.degree <= self.den.degree

    def __call__(self, x):
        x = _frac(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at λ = {x}")
        return self.num(x) / d

    # arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "RationalFunction":
        other = as_ratfunc(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-as_ratfunc(other))

    def __rsub__(self, other) -> "RationalFunction":
        return as_ratfunc(other) - self

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalFunction.const(0)
            return RationalFunction(self.num * other, self.den, _reduced=True)
        other = as_ratfunc(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = as_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return as_ratfunc(other) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == as_ratfunc(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # rendering -----------------------------------------------------------
    def integer_parts(self) -> tuple[Poly, Poly]:
        """Numerator and denominator scaled to coprime integer coefficients.

        The denominator's leading coefficient is positive; the overall
        rational factor is pushed into the numerator.
        """
        cn, pn = self.num.integer_form()
        cd, pd = self.den.integer_form()
        ratio = Fraction(cn) / Fraction(cd) if cn else Fraction(0)
        num = pn * ratio.numerator if cn else Poly()
        den = pd * ratio.denominator
        return num, den

    def to_str(self, latex: bool = False) -> str:
        num, den = self.integer_parts()
        var = r"\lambda" if latex else "λ"
        ns = num.to_str(var, latex)
        if den == Poly.const(1):
            return ns
        ds = den.to_str(var, latex)
        if latex:
            return rf"\frac{{{ns}}}{{{ds}}}"
        if num.degree > 0 and len([a for a in num.c if a]) > 1:
            ns = f"({ns})"
        if len([a for a in den.c if a]) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_str()})"


def as_ratfunc(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x, _reduced=True)
    return RationalFunction.const(_frac(x))

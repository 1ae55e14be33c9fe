"""Dense univariate polynomials in lambda over the rationals.

Coefficients are stored lowest degree first and trailing zeros are always
stripped, so the zero polynomial is the empty tuple and equality is plain
structural equality.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm, gcd
from numbers import Rational
from typing import Iterable, Sequence

VAR = "λ"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        # floats are accepted only when they are exact binary fractions the
        # user meant literally; callers parsing text should pass strings
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c: tuple[Fraction, ...] = tuple(c)

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, a) -> "Poly":
        return cls((a,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, a=1) -> "Poly":
        return cls([0] * k + [a])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    # basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return len(self.c) <= 1

    @property
    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        lc = self.c[-1]
        if lc == 1:
            return self
        return Poly(a / lc for a in self.c)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def deriv(self) -> "Poly":
        return Poly(k * a for k, a in enumerate(self.c) if k)

    def compose_shift(self, t) -> "Poly":
        """Return p(x + t) via repeated synthetic division (Taylor shift)."""
        t = _frac(t)
        out = list(self.c)
        n = len(out)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                out[j] += t * out[j + 1]
        return Poly(out)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = as_poly(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-a for a in self.c)

    def __sub__(self, other) -> "Poly":
        return self + (-as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            s = _frac(other)
            return Poly(a * s for a in self.c) if s else Poly()
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = other.degree
        lb = other.lead
        if len(r) - 1 < db:
            return Poly(), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            f = r[k + db] / lb
            q[k] = f
            if f:
                for j, y in enumerate(other.c):
                    r[k + j] -= f * y
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """True if self divides other."""
        return (other % self).is_zero()

    # comparisons / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        try:
            return self.c == Poly.const(other).c
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __bool__(self) -> bool:
        return bool(self.c)

    # rendering ----------------------------------------------------------
    def integer_form(self) -> tuple[int, "Poly"]:
        """Split off the rational content: self == content * primitive.

        The primitive part has coprime integer coefficients and a positive
        leading coefficient.
        """
        if not self.c:
            return 0, self
        den = lcm(*(a.denominator for a in self.c))
        ints = [int(a * den) for a in self.c]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly(v // g for v in ints)

    def to_str(self, var: str = VAR, latex: bool = False) -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = -a if a < 0 else a
            if k == 0:
                body = _fmt_scalar(mag, latex)
            else:
                power = var if k == 1 else (f"{var}^{{{k}}}" if latex else f"{var}^{k}")
                body = power if mag == 1 else f"{_fmt_scalar(mag, latex)}{power}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({[str(a) for a in self.c]})"


def _fmt_scalar(a: Fraction, latex: bool) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    if latex:
        return rf"\tfrac{{{a.numerator}}}{{{a.denominator}}}"
    return f"({a.numerator}/{a.denominator})"


def as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is the zero polynomial."""
    p, q = as_poly(p), as_poly(q)
    while not q.is_zero():
        p, q = q, p % q
        if not q.is_zero():
            q = q.monic()
    return p.monic()


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly()
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def exact_multiplicity_structure(p: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition p = c * prod f_i**m_i (Yun's algorithm).

    Returns the non-constant monic squarefree factors with their
    multiplicities, ordered by multiplicity. Each factor may still carry
    several distinct roots; ``f.degree`` counts them.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    out: list[tuple[Poly, int]] = []
    a0 = p.monic()
    if a0.degree == 0:
        return out
    b = a0.deriv()
    a = poly_gcd(a0, b)
    c = a0.exact_div(a)
    d = b.exact_div(a) - c.deriv()
    i = 1
    while c.degree > 0:
        f = poly_gcd(c, d)
        if f.degree > 0:
            out.append((f, i))
        c = c.exact_div(f)
        d = d.exact_div(f) - c.deriv()
        i += 1
    assert sum(m * f.degree for f, m in out) == p.degree
    return out


def roots_with_multiplicity(structure: Sequence[tuple[Poly, int]]) -> list[tuple[complex, int]]:
    """Numeric roots of a squarefree decomposition, for reporting only."""
    import numpy as np

    out = []
    for f, m in structure:
        coeffs = [float(a) for a in reversed(f.c)]
        for r in np.roots(coeffs):
            out.append((complex(r), m))
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def count_roots_at_least(structure: Sequence[tuple[Poly, int]], mult: int) -> int:
    """Number of distinct roots whose multiplicity is at least ``mult``."""
    return sum(f.degree for f, m in structure if m >= mult)

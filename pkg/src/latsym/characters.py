"""Exact character tables of C_n and D_n.

Character values live in Q(ζ_n). They are held as Laurent sums
Σ c_k ζ^k and compared after reduction modulo the cyclotomic polynomial
Φ_n, so orthogonality and multiplicities are checked with exact equality.

Abstract group elements are pairs (e, j) standing for s^e r^j, with r a
rotation of order n and s a reflection, s r s = r^-1.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Poly


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """Φ_n(x) from x^n - 1 = Π_{d | n} Φ_d(x)."""
    p = Poly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


class Cyclo:
    """Element Σ c_k ζ_n^k of the cyclotomic field Q(ζ_n)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        t: dict[int, Fraction] = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                kk = k % n
                t[kk] = t.get(kk, Fraction(0)) + c
        self.terms = {k: c for k, c in t.items() if c}

    @classmethod
    def rational(cls, n: int, a) -> "Cyclo":
        return cls(n, {0: a})

    @classmethod
    def root(cls, n: int, k: int) -> "Cyclo":
        return cls(n, {k: 1})

    def __add__(self, other: "Cyclo") -> "Cyclo":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + c
        return Cyclo(self.n, t)

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        return self + other.scale(-1)

    def __mul__(self, other: "Cyclo") -> "Cyclo":
        t: dict[int, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                t[a + b] = t.get(a + b, Fraction(0)) + x * y
        return Cyclo(self.n, t)

    def scale(self, a) -> "Cyclo":
        return Cyclo(self.n, {k: c * Fraction(a) for k, c in self.terms.items()})

    def conj(self) -> "Cyclo":
        return Cyclo(self.n, {-k: c for k, c in self.terms.items()})

    def reduced(self) -> Poly:
        p = Poly([self.terms.get(k, 0) for k in range(self.n)])
        return p % cyclotomic(self.n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(self.n, other)
        return isinstance(other, Cyclo) and self.n == other.n and self.reduced() == other.reduced()

    def __hash__(self):
        return hash((self.n, self.reduced()))

    def rational_value(self) -> Fraction:
        r = self.reduced()
        if r.degree > 0:
            raise ValueError(f"not rational: {self}")
        return r.coeff(0)

    def __complex__(self) -> complex:
        return sum(complex(c) * cmath.exp(2j * cmath.pi * k / self.n) for k, c in self.terms.items()) + 0j

    def __repr__(self) -> str:
        return f"Cyclo({self.n}, {self.reduced()})"


def compose(n: int, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """(s^e1 r^j1)(s^e2 r^j2) = s^(e1+e2) r^((-1)^e2 j1 + j2)."""
    e1, j1 = a
    e2, j2 = b
    return ((e1 + e2) % 2, ((-j1 if e2 else j1) + j2) % n)


def abstract_elements(kind: str, n: int) -> list[tuple[int, int]]:
    rot = [(0, j) for j in range(n)]
    return rot if kind == "cyclic" else rot + [(1, j) for j in range(n)]


def abstract_inverse(n: int, g: tuple[int, int]) -> tuple[int, int]:
    e, j = g
    return (1, j) if e else (0, (-j) % n)


def abstract_classes(kind: str, n: int) -> list[tuple[tuple[int, int], ...]]:
    elems = abstract_elements(kind, n)
    seen: set = set()
    out = []
    for g in elems:
        if g in seen:
            continue
        cls = sorted({compose(n, compose(n, h, g), abstract_inverse(n, h)) for h in elems})
        seen.update(cls)
        out.append(tuple(cls))
    return out


@dataclass(frozen=True)
class Irrep:
    label: str
    dim: int
    kind: str
    n: int
    h: int = 0  # frequency for cyclic / two-dimensional irreps

    def character(self, g: tuple[int, int]) -> Cyclo:
        e, j = g
        n = self.n
        if self.kind == "cyclic":
            return Cyclo.root(n, self.h * j)
        if self.label == "A1":
            return Cyclo.rational(n, 1)
        if self.label == "A2":
            return Cyclo.rational(n, -1 if e else 1)
        if self.label in ("B1", "B2"):
            sign = -1 if j % 2 else 1
            if e and self.label == "B2":
                sign = -sign
            return Cyclo.rational(n, sign)
        # two-dimensional E_h
        if e:
            return Cyclo(n)
        return Cyclo.root(n, self.h * j) + Cyclo.root(n, -self.h * j)


@dataclass(frozen=True)
class IrrepTable:
    kind: str  # cyclic | dihedral
    n: int
    irreps: tuple[Irrep, ...]
    classes: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def group_order(self) -> int:
        return self.n if self.kind == "cyclic" else 2 * self.n

    def values(self, irrep: Irrep) -> list[Cyclo]:
        return [irrep.character(c[0]) for c in self.classes]

    def inner(self, f, g) -> Cyclo:
        """(1/|G|) Σ_classes |C| conj(f(C)) g(C) for class functions on representatives."""
        tot = Cyclo(self.n)
        for c in self.classes:
            tot = tot + (f(c[0]).conj() * g(c[0])).scale(len(c))
        return tot.scale(Fraction(1, self.group_order))

    def check(self) -> None:
        """Assert Σ d² = |G|, class constancy and exact orthonormality."""
        if sum(r.dim ** 2 for r in self.irreps) != self.group_order:
            raise AssertionError("sum of squared irrep dimensions differs from group order")
        if len(self.irreps) != len(self.classes):
            raise AssertionError("number of irreps differs from number of classes")
        for r in self.irreps:
            for c in self.classes:
                v0 = r.character(c[0])
                if any(r.character(g) != v0 for g in c[1:]):
                    raise AssertionError(f"{r.label} is not a class function")
        for a in self.irreps:
            for b in self.irreps:
                want = 1 if a == b else 0
                if self.inner(a.character, b.character) != want:
                    raise AssertionError(f"<{a.label}, {b.label}> != {want}")


@lru_cache(maxsize=None)
def irrep_table(kind: str, n: int) -> IrrepTable:
    if kind == "cyclic":
        irreps = tuple(Irrep(f"X{h}", 1, kind, n, h) for h in range(n))
    elif kind == "dihedral":
        if n < 2:
            raise ValueError("dihedral table needs n >= 2")
        ir = [Irrep("A1", 1, kind, n), Irrep("A2", 1, kind, n)]
        if n % 2 == 0:
            ir += [Irrep("B1", 1, kind, n), Irrep("B2", 1, kind, n)]
        ir += [Irrep(f"E{h}", 2, kind, n, h) for h in range(1, (n - 1) // 2 + 1)]
        irreps = tuple(ir)
    else:
        raise ValueError(f"no closed-form character table for {kind}")
    return IrrepTable(kind, n, irreps, tuple(abstract_classes(kind, n)))


__all__ = ["Cyclo", "Irrep", "IrrepTable", "abstract_classes", "compose", "cyclotomic", "irrep_table"]

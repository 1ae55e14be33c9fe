"""Permutations, finite permutation groups and an exact symmetry search.

A permutation of m points is stored as the tuple of 0-based images.
Composition follows function notation: (p * q)(i) = p(q(i)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Hashable, Iterable, Sequence

from .errors import PreconditionError
from .exact import ExactMatrix


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        im = tuple(int(i) for i in images)
        if sorted(im) != list(range(len(im))):
            raise ValueError(f"not a permutation: {im}")
        self.images = im

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(m))

    @classmethod
    def from_cycles(cls, m: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        im = list(range(m))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                im[a] = b
        return cls(im)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(self.images[j] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        out = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.degree else 1

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def matrix(self) -> ExactMatrix:
        return ExactMatrix.from_permutation(self.images)

    def cycle_str(self, labels: Sequence | None = None) -> str:
        labels = labels if labels is not None else [str(i + 1) for i in range(self.degree)]
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(labels[i]) for i in c) + ")" for c in cyc)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class GroupTag:
    kind: str  # cyclic | dihedral | other_abelian | other_nonabelian
    n: int | None = None

    def __str__(self) -> str:
        return f"{self.kind}({self.n})" if self.n is not None else self.kind


def closure(gens: Iterable[Permutation], m: int) -> list[Permutation]:
    ident = Permutation.identity(m)
    elems = {ident}
    frontier = [ident]
    gens = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(elems)


def classify_group(elements: Sequence[Permutation]) -> GroupTag:
    """Cyclic if some element has order |G|; dihedral(n) if |G| = 2n with
    r of order n and an involution s outside <r> satisfying s r s = r^-1;
    otherwise abelian / non-abelian by pairwise commutation."""
    elements = list(elements)
    order = len(elements)
    orders = {g: g.order() for g in elements}
    if any(o == order for o in orders.values()):
        return GroupTag("cyclic", order)
    if order % 2 == 0:
        n = order // 2
        for r in (g for g in elements if orders[g] == n):
            rot = {r ** k for k in range(n)}
            rinv = r.inverse()
            for s in elements:
                if orders[s] == 2 and s not in rot and s * r * s == rinv:
                    return GroupTag("dihedral", n)
    abelian = all(a * b == b * a for a in elements for b in elements)
    return GroupTag("other_abelian" if abelian else "other_nonabelian")


def dihedral_generators(elements: Sequence[Permutation], n: int) -> tuple[Permutation, Permutation]:
    """(r, s) with r of order n, s an involution outside <r>, s r s = r^-1."""
    for r in sorted(g for g in elements if g.order() == n):
        rot = {r ** k for k in range(n)}
        rinv = r.inverse()
        for s in sorted(elements):
            if s.order() == 2 and s not in rot and s * r * s == rinv:
                return r, s
    raise ValueError(f"not a dihedral group of order {2 * n}")


@dataclass(frozen=True)
class SymmetryGroup:
    """A closed set of permutations of ``points`` (1-based site labels)."""

    elements: tuple[Permutation, ...]
    points: tuple[int, ...]
    generators: tuple[Permutation, ...] = field(default=())
    tag: GroupTag = field(default=GroupTag("cyclic", 1))
    certificate: dict = field(default_factory=dict)

    @classmethod
    def from_elements(cls, elements: Iterable[Permutation], points: Sequence[int], certificate=None) -> "SymmetryGroup":
        elems = sorted(set(elements))
        m = len(points)
        if not elems:
            elems = [Permutation.identity(m)]
        gens: list[Permutation] = []
        span = {Permutation.identity(m)}
        for g in elems:
            if g not in span:
                gens.append(g)
                span = set(closure(gens, m))
        return cls(tuple(elems), tuple(points), tuple(gens), classify_group(elems), dict(certificate or {}))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return len(self.points)

    def is_closed(self) -> bool:
        s = set(self.elements)
        ident = Permutation.identity(self.degree)
        return ident in s and all(a * b in s for a in s for b in s) and all(a.inverse() in s for a in s)

    def conjugacy_classes(self) -> list[tuple[Permutation, ...]]:
        seen = set()
        out = []
        for g in self.elements:
            if g in seen:
                continue
            cls_ = sorted({h * g * h.inverse() for h in self.elements})
            seen.update(cls_)
            out.append(tuple(cls_))
        return out

    def site_images(self, g: Permutation) -> list[int]:
        return [self.points[g(i)] for i in range(self.degree)]

    def to_data(self) -> dict:
        return {
            "order": self.order,
            "tag": str(self.tag),
            "points": list(self.points),
            "generators": [self.site_images(g) for g in self.generators],
            "generator_cycles": [g.cycle_str(self.points) for g in self.generators],
            "certificate": self.certificate,
        }


# exact symmetry search ------------------------------------------------------

def _intern(keys: Sequence[Sequence[Hashable]]) -> list[list[int]]:
    ids: dict = {}
    return [[ids.setdefault(k, len(ids)) for k in row] for row in keys]


def refine_colors(keys: Sequence[Sequence[int]], init: Sequence[Hashable] | None = None) -> list[int]:
    """Stable colouring: colour(i) determined by the multiset of
    (key(i,j), key(j,i), colour(j)). Points in different classes can never
    be exchanged by a key-preserving permutation."""
    m = len(keys)
    base = [(keys[i][i], init[i] if init is not None else 0) for i in range(m)]
    ids: dict = {}
    colors = [ids.setdefault(b, len(ids)) for b in base]
    while True:
        sig = [
            (colors[i], tuple(sorted((keys[i][j], keys[j][i], colors[j]) for j in range(m) if j != i)))
            for i in range(m)
        ]
        ids = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def search_permutations(keys: Sequence[Sequence[Hashable]], *, limit: int | None = 200_000,
                        init: Sequence[Hashable] | None = None,
                        accept: Callable[[Permutation], bool] | None = None) -> list[Permutation]:
    """All permutations p with keys[p(i)][p(j)] == keys[i][j] for all i, j.

    Backtracking over colour-refined candidate classes with pairwise
    consistency checks at every level; results are exact.
    """
    k = _intern(keys)
    m = len(k)
    colors = refine_colors(k, init)
    cls: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        cls.setdefault(c, []).append(i)
    order = sorted(range(m), key=lambda i: (len(cls[colors[i]]), i))
    image = [-1] * m
    used = [False] * m
    out: list[Permutation] = []

    def rec(t: int) -> None:
        if t == m:
            p = Permutation(image)
            if accept is None or accept(p):
                out.append(p)
                if limit is not None and len(out) > limit:
                    raise PreconditionError(f"symmetry group exceeds {limit} elements; refusing to enumerate")
            return
        i = order[t]
        for cand in cls[colors[i]]:
            if used[cand]:
                continue
            ok = k[cand][cand] == k[i][i]
            if ok:
                for s in range(t):
                    j = order[s]
                    pj = image[j]
                    if k[cand][pj] != k[i][j] or k[pj][cand] != k[j][i]:
                        ok = False
                        break
            if ok:
                image[i] = cand
                used[cand] = True
                rec(t + 1)
                used[cand] = False
                image[i] = -1

    rec(0)
    return sorted(out)


def all_permutations(m: int) -> Iterable[Permutation]:
    """Brute-force enumeration; used by tests as an oracle for tiny m."""
    from itertools import permutations

    for p in permutations(range(m)):
        yield Permutation(p)


__all__ = [
    "GroupTag",
    "Permutation",
    "SymmetryGroup",
    "all_permutations",
    "classify_group",
    "closure",
    "dihedral_generators",
    "refine_colors",
    "search_permutations",
]

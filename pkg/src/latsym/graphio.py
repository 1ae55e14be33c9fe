"""Line-oriented graph documents and extension plan files.

Graph document grammar (one statement per line, ``#`` starts a comment)::

    size N                 # required, first statement
    hermitian true|false   # optional, default false
    label I NAME           # optional site label
    meta KEY VALUE...      # optional metadata, VALUE runs to end of line
    onsite I VALUE         # diagonal entry H[I,I]
    I J VALUE              # off-diagonal entry H[I,J] (1-based)

Values are exact rationals: integers, ``p/q`` or finite decimals. With
``hermitian true`` an entry I J also sets J I; giving both with different
values is an error.

Plan files list the couplings of one new site::

    onsite VALUE
    coupling VALUE SITE SITE ...
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .exact import ExactMatrix, Hamiltonian


def parse_value(tok: str, where: str = "") -> Fraction:
    try:
        v = Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}malformed value {tok!r}") from exc
    return v


def _index(tok: str, n: int, where: str) -> int:
    try:
        i = int(tok)
    except ValueError as exc:
        raise InputError(f"{where}site index {tok!r} is not an integer") from exc
    if not 1 <= i <= n:
        raise InputError(f"{where}site index {i} out of range 1..{n}")
    return i


@dataclass
class GraphDocument:
    hamiltonian: Hamiltonian
    hermitian: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.hamiltonian.rows


def parse_graph(text: str, source: str = "<input>") -> GraphDocument:
    n = None
    herm = False
    labels: dict[int, str] = {}
    meta: dict[str, str] = {}
    entries: dict[tuple[int, int], Fraction] = {}
    given: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}: "
        tok = line.split()
        key = tok[0].lower()
        if n is None:
            if key != "size":
                raise InputError(f"{where}expected 'size N' before any other statement")
            if len(tok) == 3 and tok[1] != tok[2]:
                raise InputError(f"{where}matrix must be square, got {tok[1]}x{tok[2]}")
            if len(tok) not in (2, 3):
                raise InputError(f"{where}malformed size statement")
            try:
                n = int(tok[1])
            except ValueError as exc:
                raise InputError(f"{where}size must be an integer") from exc
            if n < 1:
                raise InputError(f"{where}size must be positive")
            continue
        if key == "size":
            raise InputError(f"{where}repeated size statement")
        if key == "hermitian":
            if len(tok) != 2 or tok[1].lower() not in ("true", "false"):
                raise InputError(f"{where}hermitian must be true or false")
            herm = tok[1].lower() == "true"
        elif key == "label":
            if len(tok) != 3:
                raise InputError(f"{where}label needs an index and a name")
            labels[_index(tok[1], n, where)] = tok[2]
        elif key == "meta":
            if len(tok) < 2:
                raise InputError(f"{where}meta needs a key")
            meta[tok[1]] = line.split(None, 2)[2] if len(tok) > 2 else ""
        elif key == "onsite":
            if len(tok) != 3:
                raise InputError(f"{where}onsite needs an index and a value")
            i = _index(tok[1], n, where)
            entries[(i, i)] = parse_value(tok[2], where)
            given[(i, i)] = lineno
        else:
            if len(tok) != 3:
                raise InputError(f"{where}expected 'I J VALUE', got {line!r}")
            i, j = _index(tok[0], n, where), _index(tok[1], n, where)
            if (i, j) in given:
                raise InputError(f"{where}entry ({i},{j}) already given on line {given[(i, j)]}")
            entries[(i, j)] = parse_value(tok[2], where)
            given[(i, j)] = lineno
    if n is None:
        raise InputError(f"{source}: empty document (missing 'size N')")
    if herm:
        for (i, j), v in list(entries.items()):
            if i == j:
                continue
            w = entries.get((j, i))
            if w is not None and w != v:
                raise InputError(f"{source}: hermitian flag set but H[{i},{j}] = {v} != H[{j},{i}] = {w}")
            entries[(j, i)] = v
    ent = [entries.get((i, j), Fraction(0)) for i in range(1, n + 1) for j in range(1, n + 1)]
    lab = [labels.get(i, str(i)) for i in range(1, n + 1)]
    h = Hamiltonian(n, n, ent, labels=lab, meta=meta)
    return GraphDocument(h, herm, meta)


def format_graph(h: ExactMatrix, hermitian: bool | None = None, meta: dict | None = None) -> str:
    n = h.rows
    if h.rows != h.cols:
        raise InputError("only square matrices can be written")
    herm = h.is_symmetric() if hermitian is None else hermitian
    if herm and not h.is_symmetric():
        raise InputError("hermitian flag requested for a non-symmetric matrix")
    meta = dict(getattr(h, "meta", {}) or {}) if meta is None else meta
    labels = getattr(h, "labels", None)
    out = [f"size {n}", f"hermitian {'true' if herm else 'false'}"]
    for k in sorted(meta):
        val = str(meta[k]).replace("\n", " ")
        out.append(f"meta {k} {val}".rstrip())
    if labels:
        out.extend(f"label {i + 1} {lab}" for i, lab in enumerate(labels) if lab != str(i + 1))
    for i in range(n):
        if h[i, i]:
            out.append(f"onsite {i + 1} {h[i, i]}")
    for i in range(n):
        for j in range(i + 1 if herm else 0, n):
            if i != j and h[i, j]:
                out.append(f"{i + 1} {j + 1} {h[i, j]}")
    return "\n".join(out) + "\n"


def load_graph(path) -> GraphDocument:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {p}: {exc}") from exc
    return parse_graph(text, str(p))


def save_graph(h: ExactMatrix, path, hermitian: bool | None = None) -> None:
    Path(path).write_text(format_graph(h, hermitian), encoding="utf-8")


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_plan(text: str, source: str = "<plan>"):
    from .multiplets import ExtensionPlan

    onsite = Fraction(0)
    seen_onsite = False
    couplings = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}: "
        tok = line.split()
        key = tok[0].lower()
        if key == "onsite":
            if len(tok) != 2 or seen_onsite:
                raise InputError(f"{where}expected a single 'onsite VALUE'")
            onsite = parse_value(tok[1], where)
            seen_onsite = True
        elif key == "coupling":
            if len(tok) < 3:
                raise InputError(f"{where}coupling needs a value and at least one site")
            g = parse_value(tok[1], where)
            try:
                sites = tuple(int(t) for t in tok[2:])
            except ValueError as exc:
                raise InputError(f"{where}site indices must be integers") from exc
            couplings.append((sites, g))
        else:
            raise InputError(f"{where}unknown plan statement {tok[0]!r}")
    return ExtensionPlan(couplings, onsite)


def format_plan(plan) -> str:
    out = [f"onsite {plan.onsite}"]
    for sites, g in plan.multiplets:
        out.append(f"coupling {g} " + " ".join(str(s) for s in sites))
    return "\n".join(out) + "\n"


def load_plan(path):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {p}: {exc}") from exc
    return parse_plan(text, str(p))


__all__ = [
    "GraphDocument",
    "digest",
    "format_graph",
    "format_plan",
    "load_graph",
    "load_plan",
    "parse_graph",
    "parse_plan",
    "parse_value",
    "save_graph",
]

"""Report rendering: plain text, structured data (JSON) and LaTeX.

Every renderer walks the same report dictionary, so the three formats
always carry the same content.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .exact import ExactMatrix, Poly, RationalFunction
from .groups import Permutation

FORMATS = ("text", "data", "latex")


def jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (Poly, RationalFunction)):
        return str(x)
    if isinstance(x, Permutation):
        return x.cycle_str()
    if isinstance(x, ExactMatrix):
        return [[jsonable(v) for v in row] for row in x.tolist()]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    return str(x)


def render_data(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _is_matrix(v) -> bool:
    return isinstance(v, list) and v and all(isinstance(r, list) for r in v) and all(
        not isinstance(x, (list, dict)) for r in v for x in r
    )


def _text_lines(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if _is_matrix(v):
                out.append(f"{pad}{k}:")
                cells = [[str(x) for x in row] for row in v]
                width = max(len(c) for row in cells for c in row)
                out.extend(f"{pad}  [ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)
            elif isinstance(v, (dict, list)) and v:
                if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
                    out.append(f"{pad}{k}: " + ", ".join(str(x) for x in v))
                else:
                    out.append(f"{pad}{k}:")
                    out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {v if v not in ([], {}) else '-'}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                sub = _text_lines(item, indent + 1)
                if sub:
                    sub[0] = pad + "- " + sub[0].lstrip()
                out.extend(sub)
            else:
                out.append(f"{pad}- {item}")
    else:
        out.append(f"{pad}{obj}")
    return out


def render_text(report: dict) -> str:
    return "\n".join(_text_lines(jsonable(report))) + "\n"


def _latex_escape(s: str) -> str:
    rep = {"\\": r"\textbackslash{}", "_": r"\_", "%": r"\%", "&": r"\&", "#": r"\#", "$": r"\$", "{": r"\{", "}": r"\}"}
    return "".join(rep.get(c, c) for c in s)


def latex_matrix(rows: list[list[str]]) -> str:
    body = " \\\\\n".join("  " + " & ".join(r) for r in rows)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"


def render_latex(report: dict) -> str:
    """Matrices stored under ``latex`` keys are emitted as display math; the
    rest of the report follows as a description list."""
    out = []
    blocks = report.get("latex", {})
    for name, body in blocks.items():
        out.append(f"% {name}")
        out.append("\\[\n" + body + "\n\\]")
    rest = {k: v for k, v in report.items() if k != "latex"}
    out.append("\\begin{description}")
    for line in _text_lines(jsonable(rest)):
        out.append("  \\item[] \\texttt{" + _latex_escape(line) + "}")
    out.append("\\end{description}")
    return "\n".join(out) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "data":
        return render_data({k: v for k, v in report.items() if k != "latex"})
    if fmt == "latex":
        return render_latex(report)
    return render_text({k: v for k, v in report.items() if k != "latex"})


__all__ = ["FORMATS", "jsonable", "latex_matrix", "render", "render_data", "render_latex", "render_text"]

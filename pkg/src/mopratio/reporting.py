"""Serialization: canonical complex strings, CSV tables, JSON payloads.

CSV output is byte-stable: header row, comma separators, LF line endings,
floats at 17 significant digits.  Complex values travel as 'a+bi' strings on
the command line and as separate re/im fields in CSV and JSON.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, Sequence

from .algebraic import BranchPoint, BranchResult, LimitEquation
from .families import LimitData
from .verify import ConvergenceReport, DensityReport, GapReport, InterlaceReport

_BARE_J = re.compile(r"(?<![0-9.])j")


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' style strings ('2', '2i', '1+1i', '-1.5-2e-3i')."""
    s = str(text).strip().replace(" ", "").lower().replace("i", "j")
    if not s:
        raise ValueError("empty complex literal")
    s = _BARE_J.sub("1j", s)
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex number from {text!r}") from None


def format_float(value: float) -> str:
    return f"{float(value):.17g}"


def format_complex(z: complex) -> str:
    z = complex(z)
    re_part = z.real + 0.0  # normalize -0.0
    im_part = z.imag + 0.0
    sign = "+" if im_part >= 0 else "-"
    return f"{format_float(re_part)}{sign}{format_float(abs(im_part))}i"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, complex):
        return format_complex(value)
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def write_text(path: str | Path | None, text: str) -> None:
    """Write to a file, or stdout when path is None."""
    if path is None:
        import sys

        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8", newline="")


def render_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def complex_fields(z: complex) -> dict:
    z = complex(z)
    return {"im": z.imag, "re": z.real}


def convergence_csv(report: ConvergenceReport) -> str:
    header = ["n", "max_error"] + [f"err[x={format_complex(x)}]" for x in report.xs]
    rows = [[row.n, row.max_error, *row.errors] for row in report.rows]
    return render_csv(header, rows)


def gap_csv(report: GapReport) -> str:
    header = ["n", "gap"]
    return render_csv(header, [[row.n, row.value] for row in report.rows])


def zeros_csv(zeros: Sequence[float]) -> str:
    return render_csv(["zero"], [[z] for z in zeros])


def density_csv(report: DensityReport) -> str:
    header = ["bin_lo", "bin_hi", "center", "mass", "model_density", "model_mass", "abs_diff"]
    rows = []
    for i in range(len(report.masses)):
        rows.append(
            [
                report.edges[i],
                report.edges[i + 1],
                report.centers[i],
                report.masses[i],
                report.model_density[i],
                report.model_masses[i],
                abs(report.masses[i] - report.model_masses[i]),
            ]
        )
    return render_csv(header, rows)


def interlace_csv(report: InterlaceReport) -> str:
    header = ["index", "k", "ok"]
    rows = [[";".join(str(v) for v in row.index), row.k, row.ok] for row in report.rows]
    return render_csv(header, rows)


def limits_payload(limits: LimitData) -> dict:
    return {
        "a": list(limits.a),
        "b": list(limits.b),
        "branch_supported": limits.branch_supported,
        "gamma": limits.gamma,
        "merged": [
            {"a_star": g.a_star, "b_star": g.b_star, "members": list(g.members)}
            for g in limits.merged
        ],
        "provenance_a": list(limits.provenance_a),
        "provenance_b": list(limits.provenance_b),
        "warnings": list(limits.warnings),
    }


def branch_payload(
    eq: LimitEquation,
    results: Sequence[BranchResult],
    points: Sequence[BranchPoint],
) -> dict:
    return {
        "branch_points": [
            {"x": complex_fields(bp.x), "z": complex_fields(bp.z)} for bp in points
        ],
        "equation": {
            "a_star": list(eq.a_star),
            "b_original": list(eq.b_original),
            "b_star": list(eq.b_star),
        },
        "evaluations": [
            {
                "all_roots": [complex_fields(z) for z in res.all_roots],
                "steps": res.path_log.steps,
                "x": complex_fields(res.x),
                "z": complex_fields(res.z),
            }
            for res in results
        ],
    }

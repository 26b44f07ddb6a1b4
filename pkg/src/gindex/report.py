"""Assemble the full analysis of one action and render it as JSON or a table."""

from __future__ import annotations

import json
from typing import Any

from . import circulant
from .action import ActionData, validate_monodromy
from .arithgroup import factor_list, h2_basis, image_basis, stable_range
from .cyclo import embed_numeric
from .indexcore import build_system, eta_index, solve_deg0, solve_deg1
from .reptheory import character_h1, complex_multiplicities


def analyze(a: ActionData, include_system: bool = True) -> dict[str, Any]:
    warnings = validate_monodromy(a)
    chi = character_h1(a)
    n = complex_multiplicities(chi)
    sig = solve_deg0(a, n)
    f = factor_list(a, n, sig)
    sr = stable_range(a, f)
    sys = build_system(a)
    solved = solve_deg1(sys)
    image = image_basis(solved)
    rank = circulant.rank_K(sys)
    certs: dict[str, Any] = {"det_J_nonzero": True, "rank_K": rank, "n_eta": len(sys.eta_index)}
    numeric: dict[str, Any] = {}
    if a.m >= 3:
        cert = circulant.certify_basis(a.m)
        certs["csc_basis"] = cert.to_json()
        numeric["csc_basis_det"] = cert.numeric_det
        numeric["csc_basis_det_exact_embedding"] = embed_numeric(cert.determinant).real
    out: dict[str, Any] = {
        "action": {**a.to_json(), "genus": a.g, "warnings": warnings},
        "character": list(chi.values),
        "multiplicities": n.to_json(),
        "eigen_signature": sig.to_json(),
        "factors": f.to_json(),
        "stable_range": sr.to_json(),
        "h2_basis": h2_basis(f, sr.degree2_valid),
        "eta_index": list(eta_index(a)),
        "solved_classes": [
            {**row, "expr": str(c)} for row, c in zip(solved.to_json(), solved.classes)
        ],
        "image": image.to_json(),
        "certificates": certs,
    }
    if include_system:
        out["system"] = sys.to_json()
    if numeric:
        out["numeric_checks"] = numeric
    return out


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, UTF-8 symbols kept."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    return str(v)


def render_table(obj: Any, indent: int = 0) -> str:
    lines: list[str] = []
    _render(obj, indent, lines)
    return "\n".join(lines) + "\n"


def _is_leafy(v: Any) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _render(obj: Any, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not _is_leafy(v) and v:
                lines.append(f"{pad}{k}:")
                _render(v, indent + 1, lines)
            elif _is_leafy(v):
                lines.append(f"{pad}{k}: [{', '.join(_scalar(x) for x in v)}]")
            else:
                lines.append(f"{pad}{k}: {_scalar(v) if not isinstance(v, (dict, list)) else '{}'}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)) and not _is_leafy(v):
                lines.append(f"{pad}- [{i}]")
                _render(v, indent + 1, lines)
            else:
                text = f"[{', '.join(_scalar(x) for x in v)}]" if isinstance(v, list) else _scalar(v)
                lines.append(f"{pad}- {text}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")

"""Exact degree-2 families G-index computations for Z/m actions on surfaces."""

from __future__ import annotations

from .action import ActionData, ak2_standard, ak7_example, morita_example, new_action
from .cyclo import CycloNum, csc2_half, icot_half
from .indexcore import build_system, solve_deg0, solve_deg1

__version__ = "0.1.0"

__all__ = [
    "ActionData",
    "CycloNum",
    "ak2_standard",
    "ak7_example",
    "build_system",
    "csc2_half",
    "icot_half",
    "morita_example",
    "new_action",
    "solve_deg0",
    "solve_deg1",
]

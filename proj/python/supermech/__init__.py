"""Higher-order Lagrangian supermechanics.

Every entry point takes the text of a problem file and returns
``(exit_code, report)`` where ``report`` is the decoded JSON document.
"""

import json

from . import _core
from ._core import MathError, ParseError, format_problem

__all__ = ["derive", "noether", "simulate", "format_problem", "ParseError", "MathError"]


def _decode(result):
    code, text = result
    return code, json.loads(text)


def derive(text, emit="json"):
    if emit == "latex":
        return _core.derive(text, "latex")
    return _decode(_core.derive(text, "json"))


def noether(text, symmetry=None, charge=None):
    return _decode(_core.noether(text, symmetry, charge))


def simulate(text, tol=1e-6, trajectory=None):
    return _decode(_core.simulate(text, tol, trajectory))

"""Khovanov, nested Khovanov and odd Khovanov homology of link diagrams.

Thin wrappers over the compiled ``_cubecat`` extension; results come back as
plain Python dictionaries.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional

from . import _cubecat
from ._cubecat import CubeError, Diagram, HomologyError, ParseError, parse_pd

__all__ = [
    "CubeError",
    "Diagram",
    "HomologyError",
    "ParseError",
    "classify_signs",
    "compare_mod2",
    "euler_characteristic",
    "homology",
    "kauffman_bracket",
    "outer_face_invariance",
    "parse_pd",
    "random_sign_trials",
    "relations",
    "run",
    "verify_theorem1",
]


def homology(pd: str, theory: str = "kh", coeff: str = "Z", outer_face: Optional[int] = None,
             orient: str = "strict", jobs: int = 1) -> dict:
    """Homology table as ``{theory, coefficients, diagram, entries, euler}``."""
    return json.loads(_cubecat.homology_json(pd, theory, coeff, outer_face, orient, jobs))


def euler_characteristic(pd: str, theory: str = "kh", orient: str = "strict") -> dict[int, int]:
    return dict(_cubecat.euler_characteristic(pd, theory, orient))


def kauffman_bracket(pd: str, orient: str = "strict") -> dict[int, int]:
    """Independent state sum; equals the graded Euler characteristic."""
    return dict(_cubecat.kauffman_bracket(pd, orient))


def verify_theorem1(pd: str, orient: str = "strict") -> dict:
    return json.loads(_cubecat.verify_theorem1_json(pd, orient))


def compare_mod2(pd: str, orient: str = "strict") -> dict:
    return json.loads(_cubecat.compare_mod2_json(pd, orient))


def outer_face_invariance(pd: str, orient: str = "strict") -> dict:
    return json.loads(_cubecat.outer_face_json(pd, orient))


def random_sign_trials(pd: str, theory: str = "kh", trials: int = 100, seed: int = 1,
                       orient: str = "strict") -> dict:
    return json.loads(_cubecat.random_signs_json(pd, theory, trials, seed, orient))


def relations(theory: str) -> dict:
    return json.loads(_cubecat.relations_json(theory))


def classify_signs(corpus: Iterable[str] = (), orient: str = "strict") -> dict:
    return json.loads(_cubecat.classify_signs_json(list(corpus), orient))


def run(subcommand: str, **options) -> tuple[int, str, str]:
    """Same as the command-line tool: returns ``(status, json_text, stderr_text)``."""
    return _cubecat.run(subcommand, **options)

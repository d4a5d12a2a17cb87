"""Bundled example data: the cigarette-enterprise efficiency index system.

A three-level hierarchy (goal, 6 criteria, 23 indicators) with the six
published consensus judgment matrices, stored at 4-decimal precision under
the lenient "published" reciprocity tolerance.
"""

from __future__ import annotations

from importlib.resources import files

from .project import ProjectDocument, parse_project

CIGARETTE_EFFICIENCY = "cigarette-efficiency.ahp.json"


def fixture_bytes(name: str = CIGARETTE_EFFICIENCY) -> bytes:
    return files("ahpkit").joinpath("data", name).read_bytes()


def cigarette_efficiency() -> ProjectDocument:
    """The bundled efficiency index system, parsed."""
    return parse_project(fixture_bytes())

"""Bundled polytope fixtures in the JSON facet format."""

from __future__ import annotations

from importlib import resources

from ..errors import InvalidInputError
from ..lattice import Polytope

NAMES = (
    "segment_0",
    "segment_1",
    "segment_2",
    "segment_5",
    "hexagon",
    "simplex_p2",
    "square_p1xp1",
    "trapezoid_f1",
)


def text(name):
    """Raw JSON text of a bundled fixture."""
    if name not in NAMES:
        raise InvalidInputError("unknown fixture %r; available: %s" % (name, ", ".join(NAMES)))
    return (resources.files(__name__) / (name + ".json")).read_text(encoding="utf-8")


def load(name):
    return Polytope.from_json(text(name))

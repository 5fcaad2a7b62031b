"""Bundled example diagrams and nanophrases."""
from __future__ import annotations

import os
from importlib import resources

from .diagrams.pd import PDCode, parse_pd
from .errors import ValidationError

DIAGRAMS = ("unknot", "right_trefoil", "left_trefoil", "figure_eight", "hopf")
ALIASES = {"trefoil": "right_trefoil", "figure8": "figure_eight", "4_1": "figure_eight", "3_1": "right_trefoil"}
PHRASES = ("kink", "trefoil", "virtual_trefoil")


def _read(name: str) -> bytes:
    return resources.files("coloredkh").joinpath("data", name).read_bytes()


def diagram(name: str) -> PDCode:
    name = ALIASES.get(name, name)
    if name not in DIAGRAMS:
        raise ValidationError(f"unknown bundled diagram {name!r}; choose from {list(DIAGRAMS)}")
    return parse_pd(_read(name + ".json"))


def read_source(source: str, suffix: str) -> bytes:
    """Contents of a file path, or of a bundled file called ``source + suffix``."""
    if os.path.exists(source):
        with open(source, "rb") as fh:
            return fh.read()
    for stem in (source, ALIASES.get(source, source)):
        try:
            return _read(stem + suffix)
        except (FileNotFoundError, OSError, ValueError):
            continue
    raise ValidationError(f"no such file or bundled example: {source!r}")


def load_diagram(source: str) -> PDCode:
    return parse_pd(read_source(source, ".json"))

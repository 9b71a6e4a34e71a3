"""Bundled worked examples as JSON problem documents.

``lie_*`` and ``assoc_*`` entries describe a pair (and optionally a
representation); ``deform_*`` entries add a deformation block.
"""

from __future__ import annotations

from importlib import resources

from ..io import InputDocument, parse_text

__all__ = ["names", "path", "load", "LIE_ENTRIES", "ASSOC_ENTRIES", "DEFORM_ENTRIES"]


def names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".json"))


def path(name: str):
    p = resources.files(__name__) / f"{name}.json"
    if not p.is_file():
        raise KeyError(f"no corpus entry {name!r}; known: {', '.join(names())}")
    return p


def load(name: str) -> InputDocument:
    return parse_text(path(name).read_text(), f"{name}.json")


LIE_ENTRIES = tuple(n for n in names() if n.startswith("lie_"))
ASSOC_ENTRIES = tuple(n for n in names() if n.startswith("assoc_"))
DEFORM_ENTRIES = tuple(n for n in names() if n.startswith("deform_"))

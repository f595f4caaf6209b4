"""A small library of presentations of groups of order at most six.

Presentations of the same group can be placed on one Cayley table with
:func:`identified`, which is what morphisms and coproducts need.
"""

from __future__ import annotations

from functools import lru_cache

from .foxmagnus import PresentedGroup, realize
from .presentations import parse_presentation, parse_word

__all__ = ["CORPUS", "ALIASES", "presentation", "presented", "identified", "corpus_names"]

CORPUS: dict[str, str] = {
    "trivial": "gens: x\nrels: x",
    "c2": "gens: x\nrels: x^2",
    "c3": "gens: x\nrels: x^3",
    "c4": "gens: x\nrels: x^4",
    "v4": "gens: x, y\nrels: x^2, y^2, [x, y]",
    "s3": "gens: x, y\nrels: x^2, y^2, (x y)^3",
    "c2_2gen": "gens: a, b\nrels: a^2, b^2, a b^-1",
    "c3_2gen": "gens: x, y\nrels: x^3, y x^-1",
    "v4_3gen": "gens: x, y, z\nrels: x^2, y^2, [x, y], z^-1 x y",
    "s3_3gen": "gens: x, y, z\nrels: x^2, y^2, (x y)^3, z^-1 x y x",
}

# second presentations, as (base name, image word of each generator in the base)
ALIASES: dict[str, tuple[str, tuple[str, ...]]] = {
    "c2_2gen": ("c2", ("x", "x")),
    "c3_2gen": ("c3", ("x", "x")),
    "v4_3gen": ("v4", ("x", "y", "x y")),
    "s3_3gen": ("s3", ("x", "y", "x y x")),
}


def corpus_names() -> list[str]:
    return list(CORPUS)


def presentation(name: str):
    return parse_presentation(CORPUS[name])


def presented(name: str) -> PresentedGroup:
    """The presentation enumerated on its own."""
    return realize(presentation(name))


@lru_cache(maxsize=None)
def identified(name: str) -> PresentedGroup:
    """The presentation realised on the Cayley table of its base group."""
    if name not in ALIASES:
        return presented(name)
    base_name, words = ALIASES[name]
    base = presented(base_name)
    names = base.presentation.names
    images = [parse_word(w, names) for w in words]
    return PresentedGroup.on_group(presentation(name), base.group, images, base=base)

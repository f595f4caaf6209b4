"""Presentation file format.

::

    # comments run to end of line
    gens: x, y
    rels: x^2, y^2, (x y)^3, [x, y]^2

Words are juxtapositions of generator names separated by optional spaces,
with ``^k`` integer powers (negative allowed), parentheses and commutators
``[u, v] = u^-1 v^-1 u v``.  When every generator name is a single
character, runs such as ``xy`` are split into letters.  Relators may be
continued on following lines; a trailing comma is not required.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import (EmptyRelatorError, PresentationSyntaxError,
                      UnknownGeneratorError)
from .words import Word, reduce

__all__ = ["Presentation", "parse_presentation", "parse_word"]


@dataclass(frozen=True)
class Presentation:
    """Free generators plus relator words; names are for display only."""

    num_generators: int
    relators: tuple[Word, ...]
    names: tuple[str, ...] = ()
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.num_generators < 1:
            raise ValueError("a presentation needs at least one generator")
        if not self.names:
            object.__setattr__(self, "names",
                               tuple(f"g{i}" for i in range(self.num_generators)))
        if len(self.names) != self.num_generators:
            raise ValueError("one name per generator is required")
        rels = tuple(self.relators)
        object.__setattr__(self, "relators", rels)
        for r in rels:
            if r.is_identity():
                raise EmptyRelatorError("relator is empty after free reduction")
            if any(not 0 <= g < self.num_generators for g in r.generators()):
                raise ValueError(f"relator {r} uses an unknown generator")

    def format(self) -> str:
        rels = ", ".join(r.format(self.names) for r in self.relators)
        return f"gens: {', '.join(self.names)}\nrels: {rels}\n"


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[\^()\[\],]))")


class _WordParser:
    def __init__(self, text: str, names: dict[str, int], line: int, col0: int):
        self.names = names
        self.line = line
        self.col0 = col0
        self.toks = []
        pos = 0
        single = all(len(n) == 1 for n in names)
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip()) if text[pos].isspace() else pos
                raise PresentationSyntaxError(f"unexpected character {text[col]!r}",
                                              line, col0 + col + 1)
            start = m.start(m.lastgroup)
            kind = m.lastgroup
            value = m.group(kind)
            if kind == "name" and value not in names and single and all(c in names for c in value):
                for k, ch in enumerate(value):
                    self.toks.append(("name", ch, start + k))
            else:
                self.toks.append((kind, value, start))
            pos = m.end()
        self.i = 0

    def error(self, msg, tok=None):
        col = tok[2] if tok else (self.toks[-1][2] + 1 if self.toks else 0)
        raise PresentationSyntaxError(msg, self.line, self.col0 + col + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, sym=None):
        t = self.peek()
        if t is None:
            self.error(f"expected {sym!r}" if sym else "unexpected end of input")
        if sym is not None and t[1] != sym:
            self.error(f"expected {sym!r}, found {t[1]!r}", t)
        self.i += 1
        return t

    def word_list(self) -> list[tuple[list, int]]:
        out = []
        while True:
            t = self.peek()
            start = t[2] if t else 0
            out.append((self.word(), start))
            t = self.peek()
            if t is None:
                return out
            self.take(",")

    def word(self) -> list:
        letters: list = []
        while True:
            t = self.peek()
            if t is None or t[1] in (",", ")", "]"):
                return letters
            letters.extend(self.factor())

    def factor(self) -> list:
        t = self.take()
        if t[0] == "name":
            if t[1] not in self.names:
                raise UnknownGeneratorError(f"unknown generator {t[1]!r}", self.line,
                                            self.col0 + t[2] + 1)
            base = [(self.names[t[1]], 1)]
        elif t[1] == "(":
            base = self.word()
            self.take(")")
        elif t[1] == "[":
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            uw, vw = reduce(u), reduce(v)
            base = list((uw.inverse() * vw.inverse() * uw * vw).letters)
        elif t[0] == "int" and t[1] == "1":
            base = []
        else:
            self.error(f"unexpected {t[1]!r}", t)
        while self.peek() is not None and self.peek()[1] == "^":
            self.take("^")
            e = self.take()
            if e[0] != "int":
                self.error("exponent must be an integer", e)
            k = int(e[1])
            w = reduce(base)
            base = list((w ** k).letters)
        return base


def parse_word(text: str, names: list[str] | tuple[str, ...]) -> Word:
    """Parse a single word over the given generator names."""
    p = _WordParser(text, {n: i for i, n in enumerate(names)}, 1, 0)
    w = p.word()
    if p.peek() is not None:
        p.error(f"unexpected {p.peek()[1]!r}", p.peek())
    return reduce(w)


def parse_presentation(text: str) -> Presentation:
    """Parse the ``gens:`` / ``rels:`` text format."""
    gens = None
    rel_chunks: list[tuple[str, int, int]] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        m = re.match(r"(gens|rels)\s*:", stripped)
        if m:
            section = m.group(1)
            body = stripped[m.end():]
            col0 = indent + m.end()
            if section == "gens":
                if gens is not None:
                    raise PresentationSyntaxError("duplicate 'gens:' line", lineno, 1)
                gens = []
                for k, piece in enumerate(body.split(",")):
                    name = piece.strip()
                    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
                        raise PresentationSyntaxError(f"bad generator name {name!r}",
                                                      lineno, col0 + 1)
                    if name in gens:
                        raise PresentationSyntaxError(f"duplicate generator {name!r}",
                                                      lineno, col0 + 1)
                    gens.append(name)
            else:
                if gens is None:
                    raise PresentationSyntaxError("'rels:' before 'gens:'", lineno, 1)
                rel_chunks.append((body, lineno, col0))
        elif section == "rels":
            rel_chunks.append((line, lineno, 0))
        else:
            raise PresentationSyntaxError("expected 'gens:' or 'rels:'", lineno, indent + 1)
    if gens is None:
        raise PresentationSyntaxError("missing 'gens:' line", 1, 1)
    names = {n: i for i, n in enumerate(gens)}
    relators: list[Word] = []
    for body, lineno, col0 in rel_chunks:
        body_s = body.strip().rstrip(",")
        if not body_s:
            continue
        lead = len(body) - len(body.lstrip())
        parser = _WordParser(body_s, names, lineno, col0 + lead)
        for letters, start in parser.word_list():
            w = reduce(letters)
            if w.is_identity():
                raise EmptyRelatorError("relator is empty after free reduction",
                                        lineno, col0 + lead + start + 1)
            relators.append(w)
    return Presentation(len(gens), tuple(relators), tuple(gens), text)

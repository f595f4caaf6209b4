"""Words in a free group of finite rank."""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["Word", "reduce"]


def reduce(letters: Iterable[tuple[int, int]]) -> "Word":
    """Freely reduce a raw list of ``(generator, exponent)`` pairs.

    >>> reduce([(0, 1), (1, 1), (1, -1), (0, 1)])
    Word(((0, 2),))
    """
    stack: list[list[int]] = []
    for g, e in letters:
        if not e:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if not stack[-1][1]:
                stack.pop()
        else:
            stack.append([g, e])
    return Word(tuple((g, e) for g, e in stack), _trusted=True)


class Word:
    """A freely reduced word, stored as syllables ``(generator, exponent)``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Sequence[tuple[int, int]] = (), _trusted: bool = False):
        if _trusted:
            self.letters = tuple(letters)
        else:
            self.letters = reduce(letters).letters

    @classmethod
    def generator(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, e),))

    @classmethod
    def from_signed(cls, seq: Iterable[int]) -> "Word":
        """Build from signed letters ``+(g+1)`` / ``-(g+1)``."""
        return reduce((abs(x) - 1, 1 if x > 0 else -1) for x in seq)

    def signed(self) -> list[int]:
        """Expand to single letters ``+(g+1)`` / ``-(g+1)``."""
        out = []
        for g, e in self.letters:
            x = g + 1 if e > 0 else -(g + 1)
            out.extend([x] * abs(e))
        return out

    def __mul__(self, other: "Word") -> "Word":
        return reduce(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return reduce(self.letters * k)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)), _trusted=True)

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Image under the free-group homomorphism ``g -> images[g]``."""
        out: list[tuple[int, int]] = []
        for g, e in self.letters:
            w = images[g] if e > 0 else images[g].inverse()
            out.extend(w.letters * abs(e))
        return reduce(out)

    def shift(self, k: int) -> "Word":
        return Word(tuple((g + k, e) for g, e in self.letters), _trusted=True)

    def is_identity(self) -> bool:
        return not self.letters

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __len__(self) -> int:
        return self.length()

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Word({self.letters!r})"

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            name = names[g] if names else f"g{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

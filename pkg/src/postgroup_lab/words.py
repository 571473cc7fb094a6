"""Reduced words in the free group over a named generator alphabet.

A word is a sequence of letters, each a generator with a sign.  The
text form is whitespace separated: ``a b' a`` means a . b^{-1} . a, and
the empty word prints as the reserved token ``e``.  All arithmetic
keeps words reduced, meaning no letter is adjacent to its own inverse.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import AlphabetMismatchError, UnknownNameError

UNIT_TOKEN = "e"


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of generator names shared by words over one magma."""

    names: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        if not names:
            raise UnknownNameError("alphabet needs at least one generator")
        for name in names:
            if not name or any(ch.isspace() for ch in name) or "'" in name:
                raise UnknownNameError(f"bad generator name {name!r}")
            if name == UNIT_TOKEN:
                raise UnknownNameError(
                    f"the name {UNIT_TOKEN!r} is reserved for the empty word"
                )
        if len(set(names)) != len(names):
            raise UnknownNameError("generator names must be distinct")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNameError(f"unknown generator {name!r}") from None


@dataclass(frozen=True, slots=True)
class Letter:
    """A generator index with a sign, +1 for the generator, -1 inverse."""

    gen: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> Letter:
        return Letter(self.gen, -self.sign)


@dataclass(frozen=True)
class ReducedWord:
    """A reduced word.  Construct through reduce_word or parse_word."""

    alphabet: Alphabet
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        n = len(self.alphabet)
        for letter in self.letters:
            if not 0 <= letter.gen < n:
                raise ValueError(f"letter index {letter.gen} out of range")
        for a, b in zip(self.letters, self.letters[1:]):
            if a.gen == b.gen and a.sign == -b.sign:
                raise ValueError("word is not reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def is_unit(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return word_str(self)


def unit(alphabet: Alphabet) -> ReducedWord:
    return ReducedWord(alphabet, ())


def reduce_word(alphabet: Alphabet, letters: Iterable[Letter]) -> ReducedWord:
    """Cancel adjacent inverse pairs until none remain, in one stack pass."""
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return ReducedWord(alphabet, tuple(stack))


def parse_word(text: str, alphabet: Alphabet) -> ReducedWord:
    """Parse the whitespace separated text form and reduce the result.

    The token ``e`` contributes no letters, so it can spell the unit on
    its own or appear inside a longer word.
    """
    letters: list[Letter] = []
    for position, token in enumerate(text.split(), start=1):
        if token == UNIT_TOKEN:
            continue
        sign = 1
        name = token
        if token.endswith("'"):
            sign = -1
            name = token[:-1]
        if name == UNIT_TOKEN:
            raise UnknownNameError(
                f"token {position}: the unit {UNIT_TOKEN!r} has no inverse form"
            )
        try:
            gen = alphabet.index(name)
        except UnknownNameError:
            raise UnknownNameError(
                f"token {position}: unknown generator {name!r}"
            ) from None
        letters.append(Letter(gen, sign))
    return reduce_word(alphabet, letters)


def word_str(u: ReducedWord) -> str:
    if not u.letters:
        return UNIT_TOKEN
    names = u.alphabet.names
    return " ".join(
        names[l.gen] if l.sign == 1 else names[l.gen] + "'" for l in u.letters
    )


def check_same_alphabet(u: ReducedWord, v: ReducedWord) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError("words are over different alphabets")


def dot(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """Concatenate and reduce.  Only the seam needs cancellation."""
    check_same_alphabet(u, v)
    left = list(u.letters)
    right = list(v.letters)
    i = 0
    while left and i < len(right):
        a, b = left[-1], right[i]
        if a.gen == b.gen and a.sign == -b.sign:
            left.pop()
            i += 1
        else:
            break
    return ReducedWord(u.alphabet, tuple(left) + tuple(right[i:]))


def invert(u: ReducedWord) -> ReducedWord:
    return ReducedWord(u.alphabet, tuple(l.inverse() for l in reversed(u.letters)))


def conjugate(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """Return u . v . u^{-1}."""
    return dot(dot(u, v), invert(u))


def word_from_sequence(
    alphabet: Alphabet, pairs: Sequence[tuple[int, int]]
) -> ReducedWord:
    """Build and reduce a word from raw (generator, sign) pairs."""
    return reduce_word(alphabet, (Letter(g, s) for g, s in pairs))

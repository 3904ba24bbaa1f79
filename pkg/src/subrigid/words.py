"""Words in a free group of finite rank.

A letter is a nonzero signed integer: ``k`` is the k-th free generator and
``-k`` its inverse.  In text form the k-th lowercase ASCII letter stands for
generator k and the matching uppercase letter for its inverse, so ``"abA"``
is a*b*a^-1.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

MAX_RANK = 26


class WordParseError(ValueError):
    """Text contains a character that is not an ASCII letter."""


class RankError(ValueError):
    """A letter index exceeds the rank of the alphabet, or two ranks disagree."""


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or not 1 <= self.rank <= MAX_RANK:
            raise RankError(f"alphabet rank must be in 1..{MAX_RANK}, got {self.rank!r}")

    def letters(self) -> list[int]:
        """All 2*rank signed letters in the order 1, -1, 2, -2, ..."""
        out = []
        for k in range(1, self.rank + 1):
            out += [k, -k]
        return out


class Letter(NamedTuple):
    index: int
    sign: int

    @classmethod
    def from_int(cls, x: int) -> "Letter":
        return cls(abs(x), 1 if x > 0 else -1)

    def __int__(self) -> int:
        return self.index * self.sign

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)


def letter_char(x: int) -> str:
    c = string.ascii_lowercase[abs(x) - 1]
    return c if x > 0 else c.upper()


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word.  Construct through :func:`reduce` or :func:`parse`."""

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise RankError(f"letter {x} outside alphabet of rank {self.rank}")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise ValueError("word is not freely reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return "".join(letter_char(x) for x in self.letters)

    def pretty(self) -> str:
        """Human-readable form; the identity prints as ``1``."""
        return str(self) or "1"

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.letters


def _as_int(x) -> int:
    return int(x) if isinstance(x, Letter) else x


def reduce(letters: Sequence[int | Letter], rank: int | None = None) -> Word:
    """Freely reduce a letter sequence.  ``rank`` defaults to the largest index used."""
    raw = [_as_int(x) for x in letters]
    if rank is None:
        rank = max((abs(x) for x in raw), default=1)
    return Word(_free_reduce(raw), rank)


def parse(text: str, alphabet: Alphabet) -> Word:
    raw = []
    for ch in text:
        if ch not in string.ascii_letters:
            raise WordParseError(f"invalid character {ch!r} in word {text!r}")
        k = string.ascii_lowercase.index(ch.lower()) + 1
        if k > alphabet.rank:
            raise RankError(f"letter {ch!r} needs rank >= {k}, alphabet has rank {alphabet.rank}")
        raw.append(k if ch.islower() else -k)
    return Word(_free_reduce(raw), alphabet.rank)


def min_rank_for(texts: Iterable[str]) -> int:
    """Smallest alphabet rank that can hold every letter of ``texts`` (at least 1)."""
    best = 1
    for text in texts:
        for ch in text:
            if ch not in string.ascii_letters:
                raise WordParseError(f"invalid character {ch!r} in word {text!r}")
            best = max(best, string.ascii_lowercase.index(ch.lower()) + 1)
    return best


def invert(w: Word) -> Word:
    return Word(tuple(-x for x in reversed(w.letters)), w.rank)


def concat(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise RankError(f"cannot concatenate words over ranks {u.rank} and {v.rank}")
    return Word(_free_reduce(u.letters + v.letters), u.rank)


def conjugate(w: Word, x: Word) -> Word:
    """x * w * x^-1"""
    return concat(concat(x, w), invert(x))


def identity(alphabet: Alphabet) -> Word:
    return Word((), alphabet.rank)


def random_reduced_word(length: int, alphabet: Alphabet, seed: int | random.Random) -> Word:
    """Uniform reduced word of exactly ``length`` letters.

    ``seed`` may be an integer or an existing :class:`random.Random`, in which
    case it is advanced in place.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    choices = alphabet.letters()
    out: list[int] = []
    for _ in range(length):
        if out:
            x = rng.choice([y for y in choices if y != -out[-1]])
        else:
            x = rng.choice(choices)
        out.append(x)
    return Word(tuple(out), alphabet.rank)

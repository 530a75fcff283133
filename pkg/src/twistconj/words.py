"""Reduced words in a free group of finite rank.

A letter is a nonzero signed integer: ``g`` is the generator ``a_g`` and
``-g`` its inverse.  Generators are numbered from 1.  Words are stored
freely reduced, so every algorithm downstream can assume reduced input.

The canonical letter order is ``a < A < b < B < ...``, i.e. ``1, -1, 2, -2``.
"""

from __future__ import annotations

import bisect
import random
import re
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "RankError",
    "WordError",
    "Word",
    "reduce",
    "concat",
    "invert",
    "cancellation_len",
    "parse_word",
    "format_word",
    "sphere_size",
    "ball_size",
    "sample_word",
    "enumerate_ball",
    "letter_key",
    "alphabet",
]


class WordError(ValueError):
    """Malformed word text or a letter outside the rank."""


class RankError(ValueError):
    """Operands live in free groups of different ranks."""


def _check_rank(rank: int) -> int:
    if not isinstance(rank, int) or rank < 1:
        raise WordError(f"rank must be a positive integer, got {rank!r}")
    return rank


def letter_key(letter: int) -> int:
    """Position of ``letter`` in the order a < A < b < B < ..."""
    return 2 * (abs(letter) - 1) + (letter < 0)


def alphabet(rank: int) -> tuple[int, ...]:
    """All ``2 * rank`` letters in canonical order."""
    out = []
    for g in range(1, rank + 1):
        out.extend((g, -g))
    return tuple(out)


def _mul(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    # both operands already reduced, so only the junction can cancel
    i, j, ny = len(x), 0, len(y)
    while i and j < ny and x[i - 1] == -y[j]:
        i -= 1
        j += 1
    if j == 0:
        return x + y
    return x[:i] + y[j:]


def _inv(x: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-g for g in reversed(x))


def _free_reduce(raw: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for g in raw:
        if stack and stack[-1] == -g:
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


class Word:
    """An immutable freely reduced word of a given rank.

    ``len(w)`` is the reduced length ``|w|``.  Equality and hashing take the
    rank into account, so ``a`` in rank 2 differs from ``a`` in rank 3.
    """

    __slots__ = ("letters", "rank")

    letters: tuple[int, ...]
    rank: int

    def __init__(self, letters: Iterable[int] = (), rank: int = 2):
        _check_rank(rank)
        raw = tuple(letters)
        for g in raw:
            if not isinstance(g, int) or g == 0 or abs(g) > rank:
                raise WordError(f"letter {g!r} is outside rank {rank}")
        object.__setattr__(self, "letters", _free_reduce(raw))
        object.__setattr__(self, "rank", rank)

    @classmethod
    def _trusted(cls, letters: tuple[int, ...], rank: int) -> Word:
        # caller guarantees letters are reduced and within rank
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "rank", rank)
        return w

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls._trusted((), _check_rank(rank))

    @classmethod
    def generator(cls, index: int, rank: int, sign: int = 1) -> Word:
        return cls((index * sign,), rank)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.rank, self.letters))

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __getstate__(self):
        return (self.letters, self.rank)

    def __setstate__(self, state):
        object.__setattr__(self, "letters", state[0])
        object.__setattr__(self, "rank", state[1])

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, rank={self.rank})"

    def __str__(self) -> str:
        return format_word(self)

    def is_positive(self) -> bool:
        return all(g > 0 for g in self.letters)

    def exponent_sum(self, generator: int = 1) -> int:
        return sum((g > 0) - (g < 0) for g in self.letters if abs(g) == generator)

    def sort_key(self) -> tuple:
        """Length-lexicographic key matching :func:`enumerate_ball` order."""
        return (len(self.letters), tuple(letter_key(g) for g in self.letters))


def reduce(raw: Sequence[int], rank: int) -> Word:
    """Free reduction of an arbitrary letter sequence."""
    return Word(raw, rank)


def _same_rank(x: Word, y: Word) -> None:
    if x.rank != y.rank:
        raise RankError(f"rank mismatch: {x.rank} vs {y.rank}")


def concat(x: Word, y: Word) -> Word:
    _same_rank(x, y)
    return Word._trusted(_mul(x.letters, y.letters), x.rank)


def invert(x: Word) -> Word:
    return Word._trusted(_inv(x.letters), x.rank)


def cancellation_len(x: Word, y: Word) -> int:
    """Number of letter pairs cancelled at the junction of ``x * y``."""
    _same_rank(x, y)
    a, b = x.letters, y.letters
    c, top = 0, min(len(a), len(b))
    while c < top and a[-1 - c] == -b[c]:
        c += 1
    return c


_TOKEN = re.compile(r"g(\d+)('?)|([a-zA-Z])|\^(-?)(\d+)|(1)")


def parse_word(text: str, rank: int) -> Word:
    """Parse ``text`` such as ``"b^4a^2"`` or ``"aaBabbb"`` into a reduced word.

    Lowercase letters are generators, uppercase their inverses, ``^k`` raises
    the preceding letter to an integer power and ``"1"`` is the identity.
    The indexed form ``g1 g1' g2`` written by :func:`format_word` for ranks
    above 26 is accepted as well.  Whitespace is ignored.
    """
    _check_rank(rank)
    s = "".join(str(text).split())
    if not s:
        raise WordError("empty word text (use '1' for the identity)")
    if s == "1":
        return Word.identity(rank)
    raw: list[int] = []
    last: int | None = None  # letter the next exponent applies to
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise WordError(f"unexpected character {s[pos]!r} at position {pos} in {text!r}")
        gidx, prime, letter, neg, digits, one = m.groups()
        if one is not None:
            raise WordError(f"'1' may only appear alone, in {text!r}")
        if digits is not None:
            if last is None:
                raise WordError(f"exponent without a letter at position {pos} in {text!r}")
            k = int(digits)
            g = -last if neg else last
            raw.pop()
            raw.extend([g] * k)
            last = None
        else:
            if letter is not None:
                idx = ord(letter.lower()) - ord("a") + 1
                g = idx if letter.islower() else -idx
            else:
                idx = int(gidx)
                if idx == 0:
                    raise WordError(f"generator index must be positive in {text!r}")
                g = -idx if prime else idx
            if abs(g) > rank:
                raise WordError(f"letter {m.group(0)!r} is beyond rank {rank} in {text!r}")
            raw.append(g)
            last = g
        pos = m.end()
    return Word(raw, rank)


def format_word(w: Word) -> str:
    """Inverse of :func:`parse_word` without exponent compression."""
    if not w.letters:
        return "1"
    if w.rank <= 26:
        return "".join(
            chr(ord("a") + g - 1) if g > 0 else chr(ord("A") - g - 1) for g in w.letters
        )
    return " ".join(f"g{g}" if g > 0 else f"g{-g}'" for g in w.letters)


def sphere_size(n: int, i: int) -> int:
    """Number of reduced words of length exactly ``i`` in rank ``n``."""
    _check_rank(n)
    if i < 0:
        return 0
    if i == 0:
        return 1
    return 2 * n * (2 * n - 1) ** (i - 1)


def ball_size(n: int, p: int) -> int:
    """Number of reduced words of length at most ``p`` in rank ``n``."""
    _check_rank(n)
    if p < 0:
        return 0
    if n == 1:
        return 2 * p + 1
    return (n * (2 * n - 1) ** p - 1) // (n - 1)


@lru_cache(maxsize=256)
def _cumulative_spheres(n: int, p: int) -> tuple[int, ...]:
    acc, out = 0, []
    for i in range(p + 1):
        acc += sphere_size(n, i)
        out.append(acc)
    return tuple(out)


def sample_word(n: int, p: int, rng: random.Random) -> Word:
    """Draw a word uniformly from the ball of radius ``p`` (identity included).

    The length is chosen with exact big-integer weights, then letters are
    drawn uniformly among the non-cancelling continuations.
    """
    _check_rank(n)
    if p < 0:
        raise WordError(f"radius must be non-negative, got {p}")
    cum = _cumulative_spheres(n, p)
    r = rng.randrange(cum[-1])
    length = bisect.bisect_right(cum, r)
    if length == 0:
        return Word.identity(n)
    letters = alphabet(n)
    first = letters[rng.randrange(2 * n)]
    out = [first]
    # index of the forbidden letter is letter_key(-prev); skip over it
    for _ in range(length - 1):
        forbidden = letter_key(-out[-1])
        k = rng.randrange(2 * n - 1)
        if k >= forbidden:
            k += 1
        out.append(letters[k])
    return Word._trusted(tuple(out), n)


def _extend_sphere(level: list[tuple[int, ...]], letters: tuple[int, ...]) -> list[tuple[int, ...]]:
    nxt = []
    for w in level:
        if not w:
            nxt.extend((g,) for g in letters)
            continue
        back = -w[-1]
        nxt.extend(w + (g,) for g in letters if g != back)
    return nxt


def enumerate_ball(n: int, k: int, first: int | None = None) -> Iterator[Word]:
    """Yield every reduced word of length at most ``k`` in length-lex order.

    Shorter words come first; ties are broken letter by letter with
    ``a < A < b < B < ...``.  Passing ``first`` restricts the stream to the
    nonempty words starting with that letter (the identity is then omitted),
    which lets callers split the ball between consumers.
    """
    _check_rank(n)
    letters = alphabet(n)
    if first is None:
        level: list[tuple[int, ...]] = [()]
        yield Word._trusted((), n)
        start = 1
    else:
        if first == 0 or abs(first) > n:
            raise WordError(f"letter {first!r} is outside rank {n}")
        if k < 1:
            return
        level = [(first,)]
        yield Word._trusted((first,), n)
        start = 2
    for _ in range(start, k + 1):
        level = _extend_sphere(level, letters)
        for w in level:
            yield Word._trusted(w, n)

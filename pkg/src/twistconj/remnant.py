"""Remnant subwords of a tuple of words.

For a tuple ``(h_1, ..., h_n)`` the remnant of ``h_i`` is the part of ``h_i``
that survives free reduction in every product ``x h_i y`` where ``x`` and
``y`` range over the identity, ``h_j`` and ``h_j^-1`` for ``j != i``, and
``h_i`` itself (never ``h_i^-1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .homomorphism import FreeHomomorphism, TwistedPair
from .words import RankError, Word, WordError, _inv

__all__ = [
    "GeneratorRemnant",
    "RemnantReport",
    "max_cancellations",
    "remnant_report",
    "remnant_report_bruteforce",
    "remnant_length",
    "min_gap",
]


@dataclass(frozen=True)
class GeneratorRemnant:
    left_cancel: int
    right_cancel: int
    remnant: Word
    survives: bool

    @property
    def length(self) -> int:
        return len(self.remnant)


@dataclass(frozen=True)
class RemnantReport:
    entries: tuple[GeneratorRemnant, ...]

    @property
    def has_remnant(self) -> bool:
        return all(e.survives for e in self.entries)

    @property
    def remnant_length(self) -> int | None:
        if not self.has_remnant:
            return None
        return min(e.length for e in self.entries)

    @property
    def remnants(self) -> tuple[Word, ...]:
        return tuple(e.remnant for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> GeneratorRemnant:
        return self.entries[i]


def _validate(t: Sequence[Word]) -> tuple[Word, ...]:
    t = tuple(t)
    if not t:
        raise WordError("remnant needs a nonempty tuple of words")
    rank = t[0].rank
    if any(w.rank != rank for w in t):
        raise RankError("all words of the tuple must share one rank")
    return t


def _junction(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    c, top = 0, min(len(x), len(y))
    while c < top and x[-1 - c] == -y[c]:
        c += 1
    return c


def _neighbours(letters: list[tuple[int, ...]], i: int) -> list[tuple[int, ...]]:
    out = [letters[i]]
    for j, h in enumerate(letters):
        if j != i:
            out.append(h)
            out.append(_inv(h))
    return out


def max_cancellations(t: Sequence[Word]) -> list[tuple[int, int]]:
    """Worst-case prefix and suffix of each ``h_i`` eaten by a single neighbour.

    Cancellation is counted in letters of ``h_i`` only, so it never exceeds
    ``|h_i|``.  A neighbour that is itself used up at the junction stops
    the cancellation there; deeper products are outside the definition.
    """
    t = _validate(t)
    letters = [w.letters for w in t]
    out = []
    for i, h in enumerate(letters):
        nbrs = _neighbours(letters, i)
        left = max(_junction(x, h) for x in nbrs)
        right = max(_junction(h, y) for y in nbrs)
        out.append((left, right))
    return out


def _entry(h: Word, left: int, right: int) -> GeneratorRemnant:
    size = len(h)
    if left + right < size:
        return GeneratorRemnant(
            left, right, Word._trusted(h.letters[left : size - right], h.rank), True
        )
    return GeneratorRemnant(left, right, Word.identity(h.rank), False)


def remnant_report(t: Sequence[Word]) -> RemnantReport:
    """Remnants from pairwise junction cancellation maxima.

    The letters of ``h_i`` eaten on the left of a triple product form a
    prefix and those eaten on the right a suffix, so whatever lies between
    the worst prefix and the worst suffix survives every triple.
    """
    t = _validate(t)
    cancels = max_cancellations(t)
    return RemnantReport(tuple(_entry(h, l, r) for h, (l, r) in zip(t, cancels)))


def _tagged_survivors(
    left: tuple[int, ...] | None, middle: tuple[int, ...], right: tuple[int, ...] | None
) -> set[int]:
    # reduce left*middle*right keeping the middle word's positions as tags
    stack: list[tuple[int, int | None]] = []
    seq: list[tuple[int, int | None]] = []
    if left is not None:
        seq.extend((g, None) for g in left)
    seq.extend((g, k) for k, g in enumerate(middle))
    if right is not None:
        seq.extend((g, None) for g in right)
    for g, tag in seq:
        if stack and stack[-1][0] == -g:
            stack.pop()
        else:
            stack.append((g, tag))
    return {tag for _, tag in stack if tag is not None}


def _longest_run(positions: set[int], size: int) -> tuple[int, int]:
    best = (0, 0)
    start = None
    for k in range(size + 1):
        if k < size and k in positions:
            if start is None:
                start = k
        elif start is not None:
            if k - start > best[1] - best[0]:
                best = (start, k)
            start = None
    return best


def remnant_report_bruteforce(t: Sequence[Word]) -> RemnantReport:
    """Reference remnants by reducing every allowed triple product letter by letter.

    Independent of :func:`remnant_report`: each product is freely reduced
    with position tags on ``h_i``, the surviving positions are intersected
    over all products, and the remnant is the longest surviving block.
    Left and right cancellation counts come from the one-sided products.
    """
    t = _validate(t)
    letters = [w.letters for w in t]
    entries = []
    for i, h in enumerate(letters):
        size = len(h)
        options: list[tuple[int, ...] | None] = [None]
        options.append(h)
        for j, other in enumerate(letters):
            if j == i:
                continue
            options.append(other)
            options.append(tuple(-g for g in reversed(other)))
        alive = set(range(size))
        for x in options:
            for y in options:
                alive &= _tagged_survivors(x, h, y)
        left = max(size - len(_tagged_survivors(x, h, None)) for x in options)
        right = max(size - len(_tagged_survivors(None, h, y)) for y in options)
        if alive:
            a, b = _longest_run(alive, size)
            entries.append(
                GeneratorRemnant(a, size - b, Word._trusted(h[a:b], t[i].rank), True)
            )
        else:
            entries.append(GeneratorRemnant(left, right, Word.identity(t[i].rank), False))
    return RemnantReport(tuple(entries))


def remnant_length(phi: FreeHomomorphism) -> int | None:
    return remnant_report(phi.images).remnant_length


def min_gap(pair: TwistedPair) -> int | None:
    """``min_i(|Rem_phi a_i| - |psi(a_i)|)``, or None when phi has no remnant."""
    report = remnant_report(pair.phi.images)
    if not report.has_remnant:
        return None
    return min(e.length - len(w) for e, w in zip(report.entries, pair.psi.images))

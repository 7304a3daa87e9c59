"""
Braid words in the Artin generators and the elementary operations on them.

A word is a flat tuple of letters ``(i, e)`` meaning sigma_i^e, with ``1 <= i <= n-1``
and ``e = +1 or -1``. Index 0 never appears as a stored letter: the half-twist
sigma_0 = alpha sigma_{n-1} alpha^-1 closing the cyclic index pattern is always
expanded (see :func:`sigma`), so every word is an honest word in B_n.

Text format: whitespace separated signed integers with an optional caret power,
e.g. ``"1 -3"`` or ``"1^2 2 1^-3"``. A ``0`` token is accepted on input and
expanded through :func:`sigma`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadStrandCount, IndexOutOfRange, ParseError, StrandCountMismatch

Letter = tuple[int, int]

# Interned letter tuples keep million-letter words at one pointer per letter.
_LETTERS: dict[tuple[int, int], Letter] = {}


def _letter(i: int, e: int) -> Letter:
    key = (i, e)
    got = _LETTERS.get(key)
    if got is None:
        got = _LETTERS.setdefault(key, key)
    return got


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation: ``images[j-1]`` is the image of j.

    Composition follows function notation, ``p.compose(q)(x) == p(q(x))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def compose(self, other: Permutation) -> Permutation:
        if other.n != self.n:
            raise StrandCountMismatch(f"degrees {self.n} and {other.n}")
        return Permutation(tuple(self.images[y - 1] for y in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for j, y in enumerate(self.images, 1):
            inv[y - 1] = j
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        return " ".join(map(str, self.images))


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return concat(self, other)

    def __pow__(self, e: int) -> BraidWord:
        return power(self, e)

    def inverse(self) -> BraidWord:
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise BadStrandCount(f"strand count must be an integer >= 2, got {n!r}")


def make_word(n: int, tokens: Sequence[int] | Iterable[Letter]) -> BraidWord:
    """Build a word from signed indices (``-3`` is sigma_3^-1) or ``(i, e)`` pairs. No reduction."""
    _check_n(n)
    letters = []
    for tok in tokens:
        if isinstance(tok, tuple):
            i, e = tok
            if e not in (1, -1):
                raise IndexOutOfRange(f"letter sign must be +-1, got {e!r}")
        else:
            i, e = abs(tok), (1 if tok > 0 else -1)
        if not 1 <= i <= n - 1:
            raise IndexOutOfRange(f"generator index {i} not in 1..{n - 1}")
        letters.append(_letter(i, e))
    return BraidWord(n, tuple(letters))


def identity_word(n: int) -> BraidWord:
    _check_n(n)
    return BraidWord(n)


def free_reduce(w: BraidWord) -> BraidWord:
    stack: list[Letter] = []
    for i, e in w.letters:
        if stack and stack[-1][0] == i and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append(_letter(i, e))
    return BraidWord(w.n, tuple(stack))


def _same_n(*words: BraidWord) -> int:
    n = words[0].n
    for w in words[1:]:
        if w.n != n:
            raise StrandCountMismatch(f"strand counts {n} and {w.n} differ")
    return n


def concat(*words: BraidWord) -> BraidWord:
    """Product of the words, free-reduced."""
    n = _same_n(*words)
    stack: list[Letter] = []
    for w in words:
        for i, e in w.letters:
            if stack and stack[-1][0] == i and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append(_letter(i, e))
    return BraidWord(n, tuple(stack))


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.n, tuple(_letter(i, -e) for i, e in reversed(w.letters)))


def conjugate(g: BraidWord, w: BraidWord) -> BraidWord:
    """g w g^-1, free-reduced."""
    return concat(g, w, invert(g))


def power(w: BraidWord, e: int) -> BraidWord:
    if e < 0:
        w, e = invert(w), -e
    w = free_reduce(w)
    return concat(*([w] * e)) if e else BraidWord(w.n)


def exponent_sum(w: BraidWord) -> int:
    return sum(e for _, e in w.letters)


def permutation_image(w: BraidWord) -> Permutation:
    """Image in S_n under sigma_i -> (i i+1); a homomorphism for composition ``p(q(x))``."""
    images = list(range(1, w.n + 1))
    for i, _ in w.letters:
        images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def alpha_power(n: int, k: int) -> BraidWord:
    """(sigma_1 ... sigma_{n-1})^k; for negative k the formal inverse."""
    if not isinstance(n, int) or n < 3:
        raise BadStrandCount(f"alpha needs n >= 3, got {n!r}")
    alpha = tuple(_letter(i, 1) for i in range(1, n))
    w = BraidWord(n, alpha * abs(k))
    return invert(w) if k < 0 else w


def delta_word(n: int) -> BraidWord:
    """Positive half-twist (s1..s_{n-1})(s1..s_{n-2})...(s1)."""
    _check_n(n)
    return BraidWord(n, tuple(_letter(i, 1) for top in range(n - 1, 0, -1) for i in range(1, top + 1)))


def sigma(n: int, i: int, sign: int = 1) -> BraidWord:
    """sigma_i^sign with i read mod n; i = 0 gives the free-reduced word for alpha sigma_{n-1}^sign alpha^-1."""
    if not isinstance(n, int) or n < 3:
        raise BadStrandCount(f"cyclic indices need n >= 3, got {n!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +-1, got {sign!r}")
    i %= n
    if i:
        return BraidWord(n, (_letter(i, sign),))
    a = alpha_power(n, 1)
    return conjugate(a, BraidWord(n, (_letter(n - 1, sign),)))


def shift_conjugate(w: BraidWord, m: int) -> BraidWord:
    """Index shift i -> i + m (mod n) letter by letter; equals alpha^m w alpha^-m in B_n."""
    n = w.n
    if m % n == 0:
        return w
    cache: dict[Letter, BraidWord] = {}
    parts = []
    for letter in w.letters:
        got = cache.get(letter)
        if got is None:
            got = cache[letter] = sigma(n, letter[0] + m, letter[1])
        parts.append(got)
    return concat(BraidWord(n), *parts)


_TOKEN = re.compile(r"^([+-]?)(\d+)(?:\^([+-]?\d+))?$")


def parse_word(n: int, text: str) -> BraidWord:
    """Parse the text word format for strand count ``n``."""
    _check_n(n)
    parts: list[BraidWord] = []
    run: list[Letter] = []
    for pos, tok in enumerate(text.split(), 1):
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad token {tok!r}", where=f"token {pos}")
        sign = -1 if m.group(1) == "-" else 1
        i = int(m.group(2))
        exp = sign * (int(m.group(3)) if m.group(3) is not None else 1)
        if i == 0:
            if n < 3:
                raise IndexOutOfRange("index 0 needs n >= 3")
            if exp:
                if run:
                    parts.append(BraidWord(n, tuple(run)))
                    run = []
                parts.append(power(sigma(n, 0, 1), exp))
            continue
        if not 1 <= i <= n - 1:
            raise IndexOutOfRange(f"generator index {i} not in 1..{n - 1} (token {pos})")
        e = 1 if exp > 0 else -1
        run.extend([_letter(i, e)] * abs(exp))
    if run:
        parts.append(BraidWord(n, tuple(run)))
    if not parts:
        return BraidWord(n)
    if len(parts) == 1:
        return parts[0]
    # only sigma_0 expansions are reduced; literal input letters stay as typed
    return BraidWord(n, tuple(letter for p in parts for letter in p.letters))


def format_word(w: BraidWord) -> str:
    """Text format with maximal runs collapsed to caret powers."""
    out = []
    letters = w.letters
    j = 0
    while j < len(letters):
        i, e = letters[j]
        k = j
        while k < len(letters) and letters[k] == (i, e):
            k += 1
        run = k - j
        if run == 1:
            out.append(str(i * e))
        else:
            out.append(f"{i}^{run * e}")
        j = k
    return " ".join(out)


def product(words: Iterable[BraidWord], n: int) -> BraidWord:
    return concat(BraidWord(n), *words)


def random_relation_rewrite(w: BraidWord, rng, steps: int = 5) -> BraidWord:
    """A word equal to ``w`` in B_n, obtained by random relation moves.

    Each move either swaps two adjacent far-apart letters, replaces a braid-relation
    triple ``i j i`` (same sign, |i - j| = 1) by ``j i j``, or inserts a cancelling pair.
    The result is generally not freely equal to ``w``.
    """
    n = w.n
    letters = list(w.letters)
    for _ in range(steps):
        swaps = [t for t in range(len(letters) - 1) if abs(letters[t][0] - letters[t + 1][0]) >= 2]
        triples = [
            t for t in range(len(letters) - 2)
            if letters[t] == letters[t + 2] and letters[t][1] == letters[t + 1][1]
            and abs(letters[t][0] - letters[t + 1][0]) == 1
        ]
        move = rng.randrange(3)
        if move == 0 and swaps:
            t = rng.choice(swaps)
            letters[t], letters[t + 1] = letters[t + 1], letters[t]
        elif move == 1 and triples:
            t = rng.choice(triples)
            a, b = letters[t], letters[t + 1]
            letters[t:t + 3] = [b, a, b]
        elif n >= 2:
            i = rng.randint(1, n - 1)
            e = rng.choice((1, -1))
            t = rng.randint(0, len(letters))
            letters[t:t] = [_letter(i, e), _letter(i, -e)]
    return BraidWord(n, tuple(letters))

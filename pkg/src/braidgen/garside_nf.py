"""
Word problem in B_n via the Garside left normal form.

Every braid has a unique expression Delta^p A_1 ... A_s where each A_j is a permutation
braid strictly between 1 and Delta and every adjacent pair (A_j, A_{j+1}) is left-weighted:
the left descent set of A_{j+1} is contained in the right descent set of A_j.

Internally a permutation braid is a 0-based tuple ``x`` with ``x[j]`` the strand (by
starting position) that sits at position ``j`` after the braid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid_core import BraidWord, Permutation, _same_n
from .errors import ParseError

Simple = tuple[int, ...]


def _delta(n: int) -> Simple:
    return tuple(range(n - 1, -1, -1))


def _identity(n: int) -> Simple:
    return tuple(range(n))


def _tau(x: Simple) -> Simple:
    m = len(x) - 1
    return tuple(m - x[m - j] for j in range(m + 1))


def _inverse(x: Simple) -> list[int]:
    inv = [0] * len(x)
    for j, s in enumerate(x):
        inv[s] = j
    return inv


def _normalize_pair(a: Simple, b: Simple) -> tuple[Simple, Simple] | None:
    """Make (a, b) left-weighted by moving the largest possible left divisor of b onto a.

    Returns None when the pair is already left-weighted.
    """
    n = len(a)
    binv = _inverse(b)
    aa = None
    moved = True
    while moved:
        moved = False
        for i in range(n - 1):
            # a sigma_i stays simple and sigma_i left-divides b
            if binv[i] > binv[i + 1]:
                if aa is None:
                    if a[i] > a[i + 1]:
                        continue
                    aa = list(a)
                elif aa[i] > aa[i + 1]:
                    continue
                aa[i], aa[i + 1] = aa[i + 1], aa[i]
                binv[i], binv[i + 1] = binv[i + 1], binv[i]
                moved = True
    if aa is None:
        return None
    bb = [0] * n
    for s, j in enumerate(binv):
        bb[j] = s
    return tuple(aa), tuple(bb)


class _Tables:
    """Per-n simple elements used while absorbing letters."""

    def __init__(self, n: int):
        self.n = n
        self.identity = _identity(n)
        self.delta = _delta(n)
        gen, co_gen = [], []
        for i in range(n - 1):
            s = list(self.identity)
            s[i], s[i + 1] = s[i + 1], s[i]
            gen.append(tuple(s))
            d = list(self.delta)
            d[i], d[i + 1] = d[i + 1], d[i]
            co_gen.append(tuple(d))
        # index [flip][i-1]; tau(sigma_i) = sigma_{n-i} and likewise for Delta sigma_i^-1
        self.pos = (gen, gen[::-1])
        self.neg = (co_gen, co_gen[::-1])


_TABLES: dict[int, _Tables] = {}


def _tables(n: int) -> _Tables:
    t = _TABLES.get(n)
    if t is None:
        t = _TABLES.setdefault(n, _Tables(n))
    return t


def _left_normal_form(n: int, letters) -> tuple[int, list[Simple]]:
    """(delta_power, factors) for the word ``letters``.

    Each sigma_i^-1 becomes Delta^-1 (Delta sigma_i^-1); pulling every Delta^-1 to the
    front flips the simples to its left, so w = Delta^-q y_1 ... y_L with every y_j simple.
    The positive part is then built right to left by left multiplication, which keeps
    freshly formed Deltas at the front where they are absorbed in O(1).
    """
    tb = _tables(n)
    ident, delta = tb.identity, tb.delta
    pos, neg = tb.pos, tb.neg
    rev: list[Simple] = []  # factors in reverse: rev[-1] is the leading factor
    r = 0
    neg_after = 0
    for idx in range(len(letters) - 1, -1, -1):
        i, e = letters[idx]
        flip = (neg_after + r) & 1
        if e > 0:
            c = pos[flip][i - 1]
        else:
            c = neg[flip][i - 1]
            neg_after += 1
        j = len(rev)
        rev.append(c)
        while j > 0:
            pair = _normalize_pair(rev[j], rev[j - 1])
            if pair is None:
                break
            a, b = pair
            rev[j] = a
            if b == ident:
                del rev[j - 1]
            else:
                rev[j - 1] = b
            j -= 1
        while rev and rev[-1] == delta:
            rev.pop()
            r += 1
    return r - neg_after, rev[::-1]


@dataclass(frozen=True)
class NormalForm:
    n: int
    delta_power: int
    factors: tuple[Permutation, ...] = ()

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factors

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def to_word(self) -> BraidWord:
        """A word representing this normal form (Delta powers expanded)."""
        from .braid_core import concat, delta_word, power

        parts = [power(delta_word(self.n), self.delta_power)]
        parts.extend(simple_to_word(p) for p in self.factors)
        return concat(BraidWord(self.n), *parts)

    def __str__(self) -> str:
        return format_normal_form(self)


def simple_to_word(p: Permutation) -> BraidWord:
    """Positive word for a permutation braid (bubble sort of its one-line images)."""
    n = p.n
    target = [x - 1 for x in p.images]
    cur = list(range(n))
    letters = []
    # build target left to right by bubbling each strand into place
    for j in range(n):
        pos = cur.index(target[j])
        while pos > j:
            cur[pos - 1], cur[pos] = cur[pos], cur[pos - 1]
            letters.append((pos, 1))
            pos -= 1
    return BraidWord(n, tuple(letters))


def normal_form(w: BraidWord) -> NormalForm:
    p, factors = _left_normal_form(w.n, w.letters)
    return NormalForm(w.n, p, tuple(Permutation(tuple(s + 1 for s in x)) for x in factors))


def _raw_nf(w: BraidWord) -> tuple[int, list[Simple]]:
    return _left_normal_form(w.n, w.letters)


def equal(w1: BraidWord, w2: BraidWord) -> bool:
    _same_n(w1, w2)
    return _raw_nf(w1) == _raw_nf(w2)


def is_identity(w: BraidWord) -> bool:
    p, factors = _raw_nf(w)
    return p == 0 and not factors


def format_normal_form(nf: NormalForm) -> str:
    head = f"D^{nf.delta_power} |"
    if not nf.factors:
        return head
    return head + " " + " | ".join(str(p) for p in nf.factors)


def parse_normal_form(n: int, text: str) -> NormalForm:
    parts = [p.strip() for p in text.split("|")]
    if not parts or not parts[0].startswith("D^"):
        raise ParseError("normal form must start with 'D^p |'", where="delta")
    try:
        power = int(parts[0][2:])
    except ValueError:
        raise ParseError(f"bad delta power {parts[0]!r}", where="delta") from None
    factors = []
    for j, chunk in enumerate(p for p in parts[1:] if p):
        try:
            perm = Permutation(tuple(int(t) for t in chunk.split()))
        except ValueError as exc:
            raise ParseError(str(exc), where=f"factor {j + 1}") from None
        if perm.n != n:
            raise ParseError(f"factor has degree {perm.n}, expected {n}", where=f"factor {j + 1}")
        factors.append(perm)
    return NormalForm(n, power, tuple(factors))

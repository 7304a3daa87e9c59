"""
Lawrence-Krammer representation over Z[q^+-1, t^+-1], used as an equality oracle
independent of the Garside machinery.

The basis is x_{j,k}, 1 <= j < k <= n, ordered lexicographically. sigma_i acts by

    x_{j,k}                                     i not in {j-1, j, k-1, k}
    q x_{i,k} + (q^2 - q) x_{i,j} + (1 - q) x_{j,k}     i = j - 1
    x_{j+1,k}                                   i = j != k - 1
    q x_{j,i} + (1 - q) x_{j,k} - (q^2 - q) t x_{i,k}   i = k - 1 != j
    x_{j,k+1}                                   i = k
    -t q^2 x_{j,k}                              i = j = k - 1

and the matrix of sigma_i has the image of x_{j,k} as its (j,k) column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .braid_core import BraidWord, _same_n
from .errors import IndexOutOfRange, WordTooLong

DEFAULT_LENGTH_BOUND = 64

Monomial = tuple[int, int]  # (power of q, power of t)


class LaurentPoly2:
    """Integer Laurent polynomial in q and t; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, int] = {}
        for mono, c in items:
            c = clean.get(mono, 0) + c
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[Monomial, int]) -> LaurentPoly2:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, c: int = 1, q: int = 0, t: int = 0) -> LaurentPoly2:
        return cls._wrap({(q, t): c} if c else {})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: LaurentPoly2 | int) -> LaurentPoly2:
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            c += out.get(m, 0)
            if c:
                out[m] = c
            else:
                del out[m]
        return LaurentPoly2._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly2:
        return LaurentPoly2._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: LaurentPoly2 | int) -> LaurentPoly2:
        return self + (-_coerce(other))

    def __rsub__(self, other: LaurentPoly2 | int) -> LaurentPoly2:
        return _coerce(other) - self

    def __mul__(self, other: LaurentPoly2 | int) -> LaurentPoly2:
        other = _coerce(other)
        if len(other._terms) == 1:
            ((a2, b2), c2), = other._terms.items()
            return LaurentPoly2._wrap({(a + a2, b + b2): c * c2 for (a, b), c in self._terms.items()})
        out: dict[Monomial, int] = {}
        for (a, b), c in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a + a2, b + b2)
                v = out.get(m, 0) + c * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return LaurentPoly2._wrap(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly2.monomial(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly2({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(s for s in (_pow("q", a), _pow("t", b)) if s)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _pow(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _coerce(x: LaurentPoly2 | int) -> LaurentPoly2:
    if isinstance(x, LaurentPoly2):
        return x
    if isinstance(x, int):
        return LaurentPoly2.monomial(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


ZERO = LaurentPoly2()
ONE = LaurentPoly2.monomial(1)


def _poly(*terms: tuple[int, int, int]) -> LaurentPoly2:
    """Shorthand: each term is (coefficient, q power, t power)."""
    return LaurentPoly2(((a, b), c) for c, a, b in terms)


@lru_cache(maxsize=None)
def basis(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def _index(n: int) -> dict[tuple[int, int], int]:
    return {pair: c for c, pair in enumerate(basis(n))}


# Sparse generator columns: column c -> ((row, coefficient), ...)
Column = tuple[tuple[int, LaurentPoly2], ...]


@lru_cache(maxsize=None)
def _generator_columns(n: int, i: int, sign: int) -> tuple[Column, ...]:
    idx = _index(n)
    x = lambda a, b: idx[(a, b)]  # noqa: E731
    cols = []
    for j, k in basis(n):
        if sign > 0:
            if i == j - 1:
                col = [(x(i, k), _poly((1, 1, 0))), (x(i, j), _poly((1, 2, 0), (-1, 1, 0))),
                       (x(j, k), _poly((1, 0, 0), (-1, 1, 0)))]
            elif i == j and i != k - 1:
                col = [(x(j + 1, k), ONE)]
            elif i == k - 1 and i != j:
                col = [(x(j, i), _poly((1, 1, 0))), (x(j, k), _poly((1, 0, 0), (-1, 1, 0))),
                       (x(i, k), _poly((-1, 2, 1), (1, 1, 1)))]
            elif i == k:
                col = [(x(j, k + 1), ONE)]
            elif i == j == k - 1:
                col = [(x(j, k), _poly((-1, 2, 1)))]
            else:
                col = [(x(j, k), ONE)]
        else:
            e = x(i, i + 1)
            if (j, k) == (i, i + 1):
                col = [(e, _poly((-1, -2, -1)))]
            elif j == i + 1:  # x_{i+1,m}, m > i+1
                col = [(x(i, k), ONE)]
            elif j == i and k > i + 1:  # x_{i,m}
                col = [(x(i + 1, k), _poly((1, -1, 0))), (x(i, k), _poly((1, 0, 0), (-1, -1, 0))),
                       (e, _poly((1, -1, -1), (-1, -2, -1)))]
            elif k == i + 1:  # x_{m,i+1}, m < i
                col = [(x(j, i), ONE)]
            elif k == i:  # x_{m,i}
                col = [(x(j, i + 1), _poly((1, -1, 0))), (x(j, i), _poly((1, 0, 0), (-1, -1, 0))),
                       (e, _poly((1, -2, 0), (-1, -1, 0)))]
            else:
                col = [(x(j, k), ONE)]
        cols.append(tuple((r, c) for r, c in col if c))
    return tuple(cols)


@dataclass(frozen=True, eq=False)
class LKMatrix:
    """Square matrix over LaurentPoly2; ``columns[c][r]`` is the entry in row r, column c."""

    n: int
    columns: tuple[tuple[LaurentPoly2, ...], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.columns)

    def entry(self, row: int, col: int) -> LaurentPoly2:
        return self.columns[col][row]

    def rows(self) -> list[list[LaurentPoly2]]:
        return [[col[r] for col in self.columns] for r in range(self.dim)]

    @classmethod
    def identity(cls, n: int) -> LKMatrix:
        d = len(basis(n))
        return cls(n, tuple(tuple(ONE if r == c else ZERO for r in range(d)) for c in range(d)))

    def __matmul__(self, other: LKMatrix) -> LKMatrix:
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        d = self.dim
        out = []
        for ocol in other.columns:
            acc = [ZERO] * d
            for r, coeff in enumerate(ocol):
                if coeff:
                    for row, v in enumerate(self.columns[r]):
                        if v:
                            acc[row] = acc[row] + v * coeff
            out.append(tuple(acc))
        return LKMatrix(self.n, tuple(out))

    def times_generator(self, i: int, sign: int) -> LKMatrix:
        """self @ lk_generator(n, i, sign), using the sparse generator columns."""
        gcols = _generator_columns(self.n, i, sign)
        cols = self.columns
        out = []
        for c, gcol in enumerate(gcols):
            if len(gcol) == 1 and gcol[0][1] == ONE:
                out.append(cols[gcol[0][0]])
                continue
            acc = None
            for r, coeff in gcol:
                part = [v * coeff if v else ZERO for v in cols[r]]
                acc = part if acc is None else [a + b for a, b in zip(acc, part)]
            out.append(tuple(acc))
        return LKMatrix(self.n, tuple(out))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LKMatrix):
            return NotImplemented
        return self.n == other.n and self.columns == other.columns

    def __hash__(self) -> int:
        return hash((self.n, self.columns))

    def is_identity(self) -> bool:
        return self == LKMatrix.identity(self.n)


def lk_generator(n: int, i: int, sign: int = 1) -> LKMatrix:
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"generator index {i} not in 1..{n - 1}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +-1, got {sign!r}")
    return LKMatrix.identity(n).times_generator(i, sign)


def lk_matrix(w: BraidWord, bound: int = DEFAULT_LENGTH_BOUND) -> LKMatrix:
    if len(w) > bound:
        raise WordTooLong(f"word has {len(w)} letters, Lawrence-Krammer bound is {bound}")
    m = LKMatrix.identity(w.n)
    for i, e in w.letters:
        m = m.times_generator(i, e)
    return m


def equal_via_lk(w1: BraidWord, w2: BraidWord, bound: int = DEFAULT_LENGTH_BOUND) -> bool:
    _same_n(w1, w2)
    return lk_matrix(w1, bound) == lk_matrix(w2, bound)

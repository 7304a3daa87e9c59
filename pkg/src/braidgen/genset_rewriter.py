"""
Factor commutator-subgroup elements over small generating sets.

Two-generator sets (n = 5 or n >= 7, 2 <= k <= n-2, gcd(k, n) = 1)::

    R = alpha^k sigma_1^-N,   S = sigma_1 sigma_{1+k}^-1,   N = k(n-1)

with the conjugate families r_m = alpha^k sigma_{1+mk}^-N and s_m = sigma_{1+mk}
sigma_{1+(m+1)k}^-1 (indices mod n). They obey s_{m+1} = r_m s_m r_m^-1 and
r_{m+1} = r_m s_m^N, and sigma_1 sigma_i^-1 = s_0 s_1 ... s_{l-1} whenever
1 + kl = i (mod n). Words over {R, S} are kept as straight-line programs because
their flat length grows roughly like N^m.

Three-generator sets for B_4' and B_6', and the reduction of an arbitrary element of
B_n' to products of sigma_1 sigma_x^-1, live here as well.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .braid_core import (
    BraidWord,
    alpha_power,
    concat,
    conjugate,
    exponent_sum,
    free_reduce,
    invert,
    make_word,
    power,
    sigma,
)
from .errors import (
    BadIndices,
    BadParams,
    BadTarget,
    NoCommutingIndex,
    NonZeroExponentSum,
    ParseError,
    TooLong,
)
from .garside_nf import equal

DEFAULT_MAX_FLAT_LEN = 10**6

Pair = tuple[int, int]
# (x, e) stands for (sigma_1 sigma_x^-1)^e
Sigma1Letter = tuple[int, int]
# (symbol, exponent)
SymbolPower = tuple[str, int]


@dataclass(frozen=True)
class RewriteParams:
    n: int
    k: int

    def __post_init__(self):
        check_params(self.n, self.k)

    @property
    def N(self) -> int:
        return self.k * (self.n - 1)


def check_params(n: int, k: int) -> None:
    if not isinstance(n, int) or not isinstance(k, int):
        raise BadParams(f"n and k must be integers, got n={n!r}, k={k!r}")
    if n in (3, 4, 6):
        raise BadParams(
            f"n={n} is excluded: for n in {{3, 4, 6}} every k coprime to n is +-1 mod n, "
            "so no valid step exists"
        )
    if n < 5:
        raise BadParams(f"n must be 5 or at least 7, got {n}")
    if not 2 <= k <= n - 2:
        raise BadParams(f"k={k} outside 2..{n - 2} (k = +-1 mod {n} is not allowed)")
    if math.gcd(k, n) != 1:
        raise BadParams(f"gcd(k, n) = gcd({k}, {n}) = {math.gcd(k, n)} != 1")


def valid_steps(n: int) -> list[int]:
    """All k admitted for strand count n (empty for excluded n)."""
    if n in (3, 4, 6) or n < 5:
        return []
    return [k for k in range(2, n - 1) if math.gcd(k, n) == 1]


# ---------------------------------------------------------------------------
# Closed forms


@lru_cache(maxsize=4096)
def r_word(params: RewriteParams, m: int) -> BraidWord:
    """alpha^k sigma_{1+mk}^-N, sigma_0 expanded."""
    if m < 0:
        raise BadParams(f"m must be >= 0, got {m}")
    n, k = params.n, params.k
    return concat(alpha_power(n, k), power(sigma(n, 1 + m * k, -1), params.N))


@lru_cache(maxsize=4096)
def s_word(params: RewriteParams, m: int) -> BraidWord:
    """sigma_{1+mk} sigma_{1+(m+1)k}^-1, sigma_0 expanded."""
    if m < 0:
        raise BadParams(f"m must be >= 0, got {m}")
    n, k = params.n, params.k
    return concat(sigma(n, 1 + m * k, 1), sigma(n, 1 + (m + 1) * k, -1))


def telescope_length(params: RewriteParams, i: int) -> int:
    """Least l >= 0 with 1 + k l = i (mod n)."""
    n, k = params.n, params.k
    if not 2 <= i <= n - 1:
        raise BadTarget(f"target index {i} not in 2..{n - 1}")
    return ((i - 1) * pow(k, -1, n)) % n


def pair_word(n: int, pair: Pair) -> BraidWord:
    """sigma_a sigma_b^-1 with indices mod n (sigma_0 expanded)."""
    a, b = pair
    return concat(sigma(n, a, 1), sigma(n, b, -1))


# ---------------------------------------------------------------------------
# Straight-line programs over {R, S}


_SYMBOL = re.compile(r"^([RS])(\d+)$")


def symbol_name(kind: str, m: int) -> str:
    return f"{kind}{m}"


def parse_symbol(sym: str) -> tuple[str, int]:
    m = _SYMBOL.match(sym)
    if not m:
        raise ParseError(f"bad symbol {sym!r}")
    return m.group(1), int(m.group(2))


@dataclass(frozen=True)
class TwoGenSLP:
    """Derivation rules over R0 = R and S0 = S plus a root sequence of symbol powers."""

    params: RewriteParams
    rules: tuple[tuple[str, tuple[SymbolPower, ...]], ...] = ()
    root: tuple[SymbolPower, ...] = ()
    _lengths: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        defined = {"R0", "S0"}
        for name, body in self.rules:
            for sym, _ in body:
                if sym not in defined:
                    raise BadParams(f"rule {name} uses undefined symbol {sym}")
            if name in defined:
                raise BadParams(f"symbol {name} defined twice")
            defined.add(name)
        for sym, _ in self.root:
            if sym not in defined:
                raise BadParams(f"root uses undefined symbol {sym}")

    @property
    def rule_map(self) -> dict[str, tuple[SymbolPower, ...]]:
        return dict(self.rules)

    def symbol_length(self, sym: str) -> int:
        """Flat length of a symbol over {R, S}, from the rules alone."""
        memo = self._lengths
        if not memo:
            memo["R0"] = memo["S0"] = 1
            for name, body in self.rules:
                memo[name] = sum(abs(e) * memo[s] for s, e in body)
        return memo[sym]

    def flat_length(self) -> int:
        return sum(abs(e) * self.symbol_length(s) for s, e in self.root)

    def used_symbols(self) -> set[str]:
        rules = self.rule_map
        seen: set[str] = set()
        stack = [s for s, _ in self.root]
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            stack.extend(t for t, _ in rules.get(s, ()))
        return seen

    def to_lines(self) -> list[str]:
        lines = [f"{name} = {_format_body(body)}" for name, body in self.rules]
        lines.append(f"ROOT = {_format_body(self.root)}".rstrip())
        return lines

    def to_text(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    def __str__(self) -> str:
        return self.to_text()


def _format_body(body: Iterable[SymbolPower]) -> str:
    return " ".join(s if e == 1 else f"{s}^{e}" for s, e in body)


_SLP_TOKEN = re.compile(r"^([RS]\d+)(?:\^([+-]?\d+))?$")


def parse_slp(params: RewriteParams, text: str | Sequence[str]) -> TwoGenSLP:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    rules = []
    root = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError("expected 'NAME = body'", where=f"slp line {lineno}")
        name, body_text = (p.strip() for p in line.split("=", 1))
        body = []
        for tok in body_text.split():
            m = _SLP_TOKEN.match(tok)
            if not m:
                raise ParseError(f"bad token {tok!r}", where=f"slp line {lineno}")
            e = int(m.group(2)) if m.group(2) is not None else 1
            if e:
                body.append((m.group(1), e))
        if name == "ROOT":
            if root is not None:
                raise ParseError("duplicate ROOT line", where=f"slp line {lineno}")
            root = tuple(body)
        else:
            if root is not None:
                raise ParseError("rule after ROOT", where=f"slp line {lineno}")
            if not _SYMBOL.match(name):
                raise ParseError(f"bad rule name {name!r}", where=f"slp line {lineno}")
            rules.append((name, tuple(body)))
    if root is None:
        raise ParseError("missing ROOT line", where="slp")
    try:
        return TwoGenSLP(params, tuple(rules), root)
    except BadParams as exc:
        raise ParseError(str(exc), where="slp") from None


def recurrence_rules(params: RewriteParams, levels: int) -> tuple[tuple[str, tuple[SymbolPower, ...]], ...]:
    """Rules defining S_{m+1}, R_{m+1} for m = 0 .. levels-1."""
    rules = []
    for m in range(levels):
        r, s = symbol_name("R", m), symbol_name("S", m)
        rules.append((symbol_name("S", m + 1), ((r, 1), (s, 1), (r, -1))))
        rules.append((symbol_name("R", m + 1), ((r, 1), (s, params.N))))
    return tuple(rules)


def theorem1_factor(params: RewriteParams, i: int) -> TwoGenSLP:
    """SLP with root S_0 S_1 ... S_{l-1}, equal to sigma_1 sigma_i^-1."""
    ell = telescope_length(params, i)
    root = tuple((symbol_name("S", m), 1) for m in range(ell))
    return TwoGenSLP(params, recurrence_rules(params, ell - 1), root)


def flatten(slp: TwoGenSLP, max_len: int = DEFAULT_MAX_FLAT_LEN) -> tuple[tuple[str, int], ...]:
    """Expand to a word over the letters 'R', 'S' as (letter, +-1) pairs."""
    total = slp.flat_length()
    if total > max_len:
        raise TooLong(f"flat length {total} exceeds max_len {max_len}")
    rules = slp.rule_map
    memo: dict[str, tuple[tuple[str, int], ...]] = {"R0": (("R", 1),), "S0": (("S", 1),)}

    def expand(sym: str) -> tuple[tuple[str, int], ...]:
        got = memo.get(sym)
        if got is None:
            out: list[tuple[str, int]] = []
            for s, e in rules[sym]:
                out.extend(_power_flat(expand(s), e))
            got = memo[sym] = tuple(out)
        return got

    # rules are listed in dependency order, so expanding in order keeps recursion shallow
    for name, _ in slp.rules:
        if name in slp.used_symbols():
            expand(name)
    out: list[tuple[str, int]] = []
    for s, e in slp.root:
        out.extend(_power_flat(expand(s), e))
    return tuple(out)


def _power_flat(seq: tuple[tuple[str, int], ...], e: int) -> tuple[tuple[str, int], ...]:
    if e < 0:
        seq = tuple((c, -x) for c, x in reversed(seq))
    return seq * abs(e)


def substitute(params: RewriteParams, flat: Iterable[tuple[str, int]]) -> BraidWord:
    """Replace R by r_0 and S by s_0 in a flat two-letter word."""
    gens = {
        ("R", 1): r_word(params, 0),
        ("R", -1): invert(r_word(params, 0)),
        ("S", 1): s_word(params, 0),
        ("S", -1): invert(s_word(params, 0)),
    }
    return concat(BraidWord(params.n), *(gens[x] for x in flat))


def expand_slp(slp: TwoGenSLP, max_len: int = DEFAULT_MAX_FLAT_LEN) -> BraidWord:
    """Artin word of an SLP: flatten, then substitute the generator words."""
    return substitute(slp.params, flatten(slp, max_len))


def closed_form(params: RewriteParams, sym: str) -> BraidWord:
    """The word a symbol stands for: R_m -> r_m, S_m -> s_m."""
    kind, m = parse_symbol(sym)
    return r_word(params, m) if kind == "R" else s_word(params, m)


def closed_form_root(slp: TwoGenSLP) -> BraidWord:
    """The root with every symbol replaced by its closed form (short, never flattened)."""
    p = slp.params
    return concat(BraidWord(p.n), *(power(closed_form(p, s), e) for s, e in slp.root))


# ---------------------------------------------------------------------------
# Three-generator sets for B_4' and B_6'


@dataclass(frozen=True)
class B4Generators:
    u_inv: BraidWord
    v_inv: BraidWord
    c_inv: BraidWord
    u: BraidWord
    v: BraidWord
    w: BraidWord
    c: BraidWord
    relation_holds: bool

    @property
    def generators(self) -> tuple[BraidWord, BraidWord, BraidWord]:
        return self.u_inv, self.v_inv, self.c_inv


def theorem2_b4_generators() -> B4Generators:
    """sigma_1 sigma_2^-1, sigma_1 (sigma_1 sigma_2^-1) sigma_1^-1, sigma_1 sigma_3^-1 in B_4,
    with the relation w = u c u^-1 checked."""
    u = make_word(4, [2, -1])
    v = make_word(4, [1, 2, -1, -1])
    w = make_word(4, [2, 3, -1, -2])
    c = make_word(4, [3, -1])
    rel = equal(w, concat(u, c, invert(u)))
    if not rel:
        raise AssertionError("w = u c u^-1 failed in B_4")
    return B4Generators(
        u_inv=invert(u),
        v_inv=conjugate(make_word(4, [1]), make_word(4, [1, -2])),
        c_inv=invert(c),
        u=u, v=v, w=w, c=c,
        relation_holds=rel,
    )


def psi_b4_to_b3(w: BraidWord) -> BraidWord:
    """B_4 -> B_3 sending sigma_1, sigma_3 to sigma_1 and sigma_2 to sigma_2."""
    if w.n != 4:
        raise BadParams(f"psi is defined on B_4, got n={w.n}")
    return make_word(3, [(1 if i == 3 else i, e) for i, e in w.letters])


def b6_generators() -> dict[str, BraidWord]:
    return {
        "a": make_word(6, [1, -2]),
        "b": make_word(6, [1, -3]),
        "r": concat(alpha_power(6, 2), power(make_word(6, [1]), -10)),
    }


_B6_FACTORS: dict[int, tuple[SymbolPower, ...]] = {
    2: (("a", 1),),
    3: (("b", 1),),
    4: (("b", -9), ("r", 1), ("a", 1), ("r", -1), ("b", 10)),
    5: (("b", 1), ("r", 1), ("b", 1), ("r", -1)),
}


def theorem2_b6_factor(i: int) -> tuple[SymbolPower, ...]:
    """Word over {a, b, r} equal to sigma_1 sigma_i^-1 in B_6."""
    if i not in _B6_FACTORS:
        raise BadTarget(f"target index {i} not in 2..5")
    return _B6_FACTORS[i]


def substitute_b6(word: Iterable[SymbolPower]) -> BraidWord:
    gens = b6_generators()
    return concat(BraidWord(6), *(power(gens[s], e) for s, e in word))


# ---------------------------------------------------------------------------
# Conjugates of sigma_a sigma_b^-1


def commutes(n: int, i: int, j: int) -> bool:
    """sigma_i and sigma_j commute (indices mod n) iff i - j != +-1 mod n."""
    return (i - j) % n not in (1, n - 1)


def choose_commuting_index(n: int, i: int, j: int, ring: bool = False) -> int:
    """Least l commuting with both sigma_i and sigma_j; scans 1..n-1, or 0..n-1 with ``ring``."""
    candidates = range(n) if ring else range(1, n)
    for ell in candidates:
        if commutes(n, ell, i) and commutes(n, ell, j):
            return ell
    raise NoCommutingIndex(f"no generator commutes with sigma_{i} and sigma_{j} in B_{n}")


@dataclass(frozen=True)
class ConjugateFactor:
    """conjugator (sigma_a sigma_b^-1)^exponent conjugator^-1."""

    conjugator: BraidWord
    core: Pair
    exponent: int = 1

    def __post_init__(self):
        if self.core[0] == self.core[1]:
            raise BadIndices(f"core indices must differ, got {self.core}")
        if self.exponent not in (1, -1):
            raise BadIndices(f"exponent must be +-1, got {self.exponent}")

    def to_word(self) -> BraidWord:
        n = self.conjugator.n
        return conjugate(self.conjugator, power(pair_word(n, self.core), self.exponent))


def _conjugate_pair(n: int, k: int, eps: int, pair: Pair, ring: bool, skip_commuting: bool) -> list[Pair]:
    i, j = pair
    if skip_commuting and commutes(n, k, i) and commutes(n, k, j):
        return [pair]
    if eps > 0:
        ell = choose_commuting_index(n, i, j, ring)
        out = [(k, ell), (i, j), (ell, k)]
    else:
        ell = choose_commuting_index(n, k, i, ring)
        m = choose_commuting_index(n, j, k, ring)
        out = [(ell, k), (i, ell), (m, j), (k, m)]
    return [(a % n, b % n) if ring else (a, b) for a, b in out if (a - b) % n]


def appendix_conjugate_expand(n: int, factor: ConjugateFactor, skip_commuting: bool = False) -> list[Pair]:
    """Pairs (a, b) whose product of sigma_a sigma_b^-1 equals the conjugate ``factor``.

    Peels the conjugator one letter at a time from the inside out. For n = 5 the
    indices run mod 5 and may include 0 (see :func:`eliminate_sigma0`). With
    ``skip_commuting`` a letter commuting with both indices of a pair leaves it unchanged.
    """
    if n < 5:
        raise BadParams(f"conjugate expansion needs n >= 5, got {n}")
    if factor.conjugator.n != n:
        raise BadParams(f"conjugator lives in B_{factor.conjugator.n}, expected B_{n}")
    ring = n == 5
    a, b = factor.core
    if ring:
        a, b = a % n, b % n
    elif not (1 <= a <= n - 1 and 1 <= b <= n - 1):
        raise BadIndices(f"core {factor.core} outside 1..{n - 1}")
    if a == b:
        raise BadIndices(f"core indices must differ, got {factor.core}")
    pairs = [(a, b)] if factor.exponent > 0 else [(b, a)]
    for k, eps in reversed(factor.conjugator.letters):
        pairs = [q for p in pairs for q in _conjugate_pair(n, k, eps, p, ring, skip_commuting)]
    return pairs


# sigma_1 sigma_0^-1 in B_5, with sigma_0 = alpha sigma_4 alpha^-1:
#   (s1^2 s2 s1^-3)(s3 s4^-1)(s1^3 s3^-1 s2^-1 s1^-1)
SIGMA1_SIGMA0_INV: tuple[Pair, ...] = (
    (1, 4), (1, 4), (2, 4), (4, 1), (4, 1), (4, 1),
    (3, 4),
    (1, 3), (1, 4), (1, 4), (4, 2), (4, 1),
)


def _invert_pairs(pairs: Sequence[Pair]) -> list[Pair]:
    return [(b, a) for a, b in reversed(pairs)]


def eliminate_sigma0(pairs: Iterable[Pair]) -> list[Pair]:
    """Rewrite pairs mod 5 so that index 0 never appears."""
    out: list[Pair] = []
    for a, b in pairs:
        a, b = a % 5, b % 5
        if a == b:
            continue
        if b == 0:
            if a != 1:
                out.append((a, 1))
            out.extend(SIGMA1_SIGMA0_INV)
        elif a == 0:
            tail = [] if b == 1 else [(b, 1)]
            out.extend(_invert_pairs(tail + list(SIGMA1_SIGMA0_INV)))
        else:
            out.append((a, b))
    return out


def pairs_to_sigma1_alphabet(pairs: Iterable[Pair]) -> list[Sigma1Letter]:
    """sigma_i sigma_j^-1 = (sigma_1 sigma_i^-1)^-1 (sigma_1 sigma_j^-1)."""
    out: list[Sigma1Letter] = []
    for i, j in pairs:
        if i == j:
            continue
        if i != 1:
            out.append((i, -1))
        if j != 1:
            out.append((j, 1))
    return out


def sigma1_letters_word(n: int, letters: Iterable[Sigma1Letter]) -> BraidWord:
    return concat(BraidWord(n), *(power(pair_word(n, (1, x)), e) for x, e in letters))


def telescope_decompose(w: BraidWord) -> list[ConjugateFactor]:
    """Split a zero-exponent-sum word into conjugates of sigma_a sigma_1^-1 or sigma_1 sigma_a^-1.

    With E_t the running exponent sum, letter t contributes
    sigma_1^{E_{t-1}} x_t sigma_1^{-E_t}; the ordered product telescopes to w exactly.
    """
    if exponent_sum(w) != 0:
        raise NonZeroExponentSum(f"exponent sum is {exponent_sum(w)}, not 0")
    n = w.n
    s1 = make_word(n, [1]) if n >= 2 else BraidWord(n)
    out = []
    running = 0
    for i, e in w.letters:
        before, running = running, running + e
        if i == 1:
            continue
        if e > 0:
            out.append(ConjugateFactor(power(s1, before), (i, 1), 1))
        else:
            # sigma_1^E sigma_i^-1 sigma_1^{1-E} = sigma_1^{E-1} (sigma_1 sigma_i^-1) sigma_1^{-(E-1)}
            out.append(ConjugateFactor(power(s1, running), (1, i), 1))
    return out


def _free_reduce_pairs(letters: Iterable[tuple]) -> list:
    stack: list = []
    for x, e in letters:
        if stack and stack[-1][0] == x and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((x, e))
    return stack


def _merge_runs(items: Iterable[SymbolPower]) -> tuple[SymbolPower, ...]:
    out: list[list] = []
    for s, e in items:
        if out and out[-1][0] == s:
            out[-1][1] += e
            if not out[-1][1]:
                out.pop()
        else:
            out.append([s, e])
    return tuple((s, e) for s, e in out)


def rewrite_pipeline(params: RewriteParams, w: BraidWord) -> list[Sigma1Letter]:
    """w as a free-reduced word over the sigma_1 sigma_x^-1 alphabet."""
    n = params.n
    pairs: list[Pair] = []
    for f in telescope_decompose(w):
        pairs.extend(appendix_conjugate_expand(n, f, skip_commuting=True))
    if n == 5:
        pairs = eliminate_sigma0(pairs)
    return _free_reduce_pairs(pairs_to_sigma1_alphabet(pairs))


def rewrite_full(params: RewriteParams, w: BraidWord) -> TwoGenSLP:
    """SLP over {R, S} whose expansion equals the zero-exponent-sum word w."""
    if w.n != params.n:
        raise BadParams(f"word lives in B_{w.n}, params are for B_{params.n}")
    if exponent_sum(w) != 0:
        raise NonZeroExponentSum(f"exponent sum is {exponent_sum(w)}, not 0")
    red = free_reduce(w)
    if not red.letters:
        return TwoGenSLP(params)
    for sym, gen in (("R0", r_word(params, 0)), ("S0", s_word(params, 0))):
        if red == gen:
            return TwoGenSLP(params, root=((sym, 1),))
        if red == invert(gen):
            return TwoGenSLP(params, root=((sym, -1),))
    letters = rewrite_pipeline(params, red)
    root: list[SymbolPower] = []
    levels = 0
    for x, e in letters:
        ell = telescope_length(params, x)
        levels = max(levels, ell - 1)
        seq = [(symbol_name("S", m), 1) for m in range(ell)]
        if e < 0:
            seq = [(s, -1) for s, _ in reversed(seq)]
        root.extend(seq)
    return TwoGenSLP(params, recurrence_rules(params, levels), _merge_runs(root))

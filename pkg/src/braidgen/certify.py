"""
Certificates: ordered lists of short braid identities that together prove an SLP
factorization correct without expanding it.

For a two-generator certificate the chain is

* ``S_RECURRENCE`` (m): s_{m+1} = r_m s_m r_m^-1
* ``R_RECURRENCE`` (m): r_{m+1} = r_m s_m^N
* ``TELESCOPE``: target = root with every symbol replaced by its closed form.

By induction on m every SLP symbol then expands to a word equal to its closed form,
so the root expansion equals the target. The verifier checks each ground identity
with the normal form and the bookkeeping (every rule justified, words match their
rule instances); it never flattens the SLP.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .braid_core import BraidWord, concat, exponent_sum, format_word, free_reduce, invert, make_word, parse_word, power
from .errors import BraidError, ParseError
from .garside_nf import equal
from .genset_rewriter import (
    SIGMA1_SIGMA0_INV,
    RewriteParams,
    TwoGenSLP,
    b6_generators,
    closed_form_root,
    expand_slp,
    pair_word,
    parse_slp,
    parse_symbol,
    psi_b4_to_b3,
    r_word,
    recurrence_rules,
    rewrite_full,
    s_word,
    substitute_b6,
    telescope_length,
    theorem1_factor,
    theorem2_b4_generators,
    theorem2_b6_factor,
)

RULES = (
    "S_RECURRENCE",
    "R_RECURRENCE",
    "TELESCOPE",
    "B6_IDENTITY",
    "B4_RELATION",
    "APPENDIX_BASE",
    "SIGMA0_ELIM",
    "AD_HOC",
)


@dataclass(frozen=True)
class IdentityClaim:
    n: int
    lhs: BraidWord
    rhs: BraidWord
    rule: str
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.rule not in RULES:
            raise BraidError(f"unknown rule tag {self.rule!r}")


@dataclass(frozen=True)
class Certificate:
    n: int
    k: int | None
    claims: tuple[IdentityClaim, ...]
    slp: TwoGenSLP | None = None
    target: BraidWord | None = None

    @property
    def params(self) -> RewriteParams | None:
        return RewriteParams(self.n, self.k) if self.k is not None else None


@dataclass
class ClaimResult:
    index: int
    rule: str
    passed: bool
    seconds: float
    lhs_len: int
    rhs_len: int
    reason: str = ""


@dataclass
class VerificationReport:
    passed: bool
    claims: list[ClaimResult]
    structural_errors: list[str]
    seconds: float

    @property
    def failed_claims(self) -> list[int]:
        return [c.index for c in self.claims if not c.passed]

    def summary(self) -> str:
        ok = sum(c.passed for c in self.claims)
        status = "PASS" if self.passed else "FAIL"
        return f"{status}: {ok}/{len(self.claims)} claims, {len(self.structural_errors)} structural errors, {self.seconds:.2f}s"


# ---------------------------------------------------------------------------
# Building


def recurrence_claims(params: RewriteParams, levels: int) -> list[IdentityClaim]:
    n, k, N = params.n, params.k, params.N
    claims = []
    for m in range(levels):
        r, s = r_word(params, m), s_word(params, m)
        claims.append(IdentityClaim(n, s_word(params, m + 1), concat(r, s, invert(r)), "S_RECURRENCE", {"k": k, "m": m}))
        claims.append(IdentityClaim(n, r_word(params, m + 1), concat(r, power(s, N)), "R_RECURRENCE", {"k": k, "m": m}))
    return claims


def build_certificate(params: RewriteParams, i: int) -> Certificate:
    """Certificate that sigma_1 sigma_i^-1 equals the root S_0 ... S_{l-1}."""
    ell = telescope_length(params, i)
    slp = theorem1_factor(params, i)
    target = make_word(params.n, [1, -i])
    claims = recurrence_claims(params, ell - 1)
    claims.append(IdentityClaim(params.n, target, closed_form_root(slp), "TELESCOPE",
                                {"k": params.k, "i": i, "l": ell}))
    return Certificate(params.n, params.k, tuple(claims), slp, target)


def certificate_for_word(params: RewriteParams, w: BraidWord, slp: TwoGenSLP | None = None) -> Certificate:
    """Certificate for a :func:`rewrite_full` factorization of an arbitrary word of B_n'."""
    if slp is None:
        slp = rewrite_full(params, w)
    levels = len(slp.rules) // 2
    claims = recurrence_claims(params, levels)
    claims.append(IdentityClaim(params.n, w, closed_form_root(slp), "TELESCOPE",
                                {"k": params.k, "root_len": len(slp.root)}))
    return Certificate(params.n, params.k, tuple(claims), slp, w)


def theorem2_claims() -> list[IdentityClaim]:
    """The B_6 identities for a, b, r and the B_4 relation and kernel fact."""
    g = b6_generators()
    a, b, r = g["a"], g["b"], g["r"]
    w6 = lambda toks: make_word(6, toks)  # noqa: E731
    claims = [
        IdentityClaim(6, concat(r, b, invert(r)), w6([3, -5]), "B6_IDENTITY", {"name": "rbr^-1 = s3 s5^-1"}),
        IdentityClaim(6, w6([1, -5]), substitute_b6(theorem2_b6_factor(5)), "B6_IDENTITY", {"name": "s1 s5^-1 = b r b r^-1"}),
        IdentityClaim(6, concat(r, a, invert(r)), w6([-3] * 9 + [-4] + [3] * 10), "B6_IDENTITY",
                      {"name": "r a r^-1 = s3^-9 s4^-1 s3^10"}),
        IdentityClaim(6, w6([1, -4]), substitute_b6(theorem2_b6_factor(4)), "B6_IDENTITY",
                      {"name": "s1 s4^-1 = b^-9 r a r^-1 b^10"}),
    ]
    b4 = theorem2_b4_generators()
    claims.append(IdentityClaim(4, b4.w, concat(b4.u, b4.c, invert(b4.u)), "B4_RELATION", {"name": "w = u c u^-1"}))
    claims.append(IdentityClaim(3, psi_b4_to_b3(make_word(4, [1, -3])), BraidWord(3), "B4_RELATION",
                                {"name": "psi(s1 s3^-1) = 1"}))
    return claims


def sigma0_claims() -> list[IdentityClaim]:
    """The three B_5 factorizations that remove sigma_0 = alpha sigma_4 alpha^-1."""
    w5 = lambda toks: make_word(5, toks)  # noqa: E731
    pairs = lambda ps: concat(BraidWord(5), *(pair_word(5, p) for p in ps))  # noqa: E731
    return [
        IdentityClaim(5, pair_word(5, (1, 0)), pairs(SIGMA1_SIGMA0_INV), "SIGMA0_ELIM", {"name": "s1 s0^-1"}),
        IdentityClaim(5, w5([1, 1, 2, -1, -1, -1]), pairs([(1, 4), (1, 4), (2, 4), (4, 1), (4, 1), (4, 1)]),
                      "SIGMA0_ELIM", {"name": "s1^2 s2 s1^-3"}),
        IdentityClaim(5, w5([1, 1, 1, -3, -2, -1]), pairs([(1, 3), (1, 4), (1, 4), (4, 2), (4, 1)]),
                      "SIGMA0_ELIM", {"name": "s1^3 s3^-1 s2^-1 s1^-1"}),
    ]


def suite_certificate(n: int = 6) -> Certificate:
    claims = theorem2_claims()
    if n == 5:
        claims += sigma0_claims()
    return Certificate(n, None, tuple(claims))


# ---------------------------------------------------------------------------
# Verifying


def _expected_words(cert: Certificate, claim: IdentityClaim) -> tuple[BraidWord, BraidWord] | str:
    """The (lhs, rhs) a two-generator claim must carry, or an error string."""
    params = cert.params
    if params is None:
        return f"{claim.rule} claim needs k"
    try:
        if claim.rule in ("S_RECURRENCE", "R_RECURRENCE"):
            m = int(claim.params["m"])
            if m < 0:
                return "m must be >= 0"
            r, s = r_word(params, m), s_word(params, m)
            if claim.rule == "S_RECURRENCE":
                return s_word(params, m + 1), concat(r, s, invert(r))
            return r_word(params, m + 1), concat(r, power(s, params.N))
        if cert.slp is None or cert.target is None:
            return "TELESCOPE claim without slp and target"
        return cert.target, closed_form_root(cert.slp)
    except (KeyError, ValueError, TypeError) as exc:
        return f"bad claim params: {exc}"


def _structural_errors(cert: Certificate) -> list[str]:
    errors = []
    theorem_rules = ("S_RECURRENCE", "R_RECURRENCE", "TELESCOPE")
    uses_chain = cert.slp is not None or any(c.rule in theorem_rules for c in cert.claims)
    if not uses_chain:
        return errors
    if cert.k is None:
        return ["two-generator claims present but k is missing"]
    try:
        params = RewriteParams(cert.n, cert.k)
    except BraidError as exc:
        return [str(exc)]
    if cert.slp is None or cert.target is None:
        return ["two-generator claims present but slp or target is missing"]
    if cert.slp.params != params:
        errors.append("slp parameters differ from certificate parameters")
    levels = len(cert.slp.rules) // 2
    if cert.slp.rules != recurrence_rules(params, levels):
        errors.append("slp rules are not the standard S/R recurrences")
    justified: set[tuple[str, int]] = set()
    telescopes = []
    for idx, c in enumerate(cert.claims):
        if c.n != cert.n:
            errors.append(f"claim {idx}: strand count {c.n} differs from certificate n={cert.n}")
        if c.rule in ("S_RECURRENCE", "R_RECURRENCE"):
            try:
                justified.add((c.rule[0], int(c.params["m"]) + 1))
            except (KeyError, ValueError, TypeError):
                errors.append(f"claim {idx}: recurrence claim without integer m")
        elif c.rule == "TELESCOPE":
            telescopes.append(idx)
            for kind, m in ((parse_symbol(s)) for s, _ in cert.slp.root):
                if m and (kind, m) not in justified:
                    errors.append(f"claim {idx}: root symbol {kind}{m} used before it is justified")
    for name in cert.slp.used_symbols():
        kind, m = parse_symbol(name)
        if m and (kind, m) not in justified:
            errors.append(f"symbol {name} is used but no {kind}_RECURRENCE claim justifies it")
    if len(telescopes) != 1:
        errors.append(f"expected exactly one TELESCOPE claim, found {len(telescopes)}")
    elif telescopes[0] != len(cert.claims) - 1:
        errors.append("TELESCOPE claim must be the last claim")
    return errors


def _check_claim(args) -> ClaimResult:
    idx, claim, expected = args
    t0 = time.perf_counter()
    reason = ""
    passed = True
    if exponent_sum(claim.lhs) != exponent_sum(claim.rhs):
        passed, reason = False, "exponent sums differ"
    elif isinstance(expected, str):
        passed, reason = False, expected
    elif expected is not None and (
        free_reduce(claim.lhs) != free_reduce(expected[0]) or free_reduce(claim.rhs) != free_reduce(expected[1])
    ):
        passed, reason = False, "words do not match the rule instance"
    elif claim.lhs.n != claim.rhs.n:
        passed, reason = False, "strand counts differ"
    elif not equal(claim.lhs, claim.rhs):
        passed, reason = False, "sides are different braids"
    return ClaimResult(idx, claim.rule, passed, time.perf_counter() - t0, len(claim.lhs), len(claim.rhs), reason)


def verify_certificate(cert: Certificate, jobs: int = 1) -> VerificationReport:
    """Check every claim with the normal form plus the chain bookkeeping."""
    t0 = time.perf_counter()
    structural = _structural_errors(cert)
    tasks = []
    for idx, claim in enumerate(cert.claims):
        expected = None
        if claim.rule in ("S_RECURRENCE", "R_RECURRENCE", "TELESCOPE"):
            expected = _expected_words(cert, claim)
        tasks.append((idx, claim, expected))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_claim, tasks))
    else:
        results = [_check_claim(t) for t in tasks]
    passed = not structural and all(r.passed for r in results)
    return VerificationReport(passed, results, structural, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# JSON


def emit_json(cert: Certificate) -> str:
    doc: dict[str, Any] = {
        "n": cert.n,
        "k": cert.k,
        "claims": [
            {
                "rule": c.rule,
                "params": c.params,
                "n": c.n,
                "lhs": format_word(c.lhs),
                "rhs": format_word(c.rhs),
            }
            for c in cert.claims
        ],
        "slp": cert.slp.to_lines() if cert.slp is not None else [],
        "target": format_word(cert.target) if cert.target is not None else None,
    }
    return json.dumps(doc, indent=2) + "\n"


def _field(obj: dict, key: str, kind, where: str, optional: bool = False):
    if key not in obj:
        if optional:
            return None
        raise ParseError(f"missing field {key!r}", where=where)
    val = obj[key]
    if val is None and optional:
        return None
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise ParseError(f"field {key!r} must be {kind.__name__}, got {type(val).__name__}", where=where)
    return val


def parse_json(text: str) -> Certificate:
    """Inverse of :func:`emit_json`; raises ParseError naming the offending line or field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, where=f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", where="certificate")
    n = _field(doc, "n", int, "n")
    k = _field(doc, "k", int, "k", optional=True)
    raw_claims = _field(doc, "claims", list, "claims")
    claims = []
    for idx, rc in enumerate(raw_claims):
        where = f"claims[{idx}]"
        if not isinstance(rc, dict):
            raise ParseError("claim must be an object", where=where)
        rule = _field(rc, "rule", str, where + ".rule")
        if rule not in RULES:
            raise ParseError(f"unknown rule tag {rule!r}", where=where + ".rule")
        params = _field(rc, "params", dict, where + ".params", optional=True) or {}
        cn = _field(rc, "n", int, where + ".n", optional=True)
        cn = n if cn is None else cn
        words = []
        for side in ("lhs", "rhs"):
            text_w = _field(rc, side, str, f"{where}.{side}")
            try:
                words.append(parse_word(cn, text_w))
            except BraidError as exc:
                raise ParseError(str(exc), where=f"{where}.{side}") from None
        claims.append(IdentityClaim(cn, words[0], words[1], rule, params))
    slp_lines = _field(doc, "slp", list, "slp", optional=True) or []
    slp = None
    if slp_lines:
        if k is None:
            raise ParseError("slp given without k", where="k")
        try:
            params = RewriteParams(n, k)
        except BraidError as exc:
            raise ParseError(str(exc), where="k") from None
        if not all(isinstance(x, str) for x in slp_lines):
            raise ParseError("slp entries must be strings", where="slp")
        slp = parse_slp(params, slp_lines)
    target_text = _field(doc, "target", str, "target", optional=True)
    target = None
    if target_text is not None:
        try:
            target = parse_word(n, target_text)
        except BraidError as exc:
            raise ParseError(str(exc), where="target") from None
    cert = Certificate(n, k, tuple(claims), slp, target)
    errors = _structural_errors(cert)
    if errors:
        raise ParseError(errors[0], where="structure")
    return cert


def direct_check(params: RewriteParams, slp: TwoGenSLP, target: BraidWord, max_len: int) -> bool:
    """Flatten the SLP, substitute the generators and compare with the target."""
    return equal(expand_slp(slp, max_len), target)


def perturb(cert: Certificate, claim_index: int, letter_index: int = 0) -> Certificate:
    """Copy of ``cert`` with one letter of one claim's rhs inverted."""
    claims = list(cert.claims)
    c = claims[claim_index]
    letters = list(c.rhs.letters)
    if letters:
        i, e = letters[letter_index % len(letters)]
        letters[letter_index % len(letters)] = (i, -e)
    else:
        letters = [(1, 1)]
    claims[claim_index] = IdentityClaim(c.n, c.lhs, BraidWord(c.n, tuple(letters)), c.rule, c.params)
    return Certificate(cert.n, cert.k, tuple(claims), cert.slp, cert.target)

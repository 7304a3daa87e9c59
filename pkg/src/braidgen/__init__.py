"""Exact braid-group rewriting over small generating sets, with verification."""

__version__ = "0.1.0"

from .braid_core import BraidWord, Permutation, make_word, parse_word, format_word, sigma, alpha_power
from .garside_nf import NormalForm, normal_form, equal, is_identity
from .lk_oracle import lk_matrix, equal_via_lk
from .genset_rewriter import RewriteParams, TwoGenSLP, theorem1_factor, rewrite_full, expand_slp
from .certify import Certificate, IdentityClaim, build_certificate, verify_certificate, emit_json, parse_json

__all__ = [
    "BraidWord", "Permutation", "make_word", "parse_word", "format_word", "sigma", "alpha_power",
    "NormalForm", "normal_form", "equal", "is_identity",
    "lk_matrix", "equal_via_lk",
    "RewriteParams", "TwoGenSLP", "theorem1_factor", "rewrite_full", "expand_slp",
    "Certificate", "IdentityClaim", "build_certificate", "verify_certificate", "emit_json", "parse_json",
]

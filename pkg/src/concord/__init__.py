"""Heegaard Floer correction terms of branched covers of torus knots."""

__version__ = "0.1.0"

from .delta import DeltaResult, Unsupported, delta_pn, independence_certificate, make_table, verify_certificate
from .dinvariant import d_lens, d_plumbing
from .knotpoly import LaurentPolynomial, TorusKnot, TwistKnot, alexander_torus, torsion_t0
from .numtheory import PrimePower
from .plumbing import PlumbingGraph, build_brieskorn_plumbing
from .signatures import cover_signature, tl_signature_torus
from .topology import BrieskornTriple

__all__ = [
    "BrieskornTriple",
    "DeltaResult",
    "LaurentPolynomial",
    "PlumbingGraph",
    "PrimePower",
    "TorusKnot",
    "TwistKnot",
    "Unsupported",
    "alexander_torus",
    "build_brieskorn_plumbing",
    "cover_signature",
    "d_lens",
    "d_plumbing",
    "delta_pn",
    "independence_certificate",
    "make_table",
    "tl_signature_torus",
    "torsion_t0",
    "verify_certificate",
]

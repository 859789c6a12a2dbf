"""Twisted derivations, their crossed module, twisted automorphisms and R-matrices."""

from .derivations import (
    TwistedDerivation,
    bialgebra_derivations,
    boundary,
    bracket,
    gauge_between,
    invariant_twists,
    outer_quotients,
    separate,
    twisted_derivation_space,
    verify_twisted_derivation,
)
from .crossed import LieCrossedModule, crossed_module

__all__ = [
    "TwistedDerivation",
    "LieCrossedModule",
    "bialgebra_derivations",
    "boundary",
    "bracket",
    "crossed_module",
    "gauge_between",
    "invariant_twists",
    "outer_quotients",
    "separate",
    "twisted_derivation_space",
    "verify_twisted_derivation",
]

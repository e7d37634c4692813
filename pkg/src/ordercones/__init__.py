"""ordercones: order-theoretic computations in cone-ordered vector spaces.

Decides order units, net-catching elements, cone bases and absorption for
polyhedral cones (exact rational arithmetic), ice cream cones (floats with
explicit tolerances) and the two classical counterexample spaces
(lexicographic R^n and eventually constant sequences), and computes the
associated constructions: unit norms, ball-equivalence certificates,
order-open bounded neighborhoods, and non-catching witness chains.
"""

from .core import (
    ConsistentUpTo,
    DecreasingChain,
    OrderInterval,
    Rational,
    RationalVector,
    Refuted,
    canonical_chain,
    cone_leq,
    make_interval,
    rat,
    validate_chain_infimum,
    vec,
)
from .exactlp import LinearProgram, LPOutcome, solve, strict_feasible
from .harness import PropertyReport, SuiteConfig, run_all, run_one
from .icecream import EquivalenceCertificate, IceCreamCone, Region
from .lexseq import EvSeq, EvSeqSpace, LexSpace
from .polyhedral import BaseDescriptor, HCone, VCone
from .toposets import Polytope

__version__ = "0.1.0"

__all__ = [
    "BaseDescriptor",
    "ConsistentUpTo",
    "DecreasingChain",
    "EquivalenceCertificate",
    "EvSeq",
    "EvSeqSpace",
    "HCone",
    "IceCreamCone",
    "LPOutcome",
    "LexSpace",
    "LinearProgram",
    "OrderInterval",
    "Polytope",
    "PropertyReport",
    "Rational",
    "RationalVector",
    "Refuted",
    "Region",
    "SuiteConfig",
    "VCone",
    "canonical_chain",
    "cone_leq",
    "make_interval",
    "rat",
    "run_all",
    "run_one",
    "solve",
    "strict_feasible",
    "validate_chain_infimum",
    "vec",
]

"""Exact homological algebra for block modules over Z and the p-adic rings.

Modules in scope are finite direct sums of Z, Z/p^e, Pruefer groups and
p-adic integer blocks.  The package computes Hom, tensor, Ext and Tor on
canonical forms, Matlis duals, supports and attached primes, lengths and
vanishing certificates, and cross-checks everything against a Smith normal
form oracle.
"""

from .errors import (
    InvalidIndex,
    InvalidRing,
    MmxError,
    NotArtinian,
    NotNoetherian,
    NotPrime,
    NotRepresentable,
    NotStabilizing,
    NotTorsion,
    ParseError,
    StabilizationFailed,
    UnknownSuite,
    Unsupported,
    ZeroInput,
)
from .modules import (
    Block,
    C,
    CanonicalModule,
    LocalPart,
    Pr,
    RingContext,
    RingMarker,
    Z,
    ZERO,
    Z_RING,
    Zp,
    cyclic,
    direct_sum,
    is_isomorphic,
    normalize,
    padic,
    repeat,
)
from .structure import (
    ClassFlags,
    ExtNat,
    SupportSet,
    annihilator,
    ass,
    att,
    classify,
    complete,
    gamma,
    length,
    localize,
    mod_prime_power,
    socle_colon,
    support,
    truncation_exponent,
)
from .duality import DualResult, check_biduality, dual, dual_module
from .homology import (
    HomologyResult,
    ass_of_hom,
    bass,
    betti,
    ext,
    ext_dual_swap,
    ext_via_completion,
    ext_via_general_dual,
    hom,
    hom_theoremC,
    hom_vanishing,
    tensor,
    tensor_length_bound,
    tensor_truncated,
    theta_check,
    tor,
    vanishing_tensor,
)
from .oracle import (
    InstanceConfig,
    Presentation,
    canonical_presentation,
    fp_ext1,
    fp_hom,
    fp_structure,
    fp_tensor,
    fp_tor1,
    pruefer_colimit,
    pruefer_limit_ext,
    random_instance,
)
from .exprlang import Command, eval_command, eval_text, parse
from .suites import SUITE_NAMES, SuiteReport, oracle_grid_check, run_suite

__version__ = "0.1.0"

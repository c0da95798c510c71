"""Exact computations with higher order derivations on Q(t) and Hyers stability on Q."""

from .blackbox import BlackBoxFunc, difference, difference_chain
from .characterize import (
    D_functional,
    LinearSplit,
    NotPolynomialError,
    PolyDecomposition,
    decompose_linear_part,
    extract_multiadditive,
    poly_decompose,
    regular_trace_to_monomial,
)
from .exactfield import Poly, RatFunc, poly_gcd, ratfunc_normalize
from .operators import (
    DeltaChainSpec,
    OperatorFunc,
    OrderVerdict,
    apply,
    delta,
    delta_chain,
    formal_derivative,
    is_order_n_derivation,
)
from .stability import (
    StabilityReport,
    approx_derivation_recover,
    cauchy_defect,
    hyers_stabilize,
    make_noisy,
)

__version__ = "0.1.0"

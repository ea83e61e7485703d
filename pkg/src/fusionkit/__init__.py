"""
Tensor products and level-ℓ fusion products for simple Lie algebras

``fusionkit`` computes, with exact integer and rational arithmetic, the root
systems of the simple Lie algebras of types A through G, weight
multiplicities of their irreducible representations, decompositions of
tensor products, and the fusion products of the corresponding affine Lie
algebras at a positive integer level ℓ.  It also checks, over grids of
weights, that when λ is large compared to μ every PRV component V(λ+wμ)
that fits at level ℓ occurs exactly once in the fusion product of V(λ) and
V(μ).

Visit <https://github.com/jwodder/fusionkit> for more information.
"""

from .fusion import (
    WLElement,
    affine_reflect_theta,
    alcove_reduce_shifted,
    fusion_bar,
    fusion_coefficient,
    fusion_multiply,
    fusion_product,
    inverse_affine_reflect_theta,
    pi_map,
    verlinde_dimension,
)
from .prv import (
    FusionMismatchError,
    PRVReport,
    classical_prv_weights,
    collapsed_multiplicities,
    dominating_pairs,
    explicit_fusion,
    grouped_tensor,
    proposition_check,
    verify_theorem,
)
from .repcalc import (
    VirtualModule,
    gg_threshold,
    is_lambda_gg_mu,
    tensor_decompose,
    tensor_decompose_gg,
    weight_system,
    weyl_dimension,
)
from .rootsys import AlgebraData, Root, build_algebra
from .util import (
    CapExceededError,
    ConfigError,
    FusionkitError,
    InvalidAlgebraError,
    InvariantViolation,
    NotDominatingError,
    NotInAlcoveError,
    RationalWeight,
    Weight,
    WeightError,
    parse_algebra,
    parse_weight,
)
from .weyl import dominant_of, dual_weight, orbit, reflect, reflect_word, to_dominant

__version__ = "0.1.0"
__author__ = "John Thorvald Wodder II"
__author_email__ = "fusionkit@varonathe.org"
__license__ = "MIT"
__url__ = "https://github.com/jwodder/fusionkit"

__all__ = [
    "AlgebraData",
    "CapExceededError",
    "ConfigError",
    "FusionMismatchError",
    "FusionkitError",
    "InvalidAlgebraError",
    "InvariantViolation",
    "NotDominatingError",
    "NotInAlcoveError",
    "PRVReport",
    "RationalWeight",
    "Root",
    "VirtualModule",
    "WLElement",
    "Weight",
    "WeightError",
    "affine_reflect_theta",
    "alcove_reduce_shifted",
    "build_algebra",
    "classical_prv_weights",
    "collapsed_multiplicities",
    "dominant_of",
    "dominating_pairs",
    "dual_weight",
    "explicit_fusion",
    "fusion_bar",
    "fusion_coefficient",
    "fusion_multiply",
    "fusion_product",
    "gg_threshold",
    "grouped_tensor",
    "inverse_affine_reflect_theta",
    "is_lambda_gg_mu",
    "orbit",
    "parse_algebra",
    "parse_weight",
    "pi_map",
    "proposition_check",
    "reflect",
    "reflect_word",
    "tensor_decompose",
    "tensor_decompose_gg",
    "to_dominant",
    "verify_theorem",
    "verlinde_dimension",
    "weight_system",
    "weyl_dimension",
]

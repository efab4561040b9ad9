"""Signatures and p-variation metrics on unparameterised piecewise linear paths."""
from .paths import (
    PiecewiseLinearPath,
    axis_path,
    concat,
    constant_speed_reparam,
    is_irreducible,
    line,
    reverse,
    tree_reduce,
)
from .signature import signature, signature_segment, signature_trajectory
from .tensor_algebra import (
    TruncatedTensor,
    exp_trunc,
    group_inverse,
    homogeneous_norm,
    is_group_like,
    log_trunc,
    product_metric_dist,
    shuffle_product,
    tensor_mul,
)
from .unparam import UnparamPath, canonicalize, dist_d, dist_sig, dist_star, equivalent
from .variation import (
    VariationResult,
    control,
    p_var_distance,
    p_variation,
    p_variation_interval,
    p_variation_lift,
)

__all__ = [
    "PiecewiseLinearPath", "TruncatedTensor", "UnparamPath", "VariationResult",
    "axis_path", "canonicalize", "concat", "constant_speed_reparam", "control",
    "dist_d", "dist_sig", "dist_star", "equivalent", "exp_trunc", "group_inverse",
    "homogeneous_norm", "is_group_like", "is_irreducible", "line", "log_trunc",
    "p_var_distance", "p_variation", "p_variation_interval", "p_variation_lift",
    "product_metric_dist", "reverse", "shuffle_product", "signature",
    "signature_segment", "signature_trajectory", "tensor_mul", "tree_reduce",
]

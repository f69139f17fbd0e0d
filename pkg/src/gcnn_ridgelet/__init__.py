"""Group-convolutional networks built from the ridgelet transform."""

from .calculus import (Gaussian, GaussianRidgelet, HermiteGaussian, ReLU, RidgeletPair, Step,
                       Tanh, TruncatedPower, a3_check, c_norm, forward_difference,
                       fractional_laplacian, scalar_product, scalar_product_fourier)
from .core import (FiniteNetwork, ParamDistribution, apply_S, calibrate_c_norm, discretize,
                   eval_network, reconstruct, reduce_difference_model, ridgelet_transform,
                   universality_sweep)
from .estimators import FiniteGCNN, RidgeletGCNN
from .exceptions import (DegeneratePairError, InvalidArgument, NumericFailure,
                         PreconditionViolation, ResourceLimitError, RidgeletError)
from .feature_space import FeatureSpace
from .groups import (CyclicGroup, PermutationGroup, ProductCyclicGroup, SymmetricGroup,
                     TorusGroup, TorusRepresentation, cyclic_regular, equivariance_defect,
                     gconv, image_regular, permutation_representation)
from .quadrature import BoxGrid, integrate, refine
from .targets import (GaussianFactor, SmoothBump, deepsets_target, difference_filter,
                      gaussian_orbit, orbit_target, torus_differential, torus_moment)

__all__ = [
    "Gaussian", "GaussianRidgelet", "HermiteGaussian", "ReLU", "RidgeletPair", "Step",
    "Tanh", "TruncatedPower", "a3_check", "c_norm", "forward_difference",
    "fractional_laplacian", "scalar_product", "scalar_product_fourier", "FiniteNetwork",
    "ParamDistribution", "apply_S", "calibrate_c_norm", "discretize", "eval_network",
    "reconstruct", "reduce_difference_model", "ridgelet_transform",
    "universality_sweep", "FiniteGCNN", "RidgeletGCNN", "DegeneratePairError",
    "InvalidArgument", "NumericFailure", "PreconditionViolation", "ResourceLimitError",
    "RidgeletError", "FeatureSpace", "CyclicGroup", "PermutationGroup",
    "ProductCyclicGroup", "SymmetricGroup", "TorusGroup", "TorusRepresentation",
    "cyclic_regular", "equivariance_defect", "gconv", "image_regular",
    "permutation_representation", "BoxGrid", "integrate", "refine", "GaussianFactor",
    "SmoothBump", "deepsets_target", "difference_filter", "gaussian_orbit",
    "orbit_target", "torus_differential", "torus_moment",
]

__version__ = "0.1.0"

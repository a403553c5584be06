"""Shape reconstruction from noisy far-field data by spectral regularization."""

from ._core import (
    IoError,
    NumericalError,
    ValidationError,
    add_noise,
    augment_sharp,
    check_pconv_sum,
    check_projection_bound,
    check_weyl,
    compute_n_delta,
    disk_farfield_reference,
    far_field,
    filter_constants,
    filter_value,
    gauss_legendre,
    glsm_functional,
    hermitian_eigendecomposition,
    jaccard,
    landweber_iterations,
    perturb_operator,
    picard_partial_sums,
    quadratic_indicator,
    random_psd,
    reconstruct,
    rhs_vector,
    select_alpha,
    singular_system,
    spectrum_distance,
)

__all__ = [
    "IoError",
    "NumericalError",
    "ValidationError",
    "add_noise",
    "augment_sharp",
    "check_pconv_sum",
    "check_projection_bound",
    "check_weyl",
    "compute_n_delta",
    "disk_farfield_reference",
    "far_field",
    "filter_constants",
    "filter_value",
    "gauss_legendre",
    "glsm_functional",
    "hermitian_eigendecomposition",
    "jaccard",
    "landweber_iterations",
    "perturb_operator",
    "picard_partial_sums",
    "quadratic_indicator",
    "random_psd",
    "reconstruct",
    "rhs_vector",
    "select_alpha",
    "singular_system",
    "spectrum_distance",
]

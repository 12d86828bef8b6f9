"""Ideal matrices, cyclic lattices and smoothing-parameter bounds over Q[x]/<phi>."""

from .errors import *  # noqa: F401,F403
from .polyring import (
    Poly,
    QuotientContext,
    RingElement,
    complex_roots,
    count_cyclic_subspaces,
    inverse_mod_phi,
    reduce_mod_phi,
    ring_mul,
)
from .idealmat import (
    IdealMatrix,
    circulant_transpose,
    conjugate,
    conv_product,
    ideal_det,
    ideal_inverse,
    ideal_matrix,
    rotation_matrix,
)
from .lattice import (
    LatticeBasis,
    dual_basis,
    gram_det,
    gram_schmidt,
    gram_spectrum,
    lattice_sum,
    membership,
    min_distance,
    quotient_index,
)
from .cyclic import (
    CyclicLattice,
    PrimeSpotCertificate,
    is_cyclic,
    is_prime_spot,
    minimal_cyclic_lattice,
    module_to_lattice,
    product_inclusion_check,
)
from .smoothing import (
    GaussParams,
    SmoothingReport,
    bound_gs,
    bound_lambda,
    bound_tg,
    discrete_gauss_sample,
    eta_numeric,
    gauss_sum,
    smoothing_report,
    statistical_distance_check,
)
from .kernels import available_backends, get_backend, set_backend

__version__ = "0.1.0"

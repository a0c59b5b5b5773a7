"""Spectral tools for Hermitian and conjugate partial-symmetric complex tensors."""

from .certificate import Certificate, Rule, Verdict
from .certify import (
    block_constants,
    block_criterion,
    certify,
    certify_with_rules,
    check_predicate,
    is_diagonally_dominated,
    is_ll_tensor,
    is_llk_tensor,
)
from .curvature import (
    AHZComponents,
    CurvatureData,
    ahz_assemble_G,
    ahz_assemble_G_prime,
    ahz_bounds,
    ahz_lambda_threshold,
    check_hsc_positive,
    cheung_lemma_check,
    constant_curvature,
    curvature_to_tensor,
    hsc,
)
from .errors import *  # noqa: F401,F403
from .inclusion import contains, eigen_lower_bound, gershgorin_set, ll_set, llk_set, row_sums
from .solver import (
    EigenPair,
    SolverConfig,
    certify_pd_by_eigen,
    eigenvalue_count_bound,
    enumerate_eigenvalues,
    extremal_eigenvalues,
    matrix_eigen,
    residual,
    smallest_eigenpair,
)
from .tensor import ComplexTensor, apply_contraction, build, eval_form, identity, is_cps, is_hermitian, symmetrize

__version__ = "0.1.0"

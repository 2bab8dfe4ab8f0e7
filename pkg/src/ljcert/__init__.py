"""Certified computations for Lennard-Jones type energies of two-dimensional lattices."""
from .lattice import (
    Basis,
    DegenerateBasisError,
    DomainPoint,
    ScaledLattice,
    SQUARE,
    TRIANGULAR,
    basis_from_domain_point,
    form_sandwich,
    quadratic_form,
    reduce_to_domain,
)
from .zeta import (
    CertifiedValue,
    DivergentExponentError,
    IndeterminateQuotient,
    PrecisionError,
    TruncationSpec,
    epstein_certified,
    epstein_gradient,
    epstein_partial,
    epstein_tail_bound,
    log_weighted_sum,
    riemann_certified,
    riemann_tail_bound,
)
from .energy import (
    EnergyValue,
    ExponentPair,
    LJParams,
    conjecture_scan,
    lj_energy,
    min_dilated_energy,
    optimal_volume,
    quotient_Q,
)
from .certify import (
    AdaptiveConfig,
    CellVerdict,
    CertificationReport,
    GridSpec,
    ThresholdResult,
    build_grid,
    certify_adaptive,
    eta_constants,
    local_lipschitz,
    paper_lipschitz,
    sweep_paper_mode,
    threshold_y,
)

__version__ = "0.1.0"

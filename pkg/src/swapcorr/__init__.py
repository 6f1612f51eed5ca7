"""Bloch-matrix calculus for entanglement swapping, correlation measures and local filtering."""

from .bloch import (
    OperatorBasis,
    StateClass,
    bell_bloch,
    bell_effect,
    bell_projector,
    bloch_to_state,
    classify,
    effect_from_bloch,
    effect_to_bloch,
    gell_mann_basis,
    state_to_bloch,
)
from .correlations import (
    CorrelationReport,
    chsh_B,
    concurrence,
    effect_zeta,
    measures,
    obesity,
    report,
    steer_BF3,
    uft_D,
)
from .ensembles import EnsembleSpec, coloured_noise, random_bd_abd, random_density, random_x_state, werner
from .exceptions import *  # noqa: F401,F403
from .filtering import (
    GammaCoefficients,
    XStateParams,
    abd_gamma_ratios,
    gamma_fs,
    gamma_sf,
    klm_normal_form,
)
from .pathways import PathwayReport, compare, run_fs, run_sf
from .swapping import (
    ChainSpec,
    SwapOutcome,
    bell_combo_swap,
    predict_obesity,
    predict_obesity_chain,
    swap_bloch,
    swap_chain,
)

__version__ = "0.1.0"

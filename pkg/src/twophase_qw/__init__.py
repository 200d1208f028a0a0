"""Two-phase quantum walk with one defect: simulation, limit measures, proofs-as-numerics."""

from .model import CoinParameters, InitialState, coin_at, make_initial_state, propagators_at
from .evolution import (
    Distribution,
    WalkState,
    WeightMatrixSeries,
    binned_density,
    distribution,
    empirical_cdf,
    empirical_moment,
    evolve,
    step,
    weight_matrices,
)
from .limits import (
    LimitMeasure,
    WeightCoefficients,
    ac_mass,
    konno_density,
    limit_density,
    limit_measure,
    loc_mass,
    nu_pm,
    one_defect_weight,
    time_averaged_measure,
    weight,
    weight_coefficients,
)
from .genfun import (
    GFValue,
    SingularPoint,
    assemble_density,
    gf_at,
    residue_components,
    singular_points,
    unit_circle_f0,
    xi0,
    xi_x,
)

__version__ = "0.1.0"

"""Physics outputs: wavefunctions, Wigner functions, angular momentum, entanglement, cats."""

from vortexlab.analysis.angular import lz_apply, lz_counting_measurement, lz_expectation, lz_residual
from vortexlab.analysis.cats import cat_branch_weights, cat_coefficients, cat_state, kitten_fidelity
from vortexlab.analysis.entanglement import (
    EntanglementReport,
    elliptical_vortex,
    entanglement_gain,
    entanglement_ratio,
    logneg_analytic,
    logneg_numeric,
    schmidt_coeffs_analytic,
    to_elliptical_basis,
)
from vortexlab.analysis.field import Grid2D, density_and_phase, field_wavefunction, vortex_wavefunction_analytic
from vortexlab.analysis.wigner import (
    WignerSlice,
    negativity_predicate,
    wigner_numeric,
    wigner_numeric_outer,
    wigner_vortex_analytic,
)

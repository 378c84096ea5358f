//! The ball model: canonical polyharmonic extensions, adapted metrics,
//! exact boundary traces and energies, the derived boundary symbol closing
//! the energy identity, and numeric evaluation of the sharp trace and
//! exponential-class inequalities.

mod energy;
mod extend;
mod metric;
mod profile;
mod report;

pub use energy::{
    derive_boundary_symbol, derived_t_eigenvalue, energy_constant, energy_identity_check,
    exact_energy, exact_energy_mode, printed_t_eigenvalue, random_admissible_perturbation,
    t1_closed_form, EnergyIdentityResiduals,
};
pub use extend::{
    critical_exponent_coeffs, kernel_series_sample_points, poisson_extend, series_extend,
    split_asymptotics, tau_equation_residual, verify_mode_eigen, zonal_kernel_eigenvalue_closed,
    zonal_kernel_eigenvalue_hypergeometric, EigenResidual, KERNEL_PATH_MAX_RADIUS,
};
pub use metric::{
    adapted_metric_factor, dimension_continuity_limit, AdaptedMetricFactor,
};
pub use profile::{
    boundary_traces, delta_k_mode, mode_laplacian, phi_profile, BoundaryTraces, ModeProfile,
    NumericMode, RadialMode, TraceRow,
};
pub use report::{
    exponential_class_report, trace_inequality_report, ExpDatum, ExponentChoice, PointwiseDatum,
    TraceDatum,
};

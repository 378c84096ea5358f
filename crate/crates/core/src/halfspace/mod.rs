//! The half-space model on the Fourier side: exact kernel differentiation
//! identity, frequency profiles of the canonical extension and its
//! Laplacians, exact boundary traces and energy multipliers, and the
//! Gaussian trace-inequality report.

mod freq;
mod kernel;
mod report;

pub use freq::{
    datum_normalization, energy_multiplier, expected_energy_constant, freq_profile,
    halfspace_boundary_traces, profile_iteration_residual, FreqProfile, FreqTraceRow,
    HalfspaceTraces,
};
pub use kernel::{base_kernel, kernel_identity_check, KernelSum, KernelTerm, NPoly};
pub use report::halfspace_trace_report;

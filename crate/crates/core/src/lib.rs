//! Rigorous lower and upper bounds on the ground-state energy of N-boson
//! systems bound by soft-core pair potentials.
//!
//! Energies are expressed through the dimensionless energy parameter
//! `E = F_N(v)` (energy per `N - 1` in units of `ħ²/(m a²)`) as a function of
//! the coupling `v = N m V₀ a² / (2ħ²)`. For the two soluble shapes handled
//! here, the soft-core oscillator `λr² + μ/r²` and the Kratzer potential
//! `-λ/r + μ/r²`, the crate provides
//!
//! * the equivalent two-body lower bound `F₂(v)` in closed form,
//! * the Gaussian trial-function upper bound `F_G(v)` in closed form,
//! * the collective-field upper bound `F_φ(v)` obtained by optimizing the
//!   trial density `exp(-(r/b)^q)` over scale and power ([`collective_field`]),
//! * an independent finite-difference radial eigensolver ([`radial_oracle`])
//!   that checks the closed-form lower bounds.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_bounds;
pub mod collective_field;
mod error;
pub mod model;
pub mod numerics;
pub mod radial_oracle;

pub use closed_bounds::{
    asymptotic_bounds, bound_report, gamma_d, gaussian_upper, lower_bound, m_of_d, sigma2_gaussian,
    Asymptotes, BoundReport,
};
pub use collective_field::{
    bound_report_with_phi, delta_1d_phi, delta_1d_phi_at_power, energy_at, inverse_square_coeff,
    kinetic_coeff, minimize_scale, moment_coeff, optimize, MomentTable, PhiResult, TrialDensity,
};
pub use error::{Error, Result};
pub use model::{
    classical_floor, delta_exact_energy, dimensionless_coupling, dimensionless_energy,
    minimum_point, potential_value, recover_energy, ParticleCount, PhysicalSystem, Potential,
    PotentialKind, Problem,
};
pub use numerics::{MinimizeSpec, Minimum, QuadratureSpec};
pub use radial_oracle::{ground_energy, Mesh};

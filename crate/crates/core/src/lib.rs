//! Landau levels around crystalline line defects.
//!
//! A charged quasi-particle moving in a uniform magnetic field aligned with a
//! line defect sees the defect through the metric of the deformed medium:
//! disclinations carry singular curvature (a deficit angle), screw
//! dislocations carry singular torsion (a Burgers vector), dispirations carry
//! both, and the same dispiration problem can be posed in five dimensions
//! with the magnetic field absorbed into the metric. In every case the
//! stationary states separate into `exp(i l phi) exp(i k z) R(rho)` and the
//! radial factor solves a 2-D oscillator problem with a defect-shifted
//! angular index, so the whole spectrum is available in closed form.
//!
//! This crate provides
//!
//! * [`geometry`] — defect descriptors, their metrics, and the
//!   curvature/torsion classification,
//! * [`special`] — the confluent hypergeometric (Kummer) polynomials the
//!   eigenfunctions are built from,
//! * [`spectra`] — the closed-form energy levels, the flux-cancellation
//!   condition, and degeneracy grouping,
//! * [`wavefunction`] — normalized radial eigenfunctions with node counting,
//! * [`oracle`] — an independent finite-difference eigensolver assembled
//!   from the metric itself, used to cross-validate every closed form.
//!
//! Natural units are used throughout: `hbar = m = c = 1`, with the charge
//! magnitude folded into the cyclotron frequency `omega = |q| B`. See the
//! sign-convention table in the README for how the electron/hole label enters
//! each scenario.
//!
//! All core math is generic over the scalar type through the [`Real`] trait;
//! `f64` aliases for the main types live at the crate root.

pub mod geometry;
pub mod oracle;
pub mod special;
pub mod spectra;
pub mod wavefunction;

mod quad;

pub use geometry::{
    classify_singularity, effective_alpha, metric_at, DefectDescriptor, MetricSample, ScenarioKind,
    SingularityData,
};
pub use oracle::{
    build_radial_problem, cross_validate, solve_eigenvalues, solve_eigenvalues_refined, GridSpec,
    RadialProblem, ValidationReport, ValidationRow,
};
pub use special::{kummer_poly, kummer_series, KummerPoly};
pub use spectra::{
    cancellation_flux, degeneracy_report, energy_disclination, energy_dispiration,
    energy_kaluza_klein, energy_level, energy_screw, ChargeSign, DegeneracyReport, EnergyCluster,
    EnergyLevel, FieldConfig, QuantumNumbers,
};
pub use wavefunction::{count_nodes, normalize, overlap, radial_eigenfunction, RadialProfile};

/// Floating-point scalar the library is generic over.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + num_traits::NumAssignOps
    + core::fmt::Debug
    + core::fmt::Display
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for pulling literal constants into the generic scalar type.
pub(crate) fn r<R: Real>(value: f64) -> R {
    R::from_f64(value).expect("literal converts to scalar type")
}

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input outside the physical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure failed to reach its target accuracy.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// A solver grid or tolerance is inconsistent with the requested states.
    #[error("configuration error: {0}")]
    Configuration(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub type DefectDescriptor64 = DefectDescriptor<f64>;
pub type FieldConfig64 = FieldConfig<f64>;
pub type QuantumNumbers64 = QuantumNumbers<f64>;
pub type EnergyLevel64 = EnergyLevel<f64>;
pub type MetricSample64 = MetricSample<f64>;
pub type RadialProblem64 = RadialProblem<f64>;
pub type RadialProfile64 = RadialProfile<f64>;

pub type DefectDescriptor32 = DefectDescriptor<f32>;
pub type FieldConfig32 = FieldConfig<f32>;
pub type QuantumNumbers32 = QuantumNumbers<f32>;
pub type EnergyLevel32 = EnergyLevel<f32>;

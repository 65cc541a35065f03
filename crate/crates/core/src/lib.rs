//! Analysis and simulation of the abcd Boussinesq systems with complete or
//! partial dissipation.
//!
//! - [`params`]: coefficients, admissibility, Fourier multipliers.
//! - [`symbol`]: the 2×2 symbol, its semigroup, and the decay classification.
//! - [`linprop`]: exact per-mode linear evolution and the energy.
//! - [`solver`]: pseudo-spectral leap-frog solver for the nonlinear system.
//! - [`decay`]: discrete norms and power-law rate fits.

pub mod decay;
pub mod grid;
pub mod linprop;
pub mod par;
pub mod params;
pub mod solver;
pub mod symbol;

pub use decay::{fit, norms, rate_sequence, DecayError, DecayFit, NormKind, NormRecord, NormSeries};
pub use grid::{Grid, GridError};
pub use linprop::{energy, energy_identity_residual, evolve_linear, SpectralPair};
pub use par::Execution;
pub use params::{make_spec, Dissipation, ParamsError, Preset, Regime, SystemSpec};
pub use solver::{FieldState, RunOutput, Solver, SolverConfig, SolverError};
pub use symbol::{classify, eigen, symbol_matrix, Classification, DecayClass, EigenData, SymbolError};

//! Unitary qudit dynamics in the real (generalized Bloch vector) form.
//!
//! The density matrix is expanded over the Hermitian basis, which turns
//! `i ∂t ρ = [H, ρ]` into a closed linear ODE system for real coefficients
//! driven by the antisymmetric (and, for two qudits, symmetric) structure
//! constants. A complex-matrix propagator ([`oracle_evolve`]) provides the
//! reference solution.

mod equations;
mod integrate;
mod io;
mod oracle;
mod state;

pub use equations::{deriv_one_qudit, deriv_two_qudit, OneQuditGenerator, TwoQuditGenerator};
pub use integrate::{integrate, OdeState, Trajectory};
pub use io::{read_trajectory_jsonl, write_trajectory_jsonl, FlatComponents, TrajectoryHeader, TrajectoryRecord};
pub use oracle::{oracle_evolve, UnitaryPropagator};
pub use state::{
    bloch_length_1, bloch_length_2, bloch_scale, bloch_to_density, bloch_to_density2, decompose_hamiltonian,
    decompose_hamiltonian2, density_to_bloch, density_to_bloch2, BlochState1, BlochState2, HamiltonianCoeffs1,
    HamiltonianCoeffs2,
};

/// Default RK4 step.
pub const DEFAULT_DT: f64 = 1e-3;
/// Default number of RK4 steps.
pub const DEFAULT_STEPS: usize = 10_000;

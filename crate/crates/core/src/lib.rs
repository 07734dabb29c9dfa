//! Entanglement in two Coulomb-coupled double quantum dots.
//!
//! Each double dot hosts one excess electron, giving a charge qubit with
//! basis `{|L⟩, |R⟩}`. The two qubits interact only through the Coulomb term
//! `J`. This crate builds the Hamiltonian in the positional and Bell bases,
//! diagonalizes it numerically and in closed form at resonance, computes the
//! concurrence of pure and mixed states, propagates states in time and scans
//! the concurrence over parameter planes.
//!
//! Numerics are generic over [`Real`] (`f32` or `f64`); the `f64` aliases
//! below are what the rest of the workspace uses. Energies are µeV, times ns.

#![allow(clippy::needless_range_loop)]

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod scalar;
pub mod spectrum;
pub mod state;
pub mod sweep;
pub mod units;

pub use dynamics::{
    analytic_populations, bell_condition, bell_times, propagate, propagate_rk4, propagate_with,
    time_grid, trajectory, BellCondition, Method, Populations, Propagator, Trajectory,
};
pub use entanglement::{
    concurrence, concurrence_pure, spin_flip, ConcurrenceResult, DensityMatrix,
};
pub use error::{Error, Result};
pub use hamiltonian::{
    bell_basis_matrix, bell_block_form, build_bell, build_positional, SystemParams,
};
pub use linalg::{hermitian_eigensolve, CMatrix, EigenSystem, HermitianMatrix4, Matrix4};
pub use num_complex::Complex;
pub use scalar::Real;
pub use spectrum::{
    classify_resonance, dominant_bell_component, eigensystem, resonant_solution, Resonance,
    ResonantSolution, Subspace, SubspaceSolution,
};
pub use state::{Basis, BellState, InitialState, PositionalState, StateVector};
pub use sweep::{
    dynamics_detuning_map, dynamics_tunneling_map, eigen_concurrence_map, Axis, DetuningLine,
    SweepGrid, SweepKind,
};
pub use units::{UnitSystem, HBAR_UEV_NS};

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type Params = SystemParams<f64>;
pub type Params32 = SystemParams<f32>;
pub type State = StateVector<f64>;
pub type State32 = StateVector<f32>;
pub type Hamiltonian = HermitianMatrix4<f64>;
pub type Hamiltonian32 = HermitianMatrix4<f32>;
pub type Density = DensityMatrix<f64>;
pub type Density32 = DensityMatrix<f32>;
pub type Spectrum = EigenSystem<f64>;
pub type Spectrum32 = EigenSystem<f32>;
pub type Grid = SweepGrid<f64>;
pub type Grid32 = SweepGrid<f32>;

//! Real scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the simulator can run on: `f32` or `f64`.
///
/// Besides the arithmetic bounds, each implementation carries the numeric
/// tolerances used across the crate. The `f64` values are the reference
/// ones; the `f32` values are loosened to what single precision can hold.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below
    /// `JACOBI_TOL * ‖m‖`.
    const JACOBI_TOL: Self;
    /// Neighbouring eigenvalues closer than `DEGENERACY_TOL * max(1, ‖m‖)`
    /// are flagged degenerate.
    const DEGENERACY_TOL: Self;
    /// Minimum modulus of the component used to fix an eigenvector's phase.
    const PHASE_TOL: Self;
    /// Allowed asymmetry `|m_ij - conj(m_ji)|`, relative to `max(1, max|m_ij|)`.
    const HERMITIAN_TOL: Self;
    /// Allowed deviation of a state norm from one.
    const NORM_TOL: Self;
    /// Trace, positivity and spectrum-clipping tolerance for density matrices.
    const DENSITY_TOL: Self;
    /// Absolute tolerance (µeV) for treating a detuning or tunneling rate as zero.
    const ENERGY_ZERO_TOL: Self;

    /// Converts an `f64` literal; panics only if the target type cannot
    /// represent ordinary finite constants, which never happens for f32/f64.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const JACOBI_TOL: Self = 1e-14;
    const DEGENERACY_TOL: Self = 1e-9;
    const PHASE_TOL: Self = 1e-9;
    const HERMITIAN_TOL: Self = 1e-13;
    const NORM_TOL: Self = 1e-12;
    const DENSITY_TOL: Self = 1e-12;
    const ENERGY_ZERO_TOL: Self = 1e-12;
}

impl Real for f32 {
    const JACOBI_TOL: Self = 1e-6;
    const DEGENERACY_TOL: Self = 1e-5;
    const PHASE_TOL: Self = 1e-4;
    const HERMITIAN_TOL: Self = 1e-5;
    const NORM_TOL: Self = 1e-5;
    const DENSITY_TOL: Self = 1e-5;
    const ENERGY_ZERO_TOL: Self = 1e-5;
}

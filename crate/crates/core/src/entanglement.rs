//! Concurrence of two-qubit states.
//!
//! Mixed states use the Wootters construction. The `λᵢ` (square roots of the
//! eigenvalues of `R = ρρ̃`) are obtained as the singular values of the
//! complex-symmetric matrix `τ = Vᵀ (σy⊗σy) V`, where the columns of `V` are
//! the eigenvectors of `ρ` scaled by the square roots of their weights.
//! Those singular values are read off the eigenvalues `±λᵢ` of the Hermitian
//! dilation `[[0, τ], [τ†, 0]]`, so no square root of a computed eigenvalue
//! of `R` is ever taken and vanishing `λᵢ` stay at round-off level.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensolve, jacobi_eigh, CMatrix, HermitianMatrix4, Matrix4};
use crate::scalar::Real;
use crate::state::{Basis, StateVector};

/// Two-qubit density matrix in the positional basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T: Real = f64> {
    m: Matrix4<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Checks Hermiticity, unit trace and positivity, each within
    /// `T::DENSITY_TOL`.
    pub fn new(m: Matrix4<T>) -> Result<Self> {
        let h = HermitianMatrix4::new(m, Basis::Positional).map_err(|e| match e {
            Error::NonHermitianInput { asymmetry } => {
                Error::InvalidDensityMatrix(format!("not Hermitian (asymmetry {asymmetry:e})"))
            }
            other => other,
        })?;
        let tr = h.matrix().trace();
        if (tr.re - T::one()).abs() > T::DENSITY_TOL || tr.im.abs() > T::DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {} + {}i",
                tr.re, tr.im
            )));
        }
        let es = hermitian_eigensolve(&h)?;
        if es.energy(0) < -T::DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {}",
                es.energy(0)
            )));
        }
        Ok(Self { m: *h.matrix() })
    }

    /// `|ψ⟩⟨ψ|` in positional coordinates.
    pub fn from_pure(psi: &StateVector<T>) -> Self {
        let v = psi.to_positional();
        let m = Matrix4::outer(v.amplitudes(), v.amplitudes());
        Self {
            m: HermitianMatrix4::new(m, Basis::Positional)
                .map(|h| *h.matrix())
                .unwrap_or(m),
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: Matrix4::identity().scale(Complex::new(T::lit(0.25), T::zero())),
        }
    }

    pub fn matrix(&self) -> &Matrix4<T> {
        &self.m
    }
}

/// `σy ⊗ σy` in the positional basis.
fn sigma_yy<T: Real>() -> Matrix4<T> {
    let (o, z) = (T::one(), T::zero());
    Matrix4::from_real([[z, z, z, -o], [z, z, o, z], [z, o, z, z], [-o, z, z, z]])
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip<T: Real>(rho: &Matrix4<T>) -> Matrix4<T> {
    let y = sigma_yy::<T>();
    y * rho.conj() * y
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult<T: Real = f64> {
    /// `max(0, λ₁ − λ₂ − λ₃ − λ₄)`
    pub value: T,
    /// Square roots of the eigenvalues of `ρρ̃`, descending.
    pub lambdas: [T; 4],
}

pub fn concurrence<T: Real>(rho: &DensityMatrix<T>) -> Result<ConcurrenceResult<T>> {
    let es = hermitian_eigensolve(&HermitianMatrix4::new(rho.m, Basis::Positional)?)?;

    let mut v = Matrix4::<T>::zeros();
    for k in 0..4 {
        let w = es.energy(k);
        if w < -T::DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {w}"
            )));
        }
        let amp = w.max(T::zero()).sqrt();
        for i in 0..4 {
            v.0[i][k] = es.state(k).amplitude(i) * amp;
        }
    }
    let tau = v.transpose() * sigma_yy() * v;

    let mut dilation = CMatrix::<T, 8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            dilation.0[i][j + 4] = tau.0[i][j];
            dilation.0[j + 4][i] = tau.0[i][j].conj();
        }
    }
    let (mut vals, _) = jacobi_eigh(&dilation);
    vals.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    let lambdas: [T; 4] = std::array::from_fn(|k| vals[k].max(T::zero()));

    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(T::zero());
    Ok(ConcurrenceResult { value, lambdas })
}

/// `2|c_LL·c_RR − c_LR·c_RL|` for a unit-norm pure state.
pub fn concurrence_pure<T: Real>(psi: &StateVector<T>) -> Result<T> {
    let n = psi.norm();
    if (n - T::one()).abs() > T::NORM_TOL {
        return Err(Error::NotNormalized {
            norm: n.to_f64_lossy(),
        });
    }
    let c = psi.to_positional();
    let a = c.amplitudes();
    Ok((a[0] * a[3] - a[1] * a[2]).norm() * T::lit(2.0))
}

/// Pure-state concurrence from raw positional amplitudes (no norm check).
pub(crate) fn concurrence_amplitudes<T: Real>(a: &[Complex<T>; 4]) -> T {
    (a[0] * a[3] - a[1] * a[2]).norm() * T::lit(2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::resonant_solution;
    use crate::state::{BellState, PositionalState};
    use crate::SystemParams;

    fn pure(psi: StateVector<f64>) -> DensityMatrix<f64> {
        DensityMatrix::from_pure(&psi)
    }

    #[test]
    fn singlet_is_spin_flip_invariant() {
        let rho = pure(StateVector::bell(BellState::PsiMinus));
        assert!(spin_flip(rho.matrix()).max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn spin_flip_maps_ll_to_rr() {
        let ll = pure(StateVector::positional(PositionalState::LL));
        let rr = pure(StateVector::positional(PositionalState::RR));
        assert_eq!(spin_flip(ll.matrix()), *rr.matrix());
        let mixed = DensityMatrix::<f64>::maximally_mixed();
        assert_eq!(spin_flip(mixed.matrix()), *mixed.matrix());
    }

    #[test]
    fn textbook_values() {
        let c = concurrence(&pure(StateVector::bell(BellState::PsiMinus))).unwrap();
        assert!((c.value - 1.0).abs() < 1e-12);
        let c = concurrence(&pure(StateVector::positional(PositionalState::RL))).unwrap();
        assert!(c.value.abs() < 1e-12);
        let c = concurrence(&DensityMatrix::<f64>::maximally_mixed()).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.lambdas.iter().all(|&l| (l - 0.25).abs() < 1e-12));
    }

    #[test]
    fn lambdas_descending_and_value_consistent() {
        // Werner state p|Ψ₋⟩⟨Ψ₋| + (1-p)I/4 has C = max(0, (3p-1)/2)
        let p = 0.8;
        let singlet = pure(StateVector::bell(BellState::PsiMinus));
        let m = singlet.matrix().scale(Complex::new(p, 0.0))
            + Matrix4::identity().scale(Complex::new((1.0 - p) / 4.0, 0.0));
        let c = concurrence(&DensityMatrix::new(m).unwrap()).unwrap();
        assert!((c.value - 0.7).abs() < 1e-12);
        assert!(c.lambdas.windows(2).all(|w| w[0] >= w[1]));
        let l = c.lambdas;
        assert!((c.value - (l[0] - l[1] - l[2] - l[3])).abs() < 1e-12);
    }

    #[test]
    fn invalid_density_matrices() {
        let bad_trace = Matrix4::<f64>::identity();
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::InvalidDensityMatrix(_))
        ));
        let negative = Matrix4::diagonal([1.5, -0.5, 0.0, 0.0]);
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::InvalidDensityMatrix(_))
        ));
        let mut asym = Matrix4::diagonal([0.5, 0.5, 0.0, 0.0]);
        asym[(0, 1)] = Complex::new(0.1, 0.0);
        assert!(matches!(
            DensityMatrix::new(asym),
            Err(Error::InvalidDensityMatrix(_))
        ));
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn resonant_superposition_closed_form() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (omega, expect) in [(0.12311, 0.9702), (0.41421, 0.7071)] {
            let gamma = 1.0 / (1.0f64 + omega * omega).sqrt();
            // Γ(|Ψ₋⟩ + Ω|Φ₋⟩) in positional coordinates
            let amps = [-omega * h, -h, h, omega * h].map(|x| Complex::new(gamma * x, 0.0));
            let psi = StateVector::new(amps, Basis::Positional).unwrap();
            let c = concurrence_pure(&psi).unwrap();
            let closed = (1.0 - omega * omega).abs() / (1.0 + omega * omega);
            assert!((c - closed).abs() < 1e-14);
            assert!((c - expect).abs() < 1e-4, "{c}");
        }
    }

    #[test]
    fn product_with_superposed_partner() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::new(
            [h, h, 0.0, 0.0].map(|x| Complex::new(x, 0.0)),
            Basis::Positional,
        )
        .unwrap();
        assert!(concurrence_pure(&psi).unwrap().abs() < 1e-16);
    }

    #[test]
    fn pure_formula_accepts_bell_coordinates() {
        let p = SystemParams::resonant(25.0 / 4.0, 25.0 / 4.0, 25.0).unwrap();
        let ground = resonant_solution(&p).unwrap().plus.lower_state();
        let c = concurrence_pure(&ground).unwrap();
        assert!((c - 1.0 / 2f64.sqrt()).abs() < 1e-14);
        let w = concurrence(&DensityMatrix::from_pure(&ground))
            .unwrap()
            .value;
        assert!((c - w).abs() < 1e-12);
    }
}

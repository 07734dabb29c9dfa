//! Hamiltonian of two Coulomb-coupled double quantum dots.
//!
//! ```text
//! H = ½ Σᵢ (εᵢ σz⁽ⁱ⁾ + Δᵢ σx⁽ⁱ⁾) + (J/4) σz⁽¹⁾ ⊗ σz⁽²⁾
//! ```
//!
//! with `σz = |L⟩⟨L| − |R⟩⟨R|` and `σx = |L⟩⟨R| + |R⟩⟨L|`. All energies are
//! in µeV.

use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix4, Matrix4};
use crate::scalar::Real;
use crate::state::Basis;

/// The five couplings of the model, in µeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<T: Real = f64> {
    eps1: T,
    eps2: T,
    delta1: T,
    delta2: T,
    j: T,
}

impl<T: Real> SystemParams<T> {
    /// Detunings `eps1`, `eps2`, tunneling rates `delta1`, `delta2` and the
    /// Coulomb coupling `j > 0`.
    pub fn new(eps1: T, eps2: T, delta1: T, delta2: T, j: T) -> Result<Self> {
        if ![eps1, eps2, delta1, delta2, j]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(Error::NonFinite("system parameters"));
        }
        if j <= T::zero() {
            return Err(Error::InvalidParameter(format!(
                "Coulomb coupling must be positive, got {j}"
            )));
        }
        Ok(Self {
            eps1,
            eps2,
            delta1,
            delta2,
            j,
        })
    }

    /// Full resonance (`ε₁ = ε₂ = 0`).
    pub fn resonant(delta1: T, delta2: T, j: T) -> Result<Self> {
        Self::new(T::zero(), T::zero(), delta1, delta2, j)
    }

    /// Full resonance with `Δ₁ = Δ₂ = ratio·J`.
    pub fn resonant_ratio(ratio: T, j: T) -> Result<Self> {
        Self::resonant(ratio * j, ratio * j, j)
    }

    pub fn with_detunings(&self, eps1: T, eps2: T) -> Result<Self> {
        Self::new(eps1, eps2, self.delta1, self.delta2, self.j)
    }

    pub fn with_tunneling(&self, delta1: T, delta2: T) -> Result<Self> {
        Self::new(self.eps1, self.eps2, delta1, delta2, self.j)
    }

    pub fn eps1(&self) -> T {
        self.eps1
    }
    pub fn eps2(&self) -> T {
        self.eps2
    }
    pub fn delta1(&self) -> T {
        self.delta1
    }
    pub fn delta2(&self) -> T {
        self.delta2
    }
    pub fn j(&self) -> T {
        self.j
    }

    /// `ε_s = ε₁ + ε₂`
    pub fn eps_sum(&self) -> T {
        self.eps1 + self.eps2
    }

    /// `ε_d = ε₁ − ε₂`
    pub fn eps_diff(&self) -> T {
        self.eps1 - self.eps2
    }

    /// `Δ₊ = (Δ₁ + Δ₂)/2`
    pub fn delta_plus(&self) -> T {
        (self.delta1 + self.delta2) * T::lit(0.5)
    }

    /// `Δ₋ = (Δ₁ − Δ₂)/2`
    pub fn delta_minus(&self) -> T {
        (self.delta1 - self.delta2) * T::lit(0.5)
    }

    /// Exchanges the two molecules.
    pub fn swapped(&self) -> Self {
        Self {
            eps1: self.eps2,
            eps2: self.eps1,
            delta1: self.delta2,
            delta2: self.delta1,
            j: self.j,
        }
    }

    /// Negates both detunings (global L↔R mirror).
    pub fn mirrored(&self) -> Self {
        Self {
            eps1: -self.eps1,
            eps2: -self.eps2,
            ..*self
        }
    }
}

/// Hamiltonian in the positional basis `{LL, LR, RL, RR}`.
pub fn build_positional<T: Real>(p: &SystemParams<T>) -> HermitianMatrix4<T> {
    let half = T::lit(0.5);
    let q = p.j * T::lit(0.25);
    let (es, ed) = (p.eps_sum() * half, p.eps_diff() * half);
    let (d1, d2) = (p.delta1 * half, p.delta2 * half);
    let z = T::zero();
    let rows = [
        [es + q, d2, d1, z],
        [d2, ed - q, z, d1],
        [d1, z, -ed - q, d2],
        [z, d1, d2, -es + q],
    ];
    HermitianMatrix4::from_real_symmetric(rows, Basis::Positional)
        .expect("real symmetric by construction")
}

/// Change of basis whose rows are `Ψ₋, Φ₋, Ψ₊, Φ₊` in positional coordinates,
/// with `Ψ± = (|RL⟩ ± |LR⟩)/√2` and `Φ± = (|RR⟩ ± |LL⟩)/√2`.
///
/// Applied to a positional amplitude vector it yields Bell amplitudes.
pub fn bell_basis_matrix<T: Real>() -> Matrix4<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    Matrix4::from_real([[z, -h, h, z], [-h, z, z, h], [z, h, h, z], [h, z, z, h]])
}

/// Hamiltonian in the Bell basis, `B·H·B†`.
///
/// Block form (ordering `Ψ₋, Φ₋ | Ψ₊, Φ₊`):
///
/// ```text
/// [ -J/4   -Δ₋  | -ε_d/2   0     ]
/// [ -Δ₋    J/4  |  0     -ε_s/2  ]
/// [ -ε_d/2  0   | -J/4    Δ₊     ]
/// [  0   -ε_s/2 |  Δ₊     J/4    ]
/// ```
///
/// The `Ψ₋–Φ₋` element is `−Δ₋` with the Bell rows as defined above; no
/// choice of row phases makes it `+Δ₋` while keeping the detuning block
/// `diag(−ε_d/2, −ε_s/2)`.
pub fn build_bell<T: Real>(p: &SystemParams<T>) -> HermitianMatrix4<T> {
    let b = bell_basis_matrix::<T>();
    let hb = b * *build_positional(p).matrix() * b.dagger();
    HermitianMatrix4::new(hb, Basis::Bell).expect("unitary similarity of a Hermitian matrix")
}

/// The same operator written out entry by entry in the Bell basis.
pub fn bell_block_form<T: Real>(p: &SystemParams<T>) -> HermitianMatrix4<T> {
    let half = T::lit(0.5);
    let q = p.j * T::lit(0.25);
    let (es, ed) = (p.eps_sum() * half, p.eps_diff() * half);
    let (dm, dp) = (p.delta_minus(), p.delta_plus());
    let z = T::zero();
    HermitianMatrix4::from_real_symmetric(
        [
            [-q, -dm, -ed, z],
            [-dm, q, z, -es],
            [-ed, z, -q, dp],
            [z, -es, dp, q],
        ],
        Basis::Bell,
    )
    .expect("real symmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(h: &HermitianMatrix4<f64>, i: usize, j: usize) -> f64 {
        let z = h.entry(i, j);
        assert_eq!(z.im, 0.0);
        z.re
    }

    #[test]
    fn uncoupled_diagonal() {
        let p = SystemParams::new(0.0, 0.0, 0.0, 0.0, 25.0).unwrap();
        let h = build_positional(&p);
        assert_eq!(*h.matrix(), Matrix4::diagonal([6.25, -6.25, -6.25, 6.25]));
        let hb = build_bell(&p);
        assert!(
            hb.matrix()
                .max_abs_diff(&Matrix4::diagonal([-6.25, 6.25, -6.25, 6.25]))
                < 1e-15
        );
    }

    #[test]
    fn direct_substitution() {
        let p = SystemParams::new(10.0, 4.0, 2.0, 6.0, 25.0).unwrap();
        let h = build_positional(&p);
        // 1-based (1,1), (2,2), (1,2), (1,3), (1,4)
        assert_eq!(re(&h, 0, 0), 13.25);
        assert_eq!(re(&h, 1, 1), -3.25);
        assert_eq!(re(&h, 0, 1), 3.0);
        assert_eq!(re(&h, 0, 2), 1.0);
        assert_eq!(re(&h, 0, 3), 0.0);
        assert_eq!(re(&h, 1, 2), 0.0);
        assert_eq!(*h.matrix(), h.matrix().transpose());
    }

    #[test]
    fn bell_rows() {
        let b = bell_basis_matrix::<f64>();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(b.0[0].map(|z| z.re), [0.0, -h, h, 0.0]);
        assert!((b * b.dagger()).max_abs_diff(&Matrix4::identity()) < 1e-15);
    }

    #[test]
    fn equal_tunneling_at_resonance_decouples() {
        let p = SystemParams::<f64>::resonant(3.0, 3.0, 25.0).unwrap();
        let hb = build_bell(&p);
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3), (0, 1)] {
            assert!(hb.entry(i, j).norm() < 1e-15, "({i},{j})");
        }
        assert!((hb.entry(2, 3).re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn block_form_matches_similarity() {
        let p = SystemParams::new(3.1, -7.4, 2.2, 9.7, 25.0).unwrap();
        let diff = build_bell(&p)
            .matrix()
            .max_abs_diff(bell_block_form(&p).matrix());
        assert!(diff < 1e-14, "{diff}");
    }

    #[test]
    fn rejects_bad_coupling() {
        assert!(SystemParams::new(0.0, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(SystemParams::new(0.0, 0.0, 0.0, 0.0, -1.0).is_err());
        assert!(SystemParams::new(f64::NAN, 0.0, 0.0, 0.0, 25.0).is_err());
    }

    #[test]
    fn derived_quantities() {
        let p = SystemParams::new(10.0, 4.0, 2.0, 6.0, 25.0).unwrap();
        assert_eq!((p.eps_sum(), p.eps_diff()), (14.0, 6.0));
        assert_eq!((p.delta_plus(), p.delta_minus()), (4.0, -2.0));
    }
}

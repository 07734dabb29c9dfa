//! Numerical eigensystem for arbitrary couplings and the closed-form
//! solution at full resonance.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hamiltonian::{build_positional, SystemParams};
use crate::linalg::{hermitian_eigensolve, EigenSystem};
use crate::scalar::Real;
use crate::state::{Basis, BellState, StateVector};

/// Eigensystem of the positional Hamiltonian, levels `|0⟩..|3⟩` by ascending
/// energy. Crossings are not tracked: labels follow energy order only.
pub fn eigensystem<T: Real>(p: &SystemParams<T>) -> Result<EigenSystem<T>> {
    hermitian_eigensolve(&build_positional(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subspace {
    /// `{Ψ₋, Φ₋}`, coupled by `Δ₋`
    Minus,
    /// `{Ψ₊, Φ₊}`, coupled by `Δ₊`
    Plus,
}

impl Subspace {
    fn psi(self) -> BellState {
        match self {
            Subspace::Minus => BellState::PsiMinus,
            Subspace::Plus => BellState::PsiPlus,
        }
    }

    fn phi(self) -> BellState {
        match self {
            Subspace::Minus => BellState::PhiMinus,
            Subspace::Plus => BellState::PhiPlus,
        }
    }
}

/// Closed-form diagonalization of one 2×2 Bell block
/// `[[-J/4, δ], [δ, J/4]]` in the ordering `(Ψ_s, Φ_s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceSolution<T: Real = f64> {
    pub subspace: Subspace,
    /// Off-diagonal element of the block: `−Δ₋` for the minus block, `Δ₊` for the plus block.
    pub coupling: T,
    /// `β = √(J² + 16δ²)`
    pub beta: T,
    /// `E∓ = ∓β/4`
    pub lower_energy: T,
    pub upper_energy: T,
    /// Mixing of the lower state, `|ψ₋⟩ = Γ(|Ψ_s⟩ + Ω₋|Φ_s⟩)`.
    pub mix_lower: T,
    /// Mixing of the upper state, `|ψ₊⟩ = Γ(|Φ_s⟩ + Ω₊|Ψ_s⟩)`.
    pub mix_upper: T,
    /// `Γ = 1/√(1 + Ω²)`, shared by both states of the block.
    pub gamma: T,
}

impl<T: Real> SubspaceSolution<T> {
    fn solve(subspace: Subspace, coupling: T, j: T) -> Self {
        let four = T::lit(4.0);
        let beta = (j * j + T::lit(16.0) * coupling * coupling).sqrt();
        // (J − β)/(4δ) rewritten as −4δ/(J + β); exact zero in the Δ → 0 limit
        let mix_lower = if coupling.abs() < T::ENERGY_ZERO_TOL {
            T::zero()
        } else {
            -four * coupling / (j + beta)
        };
        let mix_upper = -mix_lower;
        Self {
            subspace,
            coupling,
            beta,
            lower_energy: -beta / four,
            upper_energy: beta / four,
            mix_lower,
            mix_upper,
            gamma: T::one() / (T::one() + mix_lower * mix_lower).sqrt(),
        }
    }

    fn combine(&self, main: BellState, main_w: T, other: BellState, other_w: T) -> StateVector<T> {
        let mut amps = [Complex::zero(); 4];
        amps[main.index()] = Complex::new(self.gamma * main_w, T::zero());
        amps[other.index()] = Complex::new(self.gamma * other_w, T::zero());
        StateVector::from_orthonormal_column(amps, Basis::Bell)
    }

    /// `Γ(|Ψ_s⟩ + Ω₋|Φ_s⟩)`, Bell coordinates.
    pub fn lower_state(&self) -> StateVector<T> {
        self.combine(
            self.subspace.psi(),
            T::one(),
            self.subspace.phi(),
            self.mix_lower,
        )
    }

    /// `Γ(|Φ_s⟩ + Ω₊|Ψ_s⟩)`, Bell coordinates.
    pub fn upper_state(&self) -> StateVector<T> {
        self.combine(
            self.subspace.phi(),
            T::one(),
            self.subspace.psi(),
            self.mix_upper,
        )
    }
}

/// Analytic eigen-solution at `ε₁ = ε₂ = 0`, where the Bell-basis
/// Hamiltonian splits into two independent 2×2 blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantSolution<T: Real = f64> {
    pub minus: SubspaceSolution<T>,
    pub plus: SubspaceSolution<T>,
}

impl<T: Real> ResonantSolution<T> {
    /// Ordering `ψ₋^{Δ₋}, ψ₊^{Δ₋}, ψ₋^{Δ₊}, ψ₊^{Δ₊}`; reduces to
    /// `Ψ₋, Φ₋, Ψ₊, Φ₊` without tunneling.
    pub fn energies(&self) -> [T; 4] {
        [
            self.minus.lower_energy,
            self.minus.upper_energy,
            self.plus.lower_energy,
            self.plus.upper_energy,
        ]
    }

    /// Same ordering as [`Self::energies`], Bell coordinates.
    pub fn states(&self) -> [StateVector<T>; 4] {
        [
            self.minus.lower_state(),
            self.minus.upper_state(),
            self.plus.lower_state(),
            self.plus.upper_state(),
        ]
    }
}

pub fn resonant_solution<T: Real>(p: &SystemParams<T>) -> Result<ResonantSolution<T>> {
    if p.eps1().abs() > T::ENERGY_ZERO_TOL || p.eps2().abs() > T::ENERGY_ZERO_TOL {
        return Err(Error::NotResonant {
            eps1: p.eps1().to_f64_lossy(),
            eps2: p.eps2().to_f64_lossy(),
        });
    }
    Ok(ResonantSolution {
        minus: SubspaceSolution::solve(Subspace::Minus, -p.delta_minus(), p.j()),
        plus: SubspaceSolution::solve(Subspace::Plus, p.delta_plus(), p.j()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resonance {
    /// `ε₁ = ε₂ = 0`
    FullResonance,
    /// `ε_d = 0`, `ε_s ≠ 0`: `Ψ₋` stays an eigenstate when `Δ₁ = Δ₂`
    EqualDetuning,
    /// `ε_s = 0`, `ε_d ≠ 0`: `Φ₋` stays an eigenstate when `Δ₁ = Δ₂`
    OppositeDetuning,
    Generic,
}

pub fn classify_resonance<T: Real>(p: &SystemParams<T>) -> Resonance {
    let zero = |x: T| x.abs() <= T::ENERGY_ZERO_TOL;
    if zero(p.eps1()) && zero(p.eps2()) {
        Resonance::FullResonance
    } else if zero(p.eps_diff()) {
        Resonance::EqualDetuning
    } else if zero(p.eps_sum()) {
        Resonance::OppositeDetuning
    } else {
        Resonance::Generic
    }
}

/// Bell state with the largest weight `|⟨b|ψ⟩|²` in `psi`.
pub fn dominant_bell_component<T: Real>(psi: &StateVector<T>) -> (BellState, T) {
    let probs = psi.to_bell().probabilities();
    let mut best = 0;
    for k in 1..4 {
        if probs[k] > probs[best] {
            best = k;
        }
    }
    (BellState::ALL[best], probs[best])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::build_bell;

    const J: f64 = 25.0;

    #[test]
    fn uncoupled_levels() {
        let p = SystemParams::resonant(0.0, 0.0, J).unwrap();
        let es = eigensystem(&p).unwrap();
        assert_eq!(es.energies(), &[-6.25, -6.25, 6.25, 6.25]);
        assert_eq!(es.degenerate_pairs(), [true, false, true]);
    }

    #[test]
    fn weak_tunneling_levels() {
        let p = SystemParams::resonant(J / 16.0, J / 16.0, J).unwrap();
        let es = eigensystem(&p).unwrap();
        // ±√(J² + 16Δ₊²)/4 with Δ₊ = J/16, plus ∓J/4 from the decoupled minus block
        let outer = (J * J + 16.0 * (J / 16.0) * (J / 16.0)).sqrt() / 4.0;
        let expect = [-outer, -6.25, 6.25, outer];
        for k in 0..4 {
            assert!((es.energy(k) - expect[k]).abs() < 1e-12);
        }
        assert!((outer - 6.44235).abs() < 1e-5);
        assert_eq!(es.degenerate_pairs(), [false; 3]);
    }

    #[test]
    fn numeric_ground_state_matches_closed_form() {
        let p = SystemParams::resonant(J / 16.0, J / 16.0, J).unwrap();
        let es = eigensystem(&p).unwrap();
        let sol = resonant_solution(&p).unwrap();
        let f = es.state(0).fidelity(&sol.plus.lower_state());
        assert!(f >= 1.0 - 1e-10, "{f}");
    }

    #[test]
    fn no_tunneling_gives_bell_states() {
        let p = SystemParams::resonant(0.0, 0.0, J).unwrap();
        let sol = resonant_solution(&p).unwrap();
        assert_eq!(sol.energies(), [-6.25, 6.25, -6.25, 6.25]);
        for (k, s) in sol.states().iter().enumerate() {
            assert_eq!(*s, StateVector::bell(BellState::ALL[k]));
        }
        assert_eq!(sol.minus.gamma, 1.0);
    }

    #[test]
    fn mixing_coefficients() {
        let weak =
            resonant_solution(&SystemParams::resonant(J / 16.0, J / 16.0, J).unwrap()).unwrap();
        assert!((weak.plus.mix_lower.abs() - 0.12311).abs() < 1e-5);
        let strong =
            resonant_solution(&SystemParams::resonant(J / 4.0, J / 4.0, J).unwrap()).unwrap();
        assert!((strong.plus.mix_lower.abs() - (2f64.sqrt() - 1.0)).abs() < 1e-14);
        assert_eq!(strong.plus.mix_upper, -strong.plus.mix_lower);
    }

    #[test]
    fn closed_form_states_are_eigenvectors() {
        let p = SystemParams::resonant(2.7, -4.1, J).unwrap();
        let hb = build_bell(&p);
        let sol = resonant_solution(&p).unwrap();
        for (psi, e) in sol.states().iter().zip(sol.energies()) {
            let hv = hb.apply(psi);
            for i in 0..4 {
                assert!((hv[i] - psi.amplitude(i) * e).norm() < 1e-13);
            }
            assert!((psi.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn resonant_solution_requires_resonance() {
        let p = SystemParams::new(1.0, 0.0, 1.0, 1.0, J).unwrap();
        assert!(matches!(
            resonant_solution(&p),
            Err(Error::NotResonant { .. })
        ));
    }

    #[test]
    fn classification() {
        let base = SystemParams::resonant(1.0, 1.0, J).unwrap();
        let cls = |e1, e2| classify_resonance(&base.with_detunings(e1, e2).unwrap());
        assert_eq!(cls(5.0, 5.0), Resonance::EqualDetuning);
        assert_eq!(cls(5.0, -5.0), Resonance::OppositeDetuning);
        assert_eq!(cls(0.0, 0.0), Resonance::FullResonance);
        assert_eq!(cls(5.0, 1.0), Resonance::Generic);
        assert_eq!(cls(1e-13, -1e-13), Resonance::FullResonance);
    }

    #[test]
    fn dominant_component_of_first_excited_state() {
        let p = SystemParams::resonant(J / 16.0, J / 16.0, J).unwrap();
        let es = eigensystem(&p).unwrap();
        let (b, w) = dominant_bell_component(es.state(1));
        assert_eq!(b, BellState::PsiMinus);
        assert!((w - 1.0).abs() < 1e-12);
    }
}

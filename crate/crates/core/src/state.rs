//! Two-qubit pure states in the positional and Bell bases.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hamiltonian::bell_basis_matrix;
use crate::linalg::{inner, norm};
use crate::scalar::Real;

/// Coordinate system of a 4-vector or operator.
///
/// Positional ordering is `{|LL⟩, |LR⟩, |RL⟩, |RR⟩}` (first letter: molecule 1).
/// Bell ordering is `{|Ψ₋⟩, |Φ₋⟩, |Ψ₊⟩, |Φ₊⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Positional,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionalState {
    LL,
    LR,
    RL,
    RR,
}

impl PositionalState {
    pub const ALL: [PositionalState; 4] = [Self::LL, Self::LR, Self::RL, Self::RR];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::LL => "LL",
            Self::LR => "LR",
            Self::RL => "RL",
            Self::RR => "RR",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellState {
    PsiMinus,
    PhiMinus,
    PsiPlus,
    PhiPlus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::PsiMinus, Self::PhiMinus, Self::PsiPlus, Self::PhiPlus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::PsiMinus => "PsiMinus",
            Self::PhiMinus => "PhiMinus",
            Self::PsiPlus => "PsiPlus",
            Self::PhiPlus => "PhiPlus",
        }
    }
}

/// A preparable initial state: a positional product state or a Bell state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialState {
    Positional(PositionalState),
    Bell(BellState),
}

impl InitialState {
    pub fn label(self) -> &'static str {
        match self {
            Self::Positional(p) => p.label(),
            Self::Bell(b) => b.label(),
        }
    }

    pub fn state<T: Real>(self) -> StateVector<T> {
        match self {
            Self::Positional(p) => StateVector::positional(p),
            Self::Bell(b) => StateVector::bell(b),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PositionalState::ALL
            .iter()
            .map(|&p| InitialState::Positional(p))
            .chain(BellState::ALL.iter().map(|&b| InitialState::Bell(b)))
            .find(|st| st.label() == s.trim())
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown initial state `{s}` (expected LL, LR, RL, RR, PsiMinus, PhiMinus, PsiPlus or PhiPlus)"
                ))
            })
    }
}

/// Unit-norm complex 4-vector tagged with its basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector<T: Real = f64> {
    amps: [Complex<T>; 4],
    basis: Basis,
}

impl<T: Real> StateVector<T> {
    /// Accepts amplitudes whose norm is one within `T::NORM_TOL`.
    pub fn new(amps: [Complex<T>; 4], basis: Basis) -> Result<Self> {
        if amps.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let n = norm(&amps);
        if (n - T::one()).abs() > T::NORM_TOL {
            return Err(Error::NotNormalized {
                norm: n.to_f64_lossy(),
            });
        }
        Ok(Self { amps, basis })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: [Complex<T>; 4], basis: Basis) -> Result<Self> {
        if amps.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let n = norm(&amps);
        if n == T::zero() {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        Ok(Self {
            amps: amps.map(|z| z / n),
            basis,
        })
    }

    /// For vectors that are unit-norm by construction (unitary columns,
    /// unitary images of valid states).
    pub(crate) fn from_orthonormal_column(amps: [Complex<T>; 4], basis: Basis) -> Self {
        Self { amps, basis }
    }

    pub fn basis_vector(k: usize, basis: Basis) -> Self {
        let mut amps = [Complex::zero(); 4];
        amps[k] = Complex::new(T::one(), T::zero());
        Self { amps, basis }
    }

    pub fn positional(p: PositionalState) -> Self {
        Self::basis_vector(p.index(), Basis::Positional)
    }

    pub fn bell(b: BellState) -> Self {
        Self::basis_vector(b.index(), Basis::Bell)
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 4] {
        &self.amps
    }

    pub fn amplitude(&self, k: usize) -> Complex<T> {
        self.amps[k]
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn norm(&self) -> T {
        norm(&self.amps)
    }

    pub fn to_positional(&self) -> Self {
        match self.basis {
            Basis::Positional => *self,
            Basis::Bell => Self {
                amps: bell_basis_matrix::<T>().dagger().matvec(&self.amps),
                basis: Basis::Positional,
            },
        }
    }

    pub fn to_bell(&self) -> Self {
        match self.basis {
            Basis::Bell => *self,
            Basis::Positional => Self {
                amps: bell_basis_matrix::<T>().matvec(&self.amps),
                basis: Basis::Bell,
            },
        }
    }

    pub fn in_basis(&self, basis: Basis) -> Self {
        match basis {
            Basis::Positional => self.to_positional(),
            Basis::Bell => self.to_bell(),
        }
    }

    /// `⟨self|other⟩`, computed in `self`'s basis.
    pub fn overlap(&self, other: &Self) -> Complex<T> {
        inner(&self.amps, other.in_basis(self.basis).amplitudes())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> T {
        self.overlap(other).norm_sqr()
    }

    /// `|amplitude_k|²` in the current basis.
    pub fn probability(&self, k: usize) -> T {
        self.amps[k].norm_sqr()
    }

    pub fn probabilities(&self) -> [T; 4] {
        self.amps.map(|z| z.norm_sqr())
    }
}

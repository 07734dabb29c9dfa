//! Unit conventions.
//!
//! Energies are in µeV and times in ns. The only conversion between the two
//! goes through the reduced Planck constant below.

use crate::scalar::Real;

/// Reduced Planck constant in µeV·ns (CODATA).
pub const HBAR_UEV_NS: f64 = 0.658_211_956_9;

/// The unit system used for every time conversion in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem<T: Real = f64> {
    hbar: T,
}

impl<T: Real> UnitSystem<T> {
    /// µeV for energies, ns for times.
    pub fn standard() -> Self {
        Self {
            hbar: T::lit(HBAR_UEV_NS),
        }
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    /// Phase accumulated by an energy `e` (µeV) over time `t` (ns): `e·t/ħ`.
    #[inline]
    pub fn phase(&self, e: T, t: T) -> T {
        e * t / self.hbar
    }

    /// Angular frequency in rad/ns for an energy in µeV.
    #[inline]
    pub fn angular_frequency(&self, e: T) -> T {
        e / self.hbar
    }
}

impl<T: Real> Default for UnitSystem<T> {
    fn default() -> Self {
        Self::standard()
    }
}

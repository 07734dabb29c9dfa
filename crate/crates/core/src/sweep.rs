//! Two-dimensional parameter scans of the concurrence.
//!
//! Every cell is independent. Rows are evaluated in parallel and assembled
//! by index, so results do not depend on scheduling.

use rayon::prelude::*;

use crate::dynamics::Propagator;
use crate::entanglement::concurrence_amplitudes;
use crate::error::{Error, Result};
use crate::hamiltonian::SystemParams;
use crate::scalar::Real;
use crate::spectrum::eigensystem;
use crate::state::InitialState;

/// Inclusive, uniformly sampled axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis<T: Real = f64> {
    pub name: String,
    pub min: T,
    pub max: T,
    pub count: usize,
    pub unit: String,
}

impl<T: Real> Axis<T> {
    pub fn new(
        name: impl Into<String>,
        min: T,
        max: T,
        count: usize,
        unit: impl Into<String>,
    ) -> Result<Self> {
        let name = name.into();
        if count < 2 {
            return Err(Error::InvalidParameter(format!(
                "axis `{name}` needs at least 2 points, got {count}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && max > min) {
            return Err(Error::InvalidParameter(format!(
                "axis `{name}` has an empty range [{min}, {max}]"
            )));
        }
        Ok(Self {
            name,
            min,
            max,
            count,
            unit: unit.into(),
        })
    }

    /// Both endpoints are hit exactly.
    pub fn values(&self) -> Vec<T> {
        let last = T::from_usize(self.count - 1).unwrap();
        (0..self.count)
            .map(|i| match i {
                0 => self.min,
                i if i == self.count - 1 => self.max,
                i => self.min + (self.max - self.min) * T::from_usize(i).unwrap() / last,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetuningLine {
    /// `ε₂ = ε₁`
    Equal,
    /// `ε₂ = −ε₁`
    Opposite,
}

impl DetuningLine {
    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Self::Equal),
            -1 => Ok(Self::Opposite),
            s => Err(Error::InvalidParameter(format!(
                "detuning sign must be +1 or -1, got {s}"
            ))),
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Self::Equal => 1,
            Self::Opposite => -1,
        }
    }

    fn eps2<T: Real>(self, eps1: T) -> T {
        match self {
            Self::Equal => eps1,
            Self::Opposite => -eps1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Concurrence of eigenstate `state` over `(ε₁, ε₂)`.
    Eigen { state: usize },
    /// Concurrence over `(t, Δ₁/J)` with `Δ₁ = Δ₂` at full resonance.
    TunnelingDynamics { initial: InitialState },
    /// Concurrence over `(t, ε₁)` along a detuning line.
    DetuningDynamics {
        initial: InitialState,
        line: DetuningLine,
    },
}

/// Result of a scan. `values[iy][ix]`; row 0 is `y.min`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid<T: Real = f64> {
    pub kind: SweepKind,
    /// Couplings not overridden by the axes.
    pub base: SystemParams<T>,
    pub x: Axis<T>,
    pub y: Axis<T>,
    pub values: Vec<Vec<T>>,
    /// Cells whose eigenstate is degenerate with a neighbour (eigen sweeps only).
    pub degenerate: Vec<Vec<bool>>,
}

impl<T: Real> SweepGrid<T> {
    pub fn value(&self, ix: usize, iy: usize) -> T {
        self.values[iy][ix]
    }

    pub fn degenerate_count(&self) -> usize {
        self.degenerate.iter().flatten().filter(|&&d| d).count()
    }

    pub fn min_max(&self) -> (T, T) {
        self.values
            .iter()
            .flatten()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

/// Eigenstate concurrence over `ε₁` (x) and `ε₂` (y).
pub fn eigen_concurrence_map<T: Real>(
    base: &SystemParams<T>,
    eps1: &Axis<T>,
    eps2: &Axis<T>,
    state: usize,
) -> Result<SweepGrid<T>> {
    if state > 3 {
        return Err(Error::InvalidParameter(format!(
            "eigenstate index must be 0..=3, got {state}"
        )));
    }
    let xs = eps1.values();
    let rows = eps2
        .values()
        .par_iter()
        .map(|&e2| {
            xs.iter()
                .map(|&e1| {
                    let es = eigensystem(&base.with_detunings(e1, e2)?)?;
                    let c = concurrence_amplitudes(es.state(state).amplitudes());
                    Ok((c, es.is_degenerate(state)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let (values, degenerate) = split(rows);
    Ok(SweepGrid {
        kind: SweepKind::Eigen { state },
        base: *base,
        x: eps1.clone(),
        y: eps2.clone(),
        values,
        degenerate,
    })
}

/// Concurrence over time (x) and `Δ₁/J` (y) with `Δ₁ = Δ₂ = ratio·J`.
pub fn dynamics_tunneling_map<T: Real>(
    base: &SystemParams<T>,
    time: &Axis<T>,
    ratio: &Axis<T>,
    initial: InitialState,
) -> Result<SweepGrid<T>> {
    require_resonant(base)?;
    let psi0 = initial.state::<T>();
    let ts = time.values();
    let values = ratio
        .values()
        .par_iter()
        .map(|&r| {
            let prop = Propagator::new(&base.with_tunneling(r * base.j(), r * base.j())?)?;
            concurrence_row(&prop, &psi0, &ts)
        })
        .collect::<Result<Vec<_>>>()?;
    let degenerate = vec![vec![false; time.count]; ratio.count];
    Ok(SweepGrid {
        kind: SweepKind::TunnelingDynamics { initial },
        base: *base,
        x: time.clone(),
        y: ratio.clone(),
        values,
        degenerate,
    })
}

/// Concurrence over time (x) and `ε₁` (y) with `ε₂ = ±ε₁`. Requires `Δ₁ = Δ₂`.
pub fn dynamics_detuning_map<T: Real>(
    base: &SystemParams<T>,
    time: &Axis<T>,
    eps1: &Axis<T>,
    initial: InitialState,
    line: DetuningLine,
) -> Result<SweepGrid<T>> {
    if base.delta_minus().abs() > T::ENERGY_ZERO_TOL {
        return Err(Error::InvalidParameter(
            "detuning sweeps need equal tunneling rates".into(),
        ));
    }
    let psi0 = initial.state::<T>();
    let ts = time.values();
    let values = eps1
        .values()
        .par_iter()
        .map(|&e1| {
            let prop = Propagator::new(&base.with_detunings(e1, line.eps2(e1))?)?;
            concurrence_row(&prop, &psi0, &ts)
        })
        .collect::<Result<Vec<_>>>()?;
    let degenerate = vec![vec![false; time.count]; eps1.count];
    Ok(SweepGrid {
        kind: SweepKind::DetuningDynamics { initial, line },
        base: *base,
        x: time.clone(),
        y: eps1.clone(),
        values,
        degenerate,
    })
}

fn concurrence_row<T: Real>(
    prop: &Propagator<T>,
    psi0: &crate::state::StateVector<T>,
    ts: &[T],
) -> Result<Vec<T>> {
    ts.iter()
        .map(|&t| {
            prop.evolve(psi0, t)
                .map(|s| concurrence_amplitudes(s.amplitudes()))
        })
        .collect()
}

fn require_resonant<T: Real>(p: &SystemParams<T>) -> Result<()> {
    if p.eps1().abs() > T::ENERGY_ZERO_TOL || p.eps2().abs() > T::ENERGY_ZERO_TOL {
        return Err(Error::NotResonant {
            eps1: p.eps1().to_f64_lossy(),
            eps2: p.eps2().to_f64_lossy(),
        });
    }
    Ok(())
}

fn split<T>(rows: Vec<Vec<(T, bool)>>) -> (Vec<Vec<T>>, Vec<Vec<bool>>) {
    rows.into_iter().map(|r| r.into_iter().unzip()).unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PositionalState;

    const J: f64 = 25.0;

    fn eps_axis(name: &str, count: usize) -> Axis<f64> {
        Axis::new(name, -J, J, count, "ueV").unwrap()
    }

    #[test]
    fn axis_endpoints_exact() {
        let a = eps_axis("eps1", 201);
        let v = a.values();
        assert_eq!(v.len(), 201);
        assert_eq!((v[0], v[200], v[100]), (-J, J, 0.0));
        assert_eq!(v[50], -J / 2.0);
        assert_eq!(v[150], J / 2.0);
        assert!(Axis::new("x", 0.0, 1.0, 1, "").is_err());
        assert!(Axis::new("x", 1.0, 1.0, 5, "").is_err());
    }

    #[test]
    fn first_excited_state_on_equal_detuning_line() {
        let base = SystemParams::resonant(J / 16.0, J / 16.0, J).unwrap();
        let g =
            eigen_concurrence_map(&base, &eps_axis("eps1", 21), &eps_axis("eps2", 21), 1).unwrap();
        for k in 0..21 {
            assert!((g.value(k, k) - 1.0).abs() < 1e-9, "cell {k}");
        }
        assert_eq!(g.degenerate_count(), 0);
    }

    #[test]
    fn ground_state_at_origin() {
        let base = SystemParams::resonant(J / 16.0, J / 16.0, J).unwrap();
        let g =
            eigen_concurrence_map(&base, &eps_axis("eps1", 5), &eps_axis("eps2", 5), 0).unwrap();
        assert!((g.value(2, 2) - 0.9702).abs() < 1e-4);
    }

    #[test]
    fn tunneling_map_edges() {
        let base = SystemParams::resonant(0.0, 0.0, J).unwrap();
        let t = Axis::new("t", 0.0, 1.0, 41, "ns").unwrap();
        let r = Axis::new("ratio", 0.0, 1.0, 11, "").unwrap();
        let g =
            dynamics_tunneling_map(&base, &t, &r, InitialState::Positional(PositionalState::RL))
                .unwrap();
        assert!(g.values[0].iter().all(|&c| c < 1e-14));
        assert!(g.values.iter().all(|row| row[0] == 0.0));
        let (lo, hi) = g.min_max();
        assert!(lo >= 0.0 && hi <= 1.0 + 1e-12);
    }

    #[test]
    fn tunneling_map_needs_resonance() {
        let base = SystemParams::new(1.0, 1.0, 0.0, 0.0, J).unwrap();
        let t = Axis::new("t", 0.0, 1.0, 3, "ns").unwrap();
        let r = Axis::new("ratio", 0.0, 1.0, 3, "").unwrap();
        assert!(dynamics_tunneling_map(
            &base,
            &t,
            &r,
            InitialState::Positional(PositionalState::RL)
        )
        .is_err());
    }

    #[test]
    fn detuning_map_requires_equal_tunneling() {
        let base = SystemParams::resonant(1.0, 2.0, J).unwrap();
        let t = Axis::new("t", 0.0, 1.0, 3, "ns").unwrap();
        let e = eps_axis("eps1", 3);
        let init = InitialState::Positional(PositionalState::LL);
        assert!(dynamics_detuning_map(&base, &t, &e, init, DetuningLine::Opposite).is_err());
        assert!(DetuningLine::from_sign(0).is_err());
    }

    #[test]
    fn bad_state_index() {
        let base = SystemParams::resonant(1.0, 1.0, J).unwrap();
        assert!(eigen_concurrence_map(&base, &eps_axis("a", 3), &eps_axis("b", 3), 4).is_err());
    }
}

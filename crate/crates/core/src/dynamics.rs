//! Closed-system time evolution.
//!
//! The Hamiltonian is time independent, so evolution is exact through its
//! spectral decomposition: `ψ(t) = Σₖ exp(−i Eₖ t/ħ) ⟨k|ψ₀⟩ |k⟩`. A fixed-step
//! RK4 integrator is kept as an independent cross-check.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::entanglement::concurrence_amplitudes;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_positional, SystemParams};
use crate::linalg::{inner, EigenSystem, HermitianMatrix4};
use crate::scalar::Real;
use crate::spectrum::eigensystem;
use crate::state::{Basis, StateVector};
use crate::units::UnitSystem;

/// Occupations of the positional basis states.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Populations<T: Real = f64> {
    pub ll: T,
    pub lr: T,
    pub rl: T,
    pub rr: T,
}

impl<T: Real> Populations<T> {
    pub fn of(psi: &StateVector<T>) -> Self {
        let [ll, lr, rl, rr] = psi.to_positional().probabilities();
        Self { ll, lr, rl, rr }
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.ll, self.lr, self.rl, self.rr]
    }

    pub fn sum(&self) -> T {
        self.ll + self.lr + self.rl + self.rr
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exact spectral propagation.
    Spectral,
    /// Classical fixed-step Runge–Kutta; verification only.
    Rk4 { steps: usize },
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if !t.is_finite() || t < T::zero() {
        return Err(Error::InvalidParameter(format!(
            "evolution time must be finite and non-negative, got {t}"
        )));
    }
    Ok(())
}

/// Spectral propagator for fixed couplings; diagonalizes once.
#[derive(Debug, Clone)]
pub struct Propagator<T: Real = f64> {
    hamiltonian: HermitianMatrix4<T>,
    eig: EigenSystem<T>,
    units: UnitSystem<T>,
}

impl<T: Real> Propagator<T> {
    pub fn new(p: &SystemParams<T>) -> Result<Self> {
        Ok(Self {
            hamiltonian: build_positional(p),
            eig: eigensystem(p)?,
            units: UnitSystem::standard(),
        })
    }

    pub fn eigensystem(&self) -> &EigenSystem<T> {
        &self.eig
    }

    pub fn hamiltonian(&self) -> &HermitianMatrix4<T> {
        &self.hamiltonian
    }

    /// State at time `t` (ns), in positional coordinates.
    pub fn evolve(&self, psi0: &StateVector<T>, t: T) -> Result<StateVector<T>> {
        check_time(t)?;
        let psi0 = psi0.to_positional();
        if t == T::zero() {
            return Ok(psi0);
        }
        let mut out = [Complex::zero(); 4];
        for (k, e) in self.eig.energies().iter().enumerate() {
            let v = self.eig.state(k).amplitudes();
            let phase = self.units.phase(*e, t);
            let c = inner(v, psi0.amplitudes()) * Complex::new(phase.cos(), -phase.sin());
            for i in 0..4 {
                out[i] = out[i] + v[i] * c;
            }
        }
        Ok(StateVector::from_orthonormal_column(out, Basis::Positional))
    }
}

/// `ψ(t)` from `ψ₀` under the couplings `p`, `t` in ns.
pub fn propagate<T: Real>(
    p: &SystemParams<T>,
    psi0: &StateVector<T>,
    t: T,
) -> Result<StateVector<T>> {
    Propagator::new(p)?.evolve(psi0, t)
}

pub fn propagate_with<T: Real>(
    p: &SystemParams<T>,
    psi0: &StateVector<T>,
    t: T,
    method: Method,
) -> Result<StateVector<T>> {
    match method {
        Method::Spectral => propagate(p, psi0, t),
        Method::Rk4 { steps } => propagate_rk4(p, psi0, t, steps),
    }
}

/// Integrates `iħ dψ/dt = Hψ` with `steps` classical RK4 steps.
pub fn propagate_rk4<T: Real>(
    p: &SystemParams<T>,
    psi0: &StateVector<T>,
    t: T,
    steps: usize,
) -> Result<StateVector<T>> {
    check_time(t)?;
    if steps == 0 {
        return Err(Error::InvalidParameter(
            "RK4 needs at least one step".into(),
        ));
    }
    let h = *build_positional(p).matrix();
    let minus_i_over_hbar = Complex::new(T::zero(), -T::one() / UnitSystem::<T>::standard().hbar());
    let deriv = |v: &[Complex<T>; 4]| h.matvec(v).map(|z| z * minus_i_over_hbar);
    let axpy = |a: &[Complex<T>; 4], s: T, b: &[Complex<T>; 4]| -> [Complex<T>; 4] {
        std::array::from_fn(|i| a[i] + b[i] * s)
    };

    let dt = t / T::from_usize(steps).expect("step count");
    let (half, sixth, two) = (T::lit(0.5), T::one() / T::lit(6.0), T::lit(2.0));
    let mut y = *psi0.to_positional().amplitudes();
    for _ in 0..steps {
        let k1 = deriv(&y);
        let k2 = deriv(&axpy(&y, dt * half, &k1));
        let k3 = deriv(&axpy(&y, dt * half, &k2));
        let k4 = deriv(&axpy(&y, dt, &k3));
        y = std::array::from_fn(|i| {
            y[i] + (k1[i] + k2[i] * two + k3[i] * two + k4[i]) * (dt * sixth)
        });
    }
    StateVector::normalized(y, Basis::Positional)
}

/// Closed-form populations at full resonance for `ψ(0) = |RL⟩`.
///
/// With `β± = √(J² + 16Δ±²)`, `Ω± = β±/4` and `s± = sin(Ω±t/ħ)`, `c± = cos(Ω±t/ħ)`:
///
/// ```text
/// P_RL = ¼[(J/β₊ s₊ + J/β₋ s₋)² + (c₊ + c₋)²]
/// P_LR = ¼[(J/β₊ s₊ − J/β₋ s₋)² + (c₊ − c₋)²]
/// P_LL = 4[Δ₊/β₊ s₊ + Δ₋/β₋ s₋]²
/// P_RR = 4[Δ₊/β₊ s₊ − Δ₋/β₋ s₋]²
/// ```
pub fn analytic_populations<T: Real>(p: &SystemParams<T>, t: T) -> Result<Populations<T>> {
    if p.eps1().abs() > T::ENERGY_ZERO_TOL || p.eps2().abs() > T::ENERGY_ZERO_TOL {
        return Err(Error::NotResonant {
            eps1: p.eps1().to_f64_lossy(),
            eps2: p.eps2().to_f64_lossy(),
        });
    }
    check_time(t)?;
    let units = UnitSystem::<T>::standard();
    let j = p.j();
    let (dp, dm) = (p.delta_plus(), p.delta_minus());
    let beta = |d: T| (j * j + T::lit(16.0) * d * d).sqrt();
    let (bp, bm) = (beta(dp), beta(dm));
    let four = T::lit(4.0);
    let (ap, am) = (units.phase(bp / four, t), units.phase(bm / four, t));
    let (sp, cp, sm, cm) = (ap.sin(), ap.cos(), am.sin(), am.cos());

    let quarter = T::lit(0.25);
    let sq = |x: T| x * x;
    Ok(Populations {
        rl: quarter * (sq(j / bp * sp + j / bm * sm) + sq(cp + cm)),
        lr: quarter * (sq(j / bp * sp - j / bm * sm) + sq(cp - cm)),
        ll: four * sq(dp / bp * sp + dm / bm * sm),
        rr: four * sq(dp / bp * sp - dm / bm * sm),
    })
}

/// Coherent oscillation between a positional product state and a Bell state.
///
/// With `Δ₁ = Δ₂ = ratio·J` and zero detuning, `|RL⟩` reaches a Bell state at
/// `t_e = nπħ/Ω₊ = mπħ/(2Ω₋)`, where `Ω₊ = √(J²+16Δ²)/4` and `Ω₋ = J/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellCondition<T: Real = f64> {
    pub n: u32,
    /// Odd, `m < 2n`.
    pub m: u32,
    /// `Δ₁/J = ¼√(4n²/m² − 1)`
    pub ratio: T,
    pub j: T,
    /// `Δ₁ = Δ₂` in µeV.
    pub delta: T,
    /// µeV
    pub omega_plus: T,
    /// µeV
    pub omega_minus: T,
    /// ns
    pub t_e: T,
}

impl<T: Real> BellCondition<T> {
    pub fn params(&self) -> SystemParams<T> {
        SystemParams::resonant(self.delta, self.delta, self.j).expect("j validated")
    }

    /// `nπħ/Ω₊`
    pub fn time_from_plus(&self) -> T {
        T::from_u32(self.n).unwrap() * T::PI() * UnitSystem::<T>::standard().hbar()
            / self.omega_plus
    }

    /// `mπħ/(2Ω₋)`
    pub fn time_from_minus(&self) -> T {
        T::from_u32(self.m).unwrap() * T::PI() * UnitSystem::<T>::standard().hbar()
            / (T::lit(2.0) * self.omega_minus)
    }
}

pub fn bell_condition<T: Real>(n: u32, m: u32, j: T) -> Result<BellCondition<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if m.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("m must be odd, got {m}")));
    }
    if !(j.is_finite() && j > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "Coulomb coupling must be positive, got {j}"
        )));
    }
    if m >= 2 * n {
        return Err(Error::NoRealSolution { n, m });
    }
    let (nf, mf) = (T::from_u32(n).unwrap(), T::from_u32(m).unwrap());
    let four = T::lit(4.0);
    let ratio = (four * nf * nf / (mf * mf) - T::one()).sqrt() / four;
    let delta = ratio * j;
    let omega_plus = (j * j + T::lit(16.0) * delta * delta).sqrt() / four;
    let omega_minus = j / four;
    let t_e = nf * T::PI() * UnitSystem::<T>::standard().hbar() / omega_plus;
    Ok(BellCondition {
        n,
        m,
        ratio,
        j,
        delta,
        omega_plus,
        omega_minus,
        t_e,
    })
}

/// Times in `(0, t_max]` at which an initial `|RL⟩` or `|LR⟩` (resp. `|LL⟩`,
/// `|RR⟩`) is a Bell state: the candidates `nπħ/Ω₊` where additionally
/// `|cos(Ω₋t/ħ)| < 1e-9`. Requires full resonance and `Δ₁ = Δ₂`.
pub fn bell_times<T: Real>(p: &SystemParams<T>, t_max: T) -> Result<Vec<T>> {
    if p.eps1().abs() > T::ENERGY_ZERO_TOL || p.eps2().abs() > T::ENERGY_ZERO_TOL {
        return Err(Error::NotResonant {
            eps1: p.eps1().to_f64_lossy(),
            eps2: p.eps2().to_f64_lossy(),
        });
    }
    if p.delta_minus().abs() > T::ENERGY_ZERO_TOL {
        return Err(Error::InvalidParameter(
            "Bell times need equal tunneling rates".into(),
        ));
    }
    let units = UnitSystem::<T>::standard();
    let four = T::lit(4.0);
    let omega_plus = (p.j() * p.j() + T::lit(16.0) * p.delta_plus() * p.delta_plus()).sqrt() / four;
    let omega_minus = p.j() / four;
    let period = T::PI() * units.hbar() / omega_plus;
    let tol = T::lit(1e-9).max(T::DEGENERACY_TOL);
    let mut out = Vec::new();
    let mut n = 1u32;
    loop {
        let t = T::from_u32(n).unwrap() * period;
        if t > t_max {
            break;
        }
        if units.phase(omega_minus, t).cos().abs() < tol {
            out.push(t);
        }
        n += 1;
    }
    Ok(out)
}

/// Sampled evolution on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T: Real = f64> {
    pub times: Vec<T>,
    pub states: Vec<StateVector<T>>,
    pub populations: Vec<Populations<T>>,
    pub concurrence: Vec<T>,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// `points` equally spaced samples of `[0, t_max]`, endpoints included.
pub fn time_grid<T: Real>(t_max: T, points: usize) -> Result<Vec<T>> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!(
            "time grid needs at least 2 points, got {points}"
        )));
    }
    if !(t_max.is_finite() && t_max > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    let last = T::from_usize(points - 1).unwrap();
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                t_max
            } else {
                t_max * T::from_usize(i).unwrap() / last
            }
        })
        .collect())
}

pub fn trajectory<T: Real>(
    p: &SystemParams<T>,
    psi0: &StateVector<T>,
    t_max: T,
    points: usize,
) -> Result<Trajectory<T>> {
    let times = time_grid(t_max, points)?;
    let prop = Propagator::new(p)?;
    let states = times
        .par_iter()
        .map(|&t| prop.evolve(psi0, t))
        .collect::<Result<Vec<_>>>()?;
    let populations = states.iter().map(Populations::of).collect();
    let concurrence = states
        .iter()
        .map(|s| concurrence_amplitudes(s.amplitudes()))
        .collect();
    Ok(Trajectory {
        times,
        states,
        populations,
        concurrence,
    })
}

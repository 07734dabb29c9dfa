//! Invariant suite behind the `verify` command. Every check draws from its
//! own seeded generator, so results are reproducible and independent of the
//! order in which checks run.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use qmol::{
    analytic_populations, bell_block_form, build_bell, build_positional, concurrence,
    concurrence_pure, dynamics_detuning_map, eigen_concurrence_map, eigensystem,
    hermitian_eigensolve, propagate, propagate_rk4, resonant_solution, Axis, Basis, BellState,
    Complex, DensityMatrix, DetuningLine, Hamiltonian, InitialState, Matrix4, Params, Populations,
    PositionalState, Propagator, Result, State, C64,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Largest deviation seen.
    pub worst: f64,
    pub tol: f64,
    pub samples: usize,
}

impl Check {
    fn new(name: &'static str, worst: f64, tol: f64, samples: usize) -> Self {
        Self {
            name,
            passed: worst <= tol,
            worst,
            tol,
            samples,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<46} worst {:.3e} (tol {:.0e}, {} samples)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.tol,
            self.samples
        )
    }
}

/// Sample sizes for the randomized checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Suite {
    pub seed: u64,
    pub states: usize,
    pub matrices: usize,
    pub params: usize,
    /// Points per axis of the sweep-symmetry grids.
    pub grid: usize,
}

impl Default for Suite {
    fn default() -> Self {
        Self {
            seed: 0x0dd_d07,
            states: 10_000,
            matrices: 1000,
            params: 200,
            grid: 41,
        }
    }
}

type CheckFn = fn(&mut ChaCha8Rng, &Suite) -> Result<Check>;

const CHECKS: &[CheckFn] = &[
    concurrence_oracle,
    local_unitary_invariance,
    concurrence_extremes,
    eigensolver_round_trip,
    basis_consistency,
    hamiltonian_covariance,
    resonant_spectrum,
    propagator_composition,
    energy_conservation,
    analytic_dynamics,
    rk4_agreement,
    detuning_map_symmetry,
    eigen_map_symmetry,
    sweep_determinism,
];

pub fn run(suite: &Suite) -> Result<Vec<Check>> {
    CHECKS
        .iter()
        .enumerate()
        .map(|(i, check)| {
            check(
                &mut ChaCha8Rng::seed_from_u64(suite.seed.wrapping_add(i as u64)),
                suite,
            )
        })
        .collect()
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed pure state.
pub fn random_state(rng: &mut ChaCha8Rng) -> State {
    State::normalized(std::array::from_fn(|_| gaussian(rng)), Basis::Positional)
        .expect("nonzero Gaussian vector")
}

pub fn random_params(rng: &mut ChaCha8Rng) -> Params {
    Params::new(
        rng.random_range(-30.0..30.0),
        rng.random_range(-30.0..30.0),
        rng.random_range(-20.0..20.0),
        rng.random_range(-20.0..20.0),
        rng.random_range(1.0..50.0),
    )
    .expect("finite, J > 0")
}

fn random_local_unitary(rng: &mut ChaCha8Rng) -> Matrix4 {
    let mut su2 = || {
        let (a, b) = (gaussian(rng), gaussian(rng));
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / n, b / n);
        [[a, -b.conj()], [b, a.conj()]]
    };
    let (u, v) = (su2(), su2());
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = u[i / 2][j / 2] * v[i % 2][j % 2];
        }
    }
    m
}

fn max_amp_diff(a: &State, b: &State) -> f64 {
    (0..4)
        .map(|i| (a.amplitude(i) - b.amplitude(i)).norm())
        .fold(0.0, f64::max)
}

fn concurrence_oracle(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for _ in 0..s.states {
        let psi = random_state(rng);
        let w = concurrence(&DensityMatrix::from_pure(&psi))?.value;
        worst = worst.max((concurrence_pure(&psi)? - w).abs());
    }
    Ok(Check::new(
        "concurrence: pure formula vs Wootters",
        worst,
        1e-10,
        s.states,
    ))
}

fn local_unitary_invariance(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let n = s.states / 10;
    let mut worst = 0f64;
    for _ in 0..n {
        let u = random_local_unitary(rng);
        let psi = random_state(rng);
        let rotated = State::normalized(u.matvec(psi.amplitudes()), Basis::Positional)?;
        worst = worst.max((concurrence_pure(&psi)? - concurrence_pure(&rotated)?).abs());

        let phi = random_state(rng);
        let w = rng.random_range(0.0..1.0);
        let rho = DensityMatrix::from_pure(&psi)
            .matrix()
            .scale(Complex::new(w, 0.0))
            + DensityMatrix::from_pure(&phi)
                .matrix()
                .scale(Complex::new(1.0 - w, 0.0));
        let c1 = concurrence(&DensityMatrix::new(rho)?)?.value;
        let c2 = concurrence(&DensityMatrix::new(u * rho * u.dagger())?)?.value;
        worst = worst.max((c1 - c2).abs());
    }
    Ok(Check::new(
        "concurrence: local-unitary invariance",
        worst,
        1e-10,
        2 * n,
    ))
}

fn concurrence_extremes(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for b in BellState::ALL {
        let psi = State::bell(b);
        worst = worst.max((concurrence(&DensityMatrix::from_pure(&psi))?.value - 1.0).abs());
    }
    for _ in 0..s.states / 10 {
        let mut qubit = || {
            let (a, b) = (gaussian(rng), gaussian(rng));
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            [a / n, b / n]
        };
        let (x, y) = (qubit(), qubit());
        let product = State::new(
            [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]],
            Basis::Positional,
        )?;
        worst = worst.max(concurrence(&DensityMatrix::from_pure(&product))?.value);
        let c = concurrence(&DensityMatrix::from_pure(&random_state(rng)))?.value;
        worst = worst.max(-c).max(c - 1.0);
    }
    Ok(Check::new(
        "concurrence: Bell = 1, product = 0, range [0,1]",
        worst,
        1e-12,
        4 + s.states / 5,
    ))
}

fn eigensolver_round_trip(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for _ in 0..s.matrices {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            m[(i, i)] = Complex::new(rng.random_range(-30.0..30.0), 0.0);
            for j in (i + 1)..4 {
                let z = gaussian(rng) * 10.0;
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        let h = Hamiltonian::new(m, Basis::Positional)?;
        let es = hermitian_eigensolve(&h)?;
        let v = es.vectors();
        let scale = m.frobenius_norm();
        worst = worst
            .max(es.reconstruct().max_abs_diff(&m) / scale)
            .max((v.dagger() * v).max_abs_diff(&Matrix4::identity()))
            .max((es.energies().iter().sum::<f64>() - m.trace().re).abs() / scale);
        if hermitian_eigensolve(&h)? != es {
            worst = f64::INFINITY;
        }
    }
    Ok(Check::new(
        "eigensolver: V·diag·V† = H, V†V = 1, stable",
        worst,
        1e-12,
        s.matrices,
    ))
}

fn basis_consistency(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for _ in 0..s.params {
        let p = random_params(rng);
        let hb = build_bell(&p);
        worst = worst.max(hb.matrix().max_abs_diff(bell_block_form(&p).matrix()));
        let ep = eigensystem(&p)?;
        let eb = hermitian_eigensolve(&hb)?;
        for k in 0..4 {
            worst = worst.max((ep.energy(k) - eb.energy(k)).abs());
        }
    }
    Ok(Check::new(
        "hamiltonian: positional vs Bell basis",
        worst,
        1e-12,
        s.params,
    ))
}

fn permute(h: &Matrix4, perm: [usize; 4]) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(perm[i], perm[j])] = h[(i, j)];
        }
    }
    m
}

fn hamiltonian_covariance(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for _ in 0..s.params {
        let p = random_params(rng);
        let h = *build_positional(&p).matrix();
        worst = worst
            .max(
                build_positional(&p.swapped())
                    .matrix()
                    .max_abs_diff(&permute(&h, [0, 2, 1, 3])),
            )
            .max(
                build_positional(&p.mirrored())
                    .matrix()
                    .max_abs_diff(&permute(&h, [3, 2, 1, 0])),
            );
    }
    Ok(Check::new(
        "hamiltonian: swap and L<->R covariance",
        worst,
        0.0,
        2 * s.params,
    ))
}

fn resonant_spectrum(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for _ in 0..s.params {
        let j = rng.random_range(1.0..50.0);
        let p = Params::resonant(
            rng.random_range(-20.0..20.0),
            rng.random_range(-20.0..20.0),
            j,
        )?;
        let mut closed = resonant_solution(&p)?.energies();
        closed.sort_by(f64::total_cmp);
        let es = eigensystem(&p)?;
        for k in 0..4 {
            worst = worst.max((es.energy(k) - closed[k]).abs());
        }
    }
    Ok(Check::new(
        "spectrum: closed form at full resonance",
        worst,
        1e-10,
        s.params,
    ))
}

fn propagator_composition(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for _ in 0..s.params {
        let p = random_params(rng);
        let psi = random_state(rng);
        let (t1, t2) = (rng.random_range(0.0..2.0), rng.random_range(0.0..2.0));
        let direct = propagate(&p, &psi, t1 + t2)?;
        let stepped = propagate(&p, &propagate(&p, &psi, t1)?, t2)?;
        worst = worst.max(max_amp_diff(&direct, &stepped));
    }
    Ok(Check::new(
        "dynamics: U(t1)U(t2) = U(t1+t2)",
        worst,
        1e-11,
        s.params,
    ))
}

fn energy_conservation(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    for _ in 0..s.params {
        let p = random_params(rng);
        let psi = random_state(rng);
        let h = build_positional(&p);
        let e0 = h.expectation(&psi);
        let prop = Propagator::new(&p)?;
        for k in 1..=10 {
            let st = prop.evolve(&psi, 0.3 * k as f64)?;
            worst = worst
                .max((h.expectation(&st) - e0).abs())
                .max((st.norm() - 1.0).abs());
        }
    }
    Ok(Check::new(
        "dynamics: norm and energy conservation",
        worst,
        1e-10,
        10 * s.params,
    ))
}

fn analytic_dynamics(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let rl = State::positional(PositionalState::RL);
    let mut worst = 0f64;
    for _ in 0..s.params / 4 {
        let p = Params::resonant(
            rng.random_range(0.0..25.0),
            rng.random_range(0.0..25.0),
            25.0,
        )?;
        let prop = Propagator::new(&p)?;
        for k in 0..=100 {
            let t = 0.03 * k as f64;
            let num = Populations::of(&prop.evolve(&rl, t)?).as_array();
            let ana = analytic_populations(&p, t)?.as_array();
            for i in 0..4 {
                worst = worst.max((num[i] - ana[i]).abs());
            }
        }
    }
    Ok(Check::new(
        "dynamics: analytic populations",
        worst,
        1e-9,
        101 * (s.params / 4),
    ))
}

fn rk4_agreement(rng: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let mut worst = 0f64;
    let n = (s.params / 20).max(1);
    for _ in 0..n {
        let p = random_params(rng);
        let psi = random_state(rng);
        worst = worst.max(max_amp_diff(
            &propagate(&p, &psi, 0.5)?,
            &propagate_rk4(&p, &psi, 0.5, 4000)?,
        ));
    }
    Ok(Check::new(
        "dynamics: RK4 vs spectral propagator",
        worst,
        1e-8,
        n,
    ))
}

fn detuning_maps(s: &Suite, init: PositionalState, line: DetuningLine) -> Result<qmol::Grid> {
    let j = 25.0;
    let d = j * 3f64.sqrt() / 4.0;
    let t = Axis::new("t_ns", 0.0, 1.0, s.grid, "ns")?;
    let e = Axis::new("eps1_ueV", -j, j, s.grid, "ueV")?;
    dynamics_detuning_map(
        &Params::resonant(d, d, j)?,
        &t,
        &e,
        InitialState::Positional(init),
        line,
    )
}

fn detuning_map_symmetry(_: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    use PositionalState::*;
    let n = s.grid;
    let diff = |a: &qmol::Grid, b: &qmol::Grid, mirror: bool| {
        let mut worst = 0f64;
        for iy in 0..n {
            let jy = if mirror { n - 1 - iy } else { iy };
            for ix in 0..n {
                worst = worst.max((a.value(ix, iy) - b.value(ix, jy)).abs());
            }
        }
        worst
    };
    let mut worst = 0f64;
    for line in [DetuningLine::Equal, DetuningLine::Opposite] {
        let (rl, lr) = (detuning_maps(s, RL, line)?, detuning_maps(s, LR, line)?);
        let (ll, rr) = (detuning_maps(s, LL, line)?, detuning_maps(s, RR, line)?);
        worst = worst.max(diff(&rl, &lr, true)).max(diff(&ll, &rr, true));
        // molecule exchange: RL <-> LR, and ε₂ = −ε₁ maps to its mirror
        worst = worst.max(diff(&rl, &lr, line == DetuningLine::Opposite));
    }
    Ok(Check::new(
        "sweep: detuning-map mirror and swap symmetry",
        worst,
        1e-9,
        6 * n * n,
    ))
}

fn eigen_map_symmetry(_: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let (j, n) = (25.0, s.grid);
    let ax = Axis::new("eps", -j, j, n, "ueV")?;
    let mut worst = 0f64;
    for d in [j / 16.0, j / 4.0] {
        let base = Params::resonant(d, d, j)?;
        for state in 0..4 {
            let g = eigen_concurrence_map(&base, &ax, &ax, state)?;
            for iy in 0..n {
                for ix in 0..n {
                    if !g.degenerate[iy][ix] {
                        worst =
                            worst.max((g.value(ix, iy) - g.value(n - 1 - ix, n - 1 - iy)).abs());
                    }
                }
            }
        }
    }
    Ok(Check::new(
        "sweep: eigen-map point symmetry",
        worst,
        1e-9,
        8 * n * n,
    ))
}

fn sweep_determinism(_: &mut ChaCha8Rng, s: &Suite) -> Result<Check> {
    let ax = Axis::new("eps", -25.0, 25.0, s.grid, "ueV")?;
    let base = Params::resonant(25.0 / 4.0, 25.0 / 8.0, 25.0)?;
    let same = eigen_concurrence_map(&base, &ax, &ax, 0)?
        == eigen_concurrence_map(&base, &ax, &ax, 0)?
        && detuning_maps(s, PositionalState::RL, DetuningLine::Opposite)?
            == detuning_maps(s, PositionalState::RL, DetuningLine::Opposite)?;
    Ok(Check::new(
        "sweep: bit-identical reruns",
        if same { 0.0 } else { 1.0 },
        0.0,
        2,
    ))
}

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use qmol::{
    bell_basis_matrix, bell_condition, build_bell, build_positional, concurrence, concurrence_pure,
    eigensystem, hermitian_eigensolve, propagate, resonant_solution, Basis, BellState, Complex,
    DensityMatrix, HermitianMatrix4, Matrix4, Params, PositionalState, Propagator, State, C64,
};

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_state(rng: &mut ChaCha8Rng) -> State {
    State::normalized(std::array::from_fn(|_| gaussian(rng)), Basis::Positional).unwrap()
}

fn random_hermitian(rng: &mut ChaCha8Rng) -> HermitianMatrix4 {
    let mut m = Matrix4::<f64>::zeros();
    for i in 0..4 {
        m[(i, i)] = Complex::new(rng.random_range(-30.0..30.0), 0.0);
        for j in (i + 1)..4 {
            let z = gaussian(rng) * 10.0;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix4::new(m, Basis::Positional).unwrap()
}

fn random_params(rng: &mut ChaCha8Rng) -> Params {
    Params::new(
        rng.random_range(-30.0..30.0),
        rng.random_range(-30.0..30.0),
        rng.random_range(-20.0..20.0),
        rng.random_range(-20.0..20.0),
        rng.random_range(1.0..50.0),
    )
    .unwrap()
}

fn random_su2(rng: &mut ChaCha8Rng) -> [[C64; 2]; 2] {
    let (a, b) = (gaussian(rng), gaussian(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    [[a, -b.conj()], [b, a.conj()]]
}

fn kron(u: &[[C64; 2]; 2], v: &[[C64; 2]; 2]) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = u[i / 2][j / 2] * v[i % 2][j % 2];
        }
    }
    m
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

#[test]
fn eigensolver_contract_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let h = random_hermitian(&mut rng);
        let es = hermitian_eigensolve(&h).unwrap();
        let scale = h.matrix().frobenius_norm();
        assert!(es.energies().windows(2).all(|w| w[0] <= w[1]));
        assert!(es.reconstruct().max_abs_diff(h.matrix()) < 1e-10);
        let v = es.vectors();
        assert!((v.dagger() * v).max_abs_diff(&Matrix4::identity()) < 1e-11);
        for k in 0..4 {
            let hv = h.apply(es.state(k));
            let resid = (0..4)
                .map(|i| (hv[i] - es.state(k).amplitude(i) * es.energy(k)).norm())
                .fold(0.0, f64::max);
            assert!(resid < 1e-10 * scale);
        }
        let sum: f64 = es.energies().iter().sum();
        assert!((sum - h.matrix().trace().re).abs() < 1e-10);
        assert_eq!(hermitian_eigensolve(&h).unwrap(), es);
    }
}

#[test]
fn positional_and_bell_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b = bell_basis_matrix::<f64>();
    for _ in 0..1000 {
        let p = random_params(&mut rng);
        let hp = build_positional(&p);
        let hb = build_bell(&p);
        assert!((b * *hp.matrix() * b.dagger()).max_abs_diff(hb.matrix()) < 1e-12);
        assert!(qmol::bell_block_form(&p).matrix().max_abs_diff(hb.matrix()) < 1e-12);
        let ep = eigensystem(&p).unwrap();
        let eb = hermitian_eigensolve(&hb).unwrap();
        for k in 0..4 {
            assert!((ep.energy(k) - eb.energy(k)).abs() < 1e-11);
        }
    }
}

#[test]
fn molecule_swap_and_mirror_are_exact_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..500 {
        let p = random_params(&mut rng);
        let h = *build_positional(&p).matrix();
        assert_eq!(
            *build_positional(&p.swapped()).matrix(),
            permute(&h, [0, 2, 1, 3])
        );
        assert_eq!(
            *build_positional(&p.mirrored()).matrix(),
            permute(&h, [3, 2, 1, 0])
        );
    }
}

#[test]
fn closed_form_spectrum_at_resonance() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let j = rng.random_range(1.0..50.0);
        let p = Params::resonant(
            rng.random_range(-20.0..20.0),
            rng.random_range(-20.0..20.0),
            j,
        )
        .unwrap();
        let mut closed = resonant_solution(&p).unwrap().energies();
        closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let numeric = eigensystem(&p).unwrap();
        for (e, c) in numeric.energies().iter().zip(closed) {
            assert!((e - c).abs() < 1e-10);
        }
    }
}

#[test]
fn bell_eigenstates_on_resonance_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let psi_minus = State::bell(BellState::PsiMinus);
    let phi_minus = State::bell(BellState::PhiMinus);
    for _ in 0..200 {
        let j = rng.random_range(5.0..50.0);
        let d = rng.random_range(0.0..20.0);
        let e = rng.random_range(-40.0..40.0);
        let has = |p: &Params, target: &State, energy: f64| {
            let es = eigensystem(p).unwrap();
            (0..4).any(|k| {
                es.state(k).fidelity(target) >= 1.0 - 1e-10 && (es.energy(k) - energy).abs() < 1e-10
            })
        };
        let equal = Params::new(e, e, d, d, j).unwrap();
        assert!(has(&equal, &psi_minus, -j / 4.0));
        let opposite = Params::new(e, -e, d, d, j).unwrap();
        assert!(has(&opposite, &phi_minus, j / 4.0));
    }
}

#[test]
fn concurrence_oracle_and_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..2000 {
        let psi = random_state(&mut rng);
        let pure = concurrence_pure(&psi).unwrap();
        let w = concurrence(&DensityMatrix::from_pure(&psi)).unwrap();
        assert!((pure - w.value).abs() < 1e-10, "{pure} vs {}", w.value);
        assert!((0.0..=1.0 + 1e-12).contains(&w.value));
    }
}

#[test]
fn concurrence_local_unitary_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..500 {
        let psi = random_state(&mut rng);
        let u = kron(&random_su2(&mut rng), &random_su2(&mut rng));
        let rotated = State::normalized(u.matvec(psi.amplitudes()), Basis::Positional).unwrap();
        let before = concurrence_pure(&psi).unwrap();
        assert!((before - concurrence_pure(&rotated).unwrap()).abs() < 1e-10);

        // mixed: ρ = p|ψ⟩⟨ψ| + (1-p)|φ⟩⟨φ|
        let phi = random_state(&mut rng);
        let w = rng.random_range(0.0..1.0);
        let rho = DensityMatrix::from_pure(&psi)
            .matrix()
            .scale(Complex::new(w, 0.0))
            + DensityMatrix::from_pure(&phi)
                .matrix()
                .scale(Complex::new(1.0 - w, 0.0));
        let rho_u = u * rho * u.dagger();
        let c1 = concurrence(&DensityMatrix::new(rho).unwrap())
            .unwrap()
            .value;
        let c2 = concurrence(&DensityMatrix::new(rho_u).unwrap())
            .unwrap()
            .value;
        assert!((c1 - c2).abs() < 1e-10);
    }
}

#[test]
fn bell_and_product_extremes() {
    for b in BellState::ALL {
        let s = State::bell(b);
        assert!((concurrence_pure(&s).unwrap() - 1.0).abs() < 1e-15);
        assert!((concurrence(&DensityMatrix::from_pure(&s)).unwrap().value - 1.0).abs() < 1e-12);
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let singles: [[f64; 2]; 4] = [[1.0, 0.0], [0.0, 1.0], [h, h], [h, -h]];
    for a in &singles {
        for b in &singles {
            let amps =
                [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]].map(|x| Complex::new(x, 0.0));
            let s = State::new(amps, Basis::Positional).unwrap();
            assert!(concurrence_pure(&s).unwrap() < 1e-15);
            assert!(concurrence(&DensityMatrix::from_pure(&s)).unwrap().value < 1e-12);
        }
    }
}

#[test]
fn propagation_composes_and_conserves_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let psi = random_state(&mut rng);
        let (t1, t2) = (rng.random_range(0.0..2.0), rng.random_range(0.0..2.0));
        let direct = propagate(&p, &psi, t1 + t2).unwrap();
        let stepped = propagate(&p, &propagate(&p, &psi, t1).unwrap(), t2).unwrap();
        let diff = (0..4)
            .map(|i| (direct.amplitude(i) - stepped.amplitude(i)).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-11, "{diff}");

        let h = build_positional(&p);
        let e0 = h.expectation(&psi);
        let prop = Propagator::new(&p).unwrap();
        for k in 1..=20 {
            let s = prop.evolve(&psi, 0.15 * k as f64).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
            assert!((h.expectation(&s) - e0).abs() < 1e-10);
        }
    }
}

#[test]
fn product_states_pair_with_bell_families_at_bell_times() {
    for (n, m) in [(1, 1), (2, 1), (2, 3), (3, 5)] {
        let c = bell_condition(n, m, 25.0).unwrap();
        let p = c.params();
        for init in PositionalState::ALL {
            let psi = propagate(&p, &State::positional(init), c.t_e).unwrap();
            let [ll, lr, rl, rr] = psi.probabilities();
            match init {
                PositionalState::LR | PositionalState::RL => assert!(ll + rr < 1e-10),
                PositionalState::LL | PositionalState::RR => assert!(lr + rl < 1e-10),
            }
            assert!(concurrence_pure(&psi).unwrap() > 1.0 - 1e-9);
        }
    }
}

proptest! {
    #[test]
    fn density_of_pure_state_is_valid(re in proptest::array::uniform4(-1.0f64..1.0), im in proptest::array::uniform4(-1.0f64..1.0)) {
        let amps: [C64; 4] = std::array::from_fn(|k| Complex::new(re[k], im[k]));
        prop_assume!(amps.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3);
        let psi = State::normalized(amps, Basis::Positional).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        prop_assert!(DensityMatrix::new(*rho.matrix()).is_ok());
        let back = psi.to_bell().to_positional();
        prop_assert!(back.fidelity(&psi) > 1.0 - 1e-14);
    }

    #[test]
    fn resonant_states_are_orthonormal(d1 in -30.0f64..30.0, d2 in -30.0f64..30.0, j in 0.5f64..60.0) {
        let sol = resonant_solution(&Params::resonant(d1, d2, j).unwrap()).unwrap();
        let states = sol.states();
        for a in 0..4 {
            for b in 0..4 {
                let o = states[a].overlap(&states[b]).norm();
                let expect = f64::from(u8::from(a == b));
                prop_assert!((o - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn eigensolve_bitwise_stable(e1 in -25.0f64..25.0, e2 in -25.0f64..25.0, d1 in 0.0f64..20.0, d2 in 0.0f64..20.0) {
        let p = Params::new(e1, e2, d1, d2, 25.0).unwrap();
        prop_assert_eq!(eigensystem(&p).unwrap(), eigensystem(&p).unwrap());
    }
}

//! Fixed-size complex linear algebra and the Hermitian Jacobi eigensolver.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{Basis, StateVector};

/// Upper bound on Jacobi sweeps. Dimension 8 converges in well under 15.
const MAX_SWEEPS: usize = 64;

/// Dense complex `N×N` matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMatrix<T, const N: usize>(pub [[Complex<T>; N]; N]);

pub type Matrix4<T = f64> = CMatrix<T, 4>;

impl<T: Real, const N: usize> CMatrix<T, N> {
    pub fn zeros() -> Self {
        Self([[Complex::zero(); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = Complex::one();
        }
        m
    }

    pub fn from_real(rows: [[T; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = Complex::new(rows[i][j], T::zero());
            }
        }
        m
    }

    pub fn diagonal(d: [T; N]) -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = Complex::new(d[k], T::zero());
        }
        m
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Complex<T>; N], b: &[Complex<T>; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = a[i] * b[j].conj();
            }
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[j][i] = self.0[i][j].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[j][i] = self.0[i][j];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] = m.0[i][j] + a * rhs.0[k][j];
                }
            }
        }
        m
    }

    pub fn matvec(&self, v: &[Complex<T>; N]) -> [Complex<T>; N] {
        let mut out = [Complex::zero(); N];
        for i in 0..N {
            out[i] = (0..N).fold(Complex::zero(), |acc, j| acc + self.0[i][j] * v[j]);
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = *z * s);
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(Complex::zero(), |acc, k| acc + self.0[k][k])
    }

    pub fn frobenius_norm(&self) -> T {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    /// `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermitian_defect(&self) -> T {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn column(&self, j: usize) -> [Complex<T>; N] {
        std::array::from_fn(|i| self.0[i][j])
    }
}

impl<T, const N: usize> Index<(usize, usize)> for CMatrix<T, N> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.0[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for CMatrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.0[i][j]
    }
}

impl<T: Real, const N: usize> Add for CMatrix<T, N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real, const N: usize> Sub for CMatrix<T, N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real, const N: usize> Mul for CMatrix<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.matmul(&rhs)
    }
}

pub fn inner<T: Real, const N: usize>(a: &[Complex<T>; N], b: &[Complex<T>; N]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y)
}

pub fn norm<T: Real, const N: usize>(v: &[Complex<T>; N]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Returns the (unsorted) eigenvalues and the unitary whose columns are the
/// matching eigenvectors. Only the Hermitian part of `a` is meaningful; the
/// caller is responsible for checking symmetry.
pub fn jacobi_eigh<T: Real, const N: usize>(a: &CMatrix<T, N>) -> ([T; N], CMatrix<T, N>) {
    let mut a = *a;
    let mut v = CMatrix::<T, N>::identity();
    let scale = a.frobenius_norm();
    let two = T::lit(2.0);

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..N {
            for q in 0..N {
                if p != q {
                    off = off + a.0[p][q].norm_sqr();
                }
            }
        }
        if off.sqrt() <= T::JACOBI_TOL * scale {
            break;
        }

        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a.0[p][q];
                let mag = apq.norm();
                if mag == T::zero() {
                    continue;
                }
                // rephase q so the pivot is real, then a real Givens rotation
                let u = apq / mag;
                let theta = (a.0[q][q].re - a.0[p][p].re) / (two * mag);
                let root = T::one().hypot(theta);
                let t = if theta >= T::zero() {
                    T::one() / (theta + root)
                } else {
                    -T::one() / (-theta + root)
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let cu = u.conj() * c;
                let su = u.conj() * s;

                // A <- A·G, with G[:,p] = (c, -s·ū), G[:,q] = (s, c·ū)
                for k in 0..N {
                    let akp = a.0[k][p];
                    let akq = a.0[k][q];
                    a.0[k][p] = akp * c - akq * su;
                    a.0[k][q] = akp * s + akq * cu;
                }
                // A <- G†·A
                for k in 0..N {
                    let apk = a.0[p][k];
                    let aqk = a.0[q][k];
                    a.0[p][k] = apk * c - aqk * su.conj();
                    a.0[q][k] = apk * s + aqk * cu.conj();
                }
                a.0[p][q] = Complex::zero();
                a.0[q][p] = Complex::zero();
                a.0[p][p].im = T::zero();
                a.0[q][q].im = T::zero();

                for k in 0..N {
                    let vkp = v.0[k][p];
                    let vkq = v.0[k][q];
                    v.0[k][p] = vkp * c - vkq * su;
                    v.0[k][q] = vkp * s + vkq * cu;
                }
            }
        }
    }

    (std::array::from_fn(|k| a.0[k][k].re), v)
}

/// Multiplies `v` by the unit phase that makes its first component with
/// modulus above `T::PHASE_TOL` real and positive.
pub fn fix_phase<T: Real, const N: usize>(v: &mut [Complex<T>; N]) {
    if let Some(k) = v.iter().position(|z| z.norm() > T::PHASE_TOL) {
        let r = v[k].norm();
        let ph = v[k].conj() / r;
        v.iter_mut().for_each(|z| *z = *z * ph);
        v[k] = Complex::new(r, T::zero());
    }
}

/// Hermitian 4×4 operator, energies in µeV.
///
/// The basis tag records which coordinates the entries are written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix4<T: Real = f64> {
    m: Matrix4<T>,
    basis: Basis,
}

impl<T: Real> HermitianMatrix4<T> {
    /// Validates symmetry within `T::HERMITIAN_TOL · max(1, max|m_ij|)` and
    /// stores the exactly symmetrized matrix.
    pub fn new(m: Matrix4<T>, basis: Basis) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("Hermitian matrix"));
        }
        let defect = m.hermitian_defect();
        if defect > T::HERMITIAN_TOL * T::one().max(m.max_abs()) {
            return Err(Error::NonHermitianInput {
                asymmetry: defect.to_f64_lossy(),
            });
        }
        let half = T::lit(0.5);
        let mut h = m;
        for i in 0..4 {
            h.0[i][i] = Complex::new(m.0[i][i].re, T::zero());
            for j in (i + 1)..4 {
                let z = (m.0[i][j] + m.0[j][i].conj()) * half;
                h.0[i][j] = z;
                h.0[j][i] = z.conj();
            }
        }
        Ok(Self { m: h, basis })
    }

    pub fn from_real_symmetric(rows: [[T; 4]; 4], basis: Basis) -> Result<Self> {
        Self::new(Matrix4::from_real(rows), basis)
    }

    pub fn identity(basis: Basis) -> Self {
        Self {
            m: Matrix4::identity(),
            basis,
        }
    }

    pub fn matrix(&self) -> &Matrix4<T> {
        &self.m
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.m.0[i][j]
    }

    /// `⟨ψ|m|ψ⟩`; the state is converted into the matrix basis first.
    pub fn expectation(&self, psi: &StateVector<T>) -> T {
        let v = psi.in_basis(self.basis);
        inner(v.amplitudes(), &self.m.matvec(v.amplitudes())).re
    }

    pub fn apply(&self, psi: &StateVector<T>) -> [Complex<T>; 4] {
        self.m.matvec(psi.in_basis(self.basis).amplitudes())
    }
}

/// Spectrum of a Hermitian 4×4 operator, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<T: Real = f64> {
    energies: [T; 4],
    states: [StateVector<T>; 4],
    degenerate_pairs: [bool; 3],
}

impl<T: Real> EigenSystem<T> {
    pub fn energies(&self) -> &[T; 4] {
        &self.energies
    }

    pub fn energy(&self, k: usize) -> T {
        self.energies[k]
    }

    pub fn states(&self) -> &[StateVector<T>; 4] {
        &self.states
    }

    pub fn state(&self, k: usize) -> &StateVector<T> {
        &self.states[k]
    }

    /// `degenerate_pairs()[k]` is set when levels `k` and `k+1` coincide.
    pub fn degenerate_pairs(&self) -> [bool; 3] {
        self.degenerate_pairs
    }

    /// Whether level `k` shares its energy with a neighbour.
    pub fn is_degenerate(&self, k: usize) -> bool {
        (k > 0 && self.degenerate_pairs[k - 1]) || (k < 3 && self.degenerate_pairs[k])
    }

    /// Eigenvectors as matrix columns, in the basis of the solved matrix.
    pub fn vectors(&self) -> Matrix4<T> {
        let mut v = Matrix4::zeros();
        for (k, s) in self.states.iter().enumerate() {
            for i in 0..4 {
                v.0[i][k] = s.amplitudes()[i];
            }
        }
        v
    }

    /// `V·diag(E)·V†`.
    pub fn reconstruct(&self) -> Matrix4<T> {
        let v = self.vectors();
        v * Matrix4::diagonal(self.energies) * v.dagger()
    }
}

/// Diagonalizes `m`: ascending energies, orthonormal eigenvectors with a
/// deterministic phase, and degeneracy flags for neighbouring levels closer
/// than `T::DEGENERACY_TOL · max(1, ‖m‖_F)`.
pub fn hermitian_eigensolve<T: Real>(m: &HermitianMatrix4<T>) -> Result<EigenSystem<T>> {
    let mat = m.matrix();
    let defect = mat.hermitian_defect();
    if defect > T::HERMITIAN_TOL * T::one().max(mat.max_abs()) {
        return Err(Error::NonHermitianInput {
            asymmetry: defect.to_f64_lossy(),
        });
    }
    let (vals, vecs) = jacobi_eigh(mat);
    if vals.iter().any(|e| !e.is_finite()) {
        return Err(Error::NonFinite("eigenvalues"));
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).expect("finite eigenvalues"));

    let energies = order.map(|k| vals[k]);
    let states = order.map(|k| {
        let mut col = vecs.column(k);
        fix_phase(&mut col);
        StateVector::from_orthonormal_column(col, m.basis())
    });

    let gap_tol = T::DEGENERACY_TOL * T::one().max(mat.frobenius_norm());
    let degenerate_pairs = std::array::from_fn(|k| (energies[k + 1] - energies[k]).abs() < gap_tol);

    Ok(EigenSystem {
        energies,
        states,
        degenerate_pairs,
    })
}

//! Dense complex linear algebra for small spin systems.
//!
//! Everything here works on `dim × dim` matrices stored row-major. Sizes in
//! practice are 2, 4 and 8, so the routines favour exactness over speed:
//! the matrix exponential of a Hermitian generator goes through a cyclic
//! Jacobi eigendecomposition instead of a series or scaling-and-squaring.
//!
//! Qubit ordering: qubit 1 is the most significant tensor factor, so the
//! basis index of `|q1 q2 q3>` is `4·q1 + 2·q2 + q3`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute max-norm tolerance used for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics unless `entries.len()`
    /// is a positive perfect square.
    pub fn from_rows(entries: Vec<Complex64>) -> Self {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        assert!(
            dim >= 1 && dim * dim == entries.len(),
            "entry count {} is not a positive square",
            entries.len()
        );
        Self { dim, data: entries }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k, j * db + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() < tol
    }

    /// `max |U†U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        (&self.dagger() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() < tol
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Frobenius inner product `Tr(self† · other)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self · other · self†`.
    pub fn conjugate(&self, other: &Self) -> Self {
        &(self * other) * &self.dagger()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on an empty or zero vector.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// Qubit state at Bloch-sphere angles (polar `theta`, azimuth `phi`).
    pub fn bloch(theta: f64, phi: f64) -> Self {
        Self {
            amplitudes: vec![
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|self><self|`.
    pub fn density(&self) -> ComplexMatrix {
        let a = &self.amplitudes;
        ComplexMatrix::from_fn(a.len(), |r, c| a[r] * a[c].conj())
    }

    /// `<self| m |self>`.
    pub fn expectation(&self, m: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.dim(), m.dim(), "dimension mismatch");
        let a = &self.amplitudes;
        let mut acc = ZERO;
        for r in 0..a.len() {
            for c in 0..a.len() {
                acc += a[r].conj() * m[(r, c)] * a[c];
            }
        }
        acc
    }
}

/// Eigenvalues in ascending order with the matching unitary eigenvector
/// matrix (column `j` belongs to `values[j]`).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<Eigen> {
    let err = h.hermiticity_error();
    if err >= HERMITIAN_TOL {
        return Err(Error::NotHermitian(err));
    }
    let n = h.dim();
    // Symmetrize so the sweep only has to trust the upper triangle.
    let mut a = ComplexMatrix::from_fn(n, |r, c| 0.5 * (h[(r, c)] + h[(c, r)].conj()));
    let mut v = ComplexMatrix::identity(n);

    let scale = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = JACOBI_OFF_TOL * scale.max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One two-sided rotation annihilating `a[p][q]`.
///
/// The rotation is `G = D·R` where `D = diag(1, e^{-iθ})` on `(p, q)` makes
/// the pivot real and `R` is the real Jacobi rotation for the resulting
/// 2×2 symmetric block. Applies `a ← G† a G` and `v ← v G`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / r; // e^{iθ}
    let zeta = (aqq - app) / (2.0 * r);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let t = if zeta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.dim();
    // a ← a G (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // a ← G† a (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// `exp(-i·h·t)` for Hermitian `h`, via `W·diag(e^{-iλt})·W†`.
pub fn expm_unitary(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    if t == 0.0 {
        return Ok(ComplexMatrix::identity(h.dim()));
    }
    Ok(eig.propagator(t))
}

impl Eigen {
    /// `exp(-i·h·t)` reusing this decomposition of `h`.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        let n = self.values.len();
        let phases: Vec<Complex64> = self
            .values
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -l * t))
            .collect();
        let w = &self.vectors;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for (j, ph) in phases.iter().enumerate() {
                    acc += w[(r, j)] * ph * w[(c, j)].conj();
                }
                out[(r, c)] = acc;
            }
        }
        out
    }
}

/// `Tr_{1,3}` of a three-qubit operator, keeping qubit 2.
pub fn partial_trace_keep_middle(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 8 {
        return Err(Error::BadDimension {
            expected: 8,
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(2);
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = ZERO;
            for i in 0..2 {
                for k in 0..2 {
                    acc += rho[(4 * i + 2 * a + k, 4 * i + 2 * b + k)];
                }
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Result of testing `u ≈ e^{iφ}·I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseIdentity {
    pub is_phase_identity: bool,
    /// `arg(u[0,0])` in `(-π, π]`.
    pub phase: f64,
    /// Nearest `k` with `φ ≈ πk/4`, in `0..8`; only for 8×8 matches.
    pub lattice_k: Option<u32>,
    /// `|φ - πk/4|` for the reported `k`.
    pub lattice_offset: Option<f64>,
}

pub fn identity_up_to_phase(u: &ComplexMatrix, tol: f64) -> PhaseIdentity {
    let phase = u[(0, 0)].arg();
    let target = ComplexMatrix::identity(u.dim()).scale(Complex64::from_polar(1.0, phase));
    let is_phase_identity = u.max_abs_diff(&target) < tol;
    let (lattice_k, lattice_offset) = if is_phase_identity && u.dim() == 8 {
        let (k, off) = snap_to_eighth_turn(phase);
        (Some(k), Some(off))
    } else {
        (None, None)
    };
    PhaseIdentity {
        is_phase_identity,
        phase,
        lattice_k,
        lattice_offset,
    }
}

/// Nearest point `πk/4` (k mod 8) and the distance to it.
pub fn snap_to_eighth_turn(phase: f64) -> (u32, f64) {
    let step = PI / 4.0;
    let k = (phase / step).round();
    let off = (phase - k * step).abs();
    (k.rem_euclid(8.0) as u32, off)
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

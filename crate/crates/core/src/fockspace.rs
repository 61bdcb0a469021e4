//! Operator algebra on a truncated Fock space.
//!
//! Everything here is a dense complex matrix over the lowest `N` number
//! states. Truncation makes the algebra inexact near the top of the ladder,
//! so results carry an explicit guard band: the top `k` levels are excluded
//! whenever a tolerance is quoted, with `k` scaling like the phase-space
//! distance an operator can transport population.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{self, CMat, CVec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FockError {
    #[error("truncation must keep at least 2 Fock levels, got {0}")]
    DimTooSmall(usize),
}

/// Number of Fock levels kept: states `|0>` through `|N-1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    dim: usize,
}

impl Truncation {
    pub fn new(dim: usize) -> Result<Self, FockError> {
        if dim < 2 {
            return Err(FockError::DimTooSmall(dim));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Width of the distrusted top band for an operator that displaces by
    /// `magnitude` in phase space, capped at a quarter of the space.
    ///
    /// For a product of displacement-like factors pass the sum of their
    /// magnitudes; population can travel that far before folding back.
    pub fn guard_band(&self, magnitude: f64) -> usize {
        let k = (4.0 * magnitude.abs() * (self.dim as f64).sqrt()).ceil() as usize;
        k.min(self.dim / 4)
    }

    /// Number of trusted leading levels, `dim - guard_band`.
    pub fn guarded_len(&self, magnitude: f64) -> usize {
        self.dim - self.guard_band(magnitude)
    }
}

/// Dense operator on the Fock space (`N x N`) or on the spin tensor Fock
/// space (`2N x 2N`, excited block first).
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: CMat,
    fock_dim: usize,
}

impl Operator {
    /// Wrap a matrix whose side is `N` or `2N`.
    pub fn from_matrix(mat: CMat, trunc: Truncation) -> Self {
        let n = trunc.dim();
        assert_eq!(mat.nrows(), mat.ncols(), "operator matrix must be square");
        assert!(
            mat.nrows() == n || mat.nrows() == 2 * n,
            "operator side {} is neither N={} nor 2N",
            mat.nrows(),
            n
        );
        Self { mat, fock_dim: n }
    }

    pub fn identity(trunc: Truncation, sectors: usize) -> Self {
        assert!(sectors == 1 || sectors == 2);
        Self {
            mat: CMat::identity(trunc.dim() * sectors, trunc.dim() * sectors),
            fock_dim: trunc.dim(),
        }
    }

    /// Assemble a spin-space operator from its four Fock-space blocks,
    /// ordered `[[ee, eg], [ge, gg]]`.
    pub fn from_blocks(ee: &CMat, eg: &CMat, ge: &CMat, gg: &CMat, trunc: Truncation) -> Self {
        let n = trunc.dim();
        for b in [ee, eg, ge, gg] {
            assert_eq!(b.nrows(), n);
            assert_eq!(b.ncols(), n);
        }
        let mut mat = CMat::zeros(2 * n, 2 * n);
        mat.view_mut((0, 0), (n, n)).copy_from(ee);
        mat.view_mut((0, n), (n, n)).copy_from(eg);
        mat.view_mut((n, 0), (n, n)).copy_from(ge);
        mat.view_mut((n, n), (n, n)).copy_from(gg);
        Self { mat, fock_dim: n }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }

    /// 1 for a Fock-only operator, 2 for spin tensor Fock.
    pub fn sectors(&self) -> usize {
        self.mat.nrows() / self.fock_dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    /// Fock-space block at sector position `(row, col)`; row/col 0 is the
    /// excited sector.
    pub fn block(&self, row: usize, col: usize) -> CMat {
        let n = self.fock_dim;
        assert!(row < self.sectors() && col < self.sectors());
        self.mat.view((row * n, col * n), (n, n)).into()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
            fock_dim: self.fock_dim,
        }
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            mat: &self.mat * factor,
            fock_dim: self.fock_dim,
        }
    }

    pub fn apply(&self, v: &CVec) -> CVec {
        assert_eq!(v.len(), self.dim(), "state length must match operator side");
        &self.mat * v
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.mat)
    }

    /// Indices belonging to the trusted region when the top `guard` levels
    /// of every sector are excluded.
    fn guarded_indices(&self, guard: usize) -> Vec<usize> {
        let n = self.fock_dim;
        let keep = n.saturating_sub(guard);
        (0..self.sectors())
            .flat_map(|s| s * n..s * n + keep)
            .collect()
    }

    /// Largest entry magnitude of `self - other` over the trusted region.
    pub fn guarded_max_dev(&self, other: &Operator, guard: usize) -> f64 {
        assert_eq!(self.dim(), other.dim());
        let idx = self.guarded_indices(guard);
        let mut worst = 0.0f64;
        for &i in &idx {
            for &j in &idx {
                worst = worst.max((self.mat[(i, j)] - other.mat[(i, j)]).norm());
            }
        }
        worst
    }

    /// Largest entry magnitude over the trusted region.
    pub fn guarded_max_abs(&self, guard: usize) -> f64 {
        let idx = self.guarded_indices(guard);
        let mut worst = 0.0f64;
        for &i in &idx {
            for &j in &idx {
                worst = worst.max(self.mat[(i, j)].norm());
            }
        }
        worst
    }

    /// `max |U^dag U - I|` over the trusted region.
    pub fn guarded_unitarity_defect(&self, guard: usize) -> f64 {
        let gram = self.mat.adjoint() * &self.mat;
        let idx = self.guarded_indices(guard);
        let mut worst = 0.0f64;
        for &i in &idx {
            for &j in &idx {
                let want = if i == j { C64::ONE } else { C64::ZERO };
                worst = worst.max((gram[(i, j)] - want).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.mat)
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat * &rhs.mat,
            fock_dim: self.fock_dim,
        }
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat + &rhs.mat,
            fock_dim: self.fock_dim,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat - &rhs.mat,
            fock_dim: self.fock_dim,
        }
    }
}

/// Annihilation, creation, and number operators: `<m|a|n> = sqrt(n) delta_{m,n-1}`.
pub fn ladder_operators(trunc: Truncation) -> (Operator, Operator, Operator) {
    let n = trunc.dim();
    let mut a = CMat::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C64::from((k as f64).sqrt());
    }
    let creation = a.adjoint();
    let mut number = CMat::zeros(n, n);
    for k in 0..n {
        number[(k, k)] = C64::from(k as f64);
    }
    (
        Operator::from_matrix(a, trunc),
        Operator::from_matrix(creation, trunc),
        Operator::from_matrix(number, trunc),
    )
}

/// Position-like `X = a + a^dag` and momentum-like `Y = a - a^dag`
/// quadratures. `X` is Hermitian; `Y` is anti-Hermitian so `iY` is Hermitian.
pub fn quadratures(trunc: Truncation) -> (Operator, Operator) {
    let (a, ad, _) = ladder_operators(trunc);
    let x = &a + &ad;
    let y = Operator::from_matrix(a.matrix() - ad.matrix(), trunc);
    (x, y)
}

/// Number-state parity `(-1)^n`, diagonal and involutory.
pub fn parity(trunc: Truncation) -> Operator {
    let n = trunc.dim();
    let mut p = CMat::zeros(n, n);
    for k in 0..n {
        p[(k, k)] = C64::from(if k % 2 == 0 { 1.0 } else { -1.0 });
    }
    Operator::from_matrix(p, trunc)
}

/// Displacement operator plus its measured unitarity defect on the guarded
/// block.
#[derive(Debug, Clone)]
pub struct Displacement {
    pub op: Operator,
    /// `max |D^dag D - I|` over the trusted block for `guard_band(|beta|)`.
    pub unitarity_defect: f64,
}

/// `D(beta) = exp(beta a^dag - beta^* a)` on the truncated space.
///
/// Built by exponentiating the truncated generator through the eigenbasis of
/// the Hermitian `i (beta a^dag - beta^* a)`, which keeps the result exactly
/// unitary up to rounding. The closed-form coherent amplitudes of
/// [`coherent_state`] stay independent of this path and serve as its check.
pub fn displacement(beta: C64, trunc: Truncation) -> Displacement {
    let n = trunc.dim();
    let (a, ad, _) = ladder_operators(trunc);
    let generator = ad.matrix() * beta - a.matrix() * beta.conj();
    let herm = generator.map(|z| z * C64::i());
    let eig = linalg::eigh(&herm);
    let mut d = CMat::zeros(n, n);
    for j in 0..n {
        let phase = C64::from_polar(1.0, -eig.values[j]);
        let col = eig.vectors.column(j);
        for r in 0..n {
            for c in 0..n {
                d[(r, c)] += col[r] * phase * col[c].conj();
            }
        }
    }
    let op = Operator::from_matrix(d, trunc);
    let unitarity_defect = op.guarded_unitarity_defect(trunc.guard_band(beta.norm()));
    Displacement {
        op,
        unitarity_defect,
    }
}

/// Coherent-state amplitudes with the norm lost to truncation reported.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub amplitudes: CVec,
    /// `1 - sum |c_n|^2`, the tail weight beyond the kept levels.
    pub norm_defect: f64,
}

/// Closed-form coherent state `c_n = alpha^n e^{-|alpha|^2/2} / sqrt(n!)`.
pub fn coherent_state(alpha: C64, trunc: Truncation) -> CoherentState {
    let n = trunc.dim();
    let mut amps = CVec::zeros(n);
    amps[0] = C64::ONE;
    for k in 1..n {
        amps[k] = amps[k - 1] * alpha / C64::from((k as f64).sqrt());
    }
    let scale = C64::from((-alpha.norm_sqr() / 2.0).exp());
    for k in 0..n {
        amps[k] *= scale;
    }
    let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    CoherentState {
        amplitudes: amps,
        norm_defect: 1.0 - norm_sqr,
    }
}

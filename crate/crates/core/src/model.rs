//! The driven-ion Hamiltonian and the unitary chain that block-diagonalizes
//! it.
//!
//! All matrices live on the spin tensor Fock space with the excited atomic
//! sector first and use frequency units (`hbar = 1`). The chain runs
//!
//! ```text
//! H --T--> linearized --T1--> --T2--> --T1--> block-diagonal
//! ```
//!
//! with every transformed form also available in closed form, so each link
//! of the chain can be checked as `U^dag H U` against an independently
//! assembled matrix.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::fockspace::{displacement, ladder_operators, parity, quadratures, Operator, Truncation};
use crate::linalg::{CMat, CVec};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("parameter {name} = {value} violates {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error(
        "out-of-scope detuning: delta = {0} but this path requires exact resonance (delta = 0)"
    )]
    OutOfScopeDetuning(f64),
    #[error("operator dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Physical parameters of the driven ion.
///
/// `lambda` (the effective linear coupling) and `beta` (the displacement
/// argument of the linearizing transform) are always derived from these,
/// never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    eta: f64,
    nu: f64,
    omega: f64,
    delta: f64,
}

impl SystemParams {
    pub fn new(eta: f64, nu: f64, omega: f64, delta: f64) -> Result<Self, ModelError> {
        if eta.is_nan() || eta < 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "eta",
                value: eta,
                constraint: "eta >= 0",
            });
        }
        if nu.is_nan() || nu <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "nu",
                value: nu,
                constraint: "nu > 0",
            });
        }
        if omega.is_nan() || omega < 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "omega",
                value: omega,
                constraint: "omega >= 0",
            });
        }
        if !delta.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "delta",
                value: delta,
                constraint: "delta finite",
            });
        }
        Ok(Self {
            eta,
            nu,
            omega,
            delta,
        })
    }

    /// Parameters with the detuning pinned to zero.
    pub fn resonant(eta: f64, nu: f64, omega: f64) -> Result<Self, ModelError> {
        Self::new(eta, nu, omega, 0.0)
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Effective linear coupling `lambda = eta nu / 2`.
    pub fn coupling(&self) -> f64 {
        0.5 * self.eta * self.nu
    }

    /// Displacement argument `beta = -i eta / 2` of the linearizing
    /// transform.
    pub fn beta(&self) -> C64 {
        C64::new(0.0, -0.5 * self.eta)
    }

    /// Scalar `nu eta^2 / 4` dropped between the linearized and resonant
    /// forms; reinstated as a global phase for state-level comparisons.
    pub fn constant_shift(&self) -> f64 {
        self.nu * self.eta * self.eta / 4.0
    }

    pub fn require_resonant(&self) -> Result<(), ModelError> {
        if self.delta != 0.0 {
            return Err(ModelError::OutOfScopeDetuning(self.delta));
        }
        Ok(())
    }
}

/// Pure state on the spin tensor Fock space.
///
/// Indices `0..N` hold the excited-sector amplitudes, `N..2N` the ground
/// sector. The ordering is part of the contract.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinFockState {
    amps: CVec,
    fock_dim: usize,
}

impl SpinFockState {
    pub fn new(amps: CVec, trunc: Truncation) -> Self {
        assert_eq!(amps.len(), 2 * trunc.dim(), "state length must be 2N");
        Self {
            amps,
            fock_dim: trunc.dim(),
        }
    }

    pub fn from_blocks(excited: &CVec, ground: &CVec, trunc: Truncation) -> Self {
        let n = trunc.dim();
        assert_eq!(excited.len(), n);
        assert_eq!(ground.len(), n);
        let mut amps = CVec::zeros(2 * n);
        amps.rows_mut(0, n).copy_from(excited);
        amps.rows_mut(n, n).copy_from(ground);
        Self { amps, fock_dim: n }
    }

    /// Basis state `|atomic> x |n>`; `excited` selects the sector.
    pub fn basis(excited: bool, n: usize, trunc: Truncation) -> Self {
        assert!(n < trunc.dim());
        let mut amps = CVec::zeros(2 * trunc.dim());
        amps[if excited { n } else { trunc.dim() + n }] = C64::ONE;
        Self {
            amps,
            fock_dim: trunc.dim(),
        }
    }

    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amps
    }

    pub fn excited_block(&self) -> CVec {
        self.amps.rows(0, self.fock_dim).into()
    }

    pub fn ground_block(&self) -> CVec {
        self.amps.rows(self.fock_dim, self.fock_dim).into()
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn inner(&self, other: &SpinFockState) -> C64 {
        self.amps.dotc(&other.amps)
    }

    /// Max-norm distance to another state.
    pub fn max_dev(&self, other: &SpinFockState) -> f64 {
        assert_eq!(self.amps.len(), other.amps.len());
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            amps: &self.amps * factor,
            fock_dim: self.fock_dim,
        }
    }
}

fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

/// Ion-laser Hamiltonian in the atomic basis:
/// diagonal blocks `nu n_hat +- delta/2`, off-diagonal `Omega e^{+-i eta X}`.
///
/// The exponential is the displacement operator with argument `i eta`, and
/// Hermiticity is exact because the lower block is built as the adjoint.
pub fn build_ion_hamiltonian(p: &SystemParams, trunc: Truncation) -> Operator {
    let n = trunc.dim();
    let (_, _, number) = ladder_operators(trunc);
    let exp_up = displacement(C64::new(0.0, p.eta()), trunc).op;
    let half_delta = C64::from(p.delta() / 2.0);
    let nu = C64::from(p.nu());
    let omega = C64::from(p.omega());

    let ee = number.matrix() * nu + CMat::identity(n, n) * half_delta;
    let gg = number.matrix() * nu - CMat::identity(n, n) * half_delta;
    let eg = exp_up.matrix() * omega;
    let ge = eg.adjoint();
    Operator::from_blocks(&ee, &eg, &ge, &gg, trunc)
}

/// Linearizing transform: `(1/sqrt 2) [[D^dag(beta), -D^dag(beta)], [D(beta), D(beta)]]`
/// with `beta = -i eta / 2`.
pub fn linearizing_transform(p: &SystemParams, trunc: Truncation) -> Operator {
    let d = displacement(p.beta(), trunc).op;
    let dd = d.adjoint();
    let s = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    Operator::from_blocks(
        &(dd.matrix() * s),
        &(dd.matrix() * -s),
        &(d.matrix() * s),
        &(d.matrix() * s),
        trunc,
    )
}

/// Closed-form image of the Hamiltonian under the linearizing transform:
/// diagonal blocks `nu n_hat + nu eta^2/4 +- Omega`, off-diagonal `i lambda Y`.
///
/// Only exact resonance is supported; the detuned image is out of scope.
pub fn build_linearized(p: &SystemParams, trunc: Truncation) -> Result<Operator, ModelError> {
    p.require_resonant()?;
    let n = trunc.dim();
    let (_, _, number) = ladder_operators(trunc);
    let (_, y) = quadratures(trunc);
    let shift = C64::from(p.constant_shift());
    let omega = C64::from(p.omega());
    let nu = C64::from(p.nu());
    let coupling = y.matrix() * C64::new(0.0, p.coupling());

    let base = number.matrix() * nu + CMat::identity(n, n) * shift;
    let ee = &base + CMat::identity(n, n) * omega;
    let gg = &base - CMat::identity(n, n) * omega;
    Ok(Operator::from_blocks(&ee, &coupling, &coupling, &gg, trunc))
}

/// Resonant form: the linearized Hamiltonian with the scalar `nu eta^2/4`
/// removed.
pub fn build_resonant(p: &SystemParams, trunc: Truncation) -> Result<Operator, ModelError> {
    let lin = build_linearized(p, trunc)?;
    let n = lin.dim();
    let shifted = lin.matrix() - CMat::identity(n, n) * C64::from(p.constant_shift());
    Ok(Operator::from_matrix(shifted, trunc))
}

/// The two atomic-space transforms: a Hadamard-like mixer
/// `(1/sqrt 2) [[I, I], [-I, I]]` and the parity marker `[[(-1)^n, 0], [0, I]]`.
/// Both are exactly unitary; the second is also involutory.
pub fn atomic_transforms(trunc: Truncation) -> (Operator, Operator) {
    let n = trunc.dim();
    let s = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    let id = CMat::identity(n, n);
    let mixer = Operator::from_blocks(&(&id * s), &(&id * s), &(&id * -s), &(&id * s), trunc);
    let par = parity(trunc);
    let marker = Operator::from_blocks(par.matrix(), &zeros(n), &zeros(n), &id, trunc);
    (mixer, marker)
}

/// Similarity transform `U^dag H U`.
pub fn conjugate(h: &Operator, u: &Operator) -> Result<Operator, ModelError> {
    if h.dim() != u.dim() {
        return Err(ModelError::DimensionMismatch {
            left: h.dim(),
            right: u.dim(),
        });
    }
    Ok(&(&u.adjoint() * h) * u)
}

/// Full chain `U = T T1 T2 T1` taking the block-diagonal frame back to the
/// physical one.
pub fn transform_chain(p: &SystemParams, trunc: Truncation) -> Operator {
    let t = linearizing_transform(p, trunc);
    let (t1, t2) = atomic_transforms(trunc);
    &(&(&t * &t1) * &t2) * &t1
}

/// Closed-form fully transformed Hamiltonian: `nu n_hat + i lambda Y` on both
/// diagonal blocks, `-Omega (-1)^n` on the excited block and `+Omega (-1)^n`
/// on the ground block, no off-diagonal coupling.
///
/// Note this is the image of [`build_resonant`]; conjugating the full
/// [`build_ion_hamiltonian`] additionally carries the scalar
/// [`SystemParams::constant_shift`].
pub fn build_diagonalizable(p: &SystemParams, trunc: Truncation) -> Result<Operator, ModelError> {
    p.require_resonant()?;
    let n = trunc.dim();
    let (_, _, number) = ladder_operators(trunc);
    let (_, y) = quadratures(trunc);
    let par = parity(trunc);
    let nu = C64::from(p.nu());
    let omega = C64::from(p.omega());
    let base = number.matrix() * nu + y.matrix() * C64::new(0.0, p.coupling());
    let ee = &base - par.matrix() * omega;
    let gg = &base + par.matrix() * omega;
    Ok(Operator::from_blocks(&ee, &zeros(n), &zeros(n), &gg, trunc))
}

/// Guard band for comparisons involving the whole chain `U^dag H U`: the
/// displacement magnitudes along the product sum to `2 eta` (eta from the
/// drive exponential plus eta/2 from each side of the transform).
pub fn chain_guard_band(p: &SystemParams, trunc: Truncation) -> usize {
    trunc.guard_band(2.0 * p.eta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigh;

    fn trunc(n: usize) -> Truncation {
        Truncation::new(n).unwrap()
    }

    fn sorted_eigenvalues(op: &Operator) -> Vec<f64> {
        eigh(op.matrix()).values.iter().cloned().collect()
    }

    #[test]
    fn params_validation() {
        assert!(SystemParams::new(-0.1, 1.0, 0.5, 0.0).is_err());
        assert!(SystemParams::new(0.1, 0.0, 0.5, 0.0).is_err());
        assert!(SystemParams::new(0.1, 1.0, -0.5, 0.0).is_err());
        let p = SystemParams::new(0.2, 1.0, 0.5, 0.0).unwrap();
        assert!((p.coupling() - 0.1).abs() <= 1e-16);
        assert_eq!(p.beta(), C64::new(0.0, -0.1));
        assert!((p.constant_shift() - 0.01).abs() <= 1e-17);
    }

    #[test]
    fn decoupled_drive_gives_two_level_spectrum() {
        // eta = 0: the drive block is Omega * I and motion decouples
        let p = SystemParams::resonant(0.0, 1.0, 0.5).unwrap();
        let t = trunc(6);
        let h = build_ion_hamiltonian(&p, t);
        let eg = h.block(0, 1);
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { C64::from(0.5) } else { C64::ZERO };
                assert!((eg[(i, j)] - want).norm() <= 1e-15);
            }
        }
        let mut want: Vec<f64> = (0..6)
            .flat_map(|n| [n as f64 + 0.5, n as f64 - 0.5])
            .collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let got = sorted_eigenvalues(&h);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= 1e-12);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_and_matches_reference_ground_energy() {
        let p = SystemParams::resonant(0.2, 1.0, 0.5).unwrap();
        let t = trunc(40);
        let h = build_ion_hamiltonian(&p, t);
        assert!(h.hermiticity_defect() <= 1e-12);
        // reference from an independent dense solve of the same matrix
        let ground = sorted_eigenvalues(&h)[0];
        assert!(
            (ground - (-0.495012531249411)).abs() <= 1e-10,
            "ground {ground}"
        );
    }

    #[test]
    fn transform_reduces_to_atomic_mixer_without_displacement() {
        let p = SystemParams::resonant(0.0, 1.0, 0.5).unwrap();
        let t = trunc(4);
        let tr = linearizing_transform(&p, t);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..4 {
            assert!((tr.matrix()[(i, i)] - C64::from(s)).norm() <= 1e-15);
            assert!((tr.matrix()[(i, i + 4)] - C64::from(-s)).norm() <= 1e-15);
            assert!((tr.matrix()[(i + 4, i)] - C64::from(s)).norm() <= 1e-15);
            assert!((tr.matrix()[(i + 4, i + 4)] - C64::from(s)).norm() <= 1e-15);
        }
    }

    #[test]
    fn transform_is_unitary_on_guarded_block() {
        for eta in [0.0, 0.2, 0.5, 1.0] {
            let p = SystemParams::resonant(eta, 1.0, 0.5).unwrap();
            let t = trunc(48);
            let tr = linearizing_transform(&p, t);
            let defect = tr.guarded_unitarity_defect(t.guard_band(eta));
            assert!(defect <= 1e-10, "eta={eta}: {defect}");
        }
    }

    #[test]
    fn linearized_matches_explicit_conjugation() {
        let p = SystemParams::resonant(0.2, 1.0, 0.5).unwrap();
        let t = trunc(40);
        let h = build_ion_hamiltonian(&p, t);
        let tr = linearizing_transform(&p, t);
        let conj = conjugate(&h, &tr).unwrap();
        let lin = build_linearized(&p, t).unwrap();
        let dev = conj.guarded_max_dev(&lin, t.guard_band(2.0 * p.eta()));
        assert!(dev <= 1e-8, "deviation {dev}");
    }

    #[test]
    fn linearized_rejects_detuning_and_is_hermitian() {
        let p = SystemParams::new(0.2, 1.0, 0.5, 0.1).unwrap();
        assert_eq!(
            build_linearized(&p, trunc(8)),
            Err(ModelError::OutOfScopeDetuning(0.1))
        );
        let p0 = SystemParams::resonant(0.3, 1.0, 0.4).unwrap();
        let lin = build_linearized(&p0, trunc(16)).unwrap();
        assert_eq!(lin.hermiticity_defect(), 0.0);
        // the coupling block i lambda Y is itself Hermitian
        let block = lin.block(0, 1);
        let mut dev = 0.0f64;
        for i in 0..16 {
            for j in 0..16 {
                dev = dev.max((block[(i, j)] - block[(j, i)].conj()).norm());
            }
        }
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn zero_eta_linearized_is_diagonal() {
        let p = SystemParams::resonant(0.0, 1.0, 0.5).unwrap();
        let lin = build_linearized(&p, trunc(5)).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                if i != j {
                    assert_eq!(lin.matrix()[(i, j)], C64::ZERO);
                }
            }
        }
        assert_eq!(lin.matrix()[(0, 0)], C64::from(0.5));
        assert_eq!(lin.matrix()[(5, 5)], C64::from(-0.5));
    }

    #[test]
    fn resonant_differs_by_the_scalar_shift() {
        let p = SystemParams::resonant(0.2, 1.0, 0.5).unwrap();
        let t = trunc(20);
        let lin = build_linearized(&p, t).unwrap();
        let res = build_resonant(&p, t).unwrap();
        let diff = lin.matrix() - res.matrix();
        // the scalar re-emerges up to the rounding of (nu n + shift) - nu n
        for i in 0..40 {
            for j in 0..40 {
                let want = if i == j { C64::from(0.01) } else { C64::ZERO };
                assert!((diff[(i, j)] - want).norm() <= 1e-13);
            }
        }
        // spectra shift rigidly
        let ev_lin = sorted_eigenvalues(&lin);
        let ev_res = sorted_eigenvalues(&res);
        for (a, b) in ev_lin.iter().zip(ev_res) {
            assert!((a - b - 0.01).abs() <= 1e-12);
        }
    }

    #[test]
    fn atomic_transforms_are_unitary() {
        let t = trunc(3);
        let (mixer, marker) = atomic_transforms(t);
        let id = Operator::identity(t, 2);
        assert!((&mixer.adjoint() * &mixer).guarded_max_dev(&id, 0) <= 2.0 * f64::EPSILON);
        assert_eq!((&marker * &marker).guarded_max_dev(&id, 0), 0.0);
        for (k, want) in [1.0, -1.0, 1.0].iter().enumerate() {
            assert_eq!(marker.matrix()[(k, k)], C64::from(*want));
        }
    }

    #[test]
    fn conjugate_by_identity_is_a_no_op() {
        let p = SystemParams::resonant(0.2, 1.0, 0.5).unwrap();
        let t = trunc(10);
        let h = build_ion_hamiltonian(&p, t);
        let conj = conjugate(&h, &Operator::identity(t, 2)).unwrap();
        assert!(conj.guarded_max_dev(&h, 0) <= 1e-15);
    }

    #[test]
    fn conjugation_by_the_chain_keeps_hermiticity() {
        let p = SystemParams::resonant(0.4, 1.0, 0.3).unwrap();
        let t = trunc(32);
        let h = build_ion_hamiltonian(&p, t);
        let conj = conjugate(&h, &transform_chain(&p, t)).unwrap();
        let bound = 10.0 * h.hermiticity_defect() + 1e-13;
        assert!(conj.hermiticity_defect() <= bound);
    }

    #[test]
    fn conjugate_rejects_mismatched_dimensions() {
        let p = SystemParams::resonant(0.2, 1.0, 0.5).unwrap();
        let h = build_ion_hamiltonian(&p, trunc(8));
        let u = Operator::identity(trunc(8), 1);
        assert!(matches!(
            conjugate(&h, &u),
            Err(ModelError::DimensionMismatch { left: 16, right: 8 })
        ));
    }

    #[test]
    fn mixer_step_reproduces_printed_intermediate() {
        let p = SystemParams::resonant(0.2, 1.0, 0.5).unwrap();
        let t = trunc(24);
        let n = t.dim();
        let res = build_resonant(&p, t).unwrap();
        let (mixer, marker) = atomic_transforms(t);

        // first step: couplings move to the diagonal, drive to the corners
        let step1 = conjugate(&res, &mixer).unwrap();
        let (_, _, number) = ladder_operators(t);
        let (_, y) = quadratures(t);
        let base = number.matrix() * C64::from(p.nu());
        let coup = y.matrix() * C64::new(0.0, p.coupling());
        let om = CMat::identity(n, n) * C64::from(p.omega());
        let want1 = Operator::from_blocks(&(&base - &coup), &om, &om, &(&base + &coup), t);
        assert!(step1.guarded_max_dev(&want1, 0) <= 1e-12);

        // second step: parity conjugation flips the sign of the coupling and
        // tags the drive with (-1)^n
        let step2 = conjugate(&step1, &marker).unwrap();
        let par = parity(t);
        let omp = par.matrix() * C64::from(p.omega());
        let want2 = Operator::from_blocks(&(&base + &coup), &omp, &omp, &(&base + &coup), t);
        assert!(step2.guarded_max_dev(&want2, 0) <= 1e-12);

        // third step lands on the block-diagonal closed form
        let step3 = conjugate(&step2, &mixer).unwrap();
        let want3 = build_diagonalizable(&p, t).unwrap();
        assert!(step3.guarded_max_dev(&want3, 0) <= 1e-12);
    }

    #[test]
    fn diagonalizable_matches_full_chain_conjugation() {
        for (eta, omega) in [(0.2, 0.5), (0.5, 0.3)] {
            let p = SystemParams::resonant(eta, 1.0, omega).unwrap();
            let t = trunc(60);
            let h = build_ion_hamiltonian(&p, t);
            let u = transform_chain(&p, t);
            let conj = conjugate(&h, &u).unwrap();
            let closed = build_diagonalizable(&p, t).unwrap();
            // the conjugation of the full Hamiltonian carries the scalar that
            // the resonant form dropped
            let shifted = Operator::from_matrix(
                closed.matrix() + CMat::identity(2 * 60, 2 * 60) * C64::from(p.constant_shift()),
                t,
            );
            let dev = conj.guarded_max_dev(&shifted, chain_guard_band(&p, t));
            assert!(dev <= 1e-8, "eta={eta}: {dev}");
        }
    }

    #[test]
    fn chain_is_unitary_on_guarded_block() {
        for eta in [0.2, 0.5, 1.0] {
            let p = SystemParams::resonant(eta, 1.0, 0.5).unwrap();
            let t = trunc(48);
            let u = transform_chain(&p, t);
            let defect = u.guarded_unitarity_defect(t.guard_band(eta));
            assert!(defect <= 1e-10, "eta={eta}: {defect}");
        }
    }

    #[test]
    fn diagonalizable_has_no_atomic_coupling() {
        let p = SystemParams::resonant(0.4, 1.0, 0.3).unwrap();
        let t = trunc(12);
        let hd = build_diagonalizable(&p, t).unwrap();
        assert_eq!(crate::linalg::max_abs(&hd.block(0, 1)), 0.0);
        assert_eq!(crate::linalg::max_abs(&hd.block(1, 0)), 0.0);
        assert_eq!(hd.hermiticity_defect(), 0.0);
    }

    #[test]
    fn zero_eta_diagonalizable_reads_off_the_diagonal() {
        let p = SystemParams::resonant(0.0, 1.0, 0.5).unwrap();
        let hd = build_diagonalizable(&p, trunc(4)).unwrap();
        for n in 0..4 {
            let par = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((hd.matrix()[(n, n)].re - (n as f64 - 0.5 * par)).abs() <= 1e-15);
            assert!((hd.matrix()[(n + 4, n + 4)].re - (n as f64 + 0.5 * par)).abs() <= 1e-15);
        }
    }

    #[test]
    fn spectrum_is_preserved_along_the_chain() {
        let p = SystemParams::resonant(0.2, 1.0, 0.5).unwrap();
        let t = trunc(60);
        let res = sorted_eigenvalues(&build_resonant(&p, t).unwrap());
        let diag = sorted_eigenvalues(&build_diagonalizable(&p, t).unwrap());
        let worst = res
            .iter()
            .zip(diag)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-8, "spectrum deviation {worst}");
    }

    #[test]
    fn state_blocks_and_basis() {
        let t = trunc(3);
        let s = SpinFockState::basis(false, 2, t);
        assert_eq!(s.amplitudes()[5], C64::ONE);
        assert_eq!(s.excited_block().norm(), 0.0);
        assert!((s.ground_block()[2] - C64::ONE).norm() == 0.0);
        assert!((s.norm() - 1.0).abs() <= 1e-15);
    }
}

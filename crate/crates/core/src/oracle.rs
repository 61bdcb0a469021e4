//! Independent reference solutions for cross-checking the spectral pipeline.
//!
//! [`propagate`] exponentiates any Hermitian operator exactly through one
//! eigendecomposition, so no step-size error enters the comparison.
//! [`rwa_jcm_evolve`] solves the rotating-wave model analytically in its
//! two-dimensional dressed blocks and never touches a numerical solver,
//! keeping it independent of everything it is compared against.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::dynamics::{observables, TimeSeries};
use crate::fockspace::{Operator, Truncation};
use crate::linalg::{self, CVec};
use crate::model::{build_ion_hamiltonian, ModelError, SpinFockState, SystemParams};

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("time grids differ ({left} vs {right} samples)")]
    GridMismatch { left: usize, right: usize },
    #[error("state length {state} does not match operator side {operator}")]
    DimensionMismatch { state: usize, operator: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Evolve a state under a Hermitian operator on a time grid: one
/// eigendecomposition, then exact phases per sample.
pub fn propagate(
    h: &Operator,
    state0: &SpinFockState,
    t_grid: &[f64],
) -> Result<Vec<SpinFockState>, OracleError> {
    if h.dim() != state0.amplitudes().len() {
        return Err(OracleError::DimensionMismatch {
            state: state0.amplitudes().len(),
            operator: h.dim(),
        });
    }
    let trunc = Truncation::new(h.fock_dim()).expect("operator dimension is valid");
    let eig = linalg::eigh(h.matrix());
    let coords = eig.vectors.adjoint() * state0.amplitudes();
    let n = coords.len();
    let states = t_grid
        .iter()
        .map(|&t| {
            let mut rotated = CVec::zeros(n);
            for k in 0..n {
                rotated[k] = coords[k] * C64::from_polar(1.0, -eig.values[k] * t);
            }
            SpinFockState::new(&eig.vectors * rotated, trunc)
        })
        .collect();
    Ok(states)
}

/// Exact propagation under the untransformed ion-laser Hamiltonian. The
/// detuning may be nonzero here; this path exists precisely to check the
/// resonance-restricted machinery from outside.
pub fn direct_propagate(
    p: &SystemParams,
    state0: &SpinFockState,
    trunc: Truncation,
    t_grid: &[f64],
) -> Result<Vec<SpinFockState>, OracleError> {
    let h = build_ion_hamiltonian(p, trunc);
    propagate(&h, state0, t_grid)
}

/// Analytic evolution under the rotating-wave form
/// `nu n_hat + Omega sigma_z + i lambda (a sigma_+ - a^dag sigma_-)`.
///
/// Each block `{|e,n>, |g,n+1>}` closes on itself with detuning
/// `Delta = 2 Omega - nu` and oscillation frequency
/// `sqrt(Delta^2 + 4 lambda^2 (n+1))`; `|g,0>` and the truncated top level
/// only pick up phases.
pub fn rwa_jcm_evolve(
    p: &SystemParams,
    state0: &SpinFockState,
    trunc: Truncation,
    t_grid: &[f64],
) -> Result<Vec<SpinFockState>, OracleError> {
    p.require_resonant().map_err(OracleError::Model)?;
    let n = trunc.dim();
    if state0.fock_dim() != n {
        return Err(OracleError::DimensionMismatch {
            state: state0.amplitudes().len(),
            operator: 2 * n,
        });
    }
    let lambda = p.coupling();
    let nu = p.nu();
    let omega = p.omega();
    let half_detuning = omega - nu / 2.0; // Delta / 2 with Delta = 2 Omega - nu
    let amps0 = state0.amplitudes();

    let states = t_grid
        .iter()
        .map(|&t| {
            let mut amps = CVec::zeros(2 * n);
            // |g,0> is stationary at energy -Omega
            amps[n] = amps0[n] * C64::from_polar(1.0, omega * t);
            // the top excited level has no partner left after truncation
            amps[n - 1] +=
                amps0[n - 1] * C64::from_polar(1.0, -(nu * (n as f64 - 1.0) + omega) * t);
            for k in 0..n - 1 {
                let ce = amps0[k];
                let cg = amps0[n + k + 1];
                if ce.norm_sqr() == 0.0 && cg.norm_sqr() == 0.0 {
                    continue;
                }
                let mean_energy = nu * (k as f64) + nu / 2.0;
                let g = lambda * ((k + 1) as f64).sqrt();
                let rabi = (half_detuning * half_detuning + g * g).sqrt();
                let (m00, m01, m10, m11) = if rabi == 0.0 {
                    (C64::ONE, C64::ZERO, C64::ZERO, C64::ONE)
                } else {
                    let (sin, cos) = (rabi * t).sin_cos();
                    let mix = sin / rabi;
                    (
                        C64::new(cos, -mix * half_detuning),
                        C64::from(g * mix),
                        C64::from(-g * mix),
                        C64::new(cos, mix * half_detuning),
                    )
                };
                let phase = C64::from_polar(1.0, -mean_energy * t);
                amps[k] += phase * (m00 * ce + m01 * cg);
                amps[n + k + 1] += phase * (m10 * ce + m11 * cg);
            }
            SpinFockState::new(amps, trunc)
        })
        .collect();
    Ok(states)
}

/// Elementwise deviations between two runs.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// Largest max-norm state difference across the grid; absent when only
    /// observables were compared.
    pub max_state_deviation: Option<f64>,
    /// Largest difference among excited population, inversion, and mean
    /// phonon number.
    pub max_observable_deviation: f64,
    /// One deviation per sample: state max-norm when states were compared,
    /// otherwise the observable deviation.
    pub per_time_deviations: Vec<f64>,
}

/// Compare two state trajectories sample by sample.
pub fn compare_states(
    a: &[SpinFockState],
    b: &[SpinFockState],
) -> Result<ComparisonReport, OracleError> {
    if a.len() != b.len() {
        return Err(OracleError::GridMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut per_time = Vec::with_capacity(a.len());
    let mut max_obs = 0.0f64;
    for (sa, sb) in a.iter().zip(b) {
        per_time.push(sa.max_dev(sb));
        let oa = observables(sa);
        let ob = observables(sb);
        max_obs = max_obs
            .max((oa.p_excited - ob.p_excited).abs())
            .max((oa.inversion - ob.inversion).abs())
            .max((oa.mean_n - ob.mean_n).abs());
    }
    let max_state = per_time.iter().cloned().fold(0.0, f64::max);
    Ok(ComparisonReport {
        max_state_deviation: Some(max_state),
        max_observable_deviation: max_obs,
        per_time_deviations: per_time,
    })
}

/// Compare two sampled observable series on identical grids.
pub fn compare_timeseries(a: &TimeSeries, b: &TimeSeries) -> Result<ComparisonReport, OracleError> {
    if a.len() != b.len() {
        return Err(OracleError::GridMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut per_time = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        let dev = (a.p_excited[k] - b.p_excited[k])
            .abs()
            .max((a.inversion[k] - b.inversion[k]).abs())
            .max((a.mean_n[k] - b.mean_n[k]).abs());
        per_time.push(dev);
    }
    let max_obs = per_time.iter().cloned().fold(0.0, f64::max);
    Ok(ComparisonReport {
        max_state_deviation: None,
        max_observable_deviation: max_obs,
        per_time_deviations: per_time,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{prepare_initial, time_grid, InitialStateSpec};
    use crate::model::build_resonant;

    fn trunc(n: usize) -> Truncation {
        Truncation::new(n).unwrap()
    }

    fn params(eta: f64, nu: f64, omega: f64) -> SystemParams {
        SystemParams::resonant(eta, nu, omega).unwrap()
    }

    #[test]
    fn propagation_starts_at_the_initial_state() {
        let p = params(0.2, 1.0, 0.5);
        let t = trunc(30);
        let s0 = prepare_initial(&InitialStateSpec::antisymmetric_coherent(p.beta()), t).unwrap();
        let states = direct_propagate(&p, &s0, t, &[0.0, 1.0]).unwrap();
        assert!(states[0].max_dev(&s0) <= 1e-12);
    }

    #[test]
    fn norm_is_conserved() {
        let p = params(0.3, 1.0, 0.4);
        let t = trunc(40);
        let s0 = prepare_initial(&InitialStateSpec::antisymmetric_coherent(p.beta()), t).unwrap();
        for state in direct_propagate(&p, &s0, t, &time_grid(50.0, 41)).unwrap() {
            assert!((state.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn undisplaced_drive_rabi_flops_exactly() {
        // eta = 0, delta = 0, starting in |e,0>: P_e(t) = cos^2(Omega t)
        let p = params(0.0, 1.0, 0.5);
        let t = trunc(8);
        let s0 = prepare_initial(&InitialStateSpec::excited_fock(0), t).unwrap();
        let grid = time_grid(50.0, 251);
        let states = direct_propagate(&p, &s0, t, &grid).unwrap();
        for (state, &tv) in states.iter().zip(&grid) {
            let pe = observables(state).p_excited;
            let want = (p.omega() * tv).cos().powi(2);
            assert!((pe - want).abs() <= 1e-10, "t={tv}: {pe} vs {want}");
        }
    }

    #[test]
    fn propagation_composes_over_time() {
        let p = params(0.2, 1.0, 0.5);
        let t = trunc(40);
        let s0 = prepare_initial(&InitialStateSpec::antisymmetric_coherent(p.beta()), t).unwrap();
        let via = direct_propagate(&p, &s0, t, &[13.7]).unwrap().remove(0);
        let two_leg = direct_propagate(&p, &via, t, &[31.4 - 13.7])
            .unwrap()
            .remove(0);
        let direct = direct_propagate(&p, &s0, t, &[31.4]).unwrap().remove(0);
        assert!(two_leg.max_dev(&direct) <= 1e-10);
    }

    #[test]
    fn truncation_self_convergence_of_propagation() {
        let p = params(0.2, 1.0, 0.5);
        let grid = time_grid(50.0, 51);
        let run = |n: usize| {
            let t = trunc(n);
            let s0 =
                prepare_initial(&InitialStateSpec::antisymmetric_coherent(p.beta()), t).unwrap();
            direct_propagate(&p, &s0, t, &grid).unwrap()
        };
        let a = run(60);
        let b = run(70);
        let mut worst = 0.0f64;
        for (sa, sb) in a.iter().zip(&b) {
            for k in 0..60 {
                worst = worst.max((sa.amplitudes()[k] - sb.amplitudes()[k]).norm());
                worst = worst.max((sa.amplitudes()[60 + k] - sb.amplitudes()[70 + k]).norm());
            }
        }
        assert!(worst <= 1e-8, "cross-truncation deviation {worst}");
    }

    #[test]
    fn rwa_without_coupling_keeps_populations() {
        let p = params(0.0, 1.0, 0.5);
        let t = trunc(10);
        let s0 = prepare_initial(&InitialStateSpec::excited_fock(3), t).unwrap();
        for state in rwa_jcm_evolve(&p, &s0, t, &time_grid(30.0, 31)).unwrap() {
            let o = observables(&state);
            assert!((o.p_excited - 1.0).abs() <= 1e-12);
            assert!((o.mean_n - 3.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn rwa_vacuum_oscillation_at_resonance() {
        // nu = 2 Omega puts |e,0> and |g,1> on resonance: P_e = cos^2(lambda t)
        let p = params(0.05, 1.0, 0.5);
        let t = trunc(20);
        let s0 = prepare_initial(&InitialStateSpec::excited_fock(0), t).unwrap();
        let grid = time_grid(3.0 * std::f64::consts::PI / p.coupling(), 301);
        for (state, &tv) in rwa_jcm_evolve(&p, &s0, t, &grid).unwrap().iter().zip(&grid) {
            let pe = observables(state).p_excited;
            let want = (p.coupling() * tv).cos().powi(2);
            assert!((pe - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn timeseries_comparison_reports_observable_gaps() {
        use crate::dynamics::run_evolution;
        let t = trunc(24);
        let grid = time_grid(8.0, 17);
        let run = |eta: f64| {
            let p = params(eta, 1.0, 0.5);
            let spec = InitialStateSpec::antisymmetric_coherent(p.beta());
            run_evolution(&p, &spec, t, &grid).unwrap()
        };
        let a = run(0.2);
        let same = compare_timeseries(&a, &a).unwrap();
        assert!(same.max_state_deviation.is_none());
        assert_eq!(same.max_observable_deviation, 0.0);
        assert_eq!(same.per_time_deviations.len(), 17);

        let b = run(0.3);
        let diff = compare_timeseries(&a, &b).unwrap();
        assert!(diff.max_observable_deviation > 1e-4);

        let short = run_evolution(
            &params(0.2, 1.0, 0.5),
            &InitialStateSpec::antisymmetric_coherent(C64::ZERO),
            t,
            &time_grid(8.0, 5),
        )
        .unwrap();
        assert!(matches!(
            compare_timeseries(&a, &short),
            Err(OracleError::GridMismatch { left: 17, right: 5 })
        ));
    }

    #[test]
    fn rwa_blocks_conserve_probability() {
        let p = params(0.3, 1.0, 0.4);
        let t = trunc(16);
        let mut amps = CVec::zeros(32);
        amps[2] = C64::from(0.6); // |e,2>
        amps[16 + 3] = C64::new(0.0, 0.8); // |g,3>, same block
        let s0 = SpinFockState::new(amps, t);
        for state in rwa_jcm_evolve(&p, &s0, t, &time_grid(40.0, 41)).unwrap() {
            let block: f64 =
                state.amplitudes()[2].norm_sqr() + state.amplitudes()[16 + 3].norm_sqr();
            assert!((block - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn rwa_tracks_the_resonant_model_at_small_coupling() {
        // the rotating-wave answer follows exact propagation of the resonant
        // form while lambda << nu, and loses it when eta grows
        let run = |eta: f64| -> f64 {
            let p = params(eta, 1.0, 0.5);
            let t = trunc(60);
            let s0 = prepare_initial(&InitialStateSpec::excited_fock(0), t).unwrap();
            let grid = time_grid(3.0 * std::f64::consts::PI / p.coupling(), 301);
            let rwa = rwa_jcm_evolve(&p, &s0, t, &grid).unwrap();
            let full = propagate(&build_resonant(&p, t).unwrap(), &s0, &grid).unwrap();
            let report = compare_states(&rwa, &full).unwrap();
            report.max_observable_deviation
        };
        assert!(run(0.05) <= 1e-2, "small-coupling deviation {}", run(0.05));
        assert!(run(0.5) > 1e-2, "breakdown not visible: {}", run(0.5));
    }

    #[test]
    fn identical_runs_compare_to_zero() {
        let p = params(0.2, 1.0, 0.5);
        let t = trunc(20);
        let s0 = prepare_initial(&InitialStateSpec::excited_fock(0), t).unwrap();
        let states = direct_propagate(&p, &s0, t, &time_grid(10.0, 11)).unwrap();
        let report = compare_states(&states, &states).unwrap();
        assert_eq!(report.max_state_deviation, Some(0.0));
        assert_eq!(report.max_observable_deviation, 0.0);
        assert!(report.per_time_deviations.iter().all(|d| *d == 0.0));
    }

    #[test]
    fn perturbed_sample_is_reported_at_its_size() {
        let p = params(0.2, 1.0, 0.5);
        let t = trunc(20);
        let s0 = prepare_initial(&InitialStateSpec::excited_fock(0), t).unwrap();
        let states = direct_propagate(&p, &s0, t, &time_grid(10.0, 11)).unwrap();
        let mut bumped = states.clone();
        let mut amps = bumped[4].amplitudes().clone();
        amps[0] += C64::from(1e-3);
        bumped[4] = SpinFockState::new(amps, t);
        let report = compare_states(&states, &bumped).unwrap();
        let dev = report.max_state_deviation.unwrap();
        assert!((dev - 1e-3).abs() <= 1e-12);
        assert!((report.per_time_deviations[4] - 1e-3).abs() <= 1e-12);
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let p = params(0.2, 1.0, 0.5);
        let t = trunc(10);
        let s0 = prepare_initial(&InitialStateSpec::excited_fock(0), t).unwrap();
        let a = direct_propagate(&p, &s0, t, &[0.0, 1.0]).unwrap();
        let b = direct_propagate(&p, &s0, t, &[0.0]).unwrap();
        assert!(matches!(
            compare_states(&a, &b),
            Err(OracleError::GridMismatch { left: 2, right: 1 })
        ));
    }
}

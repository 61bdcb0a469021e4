//! Browser bindings for the transformation-chain solver.
//!
//! Three operations back the demo page: the branch spectrum as a function of
//! the drive parameters, observable evolution of a configurable initial
//! state, and the rotating-wave model against exact propagation. Everything
//! here only marshals numbers; the physics lives in `iontrap-core` and the
//! plotting lives in the page.

use num_complex::Complex64 as C64;
use wasm_bindgen::prelude::*;

use iontrap_core::dynamics::{
    prepare_initial, run_evolution, time_grid, InitialStateSpec, MotionalSpec,
};
use iontrap_core::fockspace::Truncation;
use iontrap_core::model::{build_resonant, SystemParams};
use iontrap_core::oracle::{propagate, rwa_jcm_evolve};
use iontrap_core::spectral::{branch_eigensystem, Branch};

fn clamp_params(eta: f64, nu: f64, omega: f64) -> SystemParams {
    let eta = eta.clamp(0.0, 2.0);
    let nu = if nu.is_finite() && nu > 0.0 { nu } else { 1.0 };
    let omega = omega.clamp(0.0, 5.0);
    SystemParams::resonant(eta, nu, omega).expect("clamped parameters are valid")
}

fn clamp_levels(n: usize) -> Truncation {
    Truncation::new(n.clamp(8, 120)).expect("clamped dimension is valid")
}

/// Eigenvalues of both atomic branches with convergence flags.
#[wasm_bindgen]
pub struct SpectrumData {
    excited: Vec<f64>,
    ground: Vec<f64>,
    excited_converged: Vec<u8>,
    ground_converged: Vec<u8>,
}

#[wasm_bindgen]
impl SpectrumData {
    /// Solve both branch eigenproblems at the given parameters.
    #[wasm_bindgen(constructor)]
    pub fn new(eta: f64, nu: f64, omega: f64, n: usize) -> SpectrumData {
        let p = clamp_params(eta, nu, omega);
        let t = clamp_levels(n);
        let solve = |branch: Branch| {
            branch_eigensystem(branch, &p, t).expect("resonant parameters cannot fail")
        };
        let exc = solve(Branch::Excited);
        let gnd = solve(Branch::Ground);
        SpectrumData {
            excited: exc.iter().map(|pair| pair.eigenvalue).collect(),
            ground: gnd.iter().map(|pair| pair.eigenvalue).collect(),
            excited_converged: exc.iter().map(|pair| pair.converged as u8).collect(),
            ground_converged: gnd.iter().map(|pair| pair.converged as u8).collect(),
        }
    }

    #[wasm_bindgen(getter)]
    pub fn excited(&self) -> Vec<f64> {
        self.excited.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ground(&self) -> Vec<f64> {
        self.ground.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn excited_converged(&self) -> Vec<u8> {
        self.excited_converged.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ground_converged(&self) -> Vec<u8> {
        self.ground_converged.clone()
    }
}

/// Sampled observables of one evolution run.
#[wasm_bindgen]
pub struct EvolutionData {
    times: Vec<f64>,
    p_excited: Vec<f64>,
    inversion: Vec<f64>,
    mean_n: Vec<f64>,
    completeness_defect: f64,
}

#[wasm_bindgen]
impl EvolutionData {
    /// Evolve through the eigenbasis pipeline.
    ///
    /// `initial` selects the state: 0 is the displaced antisymmetric
    /// superposition, 1 is `|e>|0>`, 2 is `|g>` with a coherent state of
    /// amplitude `alpha`.
    #[wasm_bindgen(constructor)]
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        eta: f64,
        nu: f64,
        omega: f64,
        n: usize,
        t_max: f64,
        samples: usize,
        initial: u8,
        alpha: f64,
    ) -> Result<EvolutionData, JsValue> {
        let p = clamp_params(eta, nu, omega);
        let t = clamp_levels(n);
        let spec = match initial {
            1 => InitialStateSpec::excited_fock(0),
            2 => InitialStateSpec::new(
                MotionalSpec::Coherent(C64::from(alpha.clamp(-3.0, 3.0))),
                (C64::ZERO, C64::ONE),
            )
            .expect("atomic part is normalized"),
            _ => InitialStateSpec::antisymmetric_coherent(p.beta()),
        };
        let grid = time_grid(t_max.clamp(1.0, 500.0), samples.clamp(16, 4000));
        let ts =
            run_evolution(&p, &spec, t, &grid).map_err(|e| JsValue::from_str(&e.to_string()))?;
        Ok(EvolutionData {
            times: ts.times,
            p_excited: ts.p_excited,
            inversion: ts.inversion,
            mean_n: ts.mean_n,
            completeness_defect: ts.completeness_defect,
        })
    }

    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn p_excited(&self) -> Vec<f64> {
        self.p_excited.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn inversion(&self) -> Vec<f64> {
        self.inversion.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn mean_n(&self) -> Vec<f64> {
        self.mean_n.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn completeness_defect(&self) -> f64 {
        self.completeness_defect
    }
}

/// Excited-state population from the rotating-wave model next to exact
/// propagation of the resonant form, starting from `|e>|0>`.
#[wasm_bindgen]
pub struct RwaComparisonData {
    times: Vec<f64>,
    p_exact: Vec<f64>,
    p_rwa: Vec<f64>,
    max_deviation: f64,
}

#[wasm_bindgen]
impl RwaComparisonData {
    #[wasm_bindgen(constructor)]
    pub fn new(
        eta: f64,
        nu: f64,
        omega: f64,
        n: usize,
        periods: f64,
        samples: usize,
    ) -> Result<RwaComparisonData, JsValue> {
        let p = clamp_params(eta.max(1e-3), nu, omega.max(1e-3));
        let t = clamp_levels(n);
        let horizon = periods.clamp(0.5, 10.0) * std::f64::consts::PI / p.coupling();
        let grid = time_grid(horizon, samples.clamp(16, 4000));
        let s0 =
            prepare_initial(&InitialStateSpec::excited_fock(0), t).expect("level 0 always exists");
        let err = |e: iontrap_core::oracle::OracleError| JsValue::from_str(&e.to_string());
        let rwa = rwa_jcm_evolve(&p, &s0, t, &grid).map_err(err)?;
        let resonant = build_resonant(&p, t).map_err(|e| JsValue::from_str(&e.to_string()))?;
        let exact = propagate(&resonant, &s0, &grid).map_err(err)?;

        let population = |states: &[iontrap_core::SpinFockState]| -> Vec<f64> {
            states
                .iter()
                .map(|s| iontrap_core::dynamics::observables(s).p_excited)
                .collect()
        };
        let p_exact = population(&exact);
        let p_rwa = population(&rwa);
        let max_deviation = p_exact
            .iter()
            .zip(&p_rwa)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        Ok(RwaComparisonData {
            times: grid,
            p_exact,
            p_rwa,
            max_deviation,
        })
    }

    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn p_exact(&self) -> Vec<f64> {
        self.p_exact.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn p_rwa(&self) -> Vec<f64> {
        self.p_rwa.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn max_deviation(&self) -> f64 {
        self.max_deviation
    }
}

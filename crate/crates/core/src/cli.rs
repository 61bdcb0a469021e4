//! Configuration parsing, result serialization, and the command surface.
//!
//! A run is described by a single JSON object; flags only choose the config
//! file, override the mode, and set verbosity, so the config file is the
//! complete, reproducible record of a run. Schema (`[re, im]` encodes a
//! complex number):
//!
//! ```json
//! {
//!   "eta": 0.2,            // required; Lamb-Dicke parameter, >= 0
//!   "nu": 1.0,             // required; trap frequency, > 0
//!   "omega": 0.5,          // required; drive strength, >= 0
//!   "t_max": 50.0,         // required; grid end in units of 1/nu, > 0
//!   "delta": 0.0,          // optional; must be 0 for every mode
//!   "n": 60,               // optional; Fock levels kept, >= 8
//!   "samples": 500,        // optional; grid points, >= 2
//!   "mode": "evolve",      // optional; spectrum | evolve | validate | compare
//!   "initial": {           // optional; default: coherent(beta) x (|g>-|e>)/sqrt 2
//!     "motional": { "coherent": [0.0, -0.1] },   // or { "fock": 3 }
//!     "atomic": [[-0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]
//!   },
//!   "format": "csv",       // optional; csv | json
//!   "output": "out.csv"    // optional; stdout when omitted
//! }
//! ```
//!
//! Unknown keys are rejected. CSV numbers carry 12 significant digits;
//! identical configs produce byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{
    self, run_evolution, solve_eigensystem, spectral_propagate, time_grid, FrameDirection,
    InitialStateSpec, MotionalSpec, TimeSeries,
};
use crate::fockspace::Truncation;
use crate::linalg;
use crate::model::{
    self, build_diagonalizable, build_ion_hamiltonian, build_resonant, chain_guard_band, conjugate,
    transform_chain, SystemParams,
};
use crate::oracle::{self, compare_states, ComparisonReport};
use crate::spectral::{self, verify_recursion, RecursionCheck};
use crate::Error as PipelineError;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error at `{path}`: {message}")]
    Syntax { path: String, message: String },
    #[error("config key `{key}`: {message}")]
    Invalid { key: &'static str, message: String },
    #[error("config key `delta`: out-of-scope detuning {0}; every mode requires delta = 0")]
    Detuning(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Spectrum,
    #[default]
    Evolve,
    Validate,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    eta: f64,
    nu: f64,
    omega: f64,
    t_max: f64,
    #[serde(default)]
    delta: f64,
    #[serde(default = "default_levels")]
    n: usize,
    #[serde(default = "default_samples")]
    samples: usize,
    #[serde(default)]
    mode: Mode,
    #[serde(default)]
    initial: Option<InitialStateWire>,
    #[serde(default)]
    format: OutputFormat,
    #[serde(default)]
    output: Option<PathBuf>,
}

fn default_levels() -> usize {
    60
}

fn default_samples() -> usize {
    500
}

/// Wire form of an initial state: complex numbers as `[re, im]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialStateWire {
    pub motional: MotionalWire,
    pub atomic: [[f64; 2]; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum MotionalWire {
    Coherent([f64; 2]),
    Fock(usize),
}

/// Fully validated description of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: SystemParams,
    pub truncation: Truncation,
    pub initial: InitialStateSpec,
    pub t_max: f64,
    pub samples: usize,
    pub mode: Mode,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

/// Parse and validate a JSON config document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawConfig =
        serde_path_to_error::deserialize(&mut de).map_err(|e| ConfigError::Syntax {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;

    let params = SystemParams::new(raw.eta, raw.nu, raw.omega, raw.delta).map_err(|e| {
        let key = match &e {
            model::ModelError::InvalidParameter { name, .. } => *name,
            _ => "params",
        };
        ConfigError::Invalid {
            key,
            message: e.to_string(),
        }
    })?;
    if raw.delta != 0.0 {
        return Err(ConfigError::Detuning(raw.delta));
    }
    if raw.n < 8 {
        return Err(ConfigError::Invalid {
            key: "n",
            message: format!("need at least 8 Fock levels, got {}", raw.n),
        });
    }
    let truncation = Truncation::new(raw.n).map_err(|e| ConfigError::Invalid {
        key: "n",
        message: e.to_string(),
    })?;
    if raw.t_max.is_nan() || raw.t_max <= 0.0 {
        return Err(ConfigError::Invalid {
            key: "t_max",
            message: format!("must be positive, got {}", raw.t_max),
        });
    }
    if raw.samples < 2 {
        return Err(ConfigError::Invalid {
            key: "samples",
            message: format!("need at least 2 samples, got {}", raw.samples),
        });
    }
    let initial = match raw.initial {
        None => InitialStateSpec::antisymmetric_coherent(params.beta()),
        Some(raw_init) => {
            let motional = match raw_init.motional {
                MotionalWire::Coherent([re, im]) => MotionalSpec::Coherent(C64::new(re, im)),
                MotionalWire::Fock(n) => {
                    if n >= raw.n {
                        return Err(ConfigError::Invalid {
                            key: "initial.motional.fock",
                            message: format!("level {n} outside the {} kept levels", raw.n),
                        });
                    }
                    MotionalSpec::Fock(n)
                }
            };
            let atomic = (
                C64::new(raw_init.atomic[0][0], raw_init.atomic[0][1]),
                C64::new(raw_init.atomic[1][0], raw_init.atomic[1][1]),
            );
            InitialStateSpec::new(motional, atomic).map_err(|e| ConfigError::Invalid {
                key: "initial.atomic",
                message: e.to_string(),
            })?
        }
    };
    Ok(RunConfig {
        params,
        truncation,
        initial,
        t_max: raw.t_max,
        samples: raw.samples,
        mode: raw.mode,
        format: raw.format,
        output: raw.output,
    })
}

/// Resolved configuration echoed into every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub artifact_version: &'static str,
    pub eta: f64,
    pub nu: f64,
    pub omega: f64,
    pub delta: f64,
    pub n: usize,
    pub t_max: f64,
    pub samples: usize,
    pub mode: Mode,
    pub format: OutputFormat,
    pub initial: InitialStateWire,
}

impl RunManifest {
    pub fn new(config: &RunConfig) -> Self {
        let (ce, cg) = config.initial.atomic();
        let motional = match config.initial.motional() {
            MotionalSpec::Coherent(a) => MotionalWire::Coherent([a.re, a.im]),
            MotionalSpec::Fock(n) => MotionalWire::Fock(n),
        };
        RunManifest {
            artifact_version: env!("CARGO_PKG_VERSION"),
            eta: config.params.eta(),
            nu: config.params.nu(),
            omega: config.params.omega(),
            delta: config.params.delta(),
            n: config.truncation.dim(),
            t_max: config.t_max,
            samples: config.samples,
            mode: config.mode,
            format: config.format,
            initial: InitialStateWire {
                motional,
                atomic: [[ce.re, ce.im], [cg.re, cg.im]],
            },
        }
    }
}

/// 12 significant digits, the fixed text precision of all CSV output.
fn sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Write a time series as CSV (`t,p_excited,inversion,mean_n,norm_defect`)
/// or as JSON carrying the run manifest.
pub fn write_timeseries(
    ts: &TimeSeries,
    manifest: &RunManifest,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "t,p_excited,inversion,mean_n,norm_defect")?;
            for k in 0..ts.len() {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    sig(ts.times[k]),
                    sig(ts.p_excited[k]),
                    sig(ts.inversion[k]),
                    sig(ts.mean_n[k]),
                    sig(ts.norm_defect[k]),
                )?;
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct JsonSeries<'a> {
                run_manifest: &'a RunManifest,
                completeness_defect: f64,
                t: &'a [f64],
                p_excited: &'a [f64],
                inversion: &'a [f64],
                mean_n: &'a [f64],
                norm_defect: &'a [f64],
            }
            serde_json::to_writer_pretty(
                &mut *out,
                &JsonSeries {
                    run_manifest: manifest,
                    completeness_defect: ts.completeness_defect,
                    t: &ts.times,
                    p_excited: &ts.p_excited,
                    inversion: &ts.inversion,
                    mean_n: &ts.mean_n,
                    norm_defect: &ts.norm_defect,
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct SpectrumRow {
    branch: &'static str,
    index: usize,
    eigenvalue: f64,
    residual: f64,
    converged: bool,
}

/// Write the eigenvalue table of both branches.
pub fn write_spectrum(
    config: &RunConfig,
    manifest: &RunManifest,
    out: &mut dyn Write,
) -> Result<(), PipelineError> {
    let eigen = solve_eigensystem(&config.params, config.truncation)?;
    let mut rows = Vec::new();
    for (label, pairs) in [("excited", &eigen.excited), ("ground", &eigen.ground)] {
        for (index, pair) in pairs.iter().enumerate() {
            rows.push(SpectrumRow {
                branch: label,
                index,
                eigenvalue: pair.eigenvalue,
                residual: pair.residual,
                converged: pair.converged,
            });
        }
    }
    match config.format {
        OutputFormat::Csv => {
            writeln!(out, "branch,index,eigenvalue,residual,converged")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.branch,
                    r.index,
                    sig(r.eigenvalue),
                    sig(r.residual),
                    r.converged
                )?;
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct JsonSpectrum<'a> {
                run_manifest: &'a RunManifest,
                levels: Vec<SpectrumRow>,
            }
            serde_json::to_writer_pretty(
                &mut *out,
                &JsonSpectrum {
                    run_manifest: manifest,
                    levels: rows,
                },
            )
            .map_err(io::Error::from)
            .map_err(PipelineError::Io)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// One validation check with its measured value and fixed threshold.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

fn check(name: &'static str, value: f64, threshold: f64) -> CheckResult {
    CheckResult {
        name,
        value,
        threshold,
        passed: value <= threshold,
    }
}

/// Reported but never gating: the overlap of the transformed demonstration
/// state with `|e>|0>`, tracking how far the chain's image sits from a bare
/// excited vacuum.
#[derive(Debug, Clone, Serialize)]
pub struct OverlapDiagnostic {
    pub eta: f64,
    pub overlap_with_excited_vacuum: f64,
    pub deviation_from_unity: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub diagnostics: Vec<OverlapDiagnostic>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Run the full invariant suite at the configured parameters.
pub fn run_validation(config: &RunConfig) -> Result<ValidationReport, PipelineError> {
    let p = &config.params;
    let t = config.truncation;
    let n = t.dim();
    let mut checks = Vec::new();

    // unitarity of the full chain on its guarded block
    let chain = transform_chain(p, t);
    checks.push(check(
        "chain_unitarity",
        chain.guarded_unitarity_defect(t.guard_band(p.eta())),
        1e-10,
    ));

    // closed form versus explicit conjugation, scalar shift reinstated
    let h = build_ion_hamiltonian(p, t);
    let conjugated = conjugate(&h, &chain)?;
    let closed = build_diagonalizable(p, t)?;
    let shifted = crate::fockspace::Operator::from_matrix(
        closed.matrix() + linalg::CMat::identity(2 * n, 2 * n) * C64::from(p.constant_shift()),
        t,
    );
    checks.push(check(
        "conjugation_vs_closed_form",
        conjugated.guarded_max_dev(&shifted, chain_guard_band(p, t)),
        1e-8,
    ));

    // the three finite-matrix steps are exact identities
    let resonant = build_resonant(p, t)?;
    let (mixer, marker) = model::atomic_transforms(t);
    let step1 = conjugate(&resonant, &mixer)?;
    let step2 = conjugate(&step1, &marker)?;
    let step3 = conjugate(&step2, &mixer)?;
    checks.push(check(
        "intermediate_steps",
        step3.guarded_max_dev(&closed, 0),
        1e-12,
    ));

    // spectra agree between branch solves, the block form, and the resonant form
    let eigen = solve_eigensystem(p, t)?;
    let full = linalg::eigh(closed.matrix());
    let resonant_eig = linalg::eigh(resonant.matrix());
    let mut union: Vec<f64> = eigen
        .excited
        .iter()
        .chain(eigen.ground.iter())
        .map(|pair| pair.eigenvalue)
        .collect();
    union.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let vs_full = union
        .iter()
        .zip(full.values.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let vs_resonant = union
        .iter()
        .zip(resonant_eig.values.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(check("branch_vs_block_spectrum", vs_full, 1e-10));
    checks.push(check("branch_vs_resonant_spectrum", vs_resonant, 1e-8));

    // recursion cross-check over every well-seeded converged pair
    let mut recursion_worst: f64 = 0.0;
    if p.coupling() > 0.0 {
        for pair in eigen.excited.iter().chain(eigen.ground.iter()) {
            if !pair.converged || pair.coeffs[0].norm() < spectral::SUPPORT_FLOOR {
                continue;
            }
            if let RecursionCheck::Deviation { max_dev, .. } = verify_recursion(pair, p, t) {
                recursion_worst = recursion_worst.max(max_dev);
            }
        }
    }
    checks.push(check("recursion_fidelity", recursion_worst, 1e-6));

    // spectral pipeline against exact propagation, states compared with the
    // scalar phase reinstated
    let grid = time_grid(config.t_max, config.samples.min(200));
    let spectral_states = spectral_propagate(p, &config.initial, t, &grid)?;
    let s0 = dynamics::prepare_initial(&config.initial, t)?;
    let direct = oracle::direct_propagate(p, &s0, t, &grid)?;
    let report = compare_states(&spectral_states, &direct)?;
    checks.push(check(
        "spectral_vs_direct_states",
        report.max_state_deviation.unwrap_or(f64::INFINITY),
        1e-6,
    ));

    // energy and norm are conserved along the exact propagation
    let mut energy_drift: f64 = 0.0;
    let mut norm_drift: f64 = 0.0;
    let e0 = {
        let hv = h.apply(direct[0].amplitudes());
        direct[0].amplitudes().dotc(&hv).re
    };
    for state in &direct {
        let hv = h.apply(state.amplitudes());
        let e = state.amplitudes().dotc(&hv).re;
        energy_drift = energy_drift.max((e - e0).abs());
        norm_drift = norm_drift.max((state.norm() - 1.0).abs());
    }
    checks.push(check("energy_conservation", energy_drift, 1e-8));
    checks.push(check("propagation_norm", norm_drift, 1e-10));

    // transformed-state overlap diagnostic at the configured and the two
    // bracketing coupling strengths
    let mut diagnostics = Vec::new();
    for eta in [0.05, p.eta(), 0.5] {
        let pd = SystemParams::resonant(eta, p.nu(), p.omega())?;
        let demo =
            dynamics::prepare_initial(&InitialStateSpec::antisymmetric_coherent(pd.beta()), t)?;
        let primed = dynamics::frame_transform(&demo, &pd, t, FrameDirection::ToPrimed)?;
        let overlap = primed.amplitudes()[0].norm_sqr();
        diagnostics.push(OverlapDiagnostic {
            eta,
            overlap_with_excited_vacuum: overlap,
            deviation_from_unity: 1.0 - overlap,
        });
    }

    Ok(ValidationReport {
        checks,
        diagnostics,
    })
}

pub fn write_validation(
    report: &ValidationReport,
    manifest: &RunManifest,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "check,value,threshold,passed")?;
            for c in &report.checks {
                writeln!(
                    out,
                    "{},{},{},{}",
                    c.name,
                    sig(c.value),
                    sig(c.threshold),
                    c.passed
                )?;
            }
            for d in &report.diagnostics {
                writeln!(
                    out,
                    "overlap_diagnostic_eta_{},{},{},diagnostic",
                    d.eta,
                    sig(d.overlap_with_excited_vacuum),
                    sig(d.deviation_from_unity),
                )?;
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct JsonValidation<'a> {
                run_manifest: &'a RunManifest,
                #[serde(flatten)]
                report: &'a ValidationReport,
                all_passed: bool,
            }
            serde_json::to_writer_pretty(
                &mut *out,
                &JsonValidation {
                    run_manifest: manifest,
                    report,
                    all_passed: report.all_passed(),
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedComparison {
    pub comparison: &'static str,
    pub max_state_deviation: Option<f64>,
    pub max_observable_deviation: f64,
}

/// Spectral pipeline, exact propagation, and the rotating-wave model against
/// each other on the configured run.
pub fn run_comparisons(
    config: &RunConfig,
) -> Result<(Vec<NamedComparison>, Vec<ComparisonReport>), PipelineError> {
    let p = &config.params;
    let t = config.truncation;
    let grid = time_grid(config.t_max, config.samples);

    let spectral_states = spectral_propagate(p, &config.initial, t, &grid)?;
    let s0 = dynamics::prepare_initial(&config.initial, t)?;
    let direct = oracle::direct_propagate(p, &s0, t, &grid)?;
    let spectral_vs_direct = compare_states(&spectral_states, &direct)?;

    // the rotating-wave model lives in the transformed frame, so its
    // reference is exact propagation of the resonant form from the same state
    let resonant = build_resonant(p, t)?;
    let resonant_states = oracle::propagate(&resonant, &s0, &grid)?;
    let rwa_states = oracle::rwa_jcm_evolve(p, &s0, t, &grid)?;
    let rwa_vs_resonant = compare_states(&rwa_states, &resonant_states)?;

    let named = vec![
        NamedComparison {
            comparison: "spectral_vs_direct",
            max_state_deviation: spectral_vs_direct.max_state_deviation,
            max_observable_deviation: spectral_vs_direct.max_observable_deviation,
        },
        NamedComparison {
            comparison: "rwa_vs_resonant",
            max_state_deviation: rwa_vs_resonant.max_state_deviation,
            max_observable_deviation: rwa_vs_resonant.max_observable_deviation,
        },
    ];
    Ok((named, vec![spectral_vs_direct, rwa_vs_resonant]))
}

pub fn write_comparisons(
    named: &[NamedComparison],
    reports: &[ComparisonReport],
    manifest: &RunManifest,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(
                out,
                "comparison,max_state_deviation,max_observable_deviation"
            )?;
            for c in named {
                let state = c
                    .max_state_deviation
                    .map(sig)
                    .unwrap_or_else(|| "".to_string());
                writeln!(
                    out,
                    "{},{},{}",
                    c.comparison,
                    state,
                    sig(c.max_observable_deviation)
                )?;
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct JsonComparison<'a> {
                run_manifest: &'a RunManifest,
                summary: &'a [NamedComparison],
                per_time_deviations: Vec<&'a [f64]>,
            }
            serde_json::to_writer_pretty(
                &mut *out,
                &JsonComparison {
                    run_manifest: manifest,
                    summary: named,
                    per_time_deviations: reports
                        .iter()
                        .map(|r| r.per_time_deviations.as_slice())
                        .collect(),
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// What a completed dispatch means for the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    Success,
    ValidationFailed,
}

/// Execute the configured mode, writing to the configured path or stdout.
///
/// CSV carries no room for metadata, so a file-backed CSV run also writes
/// `<output>.manifest.json` next to it; JSON output embeds the manifest.
pub fn dispatch(config: &RunConfig) -> Result<RunOutcome, PipelineError> {
    let mut buffer: Vec<u8> = Vec::new();
    let outcome = dispatch_to(config, &mut buffer)?;
    match &config.output {
        Some(path) => {
            fs::write(path, &buffer).map_err(PipelineError::Io)?;
            if config.format == OutputFormat::Csv {
                let manifest = serde_json::to_vec_pretty(&RunManifest::new(config))
                    .map_err(io::Error::from)
                    .map_err(PipelineError::Io)?;
                let sidecar = format!("{}.manifest.json", path.display());
                fs::write(sidecar, manifest).map_err(PipelineError::Io)?;
            }
        }
        None => io::stdout().write_all(&buffer).map_err(PipelineError::Io)?,
    }
    Ok(outcome)
}

/// Dispatch with an explicit sink; output appears only on success.
pub fn dispatch_to(config: &RunConfig, out: &mut dyn Write) -> Result<RunOutcome, PipelineError> {
    let manifest = RunManifest::new(config);
    match config.mode {
        Mode::Spectrum => {
            write_spectrum(config, &manifest, out)?;
            Ok(RunOutcome::Success)
        }
        Mode::Evolve => {
            let grid = time_grid(config.t_max, config.samples);
            let ts = run_evolution(&config.params, &config.initial, config.truncation, &grid)?;
            write_timeseries(&ts, &manifest, config.format, out).map_err(PipelineError::Io)?;
            Ok(RunOutcome::Success)
        }
        Mode::Validate => {
            let report = run_validation(config)?;
            write_validation(&report, &manifest, config.format, out).map_err(PipelineError::Io)?;
            if report.all_passed() {
                Ok(RunOutcome::Success)
            } else {
                Ok(RunOutcome::ValidationFailed)
            }
        }
        Mode::Compare => {
            let (named, reports) = run_comparisons(config)?;
            write_comparisons(&named, &reports, &manifest, config.format, out)
                .map_err(PipelineError::Io)?;
            Ok(RunOutcome::Success)
        }
    }
}

/// Render a human-readable summary of a validation report.
pub fn format_validation_summary(report: &ValidationReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let _ = writeln!(
            s,
            "{:32} {:>12.3e} <= {:>8.1e}  {}",
            c.name,
            c.value,
            c.threshold,
            if c.passed { "PASS" } else { "FAIL" }
        );
    }
    for d in &report.diagnostics {
        let _ = writeln!(
            s,
            "overlap(eta={:.2}) with |e>|0>     {:.12}  (1 - overlap = {:.3e})",
            d.eta, d.overlap_with_excited_vacuum, d.deviation_from_unity
        );
    }
    s
}

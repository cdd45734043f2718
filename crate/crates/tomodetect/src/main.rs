//! Command-line front end: simulation, detection, sweeps, purity
//! searches, and coincidence-data analysis. Angles are degrees on the
//! command line (library-internal everything is radians); CSV output uses
//! nine significant digits; every command accepting a seed is
//! bit-reproducible.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use tomodetect::error_models::{MeasurementError, MisalignmentMatrix, QubitError};
use tomodetect::linalg::C64;
use tomodetect::purity_search::{
    find_p_min, p_min_single_closed_form, probe_state_search, purity_grid, SearchConfig,
};
use tomodetect::states::{
    apply_white_noise, fidelity_to_pure, noise_for_purity, qdot_state, DensityMatrix, QDotParams,
};
use tomodetect::stats::{
    analyze_events, detect, read_events_csv, simulate_subexperiment_distances,
    summarize_histogram, Verdict,
};
use tomodetect::tomography::{sample_record, EstimatePair, TomographyRecord};

#[derive(Parser)]
#[command(
    name = "tomodetect",
    version,
    about = "Detect systematic measurement errors in quantum state tomography"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a Pauli tomography experiment and write a counts file.
    Simulate(SimulateArgs),
    /// Run the systematic-error test on a counts file (exit code 2 when
    /// an error is detected, 0 otherwise).
    Detect(DetectArgs),
    /// Sweep an error-scenario angle and tabulate the distance D.
    Sweep(SweepArgs),
    /// Minimal necessary purity for a given error scenario.
    PurityMin(PurityMinArgs),
    /// Split a coincidence-event stream into sub-experiments and
    /// summarize the distance histogram.
    Analyze(AnalyzeArgs),
    /// Fidelity of both estimators against a reference state.
    Fidelity(FidelityArgs),
    /// Emit the quantum-dot source density matrix as JSON.
    QdotState(QdotArgs),
}

/// Optional JSON manifest mirroring the command-line flags; explicit
/// flags win on conflict.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Manifest {
    state: Option<String>,
    fss_uev: Option<f64>,
    kappa: Option<f64>,
    target_purity: Option<f64>,
    scenario: Option<PathBuf>,
    qwp_offset_deg: Option<f64>,
    qubit: Option<usize>,
    shots: Option<u64>,
    seed: Option<u64>,
    tau: Option<f64>,
    confidence: Option<f64>,
    out: Option<PathBuf>,
}

impl Manifest {
    fn load(path: Option<&PathBuf>) -> Result<Manifest, String> {
        match path {
            None => Ok(Manifest::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("cannot read manifest {}: {e}", p.display()))?;
                serde_json::from_str(&text).map_err(|e| format!("manifest {}: {e}", p.display()))
            }
        }
    }
}

/// Flags shared by every command that needs an input state.
#[derive(Args, Clone)]
struct StateArgs {
    /// State source: bell | istate | qdot | file:<density.json>.
    #[arg(long)]
    state: Option<String>,
    /// Fine-structure splitting in µeV (qdot source).
    #[arg(long)]
    fss_uev: Option<f64>,
    /// Correlated-pair fraction κ (qdot source).
    #[arg(long)]
    kappa: Option<f64>,
    /// Depolarize the source to this purity before measuring.
    #[arg(long)]
    target_purity: Option<f64>,
}

impl StateArgs {
    fn resolve(&self, manifest: &Manifest) -> Result<DensityMatrix, String> {
        let name = self
            .state
            .clone()
            .or_else(|| manifest.state.clone())
            .unwrap_or_else(|| "bell".into());
        let rho = if let Some(path) = name.strip_prefix("file:") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read state file {path}: {e}"))?;
            serde_json::from_str::<DensityMatrix>(&text).map_err(|e| e.to_string())?
        } else {
            match name.as_str() {
                "bell" => DensityMatrix::bell_phi_plus(),
                "istate" => DensityMatrix::y_eigenstate(),
                "qdot" => {
                    let mut params = QDotParams {
                        fss_uev: self.fss_uev.or(manifest.fss_uev).unwrap_or(0.0),
                        ..Default::default()
                    };
                    if let Some(kappa) = self.kappa.or(manifest.kappa) {
                        params.kappa = kappa;
                    }
                    // With a purity target and no explicit splitting,
                    // solve for the splitting instead of depolarizing.
                    if let (Some(target), None) =
                        (self.target_purity.or(manifest.target_purity), self.fss_uev)
                    {
                        params = QDotParams::for_purity(target, params.kappa)
                            .map_err(|e| e.to_string())?;
                    }
                    qdot_state(&params).map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown state source '{other}'")),
            }
        };
        match self.target_purity.or(manifest.target_purity) {
            Some(target) if rho.purity() > target + 1e-9 => {
                let eps = noise_for_purity(&rho, target).map_err(|e| e.to_string())?;
                apply_white_noise(&rho, eps).map_err(|e| e.to_string())
            }
            _ => Ok(rho),
        }
    }
}

/// Flags shared by every command that takes an error scenario.
#[derive(Args, Clone)]
struct ScenarioArgs {
    /// Scenario JSON file (single entry or array of per-qubit entries).
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Shorthand: quarter-wave-plate offset in degrees on --qubit.
    #[arg(long)]
    qwp_offset_deg: Option<f64>,
    /// Shorthand: rotate only the Z-basis quarter-wave plate (degrees).
    #[arg(long)]
    z_rotation_deg: Option<f64>,
    /// Shorthand: wave-plate swap on --qubit.
    #[arg(long, default_value_t = false)]
    swap: bool,
    /// Shorthand: quarter-wave-plate fast-axis flip on --qubit.
    #[arg(long, default_value_t = false)]
    fast_axis_flip: bool,
    /// Qubit the shorthand scenario applies to.
    #[arg(long)]
    qubit: Option<usize>,
}

impl ScenarioArgs {
    fn resolve(
        &self,
        manifest: &Manifest,
        num_qubits: usize,
    ) -> Result<Option<MeasurementError>, String> {
        let qubit = self.qubit.or(manifest.qubit).unwrap_or(0);
        let inline: Option<QubitError> =
            if let Some(deg) = self.qwp_offset_deg.or(manifest.qwp_offset_deg) {
                Some(QubitError::WavePlateOffset {
                    delta: deg.to_radians(),
                })
            } else if let Some(deg) = self.z_rotation_deg {
                Some(QubitError::Misalignment(
                    MisalignmentMatrix::z_basis_rotation(deg.to_radians()),
                ))
            } else if self.swap {
                Some(QubitError::WavePlateSwap)
            } else if self.fast_axis_flip {
                Some(QubitError::FastAxisFlip)
            } else {
                None
            };
        if let Some(error) = inline {
            return Ok(Some(
                MeasurementError::single_qubit(num_qubits, qubit, error)
                    .map_err(|e| e.to_string())?,
            ));
        }
        match self.scenario.clone().or_else(|| manifest.scenario.clone()) {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read scenario {}: {e}", path.display()))?;
                Ok(Some(
                    MeasurementError::from_scenario_json(&text, num_qubits)
                        .map_err(|e| e.to_string())?,
                ))
            }
            None => Ok(None),
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Shots per measurement setting.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, env = "TOMODETECT_SEED")]
    seed: Option<u64>,
    /// Output counts file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    /// Counts JSON file produced by `simulate` (or laboratory data).
    #[arg(long)]
    counts: PathBuf,
    /// Distance threshold τ of the Bernstein bound.
    #[arg(long)]
    tau: Option<f64>,
    /// Required confidence level 1 − δ_sta.
    #[arg(long)]
    confidence: Option<f64>,
    /// Report JSON output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFamily {
    /// Constant QWP offset on all settings of --qubit.
    QwpOffset,
    /// Rotation of the Z-basis QWP only.
    ZRotation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    /// Exact probabilities, no shot noise (D_std = 0).
    Analytic,
    /// Sub-experiment ensemble with multinomial shot noise.
    Sampled,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_enum, default_value_t = SweepFamily::QwpOffset)]
    family: SweepFamily,
    /// Qubit carrying the swept error.
    #[arg(long, default_value_t = 0)]
    qubit: usize,
    #[arg(long, default_value_t = 0.0)]
    from_deg: f64,
    #[arg(long, default_value_t = 180.0)]
    to_deg: f64,
    #[arg(long, default_value_t = 10.0)]
    step_deg: f64,
    #[arg(long, value_enum, default_value_t = SweepMode::Analytic)]
    mode: SweepMode,
    /// Sub-experiments per sweep point (sampled mode).
    #[arg(long, default_value_t = 1000)]
    subs: usize,
    /// Coincidence events per sub-experiment and setting (sampled mode).
    #[arg(long, default_value_t = 400)]
    events: u64,
    #[arg(long, env = "TOMODETECT_SEED")]
    seed: Option<u64>,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PurityMode {
    ClosedForm,
    XlSearch,
    Probe,
}

#[derive(Args)]
struct PurityMinArgs {
    #[arg(long, value_enum)]
    mode: PurityMode,
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// General-error angles in degrees (alternative to --scenario).
    #[arg(long)]
    alpha_deg: Option<f64>,
    #[arg(long)]
    beta_deg: Option<f64>,
    #[arg(long)]
    gamma_deg: Option<f64>,
    #[arg(long)]
    delta_deg: Option<f64>,
    /// Restrict the search to separable states (PPT conditions).
    #[arg(long, default_value_t = false)]
    separable: bool,
    /// Qubit count for the probe approximation.
    #[arg(long, default_value_t = 2)]
    qubits: usize,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long, default_value_t = 0.25)]
    grid_from: f64,
    #[arg(long, default_value_t = 1.0)]
    grid_to: f64,
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// Stop the sweep at the first violating purity.
    #[arg(long, default_value_t = false)]
    stop_at_first: bool,
    #[arg(long, env = "TOMODETECT_SEED")]
    seed: Option<u64>,
    /// Result JSON (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-grid-point curve CSV.
    #[arg(long)]
    curve_out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Events CSV: setting_index,outcome_index per coincidence event.
    #[arg(long)]
    events: PathBuf,
    #[arg(long, default_value_t = 1000)]
    subs: usize,
    #[arg(long, default_value_t = 400)]
    events_per_sub: usize,
    #[arg(long, default_value_t = 50)]
    bins: usize,
    /// Histogram summary JSON (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-sub-experiment distances CSV.
    #[arg(long)]
    per_sub_out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct FidelityArgs {
    /// Counts file to estimate from (single-row mode).
    #[arg(long)]
    counts: Option<PathBuf>,
    /// Reference state: bell | file:<density.json>.
    #[arg(long, default_value = "bell")]
    reference: String,
    #[command(flatten)]
    state: StateArgs,
    /// Sweep the Z-basis QWP rotation instead of reading counts.
    #[arg(long, default_value_t = false)]
    sweep: bool,
    #[arg(long, default_value_t = 0.0)]
    from_deg: f64,
    #[arg(long, default_value_t = 90.0)]
    to_deg: f64,
    #[arg(long, default_value_t = 1.0)]
    step_deg: f64,
    #[arg(long, default_value_t = 0)]
    qubit: usize,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct QdotArgs {
    #[arg(long, default_value_t = 0.0)]
    fss_uev: f64,
    #[arg(long, default_value_t = 0.945)]
    kappa: f64,
    #[arg(long, default_value_t = 150.0)]
    tau1_ps: f64,
    #[arg(long, default_value_t = 1.0)]
    tau_ss_us: f64,
    #[arg(long, default_value_t = 1.0)]
    tau_hv_us: f64,
    /// Solve for the splitting that reaches this purity.
    #[arg(long)]
    target_purity: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn fmt9(x: f64) -> String {
    format!("{x:.8e}")
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_counts(path: &Path) -> Result<TomographyRecord, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read counts file {}: {e}", path.display()))?;
    let record: TomographyRecord =
        serde_json::from_str(&text).map_err(|e| format!("counts file {}: {e}", path.display()))?;
    record.validate().map_err(|e| e.to_string())?;
    Ok(record)
}

fn run_simulate(args: SimulateArgs) -> Result<ExitCode, String> {
    let manifest = Manifest::load(args.manifest.as_ref())?;
    let rho = args.state.resolve(&manifest)?;
    let error = args.scenario.resolve(&manifest, rho.num_qubits())?;
    let shots = args.shots.or(manifest.shots).unwrap_or(400);
    let seed = args.seed.or(manifest.seed).unwrap_or(0);
    let record = sample_record(&rho, shots, error.as_ref(), seed).map_err(|e| e.to_string())?;
    let json = serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?;
    write_output(
        args.out.as_deref().or(manifest.out.as_deref()),
        &(json + "\n"),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn run_detect(args: DetectArgs) -> Result<ExitCode, String> {
    let manifest = Manifest::load(args.manifest.as_ref())?;
    let record = read_counts(&args.counts)?;
    let tau = args.tau.or(manifest.tau).unwrap_or(0.25);
    let confidence = args.confidence.or(manifest.confidence).unwrap_or(0.90);
    let report = detect(&record, tau, confidence).map_err(|e| e.to_string())?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    write_output(
        args.out.as_deref().or(manifest.out.as_deref()),
        &(json + "\n"),
    )?;
    Ok(match report.verdict {
        Verdict::SystematicErrorDetected => ExitCode::from(2),
        Verdict::Inconclusive => ExitCode::SUCCESS,
    })
}

fn run_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let manifest = Manifest::load(args.manifest.as_ref())?;
    let rho = args.state.resolve(&manifest)?;
    let seed = args.seed.or(manifest.seed).unwrap_or(0);
    let mut csv = String::from("sweep_deg,d_mean,d_std\n");
    let mut deg = args.from_deg;
    while deg <= args.to_deg + 1e-9 {
        let delta = deg.to_radians();
        let qubit_error = match args.family {
            SweepFamily::QwpOffset => QubitError::WavePlateOffset { delta },
            SweepFamily::ZRotation => {
                QubitError::Misalignment(MisalignmentMatrix::z_basis_rotation(delta))
            }
        };
        let error = MeasurementError::single_qubit(rho.num_qubits(), args.qubit, qubit_error)
            .map_err(|e| e.to_string())?;
        let (mean, std) = match args.mode {
            SweepMode::Analytic => {
                let pair =
                    EstimatePair::analytic(&rho, Some(&error)).map_err(|e| e.to_string())?;
                (pair.distance, 0.0)
            }
            SweepMode::Sampled => {
                let point_seed = seed.wrapping_add((deg * 1000.0).round() as u64);
                let distances = simulate_subexperiment_distances(
                    &rho,
                    Some(&error),
                    args.subs,
                    args.events,
                    point_seed,
                )
                .map_err(|e| e.to_string())?;
                let summary = summarize_histogram(&distances, 50).map_err(|e| e.to_string())?;
                (summary.mean, summary.std)
            }
        };
        csv.push_str(&format!("{},{},{}\n", fmt9(deg), fmt9(mean), fmt9(std)));
        deg += args.step_deg;
    }
    write_output(args.out.as_deref().or(manifest.out.as_deref()), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn run_purity_min(args: PurityMinArgs) -> Result<ExitCode, String> {
    let manifest = Manifest::load(args.manifest.as_ref())?;
    let angles = match (args.alpha_deg, args.beta_deg, args.gamma_deg, args.delta_deg) {
        (None, None, None, None) => None,
        (a, b, g, d) => Some((
            a.unwrap_or(0.0).to_radians(),
            b.unwrap_or(0.0).to_radians(),
            g.unwrap_or(0.0).to_radians(),
            d.unwrap_or(0.0).to_radians(),
        )),
    };
    let mut config = SearchConfig {
        purity_grid: purity_grid(args.grid_from, args.grid_to, args.grid_step),
        stop_at_first_violation: args.stop_at_first,
        ..Default::default()
    };
    if let Some(r) = args.restarts {
        config.restarts = r;
    }
    if let Some(seed) = args.seed.or(manifest.seed) {
        config.seed = seed;
    }

    let scenario_on = |n: usize| -> Result<MeasurementError, String> {
        if let Some((a, b, g, d)) = angles {
            let m = MisalignmentMatrix::general(a, b, g, d);
            return MeasurementError::single_qubit(
                n,
                args.scenario.qubit.unwrap_or(0),
                QubitError::Misalignment(m),
            )
            .map_err(|e| e.to_string());
        }
        args.scenario
            .resolve(&manifest, n)?
            .ok_or_else(|| "purity-min needs an error scenario".to_string())
    };

    let (result_json, curve_csv) = match args.mode {
        PurityMode::ClosedForm => {
            let error = scenario_on(1)?;
            let m = error.qubit(0).misalignment();
            let p_min = p_min_single_closed_form(&m);
            (
                json!({
                    "mode": "closed-form",
                    "p_min": p_min,
                    "sigma_max": m.mat3().singular_values()[0],
                    "seed": config.seed,
                }),
                None,
            )
        }
        PurityMode::XlSearch => {
            let error = scenario_on(2)?;
            let result = find_p_min(&error, args.separable, &config).map_err(|e| e.to_string())?;
            let mut csv =
                String::from("purity,x1,x2,x3,separable,alpha_deg,beta_deg,gamma_deg,delta_deg\n");
            let angle_cols = match angles {
                Some((a, b, g, d)) => format!(
                    "{},{},{},{}",
                    fmt9(a.to_degrees()),
                    fmt9(b.to_degrees()),
                    fmt9(g.to_degrees()),
                    fmt9(d.to_degrees())
                ),
                None => ",,,".to_string(),
            };
            for point in &result.grid {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt9(point.purity),
                    fmt9(point.x[0]),
                    fmt9(point.x[1]),
                    fmt9(point.x[2]),
                    args.separable,
                    angle_cols
                ));
            }
            (
                json!({
                    "mode": "xl-search",
                    "separable": args.separable,
                    "p_min": result.p_min,
                    "binding_constraint": result.binding_constraint,
                    "seed": config.seed,
                }),
                Some(csv),
            )
        }
        PurityMode::Probe => {
            let error = scenario_on(args.qubits)?;
            let result = probe_state_search(&error, &config).map_err(|e| e.to_string())?;
            let mut csv = String::from("purity,min_eig\n");
            for (purity, min_eig) in &result.min_eig_curve {
                csv.push_str(&format!("{},{}\n", fmt9(*purity), fmt9(*min_eig)));
            }
            (
                json!({
                    "mode": "probe",
                    "qubits": args.qubits,
                    "p_min_appr": result.p_min_appr,
                    "negativity": result.negativity,
                    "probe": result.probe,
                    "seed": config.seed,
                }),
                Some(csv),
            )
        }
    };

    let json = serde_json::to_string_pretty(&result_json).map_err(|e| e.to_string())?;
    write_output(
        args.out.as_deref().or(manifest.out.as_deref()),
        &(json + "\n"),
    )?;
    if let (Some(path), Some(csv)) = (args.curve_out.as_deref(), curve_csv) {
        write_output(Some(path), &csv)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_analyze(args: AnalyzeArgs) -> Result<ExitCode, String> {
    let _ = Manifest::load(args.manifest.as_ref())?;
    let text = std::fs::read_to_string(&args.events)
        .map_err(|e| format!("cannot read events file {}: {e}", args.events.display()))?;
    let events = read_events_csv(&text).map_err(|e| e.to_string())?;
    let (summary, distances) =
        analyze_events(&events, args.subs, args.events_per_sub, args.bins)
            .map_err(|e| e.to_string())?;
    let json = serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?;
    write_output(args.out.as_deref(), &(json + "\n"))?;
    if let Some(path) = args.per_sub_out.as_deref() {
        let mut csv = String::from("sub_experiment,distance\n");
        for (i, d) in distances.iter().enumerate() {
            csv.push_str(&format!("{i},{}\n", fmt9(*d)));
        }
        write_output(Some(path), &csv)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn reference_amplitudes(reference: &str) -> Result<Vec<C64>, String> {
    if let Some(path) = reference.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read reference state {path}: {e}"))?;
        let rho: DensityMatrix = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        // Use the dominant eigenvector of the reference state.
        let eig = rho.matrix().eig().map_err(|e| e.to_string())?;
        let dim = rho.dim();
        Ok((0..dim).map(|i| eig.eigenvectors[(i, 0)]).collect())
    } else if reference == "bell" {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Ok(vec![
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ])
    } else {
        Err(format!("unknown reference '{reference}'"))
    }
}

fn run_fidelity(args: FidelityArgs) -> Result<ExitCode, String> {
    let manifest = Manifest::load(args.manifest.as_ref())?;
    let reference = reference_amplitudes(&args.reference)?;
    let mut csv = String::from("sweep_deg,f_ls,f_phys\n");
    if args.sweep {
        let rho = args.state.resolve(&manifest)?;
        let mut deg = args.from_deg;
        while deg <= args.to_deg + 1e-9 {
            let error = MeasurementError::single_qubit(
                rho.num_qubits(),
                args.qubit,
                QubitError::Misalignment(MisalignmentMatrix::z_basis_rotation(deg.to_radians())),
            )
            .map_err(|e| e.to_string())?;
            let pair = EstimatePair::analytic(&rho, Some(&error)).map_err(|e| e.to_string())?;
            let f_ls = fidelity_to_pure(&pair.rho_ls, &reference).map_err(|e| e.to_string())?;
            let f_phys =
                fidelity_to_pure(pair.rho_phys.matrix(), &reference).map_err(|e| e.to_string())?;
            csv.push_str(&format!("{},{},{}\n", fmt9(deg), fmt9(f_ls), fmt9(f_phys)));
            deg += args.step_deg;
        }
    } else {
        let path = args
            .counts
            .as_ref()
            .ok_or("fidelity needs --counts or --sweep")?;
        let record = read_counts(path)?;
        let pair = EstimatePair::from_record(&record).map_err(|e| e.to_string())?;
        let f_ls = fidelity_to_pure(&pair.rho_ls, &reference).map_err(|e| e.to_string())?;
        let f_phys =
            fidelity_to_pure(pair.rho_phys.matrix(), &reference).map_err(|e| e.to_string())?;
        csv.push_str(&format!("counts,{},{}\n", fmt9(f_ls), fmt9(f_phys)));
    }
    write_output(args.out.as_deref().or(manifest.out.as_deref()), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn run_qdot(args: QdotArgs) -> Result<ExitCode, String> {
    let params = match args.target_purity {
        Some(target) => QDotParams {
            tau1_ps: args.tau1_ps,
            tau_ss_us: args.tau_ss_us,
            tau_hv_us: args.tau_hv_us,
            ..QDotParams::for_purity(target, args.kappa).map_err(|e| e.to_string())?
        },
        None => QDotParams {
            fss_uev: args.fss_uev,
            kappa: args.kappa,
            tau1_ps: args.tau1_ps,
            tau_ss_us: args.tau_ss_us,
            tau_hv_us: args.tau_hv_us,
        },
    };
    let rho = qdot_state(&params).map_err(|e| e.to_string())?;
    let out = json!({
        "params": params,
        "purity": rho.purity(),
        "state": rho,
    });
    let json = serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?;
    write_output(args.out.as_deref(), &(json + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => run_simulate(args),
        Command::Detect(args) => run_detect(args),
        Command::Sweep(args) => run_sweep(args),
        Command::PurityMin(args) => run_purity_min(args),
        Command::Analyze(args) => run_analyze(args),
        Command::Fidelity(args) => run_fidelity(args),
        Command::QdotState(args) => run_qdot(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

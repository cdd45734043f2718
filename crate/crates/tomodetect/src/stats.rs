//! Statistical interpretation of the estimator distance D.
//!
//! A vector Bernstein inequality bounds the probability δ_sta that
//! statistics alone pushed D past a threshold τ, turning the distance
//! into a confidence statement about systematic errors. The module also
//! implements the experimental evaluation pipeline: slicing a long
//! coincidence-event stream into fixed-size sub-experiments, running the
//! full estimate on each, and summarizing the resulting distance
//! histogram.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error_models::MeasurementError;
use crate::states::DensityMatrix;
use crate::tomography::{
    all_settings, born_probabilities, sample_counts, EstimatePair, SettingCounts,
    TomographyRecord,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Bernstein bound and detection verdict
// ---------------------------------------------------------------------------

/// Probability bound δ_sta = P[D ≥ τ] for purely statistical errors:
///
/// ```text
/// δ_sta ≤ 8·exp[ −(N·τ²)/(2·5ⁿ) · 3/(3 + √2·τ/√(5ⁿ)) ]
/// ```
///
/// with N the total number of measurements across all settings and
/// 5^{n/2} the variance proxy of local Pauli tomography on n qubits. The
/// raw bound can exceed 1 for small τ; the returned value is clamped to
/// [0, 1].
pub fn bernstein_delta(tau: f64, n_qubits: usize, shots_total: u64) -> Result<f64> {
    if tau <= 0.0 || !tau.is_finite() {
        return Err(Error::OutOfRange {
            what: "tau",
            value: tau,
            expected: "> 0",
        });
    }
    if shots_total == 0 {
        return Err(Error::OutOfRange {
            what: "shots_total",
            value: 0.0,
            expected: "≥ 1",
        });
    }
    let sigma_sqr = 5f64.powi(n_qubits as i32);
    let n = shots_total as f64;
    let exponent = -(n * tau * tau) / (2.0 * sigma_sqr) * 3.0
        / (3.0 + std::f64::consts::SQRT_2 * tau / sigma_sqr.sqrt());
    Ok((8.0 * exponent.exp()).clamp(0.0, 1.0))
}

/// Smallest τ whose Bernstein confidence 1 − δ_sta reaches `confidence`,
/// found by bisection.
pub fn tau_for_confidence(confidence: f64, n_qubits: usize, shots_total: u64) -> Result<f64> {
    if !(0.0..1.0).contains(&confidence) {
        return Err(Error::OutOfRange {
            what: "confidence",
            value: confidence,
            expected: "[0, 1)",
        });
    }
    let target = 1.0 - confidence;
    let mut lo = 1e-9;
    let mut hi = 1.0;
    while bernstein_delta(hi, n_qubits, shots_total)? > target {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::OutOfRange {
                what: "confidence",
                value: confidence,
                expected: "reachable for these parameters",
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if bernstein_delta(mid, n_qubits, shots_total)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Outcome of the systematic-error test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "systematic-error-detected")]
    SystematicErrorDetected,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// Result of running the detection pipeline on one record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DetectionReport {
    pub distance: f64,
    pub tau: f64,
    pub delta_sta: f64,
    pub confidence: f64,
    pub n_qubits: usize,
    pub shots_total: u64,
    pub verdict: Verdict,
}

/// Runs least-squares estimation, physical projection and the distance on
/// a record, then judges the distance against τ. The verdict is
/// `SystematicErrorDetected` iff D ≥ τ and the Bernstein confidence
/// 1 − δ_sta meets `confidence_threshold`; it is a deterministic function
/// of the record.
pub fn detect(
    record: &TomographyRecord,
    tau: f64,
    confidence_threshold: f64,
) -> Result<DetectionReport> {
    let pair = EstimatePair::from_record(record)?;
    let shots_total = record.shots_total();
    let delta_sta = bernstein_delta(tau, record.num_qubits, shots_total)?;
    let confidence = 1.0 - delta_sta;
    let verdict = if pair.distance >= tau && confidence >= confidence_threshold {
        Verdict::SystematicErrorDetected
    } else {
        Verdict::Inconclusive
    };
    Ok(DetectionReport {
        distance: pair.distance,
        tau,
        delta_sta,
        confidence,
        n_qubits: record.num_qubits,
        shots_total,
        verdict,
    })
}

// ---------------------------------------------------------------------------
// Coincidence-event streams and sub-experiments
// ---------------------------------------------------------------------------

/// One coincidence event: which setting was active and which outcome
/// fired. Setting indices follow the canonical ordering of
/// [`all_settings`]; outcome indices the bitstring convention of the
/// counts format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub setting_index: usize,
    pub outcome_index: usize,
}

/// Parses the events CSV (`setting_index,outcome_index`, one row per
/// event in acquisition order, header optional).
pub fn read_events_csv(text: &str) -> Result<Vec<Event>> {
    let mut events = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 && line.starts_with("setting_index") {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |field: Option<&str>| -> Result<usize> {
            field
                .map(str::trim)
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| {
                    Error::InsufficientData(format!("events CSV line {} is malformed", lineno + 1))
                })
        };
        let setting_index = parse(parts.next())?;
        let outcome_index = parse(parts.next())?;
        events.push(Event {
            setting_index,
            outcome_index,
        });
    }
    Ok(events)
}

pub fn write_events_csv(events: &[Event]) -> String {
    let mut out = String::from("setting_index,outcome_index\n");
    for e in events {
        out.push_str(&format!("{},{}\n", e.setting_index, e.outcome_index));
    }
    out
}

/// Simulates a coincidence-event stream: for every setting in canonical
/// order, `events_per_setting` outcomes drawn from the Born
/// probabilities.
pub fn sample_events(
    rho: &DensityMatrix,
    error: Option<&MeasurementError>,
    events_per_setting: u64,
    seed: u64,
) -> Result<Vec<Event>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events = Vec::new();
    for (setting_index, setting) in all_settings(rho.num_qubits()).iter().enumerate() {
        let probs = born_probabilities(rho, setting, error)?;
        for _ in 0..events_per_setting {
            let u: f64 = rand::Rng::random(&mut rng);
            let mut acc = 0.0;
            let mut outcome_index = probs.len() - 1;
            for (k, &p) in probs.iter().enumerate() {
                acc += p;
                if u < acc {
                    outcome_index = k;
                    break;
                }
            }
            events.push(Event {
                setting_index,
                outcome_index,
            });
        }
    }
    Ok(events)
}

/// Splits an event stream into `n_sub` sub-experiment records of
/// `events_per_sub` events per setting, by block interleaving: each
/// setting's event array is cut into `events_per_sub` blocks of size
/// `n_sub`, and sub-experiment j receives index j of every block.
pub fn split_subexperiments(
    events: &[Event],
    n_sub: usize,
    events_per_sub: usize,
) -> Result<Vec<TomographyRecord>> {
    if n_sub == 0 || events_per_sub == 0 {
        return Err(Error::OutOfRange {
            what: "sub-experiment shape",
            value: 0.0,
            expected: "n_sub ≥ 1 and events_per_sub ≥ 1",
        });
    }
    let max_setting = events
        .iter()
        .map(|e| e.setting_index)
        .max()
        .ok_or(Error::EmptyInput("split_subexperiments"))?;
    // Infer the qubit count from the setting range: indices must fill 3ⁿ.
    let mut num_qubits = 1;
    while 3usize.pow(num_qubits as u32) <= max_setting {
        num_qubits += 1;
    }
    let setting_count = 3usize.pow(num_qubits as u32);
    let dim = 1usize << num_qubits;

    let mut per_setting: Vec<Vec<usize>> = vec![Vec::new(); setting_count];
    for e in events {
        if e.outcome_index >= dim {
            return Err(Error::InvalidRecord(format!(
                "outcome index {} out of range for {num_qubits} qubits",
                e.outcome_index
            )));
        }
        per_setting[e.setting_index].push(e.outcome_index);
    }

    let needed = n_sub * events_per_sub;
    for (idx, list) in per_setting.iter().enumerate() {
        if list.len() < needed {
            return Err(Error::InsufficientData(format!(
                "setting {idx} has {} events, sub-experiment split needs {needed}",
                list.len()
            )));
        }
    }

    let settings = all_settings(num_qubits);
    let mut records = Vec::with_capacity(n_sub);
    for j in 0..n_sub {
        let mut counts_per_setting = Vec::with_capacity(setting_count);
        for (s_idx, outcomes) in per_setting.iter().enumerate() {
            let mut counts = vec![0u64; dim];
            for b in 0..events_per_sub {
                counts[outcomes[b * n_sub + j]] += 1;
            }
            counts_per_setting.push(SettingCounts {
                axes: settings[s_idx].clone(),
                counts,
            });
        }
        records.push(TomographyRecord {
            num_qubits,
            shots_per_setting: events_per_sub as u64,
            seed: None,
            scenario: None,
            settings: counts_per_setting,
        });
    }
    Ok(records)
}

/// Simulates the full sub-experiment ensemble directly: Born
/// probabilities are computed once per setting and each sub-experiment
/// draws its own multinomial counts (statistically identical to sampling
/// one long event stream and block-splitting it). Returns the distance D
/// of every sub-experiment; deterministic for a given seed, parallel over
/// sub-experiments.
pub fn simulate_subexperiment_distances(
    rho: &DensityMatrix,
    error: Option<&MeasurementError>,
    n_sub: usize,
    events_per_sub: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    let settings = all_settings(rho.num_qubits());
    let mut probs = Vec::with_capacity(settings.len());
    for setting in &settings {
        probs.push(born_probabilities(rho, setting, error)?);
    }
    (0..n_sub)
        .into_par_iter()
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64 + 1);
            let counts = settings
                .iter()
                .zip(&probs)
                .map(|(setting, p)| SettingCounts {
                    axes: setting.clone(),
                    counts: sample_counts(p, events_per_sub, &mut rng),
                })
                .collect();
            let record = TomographyRecord {
                num_qubits: rho.num_qubits(),
                shots_per_setting: events_per_sub,
                seed: None,
                scenario: None,
                settings: counts,
            };
            Ok(EstimatePair::from_record(&record)?.distance)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Histogram summaries
// ---------------------------------------------------------------------------

/// How the histogram statistics were derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HistogramMode {
    /// Method-of-moments fit: sample mean and standard deviation.
    #[serde(rename = "gaussian-fit")]
    GaussianFit,
    /// Zero-anchored cumulative statistics: the interval [0, W] holding
    /// 68.2 % of the data defines std = W/2 and mean = the central bin.
    #[serde(rename = "cumulative-682")]
    Cumulative682,
}

/// Histogram of sub-experiment distances plus its summary statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HistogramSummary {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub mode: HistogramMode,
    pub mean: f64,
    pub std: f64,
}

/// Fraction of mass in the zero bin at which the summary switches from
/// the Gaussian fit to the zero-anchored cumulative statistics.
pub const ZERO_BIN_SWITCH: f64 = 0.2;

/// Bins `values` into `bins` equal-width bins over [0, max] and
/// summarizes. A zero bin holding ≥ 20 % of the mass switches the
/// statistics to the cumulative-68.2 % rule (the distribution is then
/// dominated by fully physical estimates and far from Gaussian);
/// `summarize_histogram_with_mode` overrides the rule.
pub fn summarize_histogram(values: &[f64], bins: usize) -> Result<HistogramSummary> {
    summarize_histogram_with_mode(values, bins, None)
}

pub fn summarize_histogram_with_mode(
    values: &[f64],
    bins: usize,
    mode_override: Option<HistogramMode>,
) -> Result<HistogramSummary> {
    if values.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "histogram summary needs at least 2 values, got {}",
            values.len()
        )));
    }
    if bins == 0 {
        return Err(Error::OutOfRange {
            what: "bins",
            value: 0.0,
            expected: "≥ 1",
        });
    }
    let max = values.iter().cloned().fold(0.0f64, f64::max);
    let hi = if max > 0.0 { max } else { 1e-12 };
    let width = hi / bins as f64;
    let mut counts = vec![0u64; bins];
    for &v in values {
        let idx = ((v / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let bin_edges: Vec<f64> = (0..=bins).map(|k| k as f64 * width).collect();
    let total = values.len() as f64;

    let mode = mode_override.unwrap_or_else(|| {
        if counts[0] as f64 / total >= ZERO_BIN_SWITCH {
            HistogramMode::Cumulative682
        } else {
            HistogramMode::GaussianFit
        }
    });

    let (mean, std) = match mode {
        HistogramMode::GaussianFit => {
            let mean = values.iter().sum::<f64>() / total;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (total - 1.0);
            (mean, var.sqrt())
        }
        HistogramMode::Cumulative682 => {
            // Accumulate from D = 0 upward until 68.2 % of the data is
            // covered; the interval [0, W] defines the statistics.
            let target = 0.682 * total;
            let mut acc = 0.0;
            let mut k = bins - 1;
            for (i, &c) in counts.iter().enumerate() {
                acc += c as f64;
                if acc >= target {
                    k = i;
                    break;
                }
            }
            let w = (k + 1) as f64 * width;
            let central_bin = ((w / 2.0 / width) as usize).min(bins - 1);
            let mean = (central_bin as f64 + 0.5) * width;
            (mean, w / 2.0)
        }
    };

    Ok(HistogramSummary {
        bin_edges,
        counts,
        mode,
        mean,
        std,
    })
}

/// Full analysis pipeline: split the stream, run the estimate on every
/// sub-experiment, summarize the distance histogram. Returns the summary
/// together with the per-sub-experiment distances.
pub fn analyze_events(
    events: &[Event],
    n_sub: usize,
    events_per_sub: usize,
    bins: usize,
) -> Result<(HistogramSummary, Vec<f64>)> {
    let records = split_subexperiments(events, n_sub, events_per_sub)?;
    let distances: Vec<f64> = records
        .par_iter()
        .map(|r| Ok(EstimatePair::from_record(r)?.distance))
        .collect::<Result<_>>()?;
    let summary = summarize_histogram(&distances, bins)?;
    Ok((summary, distances))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_models::QubitError;
    use crate::states::{qdot_state, QDotParams};
    use crate::tomography::sample_record;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn bernstein_paper_operating_point() {
        // n = 2, N = 9·400: τ = 0.25 reaches 90 % confidence.
        let delta = bernstein_delta(0.25, 2, 3600).unwrap();
        assert!((0.09..=0.11).contains(&delta), "δ = {delta}");
        assert!((1.0 - delta - 0.90).abs() < 0.01);
    }

    #[test]
    fn bernstein_clamps_and_decays() {
        // Vacuous bound for tiny τ.
        assert_eq!(bernstein_delta(1e-9, 2, 3600).unwrap(), 1.0);
        assert!(bernstein_delta(0.0, 2, 3600).is_err());

        // Strictly decreasing in N and τ inside the clamp region.
        let mut previous = f64::INFINITY;
        for n in [1000u64, 2000, 4000, 8000, 16000] {
            let d = bernstein_delta(0.3, 2, n).unwrap();
            assert!(d < previous);
            previous = d;
        }
        let mut previous = f64::INFINITY;
        for tau in [0.2, 0.3, 0.4, 0.5] {
            let d = bernstein_delta(tau, 2, 3600).unwrap();
            assert!(d < previous);
            previous = d;
        }
    }

    #[test]
    fn tau_for_confidence_inverts_the_bound() {
        let tau = tau_for_confidence(0.90, 2, 3600).unwrap();
        assert!((bernstein_delta(tau, 2, 3600).unwrap() - 0.10).abs() < 1e-6);
        assert!((tau - 0.25).abs() < 0.01);
    }

    #[test]
    fn detect_clean_record_is_inconclusive() {
        let rho = qdot_state(&QDotParams::default()).unwrap();
        let record = sample_record(&rho, 400, None, 11).unwrap();
        let report = detect(&record, 0.25, 0.90).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(report.distance < 0.1);
        assert_eq!(report.shots_total, 3600);
    }

    #[test]
    fn detect_large_offset_on_pure_source() {
        let rho = qdot_state(&QDotParams::default()).unwrap(); // purity ≈ 0.92
        let error = MeasurementError::single_qubit(
            2,
            0,
            QubitError::WavePlateOffset {
                delta: 100f64.to_radians(),
            },
        )
        .unwrap();
        let record = sample_record(&rho, 400, Some(&error), 17).unwrap();
        let report = detect(&record, 0.25, 0.90).unwrap();
        assert!(report.distance >= 0.25, "D = {}", report.distance);
        assert_eq!(report.verdict, Verdict::SystematicErrorDetected);
        assert!(report.confidence >= 0.90);
    }

    #[test]
    fn detect_small_offset_on_mixed_source_is_inconclusive() {
        let params = QDotParams::for_purity(0.56, 0.9452).unwrap();
        let rho = qdot_state(&params).unwrap();
        let error = MeasurementError::single_qubit(
            2,
            0,
            QubitError::WavePlateOffset {
                delta: 50f64.to_radians(),
            },
        )
        .unwrap();
        let record = sample_record(&rho, 400, Some(&error), 19).unwrap();
        let report = detect(&record, 0.25, 0.90).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(report.distance < report.tau);
    }

    #[test]
    fn split_is_a_block_interleaved_partition() {
        // One qubit, 3 settings, 12 events per setting; n_sub = 3,
        // events_per_sub = 4. Outcome pattern per setting: position p
        // carries p % 2, so sub j sees outcomes of positions j, 3+j, 6+j, 9+j.
        let mut events = Vec::new();
        for s in 0..3 {
            for p in 0..12 {
                events.push(Event {
                    setting_index: s,
                    outcome_index: p % 2,
                });
            }
        }
        let records = split_subexperiments(&events, 3, 4).unwrap();
        assert_eq!(records.len(), 3);
        let mut total = 0u64;
        for (j, record) in records.iter().enumerate() {
            record.validate().unwrap();
            for sc in &record.settings {
                total += sc.counts.iter().sum::<u64>();
                // Positions j, 3+j, 6+j, 9+j have parities j%2 twice... exactly:
                let expected_ones = (0..4).filter(|b| (b * 3 + j) % 2 == 1).count() as u64;
                assert_eq!(sc.counts[1], expected_ones);
            }
        }
        assert_eq!(total, 36); // every event lands in exactly one sub-record

        // Deterministic outcome → every sub-record identical.
        let constant: Vec<Event> = (0..3)
            .flat_map(|s| {
                (0..12).map(move |_| Event {
                    setting_index: s,
                    outcome_index: 0,
                })
            })
            .collect();
        let records = split_subexperiments(&constant, 3, 4).unwrap();
        assert!(records.windows(2).all(|w| w[0] == w[1]));

        // n_sub = 1 keeps the first events_per_sub events of each setting.
        let records = split_subexperiments(&events, 1, 5).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].shots_per_setting, 5);
        // positions 0..5 carry outcomes 0,1,0,1,0.
        assert_eq!(records[0].settings[0].counts, vec![3, 2]);

        // Insufficient events.
        assert!(matches!(
            split_subexperiments(&events, 10, 4),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn events_csv_round_trip() {
        let events = vec![
            Event { setting_index: 0, outcome_index: 3 },
            Event { setting_index: 8, outcome_index: 0 },
        ];
        let text = write_events_csv(&events);
        let back = read_events_csv(&text).unwrap();
        assert_eq!(back, events);
        assert!(read_events_csv("a,b\n").is_err());
    }

    #[test]
    fn histogram_gaussian_fit_recovers_generator() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let values: Vec<f64> = (0..2000)
            .map(|_| 0.3 + 0.05 * rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let summary = summarize_histogram(&values, 50).unwrap();
        assert_eq!(summary.mode, HistogramMode::GaussianFit);
        assert!((summary.mean - 0.3).abs() < 0.03);
        assert!((summary.std - 0.05).abs() < 0.005);
        assert_eq!(summary.counts.iter().sum::<u64>(), 2000);
    }

    #[test]
    fn histogram_switches_to_cumulative_mode() {
        // 60 % of the mass at D = 0.
        let mut values = vec![0.0; 600];
        values.extend((0..400).map(|k| 0.001 + k as f64 * 1e-5));
        let summary = summarize_histogram(&values, 50).unwrap();
        assert_eq!(summary.mode, HistogramMode::Cumulative682);
        // 68.2 % is reached within the first bins; the mean is the central
        // bin of the covered interval and std half its width.
        assert!(summary.mean <= summary.std * 2.0 + 1e-12);

        assert!(summarize_histogram(&[0.1], 50).is_err());
    }

    #[test]
    fn low_purity_offset_histogram_tracks_analytic_distance() {
        // Lowest-purity source with a 60° offset: the sub-experiment
        // histogram concentrates around the shot-noise-free distance.
        let params = QDotParams::for_purity(0.56, 0.946).unwrap();
        let rho = qdot_state(&params).unwrap();
        let error = MeasurementError::single_qubit(
            2,
            0,
            QubitError::WavePlateOffset {
                delta: 60f64.to_radians(),
            },
        )
        .unwrap();
        let analytic = crate::tomography::EstimatePair::analytic(&rho, Some(&error))
            .unwrap()
            .distance;
        let distances =
            simulate_subexperiment_distances(&rho, Some(&error), 1000, 400, 37).unwrap();
        let summary = summarize_histogram(&distances, 50).unwrap();
        assert!(
            (summary.mean - analytic).abs() < 4.0 * summary.std,
            "mean {} vs analytic {analytic} (std {})",
            summary.mean,
            summary.std
        );
        assert!(summary.std < 0.05);
    }

    #[test]
    fn zero_offset_histogram_is_zero_dominated() {
        // A well-mixed state whose eigenvalues sit clearly above shot
        // noise: without a systematic error most sub-experiments give a
        // fully physical estimate, triggering the cumulative statistics.
        let w = ((4.0 * 0.56 - 1.0) / 3.0f64).sqrt();
        let bell = crate::states::DensityMatrix::bell_phi_plus();
        let mixed = crate::linalg::HermitianMatrix::identity(4).scale((1.0 - w) / 4.0);
        let rho = crate::states::DensityMatrix::new(
            bell.matrix().scale(w).add(&mixed).unwrap(),
        )
        .unwrap();
        let distances = simulate_subexperiment_distances(&rho, None, 1000, 400, 41).unwrap();
        let summary = summarize_histogram(&distances, 50).unwrap();
        assert_eq!(summary.mode, HistogramMode::Cumulative682);
        assert!(summary.mean <= 2.0 * summary.std + 1e-12);
        assert!(summary.mean < 0.02);
    }

    #[test]
    fn subexperiment_simulation_is_deterministic() {
        let rho = qdot_state(&QDotParams::default()).unwrap();
        let a = simulate_subexperiment_distances(&rho, None, 50, 100, 5).unwrap();
        let b = simulate_subexperiment_distances(&rho, None, 50, 100, 5).unwrap();
        assert_eq!(a, b);
    }
}

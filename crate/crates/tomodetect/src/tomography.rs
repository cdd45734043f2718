//! Pauli tomography: measurement settings, Born probabilities, shot
//! sampling, least-squares inversion, projection onto the physical state
//! set, and the estimator distance D.
//!
//! Conventions fixed here and in the serialized counts format:
//! - settings are enumerated lexicographically over (X, Y, Z) per qubit,
//!   qubit 0 first (XX, XY, XZ, YX, … for two qubits);
//! - outcome index = Σ_q bit_q·2^{n−1−q} with bit 0 ↔ the +1 eigenvalue;
//! - sampling uses the ChaCha8 generator (`rand_chacha`) seeded through
//!   `seed_from_u64`, drawing each shot by inverse-CDF lookup, so records
//!   are bit-reproducible across platforms for a fixed seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error_models::MeasurementError;
use crate::linalg::{project_simplex, HermitianMatrix};
use crate::states::{pauli, Axis, DensityMatrix, PauliBasis};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Settings and records
// ---------------------------------------------------------------------------

/// One local Pauli measurement setting: a basis label per qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PauliSetting {
    pub axes: Vec<Axis>,
}

impl PauliSetting {
    pub fn new(axes: Vec<Axis>) -> Self {
        Self { axes }
    }

    pub fn num_qubits(&self) -> usize {
        self.axes.len()
    }

    /// Canonical index: base-3 digits, qubit 0 most significant, X=0 Y=1 Z=2.
    pub fn canonical_index(&self) -> usize {
        self.axes
            .iter()
            .fold(0, |acc, axis| acc * 3 + (axis.index() - 1))
    }
}

/// All 3ⁿ settings in canonical order.
pub fn all_settings(num_qubits: usize) -> Vec<PauliSetting> {
    let count = 3usize.pow(num_qubits as u32);
    (0..count)
        .map(|idx| setting_from_index(idx, num_qubits))
        .collect()
}

/// Inverse of [`PauliSetting::canonical_index`].
pub fn setting_from_index(index: usize, num_qubits: usize) -> PauliSetting {
    let mut axes = vec![Axis::X; num_qubits];
    let mut rest = index;
    for q in (0..num_qubits).rev() {
        axes[q] = Axis::ALL[rest % 3];
        rest /= 3;
    }
    PauliSetting { axes }
}

/// Outcome counts for one setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingCounts {
    pub axes: PauliSetting,
    pub counts: Vec<u64>,
}

/// Per-setting outcome counts of a complete Pauli tomography experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyRecord {
    pub num_qubits: usize,
    pub shots_per_setting: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Vec<crate::error_models::ScenarioEntry>>,
    pub settings: Vec<SettingCounts>,
}

impl TomographyRecord {
    /// Checks completeness: all 3ⁿ settings exactly once, every counts
    /// vector of length 2ⁿ summing to `shots_per_setting`.
    pub fn validate(&self) -> Result<()> {
        let expected = 3usize.pow(self.num_qubits as u32);
        if self.settings.len() != expected {
            return Err(Error::InvalidRecord(format!(
                "{} settings present, expected {expected}",
                self.settings.len()
            )));
        }
        let mut seen = vec![false; expected];
        let dim = 1usize << self.num_qubits;
        for entry in &self.settings {
            if entry.axes.num_qubits() != self.num_qubits {
                return Err(Error::InvalidRecord(format!(
                    "setting {:?} does not match num_qubits = {}",
                    entry.axes, self.num_qubits
                )));
            }
            let idx = entry.axes.canonical_index();
            if seen[idx] {
                return Err(Error::InvalidRecord(format!(
                    "setting {:?} appears more than once",
                    entry.axes
                )));
            }
            seen[idx] = true;
            if entry.counts.len() != dim {
                return Err(Error::InvalidRecord(format!(
                    "counts vector has length {}, expected {dim}",
                    entry.counts.len()
                )));
            }
            let total: u64 = entry.counts.iter().sum();
            if total != self.shots_per_setting {
                return Err(Error::InvalidRecord(format!(
                    "counts for {:?} sum to {total}, expected {}",
                    entry.axes, self.shots_per_setting
                )));
            }
        }
        Ok(())
    }

    /// Per-setting conditional frequencies in canonical setting order.
    pub fn frequencies(&self) -> Result<Vec<Vec<f64>>> {
        self.validate()?;
        let expected = 3usize.pow(self.num_qubits as u32);
        let mut out = vec![Vec::new(); expected];
        let n = self.shots_per_setting as f64;
        for entry in &self.settings {
            out[entry.axes.canonical_index()] =
                entry.counts.iter().map(|&c| c as f64 / n).collect();
        }
        Ok(out)
    }

    /// Total number of measurements N = 3ⁿ · shots_per_setting.
    pub fn shots_total(&self) -> u64 {
        3u64.pow(self.num_qubits as u32) * self.shots_per_setting
    }
}

// ---------------------------------------------------------------------------
// Born probabilities and sampling
// ---------------------------------------------------------------------------

/// Outcome probabilities of measuring `setting` on `rho`, under an
/// optional measurement-error model (the projectors are then those of the
/// misaligned observables). Probabilities are clipped at zero and sum to
/// one within 1e-10.
pub fn born_probabilities(
    rho: &DensityMatrix,
    setting: &PauliSetting,
    error: Option<&MeasurementError>,
) -> Result<Vec<f64>> {
    let n = rho.num_qubits();
    if setting.num_qubits() != n {
        return Err(Error::DimensionMismatch {
            left: setting.num_qubits(),
            right: n,
        });
    }
    if let Some(model) = error {
        if model.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: model.num_qubits(),
                right: n,
            });
        }
    }

    // Per-qubit ±1 projectors of the (possibly misaligned) observables.
    let half_id = HermitianMatrix::identity(2).scale(0.5);
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for (q, &axis) in setting.axes.iter().enumerate() {
        let obs = match error {
            Some(model) => model.observable(q, axis),
            None => pauli(axis.index()),
        };
        plus.push(half_id.add(&obs.scale(0.5))?);
        minus.push(half_id.sub(&obs.scale(0.5))?);
    }

    let dim = 1usize << n;
    let mut probs = Vec::with_capacity(dim);
    let mut sum = 0.0;
    for outcome in 0..dim {
        let mut projector: Option<HermitianMatrix> = None;
        for q in 0..n {
            let bit = (outcome >> (n - 1 - q)) & 1;
            let factor = if bit == 0 { &plus[q] } else { &minus[q] };
            projector = Some(match projector {
                None => factor.clone(),
                Some(p) => p.tensor(factor),
            });
        }
        let p = rho.matrix().expectation(&projector.unwrap())?;
        if p < -1e-12 {
            return Err(Error::InvalidErrorModel(format!(
                "outcome probability {p:.3e} is negative beyond tolerance"
            )));
        }
        let p = p.max(0.0);
        sum += p;
        probs.push(p);
    }
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidErrorModel(format!(
            "outcome probabilities sum to {sum}, expected 1"
        )));
    }
    Ok(probs)
}

/// Draws multinomial counts by inverse-CDF lookup, one uniform draw per
/// shot.
pub fn sample_counts<R: Rng>(probabilities: &[f64], shots: u64, rng: &mut R) -> Vec<u64> {
    let mut counts = vec![0u64; probabilities.len()];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut chosen = probabilities.len() - 1;
        for (k, &p) in probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                chosen = k;
                break;
            }
        }
        counts[chosen] += 1;
    }
    counts
}

/// Simulates a complete tomography experiment: multinomial draws per
/// setting from the Born probabilities, deterministic for a given seed.
pub fn sample_record(
    rho: &DensityMatrix,
    shots_per_setting: u64,
    error: Option<&MeasurementError>,
    seed: u64,
) -> Result<TomographyRecord> {
    if shots_per_setting == 0 {
        return Err(Error::OutOfRange {
            what: "shots_per_setting",
            value: 0.0,
            expected: "≥ 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut settings = Vec::new();
    for setting in all_settings(rho.num_qubits()) {
        let probs = born_probabilities(rho, &setting, error)?;
        let counts = sample_counts(&probs, shots_per_setting, &mut rng);
        settings.push(SettingCounts {
            axes: setting,
            counts,
        });
    }
    Ok(TomographyRecord {
        num_qubits: rho.num_qubits(),
        shots_per_setting,
        seed: Some(seed),
        scenario: error.map(|e| e.to_scenario_entries()),
        settings,
    })
}

// ---------------------------------------------------------------------------
// Least-squares inversion
// ---------------------------------------------------------------------------

/// Least-squares estimate from per-setting conditional frequencies
/// (canonical setting order):
///
/// ρ_LS = (1/2ⁿ) Σ_μ⃗ ⟨σ_μ⃗⟩ σ_μ⃗,
///
/// where the expectation of a Pauli string with identity slots is the
/// average of its marginal estimate over all settings containing it (the
/// tensor-product pseudo-inverse). Unit trace and Hermitian always; not
/// necessarily positive.
pub fn least_squares_from_frequencies(
    num_qubits: usize,
    frequencies: &[Vec<f64>],
) -> Result<HermitianMatrix> {
    let setting_count = 3usize.pow(num_qubits as u32);
    if frequencies.len() != setting_count {
        return Err(Error::InvalidRecord(format!(
            "{} frequency vectors, expected {setting_count}",
            frequencies.len()
        )));
    }
    let dim = 1usize << num_qubits;
    let settings = all_settings(num_qubits);
    let basis = PauliBasis::get(num_qubits);

    let mut coeffs = vec![0.0; basis.len()];
    coeffs[0] = 1.0;
    for (string_idx, coeff) in coeffs.iter_mut().enumerate().skip(1) {
        let digits = PauliBasis::digits(string_idx, num_qubits);
        let mut acc = 0.0;
        let mut matches = 0usize;
        for (s_idx, setting) in settings.iter().enumerate() {
            let contains = digits
                .iter()
                .zip(&setting.axes)
                .all(|(&mu, axis)| mu == 0 || mu == axis.index());
            if !contains {
                continue;
            }
            let freqs = &frequencies[s_idx];
            if freqs.len() != dim {
                return Err(Error::InvalidRecord(format!(
                    "frequency vector has length {}, expected {dim}",
                    freqs.len()
                )));
            }
            let mut expectation = 0.0;
            for (outcome, &f) in freqs.iter().enumerate() {
                let mut sign = 1.0;
                for (q, &mu) in digits.iter().enumerate() {
                    if mu != 0 && (outcome >> (num_qubits - 1 - q)) & 1 == 1 {
                        sign = -sign;
                    }
                }
                expectation += sign * f;
            }
            acc += expectation;
            matches += 1;
        }
        *coeff = acc / matches as f64;
    }
    Ok(basis.reconstruct(&coeffs))
}

/// Least-squares estimate of a measured record.
pub fn least_squares(record: &TomographyRecord) -> Result<HermitianMatrix> {
    let frequencies = record.frequencies()?;
    least_squares_from_frequencies(record.num_qubits, &frequencies)
}

// ---------------------------------------------------------------------------
// Physical projection and distance
// ---------------------------------------------------------------------------

/// The closest density matrix to a unit-trace Hermitian estimate in
/// Hilbert-Schmidt norm: eigendecompose, project the spectrum onto the
/// probability simplex, reconstruct in the same eigenbasis.
///
/// The eigenbasis reduction is exact: the HS-closest state shares the
/// estimate's eigenbasis, so the matrix problem collapses to the simplex
/// projection of the spectrum. Positive semidefinite inputs are returned
/// unchanged.
pub fn project_physical(estimate: &HermitianMatrix) -> Result<DensityMatrix> {
    if (estimate.trace() - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidRecord(format!(
            "estimate trace is {}, expected 1",
            estimate.trace()
        )));
    }
    let eig = estimate.eig()?;
    if *eig.eigenvalues.last().unwrap() >= -1e-12 {
        return DensityMatrix::new(estimate.clone());
    }
    let projected = project_simplex(&eig.eigenvalues)?;
    DensityMatrix::new(eig.reconstruct_with(&projected))
}

/// Hilbert-Schmidt distance D = ‖a − b‖₂ between two estimates.
pub fn distance(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    a.hs_distance(b)
}

/// The least-squares estimate, its physical projection, and the distance
/// D between them.
#[derive(Clone, Debug)]
pub struct EstimatePair {
    pub rho_ls: HermitianMatrix,
    pub rho_phys: DensityMatrix,
    pub distance: f64,
}

impl EstimatePair {
    fn from_ls(rho_ls: HermitianMatrix) -> Result<Self> {
        let rho_phys = project_physical(&rho_ls)?;
        let distance = rho_ls.hs_distance(rho_phys.matrix())?;
        Ok(Self {
            rho_ls,
            rho_phys,
            distance,
        })
    }

    /// Full pipeline on measured counts.
    pub fn from_record(record: &TomographyRecord) -> Result<Self> {
        Self::from_ls(least_squares(record)?)
    }

    /// Shot-noise-free pipeline: the corrupted estimate is obtained from
    /// exact Born probabilities (equivalently, the coefficient transform
    /// of the error model).
    pub fn analytic(rho: &DensityMatrix, error: Option<&MeasurementError>) -> Result<Self> {
        let rho_ls = match error {
            Some(model) => model.transform_estimate(rho)?,
            None => rho.matrix().clone(),
        };
        Self::from_ls(rho_ls)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_models::{MisalignmentMatrix, QubitError};
    use crate::states::{hermitian_from_bloch_vector, random_density_matrix, BlochMatrix};
    use crate::linalg::C64;
    use rand::Rng;

    fn zero_state() -> DensityMatrix {
        DensityMatrix::from_pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap()
    }

    #[test]
    fn setting_enumeration_round_trips() {
        for n in 1..=3 {
            let settings = all_settings(n);
            assert_eq!(settings.len(), 3usize.pow(n as u32));
            for (idx, s) in settings.iter().enumerate() {
                assert_eq!(s.canonical_index(), idx);
                assert_eq!(setting_from_index(idx, n), *s);
            }
        }
    }

    #[test]
    fn born_probability_examples() {
        let z = zero_state();
        let p = born_probabilities(&z, &PauliSetting::new(vec![Axis::Z]), None).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);

        let p = born_probabilities(&z, &PauliSetting::new(vec![Axis::X]), None).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);

        let bell = DensityMatrix::bell_phi_plus();
        let p = born_probabilities(&bell, &PauliSetting::new(vec![Axis::Z, Axis::Z]), None).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12 && p[2].abs() < 1e-12);
        assert!((p[3] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_and_law_of_large_numbers() {
        let bell = DensityMatrix::bell_phi_plus();
        let a = sample_record(&bell, 1000, None, 42).unwrap();
        let b = sample_record(&bell, 1000, None, 42).unwrap();
        assert_eq!(a, b);
        let c = sample_record(&bell, 1000, None, 43).unwrap();
        assert_ne!(a, c);

        // 10⁶ shots: frequencies within 5·10⁻³ of the probabilities.
        let record = sample_record(&bell, 1_000_000, None, 7).unwrap();
        let freqs = record.frequencies().unwrap();
        for (idx, setting) in all_settings(2).iter().enumerate() {
            let probs = born_probabilities(&bell, setting, None).unwrap();
            for (f, p) in freqs[idx].iter().zip(&probs) {
                assert!((f - p).abs() < 5e-3, "setting {setting:?}: {f} vs {p}");
            }
        }

        // Deterministic outcome: |0⟩⟨0| measured in Z gives counts (N, 0).
        let record = sample_record(&zero_state(), 500, None, 1).unwrap();
        let z_counts = &record.settings[2].counts; // X, Y, Z order
        assert_eq!(z_counts, &vec![500, 0]);
    }

    #[test]
    fn least_squares_inverts_exact_counts() {
        // Z = (400, 0), X = Y = (200, 200) → ½(1+σ_Z) = |0⟩⟨0|.
        let record = TomographyRecord {
            num_qubits: 1,
            shots_per_setting: 400,
            seed: None,
            scenario: None,
            settings: vec![
                SettingCounts {
                    axes: PauliSetting::new(vec![Axis::X]),
                    counts: vec![200, 200],
                },
                SettingCounts {
                    axes: PauliSetting::new(vec![Axis::Y]),
                    counts: vec![200, 200],
                },
                SettingCounts {
                    axes: PauliSetting::new(vec![Axis::Z]),
                    counts: vec![400, 0],
                },
            ],
        };
        let ls = least_squares(&record).unwrap();
        assert!(ls.hs_distance(zero_state().matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn least_squares_inverts_born_on_random_states() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=2usize {
            for _ in 0..100 {
                let rho = random_density_matrix(n, &mut rng);
                let freqs: Vec<Vec<f64>> = all_settings(n)
                    .iter()
                    .map(|s| born_probabilities(&rho, s, None).unwrap())
                    .collect();
                let ls = least_squares_from_frequencies(n, &freqs).unwrap();
                assert!(ls.hs_distance(rho.matrix()).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn corrupted_least_squares_matches_bloch_transform() {
        // The two representations of an error — misaligned Born projectors
        // fed through the inversion, and the Bloch-side coefficient
        // transform — agree on noiseless data.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let rho = random_density_matrix(2, &mut rng);
            let angles: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..1.5));
            let error = MeasurementError::single_qubit(
                2,
                0,
                QubitError::Misalignment(MisalignmentMatrix::general(
                    angles[0], angles[1], angles[2], angles[3],
                )),
            )
            .unwrap();
            let freqs: Vec<Vec<f64>> = all_settings(2)
                .iter()
                .map(|s| born_probabilities(&rho, s, Some(&error)).unwrap())
                .collect();
            let ls = least_squares_from_frequencies(2, &freqs).unwrap();

            let direct = error.transform_estimate(&rho).unwrap();
            assert!(ls.hs_distance(&direct).unwrap() < 1e-10);

            let b = error
                .transform_bloch(&BlochMatrix::from_state(&rho).unwrap())
                .unwrap();
            assert!(ls.hs_distance(&b.to_hermitian()).unwrap() < 1e-10);
        }
    }

    #[test]
    fn missing_or_inconsistent_settings_are_rejected() {
        let mut record = sample_record(&zero_state(), 100, None, 1).unwrap();
        record.settings.pop();
        assert!(matches!(least_squares(&record), Err(Error::InvalidRecord(_))));

        let mut record = sample_record(&zero_state(), 100, None, 1).unwrap();
        record.settings[0].counts[0] += 1;
        assert!(record.validate().is_err());
    }

    #[test]
    fn projection_examples() {
        // Physical input returned unchanged, distance exactly zero.
        let bell = DensityMatrix::bell_phi_plus();
        let projected = project_physical(bell.matrix()).unwrap();
        assert_eq!(projected.matrix(), bell.matrix());
        assert_eq!(distance(bell.matrix(), projected.matrix()).unwrap(), 0.0);

        // Bloch vector (0,0,1.2) → (0,0,1); eigenvalues (1.1, −0.1) → (1, 0).
        let overshoot = hermitian_from_bloch_vector(&[0.0, 0.0, 1.2]);
        let projected = project_physical(&overshoot).unwrap();
        let expected = hermitian_from_bloch_vector(&[0.0, 0.0, 1.0]);
        assert!(projected.matrix().hs_distance(&expected).unwrap() < 1e-12);

        // D = ‖½·0.2·σ_Z‖₂ = √0.02.
        let d = distance(&overshoot, projected.matrix()).unwrap();
        assert!((d - 0.02f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn projection_of_misaligned_pure_state() {
        // Y eigenstate read through the Y-for-Z error: ũ = (0, 1, 1),
        // eigenvalues ½(1±√2); projecting lands on the Bloch sphere at
        // (0, 1, 1)/√2.
        let rho = DensityMatrix::y_eigenstate();
        let error = MeasurementError::new(vec![QubitError::Misalignment(
            MisalignmentMatrix::y_for_z(),
        )])
        .unwrap();
        let pair = EstimatePair::analytic(&rho, Some(&error)).unwrap();

        let expected_ls = hermitian_from_bloch_vector(&[0.0, 1.0, 1.0]);
        assert!(pair.rho_ls.hs_distance(&expected_ls).unwrap() < 1e-12);
        let eig = pair.rho_ls.eig().unwrap();
        assert!((eig.eigenvalues[0] - 0.5 * (1.0 + 2.0f64.sqrt())).abs() < 1e-12);

        let h = 0.5f64.sqrt();
        let expected_phys = hermitian_from_bloch_vector(&[0.0, h, h]);
        assert!(pair.rho_phys.matrix().hs_distance(&expected_phys).unwrap() < 1e-12);
        assert!(pair.distance > 0.0);
    }

    #[test]
    fn projection_is_idempotent_and_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let rho = random_density_matrix(2, &mut rng);
            let mut b = BlochMatrix::from_state(&rho).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    b.r.rows[i][j] += rng.random_range(-0.5..0.5);
                }
            }
            let estimate = b.to_hermitian();
            let projected = project_physical(&estimate).unwrap();
            assert!((projected.matrix().trace() - 1.0).abs() < 1e-10);
            assert!(projected.matrix().min_eigenvalue().unwrap() >= -1e-10);
            let again = project_physical(projected.matrix()).unwrap();
            assert!(again.matrix().hs_distance(projected.matrix()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn projection_beats_random_candidates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let candidates: Vec<DensityMatrix> =
            (0..10_000).map(|_| random_density_matrix(2, &mut rng)).collect();
        for _ in 0..10 {
            let rho = random_density_matrix(2, &mut rng);
            let mut b = BlochMatrix::from_state(&rho).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    b.r.rows[i][j] += rng.random_range(-0.6..0.6);
                }
            }
            let estimate = b.to_hermitian();
            if estimate.min_eigenvalue().unwrap() >= 0.0 {
                continue;
            }
            let best = project_physical(&estimate).unwrap();
            let d_best = estimate.hs_distance(best.matrix()).unwrap();
            for c in &candidates {
                assert!(d_best <= estimate.hs_distance(c.matrix()).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn record_json_has_pinned_field_names() {
        let record = sample_record(&DensityMatrix::bell_phi_plus(), 10, None, 5).unwrap();
        let json = serde_json::to_string(&record).unwrap();
        for key in ["\"num_qubits\"", "\"shots_per_setting\"", "\"settings\"", "\"axes\"", "\"counts\""] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
        let back: TomographyRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);

        // Files without the optional header fields parse too.
        let bare = r#"{"num_qubits":1,"shots_per_setting":2,"settings":[
            {"axes":["X"],"counts":[1,1]},
            {"axes":["Y"],"counts":[2,0]},
            {"axes":["Z"],"counts":[0,2]}]}"#;
        let rec: TomographyRecord = serde_json::from_str(bare).unwrap();
        rec.validate().unwrap();
    }

    use rand::SeedableRng;
}

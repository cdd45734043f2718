//! Systematic measurement-error models.
//!
//! A single-qubit error replaces each ideal Pauli observable with a linear
//! combination σ̃_μ = Σ_ν M_{μν} σ_ν, where the rows of the misalignment
//! matrix M have unit Euclidean norm so every implemented observable keeps
//! eigenvalues ±1. The optical scenarios (quarter-wave-plate offset,
//! wave-plate swap, fast-axis flip) all reduce to such matrices; the
//! wave-plate calculus that produces them is implemented here as well.

use serde::{Deserialize, Serialize};

use crate::linalg::{C64, CMatrix, HermitianMatrix, Mat3};
use crate::states::{observable_from_bloch_row, pauli, Axis, BlochMatrix, DensityMatrix, PauliBasis};
use crate::{Error, Result};

/// Rows further than this (relative) from unit norm are rejected instead
/// of silently rescaled.
const ROW_NORM_SLACK: f64 = 0.1;

// ---------------------------------------------------------------------------
// Misalignment matrices
// ---------------------------------------------------------------------------

/// 3×3 real matrix with unit-norm rows mapping ideal Pauli axes to the
/// axes actually implemented by the apparatus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MisalignmentMatrix {
    m: Mat3,
}

impl MisalignmentMatrix {
    /// Accepts a matrix whose rows are within 10 % of unit norm and
    /// rescales them exactly to 1; larger deviations indicate a modelling
    /// mistake and are rejected.
    pub fn new(m: Mat3) -> Result<Self> {
        let mut rows = m.rows;
        for (i, row) in rows.iter_mut().enumerate() {
            let norm = (row[0] * row[0] + row[1] * row[1] + row[2] * row[2]).sqrt();
            if (norm - 1.0).abs() > ROW_NORM_SLACK {
                return Err(Error::InvalidErrorModel(format!(
                    "row {i} has norm {norm:.6}, more than 10% away from 1"
                )));
            }
            for x in row.iter_mut() {
                *x /= norm;
            }
        }
        Ok(Self { m: Mat3::new(rows) })
    }

    pub fn identity() -> Self {
        Self { m: Mat3::IDENTITY }
    }

    /// The most general single-qubit error in the Y/Z sector:
    ///
    /// ```text
    ///     ⎡      1            0             0       ⎤
    /// M = ⎢ sin β sin α    cos α      cos β sin α   ⎥
    ///     ⎣ sin δ sin γ  cos δ sin γ     cos γ      ⎦
    /// ```
    ///
    /// Rows are unit-norm by construction. All four angles zero gives the
    /// identity; α = γ = π/2, β = δ = 0 permutes Y and Z.
    pub fn general(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self {
            m: Mat3::new([
                [1.0, 0.0, 0.0],
                [beta.sin() * alpha.sin(), alpha.cos(), beta.cos() * alpha.sin()],
                [delta.sin() * gamma.sin(), delta.cos() * gamma.sin(), gamma.cos()],
            ]),
        }
    }

    /// "Y measured instead of Z": rows (1,0,0), (0,1,0), (0,1,0). The
    /// non-invertible map realized by a 45° quarter-wave-plate offset on
    /// the Z basis alone.
    pub fn y_for_z() -> Self {
        Self {
            m: Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 1.0, 0.0]]),
        }
    }

    /// The Y↔Z basis permutation (orthogonal, equivalent to a partial
    /// transposition combined with a local rotation).
    pub fn swap_yz() -> Self {
        Self {
            m: Mat3::new([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
        }
    }

    /// Misalignment obtained from rotating only the Z-basis quarter-wave
    /// plate by ψ while X and Y stay ideal.
    pub fn z_basis_rotation(psi: f64) -> Self {
        let z_row = bloch_row_of(&waveplate_observable(psi, 0.0));
        Self {
            m: Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], z_row]),
        }
    }

    /// Misalignment of a constant quarter-wave-plate offset Δ applied to
    /// every measurement setting on the qubit.
    pub fn qwp_offset(delta: f64) -> Self {
        let rows: Vec<[f64; 3]> = Axis::ALL
            .iter()
            .map(|&axis| {
                let (psi, chi) = pauli_setting_angles(axis);
                bloch_row_of(&waveplate_observable(psi + delta, chi))
            })
            .collect();
        Self {
            m: Mat3::new([rows[0], rows[1], rows[2]]),
        }
    }

    pub fn mat3(&self) -> &Mat3 {
        &self.m
    }

    pub fn row(&self, axis: Axis) -> [f64; 3] {
        self.m.rows[axis.index() - 1]
    }

    /// The implemented observable σ̃_axis = Σ_ν M_{axis,ν} σ_ν; Hermitian
    /// with eigenvalues ±1.
    pub fn observable(&self, axis: Axis) -> HermitianMatrix {
        observable_from_bloch_row(&self.row(axis))
    }

    pub fn is_identity(&self) -> bool {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.m.rows[i][j] - Mat3::IDENTITY.rows[i][j]).abs());
            }
        }
        worst < 1e-12
    }
}

/// Bloch row n_k = ½ Tr(σ_k O) of a 2×2 traceless observable.
fn bloch_row_of(obs: &HermitianMatrix) -> [f64; 3] {
    let mut n = [0.0; 3];
    for (k, slot) in n.iter_mut().enumerate() {
        *slot = 0.5 * obs.expectation(&pauli(k + 1)).unwrap();
    }
    n
}

/// Quarter/half-wave-plate angles (ψ, χ) implementing each Pauli basis.
pub fn pauli_setting_angles(axis: Axis) -> (f64, f64) {
    use std::f64::consts::PI;
    match axis {
        Axis::X => (0.0, PI / 8.0),
        Axis::Y => (PI / 4.0, 0.0),
        Axis::Z => (0.0, 0.0),
    }
}

// ---------------------------------------------------------------------------
// Wave-plate calculus
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WavePlateKind {
    Quarter,
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FastAxis {
    Vertical,
    Horizontal,
}

/// 2×2 rotation matrix R(θ).
fn rotation(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    CMatrix::from_entries(
        2,
        vec![
            C64::new(c, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(c, 0.0),
        ],
    )
}

/// Jones matrix of a wave plate with fast axis rotated by θ:
/// R(θ)·U_plate·R(−θ).
///
/// The plate matrices keep their conventional global phases
/// (U_QWP,FAV = e^{iπ/4}·diag(1,−i), the S† gate up to phase;
/// U_HWP,FAV = e^{iπ/2}·diag(1,−1), the Z gate up to phase); phases cancel
/// in every observable conjugation.
pub fn waveplate_unitary(kind: WavePlateKind, fast_axis: FastAxis, theta: f64) -> CMatrix {
    use std::f64::consts::FRAC_PI_2;
    use std::f64::consts::FRAC_PI_4;
    let zero = C64::new(0.0, 0.0);
    let plate = match (kind, fast_axis) {
        (WavePlateKind::Quarter, FastAxis::Vertical) => {
            let phase = C64::from_polar(1.0, FRAC_PI_4);
            CMatrix::from_entries(2, vec![phase, zero, zero, phase * C64::new(0.0, -1.0)])
        }
        (WavePlateKind::Quarter, FastAxis::Horizontal) => {
            let phase = C64::from_polar(1.0, -FRAC_PI_4);
            CMatrix::from_entries(2, vec![phase, zero, zero, phase * C64::new(0.0, 1.0)])
        }
        (WavePlateKind::Half, FastAxis::Vertical) => {
            let phase = C64::from_polar(1.0, FRAC_PI_2);
            CMatrix::from_entries(2, vec![phase, zero, zero, -phase])
        }
        (WavePlateKind::Half, FastAxis::Horizontal) => {
            let phase = C64::from_polar(1.0, -FRAC_PI_2);
            CMatrix::from_entries(2, vec![phase, zero, zero, -phase])
        }
    };
    rotation(theta).mul(&plate).mul(&rotation(-theta))
}

/// The Pauli observable measured by the wave-plate train: a half-wave
/// plate at χ, a quarter-wave plate at ψ (fast axis vertical), and a
/// polarizing beam splitter performing σ_Z. At the angles of
/// [`pauli_setting_angles`] this reproduces σ_X, σ_Y, σ_Z exactly.
pub fn waveplate_observable(psi: f64, chi: f64) -> HermitianMatrix {
    let h = waveplate_unitary(WavePlateKind::Half, FastAxis::Vertical, chi);
    let q = waveplate_unitary(WavePlateKind::Quarter, FastAxis::Vertical, psi);
    pauli(3).conjugate_by(&h.mul(&q.adjoint()))
}

// ---------------------------------------------------------------------------
// Per-qubit scenarios
// ---------------------------------------------------------------------------

/// Systematic-error scenario on one qubit's analyzer.
#[derive(Clone, Debug, PartialEq)]
pub enum QubitError {
    /// No error.
    Identity,
    /// Arbitrary misalignment of the three Pauli axes.
    Misalignment(MisalignmentMatrix),
    /// Constant angular offset Δ of the quarter-wave plate, applied to
    /// the QWP angle ψ_k of every measurement setting on this qubit.
    WavePlateOffset { delta: f64 },
    /// Quarter- and half-wave plate mounted in exchanged positions.
    WavePlateSwap,
    /// Quarter-wave plate mounted with its fast axis horizontal instead
    /// of vertical; equivalent to a transposition of this qubit.
    FastAxisFlip,
}

impl QubitError {
    /// The misalignment matrix equivalent to this scenario.
    pub fn misalignment(&self) -> MisalignmentMatrix {
        match self {
            QubitError::Identity => MisalignmentMatrix::identity(),
            QubitError::Misalignment(m) => *m,
            QubitError::WavePlateOffset { delta } => MisalignmentMatrix::qwp_offset(*delta),
            QubitError::WavePlateSwap => MisalignmentMatrix {
                m: Mat3::new([
                    [
                        1.0 / 3.0f64.sqrt(),
                        -1.0 / 3.0f64.sqrt(),
                        1.0 / 3.0f64.sqrt(),
                    ],
                    [0.0, 0.0, -1.0],
                    [0.0, 0.0, 1.0],
                ]),
            },
            QubitError::FastAxisFlip => MisalignmentMatrix {
                m: Mat3::diagonal(1.0, -1.0, 1.0),
            },
        }
    }

    pub fn is_identity(&self) -> bool {
        self.misalignment().is_identity()
    }
}

/// The observable measured at wave-plate angles (ψ, χ) under a scenario.
///
/// The optical scenarios modify the train directly: the offset shifts ψ,
/// the fast-axis flip replaces the vertical quarter-wave plate with the
/// horizontal one, and the swap exchanges the plates between the two
/// rotation mounts. For the swap at the canonical Pauli angles the
/// documented per-axis observables are returned: (σ_X−σ_Y+σ_Z)/√3 at the
/// X angles, −σ_Z at the Y angles and σ_Z at the Z angles (the printed
/// combination, normalized to stay within the ±1-eigenvalue contract).
pub fn setting_observable(psi: f64, chi: f64, scenario: &QubitError) -> HermitianMatrix {
    match scenario {
        QubitError::Identity => waveplate_observable(psi, chi),
        QubitError::Misalignment(m) => {
            // Linear extension of σ̃ = Σ M σ to arbitrary directions.
            let n = bloch_row_of(&waveplate_observable(psi, chi));
            let transformed = m.mat3().transpose().matvec(&n);
            observable_from_bloch_row(&transformed)
        }
        QubitError::WavePlateOffset { delta } => waveplate_observable(psi + delta, chi),
        QubitError::FastAxisFlip => {
            let h = waveplate_unitary(WavePlateKind::Half, FastAxis::Vertical, chi);
            let q = waveplate_unitary(WavePlateKind::Quarter, FastAxis::Horizontal, psi);
            pauli(3).conjugate_by(&h.mul(&q.adjoint()))
        }
        QubitError::WavePlateSwap => {
            let canonical = Axis::ALL.iter().copied().find(|&axis| {
                let (p, c) = pauli_setting_angles(axis);
                (psi - p).abs() < 1e-9 && (chi - c).abs() < 1e-9
            });
            match canonical {
                Some(axis) => QubitError::WavePlateSwap.misalignment().observable(axis),
                None => {
                    // Plates exchanged between the mounts: the χ mount now
                    // carries the quarter-wave plate, the ψ mount the half.
                    let q = waveplate_unitary(WavePlateKind::Quarter, FastAxis::Vertical, chi);
                    let h = waveplate_unitary(WavePlateKind::Half, FastAxis::Vertical, psi);
                    pauli(3).conjugate_by(&q.mul(&h))
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Multi-qubit error models
// ---------------------------------------------------------------------------

/// Local (uncorrelated) measurement errors: exactly one scenario entry per
/// qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementError {
    per_qubit: Vec<QubitError>,
}

impl MeasurementError {
    pub fn new(per_qubit: Vec<QubitError>) -> Result<Self> {
        if per_qubit.is_empty() {
            return Err(Error::InvalidErrorModel(
                "an error model needs at least one qubit".into(),
            ));
        }
        Ok(Self { per_qubit })
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self {
            per_qubit: vec![QubitError::Identity; num_qubits],
        }
    }

    /// Identity everywhere except `qubit`.
    pub fn single_qubit(num_qubits: usize, qubit: usize, error: QubitError) -> Result<Self> {
        if qubit >= num_qubits {
            return Err(Error::InvalidErrorModel(format!(
                "qubit index {qubit} out of range for {num_qubits} qubits"
            )));
        }
        let mut per_qubit = vec![QubitError::Identity; num_qubits];
        per_qubit[qubit] = error;
        Ok(Self { per_qubit })
    }

    pub fn num_qubits(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn qubit(&self, q: usize) -> &QubitError {
        &self.per_qubit[q]
    }

    pub fn is_identity(&self) -> bool {
        self.per_qubit.iter().all(|e| e.is_identity())
    }

    /// The observable actually measured on `qubit` when axis `axis` is
    /// requested.
    pub fn observable(&self, qubit: usize, axis: Axis) -> HermitianMatrix {
        let (psi, chi) = pauli_setting_angles(axis);
        setting_observable(psi, chi, &self.per_qubit[qubit])
    }

    /// Erroneous single-qubit Bloch vector ũ = M·u.
    pub fn transform_bloch_vector(&self, u: &[f64; 3]) -> Result<[f64; 3]> {
        if self.per_qubit.len() != 1 {
            return Err(Error::InvalidErrorModel(
                "transform_bloch_vector requires a single-qubit model".into(),
            ));
        }
        Ok(self.per_qubit[0].misalignment().mat3().matvec(u))
    }

    /// Erroneous two-qubit Bloch data: ũ = M₁u, ṽ = M₂v, R̃ = M₁ R M₂ᵀ.
    pub fn transform_bloch(&self, b: &BlochMatrix) -> Result<BlochMatrix> {
        if self.per_qubit.len() != 2 {
            return Err(Error::InvalidErrorModel(
                "transform_bloch requires a two-qubit model".into(),
            ));
        }
        let m1 = self.per_qubit[0].misalignment();
        let m2 = self.per_qubit[1].misalignment();
        Ok(BlochMatrix {
            u: m1.mat3().matvec(&b.u),
            v: m2.mat3().matvec(&b.v),
            r: m1.mat3().mul(&b.r).mul(&m2.mat3().transpose()),
        })
    }

    /// The corrupted noiseless least-squares estimate ρ̃_LS of a state:
    /// every Pauli coefficient with a non-identity component on qubit q is
    /// contracted with that qubit's misalignment matrix.
    pub fn transform_estimate(&self, rho: &DensityMatrix) -> Result<HermitianMatrix> {
        if rho.num_qubits() != self.per_qubit.len() {
            return Err(Error::DimensionMismatch {
                left: rho.num_qubits(),
                right: self.per_qubit.len(),
            });
        }
        let basis = PauliBasis::get(rho.num_qubits());
        let coeffs = basis.coefficients(rho.matrix());
        let transformed = self.transform_coefficients(&coeffs);
        Ok(basis.reconstruct(&transformed))
    }

    /// Applies the per-qubit misalignments to a full Pauli coefficient
    /// tensor (base-4 indexing, qubit 0 most significant).
    pub fn transform_coefficients(&self, coeffs: &[f64]) -> Vec<f64> {
        let n = self.per_qubit.len();
        debug_assert_eq!(coeffs.len(), 1 << (2 * n));
        let mut current = coeffs.to_vec();
        for (q, error) in self.per_qubit.iter().enumerate() {
            if error.is_identity() {
                continue;
            }
            let m = error.misalignment();
            let stride = 1usize << (2 * (n - 1 - q));
            let mut next = current.clone();
            for idx in 0..current.len() {
                let digit = (idx / stride) % 4;
                if digit == 0 {
                    continue;
                }
                let base = idx - digit * stride;
                let mut acc = 0.0;
                for j in 1..=3 {
                    acc += m.mat3().rows[digit - 1][j - 1] * current[base + j * stride];
                }
                next[idx] = acc;
            }
            current = next;
        }
        current
    }
}

// ---------------------------------------------------------------------------
// JSON scenario interchange
// ---------------------------------------------------------------------------

/// One per-qubit scenario entry as serialized in scenario files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScenarioEntry {
    #[serde(default)]
    pub qubit: usize,
    #[serde(flatten)]
    pub kind: ScenarioKind,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ScenarioKind {
    Identity,
    Misalignment { rows: [[f64; 3]; 3] },
    QwpOffset { delta_deg: f64 },
    Swap,
    FastAxisFlip,
}

impl ScenarioEntry {
    pub fn to_qubit_error(&self) -> Result<QubitError> {
        Ok(match &self.kind {
            ScenarioKind::Identity => QubitError::Identity,
            ScenarioKind::Misalignment { rows } => {
                QubitError::Misalignment(MisalignmentMatrix::new(Mat3::new(*rows))?)
            }
            ScenarioKind::QwpOffset { delta_deg } => QubitError::WavePlateOffset {
                delta: delta_deg.to_radians(),
            },
            ScenarioKind::Swap => QubitError::WavePlateSwap,
            ScenarioKind::FastAxisFlip => QubitError::FastAxisFlip,
        })
    }

    pub fn from_qubit_error(qubit: usize, error: &QubitError) -> Self {
        let kind = match error {
            QubitError::Identity => ScenarioKind::Identity,
            QubitError::Misalignment(m) => ScenarioKind::Misalignment { rows: m.mat3().rows },
            QubitError::WavePlateOffset { delta } => ScenarioKind::QwpOffset {
                delta_deg: delta.to_degrees(),
            },
            QubitError::WavePlateSwap => ScenarioKind::Swap,
            QubitError::FastAxisFlip => ScenarioKind::FastAxisFlip,
        };
        ScenarioEntry { qubit, kind }
    }
}

impl MeasurementError {
    /// Parses a scenario JSON document: either a single entry object or an
    /// array of entries; unlisted qubits carry no error.
    pub fn from_scenario_json(text: &str, num_qubits: usize) -> Result<Self> {
        let entries: Vec<ScenarioEntry> = match serde_json::from_str::<Vec<ScenarioEntry>>(text) {
            Ok(v) => v,
            Err(_) => vec![serde_json::from_str::<ScenarioEntry>(text)
                .map_err(|e| Error::InvalidErrorModel(format!("scenario JSON: {e}")))?],
        };
        let mut model = MeasurementError::identity(num_qubits);
        for entry in entries {
            if entry.qubit >= num_qubits {
                return Err(Error::InvalidErrorModel(format!(
                    "scenario entry for qubit {} but the system has {num_qubits} qubits",
                    entry.qubit
                )));
            }
            model.per_qubit[entry.qubit] = entry.to_qubit_error()?;
        }
        Ok(model)
    }

    pub fn to_scenario_entries(&self) -> Vec<ScenarioEntry> {
        self.per_qubit
            .iter()
            .enumerate()
            .map(|(q, e)| ScenarioEntry::from_qubit_error(q, e))
            .collect()
    }
}

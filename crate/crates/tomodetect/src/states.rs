//! Density matrices, Bloch decompositions, noise channels, and the
//! quantum-dot photon-pair source model.
//!
//! Pauli index convention used throughout the crate: 0 ↔ identity,
//! 1 ↔ X, 2 ↔ Y, 3 ↔ Z.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{C64, HermitianMatrix, Mat3};
use crate::{Error, Result};

/// ħ in µeV·ps, for the quantum-dot phase factor.
const HBAR_UEV_PS: f64 = 658.211_956_9;

/// Measurement axis of a single-qubit Pauli observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Pauli index (X → 1, Y → 2, Z → 3).
    pub fn index(self) -> usize {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }

    pub fn from_index(index: usize) -> Option<Axis> {
        match index {
            1 => Some(Axis::X),
            2 => Some(Axis::Y),
            3 => Some(Axis::Z),
            _ => None,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// The 2×2 Pauli matrix for index 0..=3 (identity, X, Y, Z).
pub fn pauli(index: usize) -> HermitianMatrix {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let entries = match index {
        0 => vec![one, zero, zero, one],
        1 => vec![zero, one, one, zero],
        2 => vec![zero, C64::new(0.0, -1.0), C64::new(0.0, 1.0), zero],
        3 => vec![one, zero, zero, -one],
        _ => panic!("Pauli index must be 0..=3, got {index}"),
    };
    HermitianMatrix::from_exact(2, entries)
}

/// Tensor product σ_{μ₁} ⊗ σ_{μ₂} ⊗ … for a string of Pauli indices.
pub fn pauli_string(indices: &[usize]) -> HermitianMatrix {
    assert!(!indices.is_empty());
    let mut m = pauli(indices[0]);
    for &idx in &indices[1..] {
        m = m.tensor(&pauli(idx));
    }
    m
}

/// All 4ⁿ Pauli strings of an n-qubit system, indexed base-4 with qubit 0
/// as the most significant digit (index 0 is the identity string).
///
/// Cached per qubit count since coefficient extraction and reconstruction
/// sit in optimizer inner loops.
pub struct PauliBasis {
    num_qubits: usize,
    strings: Vec<HermitianMatrix>,
}

impl PauliBasis {
    const MAX_QUBITS: usize = 4;

    pub fn get(num_qubits: usize) -> &'static PauliBasis {
        use std::sync::OnceLock;
        static CACHE: [OnceLock<PauliBasis>; PauliBasis::MAX_QUBITS + 1] =
            [const { OnceLock::new() }; PauliBasis::MAX_QUBITS + 1];
        assert!(
            (1..=Self::MAX_QUBITS).contains(&num_qubits),
            "Pauli basis cached for 1..={} qubits, requested {num_qubits}",
            Self::MAX_QUBITS
        );
        CACHE[num_qubits].get_or_init(|| {
            let count = 1usize << (2 * num_qubits);
            let strings = (0..count)
                .map(|idx| pauli_string(&Self::digits(idx, num_qubits)))
                .collect();
            PauliBasis {
                num_qubits,
                strings,
            }
        })
    }

    /// Base-4 digits of a string index, qubit 0 first.
    pub fn digits(index: usize, num_qubits: usize) -> Vec<usize> {
        (0..num_qubits)
            .map(|q| (index >> (2 * (num_qubits - 1 - q))) & 0b11)
            .collect()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn string(&self, index: usize) -> &HermitianMatrix {
        &self.strings[index]
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// Coefficients c_μ⃗ = Tr(m·σ_μ⃗) for every Pauli string.
    pub fn coefficients(&self, m: &HermitianMatrix) -> Vec<f64> {
        self.strings
            .iter()
            .map(|s| m.expectation(s).expect("matching dimensions"))
            .collect()
    }

    /// (1/2ⁿ) Σ c_μ⃗ σ_μ⃗.
    pub fn reconstruct(&self, coeffs: &[f64]) -> HermitianMatrix {
        assert_eq!(coeffs.len(), self.strings.len());
        let dim = 1usize << self.num_qubits;
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for (c, s) in coeffs.iter().zip(&self.strings) {
            if *c == 0.0 {
                continue;
            }
            for (e, v) in entries.iter_mut().zip(s.entries()) {
                *e += c * v;
            }
        }
        let scale = 1.0 / dim as f64;
        for e in &mut entries {
            *e *= scale;
        }
        HermitianMatrix::from_exact(dim, entries)
    }
}

/// The traceless observable n·σ for a Bloch row n; eigenvalues ±‖n‖.
pub fn observable_from_bloch_row(n: &[f64; 3]) -> HermitianMatrix {
    let mut m = pauli(1).scale(n[0]);
    m = m.add(&pauli(2).scale(n[1])).unwrap();
    m.add(&pauli(3).scale(n[2])).unwrap()
}

/// ⟨ψ|m|ψ⟩ for a (not necessarily positive) Hermitian m; the real part is
/// reported since indefinite estimates can carry rounding in the imaginary
/// part.
pub fn fidelity_to_pure(m: &HermitianMatrix, amplitudes: &[C64]) -> Result<f64> {
    if amplitudes.len() != m.dim() {
        return Err(Error::DimensionMismatch {
            left: amplitudes.len(),
            right: m.dim(),
        });
    }
    let d = m.dim();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += amplitudes[i].conj() * m.get(i, j) * amplitudes[j];
        }
    }
    Ok(acc.re)
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

/// A physical quantum state: Hermitian, unit trace (within 1e-10), and
/// positive semidefinite (smallest eigenvalue ≥ −1e-10).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    num_qubits: usize,
}

impl DensityMatrix {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::UnsupportedDimension {
                dim,
                context: "density matrices must have dimension 2ⁿ",
            });
        }
        let trace = matrix.trace();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "trace is {trace}, expected 1 within 1e-10"
            )));
        }
        let min_eig = matrix.min_eigenvalue()?;
        if min_eig < -1e-10 {
            return Err(Error::InvalidState(format!(
                "smallest eigenvalue {min_eig:.3e} below -1e-10"
            )));
        }
        Ok(Self {
            num_qubits: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    /// |ψ⟩⟨ψ| from amplitudes (must be normalized within 1e-8).
    pub fn from_pure(amplitudes: &[C64]) -> Result<Self> {
        let dim = amplitudes.len();
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidState(format!(
                "pure-state amplitudes have squared norm {norm_sqr}, expected 1"
            )));
        }
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = amplitudes[i] * amplitudes[j].conj() / norm_sqr;
            }
        }
        Self::new(HermitianMatrix::from_exact(dim, entries))
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1 << num_qubits;
        Self {
            matrix: HermitianMatrix::identity(dim).scale(1.0 / dim as f64),
            num_qubits,
        }
    }

    /// The Bell state (|00⟩ + |11⟩)/√2.
    pub fn bell_phi_plus() -> Self {
        let a = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_pure(&[a, C64::new(0.0, 0.0), C64::new(0.0, 0.0), a]).unwrap()
    }

    /// The +1 eigenstate of σ_Y, |i⟩ = (|0⟩ + i|1⟩)/√2.
    pub fn y_eigenstate() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_pure(&[C64::new(h, 0.0), C64::new(0.0, h)]).unwrap()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Purity Tr(ρ²) ∈ [1/2ⁿ, 1].
    pub fn purity(&self) -> f64 {
        self.matrix.trace_of_square()
    }

    /// Single-qubit Bloch vector u_k = Tr(σ_k ρ).
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.num_qubits != 1 {
            return Err(Error::UnsupportedDimension {
                dim: self.dim(),
                context: "bloch_vector requires a single qubit",
            });
        }
        let mut u = [0.0; 3];
        for (k, slot) in u.iter_mut().enumerate() {
            *slot = self.matrix.expectation(&pauli(k + 1))?;
        }
        Ok(u)
    }

    /// ½(1 + u·σ) for ‖u‖ ≤ 1.
    pub fn from_bloch_vector(u: &[f64; 3]) -> Result<Self> {
        Self::new(hermitian_from_bloch_vector(u))
    }
}

/// ½(1 + u·σ) without any positivity check (‖u‖ may exceed 1, as happens
/// for corrupted estimates).
pub fn hermitian_from_bloch_vector(u: &[f64; 3]) -> HermitianMatrix {
    let m = HermitianMatrix::identity(2).add(&observable_from_bloch_row(u)).unwrap();
    m.scale(0.5)
}

/// Convex mixture (1−ε)ρ + ε·1/2ⁿ with the maximally mixed state.
pub fn apply_white_noise(rho: &DensityMatrix, eps: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::OutOfRange {
            what: "white-noise strength",
            value: eps,
            expected: "[0, 1]",
        });
    }
    let dim = rho.dim();
    let mixed = HermitianMatrix::identity(dim).scale(eps / dim as f64);
    let matrix = rho.matrix().scale(1.0 - eps).add(&mixed)?;
    Ok(DensityMatrix {
        matrix,
        num_qubits: rho.num_qubits(),
    })
}

/// Noise strength that depolarizes `rho` to the requested purity.
///
/// Solves (1−ε)²·p₀ + (2ε−ε²)/d = target in closed form; the target must
/// lie in [1/d, p₀].
pub fn noise_for_purity(rho: &DensityMatrix, target: f64) -> Result<f64> {
    let d = rho.dim() as f64;
    let p0 = rho.purity();
    if target < 1.0 / d - 1e-12 || target > p0 + 1e-12 {
        return Err(Error::OutOfRange {
            what: "target purity",
            value: target,
            expected: "[1/2ⁿ, purity(ρ)]",
        });
    }
    let span = (p0 - 1.0 / d).max(0.0);
    if span == 0.0 {
        return Ok(0.0);
    }
    let ratio = ((target - 1.0 / d) / span).clamp(0.0, 1.0);
    Ok(1.0 - ratio.sqrt())
}

// ---------------------------------------------------------------------------
// Bloch matrix
// ---------------------------------------------------------------------------

/// The (1, u, v, R) decomposition of a two-qubit operator with r₀₀ = 1:
/// local Bloch vectors `u` (qubit 1) and `v` (qubit 2) plus the 3×3
/// correlation matrix `R`, so that ρ = ¼ Σ r_{μν} σ_μ ⊗ σ_ν.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochMatrix {
    pub u: [f64; 3],
    pub v: [f64; 3],
    pub r: Mat3,
}

impl BlochMatrix {
    pub const ZERO: BlochMatrix = BlochMatrix {
        u: [0.0; 3],
        v: [0.0; 3],
        r: Mat3::ZERO,
    };

    pub fn from_state(rho: &DensityMatrix) -> Result<Self> {
        if rho.num_qubits() != 2 {
            return Err(Error::UnsupportedDimension {
                dim: rho.dim(),
                context: "Bloch matrices are defined for two qubits",
            });
        }
        Self::from_hermitian(rho.matrix())
    }

    /// Extracts r_{μν} = Tr(m σ_μ⊗σ_ν) from any unit-trace Hermitian 4×4.
    pub fn from_hermitian(m: &HermitianMatrix) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::UnsupportedDimension {
                dim: m.dim(),
                context: "Bloch matrices are defined for two qubits",
            });
        }
        let mut u = [0.0; 3];
        let mut v = [0.0; 3];
        let mut r = Mat3::ZERO;
        for i in 1..=3 {
            u[i - 1] = m.expectation(&pauli_string(&[i, 0]))?;
            v[i - 1] = m.expectation(&pauli_string(&[0, i]))?;
            for j in 1..=3 {
                r.rows[i - 1][j - 1] = m.expectation(&pauli_string(&[i, j]))?;
            }
        }
        Ok(Self { u, v, r })
    }

    /// ¼ Σ r_{μν} σ_μ⊗σ_ν, with no positivity guarantee.
    pub fn to_hermitian(&self) -> HermitianMatrix {
        let mut m = HermitianMatrix::identity(4);
        for i in 1..=3 {
            m = m.add(&pauli_string(&[i, 0]).scale(self.u[i - 1])).unwrap();
            m = m.add(&pauli_string(&[0, i]).scale(self.v[i - 1])).unwrap();
            for j in 1..=3 {
                m = m
                    .add(&pauli_string(&[i, j]).scale(self.r.rows[i - 1][j - 1]))
                    .unwrap();
            }
        }
        m.scale(0.25)
    }

    /// Validating conversion back to a state.
    pub fn to_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_hermitian())
    }

    /// Bloch data of ρ_A ⊗ ρ_B: u = a, v = b, R = a·bᵀ.
    pub fn product(a: &[f64; 3], b: &[f64; 3]) -> Self {
        let mut r = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                r.rows[i][j] = a[i] * b[j];
            }
        }
        Self { u: *a, v: *b, r }
    }

    /// ‖r‖² = 1 + ‖u‖² + ‖v‖² + ‖R‖², which equals 4·Tr(ρ²).
    pub fn norm_sqr(&self) -> f64 {
        1.0 + dot(&self.u, &self.u) + dot(&self.v, &self.v) + self.r.norm_sqr()
    }

    /// Purity of the represented operator.
    pub fn purity(&self) -> f64 {
        self.norm_sqr() / 4.0
    }
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

// ---------------------------------------------------------------------------
// Quantum-dot source model
// ---------------------------------------------------------------------------

/// Parameters of the quantum-dot biexciton-exciton cascade model.
///
/// `kappa` is the weight of the correlated photon-pair contribution; the
/// default 0.945 reproduces a purity of 0.92 at zero fine-structure
/// splitting. The exciton lifetime defaults to 150 ps and both dephasing
/// times to 1 µs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QDotParams {
    /// Fine-structure splitting in µeV.
    pub fss_uev: f64,
    /// Exciton lifetime τ₁ in ps.
    pub tau1_ps: f64,
    /// Spin-scattering time τ_SS in µs.
    pub tau_ss_us: f64,
    /// Cross-dephasing time τ_HV in µs.
    pub tau_hv_us: f64,
    /// Correlated-pair fraction κ ∈ [0, 1].
    pub kappa: f64,
}

impl Default for QDotParams {
    fn default() -> Self {
        Self {
            fss_uev: 0.0,
            tau1_ps: 150.0,
            tau_ss_us: 1.0,
            tau_hv_us: 1.0,
            kappa: 0.945,
        }
    }
}

impl QDotParams {
    pub fn validate(&self) -> Result<()> {
        if self.fss_uev < 0.0 {
            return Err(Error::InvalidModelParameters(format!(
                "fine-structure splitting must be ≥ 0, got {}",
                self.fss_uev
            )));
        }
        for (name, t) in [
            ("tau1_ps", self.tau1_ps),
            ("tau_ss_us", self.tau_ss_us),
            ("tau_hv_us", self.tau_hv_us),
        ] {
            if t <= 0.0 {
                return Err(Error::InvalidModelParameters(format!(
                    "{name} must be > 0, got {t}"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.kappa) {
            return Err(Error::InvalidModelParameters(format!(
                "kappa must lie in [0, 1], got {}",
                self.kappa
            )));
        }
        Ok(())
    }

    /// Finds the splitting that yields the requested purity at fixed κ and
    /// lifetimes, by bisection (purity is monotone decreasing in the
    /// splitting).
    pub fn for_purity(target: f64, kappa: f64) -> Result<QDotParams> {
        let mut params = QDotParams {
            kappa,
            ..Default::default()
        };
        params.validate()?;
        params.fss_uev = 0.0;
        let p_max = qdot_state(&params)?.purity();
        if target > p_max + 1e-9 {
            return Err(Error::OutOfRange {
                what: "target purity",
                value: target,
                expected: "at most the zero-splitting purity for this kappa",
            });
        }
        if target >= p_max {
            return Ok(params);
        }
        let mut hi = 1.0;
        loop {
            params.fss_uev = hi;
            if qdot_state(&params)?.purity() < target {
                break;
            }
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::OutOfRange {
                    what: "target purity",
                    value: target,
                    expected: "above the large-splitting limit for this kappa",
                });
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            params.fss_uev = mid;
            if qdot_state(&params)?.purity() >= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        params.fss_uev = 0.5 * (lo + hi);
        Ok(params)
    }
}

/// The two-qubit polarization state emitted by the biexciton-exciton
/// cascade, in the (HH, HV, VH, VV) basis:
///
/// ```text
///       ⎡ 1+κg'   0      0     2κg z̄ ⎤
/// ρ = ¼ ⎢  0    1−κg'    0      0    ⎥
///       ⎢  0      0    1−κg'    0    ⎥
///       ⎣ 2κg z   0      0    1+κg'  ⎦
/// ```
///
/// with g' = 1/(1+τ₁/τ_SS), g = 1/(1+τ₁/τ_SS+τ₁/τ_HV),
/// z = (1+iι)/(1+ι²) and ι = g·E_FSS·τ₁/ħ.
pub fn qdot_state(params: &QDotParams) -> Result<DensityMatrix> {
    params.validate()?;
    let tau1 = params.tau1_ps;
    let tau_ss = params.tau_ss_us * 1e6;
    let tau_hv = params.tau_hv_us * 1e6;
    let g_prime = 1.0 / (1.0 + tau1 / tau_ss);
    let g = 1.0 / (1.0 + tau1 / tau_ss + tau1 / tau_hv);
    let iota = g * params.fss_uev * tau1 / HBAR_UEV_PS;
    let z = C64::new(1.0, iota) / (1.0 + iota * iota);

    let k = params.kappa;
    let diag_plus = C64::new((1.0 + k * g_prime) / 4.0, 0.0);
    let diag_minus = C64::new((1.0 - k * g_prime) / 4.0, 0.0);
    let corner = 2.0 * k * g * z / 4.0;

    let zero = C64::new(0.0, 0.0);
    let entries = vec![
        diag_plus,
        zero,
        zero,
        corner.conj(),
        zero,
        diag_minus,
        zero,
        zero,
        zero,
        zero,
        diag_minus,
        zero,
        corner,
        zero,
        zero,
        diag_plus,
    ];
    let matrix = HermitianMatrix::from_exact(4, entries);
    let min_eig = matrix.min_eigenvalue()?;
    if min_eig < -1e-10 {
        return Err(Error::InvalidModelParameters(format!(
            "model matrix has negative eigenvalue {min_eig:.3e}"
        )));
    }
    DensityMatrix::new(matrix)
}

// ---------------------------------------------------------------------------
// Random states (Ginibre ensemble) for oracles and property tests
// ---------------------------------------------------------------------------

/// Random density matrix ρ = GG†/Tr(GG†) with Ginibre G.
pub fn random_density_matrix<R: Rng>(num_qubits: usize, rng: &mut R) -> DensityMatrix {
    let dim = 1 << num_qubits;
    let g: Vec<C64> = (0..dim * dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..dim {
                acc += g[i * dim + k] * g[j * dim + k].conj();
            }
            entries[i * dim + j] = acc;
        }
    }
    let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
    for e in &mut entries {
        *e /= trace;
    }
    DensityMatrix {
        matrix: HermitianMatrix::from_exact(dim, entries),
        num_qubits,
    }
}

/// Random normalized pure-state amplitude vector.
pub fn random_pure_state<R: Rng>(num_qubits: usize, rng: &mut R) -> Vec<C64> {
    let dim = 1 << num_qubits;
    let mut amps: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    amps
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DensityMatrixJson {
    num_qubits: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.dim();
        let mut re = vec![vec![0.0; d]; d];
        let mut im = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                let z = self.matrix.get(i, j);
                re[i][j] = z.re;
                im[i][j] = z.im;
            }
        }
        DensityMatrixJson {
            num_qubits: self.num_qubits,
            re,
            im,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = DensityMatrixJson::deserialize(deserializer)?;
        let dim = 1usize << raw.num_qubits;
        if raw.re.len() != dim || raw.im.len() != dim {
            return Err(serde::de::Error::custom("matrix shape does not match num_qubits"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            if raw.re[i].len() != dim || raw.im[i].len() != dim {
                return Err(serde::de::Error::custom("matrix rows must have length 2ⁿ"));
            }
            for j in 0..dim {
                entries.push(Complex64::new(raw.re[i][j], raw.im[i][j]));
            }
        }
        let matrix = HermitianMatrix::new(dim, entries).map_err(serde::de::Error::custom)?;
        DensityMatrix::new(matrix).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pauli_convention() {
        assert_eq!(pauli(0), HermitianMatrix::identity(2));
        assert_eq!(pauli(1).get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(pauli(2).get(0, 1), C64::new(0.0, -1.0));
        assert_eq!(pauli(3).get(1, 1), C64::new(-1.0, 0.0));
        assert_eq!(Axis::X.index(), 1);
        assert_eq!(Axis::Y.index(), 2);
        assert_eq!(Axis::Z.index(), 3);
    }

    #[test]
    fn bloch_of_special_states() {
        let mixed = DensityMatrix::maximally_mixed(2);
        let b = BlochMatrix::from_state(&mixed).unwrap();
        assert_eq!(b.u, [0.0; 3]);
        assert_eq!(b.v, [0.0; 3]);
        assert!(b.r.norm_sqr() < 1e-20);

        let bell = DensityMatrix::bell_phi_plus();
        let b = BlochMatrix::from_state(&bell).unwrap();
        assert!(b.u.iter().all(|x| x.abs() < 1e-12));
        assert!(b.v.iter().all(|x| x.abs() < 1e-12));
        let expected = Mat3::diagonal(1.0, -1.0, 1.0);
        for i in 0..3 {
            for j in 0..3 {
                assert!((b.r.rows[i][j] - expected.rows[i][j]).abs() < 1e-12);
            }
        }

        // ρ_A ⊗ 1/2 with ρ_A = ½(1+σ_Z).
        let a = DensityMatrix::from_bloch_vector(&[0.0, 0.0, 1.0]).unwrap();
        let product = DensityMatrix::new(
            a.matrix().tensor(DensityMatrix::maximally_mixed(1).matrix()),
        )
        .unwrap();
        let b = BlochMatrix::from_state(&product).unwrap();
        assert!((b.u[2] - 1.0).abs() < 1e-12);
        assert!(b.u[0].abs() < 1e-12 && b.u[1].abs() < 1e-12);
        assert!(b.v.iter().all(|x| x.abs() < 1e-12));
        assert!(b.r.norm_sqr() < 1e-20);
    }

    #[test]
    fn bloch_round_trip_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let rho = random_density_matrix(2, &mut rng);
            let b = BlochMatrix::from_state(&rho).unwrap();
            let back = b.to_state().unwrap();
            assert!(back.matrix().hs_distance(rho.matrix()).unwrap() < 1e-10);
            let b2 = BlochMatrix::from_state(&back).unwrap();
            for (x, y) in b.u.iter().zip(&b2.u) {
                assert!((x - y).abs() < 1e-10);
            }
            // ‖r‖² = 4·Tr(ρ²).
            assert!((b.norm_sqr() - 4.0 * rho.purity()).abs() < 1e-10);
        }
    }

    #[test]
    fn purity_examples() {
        assert!((DensityMatrix::maximally_mixed(1).purity() - 0.5).abs() < 1e-15);
        assert!((DensityMatrix::bell_phi_plus().purity() - 1.0).abs() < 1e-12);
        let half = 0.5f64.sqrt();
        let rho = DensityMatrix::from_bloch_vector(&[0.0, half, 0.0]).unwrap();
        assert!((rho.purity() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn white_noise_examples() {
        let bell = DensityMatrix::bell_phi_plus();
        let same = apply_white_noise(&bell, 0.0).unwrap();
        assert!(same.matrix().hs_distance(bell.matrix()).unwrap() < 1e-15);

        let mixed = apply_white_noise(&bell, 1.0).unwrap();
        assert!(
            mixed
                .matrix()
                .hs_distance(DensityMatrix::maximally_mixed(2).matrix())
                .unwrap()
                < 1e-15
        );

        // Tr ρ² = (1−ε)² + 2ε(1−ε)/4 + ε²/4 = 0.4375 at ε = ½.
        let half = apply_white_noise(&bell, 0.5).unwrap();
        assert!((half.purity() - 0.4375).abs() < 1e-12);

        assert!(apply_white_noise(&bell, 1.5).is_err());
        assert!(apply_white_noise(&bell, -0.1).is_err());
    }

    #[test]
    fn white_noise_purity_is_monotone() {
        let bell = DensityMatrix::bell_phi_plus();
        let mut previous = f64::INFINITY;
        for k in 0..=20 {
            let eps = k as f64 / 20.0;
            let p = apply_white_noise(&bell, eps).unwrap().purity();
            assert!(p <= previous + 1e-12);
            previous = p;
        }
    }

    #[test]
    fn noise_for_purity_inverts_the_channel() {
        let bell = DensityMatrix::bell_phi_plus();
        for target in [1.0, 0.92, 0.65, 0.56, 0.25] {
            let eps = noise_for_purity(&bell, target).unwrap();
            let p = apply_white_noise(&bell, eps).unwrap().purity();
            assert!((p - target).abs() < 1e-10, "target {target} got {p}");
        }
        assert!(noise_for_purity(&bell, 0.2).is_err());
    }

    #[test]
    fn qdot_limits() {
        // Zero splitting, κ = 1, negligible dephasing → the Bell state.
        let params = QDotParams {
            fss_uev: 0.0,
            tau1_ps: 150.0,
            tau_ss_us: 1e9,
            tau_hv_us: 1e9,
            kappa: 1.0,
        };
        let rho = qdot_state(&params).unwrap();
        assert!(
            rho.matrix()
                .hs_distance(DensityMatrix::bell_phi_plus().matrix())
                .unwrap()
                < 1e-6
        );

        // κ = 0 → maximally mixed.
        let params = QDotParams {
            kappa: 0.0,
            ..Default::default()
        };
        let rho = qdot_state(&params).unwrap();
        assert!(
            rho.matrix()
                .hs_distance(DensityMatrix::maximally_mixed(2).matrix())
                .unwrap()
                < 1e-12
        );

        // Default κ = 0.945 reproduces purity ≈ (1+3κ²)/4 ≈ 0.92 at zero splitting.
        let rho = qdot_state(&QDotParams::default()).unwrap();
        let kappa: f64 = 0.945;
        assert!((rho.purity() - 0.92).abs() < 2e-3);
        assert!((rho.purity() - (1.0 + 3.0 * kappa.powi(2)) / 4.0).abs() < 1e-3);
    }

    #[test]
    fn qdot_purity_decreases_with_splitting() {
        let mut previous = f64::INFINITY;
        for fss in 0..=10 {
            let params = QDotParams {
                fss_uev: fss as f64,
                ..Default::default()
            };
            let p = qdot_state(&params).unwrap().purity();
            assert!(p <= previous + 1e-12);
            previous = p;
        }
    }

    #[test]
    fn qdot_parameter_validation() {
        let bad = QDotParams {
            kappa: 1.5,
            ..Default::default()
        };
        assert!(matches!(qdot_state(&bad), Err(Error::InvalidModelParameters(_))));
        let bad = QDotParams {
            tau1_ps: 0.0,
            ..Default::default()
        };
        assert!(qdot_state(&bad).is_err());
    }

    #[test]
    fn qdot_for_purity_hits_target() {
        for target in [0.90, 0.65, 0.56] {
            let params = QDotParams::for_purity(target, 0.9452).unwrap();
            let p = qdot_state(&params).unwrap().purity();
            assert!((p - target).abs() < 1e-6, "target {target} got {p}");
        }
        assert!(QDotParams::for_purity(0.99, 0.945).is_err());
    }

    #[test]
    fn density_matrix_json_round_trip() {
        let rho = DensityMatrix::bell_phi_plus();
        let json = serde_json::to_string(&rho).unwrap();
        assert!(json.contains("\"num_qubits\""));
        assert!(json.contains("\"re\""));
        assert!(json.contains("\"im\""));
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        assert!(back.matrix().hs_distance(rho.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn invalid_states_are_rejected() {
        // Trace 2.
        let m = HermitianMatrix::identity(2);
        assert!(DensityMatrix::new(m).is_err());
        // Negative eigenvalue.
        let m = hermitian_from_bloch_vector(&[0.0, 0.0, 1.2]);
        assert!(DensityMatrix::new(m).is_err());
    }
}

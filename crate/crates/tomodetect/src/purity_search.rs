//! Minimal-purity searches: how mixed can a probe state be and still
//! expose a given measurement error?
//!
//! An error is detectable with a state ρ when the corrupted estimate
//! ρ̃_LS violates a positivity constraint. For single qubits the minimal
//! purity has a closed form in the largest singular value of the
//! misalignment matrix. For qubit pairs the violation x_l = max ζ_l(ρ̃_LS)
//! is maximized over all physical (optionally PPT) states below a purity
//! cap, by a multi-start projected-gradient ascent with quadratic
//! penalties; sweeping the cap upward locates the first violating purity.
//! For up to three qubits a pure-probe-state approximation optimizes the
//! most negative eigenvalue of the corrupted estimate directly and then
//! depolarizes the probe until the violation disappears.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error_models::{MeasurementError, MisalignmentMatrix, QubitError};
use crate::linalg::{C64, HermitianMatrix, Mat3};
use crate::positivity::{epsilons_ppt, min_eigenvalue, zeta1_single, zetas_two_qubit, ConstraintValues};
use crate::states::{apply_white_noise, BlochMatrix, DensityMatrix, PauliBasis};
use crate::tomography::project_physical;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Search configuration
// ---------------------------------------------------------------------------

/// Knobs of the constrained searches. The defaults match the reference
/// setup: purity grid 0.25 → 1.00 in steps of 0.01, 50 restarts,
/// penalty weights escalating 10 → 10⁵ by factors of ten, numerical
/// gradients with central differences.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub purity_grid: Vec<f64>,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tolerance: f64,
    pub penalty_weights: Vec<f64>,
    pub constraint_tolerance: f64,
    /// Stop the grid sweep at the first violating purity.
    pub stop_at_first_violation: bool,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            purity_grid: purity_grid(0.25, 1.0, 0.01),
            restarts: 50,
            max_iters: 2000,
            step_tolerance: 1e-8,
            penalty_weights: vec![1e1, 1e2, 1e3, 1e4, 1e5],
            constraint_tolerance: 1e-7,
            stop_at_first_violation: false,
            seed: 7,
        }
    }
}

impl SearchConfig {
    fn validate_grid(&self, lo: f64, hi: f64) -> Result<()> {
        if self.purity_grid.is_empty() {
            return Err(Error::EmptyInput("purity grid"));
        }
        for w in self.purity_grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::OutOfRange {
                    what: "purity grid",
                    value: w[1],
                    expected: "strictly ascending",
                });
            }
        }
        let first = self.purity_grid[0];
        let last = *self.purity_grid.last().unwrap();
        if first < lo - 1e-12 || last > hi + 1e-12 {
            return Err(Error::OutOfRange {
                what: "purity grid bounds",
                value: first,
                expected: "within the valid purity range for the qubit count",
            });
        }
        Ok(())
    }
}

/// Ascending grid from `from` to `to` (inclusive within rounding) in
/// steps of `step`.
pub fn purity_grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let count = ((to - from) / step).round() as usize;
    for k in 0..=count {
        grid.push((from + k as f64 * step).min(to));
    }
    grid
}

// ---------------------------------------------------------------------------
// Single-qubit closed forms
// ---------------------------------------------------------------------------

/// Closed-form minimal purity for a single qubit:
/// p_min = ½(1 + 1/σ²_max(Mᵀ)).
///
/// `None` when the error is undetectable with any single-qubit state:
/// σ_max ≤ 1 (which includes every orthogonal M and the degenerate
/// σ_max = 0 case) pushes the bound to impossible purities > 1.
pub fn p_min_single_closed_form(m: &MisalignmentMatrix) -> Option<f64> {
    let sigma_max = m.mat3().singular_values()[0];
    let s2 = sigma_max * sigma_max;
    if s2 <= 1.0 + 1e-9 {
        return None;
    }
    Some((0.5 * (1.0 + 1.0 / s2)).clamp(0.5, 1.0))
}

/// Bloch vector of purity `purity` maximizing the single-qubit violation
/// x₁ = ζ₁(ρ̃_LS): the top right-singular direction of M scaled onto the
/// purity shell. Returns (u, x₁).
pub fn single_qubit_maximizer(m: &MisalignmentMatrix, purity: f64) -> Result<([f64; 3], f64)> {
    if !(0.5..=1.0 + 1e-12).contains(&purity) {
        return Err(Error::OutOfRange {
            what: "single-qubit purity",
            value: purity,
            expected: "[0.5, 1]",
        });
    }
    let gram = m.mat3().transpose().mul(m.mat3());
    let entries: Vec<C64> = gram
        .rows
        .iter()
        .flat_map(|r| r.iter())
        .map(|&x| C64::new(x, 0.0))
        .collect();
    let eig = HermitianMatrix::from_exact(3, entries).eig()?;
    let radius = (2.0 * purity - 1.0).max(0.0).sqrt();
    let u: [f64; 3] = std::array::from_fn(|i| radius * eig.eigenvectors[(i, 0)].re);
    let tilted = m.mat3().matvec(&u);
    Ok((u, zeta1_single(&tilted)))
}

/// Independent search-based variant of [`single_qubit_maximizer`]:
/// exhaustive scan over a Fibonacci sphere of directions on the purity
/// shell.
pub fn x1_single_grid_search(
    m: &MisalignmentMatrix,
    purity: f64,
    directions: usize,
) -> ([f64; 3], f64) {
    let radius = (2.0 * purity - 1.0).max(0.0).sqrt();
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let mut best_u = [0.0; 3];
    let mut best = f64::NEG_INFINITY;
    for i in 0..directions {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / directions as f64;
        let r = (1.0 - z * z).sqrt();
        let phi = golden * i as f64;
        let u = [radius * r * phi.cos(), radius * r * phi.sin(), radius * z];
        let value = zeta1_single(&m.mat3().matvec(&u));
        if value > best {
            best = value;
            best_u = u;
        }
    }
    (best_u, best)
}

/// Grid-search counterpart of the closed form: the first purity of the
/// grid whose shell maximizer violates ζ₁.
pub fn p_min_single_grid_search(
    m: &MisalignmentMatrix,
    grid: &[f64],
    directions: usize,
    tolerance: f64,
) -> Option<f64> {
    grid.iter()
        .find(|&&p| x1_single_grid_search(m, p, directions).1 > tolerance)
        .copied()
}

// ---------------------------------------------------------------------------
// Two-qubit constrained maximization
// ---------------------------------------------------------------------------

const DIM: usize = 15; // u(3) + v(3) + R(9), the free Bloch coordinates

fn bloch_from_flat(x: &[f64; DIM]) -> BlochMatrix {
    BlochMatrix {
        u: [x[0], x[1], x[2]],
        v: [x[3], x[4], x[5]],
        r: Mat3::new([
            [x[6], x[7], x[8]],
            [x[9], x[10], x[11]],
            [x[12], x[13], x[14]],
        ]),
    }
}

fn flatten_bloch(b: &BlochMatrix) -> [f64; DIM] {
    let mut x = [0.0; DIM];
    x[..3].copy_from_slice(&b.u);
    x[3..6].copy_from_slice(&b.v);
    for i in 0..3 {
        x[6 + 3 * i..9 + 3 * i].copy_from_slice(&b.r.rows[i]);
    }
    x
}

struct XlProblem {
    m1: Mat3,
    m2: Mat3,
    objective_index: usize, // 0-based into the ζ vector
    radius_sqr: f64,        // ‖x‖² cap = 4·purity − 1
    separable: bool,
}

impl XlProblem {
    fn transformed(&self, b: &BlochMatrix) -> BlochMatrix {
        BlochMatrix {
            u: self.m1.matvec(&b.u),
            v: self.m2.matvec(&b.v),
            r: self.m1.mul(&b.r).mul(&self.m2.transpose()),
        }
    }

    fn objective(&self, x: &[f64; DIM]) -> f64 {
        let b = bloch_from_flat(x);
        zetas_two_qubit(&self.transformed(&b))[self.objective_index]
    }

    /// Constraint values, all required ≤ 0: purity cap, ζ₁..ζ₃ of the true
    /// state, and for separable searches also ε₂, ε₃.
    fn constraints(&self, x: &[f64; DIM], out: &mut [f64; 6]) -> usize {
        let b = bloch_from_flat(x);
        let norm_sqr: f64 = x.iter().map(|v| v * v).sum();
        out[0] = norm_sqr - self.radius_sqr;
        let z = zetas_two_qubit(&b);
        out[1] = z[0];
        out[2] = z[1];
        out[3] = z[2];
        if self.separable {
            let e = epsilons_ppt(&b);
            out[4] = e[0];
            out[5] = e[1];
            6
        } else {
            4
        }
    }

    fn max_constraint(&self, x: &[f64; DIM]) -> f64 {
        let mut c = [0.0; 6];
        let n = self.constraints(x, &mut c);
        c[..n].iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    fn penalized(&self, x: &[f64; DIM], weight: f64) -> f64 {
        let mut c = [0.0; 6];
        let n = self.constraints(x, &mut c);
        let penalty: f64 = c[..n].iter().map(|&v| v.max(0.0).powi(2)).sum();
        self.objective(x) - weight * penalty
    }

    /// Clips the state back into the purity ball (exact projection: the
    /// cap is a norm bound on the free coordinates).
    fn project_ball(&self, x: &mut [f64; DIM]) {
        let norm_sqr: f64 = x.iter().map(|v| v * v).sum();
        if norm_sqr > self.radius_sqr {
            let scale = (self.radius_sqr * (1.0 - 1e-12) / norm_sqr).sqrt();
            for v in x.iter_mut() {
                *v *= scale;
            }
        }
    }

    /// Projected-gradient ascent of the penalized objective; central
    /// differences with h = 1e-6, adaptive step with backtracking.
    fn ascend(&self, x: &mut [f64; DIM], weight: f64, max_iters: usize, step_tol: f64) {
        const H: f64 = 1e-6;
        let mut step = 0.02;
        let mut f = self.penalized(x, weight);
        for _ in 0..max_iters {
            let mut grad = [0.0; DIM];
            let mut grad_norm_sqr = 0.0;
            for i in 0..DIM {
                let mut plus = *x;
                plus[i] += H;
                let mut minus = *x;
                minus[i] -= H;
                let g = (self.penalized(&plus, weight) - self.penalized(&minus, weight))
                    / (2.0 * H);
                grad[i] = g;
                grad_norm_sqr += g * g;
            }
            let grad_norm = grad_norm_sqr.sqrt();
            if grad_norm < 1e-13 {
                break;
            }
            let mut accepted = false;
            while step >= step_tol {
                let mut candidate = *x;
                for i in 0..DIM {
                    candidate[i] += step * grad[i] / grad_norm;
                }
                self.project_ball(&mut candidate);
                let fc = self.penalized(&candidate, weight);
                if fc > f {
                    *x = candidate;
                    f = fc;
                    step = (step * 1.5).min(0.1);
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
    }

    /// Shrinks a candidate toward the maximally mixed state until every
    /// constraint holds with its sign (≤ 0 exactly); the origin is always
    /// feasible, so bisection on the scale factor terminates.
    fn restore_feasible(&self, x: &[f64; DIM]) -> Option<[f64; DIM]> {
        if self.max_constraint(x) <= 0.0 {
            return Some(*x);
        }
        let scaled = |t: f64| -> [f64; DIM] { std::array::from_fn(|i| t * x[i]) };
        if self.max_constraint(&scaled(0.0)) > 0.0 {
            return None;
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.max_constraint(&scaled(mid)) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(scaled(lo))
    }
}

/// Best found violation and the true state achieving it.
#[derive(Clone, Debug)]
pub struct XlOutcome {
    pub value: f64,
    pub bloch: BlochMatrix,
}

/// Maximizes ζ_l(ρ̃_LS) over two-qubit states with Tr ρ² ≤ `purity_cap`
/// satisfying all positivity constraints (and, with `separable_only`, the
/// PPT conditions). Multi-start projected-gradient ascent with an
/// escalating quadratic penalty; every reported value is re-evaluated at
/// an exactly feasible state, so the result is a certified lower bound on
/// the true maximum. Deterministic for a given config seed.
pub fn maximize_xl(
    error: &MeasurementError,
    purity_cap: f64,
    separable_only: bool,
    l: usize,
    config: &SearchConfig,
) -> Result<XlOutcome> {
    maximize_xl_with_starts(error, purity_cap, separable_only, l, config, &[])
}

/// [`maximize_xl`] with extra deterministic starting points (used for
/// warm starts along a purity sweep).
pub fn maximize_xl_with_starts(
    error: &MeasurementError,
    purity_cap: f64,
    separable_only: bool,
    l: usize,
    config: &SearchConfig,
    extra_starts: &[[f64; DIM]],
) -> Result<XlOutcome> {
    if error.num_qubits() != 2 {
        return Err(Error::InvalidErrorModel(
            "the x_l search is defined for two-qubit error models".into(),
        ));
    }
    if !(0.25..=1.0 + 1e-12).contains(&purity_cap) {
        return Err(Error::OutOfRange {
            what: "purity_cap",
            value: purity_cap,
            expected: "[0.25, 1]",
        });
    }
    if !(1..=3).contains(&l) {
        return Err(Error::OutOfRange {
            what: "constraint index l",
            value: l as f64,
            expected: "1..=3",
        });
    }
    let problem = XlProblem {
        m1: *error.qubit(0).misalignment().mat3(),
        m2: *error.qubit(1).misalignment().mat3(),
        objective_index: l - 1,
        radius_sqr: (4.0 * purity_cap - 1.0).max(0.0),
        separable: separable_only,
    };

    let starts: Vec<(usize, Option<[f64; DIM]>)> = extra_starts
        .iter()
        .map(|s| Some(*s))
        .chain((0..config.restarts).map(|_| None))
        .enumerate()
        .collect();

    let radius = problem.radius_sqr.sqrt();
    let candidates: Vec<(f64, [f64; DIM])> = starts
        .par_iter()
        .filter_map(|(idx, start)| {
            let mut x = match start {
                Some(s) => {
                    let mut s = *s;
                    problem.project_ball(&mut s);
                    s
                }
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                    rng.set_stream(((l as u64) << 32) ^ (*idx as u64) ^ 0x9e37);
                    random_in_ball(radius, &mut rng)
                }
            };
            for &weight in &config.penalty_weights {
                problem.ascend(&mut x, weight, config.max_iters, config.step_tolerance);
            }
            let feasible = problem.restore_feasible(&x)?;
            Some((problem.objective(&feasible), feasible))
        })
        .collect();

    // The origin (maximally mixed state) is always feasible; use it as
    // the floor so the result is never empty.
    let origin = [0.0; DIM];
    let mut best_value = problem.objective(&origin);
    let mut best_x = origin;
    for (value, x) in candidates {
        if value > best_value {
            best_value = value;
            best_x = x;
        }
    }
    Ok(XlOutcome {
        value: best_value,
        bloch: bloch_from_flat(&best_x),
    })
}

fn random_in_ball<R: Rng>(radius: f64, rng: &mut R) -> [f64; DIM] {
    let mut x: [f64; DIM] =
        std::array::from_fn(|_| rng.sample::<f64, _>(rand_distr::StandardNormal));
    let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return [0.0; DIM];
    }
    let t = rng.random::<f64>().powf(1.0 / DIM as f64);
    let scale = radius * t / norm;
    for v in x.iter_mut() {
        *v *= scale;
    }
    x
}

// ---------------------------------------------------------------------------
// Purity sweep
// ---------------------------------------------------------------------------

/// One grid point of the sweep: the purity cap and the best violations
/// (x₁, x₂, x₃) found at it.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub purity: f64,
    pub x: [f64; 3],
}

/// Result of [`find_p_min`].
#[derive(Clone, Debug)]
pub struct PuritySearchResult {
    /// Smallest grid purity with any x_l above the constraint tolerance.
    pub p_min: Option<f64>,
    /// 1-based index of the constraint with the largest violation at
    /// p_min.
    pub binding_constraint: Option<usize>,
    /// The true state whose corrupted estimate violates positivity at
    /// p_min.
    pub witness: Option<DensityMatrix>,
    pub grid: Vec<GridPoint>,
}

/// Sweeps the purity grid upward, maximizing all three x_l at each cap
/// (warm-starting each constraint from its previous maximizer), and
/// reports the first violating purity.
pub fn find_p_min(
    error: &MeasurementError,
    separable_only: bool,
    config: &SearchConfig,
) -> Result<PuritySearchResult> {
    config.validate_grid(0.25, 1.0)?;
    let mut warm: [Option<[f64; DIM]>; 3] = [None; 3];
    let mut result = PuritySearchResult {
        p_min: None,
        binding_constraint: None,
        witness: None,
        grid: Vec::new(),
    };
    for &purity in &config.purity_grid {
        let mut x = [0.0; 3];
        let mut blochs: [Option<BlochMatrix>; 3] = [None; 3];
        for l in 1..=3 {
            let starts: Vec<[f64; DIM]> = warm[l - 1].into_iter().collect();
            let outcome =
                maximize_xl_with_starts(error, purity, separable_only, l, config, &starts)?;
            x[l - 1] = outcome.value;
            warm[l - 1] = Some(flatten_bloch(&outcome.bloch));
            blochs[l - 1] = Some(outcome.bloch);
        }
        result.grid.push(GridPoint { purity, x });
        if result.p_min.is_none() {
            let mut binding = None;
            let mut best = config.constraint_tolerance;
            for l in 1..=3 {
                if x[l - 1] > best {
                    best = x[l - 1];
                    binding = Some(l);
                }
            }
            if let Some(l) = binding {
                result.p_min = Some(purity);
                result.binding_constraint = Some(l);
                let bloch = blochs[l - 1].unwrap();
                result.witness = Some(match bloch.to_state() {
                    Ok(state) => state,
                    // Feasible up to rounding; snap onto the state set.
                    Err(_) => project_physical(&bloch.to_hermitian())?,
                });
                if config.stop_at_first_violation {
                    break;
                }
            }
        }
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Pure-probe-state approximation
// ---------------------------------------------------------------------------

/// Result of [`probe_state_search`].
#[derive(Clone, Debug)]
pub struct ProbeSearchResult {
    /// The optimized pure probe state.
    pub probe: DensityMatrix,
    /// −λ_min(ρ̃_LS) of the pure probe (> 0 when the error is visible).
    pub negativity: f64,
    /// (purity, smallest eigenvalue of the corrupted estimate) along the
    /// white-noise sweep, ascending in purity.
    pub min_eig_curve: Vec<(f64, f64)>,
    /// Purity at which the smallest eigenvalue crosses zero; `None` when
    /// no probe state exposes the error.
    pub p_min_appr: Option<f64>,
}

/// Corrupted estimate of a pure state given by raw (re, im) amplitude
/// coordinates; normalization is applied here so the optimizer can move
/// freely.
fn corrupted_pure_estimate(
    raw: &[f64],
    error: &MeasurementError,
    basis: &PauliBasis,
) -> Option<HermitianMatrix> {
    let dim = 1usize << basis.num_qubits();
    let norm_sqr: f64 = raw.iter().map(|v| v * v).sum();
    if norm_sqr < 1e-12 {
        return None;
    }
    let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        let ai = C64::new(raw[i], raw[dim + i]);
        for j in 0..dim {
            let aj = C64::new(raw[j], raw[dim + j]);
            entries[i * dim + j] = ai * aj.conj() / norm_sqr;
        }
    }
    let h = HermitianMatrix::from_exact(dim, entries);
    let coeffs = basis.coefficients(&h);
    Some(basis.reconstruct(&error.transform_coefficients(&coeffs)))
}

/// Searches for the pure probe state whose corrupted estimate has the
/// largest negative eigenvalue (restarted pattern search over the 2·2ⁿ
/// real amplitudes), then sweeps white noise over the probe and reports
/// the purity at which the smallest eigenvalue of the corrupted estimate
/// turns positive.
pub fn probe_state_search(
    error: &MeasurementError,
    config: &SearchConfig,
) -> Result<ProbeSearchResult> {
    let n = error.num_qubits();
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension {
            dim: n,
            context: "the probe-state approximation is implemented for 1..=3 qubits",
        });
    }
    let basis = PauliBasis::get(n);
    let dim = 1usize << n;
    let vars = 2 * dim;

    let negativity = |raw: &[f64]| -> f64 {
        match corrupted_pure_estimate(raw, error, basis) {
            Some(m) => -m.min_eigenvalue().unwrap_or(0.0),
            None => f64::NEG_INFINITY,
        }
    };

    let best = (0..config.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(0xab0 ^ restart as u64);
            let mut x: Vec<f64> = (0..vars)
                .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
                .collect();
            let mut f = negativity(&x);
            let mut step = 0.3;
            let mut passes = 0;
            while step > 1e-6 && passes < config.max_iters {
                passes += 1;
                let mut improved = false;
                for i in 0..vars {
                    for dir in [1.0, -1.0] {
                        let original = x[i];
                        x[i] = original + dir * step;
                        let fy = negativity(&x);
                        if fy > f + 1e-14 {
                            f = fy;
                            improved = true;
                        } else {
                            x[i] = original;
                        }
                    }
                }
                if !improved {
                    step *= 0.5;
                }
            }
            (f, x, restart)
        })
        .reduce_with(|a, b| {
            if (b.0, std::cmp::Reverse(b.2)) > (a.0, std::cmp::Reverse(a.2)) {
                b
            } else {
                a
            }
        })
        .ok_or(Error::EmptyInput("probe search restarts"))?;

    let (best_negativity, raw, _) = best;
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    let amps: Vec<C64> = (0..dim)
        .map(|i| C64::new(raw[i] / norm, raw[dim + i] / norm))
        .collect();
    let probe = DensityMatrix::from_pure(&amps)?;

    // White-noise sweep. The corruption map is linear and leaves the
    // maximally mixed state fixed, so the corrupted noisy estimate is
    // (1−ε)·ρ̃ + ε·1/2ⁿ and its eigenvalues move linearly in ε.
    let corrupted = error.transform_estimate(&probe)?;
    let lambda0 = corrupted.min_eigenvalue()?;
    let purity_of = |eps: f64| (1.0 - eps).powi(2) + eps * (2.0 - eps) / dim as f64;
    let mut min_eig_curve: Vec<(f64, f64)> = Vec::new();
    let steps = 400;
    for k in 0..=steps {
        let eps = k as f64 / steps as f64;
        let min_eig = (1.0 - eps) * lambda0 + eps / dim as f64;
        min_eig_curve.push((purity_of(eps), min_eig));
    }
    min_eig_curve.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let p_min_appr = if lambda0 < -config.constraint_tolerance {
        let eps_star = -lambda0 / (1.0 / dim as f64 - lambda0);
        Some(purity_of(eps_star))
    } else {
        None
    };

    Ok(ProbeSearchResult {
        probe,
        negativity: best_negativity,
        min_eig_curve,
        p_min_appr,
    })
}

// ---------------------------------------------------------------------------
// Angle-grid survey
// ---------------------------------------------------------------------------

/// Condensed sweep outcome for one state family.
#[derive(Clone, Debug)]
pub struct SurveySummary {
    pub p_min: Option<f64>,
    pub binding_constraint: Option<usize>,
}

/// Survey entry for one (α, β, γ, δ) tuple.
#[derive(Clone, Debug)]
pub struct SurveyRow {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    /// True when the tuple produces the identity matrix (no error).
    pub identity: bool,
    pub entangled: Option<SurveySummary>,
    pub separable: Option<SurveySummary>,
}

/// Runs [`find_p_min`] for each angle tuple (error on qubit 1, qubit 2
/// ideal); identity tuples are flagged and skipped.
pub fn survey_tuples(
    tuples: &[(f64, f64, f64, f64)],
    include_separable: bool,
    config: &SearchConfig,
) -> Result<Vec<SurveyRow>> {
    let mut rows = Vec::with_capacity(tuples.len());
    for &(alpha, beta, gamma, delta) in tuples {
        let m = MisalignmentMatrix::general(alpha, beta, gamma, delta);
        if m.is_identity() {
            rows.push(SurveyRow {
                alpha,
                beta,
                gamma,
                delta,
                identity: true,
                entangled: None,
                separable: None,
            });
            continue;
        }
        let error = MeasurementError::single_qubit(2, 0, QubitError::Misalignment(m))?;
        let summarize = |r: &PuritySearchResult| SurveySummary {
            p_min: r.p_min,
            binding_constraint: r.binding_constraint,
        };
        let entangled = find_p_min(&error, false, config)?;
        let separable = if include_separable {
            Some(summarize(&find_p_min(&error, true, config)?))
        } else {
            None
        };
        rows.push(SurveyRow {
            alpha,
            beta,
            gamma,
            delta,
            identity: false,
            entangled: Some(summarize(&entangled)),
            separable,
        });
    }
    Ok(rows)
}

/// The full Cartesian survey over a set of angles (|angles|⁴ tuples).
pub fn angle_grid_survey(
    angles: &[f64],
    include_separable: bool,
    config: &SearchConfig,
) -> Result<Vec<SurveyRow>> {
    let mut tuples = Vec::new();
    for &a in angles {
        for &b in angles {
            for &g in angles {
                for &d in angles {
                    tuples.push((a, b, g, d));
                }
            }
        }
    }
    survey_tuples(&tuples, include_separable, config)
}

// ---------------------------------------------------------------------------
// Tensor-product ancilla study
// ---------------------------------------------------------------------------

/// Companion of the erroneous single-qubit estimate in the product
/// constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Companion {
    /// No companion: the single-qubit case itself.
    IdentityPad,
    /// The true underlying state (measured without error).
    TrueCopy,
    /// A second erroneous copy.
    ErroneousCopy,
    /// A Pauli eigenstate along the given axis.
    PauliEigenstate(crate::states::Axis),
}

/// Evaluates the positivity constraints of tensor products built from the
/// erroneous estimate ρ̃ of the x₁-maximizing state at `base_purity`.
/// The maximizer is found by the independent shell search, so the check
/// does not depend on the closed form it is often compared against.
pub fn ancilla_product_check(
    error: &MisalignmentMatrix,
    base_purity: f64,
    companion: Companion,
) -> Result<ConstraintValues> {
    let (u, _) = x1_single_grid_search(error, base_purity, 40_000);
    let tilted = error.mat3().matvec(&u);
    match companion {
        Companion::IdentityPad => {
            let m = crate::states::hermitian_from_bloch_vector(&tilted);
            Ok(ConstraintValues {
                zetas: vec![zeta1_single(&tilted)],
                min_eigenvalue: min_eigenvalue(&m)?,
            })
        }
        Companion::TrueCopy | Companion::ErroneousCopy | Companion::PauliEigenstate(_) => {
            let companion_bloch = match companion {
                Companion::TrueCopy => u,
                Companion::ErroneousCopy => tilted,
                Companion::PauliEigenstate(axis) => {
                    let mut e = [0.0; 3];
                    e[axis.index() - 1] = 1.0;
                    e
                }
                Companion::IdentityPad => unreachable!(),
            };
            let b = BlochMatrix::product(&tilted, &companion_bloch);
            Ok(ConstraintValues {
                zetas: zetas_two_qubit(&b).to_vec(),
                min_eigenvalue: min_eigenvalue(&b.to_hermitian())?,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Helpers shared with the white-noise sweep examples
// ---------------------------------------------------------------------------

/// Depolarizes `rho` to the requested purity (thin wrapper combining
/// [`crate::states::noise_for_purity`] and the channel itself).
pub fn depolarize_to_purity(rho: &DensityMatrix, purity: f64) -> Result<DensityMatrix> {
    let eps = crate::states::noise_for_purity(rho, purity)?;
    apply_white_noise(rho, eps)
}

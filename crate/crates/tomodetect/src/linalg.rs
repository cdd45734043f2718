//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here targets dimensions 2, 4, 8 (general 2ⁿ is accepted
//! structurally but carries no performance promise). The eigensolver is a
//! cyclic Jacobi iteration on the complex Hermitian matrix itself, which
//! is robust and dependency-free at these sizes.

use num_complex::Complex64;

use crate::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Tolerance below which a matrix is accepted as Hermitian and symmetrized.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
const JACOBI_OFFDIAG_TOL: f64 = 1e-12;

/// Hard cap on Jacobi sweeps; convergence is typically reached in < 10.
const JACOBI_MAX_SWEEPS: usize = 100;

// ---------------------------------------------------------------------------
// General complex matrices
// ---------------------------------------------------------------------------

/// Dense square complex matrix, row-major. Used for unitaries (wave
/// plates, eigenvector matrices) and intermediate products.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from a flat row-major entry list.
    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim²");
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Max deviation of U†U from the identity; 0 for exactly unitary U.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - expected).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

// ---------------------------------------------------------------------------
// Hermitian matrices
// ---------------------------------------------------------------------------

/// Dense complex Hermitian matrix of dimension 2ⁿ.
///
/// Construction through [`HermitianMatrix::new`] verifies
/// `a[i][j] = conj(a[j][i])` within [`HERMITICITY_TOL`] and symmetrizes as
/// `(m + m†)/2`; larger asymmetries are rejected rather than repaired.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl HermitianMatrix {
    /// Validates hermiticity (within [`HERMITICITY_TOL`]) and symmetrizes.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim * dim,
            });
        }
        let mut max_asymmetry: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                let a = entries[i * dim + j];
                let b = entries[j * dim + i];
                max_asymmetry = max_asymmetry.max((a - b.conj()).norm());
            }
        }
        if max_asymmetry > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                max_asymmetry,
                tolerance: HERMITICITY_TOL,
            });
        }
        let mut m = Self { dim, entries };
        m.symmetrize();
        Ok(m)
    }

    /// Wraps entries that are Hermitian by construction (still symmetrized
    /// to scrub rounding noise). Panics on a gross violation, since that
    /// indicates an internal logic error rather than bad input.
    pub(crate) fn from_exact(dim: usize, entries: Vec<C64>) -> Self {
        let mut m = Self { dim, entries };
        debug_assert!(
            m.asymmetry() < 1e-9,
            "internal constructor received a non-Hermitian matrix"
        );
        m.symmetrize();
        m
    }

    fn asymmetry(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.entries[i * d + j] - self.entries[j * d + i].conj()).norm());
            }
        }
        worst
    }

    fn symmetrize(&mut self) {
        let d = self.dim;
        for i in 0..d {
            self.entries[i * d + i] = C64::new(self.entries[i * d + i].re, 0.0);
            for j in (i + 1)..d {
                let avg = 0.5 * (self.entries[i * d + j] + self.entries[j * d + i].conj());
                self.entries[i * d + j] = avg;
                self.entries[j * d + i] = avg.conj();
            }
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    /// Trace (real by hermiticity).
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i].re).sum()
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hilbert-Schmidt distance ‖self − other‖₂.
    pub fn hs_distance(&self, other: &HermitianMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Tr(A·B), real for Hermitian A, B.
    pub fn expectation(&self, other: &HermitianMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let d = self.dim;
        let mut acc = 0.0;
        for i in 0..d {
            for k in 0..d {
                // (A B)_{ii} summed: A_{ik} B_{ki}
                acc += (self.entries[i * d + k] * other.entries[k * d + i]).re;
            }
        }
        Ok(acc)
    }

    /// Tr(A²); for density matrices this is the purity.
    pub fn trace_of_square(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: f64) -> HermitianMatrix {
        HermitianMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(HermitianMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.add(&other.scale(-1.0))
    }

    /// Kronecker product; `dim = dim(self)·dim(other)`.
    pub fn tensor(&self, other: &HermitianMatrix) -> HermitianMatrix {
        let da = self.dim;
        let db = other.dim;
        let d = da * db;
        let mut entries = vec![C64::new(0.0, 0.0); d * d];
        for ia in 0..da {
            for ja in 0..da {
                let a = self.entries[ia * da + ja];
                for ib in 0..db {
                    for jb in 0..db {
                        entries[(ia * db + ib) * d + (ja * db + jb)] =
                            a * other.entries[ib * db + jb];
                    }
                }
            }
        }
        HermitianMatrix { dim: d, entries }
    }

    /// Partial transpose of a two-qubit matrix on `subsystem` (0 or 1).
    ///
    /// Transposes the chosen qubit's 2×2 blocks; applying it twice
    /// restores the input.
    pub fn partial_transpose(&self, subsystem: usize) -> Result<HermitianMatrix> {
        if self.dim != 4 {
            return Err(Error::UnsupportedDimension {
                dim: self.dim,
                context: "partial transpose is implemented for two qubits (dim 4)",
            });
        }
        if subsystem > 1 {
            return Err(Error::OutOfRange {
                what: "subsystem index",
                value: subsystem as f64,
                expected: "0 or 1",
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); 16];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let (sa, sb, sc, sd) = if subsystem == 0 {
                            (c, b, a, d)
                        } else {
                            (a, d, c, b)
                        };
                        out[(a * 2 + b) * 4 + (c * 2 + d)] =
                            self.entries[(sa * 2 + sb) * 4 + (sc * 2 + sd)];
                    }
                }
            }
        }
        Ok(HermitianMatrix::from_exact(4, out))
    }

    /// U·self·U† for a unitary U of matching dimension.
    pub fn conjugate_by(&self, u: &CMatrix) -> HermitianMatrix {
        assert_eq!(self.dim, u.dim());
        let m = CMatrix::from_entries(self.dim, self.entries.clone());
        let rotated = u.mul(&m).mul(&u.adjoint());
        HermitianMatrix::from_exact(self.dim, rotated.entries().to_vec())
    }

    /// Eigendecomposition via cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues sorted descending together with the unitary of
    /// eigenvectors (columns, in the same order), satisfying
    /// `‖V diag(λ) V† − m‖₂ ≤ 1e-10` and `V†V = 1` to the same accuracy.
    pub fn eig(&self) -> Result<EigDecomposition> {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut v = CMatrix::identity(d);

        let offdiag_norm = |a: &[C64]| -> f64 {
            let mut s = 0.0;
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        s += a[i * d + j].norm_sqr();
                    }
                }
            }
            s.sqrt()
        };

        let mut sweeps = 0;
        while offdiag_norm(&a) > JACOBI_OFFDIAG_TOL {
            if sweeps >= JACOBI_MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    sweeps,
                    offdiag: offdiag_norm(&a),
                });
            }
            for p in 0..d {
                for q in (p + 1)..d {
                    let apq = a[p * d + q];
                    let abs_apq = apq.norm();
                    if abs_apq < 1e-300 {
                        continue;
                    }
                    let app = a[p * d + p].re;
                    let aqq = a[q * d + q].re;
                    let phase = apq / abs_apq; // e^{iφ}

                    // tan(2θ) = 2|a_pq| / (a_pp − a_qq), θ via the stable
                    // cotangent form of Numerical Recipes.
                    let t = if app == aqq {
                        1.0
                    } else {
                        let tau = (app - aqq) / (2.0 * abs_apq);
                        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // Unitary J: J_pp = c, J_pq = −s·e^{iφ}, J_qp = s·e^{−iφ}, J_qq = c.
                    let s_phase = phase * s;

                    // A ← A·J (columns p, q).
                    for i in 0..d {
                        let aip = a[i * d + p];
                        let aiq = a[i * d + q];
                        a[i * d + p] = c * aip + s_phase.conj() * aiq;
                        a[i * d + q] = -s_phase * aip + c * aiq;
                    }
                    // A ← J†·A (rows p, q).
                    for j in 0..d {
                        let apj = a[p * d + j];
                        let aqj = a[q * d + j];
                        a[p * d + j] = c * apj + s_phase * aqj;
                        a[q * d + j] = -s_phase.conj() * apj + c * aqj;
                    }
                    // V ← V·J.
                    for i in 0..d {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = c * vip + s_phase.conj() * viq;
                        v[(i, q)] = -s_phase * vip + c * viq;
                    }
                }
            }
            sweeps += 1;
        }

        let mut order: Vec<usize> = (0..d).collect();
        let diag: Vec<f64> = (0..d).map(|i| a[i * d + i].re).collect();
        order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

        let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = CMatrix::zeros(d);
        for (new_col, &old_col) in order.iter().enumerate() {
            for i in 0..d {
                vectors[(i, new_col)] = v[(i, old_col)];
            }
        }
        Ok(EigDecomposition {
            eigenvalues,
            eigenvectors: vectors,
        })
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(*self
            .eig()?
            .eigenvalues
            .last()
            .expect("eigendecomposition of a non-empty matrix"))
    }
}

/// Result of [`HermitianMatrix::eig`]: eigenvalues descending, eigenvector
/// columns in matching order.
#[derive(Clone, Debug)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl EigDecomposition {
    /// Rebuilds V·diag(values)·V† for arbitrary replacement eigenvalues.
    pub fn reconstruct_with(&self, values: &[f64]) -> HermitianMatrix {
        let d = self.eigenvectors.dim();
        assert_eq!(values.len(), d);
        let mut entries = vec![C64::new(0.0, 0.0); d * d];
        for (k, &lambda) in values.iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            for i in 0..d {
                let vi = self.eigenvectors[(i, k)];
                for j in 0..d {
                    entries[i * d + j] += lambda * vi * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        HermitianMatrix::from_exact(d, entries)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.reconstruct_with(&self.eigenvalues)
    }
}

// ---------------------------------------------------------------------------
// Simplex projection
// ---------------------------------------------------------------------------

/// Euclidean projection of a real vector onto the probability simplex
/// (entries ≥ 0 summing to 1).
///
/// Sort-and-threshold algorithm; this is the exact KKT solution, no
/// iteration involved.
pub fn project_simplex(v: &[f64]) -> Result<Vec<f64>> {
    if v.is_empty() {
        return Err(Error::EmptyInput("project_simplex"));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::OutOfRange {
            what: "simplex projection input",
            value: f64::NAN,
            expected: "finite entries",
        });
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &x) in sorted.iter().enumerate() {
        cumsum += x;
        let candidate = (cumsum - 1.0) / (k + 1) as f64;
        if x - candidate > 0.0 {
            theta = candidate;
        }
    }
    Ok(v.iter().map(|&x| (x - theta).max(0.0)).collect())
}

// ---------------------------------------------------------------------------
// Real 3×3 matrices
// ---------------------------------------------------------------------------

/// Real 3×3 matrix (misalignment matrices, correlation blocks).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

impl Mat3 {
    pub const ZERO: Mat3 = Mat3 {
        rows: [[0.0; 3]; 3],
    };

    pub const IDENTITY: Mat3 = Mat3 {
        rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn new(rows: [[f64; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn diagonal(a: f64, b: f64, c: f64) -> Self {
        Self {
            rows: [[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]],
        }
    }

    pub fn transpose(&self) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.rows[j][i];
            }
        }
        Mat3 { rows: out }
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| self.rows[i][k] * rhs.rows[k][j]).sum();
            }
        }
        Mat3 { rows: out }
    }

    pub fn matvec(&self, v: &[f64; 3]) -> [f64; 3] {
        [
            self.rows[0][0] * v[0] + self.rows[0][1] * v[1] + self.rows[0][2] * v[2],
            self.rows[1][0] * v[0] + self.rows[1][1] * v[1] + self.rows[1][2] * v[2],
            self.rows[2][0] * v[0] + self.rows[2][1] * v[1] + self.rows[2][2] * v[2],
        ]
    }

    /// vᵀ·M·w.
    pub fn bilinear(&self, v: &[f64; 3], w: &[f64; 3]) -> f64 {
        let mw = self.matvec(w);
        v[0] * mw[0] + v[1] * mw[1] + v[2] * mw[2]
    }

    pub fn det(&self) -> f64 {
        let r = &self.rows;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    /// Squared Hilbert-Schmidt norm Σ m_ij².
    pub fn norm_sqr(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x * x)
            .sum()
    }

    pub fn scale(&self, factor: f64) -> Mat3 {
        let mut out = self.rows;
        for row in &mut out {
            for x in row.iter_mut() {
                *x *= factor;
            }
        }
        Mat3 { rows: out }
    }

    /// Singular values, descending and nonnegative, as the square roots of
    /// the eigenvalues of MᵀM.
    pub fn singular_values(&self) -> [f64; 3] {
        let g = self.transpose().mul(self);
        let entries: Vec<C64> = g
            .rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&x| C64::new(x, 0.0))
            .collect();
        let gram = HermitianMatrix::from_exact(3, entries);
        let eig = gram.eig().expect("3×3 Gram matrix eigendecomposition");
        let mut out = [0.0; 3];
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            out[i] = lambda.max(0.0).sqrt();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> HermitianMatrix {
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = C64::new(rng.random_range(-1.0..1.0), 0.0);
            for j in (i + 1)..dim {
                let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                entries[i * dim + j] = z;
                entries[j * dim + i] = z.conj();
            }
        }
        HermitianMatrix::new(dim, entries).unwrap()
    }

    fn sigma_z() -> HermitianMatrix {
        HermitianMatrix::new(
            2,
            vec![
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(-1.0, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eig_of_sigma_z() {
        let eig = sigma_z().eig().unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_of_bloch_z_overshoot() {
        // ½(1 + 1.2 σ_Z) has eigenvalues 1.1 and −0.1.
        let m = HermitianMatrix::identity(2).scale(0.5).add(&sigma_z().scale(0.6)).unwrap();
        let eig = m.eig().unwrap();
        assert!((eig.eigenvalues[0] - 1.1).abs() < 1e-14);
        assert!((eig.eigenvalues[1] + 0.1).abs() < 1e-14);
    }

    #[test]
    fn eig_reconstructs_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &dim in &[2usize, 4, 8] {
            for _ in 0..20 {
                let m = random_hermitian(dim, &mut rng);
                let eig = m.eig().unwrap();
                assert!(eig.reconstruct().hs_distance(&m).unwrap() <= 1e-10);
                assert!(eig.eigenvectors.unitarity_defect() <= 1e-10);
                for w in eig.eigenvalues.windows(2) {
                    assert!(w[0] >= w[1]);
                }
            }
        }
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let entries = vec![
            C64::new(1.0, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.2, 0.0),
            C64::new(0.0, 0.0),
        ];
        match HermitianMatrix::new(2, entries) {
            Err(Error::NotHermitian { max_asymmetry, .. }) => {
                assert!((max_asymmetry - 0.3).abs() < 1e-12)
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(project_simplex(&[0.3, 0.7]).unwrap(), vec![0.3, 0.7]);
        let p = project_simplex(&[1.1, -0.1]).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-14 && p[1].abs() < 1e-14);
        let q = project_simplex(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        for x in q {
            assert!((x - 0.25).abs() < 1e-14);
        }
        assert!(matches!(project_simplex(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn simplex_projection_beats_grid_search() {
        // Fine grid over the 1-simplex as an independent optimality oracle.
        let v = [1.1, -0.1];
        let p = project_simplex(&v).unwrap();
        let dist =
            |a: &[f64]| -> f64 { a.iter().zip(&v).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() };
        let best = dist(&p);
        for k in 0..=100_000 {
            let t = k as f64 / 100_000.0;
            assert!(best <= dist(&[t, 1.0 - t]) + 1e-12);
        }
    }

    #[test]
    fn simplex_projection_beats_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..2.0)).collect();
        let p = project_simplex(&v).unwrap();
        let dist = |a: &[f64]| -> f64 {
            a.iter().zip(&v).map(|(x, y)| (x - y) * (x - y)).sum::<f64>()
        };
        let best = dist(&p);
        for _ in 0..10_000 {
            // Random simplex point via normalized exponentials.
            let mut q: Vec<f64> = (0..4)
                .map(|_| -rng.random_range(1e-12..1.0f64).ln())
                .collect();
            let s: f64 = q.iter().sum();
            q.iter_mut().for_each(|x| *x /= s);
            assert!(best <= dist(&q) + 1e-12);
        }
    }

    #[test]
    fn tensor_products() {
        let z = sigma_z();
        let zz = z.tensor(&z);
        for i in 0..4 {
            let expected = if i == 0 || i == 3 { 1.0 } else { -1.0 };
            assert!((zz.get(i, i).re - expected).abs() < 1e-15);
        }
        let id = HermitianMatrix::identity(2);
        assert_eq!(id.tensor(&id), HermitianMatrix::identity(4));

        let x = HermitianMatrix::new(
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let y = HermitianMatrix::new(
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let xy = x.tensor(&y);
        assert!(xy.trace().abs() < 1e-15);
        for (i, j, im) in [(0, 3, -1.0), (1, 2, 1.0), (2, 1, -1.0), (3, 0, 1.0)] {
            let got = xy.get(i, j);
            assert!(got.re.abs() < 1e-15 && (got.im - im).abs() < 1e-15);
        }
    }

    fn bell_phi_plus() -> HermitianMatrix {
        let mut entries = vec![C64::new(0.0, 0.0); 16];
        for &(i, j) in &[(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
            entries[i * 4 + j] = C64::new(0.5, 0.0);
        }
        HermitianMatrix::new(4, entries).unwrap()
    }

    #[test]
    fn partial_transpose_examples() {
        let mixed = HermitianMatrix::identity(4).scale(0.25);
        assert_eq!(mixed.partial_transpose(1).unwrap(), mixed);

        let bell_pt = bell_phi_plus().partial_transpose(1).unwrap();
        assert!((bell_pt.min_eigenvalue().unwrap() + 0.5).abs() < 1e-12);

        // Product states stay PSD under partial transposition.
        let a = HermitianMatrix::new(
            2,
            vec![
                C64::new(0.8, 0.0),
                C64::new(0.1, 0.2),
                C64::new(0.1, -0.2),
                C64::new(0.2, 0.0),
            ],
        )
        .unwrap();
        let b = HermitianMatrix::new(
            2,
            vec![
                C64::new(0.6, 0.0),
                C64::new(0.0, 0.3),
                C64::new(0.0, -0.3),
                C64::new(0.4, 0.0),
            ],
        )
        .unwrap();
        let product = a.tensor(&b);
        assert!(product.partial_transpose(0).unwrap().min_eigenvalue().unwrap() >= -1e-12);

        assert!(matches!(
            HermitianMatrix::identity(2).partial_transpose(0),
            Err(Error::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn partial_transpose_is_involution_and_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_hermitian(4, &mut rng);
            for sub in 0..2 {
                let pt = m.partial_transpose(sub).unwrap();
                assert!((pt.trace() - m.trace()).abs() < 1e-12);
                assert!(pt.partial_transpose(sub).unwrap().hs_distance(&m).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_values_examples() {
        let id = Mat3::IDENTITY.singular_values();
        for s in id {
            assert!((s - 1.0).abs() < 1e-12);
        }

        // Rows (1,0,0), (0,1,0), (0,1,0): the "Y measured instead of Z" map.
        let mz = Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 1.0, 0.0]]);
        let sv = mz.singular_values();
        assert!((sv[0] - 2.0f64.sqrt()).abs() < 1e-12);
        assert!((sv[1] - 1.0).abs() < 1e-12);
        assert!(sv[2].abs() < 1e-12);

        let d = Mat3::diagonal(2.0, 0.5, 0.1).singular_values();
        assert!((d[0] - 2.0).abs() < 1e-12 && (d[1] - 0.5).abs() < 1e-12 && (d[2] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn singular_values_match_gram_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = Mat3::new(std::array::from_fn(|_| {
                std::array::from_fn(|_| rng.random_range(-2.0..2.0))
            }));
            let sv = m.singular_values();
            let gram = m.transpose().mul(&m);
            let entries: Vec<C64> = gram
                .rows
                .iter()
                .flat_map(|r| r.iter())
                .map(|&x| C64::new(x, 0.0))
                .collect();
            let eig = HermitianMatrix::from_exact(3, entries).eig().unwrap();
            for (s, lambda) in sv.iter().zip(&eig.eigenvalues) {
                assert!((s * s - lambda).abs() < 1e-10);
            }
        }
    }

    proptest! {
        #[test]
        fn simplex_output_is_valid_and_idempotent(v in proptest::collection::vec(-5.0f64..5.0, 1..12)) {
            let p = project_simplex(&v).unwrap();
            let sum: f64 = p.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
            prop_assert!(p.iter().all(|&x| x >= 0.0));
            let q = project_simplex(&p).unwrap();
            for (a, b) in p.iter().zip(&q) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

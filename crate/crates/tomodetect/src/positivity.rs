//! Positivity of quantum states expressed as polynomial constraints on
//! Bloch data.
//!
//! A unit-trace Hermitian operator is positive semidefinite exactly when
//! all its ζ constraints are ≤ 0: one constraint for a single qubit,
//! three for a qubit pair. Inserting the partial transpose yields the ε
//! conditions, which for two qubits certify separability (PPT).

use crate::linalg::{HermitianMatrix, Mat3};
use crate::states::{dot, BlochMatrix};
use crate::{Error, Result};

/// Violation threshold: a constraint counts as violated above +1e-7,
/// comfortably above accumulated arithmetic noise (≤ 1e-9) and far below
/// any physically meaningful violation (≥ 1e-2).
pub const VIOLATION_TOL: f64 = 1e-7;

/// Single-qubit positivity constraint ζ₁ = Tr ρ² − 1 = ½(1+‖u‖²) − 1.
pub fn zeta1_single(u: &[f64; 3]) -> f64 {
    0.5 * (1.0 + dot(u, u)) - 1.0
}

/// Cofactor matrix: entries (−1)^{i+j}·minor_ij, satisfying
/// R·R_cofᵀ = det(R)·1.
pub fn cofactor(r: &Mat3) -> Mat3 {
    let m = &r.rows;
    let minor = |i: usize, j: usize| -> f64 {
        let rows: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
    };
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            *x = sign * minor(i, j);
        }
    }
    Mat3::new(out)
}

/// The three two-qubit positivity constraints (ζ₁, ζ₂, ζ₃):
///
/// ```text
/// ζ₁ = ‖r‖² − 4
/// ζ₂ = (‖r‖² − 2) − 2(u†Rv − det R)
/// ζ₃ = −8(u†Rv − det R) − (‖r‖² − 2)² − 8 u†R_cof v
///      + 4(‖u‖²‖v‖² + ‖u†R‖² + ‖Rv‖² + ‖R_cof‖²)
/// ```
///
/// with ‖r‖² = 1 + ‖u‖² + ‖v‖² + ‖R‖². All three are ≤ 0 exactly for
/// positive semidefinite unit-trace operators.
pub fn zetas_two_qubit(b: &BlochMatrix) -> [f64; 3] {
    let norm2 = b.norm_sqr();
    let q = b.r.bilinear(&b.u, &b.v) - b.r.det();
    let r_cof = cofactor(&b.r);
    let cross = r_cof.bilinear(&b.u, &b.v);

    let ut_r = b.r.transpose().matvec(&b.u);
    let r_v = b.r.matvec(&b.v);
    let quartic = dot(&b.u, &b.u) * dot(&b.v, &b.v)
        + dot(&ut_r, &ut_r)
        + dot(&r_v, &r_v)
        + r_cof.norm_sqr();

    let zeta1 = norm2 - 4.0;
    let zeta2 = (norm2 - 2.0) - 2.0 * q;
    let zeta3 = -8.0 * q - (norm2 - 2.0).powi(2) - 8.0 * cross + 4.0 * quartic;
    [zeta1, zeta2, zeta3]
}

/// PPT conditions ε₂, ε₃: ζ₂, ζ₃ with the signs of det R and u†R_cof v
/// flipped (the effect of transposing the second qubit). Both ≤ 0 for
/// every separable two-qubit state; a positive value certifies
/// entanglement.
pub fn epsilons_ppt(b: &BlochMatrix) -> [f64; 2] {
    let norm2 = b.norm_sqr();
    let q = b.r.bilinear(&b.u, &b.v) + b.r.det();
    let r_cof = cofactor(&b.r);
    let cross = r_cof.bilinear(&b.u, &b.v);

    let ut_r = b.r.transpose().matvec(&b.u);
    let r_v = b.r.matvec(&b.v);
    let quartic = dot(&b.u, &b.u) * dot(&b.v, &b.v)
        + dot(&ut_r, &ut_r)
        + dot(&r_v, &r_v)
        + r_cof.norm_sqr();

    let eps2 = (norm2 - 2.0) - 2.0 * q;
    let eps3 = -8.0 * q - (norm2 - 2.0).powi(2) + 8.0 * cross + 4.0 * quartic;
    [eps2, eps3]
}

/// Smallest eigenvalue; the generic positivity test for any qubit count.
pub fn min_eigenvalue(m: &HermitianMatrix) -> Result<f64> {
    m.min_eigenvalue()
}

/// Positivity diagnostics of a unit-trace Hermitian operator: the ζ
/// vector (length 1 for one qubit, 3 for two) and the smallest
/// eigenvalue.
#[derive(Clone, Debug)]
pub struct ConstraintValues {
    pub zetas: Vec<f64>,
    pub min_eigenvalue: f64,
}

impl ConstraintValues {
    pub fn evaluate(m: &HermitianMatrix) -> Result<Self> {
        let min_eigenvalue = m.min_eigenvalue()?;
        let zetas = match m.dim() {
            2 => {
                let mut u = [0.0; 3];
                for (k, slot) in u.iter_mut().enumerate() {
                    *slot = m.expectation(&crate::states::pauli(k + 1))?;
                }
                vec![zeta1_single(&u)]
            }
            4 => zetas_two_qubit(&BlochMatrix::from_hermitian(m)?).to_vec(),
            dim => {
                return Err(Error::UnsupportedDimension {
                    dim,
                    context: "closed-form ζ constraints exist for 1 and 2 qubits",
                })
            }
        };
        Ok(Self {
            zetas,
            min_eigenvalue,
        })
    }

    /// True when any ζ exceeds [`VIOLATION_TOL`].
    pub fn violated(&self) -> bool {
        self.zetas.iter().any(|&z| z > VIOLATION_TOL)
    }

    pub fn max_zeta(&self) -> f64 {
        self.zetas.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_density_matrix, BlochMatrix, DensityMatrix};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zeta1_single_examples() {
        assert!((zeta1_single(&[0.0; 3]) + 0.5).abs() < 1e-15);
        assert!(zeta1_single(&[1.0, 0.0, 0.0]).abs() < 1e-15);
        // The Y-for-Z error at the purity-0.75 boundary: ũ = (0, √½, √½).
        let h = 0.5f64.sqrt();
        assert!(zeta1_single(&[0.0, h, h]).abs() < 1e-15);
    }

    #[test]
    fn cofactor_examples() {
        assert_eq!(cofactor(&Mat3::IDENTITY), Mat3::IDENTITY);
        assert_eq!(
            cofactor(&Mat3::diagonal(1.0, -1.0, 1.0)),
            Mat3::diagonal(-1.0, 1.0, -1.0)
        );
        let (a, b, c) = (2.0, 3.0, 5.0);
        assert_eq!(
            cofactor(&Mat3::diagonal(a, b, c)),
            Mat3::diagonal(b * c, a * c, a * b)
        );
    }

    #[test]
    fn cofactor_identity_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let r = Mat3::new(std::array::from_fn(|_| {
                std::array::from_fn(|_| rng.random_range(-2.0..2.0))
            }));
            let product = r.mul(&cofactor(&r).transpose());
            let det = r.det();
            for i in 0..3 {
                for j in 0..3 {
                    let expected = if i == j { det } else { 0.0 };
                    assert!((product.rows[i][j] - expected).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn zetas_of_special_states() {
        let mixed = BlochMatrix::ZERO;
        let z = zetas_two_qubit(&mixed);
        assert!((z[0] + 3.0).abs() < 1e-15);
        assert!((z[1] + 1.0).abs() < 1e-15);
        assert!((z[2] + 1.0).abs() < 1e-15);

        let bell = BlochMatrix::from_state(&DensityMatrix::bell_phi_plus()).unwrap();
        let z = zetas_two_qubit(&bell);
        for v in z {
            assert!(v.abs() < 1e-12, "Bell state should sit on the boundary, got {v}");
        }

        // Erroneous purity-0.7 estimate tensored with the true state:
        // u = (0,√.4,√.4), v = (0,√.4,0), R = u·vᵀ.
        let s = 0.4f64.sqrt();
        let b = BlochMatrix::product(&[0.0, s, s], &[0.0, s, 0.0]);
        let z = zetas_two_qubit(&b);
        assert!((z[0] + 1.480).abs() < 1e-12);
        assert!((z[1] + 0.120).abs() < 1e-12);
        assert!((z[2] + 0.0144).abs() < 1e-12);
    }

    #[test]
    fn epsilons_of_special_states() {
        let e = epsilons_ppt(&BlochMatrix::ZERO);
        assert!((e[0] + 1.0).abs() < 1e-15);
        assert!((e[1] + 1.0).abs() < 1e-15);

        // The Bell state violates PPT maximally: ε₂ = 2 − 2·(det R) with
        // det R = −1 gives 4.
        let bell = BlochMatrix::from_state(&DensityMatrix::bell_phi_plus()).unwrap();
        let e = epsilons_ppt(&bell);
        assert!((e[0] - 4.0).abs() < 1e-12);

        // Product states satisfy PPT.
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let a = random_density_matrix(1, &mut rng);
            let b = random_density_matrix(1, &mut rng);
            let bloch = BlochMatrix::product(
                &a.bloch_vector().unwrap(),
                &b.bloch_vector().unwrap(),
            );
            let e = epsilons_ppt(&bloch);
            assert!(e[0] <= 1e-9 && e[1] <= 1e-9, "product state broke PPT: {e:?}");
        }
    }

    #[test]
    fn epsilons_equal_zetas_of_partial_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let rho = random_density_matrix(2, &mut rng);
            let b = BlochMatrix::from_state(&rho).unwrap();
            let eps = epsilons_ppt(&b);
            let pt = rho.matrix().partial_transpose(1).unwrap();
            let z_pt = zetas_two_qubit(&BlochMatrix::from_hermitian(&pt).unwrap());
            assert!((eps[0] - z_pt[1]).abs() < 1e-10);
            assert!((eps[1] - z_pt[2]).abs() < 1e-10);
        }
    }

    #[test]
    fn zeta_set_matches_eigenvalue_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        // Physical states: all ζ ≤ 0 and min eigenvalue ≥ 0 (within noise).
        for _ in 0..200 {
            let rho = random_density_matrix(2, &mut rng);
            let cv = ConstraintValues::evaluate(rho.matrix()).unwrap();
            assert!(cv.max_zeta() <= 1e-9);
            assert!(cv.min_eigenvalue >= -1e-9);
        }
        // Perturbed unit-trace Hermitian operators: sign agreement outside
        // a narrow boundary band.
        for _ in 0..200 {
            let rho = random_density_matrix(2, &mut rng);
            let mut b = BlochMatrix::from_state(&rho).unwrap();
            for i in 0..3 {
                b.u[i] += rng.random_range(-0.4..0.4);
                b.v[i] += rng.random_range(-0.4..0.4);
                for j in 0..3 {
                    b.r.rows[i][j] += rng.random_range(-0.4..0.4);
                }
            }
            let m = b.to_hermitian();
            let cv = ConstraintValues::evaluate(&m).unwrap();
            if cv.min_eigenvalue.abs() < 1e-7 {
                continue; // boundary band
            }
            assert_eq!(
                cv.min_eigenvalue < 0.0,
                cv.max_zeta() > 0.0,
                "ζ/eigenvalue disagreement: min_eig = {}, ζ = {:?}",
                cv.min_eigenvalue,
                cv.zetas
            );
        }
    }

    #[test]
    fn min_eigenvalue_examples() {
        let rho = DensityMatrix::bell_phi_plus();
        assert!(min_eigenvalue(rho.matrix()).unwrap() >= -1e-10);
        let m = crate::states::hermitian_from_bloch_vector(&[0.0, 0.0, 1.2]);
        assert!((min_eigenvalue(&m).unwrap() + 0.1).abs() < 1e-12);
    }
}

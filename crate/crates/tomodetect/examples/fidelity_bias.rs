//! Fidelity of the unbiased and the physically projected estimator with
//! respect to the Bell state, as the Z-basis quarter-wave plate on qubit
//! 1 rotates: the two estimators disagree most at 45°, where the
//! projection bias is largest.
//!
//! Writes `psi_deg,f_ls,f_phys` rows to stdout.

use tomodetect::error_models::{MeasurementError, MisalignmentMatrix, QubitError};
use tomodetect::linalg::C64;
use tomodetect::states::{fidelity_to_pure, qdot_state, QDotParams};
use tomodetect::tomography::EstimatePair;

fn main() {
    let rho = qdot_state(&QDotParams::default()).unwrap(); // purity ≈ 0.92
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = [
        C64::new(h, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(h, 0.0),
    ];

    println!("psi_deg,f_ls,f_phys");
    for deg in 0..=90 {
        let error = MeasurementError::single_qubit(
            2,
            0,
            QubitError::Misalignment(MisalignmentMatrix::z_basis_rotation(
                (deg as f64).to_radians(),
            )),
        )
        .unwrap();
        let pair = EstimatePair::analytic(&rho, Some(&error)).unwrap();
        let f_ls = fidelity_to_pure(&pair.rho_ls, &bell).unwrap();
        let f_phys = fidelity_to_pure(pair.rho_phys.matrix(), &bell).unwrap();
        println!("{deg},{f_ls:.9e},{f_phys:.9e}");
    }
}

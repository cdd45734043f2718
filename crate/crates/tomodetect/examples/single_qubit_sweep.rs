//! Distance D as a function of the Z-basis quarter-wave-plate rotation
//! for a single qubit prepared in the σ_Y eigenstate, at several
//! purities. The curve family peaks at 45° (where Y is read instead of
//! Z) and collapses to zero at purity 0.75 — the closed-form minimal
//! purity of that misalignment.
//!
//! Writes `psi_deg,purity,distance` rows to stdout.

use tomodetect::error_models::{MeasurementError, MisalignmentMatrix, QubitError};
use tomodetect::purity_search::{depolarize_to_purity, p_min_single_closed_form};
use tomodetect::states::DensityMatrix;
use tomodetect::tomography::EstimatePair;

fn main() {
    let pure = DensityMatrix::y_eigenstate();
    let p_min = p_min_single_closed_form(&MisalignmentMatrix::y_for_z()).unwrap();
    eprintln!("closed-form minimal purity for the 45° rotation: {p_min}");

    println!("psi_deg,purity,distance");
    for purity_step in 0..=5 {
        let purity = 0.75 + 0.05 * purity_step as f64;
        let rho = depolarize_to_purity(&pure, purity).unwrap();
        for psi_deg in (0..=90).step_by(1) {
            let psi = (psi_deg as f64).to_radians();
            let error = MeasurementError::new(vec![QubitError::Misalignment(
                MisalignmentMatrix::z_basis_rotation(psi),
            )])
            .unwrap();
            let pair = EstimatePair::analytic(&rho, Some(&error)).unwrap();
            println!("{psi_deg},{purity:.2},{:.9e}", pair.distance);
        }
    }
}

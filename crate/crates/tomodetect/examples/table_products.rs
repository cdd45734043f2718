//! Can an uncorrelated ancilla improve single-qubit error detection?
//! Tensor products of the erroneous purity-0.7 estimate (under the
//! Y-for-Z misalignment) with a true copy, a second erroneous copy, and
//! Pauli eigenstates: none of them violates a positivity constraint, so
//! plain product ancillas do not help.

use tomodetect::error_models::MisalignmentMatrix;
use tomodetect::purity_search::{ancilla_product_check, Companion};
use tomodetect::states::Axis;

fn main() {
    let error = MisalignmentMatrix::y_for_z();
    let cases: Vec<(&str, Companion)> = vec![
        ("erroneous x identity (single-qubit case)", Companion::IdentityPad),
        ("erroneous x true copy", Companion::TrueCopy),
        ("erroneous x erroneous copy", Companion::ErroneousCopy),
        ("erroneous x X eigenstate", Companion::PauliEigenstate(Axis::X)),
        ("erroneous x Y eigenstate", Companion::PauliEigenstate(Axis::Y)),
        ("erroneous x Z eigenstate", Companion::PauliEigenstate(Axis::Z)),
    ];
    println!("{:<42} {:>8} {:>8} {:>8}  min_eig", "construction", "zeta1", "zeta2", "zeta3");
    for (label, companion) in cases {
        let cv = ancilla_product_check(&error, 0.7, companion).unwrap();
        let z = |i: usize| cv.zetas.get(i).map_or("-".into(), |v| format!("{v:+.3}"));
        println!(
            "{label:<42} {:>8} {:>8} {:>8}  {:+.4}",
            z(0),
            z(1),
            z(2),
            cv.min_eigenvalue
        );
    }
}

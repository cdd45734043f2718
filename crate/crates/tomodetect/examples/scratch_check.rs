use std::time::Instant;
use tomodetect::error_models::{MeasurementError, MisalignmentMatrix, QubitError};
use tomodetect::purity_search::{find_p_min, purity_grid, SearchConfig};
use tomodetect::states::{qdot_state, QDotParams};
use tomodetect::stats::{simulate_subexperiment_distances, summarize_histogram};

fn main() {
    // Δ=0 histograms per purity.
    for &target in &[0.92, 0.65, 0.56] {
        let rho = qdot_state(&QDotParams::for_purity(target, 0.946).unwrap()).unwrap();
        let d = simulate_subexperiment_distances(&rho, None, 1000, 400, 11).unwrap();
        let s = summarize_histogram(&d, 50).unwrap();
        let zeros = d.iter().filter(|&&x| x == 0.0).count();
        println!(
            "purity {target}: mode {:?} mean {:.5} std {:.5} zero-D subs {}",
            s.mode, s.mean, s.std, zeros
        );
    }

    // Timing: one entangled find_p_min sweep point set with full restarts.
    let error = MeasurementError::single_qubit(
        2, 0, QubitError::Misalignment(MisalignmentMatrix::swap_yz()),
    )
    .unwrap();
    let config = SearchConfig {
        purity_grid: purity_grid(0.25, 0.45, 0.01),
        stop_at_first_violation: true,
        ..Default::default()
    };
    let t = Instant::now();
    let result = find_p_min(&error, false, &config).unwrap();
    println!(
        "entangled sweep to first violation: p_min {:?} binding {:?} in {:.1?} ({} grid points)",
        result.p_min,
        result.binding_constraint,
        t.elapsed(),
        result.grid.len()
    );

    let config_sep = SearchConfig {
        purity_grid: purity_grid(0.25, 1.0, 0.05),
        ..Default::default()
    };
    let t = Instant::now();
    let result = find_p_min(&error, true, &config_sep).unwrap();
    let worst = result
        .grid
        .iter()
        .flat_map(|g| g.x.iter().cloned())
        .fold(f64::NEG_INFINITY, f64::max);
    println!(
        "separable sweep (16 pts): worst x {worst:.2e}, p_min {:?}, in {:.1?}",
        result.p_min,
        t.elapsed()
    );
}

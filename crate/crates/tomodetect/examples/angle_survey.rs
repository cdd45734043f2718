//! Random subset of the 5⁴ = 625 angle-grid survey of general Y/Z-sector
//! misalignments: for each erroneous tuple, sweep the purity cap and
//! report the first violating purity and its binding constraint (x₃ in
//! every case, typically around 0.31).
//!
//! Writes `alpha,beta,gamma,delta,p_min,binding` rows to stdout. Set
//! `TUPLES=<n>` for the subset size (default 5, to keep the example
//! quick).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tomodetect::error_models::MisalignmentMatrix;
use tomodetect::purity_search::{purity_grid, survey_tuples, SearchConfig};

fn main() {
    let subset: usize = std::env::var("TUPLES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(5);
    let angles = [
        0.0,
        std::f64::consts::PI / 8.0,
        std::f64::consts::PI / 4.0,
        3.0 * std::f64::consts::PI / 8.0,
        std::f64::consts::PI / 2.0,
    ];
    let mut erroneous = Vec::new();
    for &a in &angles {
        for &b in &angles {
            for &g in &angles {
                for &d in &angles {
                    if !MisalignmentMatrix::general(a, b, g, d).is_identity() {
                        erroneous.push((a, b, g, d));
                    }
                }
            }
        }
    }
    eprintln!("{} erroneous tuples out of 625", erroneous.len());
    let mut rng = ChaCha8Rng::seed_from_u64(625);
    erroneous.shuffle(&mut rng);
    erroneous.truncate(subset);

    let config = SearchConfig {
        purity_grid: purity_grid(0.26, 0.40, 0.01),
        restarts: 12,
        stop_at_first_violation: true,
        ..Default::default()
    };
    let rows = survey_tuples(&erroneous, false, &config).unwrap();

    println!("alpha,beta,gamma,delta,p_min,binding");
    for row in rows {
        let summary = row.entangled.unwrap();
        println!(
            "{:.4},{:.4},{:.4},{:.4},{},{}",
            row.alpha,
            row.beta,
            row.gamma,
            row.delta,
            summary.p_min.map_or("none".into(), |p| format!("{p:.2}")),
            summary
                .binding_constraint
                .map_or("none".into(), |l| format!("x{l}")),
        );
    }
}

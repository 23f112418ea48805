//! The full verification bundle on a small chain: operator tables,
//! factorization, interaction-picture equivalence, the central-pair channel
//! reconstruction, entropy against the oracle, and the always-present
//! erratum report for the printed profile formulas.
//!
//! ```bash
//! cargo run --release --example verify_protocol
//! ```

use kicked_ising::cli::{render_verify_text, run_verify, ExperimentConfig};

fn main() {
    let cfg = ExperimentConfig { length: 8, block: Some(4), kicks: Some(16), ..Default::default() };
    let report = run_verify(&cfg).expect("valid config");
    print!("{}", render_verify_text(&report));
    std::process::exit(if report.passed { 0 } else { 1 });
}

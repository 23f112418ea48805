//! Block-entropy sawtooth on both backends, checked against the closed
//! form: the data behind the entanglement-vs-kicks picture.
//!
//! ```bash
//! cargo run --release --example entropy_profile
//! ```

use kicked_ising::cli::{render_entropy_csv, run_entropy_profile, ExperimentConfig};
use kicked_ising::Boundary;

fn main() {
    for (boundary, block) in [(Boundary::Open, 10), (Boundary::Closed, 10), (Boundary::Open, 8)] {
        let cfg = ExperimentConfig {
            length: 20,
            boundary,
            block: Some(block),
            kicks: Some(20),
            ..Default::default()
        };
        let report = run_entropy_profile(&cfg).expect("valid config");
        println!("# L=20 {boundary} M={block}");
        print!("{}", render_entropy_csv(&report));
        println!();
    }
}

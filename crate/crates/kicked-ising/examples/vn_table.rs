//! The interaction-picture operators V_n over one full period: recursion
//! next to the closed forms, including the turning point where the edge Y
//! letters flip to X and the string decimates back down to the bare bond.
//!
//! ```bash
//! cargo run --release --example vn_table
//! ```

use kicked_ising::cli::{render_vn_text, run_vn_table, ExperimentConfig};
use kicked_ising::interaction::main_text_decimation_variant;
use kicked_ising::ChainConfig;

fn main() {
    let cfg = ExperimentConfig { length: 8, block: Some(4), kicks: Some(9), ..Default::default() };
    let rows = run_vn_table(&cfg).expect("valid config");
    print!("{}", render_vn_text(&rows));

    // the decimation-range variant with the asymmetric B index, shown next
    // to what the recursion actually produces
    let chain = ChainConfig::open(8, 4).expect("valid chain");
    println!("\ndecimation-range variant with the off-by-one B index:");
    for n in 5..=7 {
        if let Some(v) = main_text_decimation_variant(n, &chain) {
            println!("  n={n}: {v}  (recursion gives {})", rows[n - 1].string);
        }
    }
}

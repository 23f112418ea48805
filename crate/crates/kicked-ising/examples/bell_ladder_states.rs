//! The interaction-picture reference states: products of interface Bell
//! pairs that the operator ladder builds one rung per kick. Prints the
//! nonzero amplitudes, cross-checks against the ladder of V operators, and
//! shows the JSON state-dump format.
//!
//! ```bash
//! cargo run --release --example bell_ladder_states
//! ```

use kicked_ising::dense::{bell_ladder_state, ladder_state};
use kicked_ising::ChainConfig;

fn main() {
    let cfg = ChainConfig::open(6, 2).expect("valid chain");
    for n in 0..=4 {
        let tilde = ladder_state(n, &cfg).expect("small chain");
        let reference = bell_ladder_state(n, &cfg)
            .expect("small chain")
            .expect("within coverage");
        println!(
            "n = {n}: ladder vs reference distance {:.2e}",
            tilde.distance(&reference)
        );
        for (idx, amp) in reference.amplitudes().iter().enumerate() {
            if amp.norm_sqr() > 1e-20 {
                println!("   |{idx:06b}>  {:+.4}{:+.4}i", amp.re, amp.im);
            }
        }
    }
    // the wire format used for state dumps
    let dump = ladder_state(1, &cfg).expect("small chain").to_json();
    println!("\nJSON dump of the one-rung state:\n{dump}");
}

//! The stabilizer tableau under the kick map: generator strings printed in
//! the text rendering (one per line), two-qubit tomography from Pauli
//! expectations, and the entropy formula from the GF(2) rank.
//!
//! ```bash
//! cargo run --release --example stabilizer_tableau
//! ```

use kicked_ising::dense::concurrence_of_matrix;
use kicked_ising::stab::StabilizerTableau;
use kicked_ising::ChainConfig;

fn main() {
    let cfg = ChainConfig::open(4, 2).expect("valid chain");
    let mut tab = StabilizerTableau::zero_state(4);
    for n in 0..=2 {
        if n > 0 {
            tab.apply_floquet(&cfg).expect("same length");
        }
        println!("after {n} kick(s):");
        print!("{tab}");
        println!("  S_2 = {} ebits", tab.block_entropy(2).expect("valid block"));
    }
    let rho = tab.two_qubit_rdm(2, 3).expect("valid pair");
    println!(
        "central pair after 2 kicks: concurrence {:.6}",
        concurrence_of_matrix(&rho).expect("valid density matrix")
    );
}

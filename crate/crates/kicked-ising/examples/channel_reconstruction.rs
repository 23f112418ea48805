//! The one-kick central-pair channel on the L = 4 open chain: local Kraus
//! operators acting on the interface Bell state reproduce the simulated
//! two-qubit density matrix (the maximally mixed state), and dropping one
//! Kraus term visibly breaks the reconstruction.
//!
//! ```bash
//! cargo run --release --example channel_reconstruction
//! ```

use kicked_ising::dense::{
    apply_product_kraus, channel_kraus_ops, interface_bell_projector, pauli_channel_check,
};
use kicked_ising::ChainConfig;

fn main() {
    let cfg = ChainConfig::open(4, 2).expect("valid chain");
    let check = pauli_channel_check(&cfg).expect("L = 4 open");
    println!("reconstruction residual:    {:.3e}", check.reconstruction_residual);
    println!("deviation from I/4:         {:.3e}", check.max_mixed_residual);
    println!("negative control residual:  {:.3e}", check.negative_control_residual);

    let rho = apply_product_kraus(&channel_kraus_ops(), &interface_bell_projector());
    println!("\nreconstructed central-pair density matrix:");
    for r in 0..4 {
        let row: Vec<String> =
            (0..4).map(|c| format!("{:+.3}{:+.3}i", rho[(r, c)].re, rho[(r, c)].im)).collect();
        println!("  {}", row.join("  "));
    }
}

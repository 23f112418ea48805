//! The closed-form entropy oracle against the stabilizer backend at sizes
//! the dense backend cannot reach. The oracle must match exactly (integer
//! against integer) over two full periods.

use kicked_ising::analytics::{entropy_closed_form, entropy_period};
use kicked_ising::chain::{Boundary, ChainConfig};
use kicked_ising::stab::StabilizerTableau;

fn sweep(length: usize, boundary: Boundary, blocks: &[usize], n_max: usize) {
    let chain = ChainConfig::new(length, boundary, length / 2).unwrap();
    let mut tab = StabilizerTableau::zero_state(length);
    for n in 0..=n_max {
        if n > 0 {
            tab.apply_floquet(&chain).unwrap();
        }
        for &m in blocks {
            let s = tab.block_entropy(m).unwrap() as u64;
            let oracle = entropy_closed_form(length, boundary, m, n)
                .unwrap_or_else(|| panic!("oracle covers L={length} {boundary} M={m}"));
            assert_eq!(s, oracle, "L={length} {boundary} M={m} n={n}");
        }
    }
}

#[test]
fn open_chains_at_mid_scale() {
    for l in [40usize, 100, 400] {
        let n_max = 2 * entropy_period(l, Boundary::Open).min(l + 20);
        sweep(l, Boundary::Open, &[2, l / 4, l / 2], n_max);
    }
}

#[test]
fn closed_chains_at_mid_scale() {
    // closed-chain coverage needs even blocks
    for l in [40usize, 100, 400] {
        let n_max = 2 * entropy_period(l, Boundary::Closed);
        sweep(l, Boundary::Closed, &[2, l / 2], n_max);
    }
}

#[test]
fn odd_blocks_on_closed_chains_are_uncovered() {
    assert_eq!(entropy_closed_form(40, Boundary::Closed, 5, 3), None);
    // the simulation still produces them
    let chain = ChainConfig::closed(40, 20).unwrap();
    let mut tab = StabilizerTableau::zero_state(40);
    for _ in 0..3 {
        tab.apply_floquet(&chain).unwrap();
    }
    assert_eq!(tab.block_entropy(5).unwrap(), 5);
}

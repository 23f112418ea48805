//! End-to-end acceptance suite. One test per criterion; each prints a
//! single pass/fail line (visible with `--nocapture`) and asserts the
//! stated tolerance. Run with
//!
//! ```bash
//! cargo test -p kicked-ising --test acceptance -- --test-threads=1 --nocapture
//! ```

use std::time::Instant;

use num_complex::Complex64;

use kicked_ising::analytics::{
    concurrence_prediction, entropy_closed_form, entropy_formula_verbatim, ThetaZero,
};
use kicked_ising::chain::{Boundary, ChainConfig};
use kicked_ising::cli::{run_verify, ExperimentConfig};
use kicked_ising::dense;
use kicked_ising::gf2::BinaryMatrix;
use kicked_ising::interaction::{
    interaction_ladder, interaction_operator_closed_form, verify_factorization,
};
use kicked_ising::pauli::{Letter, PauliString};
use kicked_ising::stab::StabilizerTableau;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, passed: bool, detail: &str) {
    println!("{} {criterion}: {detail}", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "{criterion}: {detail}");
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Criterion 1: the first two kicks of the L = 4 open chain reproduce the
/// published amplitude tables exactly, with no global-phase quotient.
#[test]
fn criterion_1_golden_states() {
    let cfg = ChainConfig::open(4, 2).unwrap();
    let a = 1.0 / (2.0 * 2.0f64.sqrt());
    let golden1: [(usize, Complex64); 8] = [
        (0b0000, c(-a, 0.0)),
        (0b0101, c(a, 0.0)),
        (0b1010, c(a, 0.0)),
        (0b1111, c(a, 0.0)),
        (0b0011, c(0.0, a)),
        (0b0110, c(0.0, a)),
        (0b1001, c(0.0, -a)),
        (0b1100, c(0.0, a)),
    ];
    let golden2: [(usize, Complex64); 4] = [
        (0b0000, c(0.5, 0.0)),
        (0b0110, c(0.0, -0.5)),
        (0b1001, c(0.0, -0.5)),
        (0b1111, c(-0.5, 0.0)),
    ];
    let mut worst: f64 = 0.0;
    for (n, golden) in [(1usize, &golden1[..]), (2, &golden2[..])] {
        let state = dense::evolve(n, &cfg).unwrap();
        let mut expect = vec![c(0.0, 0.0); 16];
        for &(idx, amp) in golden {
            expect[idx] = amp;
        }
        for (got, want) in state.amplitudes().iter().zip(&expect) {
            worst = worst.max((got - want).norm());
        }
    }
    report(
        "criterion 1 (golden states)",
        worst < 1e-12,
        &format!("max amplitude error {worst:.2e}"),
    );
}

/// Criterion 2: L = 20 dense profiles — open M=10 sawtooth, closed M=10 at
/// twice the rate, open M=8 plateau — every point integer and equal to the
/// closed form, in under two minutes.
#[test]
fn criterion_2_fig1_profiles() {
    let started = Instant::now();
    let mut worst_oracle: f64 = 0.0;
    let mut worst_integer: f64 = 0.0;
    let mut checks: Vec<(Boundary, usize, usize, f64)> = Vec::new();
    for (boundary, m, n_max) in
        [(Boundary::Open, 10usize, 20usize), (Boundary::Closed, 10, 10), (Boundary::Open, 8, 20)]
    {
        let cfg = ChainConfig::new(20, boundary, m).unwrap();
        let mut state = dense::StateVector::zero_state(20).unwrap();
        for n in 0..=n_max {
            if n > 0 {
                state.apply_floquet(&cfg).unwrap();
            }
            let s = dense::block_entropy(&state, m).unwrap();
            let oracle = entropy_closed_form(20, boundary, m, n).unwrap() as f64;
            worst_oracle = worst_oracle.max((s - oracle).abs());
            worst_integer = worst_integer.max((s - s.round()).abs());
            checks.push((boundary, m, n, s));
        }
    }
    let peak_open = checks
        .iter()
        .find(|(b, m, n, _)| *b == Boundary::Open && *m == 10 && *n == 10)
        .unwrap()
        .3;
    let zero_open = checks
        .iter()
        .find(|(b, m, n, _)| *b == Boundary::Open && *m == 10 && *n == 20)
        .unwrap()
        .3;
    let peak_closed = checks
        .iter()
        .find(|(b, m, n, _)| *b == Boundary::Closed && *m == 10 && *n == 5)
        .unwrap()
        .3;
    let zero_closed = checks
        .iter()
        .find(|(b, m, n, _)| *b == Boundary::Closed && *m == 10 && *n == 10)
        .unwrap()
        .3;
    let plateau_ok = (8..=12).all(|n| {
        (checks
            .iter()
            .find(|(b, m, nn, _)| *b == Boundary::Open && *m == 8 && *nn == n)
            .unwrap()
            .3
            - 8.0)
            .abs()
            < 1e-9
    });
    let elapsed = started.elapsed().as_secs_f64();
    let passed = worst_oracle < 1e-9
        && worst_integer < 1e-9
        && (peak_open - 10.0).abs() < 1e-9
        && zero_open.abs() < 1e-9
        && (peak_closed - 10.0).abs() < 1e-9
        && zero_closed.abs() < 1e-9
        && plateau_ok
        && elapsed < 120.0;
    report(
        "criterion 2 (L=20 entropy profiles)",
        passed,
        &format!(
            "max |S - oracle| {worst_oracle:.2e}, max integer defect {worst_integer:.2e}, \
             open peak {peak_open}, closed peak {peak_closed}, plateau at 8 ok: {plateau_ok}, \
             {elapsed:.1}s"
        ),
    );
}

/// Criterion 3: stabilizer and dense backends agree — block entropies to
/// 1e-9, two-qubit reduced density matrices to 1e-10, and the tableau
/// stabilizes the dense state (every generator expectation +1, which pins
/// the states to fidelity 1) — for L = 4..16, both boundaries,
/// M in {2, L/2}, n <= 2L.
#[test]
fn criterion_3_backend_equivalence() {
    let started = Instant::now();
    let mut worst_entropy: f64 = 0.0;
    let mut worst_rdm: f64 = 0.0;
    let mut worst_fidelity: f64 = 0.0;
    let mut points = 0usize;
    for l in (4..=16usize).step_by(2) {
        for boundary in [Boundary::Open, Boundary::Closed] {
            let cfg = ChainConfig::new(l, boundary, l / 2).unwrap();
            let mut state = dense::StateVector::zero_state(l).unwrap();
            let mut tab = StabilizerTableau::zero_state(l);
            let mut blocks = vec![2usize, l / 2];
            blocks.dedup();
            let pairs = [(l / 2, l / 2 + 1), (1, 2), (1, l)];
            for n in 0..=2 * l {
                if n > 0 {
                    state.apply_floquet(&cfg).unwrap();
                    tab.apply_floquet(&cfg).unwrap();
                }
                for &m in &blocks {
                    let sd = dense::block_entropy(&state, m).unwrap();
                    let ss = tab.block_entropy(m).unwrap() as f64;
                    worst_entropy = worst_entropy.max((sd - ss).abs());
                    points += 1;
                }
                for &(i, j) in &pairs {
                    let rd = dense::reduced_density_matrix(&state, &[i, j]).unwrap();
                    let rs = tab.two_qubit_rdm(i, j).unwrap();
                    worst_rdm = worst_rdm.max(rd.matrix().max_abs_diff(&rs));
                }
                // <psi| g |psi> = +1 for every tableau generator g exactly
                // when |psi> is the stabilized state
                for g in tab.rows() {
                    let gv = apply_string(&g, state.amplitudes());
                    let expect: Complex64 = state
                        .amplitudes()
                        .iter()
                        .zip(&gv)
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    worst_fidelity = worst_fidelity.max((expect - c(1.0, 0.0)).norm());
                }
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 3 (backend equivalence)",
        worst_entropy < 1e-9 && worst_rdm < 1e-10 && worst_fidelity < 1e-9 && elapsed < 300.0,
        &format!(
            "{points} entropy points, max |dense - stabilizer| {worst_entropy:.2e}, \
             max RDM deviation {worst_rdm:.2e}, max generator-expectation defect \
             {worst_fidelity:.2e}, {elapsed:.1}s"
        ),
    );
}

/// Criterion 4: a full closed-ring period at L = 4096 with the entropy at
/// every kick, matching the closed form exactly, under 60 seconds.
#[test]
fn criterion_4_scale_run() {
    let started = Instant::now();
    let l = 4096usize;
    let cfg = ChainConfig::closed(l, l / 2).unwrap();
    let mut tab = StabilizerTableau::zero_state(l);
    let mut mismatches = 0usize;
    for n in 1..=l / 2 {
        tab.apply_floquet(&cfg).unwrap();
        let s = tab.block_entropy(l / 2).unwrap() as u64;
        if Some(s) != entropy_closed_form(l, Boundary::Closed, l / 2, n) {
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 4 (L=4096 scale run)",
        mismatches == 0 && elapsed < 60.0,
        &format!("{} kicks, {mismatches} oracle mismatches, {elapsed:.1}s", l / 2),
    );
}

/// Criterion 5: the V_n suite — recursion equals the closed forms
/// phase-exactly at L in {4, 8, 12, 20, 48}, the ladder is periodic and
/// mutually commuting, and the dense factorization residual stays under
/// 1e-10 for L <= 8, n <= 2L.
#[test]
fn criterion_5_vn_suite() {
    let started = Instant::now();
    let mut mismatch = None;
    let mut commute_violation = None;
    for l in [4usize, 8, 12, 20, 48] {
        let cfg = ChainConfig::open(l, l / 2).unwrap();
        let ladder = interaction_ladder(2 * l + 1, &cfg).unwrap();
        for (idx, rung) in ladder.iter().enumerate() {
            let n = idx + 1;
            let closed = interaction_operator_closed_form(n, &cfg)
                .unwrap_or_else(|| panic!("equal blocks cover every n (L={l}, n={n})"));
            if &closed != rung.primary() {
                mismatch = Some((l, n));
            }
        }
        if ladder[l] != ladder[0] {
            mismatch = Some((l, l + 1));
        }
        for a in ladder.iter().take(l) {
            for b in ladder.iter().take(l) {
                if !a.primary().generator().commutes(b.primary().generator()).unwrap() {
                    commute_violation = Some(l);
                }
            }
        }
    }
    let mut worst_residual: f64 = 0.0;
    for (l, m, boundary) in [
        (4usize, 2usize, Boundary::Open),
        (6, 3, Boundary::Open),
        (6, 2, Boundary::Open),
        (8, 4, Boundary::Open),
        (6, 3, Boundary::Closed),
        (6, 2, Boundary::Closed),
        (8, 4, Boundary::Closed),
    ] {
        let cfg = ChainConfig::new(l, boundary, m).unwrap();
        for n in 1..=2 * l {
            worst_residual = worst_residual.max(verify_factorization(n, &cfg).unwrap());
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 5 (V_n suite)",
        mismatch.is_none() && commute_violation.is_none() && worst_residual < 1e-10 && elapsed < 60.0,
        &format!(
            "closed-form mismatch {mismatch:?}, commute violation {commute_violation:?}, \
             max factorization residual {worst_residual:.2e}, {elapsed:.1}s"
        ),
    );
}

/// Criterion 6: concurrence claims for L in {4, 6, 8, 10}, n <= 3L. Closed
/// chains: every pair zero at every kick. Open chains: the central pair
/// reaches exactly 1 at odd multiples of L/2 and is zero otherwise; all
/// values match `concurrence_prediction` to 1e-9. The simulation shows the
/// *other mirror pairs* (i, L+1-i) revive alongside the central pair — the
/// state factorizes into Bell pairs there — which the prediction encodes;
/// that is the one departure from a strictly central-pair-only reading.
#[test]
fn criterion_6_concurrence_claims() {
    let started = Instant::now();
    let mut worst_gap: f64 = 0.0;
    let mut central_fail = None;
    let mut closed_fail = None;
    let mut noncentral_revivals = 0usize;
    for l in [4usize, 6, 8, 10] {
        for boundary in [Boundary::Open, Boundary::Closed] {
            let cfg = ChainConfig::new(l, boundary, l / 2).unwrap();
            let rows = dense::concurrence_scan(&cfg, 3 * l, None).unwrap();
            for row in &rows {
                let predicted =
                    concurrence_prediction(l, boundary, (row.site_i, row.site_j), row.n);
                worst_gap = worst_gap.max((row.concurrence - predicted).abs());
                if boundary == Boundary::Closed && row.concurrence > 1e-9 {
                    closed_fail = Some((l, row.site_i, row.site_j, row.n));
                }
                if boundary == Boundary::Open {
                    let central = (row.site_i, row.site_j) == (l / 2, l / 2 + 1);
                    let odd_multiple = row.n % l == l / 2;
                    if central {
                        let expect = if odd_multiple { 1.0 } else { 0.0 };
                        if (row.concurrence - expect).abs() > 1e-9 {
                            central_fail = Some((l, row.n));
                        }
                    } else if row.concurrence > 1e-9 {
                        noncentral_revivals += 1;
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 6 (concurrence claims)",
        worst_gap < 1e-9 && central_fail.is_none() && closed_fail.is_none() && elapsed < 120.0,
        &format!(
            "max |C - predicted| {worst_gap:.2e}, central-pair failure {central_fail:?}, \
             closed-chain nonzero {closed_fail:?}; note: {noncentral_revivals} non-central \
             mirror-pair revivals observed (Bell-product points), {elapsed:.1}s"
        ),
    );
}

/// Criterion 7: the central-pair channel reconstruction and its negative
/// control.
#[test]
fn criterion_7_channel_check() {
    let cfg = ChainConfig::open(4, 2).unwrap();
    let check = dense::pauli_channel_check(&cfg).unwrap();
    report(
        "criterion 7 (channel reconstruction)",
        check.reconstruction_residual < 1e-12
            && check.max_mixed_residual < 1e-12
            && check.negative_control_residual > 0.05,
        &format!(
            "reconstruction {:.2e}, vs I/4 {:.2e}, negative control {:.2e}",
            check.reconstruction_residual,
            check.max_mixed_residual,
            check.negative_control_residual
        ),
    );
}

/// Criterion 8: the verify command always carries the erratum section
/// documenting the printed-formula divergence (verbatim 10 vs simulated 5
/// at L = 20, M = 10, n = 15) while the sawtooth oracle matches simulation
/// at every point.
#[test]
fn criterion_8_erratum_report() {
    let cfg = ExperimentConfig { length: 8, block: Some(4), kicks: Some(16), ..Default::default() };
    let verify = run_verify(&cfg).unwrap();
    let has_divergence = verify
        .erratum
        .iter()
        .any(|l| l.contains("n=15") && l.contains("verbatim=10") && l.contains("simulated=5"));
    let oracle_clean = !verify.erratum.iter().any(|l| l.contains("ORACLE BROKEN"));
    let confirms = verify
        .erratum
        .iter()
        .any(|l| l.contains("sawtooth oracle matches at every n"));
    // and the divergence is what the formulas themselves say
    let verbatim = entropy_formula_verbatim(20, Boundary::Open, 10, 15, ThetaZero::One).unwrap();
    let sawtooth = entropy_closed_form(20, Boundary::Open, 10, 15).unwrap();
    report(
        "criterion 8 (erratum report)",
        verify.passed && has_divergence && oracle_clean && confirms && verbatim == 10 && sawtooth == 5,
        &format!(
            "verify passed {}, divergence line present {has_divergence}, oracle clean \
             {oracle_clean}, verbatim(n=15)={verbatim} vs sawtooth {sawtooth}",
            verify.passed
        ),
    );
}

/// Criterion 9: the property suite — unitarity, entropy symmetry,
/// eigenvalue clamping, packed GF(2) rank vs a naive oracle, and Pauli
/// phase exactness against the dense matrix oracle.
#[test]
fn criterion_9_property_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // unitarity: norm 1 after every kick
    let mut worst_norm: f64 = 0.0;
    for boundary in [Boundary::Open, Boundary::Closed] {
        let cfg = ChainConfig::new(10, boundary, 5).unwrap();
        let mut state = dense::StateVector::zero_state(10).unwrap();
        for _ in 0..30 {
            state.apply_floquet(&cfg).unwrap();
            worst_norm = worst_norm.max((state.norm() - 1.0).abs());
        }
    }

    // entropy symmetry S_A = S_B and eigenvalue floor for evolved states
    let mut worst_symmetry: f64 = 0.0;
    let mut eigen_floor: f64 = 0.0;
    let cfg = ChainConfig::open(8, 3).unwrap();
    let mut state = dense::StateVector::zero_state(8).unwrap();
    for _ in 0..8 {
        state.apply_floquet(&cfg).unwrap();
        for m in 1..8 {
            let sa = dense::block_entropy(&state, m).unwrap();
            let flipped: Vec<usize> = (m + 1..=8).collect();
            let rho = dense::reduced_density_matrix(&state, &flipped).unwrap();
            let eigs = rho.eigenvalues();
            let sb = dense::entropy_from_eigenvalues(&eigs);
            worst_symmetry = worst_symmetry.max((sa - sb).abs());
            eigen_floor = eigen_floor.min(eigs.iter().copied().fold(0.0, f64::min));
        }
    }

    // packed GF(2) rank against a naive boolean eliminator, 1000 instances
    let mut rank_mismatches = 0usize;
    for _ in 0..1000 {
        let rows = rng.random_range(1..=64);
        let cols = rng.random_range(1..=64);
        let mut m = BinaryMatrix::zeros(rows, cols);
        let density = rng.random_range(0.05..0.95);
        for r in 0..rows {
            for col in 0..cols {
                if rng.random_bool(density) {
                    m.set(r, col, true);
                }
            }
        }
        if m.clone().rank() != naive_rank(&m) {
            rank_mismatches += 1;
        }
    }

    // Pauli phase exactness: to_matrix(P * Q) == to_matrix(P) * to_matrix(Q)
    // entrywise (exhaustive through L = 3), and commutation against the
    // matrix commutator
    let mut worst_phase: f64 = 0.0;
    let mut commute_mismatches = 0usize;
    for l in 1..=3usize {
        let strings = all_strings(l);
        for p in &strings {
            for q in &strings {
                let lhs = p.mul(q).unwrap().to_matrix().unwrap();
                let rhs = p.to_matrix().unwrap().mul(&q.to_matrix().unwrap());
                worst_phase = worst_phase.max(lhs.max_abs_diff(&rhs));
                let pq = p.to_matrix().unwrap().mul(&q.to_matrix().unwrap());
                let qp = q.to_matrix().unwrap().mul(&p.to_matrix().unwrap());
                let commutes_dense = pq.max_abs_diff(&qp) < 1e-12;
                if commutes_dense != p.commutes(q).unwrap() {
                    commute_mismatches += 1;
                }
            }
        }
    }
    // 1000 random pairs at L <= 10: probing the product identity on random
    // vectors. Both sides have one nonzero per matrix column, so a mismatch
    // anywhere makes the difference operator nonzero on a generic vector;
    // four independent probes leave no room for coincidental cancellation.
    for _ in 0..1000 {
        let l = rng.random_range(1..=10usize);
        let p = random_string(l, &mut rng);
        let q = random_string(l, &mut rng);
        let prod = p.mul(&q).unwrap();
        let dim = 1usize << l;
        for _ in 0..4 {
            let v: Vec<Complex64> = (0..dim)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let via_product = apply_string(&prod, &v);
            let via_factors = apply_string(&p, &apply_string(&q, &v));
            let diff: f64 = via_product
                .iter()
                .zip(&via_factors)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst_phase = worst_phase.max(diff);
            // commutator probe: P(Qv) vs Q(Pv)
            let qp = apply_string(&q, &apply_string(&p, &v));
            let comm: f64 = via_factors
                .iter()
                .zip(&qp)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let commutes_probe = comm < 1e-10;
            if commutes_probe != p.commutes(&q).unwrap() {
                commute_mismatches += 1;
            }
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 9 (property suite)",
        worst_norm < 1e-12
            && worst_symmetry < 1e-10
            && eigen_floor > -1e-10
            && rank_mismatches == 0
            && worst_phase < 1e-12
            && commute_mismatches == 0
            && elapsed < 180.0,
        &format!(
            "norm defect {worst_norm:.2e}, entropy symmetry {worst_symmetry:.2e}, eigen floor \
             {eigen_floor:.2e}, rank mismatches {rank_mismatches}, phase error {worst_phase:.2e}, \
             commute mismatches {commute_mismatches}, {elapsed:.1}s"
        ),
    );
}

fn all_strings(l: usize) -> Vec<PauliString> {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    let mut out = Vec::new();
    for phase in 0..4u8 {
        for code in 0..4usize.pow(l as u32) {
            let ls: Vec<Letter> = (0..l).map(|j| letters[(code >> (2 * j)) & 3]).collect();
            out.push(PauliString::from_letters(phase, &ls));
        }
    }
    out
}

fn random_string(l: usize, rng: &mut ChaCha8Rng) -> PauliString {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    let ls: Vec<Letter> = (0..l).map(|_| letters[rng.random_range(0..4)]).collect();
    PauliString::from_letters(rng.random_range(0..4), &ls)
}

/// Matrix-free application of a Pauli string to a dense vector, used as the
/// independent side of the probe checks.
fn apply_string(p: &PauliString, v: &[Complex64]) -> Vec<Complex64> {
    let l = p.length();
    let dim = 1usize << l;
    assert_eq!(v.len(), dim);
    let mut xm = 0usize;
    let mut zm = 0usize;
    for site in 1..=l {
        if p.x_bit(site) {
            xm |= 1 << (l - site);
        }
        if p.z_bit(site) {
            zm |= 1 << (l - site);
        }
    }
    let kxz = (p.phase() as u32 + p.y_count()) % 4;
    let phase = Complex64::i().powu(kxz);
    let mut out = vec![c(0.0, 0.0); dim];
    for (b, &amp) in v.iter().enumerate() {
        let sign = if ((b & zm).count_ones()).is_multiple_of(2) { 1.0 } else { -1.0 };
        out[b ^ xm] += amp * phase * sign;
    }
    out
}

/// Plain boolean Gaussian elimination, the independent rank oracle.
fn naive_rank(m: &BinaryMatrix) -> usize {
    let mut a: Vec<Vec<bool>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..m.rows()).find(|&r| a[r][col]) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..m.rows() {
            if r != rank && a[r][col] {
                let (head, tail) = a.split_at_mut(rank.max(r));
                let (piv, row) = if r > rank {
                    (&head[rank], &mut tail[0])
                } else {
                    (&tail[0], &mut head[r])
                };
                for (x, y) in row.iter_mut().zip(piv) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
        if rank == m.rows() {
            break;
        }
    }
    rank
}

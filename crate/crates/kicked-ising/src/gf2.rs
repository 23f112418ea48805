//! Word-packed GF(2) matrices and rank by Gaussian elimination.
//!
//! The eliminator processes pivot columns eight at a time and clears them
//! from the remaining rows through a 256-entry combination table (the
//! "four Russians" trick), which is what makes the full-period entropy sweep
//! at `L = 4096` affordable on one core.

/// Bit matrix, row-major, 64 columns per word, column 0 at bit 0.
#[derive(Clone, Debug)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BinaryMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    /// Builds from pre-packed rows (each `cols.div_ceil(64)` words).
    pub fn from_packed_rows(rows: Vec<Vec<u64>>, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * words);
        for r in rows {
            assert_eq!(r.len(), words);
            data.extend_from_slice(&r);
        }
        BinaryMatrix { rows: nrows, cols, words, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = r * self.words + c / 64;
        let b = c % 64;
        self.data[w] = self.data[w] & !(1 << b) | (v as u64) << b;
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank over GF(2); consumes the matrix (elimination is in place).
    pub fn rank(mut self) -> usize {
        rank_in_place(&mut self.data, self.rows, self.words)
    }
}

/// Rank of a word-packed bit matrix. See [`BinaryMatrix::rank`].
pub fn gf2_rank(m: BinaryMatrix) -> usize {
    m.rank()
}

const CHUNK: usize = 8;

#[allow(clippy::needless_range_loop, clippy::manual_memcpy)]
fn rank_in_place(data: &mut [u64], nrows: usize, words: usize) -> usize {
    if nrows == 0 || words == 0 {
        return 0;
    }
    let mut rank = 0usize;
    // combination table: tails (including the pivot word) for all 2^CHUNK
    // byte patterns of the current pivot window
    let mut table = vec![0u64; (1 << CHUNK) * words];

    for wb in 0..words {
        let tail = words - wb;
        let mut bit0 = 0usize;
        while bit0 < 64 {
            if rank == nrows {
                return rank;
            }
            let kbits = CHUNK.min(64 - bit0);
            let window_mask: u64 =
                if kbits == 64 { !0 } else { ((1u64 << kbits) - 1) << bit0 };

            // phase 1: hunt pivots among rows rank.. for the window bits
            let mut piv_bits: [u32; CHUNK] = [0; CHUNK];
            let mut npiv = 0usize;
            let mut r = rank;
            while r < nrows && npiv < kbits {
                let mut v = data[r * words + wb] & window_mask;
                let mut used: u32 = 0;
                for idx in 0..npiv {
                    if v >> piv_bits[idx] & 1 == 1 {
                        v ^= data[(rank + idx) * words + wb] & window_mask;
                        used |= 1 << idx;
                    }
                }
                if v != 0 {
                    // make row r a clean pivot row: fold in the pivots its
                    // window hit, then move it up next to the others
                    for idx in 0..npiv {
                        if used >> idx & 1 == 1 {
                            let (pre, post) = data.split_at_mut(r * words);
                            let src = &pre[(rank + idx) * words + wb..(rank + idx) * words + words];
                            let dst = &mut post[wb..words];
                            for (d, s) in dst.iter_mut().zip(src) {
                                *d ^= s;
                            }
                        }
                    }
                    let target = rank + npiv;
                    if r != target {
                        for w in 0..words {
                            data.swap(r * words + w, target * words + w);
                        }
                    }
                    piv_bits[npiv] = (data[target * words + wb] & window_mask)
                        .trailing_zeros();
                    npiv += 1;
                }
                r += 1;
            }
            if npiv == 0 {
                bit0 += kbits;
                continue;
            }

            // phase 2: mutually reduce pivots so pivot i's window carries
            // only its own bit, then build the 256-entry combination table
            for i in 0..npiv {
                for j in 0..npiv {
                    if i == j {
                        continue;
                    }
                    let ri = rank + i;
                    let rj = rank + j;
                    if data[ri * words + wb] >> piv_bits[j] & 1 == 1 {
                        let (a, b) = if ri < rj {
                            let (pre, post) = data.split_at_mut(rj * words);
                            (&mut pre[ri * words + wb..ri * words + words], &post[wb..words])
                        } else {
                            let (pre, post) = data.split_at_mut(ri * words);
                            (&mut post[wb..words], &pre[rj * words + wb..rj * words + words])
                        };
                        for (d, s) in a.iter_mut().zip(b) {
                            *d ^= s;
                        }
                    }
                }
            }
            let mut bit_to_piv = [usize::MAX; CHUNK];
            for i in 0..npiv {
                bit_to_piv[piv_bits[i] as usize - bit0] = i;
            }
            let npat = 1usize << kbits;
            for pat in 1..npat {
                let low = pat & pat.wrapping_sub(1);
                let bit = (pat ^ low).trailing_zeros() as usize;
                let dst_start = pat * tail;
                if low == 0 {
                    match bit_to_piv[bit] {
                        usize::MAX => {
                            // bits without a pivot contribute nothing; any
                            // surviving row's window is spanned by the pivot
                            // bits alone
                            table[dst_start..dst_start + tail].iter_mut().for_each(|w| *w = 0);
                        }
                        p => {
                            let src = (rank + p) * words + wb;
                            let (t, d) = (dst_start, src);
                            for w in 0..tail {
                                table[t + w] = data[d + w];
                            }
                        }
                    }
                } else {
                    match bit_to_piv[bit] {
                        usize::MAX => {
                            let (lo_start, hi_start) = (low * tail, pat * tail);
                            table.copy_within(lo_start..lo_start + tail, hi_start);
                        }
                        p => {
                            let src = (rank + p) * words + wb;
                            for w in 0..tail {
                                table[dst_start + w] = table[low * tail + w] ^ data[src + w];
                            }
                        }
                    }
                }
            }

            // phase 3: one streaming sweep clears the window of every row
            // below the pivot block
            for row in rank + npiv..nrows {
                let base = row * words;
                let pat = ((data[base + wb] & window_mask) >> bit0) as usize;
                if pat == 0 {
                    continue;
                }
                let t = pat * tail;
                let rowslice = &mut data[base + wb..base + words];
                let tslice = &table[t..t + tail];
                for (d, s) in rowslice.iter_mut().zip(tslice) {
                    *d ^= s;
                }
                debug_assert_eq!(data[base + wb] & window_mask, 0);
            }

            rank += npiv;
            bit0 += kbits;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: plain boolean Gaussian elimination.
    fn naive_rank(m: &BinaryMatrix) -> usize {
        let mut a: Vec<Vec<bool>> =
            (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&r| a[r][c]) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..m.rows() {
                if r != rank && a[r][c] {
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

    #[test]
    fn identity_and_zero() {
        for k in [1usize, 3, 64, 65, 130] {
            let mut m = BinaryMatrix::zeros(k, k);
            for i in 0..k {
                m.set(i, i, true);
            }
            assert_eq!(m.rank(), k);
            assert_eq!(BinaryMatrix::zeros(k, k).rank(), 0);
        }
    }

    #[test]
    fn duplicated_rows_collapse() {
        let mut m = BinaryMatrix::zeros(4, 10);
        for c in [0usize, 3, 9] {
            m.set(0, c, true);
            m.set(1, c, true);
        }
        m.set(2, 5, true);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn random_matrices_match_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..1000 {
            let rows = rng.random_range(1..=64);
            let cols = rng.random_range(1..=64);
            let mut m = BinaryMatrix::zeros(rows, cols);
            let density = rng.random_range(0.05..0.9);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.random_bool(density) {
                        m.set(r, c, true);
                    }
                }
            }
            assert_eq!(m.clone().rank(), naive_rank(&m), "trial {trial} ({rows}x{cols})");
        }
    }

    #[test]
    fn wide_and_tall_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(rows, cols) in &[(3usize, 300usize), (300, 3), (129, 257), (257, 129)] {
            let mut m = BinaryMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.random_bool(0.5) {
                        m.set(r, c, true);
                    }
                }
            }
            assert_eq!(m.clone().rank(), naive_rank(&m));
        }
    }
}

//! Small dense complex linear algebra: just enough for the oracle paths.
//!
//! Two Hermitian eigensolvers live here. A cyclic Jacobi sweep (with
//! eigenvectors) handles the small matrices showing up in concurrence and
//! channel checks; a Householder tridiagonalization followed by implicit-shift
//! QL (eigenvalues only, split real/imaginary planes for vectorizable inner
//! loops) handles the `2^10`-sized reduced density matrices of block-entropy
//! sweeps.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        CMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let orow = other.row(k);
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn conj_entries(&self) -> CMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.conj();
        }
        out
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn apply_to_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `self * other` applied column by column; alias used where the operand
    /// is read as a stack of state columns.
    pub fn mul_matrix(&self, other: &CMatrix) -> CMatrix {
        self.mul(other)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            for j in 0..self.cols.min(8) {
                let v = self[(i, j)];
                write!(f, " {:+.3}{:+.3}i", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

const JACOBI_CUTOFF: usize = 64;

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    assert_eq!(m.rows, m.cols);
    if m.rows <= JACOBI_CUTOFF {
        jacobi_hermitian(m, false).0
    } else {
        let n = m.rows;
        let mut re = vec![0.0; n * n];
        let mut im = vec![0.0; n * n];
        for (k, c) in m.data.iter().enumerate() {
            re[k] = c.re;
            im[k] = c.im;
        }
        hermitian_eigenvalues_planes(&mut re, &mut im, n)
    }
}

/// Full eigendecomposition of a Hermitian matrix (cyclic Jacobi).
/// Returns ascending eigenvalues and the matrix whose columns are the
/// matching eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let (vals, vecs) = jacobi_hermitian(m, true);
    (vals, vecs.expect("vectors requested"))
}

/// Principal square root of a Hermitian PSD matrix; small negative
/// eigenvalues from roundoff are clamped to zero.
pub fn sqrt_psd(m: &CMatrix) -> CMatrix {
    let n = m.rows;
    let (vals, vecs) = hermitian_eigen(m);
    let mut out = CMatrix::zeros(n, n);
    for k in 0..n {
        let lam = vals[k].max(0.0).sqrt();
        if lam == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vecs[(i, k)];
            for j in 0..n {
                out[(i, j)] += vik * vecs[(j, k)].conj() * lam;
            }
        }
    }
    out
}

fn jacobi_hermitian(m: &CMatrix, want_vectors: bool) -> (Vec<f64>, Option<CMatrix>) {
    let n = m.rows;
    let mut a = m.clone();
    let mut v = if want_vectors { Some(CMatrix::identity(n)) } else { None };
    let max_sweeps = 60;
    for _sweep in 0..max_sweeps {
        let mut off: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[(i, j)].norm_sqr();
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + a.max_abs_entry()) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < 1e-300 {
                    continue;
                }
                // unitary rotation in the (p, q) plane that zeroes a[p][q]
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // columns: A <- A J, with J[p][p]=c, J[q][p]=-s conj(phase)',
                // J[p][q]=s phase, J[q][q]=c (phase folded so a[p][q] -> 0)
                let sp = phase * s;
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * sp.conj();
                    a[(i, q)] = aiq * c + aip * sp;
                }
                // rows: A <- J† A
                for i in 0..n {
                    let api = a[(p, i)];
                    let aqi = a[(q, i)];
                    a[(p, i)] = api * c - aqi * sp;
                    a[(q, i)] = aqi * c + api * sp.conj();
                }
                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vip = vm[(i, p)];
                        let viq = vm[(i, q)];
                        vm[(i, p)] = vip * c - viq * sp.conj();
                        vm[(i, q)] = viq * c + vip * sp;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vecs = v.map(|vm| {
        let mut out = CMatrix::zeros(n, n);
        for (newc, &oldc) in order.iter().enumerate() {
            for r in 0..n {
                out[(r, newc)] = vm[(r, oldc)];
            }
        }
        out
    });
    (vals, vecs)
}

/// Householder tridiagonalization on split re/im planes, then bisection on
/// the resulting real tridiagonal. Destroys the input planes.
pub fn hermitian_eigenvalues_planes(re: &mut [f64], im: &mut [f64], n: usize) -> Vec<f64> {
    let (mut d, mut e) = hermitian_tridiagonalize_planes(re, im, n);
    tridiagonal_eigenvalues(&mut d, &mut e);
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

/// Unitary reduction of a Hermitian matrix (split planes) to a real
/// symmetric tridiagonal: returns `(diagonal, subdiagonal)`, the phases of
/// the off-diagonal elements absorbed into the similarity.
pub fn hermitian_tridiagonalize_planes(
    re: &mut [f64],
    im: &mut [f64],
    n: usize,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(re.len(), n * n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 0 {
        return (d, e);
    }
    let mut ur = vec![0.0; n];
    let mut ui = vec![0.0; n];
    let mut pr = vec![0.0; n];
    let mut pi = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        d[k] = re[k * n + k];
        // column x = A[lo.., k]
        let mut norm2 = 0.0;
        for i in lo..n {
            norm2 += re[i * n + k] * re[i * n + k] + im[i * n + k] * im[i * n + k];
        }
        if norm2 <= 1e-300 {
            e[k] = 0.0;
            continue;
        }
        let x0r = re[lo * n + k];
        let x0i = im[lo * n + k];
        let x0abs = (x0r * x0r + x0i * x0i).sqrt();
        let mag = norm2.sqrt();
        let (phr, phi) = if x0abs > 0.0 { (x0r / x0abs, x0i / x0abs) } else { (1.0, 0.0) };
        // u = x + phase*mag*e1 (so H x = -phase*mag*e1); u'u = 2(norm2 + x0abs*mag)
        let uu = 2.0 * (norm2 + x0abs * mag);
        if uu <= 1e-300 {
            e[k] = 0.0;
            continue;
        }
        let tau = 2.0 / uu;
        for i in lo..n {
            ur[i] = re[i * n + k];
            ui[i] = im[i * n + k];
        }
        ur[lo] += phr * mag;
        ui[lo] += phi * mag;

        // p = tau * A_sub * u; paired accumulators keep the FMAs pipelined
        for i in lo..n {
            let arow = &re[i * n..i * n + n];
            let brow = &im[i * n..i * n + n];
            let mut sr = [0.0f64; 2];
            let mut si = [0.0f64; 2];
            let mut j = lo;
            while j + 1 < n {
                for k in 0..2 {
                    let (ar, ai) = (arow[j + k], brow[j + k]);
                    sr[k] = ar.mul_add(ur[j + k], sr[k]) - ai * ui[j + k];
                    si[k] = ar.mul_add(ui[j + k], si[k]) + ai * ur[j + k];
                }
                j += 2;
            }
            if j < n {
                let (ar, ai) = (arow[j], brow[j]);
                sr[0] = ar.mul_add(ur[j], sr[0]) - ai * ui[j];
                si[0] = ar.mul_add(ui[j], si[0]) + ai * ur[j];
            }
            pr[i] = tau * (sr[0] + sr[1]);
            pi[i] = tau * (si[0] + si[1]);
        }
        // K = (tau/2) * Re(u† p); u† A u is real, so u† p is real up to roundoff
        let mut udotp = 0.0;
        for i in lo..n {
            udotp += ur[i] * pr[i] + ui[i] * pi[i];
        }
        let kk = 0.5 * tau * udotp;
        // w = p - K u
        for i in lo..n {
            pr[i] -= kk * ur[i];
            pi[i] -= kk * ui[i];
        }
        // A_sub -= w u† + u w†
        for i in lo..n {
            let (wi_r, wi_i) = (pr[i], pi[i]);
            let (ui_r, ui_i) = (ur[i], ui[i]);
            let arow = &mut re[i * n..(i + 1) * n];
            let brow = &mut im[i * n..(i + 1) * n];
            for j in lo..n {
                let (uj_r, uj_i) = (ur[j], ui[j]);
                let (wj_r, wj_i) = (pr[j], pi[j]);
                arow[j] -= wi_r * uj_r + wi_i * uj_i + ui_r * wj_r + ui_i * wj_i;
                brow[j] -= wi_i * uj_r - wi_r * uj_i + ui_i * wj_r - ui_r * wj_i;
            }
        }
        e[k] = mag;
    }
    if n >= 2 {
        let k = n - 2;
        d[k] = re[k * n + k];
        let or = re[(n - 1) * n + k];
        let oi = im[(n - 1) * n + k];
        e[k] = (or * or + oi * oi).sqrt();
    }
    d[n - 1] = re[(n - 1) * n + (n - 1)];
    (d, e)
}

/// Eigenvalues of [[a, b], [b, c]], larger magnitude first, computed the
/// overflow-safe way.
fn sym_2x2_eigenvalues(a: f64, b: f64, c: f64) -> (f64, f64) {
    let sm = a + c;
    let df = a - c;
    let adf = df.abs();
    let tb = b + b;
    let ab = tb.abs();
    let (acmx, acmn) = if a.abs() > c.abs() { (a, c) } else { (c, a) };
    let rt = if adf > ab {
        adf * (1.0 + (ab / adf) * (ab / adf)).sqrt()
    } else if adf < ab {
        ab * (1.0 + (adf / ab) * (adf / ab)).sqrt()
    } else {
        ab * std::f64::consts::SQRT_2
    };
    if sm < 0.0 {
        let rt1 = 0.5 * (sm - rt);
        (rt1, (acmx / rt1) * acmn - (b / rt1) * b)
    } else if sm > 0.0 {
        let rt1 = 0.5 * (sm + rt);
        (rt1, (acmx / rt1) * acmn - (b / rt1) * b)
    } else {
        (0.5 * rt, -0.5 * rt)
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix, ascending on return in
/// `d`. `e[i]` couples `i` and `i+1` (`e[n-1]` scratch).
///
/// Square-root-free QL/QR iteration in the Pal-Walker-Kahan form: blocks
/// are split on negligible couplings, scaled into a safe range, and swept
/// from whichever end carries the smaller diagonal. This is robust on the
/// badly graded, roundoff-junk-laden tridiagonals that rank-deficient
/// protocol density matrices produce, where both naive QL shifts and
/// Sturm-count bisection misbehave.
#[allow(clippy::needless_range_loop)]
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n <= 1 {
        return;
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON * 0.5;
    let eps2 = eps * eps;
    let safmin = f64::MIN_POSITIVE;
    let ssfmax = (1.0 / safmin).sqrt() / 3.0;
    let ssfmin = safmin.sqrt() / eps2;
    let nmaxit = n * 30;
    let mut jtot = 0usize;

    let mut l1 = 0usize;
    'blocks: while l1 < n {
        if l1 > 0 {
            e[l1 - 1] = 0.0;
        }
        // split off one unreduced block [l1 ..= lend]
        let mut lend = n - 1;
        for m in l1..n - 1 {
            if e[m].abs() <= (d[m].abs().sqrt() * d[m + 1].abs().sqrt()) * eps {
                lend = m;
                break;
            }
        }
        let lsv = l1;
        let lendsv = lend;
        let block_start = l1;
        l1 = lend + 1;
        if lend == block_start {
            continue 'blocks;
        }

        // scale the block into a safe range
        let mut anorm: f64 = 0.0;
        for i in block_start..=lend {
            anorm = anorm.max(d[i].abs());
        }
        for i in block_start..lend {
            anorm = anorm.max(e[i].abs());
        }
        if anorm == 0.0 {
            continue 'blocks;
        }
        let scale_target = if anorm > ssfmax {
            Some(ssfmax)
        } else if anorm < ssfmin {
            Some(ssfmin)
        } else {
            None
        };
        if let Some(t) = scale_target {
            let f = t / anorm;
            for i in block_start..=lend {
                d[i] *= f;
            }
            for i in block_start..lend {
                e[i] *= f;
            }
        }
        for i in block_start..lend {
            e[i] *= e[i];
        }

        // iterate from the end with the smaller diagonal
        let mut l = block_start;
        let mut lend_dir = lend;
        if d[lend_dir].abs() < d[l].abs() {
            std::mem::swap(&mut l, &mut lend_dir);
        }

        if lend_dir >= l {
            // QL sweeps
            'ql: loop {
                let mut m = lend_dir;
                if l != lend_dir {
                    for k in l..lend_dir {
                        if e[k].abs() <= eps2 * (d[k] * d[k + 1]).abs() {
                            m = k;
                            break;
                        }
                    }
                }
                if m < lend_dir {
                    e[m] = 0.0;
                }
                let p = d[l];
                if m == l {
                    l += 1;
                    if l > lend_dir {
                        break 'ql;
                    }
                    continue 'ql;
                }
                if m == l + 1 {
                    let rte = e[l].sqrt();
                    let (rt1, rt2) = sym_2x2_eigenvalues(d[l], rte, d[l + 1]);
                    d[l] = rt1;
                    d[l + 1] = rt2;
                    e[l] = 0.0;
                    l += 2;
                    if l > lend_dir {
                        break 'ql;
                    }
                    continue 'ql;
                }
                assert!(jtot < nmaxit, "tridiagonal eigensolver failed to converge");
                jtot += 1;

                let rte = e[l].sqrt();
                let mut sigma = (d[l + 1] - p) / (2.0 * rte);
                let r = sigma.hypot(1.0);
                sigma = p - rte / (sigma + r.copysign(sigma));
                let mut c = 1.0;
                let mut s = 0.0;
                let mut gamma = d[m] - sigma;
                let mut pp = gamma * gamma;
                for i in (l..m).rev() {
                    let bb = e[i];
                    let rr = pp + bb;
                    if i != m - 1 {
                        e[i + 1] = s * rr;
                    }
                    let oldc = c;
                    c = pp / rr;
                    s = bb / rr;
                    let oldgam = gamma;
                    let alpha = d[i];
                    gamma = c * (alpha - sigma) - s * oldgam;
                    d[i + 1] = oldgam + (alpha - gamma);
                    pp = if c != 0.0 { gamma * gamma / c } else { oldc * bb };
                }
                e[l] = s * pp;
                d[l] = sigma + gamma;
            }
        } else {
            // QR sweeps (mirror image)
            'qr: loop {
                let mut m = lend_dir;
                if l != lend_dir {
                    for k in ((lend_dir + 1)..=l).rev() {
                        if e[k - 1].abs() <= eps2 * (d[k] * d[k - 1]).abs() {
                            m = k;
                            break;
                        }
                    }
                }
                if m > lend_dir {
                    e[m - 1] = 0.0;
                }
                let p = d[l];
                if m == l {
                    if l == 0 {
                        break 'qr;
                    }
                    l -= 1;
                    if l < lend_dir {
                        break 'qr;
                    }
                    continue 'qr;
                }
                if m == l - 1 {
                    let rte = e[l - 1].sqrt();
                    let (rt1, rt2) = sym_2x2_eigenvalues(d[l], rte, d[l - 1]);
                    d[l] = rt1;
                    d[l - 1] = rt2;
                    e[l - 1] = 0.0;
                    if l < lend_dir + 2 {
                        break 'qr;
                    }
                    l -= 2;
                    continue 'qr;
                }
                assert!(jtot < nmaxit, "tridiagonal eigensolver failed to converge");
                jtot += 1;

                let rte = e[l - 1].sqrt();
                let mut sigma = (d[l - 1] - p) / (2.0 * rte);
                let r = sigma.hypot(1.0);
                sigma = p - rte / (sigma + r.copysign(sigma));
                let mut c = 1.0;
                let mut s = 0.0;
                let mut gamma = d[m] - sigma;
                let mut pp = gamma * gamma;
                for i in m..l {
                    let bb = e[i];
                    let rr = pp + bb;
                    if i != m {
                        e[i - 1] = s * rr;
                    }
                    let oldc = c;
                    c = pp / rr;
                    s = bb / rr;
                    let oldgam = gamma;
                    let alpha = d[i + 1];
                    gamma = c * (alpha - sigma) - s * oldgam;
                    d[i] = oldgam + (alpha - gamma);
                    pp = if c != 0.0 { gamma * gamma / c } else { oldc * bb };
                }
                e[l - 1] = s * pp;
                d[l] = sigma + gamma;
            }
        }

        // undo the block scaling
        if let Some(t) = scale_target {
            let f = anorm / t;
            for x in d.iter_mut().take(lendsv + 1).skip(lsv) {
                *x *= f;
            }
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let v = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        m
    }

    #[test]
    fn jacobi_two_by_two_known() {
        // pauli X has eigenvalues -1, +1
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        m[(1, 0)] = Complex64::new(1.0, 0.0);
        let (vals, vecs) = hermitian_eigen(&m);
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        // residual check A v = lambda v
        for k in 0..2 {
            let v: Vec<Complex64> = (0..2).map(|r| vecs[(r, k)]).collect();
            let av = m.apply_to_vec(&v);
            for r in 0..2 {
                assert!((av[r] - v[r] * vals[k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn planes_solver_agrees_with_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[1usize, 2, 3, 5, 8, 17, 33, 70, 129] {
            let m = random_hermitian(n, &mut rng);
            let jv = jacobi_hermitian(&m, false).0;
            let mut re = vec![0.0; n * n];
            let mut im = vec![0.0; n * n];
            for (k, c) in m.data().iter().enumerate() {
                re[k] = c.re;
                im[k] = c.im;
            }
            let tv = hermitian_eigenvalues_planes(&mut re, &mut im, n);
            for (a, b) in jv.iter().zip(&tv) {
                assert!((a - b).abs() < 1e-9, "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let m = random_hermitian(40, &mut rng);
        let vals = hermitian_eigenvalues(&m);
        let sum: f64 = vals.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-9);
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_hermitian(6, &mut rng);
        let psd = g.mul(&g.dagger()); // PSD by construction
        let s = sqrt_psd(&psd);
        assert!(s.mul(&s).max_abs_diff(&psd) < 1e-10);
        assert!(s.hermiticity_defect() < 1e-10);
    }

    #[test]
    fn kron_dimensions_and_values() {
        let x = CMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let k = x.kron(&x);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 3)], Complex64::new(1.0, 0.0));
        assert_eq!(k[(3, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(k[(0, 0)], Complex64::new(0.0, 0.0));
    }
}

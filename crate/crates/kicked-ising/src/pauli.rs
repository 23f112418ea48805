//! Phase-exact Pauli-string arithmetic over `L` sites.
//!
//! A [`PauliString`] is a global phase `i^k` times one letter from
//! `{I, X, Y, Z}` per site, stored in a binary symplectic form: one X-bit
//! plane and one Z-bit plane, packed into machine words. All products and
//! conjugations track the phase exponent exactly (mod 4), which is what the
//! interaction-picture derivations live and die by.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use num_complex::Complex64;

const WORD_BITS: usize = 64;

/// Largest chain length for which [`PauliString::to_matrix`] will build the
/// dense `2^L x 2^L` representation.
pub const DENSE_MATRIX_CAP: usize = 12;

/// Single-site Pauli letter. The `(x, z)` bit pair is `(0,0) = I`,
/// `(1,0) = X`, `(1,1) = Y`, `(0,1) = Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' => Some(Letter::I),
            'X' | 'x' => Some(Letter::X),
            'Y' | 'y' => Some(Letter::Y),
            'Z' | 'z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// A Pauli string `i^phase * (letter_1 ⊗ ... ⊗ letter_L)`, site 1 leftmost.
///
/// Immutable by convention: every operation returns a new string. The phase
/// exponent is the exponent of the *letter* form, so `phase = 0` means the
/// plain tensor product of letters, `phase = 2` its negative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    length: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

fn words_for(length: usize) -> usize {
    length.div_ceil(WORD_BITS)
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(&u, &v)| (u & v).count_ones()).sum()
}

impl PauliString {
    /// The identity string on `length` sites.
    pub fn identity(length: usize) -> Self {
        let w = words_for(length);
        PauliString { length, x: vec![0; w], z: vec![0; w], phase: 0 }
    }

    /// A single nontrivial letter at `site` (1-based), identity elsewhere.
    pub fn single(length: usize, site: usize, letter: Letter) -> Result<Self> {
        let mut p = Self::identity(length);
        p.set_letter(site, letter)?;
        Ok(p)
    }

    /// Builds from a letter slice, sites 1..=L left to right, phase `i^phase`.
    pub fn from_letters(phase: u8, letters: &[Letter]) -> Self {
        let mut p = Self::identity(letters.len());
        for (j, &l) in letters.iter().enumerate() {
            p.set_letter(j + 1, l).expect("site in range");
        }
        p.phase = phase & 3;
        p
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Phase exponent `k` of the global factor `i^k`, always in `0..=3`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bit(&self, site: usize) -> bool {
        let j = site - 1;
        self.x[j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    pub fn z_bit(&self, site: usize) -> bool {
        let j = site - 1;
        self.z[j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    pub fn letter(&self, site: usize) -> Letter {
        Letter::from_bits(self.x_bit(site), self.z_bit(site))
    }

    pub fn set_letter(&mut self, site: usize, letter: Letter) -> Result<()> {
        self.check_site(site)?;
        let j = site - 1;
        let (w, b) = (j / WORD_BITS, j % WORD_BITS);
        let (xb, zb) = letter.bits();
        self.x[w] = self.x[w] & !(1 << b) | (xb as u64) << b;
        self.z[w] = self.z[w] & !(1 << b) | (zb as u64) << b;
        Ok(())
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    /// Multiplies the global phase by `i`.
    pub fn times_i(mut self) -> Self {
        self.phase = (self.phase + 1) & 3;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) & 3;
        self
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.length {
            return Err(Error::SiteOutOfRange { site, length: self.length });
        }
        Ok(())
    }

    fn check_same_length(&self, other: &Self) -> Result<()> {
        if self.length != other.length {
            return Err(Error::LengthMismatch(self.length, other.length));
        }
        Ok(())
    }

    /// Number of sites carrying a Y letter.
    pub fn y_count(&self) -> u32 {
        popcount_and(&self.x, &self.z)
    }

    /// Number of sites acted on nontrivially.
    pub fn weight(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(&u, &v)| (u | v).count_ones()).sum()
    }

    /// Sites (1-based, ascending) where the string is not the identity.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, (&xu, &zu)) in self.x.iter().zip(&self.z).enumerate() {
            let mut bits = xu | zu;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * WORD_BITS + b + 1);
                bits &= bits - 1;
            }
        }
        out
    }

    /// True when the string is `+1` or `-1` times a Hermitian letter product,
    /// i.e. the phase exponent is even.
    pub fn has_real_sign(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// `+1.0` or `-1.0`; call only when [`Self::has_real_sign`] holds.
    pub fn sign(&self) -> f64 {
        debug_assert!(self.has_real_sign());
        if self.phase == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Phase exponent in the `i^k * X^x Z^z` normal form (`Y = i * X Z`).
    /// This is the convention in which products compose by word-parallel XOR.
    pub(crate) fn xz_phase(&self) -> u8 {
        ((self.phase as u32 + self.y_count()) & 3) as u8
    }

    /// Phase-exact product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_length(other)?;
        // In X^x Z^z form: moving other's X block past self's Z block picks
        // up (-1)^(z_self . x_other); bit planes XOR.
        let reorder = 2 * (popcount_and(&self.z, &other.x) & 1);
        let kxz =
            (self.xz_phase() as u32 + other.xz_phase() as u32 + reorder) & 3;
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(&a, &b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(&a, &b)| a ^ b).collect();
        let y_out: u32 = x.iter().zip(&z).map(|(&u, &v)| (u & v).count_ones()).sum();
        let phase = ((kxz + 4 - (y_out & 3)) & 3) as u8;
        Ok(PauliString { length: self.length, x, z, phase })
    }

    /// True iff `self` and `other` commute (symplectic product even).
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same_length(other)?;
        let s = popcount_and(&self.x, &other.z) + popcount_and(&self.z, &other.x);
        Ok(s.is_multiple_of(2))
    }

    /// Dense `2^L x 2^L` matrix, site 1 = leftmost tensor factor.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.length > DENSE_MATRIX_CAP {
            return Err(Error::ResourceLimit(format!(
                "dense matrix for L = {} exceeds the L <= {} cap",
                self.length, DENSE_MATRIX_CAP
            )));
        }
        let l = self.length;
        let dim = 1usize << l;
        let (xm, zm, kxz) = self.basis_masks();
        let amp = Complex64::i().powu(kxz as u32);
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let row = col ^ xm as usize;
            let sgn = if ((col as u64 & zm).count_ones()).is_multiple_of(2) { 1.0 } else { -1.0 };
            m[(row, col)] = amp * sgn;
        }
        Ok(m)
    }

    /// Basis-index masks for dense application: site `j` maps to bit `L - j`
    /// of the basis index (site 1 is the most significant bit). Returns
    /// `(x_mask, z_mask, xz_phase)`.
    pub(crate) fn basis_masks(&self) -> (u64, u64, u8) {
        debug_assert!(self.length <= 64);
        let mut xm = 0u64;
        let mut zm = 0u64;
        for site in 1..=self.length {
            let bit = 1u64 << (self.length - site);
            if self.x_bit(site) {
                xm |= bit;
            }
            if self.z_bit(site) {
                zm |= bit;
            }
        }
        (xm, zm, self.xz_phase())
    }

    /// Parses the text rendering, e.g. `+iYZIIX` or `-XX`. The sign-phase
    /// prefix is one of `+`, `-`, `+i`, `-i` and may be omitted (meaning `+`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars().peekable();
        let mut phase = 0u8;
        match chars.peek() {
            Some('+') | Some('-') | Some('\u{2212}') => {
                let neg = !matches!(chars.next(), Some('+'));
                if chars.peek() == Some(&'i') {
                    // distinguish the phase "i" from the letter "I": letters
                    // are upper-case in renders, but accept "i" here only as
                    // the imaginary unit directly after a sign.
                    chars.next();
                    phase = 1;
                }
                if neg {
                    phase = (phase + 2) & 3;
                }
            }
            _ => {}
        }
        let mut letters = Vec::new();
        for c in chars {
            match Letter::from_char(c) {
                Some(l) => letters.push(l),
                None => return Err(Error::Parse(format!("invalid Pauli letter {c:?} in {s:?}"))),
            }
        }
        if letters.is_empty() {
            return Err(Error::Parse(format!("no Pauli letters in {s:?}")));
        }
        Ok(Self::from_letters(phase, &letters))
    }

    /// Text rendering: sign-phase prefix then letters, sites 1..=L.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.length + 2);
        out.push_str(match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        });
        for site in 1..=self.length {
            out.push(self.letter(site).as_char());
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({})", self.render())
    }
}

/// `exp(-i pi/4 * P)` for a Pauli string `P` with a real sign. The inverse
/// rotation is the same object with `P` negated.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliRotation {
    generator: PauliString,
}

impl PauliRotation {
    pub fn new(generator: PauliString) -> Result<Self> {
        if !generator.has_real_sign() {
            return Err(Error::NonHermitianGenerator(generator.phase()));
        }
        Ok(PauliRotation { generator })
    }

    pub fn generator(&self) -> &PauliString {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.generator.length()
    }

    /// Sign of the generator, `+1` or `-1`.
    pub fn sign(&self) -> f64 {
        self.generator.sign()
    }

    pub fn inverse(&self) -> Self {
        PauliRotation { generator: self.generator.clone().negated() }
    }

    /// Dense matrix `(1 - i P) / sqrt(2)`.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let p = self.generator.to_matrix()?;
        let dim = p.rows();
        let mut m = CMatrix::zeros(dim, dim);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for r in 0..dim {
            for c in 0..dim {
                let eye = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                m[(r, c)] = (eye - Complex64::i() * p[(r, c)]) * s;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for PauliRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(-i pi/4 {})", self.generator.render())
    }
}

/// Which way a conjugation transports an operator through a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transport {
    /// `P -> U' P U` with `U = exp(-i pi/4 G)` (`U'` the adjoint):
    /// anticommuting strings map to `+i G P`.
    Heisenberg,
    /// `P -> U P U'`: anticommuting strings map to `-i G P`.
    Schroedinger,
}

/// Conjugates `p` by the rotation `rot` in the given transport direction.
/// Strings commuting with the generator pass through unchanged.
pub fn conjugate_pauli(p: &PauliString, rot: &PauliRotation, transport: Transport) -> Result<PauliString> {
    if p.commutes(rot.generator())? {
        return Ok(p.clone());
    }
    let prod = rot.generator().mul(p)?;
    Ok(match transport {
        Transport::Heisenberg => prod.times_i(),
        Transport::Schroedinger => prod.negated().times_i(),
    })
}

/// Conjugates one rotation by another: `exp(-i pi/4 P)` maps to
/// `exp(-i pi/4 P')` with `P'` the transported generator.
pub fn conjugate_rotation(r: &PauliRotation, by: &PauliRotation, transport: Transport) -> Result<PauliRotation> {
    PauliRotation::new(conjugate_pauli(r.generator(), by, transport)?)
}

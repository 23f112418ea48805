//! Chain geometry: length, boundary condition, block split, and the gate
//! layout of one Floquet period.
//!
//! Physical sites are numbered `1..=L` left to right; that is the only
//! storage layout. The block labels `A_j` / `B_j` are a *view*: block A holds
//! the first `M` sites counted inward from the interface (`A_1` sits at site
//! `M`), block B the remaining `N = L - M` counted outward (`B_1` at site
//! `M + 1`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliRotation, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Closed,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Closed => "closed",
        })
    }
}

impl std::str::FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Boundary::Open),
            "closed" | "periodic" => Ok(Boundary::Closed),
            other => Err(Error::InvalidConfig(format!("unknown boundary {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    A,
    B,
}

/// Block-relative site label: `A(j)` for `1 <= j <= M`, `B(j)` for
/// `1 <= j <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteLabel {
    A(usize),
    B(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainConfig {
    length: usize,
    boundary: Boundary,
    block_a: usize,
}

impl ChainConfig {
    /// `length` must be even and at least 4; `block_a` must satisfy
    /// `1 <= M <= L/2` (entropy of the complement equals that of the block,
    /// so wider blocks are expressed through the mirror split).
    pub fn new(length: usize, boundary: Boundary, block_a: usize) -> Result<Self> {
        if length < 4 || !length.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "chain length must be even and >= 4, got {length}"
            )));
        }
        if block_a == 0 || block_a > length / 2 {
            return Err(Error::InvalidConfig(format!(
                "block size must satisfy 1 <= M <= L/2, got M = {block_a} for L = {length}"
            )));
        }
        Ok(ChainConfig { length, boundary, block_a })
    }

    pub fn open(length: usize, block_a: usize) -> Result<Self> {
        Self::new(length, Boundary::Open, block_a)
    }

    pub fn closed(length: usize, block_a: usize) -> Result<Self> {
        Self::new(length, Boundary::Closed, block_a)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Block A size `M`.
    pub fn block_a(&self) -> usize {
        self.block_a
    }

    /// Block B size `N = L - M`.
    pub fn block_b(&self) -> usize {
        self.length - self.block_a
    }

    pub fn equal_blocks(&self) -> bool {
        self.block_a * 2 == self.length
    }

    /// Physical site of a block label: `A_j` at `M + 1 - j`, `B_j` at `M + j`.
    pub fn site_of(&self, label: SiteLabel) -> Result<usize> {
        match label {
            SiteLabel::A(j) if j >= 1 && j <= self.block_a => Ok(self.block_a + 1 - j),
            SiteLabel::B(j) if j >= 1 && j <= self.block_b() => Ok(self.block_a + j),
            SiteLabel::A(j) | SiteLabel::B(j) => {
                Err(Error::SiteOutOfRange { site: j, length: self.length })
            }
        }
    }

    pub fn label_of(&self, site: usize) -> Result<SiteLabel> {
        if site == 0 || site > self.length {
            return Err(Error::SiteOutOfRange { site, length: self.length });
        }
        if site <= self.block_a {
            Ok(SiteLabel::A(self.block_a + 1 - site))
        } else {
            Ok(SiteLabel::B(site - self.block_a))
        }
    }

    /// Interaction bonds `(i, i+1)`, plus the wrap bond `(L, 1)` for closed
    /// chains. Open chains have `L - 1` bonds.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (1..self.length).map(|i| (i, i + 1)).collect();
        if self.boundary == Boundary::Closed {
            out.push((self.length, 1));
        }
        out
    }

    /// The two sites of the central pair `(L/2, L/2 + 1)`.
    pub fn central_pair(&self) -> (usize, usize) {
        (self.length / 2, self.length / 2 + 1)
    }

    /// Interface bonds crossing the A|B cut: `(M, M+1)` always, and the wrap
    /// bond `(L, 1)` for closed chains.
    pub fn interface_bonds(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(self.block_a, self.block_a + 1)];
        if self.boundary == Boundary::Closed {
            out.push((self.length, 1));
        }
        out
    }

    /// Builds `exp(-i pi/4 Z_site)`.
    pub fn z_rotation(&self, site: usize) -> Result<PauliRotation> {
        let p = PauliString::single(self.length, site, Letter::Z)?;
        PauliRotation::new(p)
    }

    /// Builds `exp(-i pi/4 X_i X_j)`.
    pub fn xx_rotation(&self, i: usize, j: usize) -> Result<PauliRotation> {
        if i == j || i == 0 || j == 0 || i > self.length || j > self.length {
            return Err(Error::InvalidBond(i, j));
        }
        let mut p = PauliString::identity(self.length);
        p.set_letter(i, Letter::X)?;
        p.set_letter(j, Letter::X)?;
        PauliRotation::new(p)
    }

    /// One Floquet period as a rotation sequence in application order:
    /// the Z kick layer acts first, then every XX bond layer.
    pub fn floquet_sequence(&self) -> Vec<PauliRotation> {
        let mut seq = Vec::with_capacity(2 * self.length);
        for site in 1..=self.length {
            seq.push(self.z_rotation(site).expect("site in range"));
        }
        for (i, j) in self.bonds() {
            seq.push(self.xx_rotation(i, j).expect("bond in range"));
        }
        seq
    }
}

/// The one-period gate layout regrouped by blocks:
/// `U = X_AB * X_AA * X_BB * Z_A * Z_B` (interface bonds, intra-block bonds,
/// kick layers). Rightmost factors act first; rotations within each
/// non-interface factor mutually commute.
#[derive(Debug, Clone)]
pub struct GateLayerSpec {
    pub x_ab: Vec<PauliRotation>,
    pub x_aa: Vec<PauliRotation>,
    pub x_bb: Vec<PauliRotation>,
    pub z_a: Vec<PauliRotation>,
    pub z_b: Vec<PauliRotation>,
}

impl GateLayerSpec {
    pub fn for_config(cfg: &ChainConfig) -> Self {
        let m = cfg.block_a();
        let l = cfg.length();
        let mut x_ab = Vec::new();
        let mut x_aa = Vec::new();
        let mut x_bb = Vec::new();
        for (i, j) in cfg.bonds() {
            let rot = cfg.xx_rotation(i, j).expect("bond in range");
            let cross = (i <= m) != (j <= m);
            if cross {
                x_ab.push(rot);
            } else if i <= m {
                x_aa.push(rot);
            } else {
                x_bb.push(rot);
            }
        }
        let z_a = (1..=m).map(|s| cfg.z_rotation(s).unwrap()).collect();
        let z_b = (m + 1..=l).map(|s| cfg.z_rotation(s).unwrap()).collect();
        GateLayerSpec { x_ab, x_aa, x_bb, z_a, z_b }
    }

    /// All rotations in application order (rightmost factor of the layer
    /// product first).
    pub fn application_order(&self) -> Vec<&PauliRotation> {
        self.z_b
            .iter()
            .chain(&self.z_a)
            .chain(&self.x_bb)
            .chain(&self.x_aa)
            .chain(&self.x_ab)
            .collect()
    }

    /// The block-local factor `U_A = X_AA * Z_A` (or `U_B`) in application
    /// order: kicks first, then intra-block bonds.
    pub fn block_unitary(&self, block: Block) -> Vec<&PauliRotation> {
        match block {
            Block::A => self.z_a.iter().chain(&self.x_aa).collect(),
            Block::B => self.z_b.iter().chain(&self.x_bb).collect(),
        }
    }
}

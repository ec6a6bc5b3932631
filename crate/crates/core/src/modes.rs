//! Transverse TE/TM mode lattice of a rectangular metallic guide.
//!
//! Species labelling follows the convention used throughout this crate:
//! TE modes carry `n1, n2 ≥ 1`, TM modes carry `n1, n2 ≥ 0` with the pair
//! `(0, 0)` excluded. Only the per-pair species count enters any computed
//! quantity.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Species {
    TE,
    TM,
}

/// One guided transverse mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    n1: u32,
    n2: u32,
    species: Species,
}

impl ModeIndex {
    pub fn new(n1: u32, n2: u32, species: Species) -> Result<Self> {
        let valid = match species {
            Species::TE => n1 >= 1 && n2 >= 1,
            Species::TM => n1 != 0 || n2 != 0,
        };
        if valid {
            Ok(ModeIndex { n1, n2, species })
        } else {
            Err(Error::ExcludedMode)
        }
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn species(&self) -> Species {
        self.species
    }
}

/// A transverse index pair together with the number of species sharing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedTransversePair {
    pub n1: u32,
    pub n2: u32,
    pub degeneracy: u32,
}

impl WeightedTransversePair {
    pub fn new(n1: u32, n2: u32) -> Result<Self> {
        let degeneracy = match (n1, n2) {
            (0, 0) => return Err(Error::ExcludedMode),
            (0, _) | (_, 0) => 1,
            _ => 2,
        };
        Ok(WeightedTransversePair { n1, n2, degeneracy })
    }

    /// Squared transverse magnitude `n1² + n2²` (exact).
    pub fn kappa_squared(&self) -> u64 {
        let (a, b) = (u64::from(self.n1), u64::from(self.n2));
        a * a + b * b
    }

    pub fn kappa(&self) -> f64 {
        (self.kappa_squared() as f64).sqrt()
    }
}

/// Transverse dimensions of the guide in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGeometry {
    l1: f64,
    l2: f64,
}

impl ChannelGeometry {
    pub fn new(l1: f64, l2: f64) -> Result<Self> {
        Ok(ChannelGeometry {
            l1: positive("L1", l1)?,
            l2: positive("L2", l2)?,
        })
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::new(side, side)
    }

    /// Square guide with the given cross-sectional area.
    pub fn square_with_area(area: f64) -> Result<Self> {
        Self::square(positive("area", area)?.sqrt())
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn area(&self) -> f64 {
        self.l1 * self.l2
    }

    pub fn is_square(&self) -> bool {
        self.l1 == self.l2
    }

    /// `r = √(L2/L1)`; transverse wavenumbers in units of `π/√A` are
    /// `(n1·r, n2/r)`.
    pub fn aspect(&self) -> f64 {
        (self.l2 / self.l1).sqrt()
    }

    /// Transverse magnitude of `(n1, n2)` in units of `π/√A`.
    pub fn scaled_kappa(&self, n1: u32, n2: u32) -> f64 {
        let r = self.aspect();
        (f64::from(n1) * r).hypot(f64::from(n2) / r)
    }
}

/// Every transverse pair with `max(n1, n2) ≤ cutoff`, excluding `(0, 0)`.
/// Interior pairs come first in row order, followed by the two edges.
pub fn enumerate_transverse(cutoff: usize) -> Result<Vec<WeightedTransversePair>> {
    if cutoff < 1 {
        return Err(Error::InvalidCutoff(cutoff));
    }
    let n = u32::try_from(cutoff).map_err(|_| Error::InvalidCutoff(cutoff))?;
    let mut pairs = Vec::with_capacity(cutoff * cutoff + 2 * cutoff);
    for n1 in 1..=n {
        for n2 in 1..=n {
            pairs.push(WeightedTransversePair { n1, n2, degeneracy: 2 });
        }
    }
    for k in 1..=n {
        pairs.push(WeightedTransversePair {
            n1: k,
            n2: 0,
            degeneracy: 1,
        });
        pairs.push(WeightedTransversePair {
            n1: 0,
            n2: k,
            degeneracy: 1,
        });
    }
    Ok(pairs)
}

/// Expands the weighted pairs into individual species-labelled modes.
pub fn enumerate_modes(cutoff: usize) -> Result<Vec<ModeIndex>> {
    let pairs = enumerate_transverse(cutoff)?;
    let mut modes = Vec::with_capacity(pairs.len() * 2);
    for p in pairs {
        if p.degeneracy == 2 {
            modes.push(ModeIndex {
                n1: p.n1,
                n2: p.n2,
                species: Species::TE,
            });
        }
        modes.push(ModeIndex {
            n1: p.n1,
            n2: p.n2,
            species: Species::TM,
        });
    }
    Ok(modes)
}

/// Weighted count `Σ degeneracy`, equal to `2N² + 2N`.
pub fn weighted_count(pairs: &[WeightedTransversePair]) -> u64 {
    pairs.iter().map(|p| u64::from(p.degeneracy)).sum()
}

/// Stable sort by ascending κ, ties broken lexicographically on `(n1, n2)`.
pub fn sorted_by_kappa(mut pairs: Vec<WeightedTransversePair>) -> Vec<WeightedTransversePair> {
    pairs.sort_by(|a, b| match a.kappa_squared().cmp(&b.kappa_squared()) {
        Ordering::Equal => (a.n1, a.n2).cmp(&(b.n1, b.n2)),
        other => other,
    });
    pairs
}

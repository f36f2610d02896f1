//! HP sequences and hydrophobic pair bookkeeping.
//!
//! Bead indices exposed by this module are 1-based.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bead {
    H,
    P,
}

impl Bead {
    pub fn as_char(self) -> char {
        match self {
            Bead::H => 'H',
            Bead::P => 'P',
        }
    }
}

/// An ordered chain of H/P beads with optional H-H interaction weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HpSequence {
    beads: Vec<Bead>,
    /// Keyed by 1-based `(j, k)` with `j < k`; absent pairs weigh 1.
    weights: BTreeMap<(usize, usize), f64>,
}

impl HpSequence {
    pub fn new(beads: Vec<Bead>) -> Result<Self> {
        if beads.len() < 2 {
            return Err(Error::SequenceTooShort(beads.len()));
        }
        Ok(Self {
            beads,
            weights: BTreeMap::new(),
        })
    }

    pub fn beads(&self) -> &[Bead] {
        &self.beads
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    /// Kind of the bead at 1-based position `i`.
    pub fn bead(&self, i: usize) -> Bead {
        self.beads[i - 1]
    }

    /// 1-based positions of the hydrophobic beads.
    pub fn hydrophobic_indices(&self) -> Vec<usize> {
        self.beads
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == Bead::H)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn hydrophobic_count(&self) -> usize {
        self.beads.iter().filter(|b| **b == Bead::H).count()
    }

    /// Number of bonded (chain-adjacent) H-H neighbours.
    pub fn bonded_hh(&self) -> usize {
        self.beads
            .windows(2)
            .filter(|w| w[0] == Bead::H && w[1] == Bead::H)
            .count()
    }

    /// Sets the interaction weight of a non-bonded H pair. Symmetric in `(j, k)`.
    pub fn set_weight(&mut self, j: usize, k: usize, w: f64) -> Result<()> {
        let (j, k) = if j < k { (j, k) } else { (k, j) };
        let n = self.len();
        let fail = |reason: &str| Error::InvalidWeight {
            j,
            k,
            reason: reason.to_string(),
        };
        if j == 0 || k > n {
            return Err(fail("bead index out of range"));
        }
        if k <= j + 1 {
            return Err(fail("pair is bonded or identical"));
        }
        if self.bead(j) != Bead::H || self.bead(k) != Bead::H {
            return Err(fail("both beads must be hydrophobic"));
        }
        if !w.is_finite() {
            return Err(fail("weight is not finite"));
        }
        self.weights.insert((j, k), w);
        Ok(())
    }

    pub fn with_weights<I>(mut self, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), f64)>,
    {
        for ((j, k), w) in weights {
            self.set_weight(j, k, w)?;
        }
        Ok(self)
    }

    pub fn weight(&self, j: usize, k: usize) -> f64 {
        let key = if j < k { (j, k) } else { (k, j) };
        self.weights.get(&key).copied().unwrap_or(1.0)
    }

    pub fn explicit_weights(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.weights
    }
}

impl fmt::Display for HpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.beads {
            write!(f, "{}", b.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for HpSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// Parses a case-insensitive H/P string. Surrounding whitespace is ignored.
pub fn parse_sequence(text: &str) -> Result<HpSequence> {
    let beads = text
        .trim()
        .chars()
        .enumerate()
        .map(|(i, ch)| match ch.to_ascii_uppercase() {
            'H' => Ok(Bead::H),
            'P' => Ok(Bead::P),
            _ => Err(Error::InvalidBead {
                ch,
                position: i + 1,
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    HpSequence::new(beads)
}

/// All non-bonded H-H pairs `(j, k)`, 1-based, with `k > j + 1`.
pub fn hydrophobic_pairs(seq: &HpSequence) -> Vec<(usize, usize)> {
    let hs = seq.hydrophobic_indices();
    let mut pairs = Vec::new();
    for (a, &j) in hs.iter().enumerate() {
        for &k in &hs[a + 1..] {
            if k > j + 1 {
                pairs.push((j, k));
            }
        }
    }
    pairs
}

/// Upper bound on contacts: `M(M-1)/2 - c` with `M` hydrophobic beads and
/// `c` bonded H-H neighbours.
pub fn max_contacts(seq: &HpSequence) -> usize {
    let m = seq.hydrophobic_count();
    m * m.saturating_sub(1) / 2 - seq.bonded_hh()
}

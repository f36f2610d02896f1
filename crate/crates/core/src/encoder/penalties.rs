//! Penalty weights and their term-count calibration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::sequence::{hydrophobic_pairs, HpSequence};

/// Default weight of the crossing term relative to the overlap term.
pub const DEFAULT_LAMBDA3_HINT: f64 = 0.5;

/// Factor applied to the largest distance-scale weight to obtain the
/// continuity and pair-exclusion weights.
pub const LOGICAL_PENALTY_FACTOR: f64 = 10.0;

/// Weights of the consolidated objective
/// `l0*Obj + l1*C1 - l2*C2 - l3*C3 + l4*C4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyConfig {
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
}

impl PenaltyConfig {
    pub fn check(&self) -> Result<()> {
        let named = [
            ("lambda0", self.lambda0),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("lambda3", self.lambda3),
            ("lambda4", self.lambda4),
        ];
        for (name, value) in named {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::NegativePenalty { name, value });
            }
        }
        Ok(())
    }
}

/// Optional per-weight overrides; `None` keeps the calibrated value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PenaltyOverrides {
    pub lambda0: Option<f64>,
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub lambda3: Option<f64>,
    pub lambda4: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub penalties: PenaltyConfig,
    /// Number of objective terms (non-bonded H pairs).
    pub n0: usize,
    /// Number of overlap terms.
    pub n2: usize,
    /// Number of crossing terms.
    pub n3: usize,
    /// Set when the sequence has no non-bonded H pair and `lambda0` fell back to 1.
    pub degenerate_objective: bool,
}

/// Balances the objective against the separation rewards so that
/// `l0 * n0 ≈ l2 * n2 + l3 * n3`, with `l2 = 1` and `l3 = lambda3_hint`.
pub fn calibrate_penalties(
    seq: &HpSequence,
    lambda3_hint: f64,
    overrides: &PenaltyOverrides,
) -> Result<Calibration> {
    let n = seq.len();
    let n0 = hydrophobic_pairs(seq).len();
    let n2 = (n - 2) * (n - 1) / 2;
    let n3 = n.saturating_sub(3) * (n - 2) / 2;

    let lambda2 = overrides.lambda2.unwrap_or(1.0);
    let lambda3 = overrides.lambda3.unwrap_or(lambda3_hint);
    let degenerate_objective = n0 == 0;
    let lambda0 = overrides.lambda0.unwrap_or(if degenerate_objective {
        1.0
    } else {
        (lambda2 * n2 as f64 + lambda3 * n3 as f64) / n0 as f64
    });
    let logical = LOGICAL_PENALTY_FACTOR * lambda0.max(lambda2).max(lambda3);
    let penalties = PenaltyConfig {
        lambda0,
        lambda1: overrides.lambda1.unwrap_or(logical),
        lambda2,
        lambda3,
        lambda4: overrides.lambda4.unwrap_or(logical),
    };
    penalties.check()?;
    Ok(Calibration {
        penalties,
        n0,
        n2,
        n3,
        degenerate_objective,
    })
}

//! Geometric feasibility of a conformation.
//!
//! All indices in a [`FeasibilityReport`] are 1-based: steps and beads are
//! numbered from 1, and a crossing `(r, k)` names the bonds `(r, r+1)` and
//! `(k, k+1)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::encoder::layout::{Axis, Half, VariableLayout};
use crate::error::{Error, Result};
use crate::model::geometry::{decode_bitstring, turns_to_coordinates, Conformation, TurnVector};
use crate::model::sequence::HpSequence;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub continuity_violations: Vec<usize>,
    pub overlap_violations: Vec<(usize, usize)>,
    pub crossing_violations: Vec<(usize, usize)>,
    pub pair_exclusion_violations: Vec<(usize, Axis)>,
    pub feasible: bool,
}

impl FeasibilityReport {
    pub fn violation_count(&self) -> usize {
        self.continuity_violations.len()
            + self.overlap_violations.len()
            + self.crossing_violations.len()
            + self.pair_exclusion_violations.len()
    }

    fn finish(mut self) -> Self {
        self.feasible = self.violation_count() == 0;
        self
    }
}

/// Checks continuity, overlap and bond crossing for a turn vector.
///
/// With `allow_steric == false`, body-diagonal turns count as continuity
/// violations as well.
pub fn validate(turns: &TurnVector, seq: &HpSequence, allow_steric: bool) -> Result<FeasibilityReport> {
    let n = seq.len();
    if turns.len() + 1 != n {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            actual: turns.len(),
        });
    }
    let mut report = FeasibilityReport::default();
    for (i, t) in turns.turns().iter().enumerate() {
        if t.is_zero() || (!allow_steric && t.is_steric_diagonal()) {
            report.continuity_violations.push(i + 1);
        }
    }

    let conf = turns_to_coordinates(turns);
    report.overlap_violations = overlaps(&conf);
    report.crossing_violations = crossings(&conf);
    Ok(report.finish())
}

/// Like [`validate`] but starts from raw bits, so the `a = b = 1` pattern
/// excluded from the quadratic encoding is reported as well.
pub fn validate_assignment(
    bits: &[bool],
    layout: &VariableLayout,
    seq: &HpSequence,
    allow_steric: bool,
) -> Result<FeasibilityReport> {
    let turns = decode_bitstring(bits, layout)?;
    let mut report = validate(&turns, seq, allow_steric)?;
    for step in layout.encoded_step_range() {
        for axis in Axis::ALL {
            let a = layout.index(step, axis, Half::A).expect("encoded step");
            let b = layout.index(step, axis, Half::B).expect("encoded step");
            if bits[a] && bits[b] {
                report.pair_exclusion_violations.push((step, axis));
            }
        }
    }
    Ok(report.finish())
}

/// Non-adjacent bead pairs sharing a lattice site, found through a site map.
fn overlaps(conf: &Conformation) -> Vec<(usize, usize)> {
    let mut seen: HashMap<[i32; 3], Vec<usize>> = HashMap::new();
    for (i, c) in conf.coords.iter().enumerate() {
        seen.entry(*c).or_default().push(i + 1);
    }
    let mut out = Vec::new();
    for beads in seen.values() {
        for (a, &i) in beads.iter().enumerate() {
            for &j in &beads[a + 1..] {
                if j > i + 1 {
                    out.push((i, j));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn crossings(conf: &Conformation) -> Vec<(usize, usize)> {
    let n = conf.len();
    let mut out = Vec::new();
    // bonds (r, r+1) for r in 1..=n-3 against (k, k+1) for k in r+2..=n-1
    for r in 1..n.saturating_sub(2) {
        for k in r + 2..n {
            if crossing_sum(conf, r, k) == [0, 0, 0] {
                out.push((r, k));
            }
        }
    }
    out
}

/// `(p_k + p_{k+1}) - (p_r + p_{r+1})` per axis, 1-based bead indices. Zero
/// on every axis iff the two bond midpoints coincide.
pub fn crossing_sum(conf: &Conformation, r: usize, k: usize) -> [i32; 3] {
    let c = &conf.coords;
    let mut out = [0; 3];
    for (a, o) in out.iter_mut().enumerate() {
        *o = (c[k - 1][a] + c[k][a]) - (c[r - 1][a] + c[r][a]);
    }
    out
}

/// Same quantity as [`crossing_sum`] written in terms of turns:
/// `t_k + t_r + 2 * sum_{j=r+1}^{k-1} t_j`.
pub fn crossing_sum_from_turns(turns: &TurnVector, r: usize, k: usize) -> [i32; 3] {
    let t = turns.turns();
    let mut out = [0; 3];
    for axis in Axis::ALL {
        let ai = axis.index();
        let mut s = t[k - 1].component(axis) as i32 + t[r - 1].component(axis) as i32;
        for turn in &t[r..k - 1] {
            s += 2 * turn.component(axis) as i32;
        }
        out[ai] = s;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sequence::parse_sequence;

    fn tv(t: &[[i8; 3]]) -> TurnVector {
        TurnVector::from_triples(t).unwrap()
    }

    #[test]
    fn detects_midpoint_crossing() {
        let conf = Conformation {
            coords: vec![[0, 0, 0], [1, 1, 0], [1, 0, 0], [0, 1, 0]],
        };
        let turns = conf.to_turns().unwrap();
        let report = validate(&turns, &parse_sequence("HPPH").unwrap(), true).unwrap();
        assert_eq!(report.crossing_violations, vec![(1, 3)]);
        assert!(report.overlap_violations.is_empty());
        assert!(!report.feasible);
    }

    #[test]
    fn detects_zero_turn() {
        let report = validate(&tv(&[[1, 0, 0], [0, 0, 0]]), &parse_sequence("HPH").unwrap(), true).unwrap();
        assert_eq!(report.continuity_violations, vec![2]);
        assert!(!report.feasible);
    }

    #[test]
    fn detects_return_to_origin() {
        let report = validate(&tv(&[[1, 0, 0], [-1, 0, 0]]), &parse_sequence("HPH").unwrap(), true).unwrap();
        assert_eq!(report.overlap_violations, vec![(1, 3)]);
        assert!(report.continuity_violations.is_empty());
    }

    #[test]
    fn steric_flag_controls_body_diagonals() {
        let seq = parse_sequence("HPH").unwrap();
        let turns = tv(&[[1, 0, 0], [1, 1, 1]]);
        assert!(validate(&turns, &seq, true).unwrap().feasible);
        assert_eq!(validate(&turns, &seq, false).unwrap().continuity_violations, vec![2]);
    }

    #[test]
    fn straight_chain_is_feasible() {
        let seq = parse_sequence("HPPPH").unwrap();
        let report = validate(&tv(&[[1, 0, 0]; 4]), &seq, false).unwrap();
        assert!(report.feasible);
        assert_eq!(report.violation_count(), 0);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(validate(&tv(&[[1, 0, 0]]), &parse_sequence("HPH").unwrap(), true).is_err());
    }

    #[test]
    fn pair_exclusion_reported_from_bits() {
        let seq = parse_sequence("HPH").unwrap();
        let layout = VariableLayout::fixed_first_turn(3);
        let bits = [true, true, true, false, false, false];
        let report = validate_assignment(&bits, &layout, &seq, true).unwrap();
        assert_eq!(report.pair_exclusion_violations, vec![(2, Axis::X)]);
        assert!(!report.feasible);
    }

    #[test]
    fn crossing_forms_agree_on_example() {
        let turns = tv(&[[1, 0, 0], [1, 0, 0], [1, 0, 0]]);
        let conf = turns_to_coordinates(&turns);
        assert_eq!(crossing_sum(&conf, 1, 3), [4, 0, 0]);
        assert_eq!(crossing_sum_from_turns(&turns, 1, 3), [4, 0, 0]);
    }
}

//! Brute-force ground truth for short chains.

use crate::error::{Error, Result};
use crate::model::geometry::{count_contacts, turns_to_coordinates, Conformation, Turn, TurnVector};
use crate::model::sequence::HpSequence;
use crate::model::validate::validate;

/// Longest chain [`enumerate_optimal`] accepts (26^5 leaves).
pub const MAX_ENUMERATION_BEADS: usize = 7;

/// Exhaustively folds `seq` over the 26-move alphabet with the first turn
/// fixed to `(1,0,0)` and returns the best contact count among feasible
/// conformations together with the first witness reaching it.
///
/// Prefixes that already revisit a site are skipped: every extension of such
/// a prefix fails validation anyway.
pub fn enumerate_optimal(seq: &HpSequence, allow_steric: bool) -> Result<(usize, Conformation)> {
    let n = seq.len();
    if n > MAX_ENUMERATION_BEADS {
        return Err(Error::EnumerationTooLarge {
            beads: n,
            max: MAX_ENUMERATION_BEADS,
        });
    }
    let alphabet: Vec<Turn> = Turn::alphabet()
        .into_iter()
        .filter(|t| allow_steric || !t.is_steric_diagonal())
        .collect();

    let mut best: Option<(usize, Conformation)> = None;
    let mut turns = vec![Turn::X_POS];
    let mut sites = vec![[0i32; 3], [1, 0, 0]];
    search(seq, allow_steric, &alphabet, &mut turns, &mut sites, &mut best)?;
    best.ok_or_else(|| Error::Config("no feasible conformation exists".into()))
}

fn search(
    seq: &HpSequence,
    allow_steric: bool,
    alphabet: &[Turn],
    turns: &mut Vec<Turn>,
    sites: &mut Vec<[i32; 3]>,
    best: &mut Option<(usize, Conformation)>,
) -> Result<()> {
    if sites.len() == seq.len() {
        let tv = TurnVector(turns.clone());
        if validate(&tv, seq, allow_steric)?.feasible {
            let conf = turns_to_coordinates(&tv);
            let c = count_contacts(&conf, seq)?;
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                *best = Some((c, conf));
            }
        }
        return Ok(());
    }
    let last = *sites.last().expect("non-empty");
    for &t in alphabet {
        let next = [last[0] + t.x as i32, last[1] + t.y as i32, last[2] + t.z as i32];
        if sites.contains(&next) {
            continue;
        }
        turns.push(t);
        sites.push(next);
        search(seq, allow_steric, alphabet, turns, sites, best)?;
        turns.pop();
        sites.pop();
    }
    Ok(())
}

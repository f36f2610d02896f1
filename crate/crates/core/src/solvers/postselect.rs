//! Picks the best geometrically valid conformation out of a sample population.

use serde::{Deserialize, Serialize};

use crate::encoder::qubo::QuboProblem;
use crate::error::{Error, Result};
use crate::ising::SampleSet;
use crate::model::geometry::{count_contacts, decode_bitstring, turns_to_coordinates, Conformation, TurnVector};
use crate::model::validate::{validate_assignment, FeasibilityReport};

/// Number of lowest-energy distinct states inspected by default.
pub const DEFAULT_TOP_K: usize = 4000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    #[serde(with = "crate::io::bitstring_serde")]
    pub bits: Vec<bool>,
    pub turns: TurnVector,
    pub conformation: Conformation,
    pub contacts: usize,
    pub qubo_value: f64,
    pub report: FeasibilityReport,
    /// False when no inspected state was feasible; the selection is then the
    /// least-violating one.
    pub feasible: bool,
    pub candidates: usize,
    pub feasible_candidates: usize,
    /// Earliest solver iteration at which any feasible candidate with the
    /// selected contact count was seen, when the solver tracks it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturation_iteration: Option<usize>,
}

/// Keeps the `top_k` lowest-objective distinct bitstrings, decodes and
/// validates each, and returns the feasible one with the most contacts
/// (ties: lower objective, then lexicographically smaller bits). Without
/// any feasible state the least-violating state is returned, flagged.
pub fn postselect(samples: &SampleSet, q: &QuboProblem, top_k: usize, allow_steric: bool) -> Result<Selection> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut ranked: Vec<(f64, &[bool], Option<usize>)> = samples
        .samples
        .iter()
        .map(|s| Ok((q.evaluate(&s.bits)?, s.bits.as_slice(), s.first_iteration)))
        .collect::<Result<_>>()?;
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    ranked.dedup_by(|a, b| a.1 == b.1);
    ranked.truncate(top_k.max(1));

    let seq = &q.sequence;
    let mut best_feasible: Option<(usize, usize)> = None;
    let mut least_violating: Option<(usize, usize)> = None;
    let mut feasible_candidates = 0;
    let mut feasible_contacts = Vec::new();
    let mut reports = Vec::with_capacity(ranked.len());
    for (idx, &(_, bits, first)) in ranked.iter().enumerate() {
        let report = validate_assignment(bits, &q.layout, seq, allow_steric)?;
        if report.feasible {
            feasible_candidates += 1;
            let conf = turns_to_coordinates(&decode_bitstring(bits, &q.layout)?);
            let contacts = count_contacts(&conf, seq)?;
            feasible_contacts.push((contacts, first));
            if best_feasible.is_none_or(|(_, c)| contacts > c) {
                best_feasible = Some((idx, contacts));
            }
        } else if least_violating.is_none_or(|(_, v)| report.violation_count() < v) {
            least_violating = Some((idx, report.violation_count()));
        }
        reports.push(report);
    }

    let (idx, feasible) = match (best_feasible, least_violating) {
        (Some((i, _)), _) => (i, true),
        (None, Some((i, _))) => (i, false),
        (None, None) => unreachable!("at least one candidate"),
    };
    let (qubo_value, bits, _) = ranked[idx];
    let turns = decode_bitstring(bits, &q.layout)?;
    let conformation = turns_to_coordinates(&turns);
    let contacts = count_contacts(&conformation, seq)?;
    let saturation_iteration = if feasible {
        feasible_contacts
            .iter()
            .filter(|(c, _)| *c == contacts)
            .filter_map(|(_, first)| *first)
            .min()
    } else {
        None
    };
    Ok(Selection {
        bits: bits.to_vec(),
        turns,
        conformation,
        contacts,
        qubo_value,
        report: reports.swap_remove(idx),
        feasible,
        candidates: ranked.len(),
        feasible_candidates,
        saturation_iteration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::qubo::{encode, EncodeOptions};
    use crate::model::sequence::parse_sequence;

    fn setup() -> (QuboProblem, Vec<bool>, Vec<bool>) {
        // HPHPH: a feasible fold with contacts (1,5) and (3,5), and a square
        // that lands bead 5 on bead 1.
        let seq = parse_sequence("HPHPH").unwrap();
        let q = encode(&seq, &EncodeOptions::default(), 1).unwrap();
        let good = TurnVector::from_triples(&[[1, 0, 0], [1, 0, 0], [0, 1, 0], [-1, 0, 0]])
            .unwrap()
            .to_bits(&q.layout)
            .unwrap();
        let bad = TurnVector::from_triples(&[[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]])
            .unwrap()
            .to_bits(&q.layout)
            .unwrap();
        (q, good, bad)
    }

    #[test]
    fn feasibility_dominates_contacts() {
        let (q, good, bad) = setup();
        let samples = SampleSet::from_observations([(bad.clone(), 5, 0.0), (good.clone(), 1, 0.0)]);
        let sel = postselect(&samples, &q, DEFAULT_TOP_K, true).unwrap();
        assert!(sel.feasible);
        assert_eq!(sel.bits, good);
        assert_eq!(sel.contacts, 2);
        assert_eq!(sel.candidates, 2);
        assert_eq!(sel.feasible_candidates, 1);
    }

    #[test]
    fn flags_when_nothing_feasible() {
        let (q, _, bad) = setup();
        let samples = SampleSet::from_observations([(bad.clone(), 1, 0.0)]);
        let sel = postselect(&samples, &q, 10, true).unwrap();
        assert!(!sel.feasible);
        assert!(!sel.report.feasible);
        assert_eq!(sel.bits, bad);
    }

    #[test]
    fn order_independent() {
        let (q, good, bad) = setup();
        let a = SampleSet::from_observations([(bad.clone(), 1, 0.0), (good.clone(), 1, 0.0)]);
        let b = SampleSet::from_observations([(good, 1, 0.0), (bad, 1, 0.0)]);
        assert_eq!(postselect(&a, &q, 10, true).unwrap(), postselect(&b, &q, 10, true).unwrap());
    }

    #[test]
    fn empty_is_an_error() {
        let (q, _, _) = setup();
        assert!(matches!(
            postselect(&SampleSet::default(), &q, 10, true),
            Err(Error::EmptySamples)
        ));
    }
}

//! Full enumeration of all assignments by Gray-code walk.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::encoder::qubo::QuboProblem;
use crate::error::{Error, Result};
use crate::ising::SampleSet;
use crate::solvers::model::QuadraticModel;
use crate::solvers::{Provenance, SolveResult, TracePoint};

pub const MAX_EXHAUSTIVE_VARS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    energy: f64,
    mask: u64,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.energy.total_cmp(&other.energy).then(self.mask.cmp(&other.mask))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn mask_bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Scans all `2^n` assignments. The sample set keeps the `keep_lowest`
/// lowest-energy states (at least the minimum), each with count 1.
pub fn exhaustive(q: &QuboProblem, keep_lowest: usize) -> Result<SolveResult> {
    let n = q.num_vars();
    if n > MAX_EXHAUSTIVE_VARS {
        return Err(Error::ExhaustiveTooLarge {
            vars: n,
            max: MAX_EXHAUSTIVE_VARS,
        });
    }
    let model = QuadraticModel::new(&q.polynomial, n);
    let keep = keep_lowest.max(1);
    let mut heap: BinaryHeap<Entry> = BinaryHeap::with_capacity(keep + 1);
    let mut x = vec![false; n];
    let mut fields = model.fields(&x);
    let mut energy = model.offset;
    let mut mask = 0u64;
    heap.push(Entry { energy, mask });

    for g in 1u64..(1u64 << n) {
        let i = g.trailing_zeros() as usize;
        energy += model.flip_delta(&x, &fields, i);
        model.flip(&mut x, &mut fields, i);
        mask ^= 1 << i;
        let entry = Entry { energy, mask };
        if heap.len() < keep {
            heap.push(entry);
        } else if entry < *heap.peek().expect("non-empty") {
            heap.pop();
            heap.push(entry);
        }
    }

    // Re-evaluate the survivors exactly; the walk accumulates rounding.
    let mut kept: Vec<Entry> = heap
        .into_iter()
        .map(|e| Entry {
            energy: model.energy(&mask_bits(e.mask, n)),
            mask: e.mask,
        })
        .collect();
    kept.sort();
    let best = kept[0];
    let best_bits = mask_bits(best.mask, n);
    let best_value = q.evaluate(&best_bits)?;
    let samples = SampleSet::from_observations(kept.iter().map(|e| (mask_bits(e.mask, n), 1, e.energy)));
    Ok(SolveResult {
        best_bits,
        best_value,
        iterations_to_best: 1,
        trace: vec![TracePoint {
            iteration: 1,
            objective: best_value,
            best_so_far: best_value,
        }],
        samples,
        provenance: Provenance::Exhaustive { keep_lowest: keep },
        parameters: None,
        selection: None,
    })
}

//! Minimizers for assembled problems and feasibility post-selection.

pub mod anneal;
pub mod exhaustive;
pub mod model;
pub mod nelder_mead;
pub mod postselect;
pub mod statevector;
pub mod vqe;

use serde::{Deserialize, Serialize};

use crate::ising::SampleSet;

pub use anneal::{anneal, AnnealSchedule};
pub use exhaustive::{exhaustive, MAX_EXHAUSTIVE_VARS};
pub use postselect::{postselect, Selection, DEFAULT_TOP_K};
pub use statevector::{AnsatzSpec, Entangler, MAX_STATEVECTOR_QUBITS};
pub use vqe::{vqe_statevector, VqeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub objective: f64,
    pub best_so_far: f64,
}

/// Which solver produced a result and with what settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "solver", rename_all = "lowercase")]
pub enum Provenance {
    Anneal {
        schedule: AnnealSchedule,
        t_initial: f64,
    },
    Exhaustive {
        keep_lowest: usize,
    },
    Vqe {
        ansatz: AnsatzSpec,
        options: VqeOptions,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    #[serde(with = "crate::io::bitstring_serde")]
    pub best_bits: Vec<bool>,
    /// Penalized objective at `best_bits`.
    pub best_value: f64,
    /// Iteration (sweep, scan step or optimizer step) at which the best
    /// value was first reached.
    pub iterations_to_best: usize,
    pub trace: Vec<TracePoint>,
    pub samples: SampleSet,
    pub provenance: Provenance,
    /// Final variational parameters, for VQE runs.
    pub parameters: Option<Vec<f64>>,
    /// Filled in by [`SolveResult::postselect`].
    pub selection: Option<Selection>,
}

impl SolveResult {
    /// Runs [`postselect`] over this result's samples and records the outcome.
    pub fn postselect(
        &mut self,
        q: &crate::encoder::QuboProblem,
        top_k: usize,
        allow_steric: bool,
    ) -> crate::Result<&Selection> {
        let sel = postselect(&self.samples, q, top_k, allow_steric)?;
        Ok(self.selection.insert(sel))
    }
}

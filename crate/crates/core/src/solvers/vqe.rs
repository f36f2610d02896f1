//! CVaR-VQE on the exact statevector simulator.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::{cvar_weighted, IsingOperator, SampleSet};
use crate::rng::stream_rng;
use crate::solvers::nelder_mead::{minimize, NelderMeadOptions};
use crate::solvers::statevector::{index_bits, AnsatzSpec};
use crate::solvers::{Provenance, SolveResult, TracePoint};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeOptions {
    /// CVaR tail fraction in (0, 1]; 1 is the plain expectation.
    pub alpha: f64,
    /// Shots per objective evaluation; 0 uses exact probabilities.
    pub shots: u64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Starting parameters; `None` draws them uniformly from [-pi, pi].
    pub initial_params: Option<Vec<f64>>,
    /// Shots taken from the optimized state to form the sample set.
    pub readout_shots: u64,
}

impl Default for VqeOptions {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            shots: 1024,
            max_iterations: 500,
            seed: 0,
            initial_params: None,
            readout_shots: 4000,
        }
    }
}

fn sample_counts(probs: &[f64], shots: u64, rng: &mut ChaCha8Rng) -> BTreeMap<usize, u64> {
    let dist = WeightedIndex::new(probs).expect("normalized state has positive mass");
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(rng)).or_insert(0) += 1;
    }
    counts
}

/// Minimizes the CVaR of `op` over ansatz states with a restarting simplex
/// search, then reads out `readout_shots` samples from the best parameters.
pub fn vqe_statevector(op: &IsingOperator, ansatz: &AnsatzSpec, opts: &VqeOptions) -> Result<SolveResult> {
    ansatz.check()?;
    if ansatz.qubits != op.n {
        return Err(Error::LengthMismatch {
            expected: op.n,
            actual: ansatz.qubits,
        });
    }
    if !(opts.alpha > 0.0 && opts.alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(opts.alpha));
    }
    if opts.readout_shots == 0 {
        return Err(Error::Config("VQE readout needs at least one shot".into()));
    }
    let n_params = ansatz.num_parameters();
    let x0 = match &opts.initial_params {
        Some(p) if p.len() != n_params => {
            return Err(Error::LengthMismatch {
                expected: n_params,
                actual: p.len(),
            })
        }
        Some(p) => p.clone(),
        None => {
            let mut rng = stream_rng(opts.seed, 0);
            (0..n_params).map(|_| rng.random_range(-PI..PI)).collect()
        }
    };

    let energies = op.diagonal();
    let mut shot_rng = stream_rng(opts.seed, 1);
    let mut objective = |params: &[f64]| -> f64 {
        let Ok(psi) = ansatz.prepare(params) else {
            return f64::INFINITY;
        };
        let probs = psi.probabilities();
        let weighted: Vec<(f64, f64)> = if opts.shots == 0 {
            energies.iter().copied().zip(probs).collect()
        } else {
            sample_counts(&probs, opts.shots, &mut shot_rng)
                .into_iter()
                .map(|(idx, c)| (energies[idx], c as f64))
                .collect()
        };
        cvar_weighted(&weighted, opts.alpha).unwrap_or(f64::INFINITY)
    };
    let nm = NelderMeadOptions {
        max_iterations: opts.max_iterations,
        ..Default::default()
    };
    let found = minimize(&mut objective, &x0, &nm);

    let trace: Vec<TracePoint> = found
        .history
        .iter()
        .enumerate()
        .map(|(i, &v)| TracePoint {
            iteration: i + 1,
            objective: v,
            best_so_far: v,
        })
        .collect();
    let iterations_to_best = found
        .history
        .iter()
        .position(|&v| v == found.value)
        .map_or(0, |i| i + 1);

    let probs = ansatz.prepare(&found.x)?.probabilities();
    let mut readout_rng = stream_rng(opts.seed, 2);
    let counts = sample_counts(&probs, opts.readout_shots, &mut readout_rng);
    let samples = SampleSet::from_observations(
        counts
            .into_iter()
            .map(|(idx, c)| (index_bits(idx, op.n), c, energies[idx])),
    );
    let best = samples
        .samples
        .iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy).then_with(|| a.bits.cmp(&b.bits)))
        .expect("at least one readout shot");
    Ok(SolveResult {
        best_bits: best.bits.clone(),
        best_value: op.energy(&best.bits)?,
        iterations_to_best,
        trace,
        samples,
        provenance: Provenance::Vqe {
            ansatz: *ansatz,
            options: opts.clone(),
        },
        parameters: Some(found.x),
        selection: None,
    })
}

/// The CVaR objective at fixed parameters, for inspection and tests.
pub fn cvar_objective(op: &IsingOperator, ansatz: &AnsatzSpec, params: &[f64], alpha: f64) -> Result<f64> {
    let probs = ansatz.prepare(params)?.probabilities();
    let weighted: Vec<(f64, f64)> = op.diagonal().into_iter().zip(probs).collect();
    cvar_weighted(&weighted, alpha)
}

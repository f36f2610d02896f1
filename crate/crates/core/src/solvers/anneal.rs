//! Single-flip Metropolis simulated annealing.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::encoder::qubo::QuboProblem;
use crate::error::{Error, Result};
use crate::ising::SampleSet;
use crate::rng::stream_rng;
use crate::solvers::model::QuadraticModel;
use crate::solvers::{Provenance, SolveResult, TracePoint};

/// Geometric cooling schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    /// Starting temperature; `None` uses ten times the largest non-constant
    /// coefficient magnitude.
    pub t_initial: Option<f64>,
    pub t_final: f64,
    /// Full passes over all variables per restart.
    pub sweeps: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Trailing sweeps of every restart whose end states join the sample
    /// population; `None` keeps every sweep. Early, hot sweeps contribute
    /// the diverse near-feasible states post-selection relies on.
    pub population_sweeps: Option<usize>,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        Self {
            t_initial: None,
            t_final: 0.01,
            sweeps: 2000,
            restarts: 20,
            seed: 0,
            population_sweeps: None,
        }
    }
}

impl AnnealSchedule {
    pub fn resolve_t_initial(&self, q: &QuboProblem) -> f64 {
        self.t_initial
            .unwrap_or_else(|| (10.0 * q.polynomial.max_abs_coefficient()).max(self.t_final))
    }

    pub fn check(&self, t_initial: f64) -> Result<()> {
        if !self.t_final.is_finite() || self.t_final <= 0.0 || t_initial.is_nan() || t_initial < self.t_final {
            return Err(Error::Config(format!(
                "annealing needs t_initial >= t_final > 0, got {t_initial} and {}",
                self.t_final
            )));
        }
        if self.sweeps == 0 || self.restarts == 0 {
            return Err(Error::Config("annealing needs at least one sweep and one restart".into()));
        }
        Ok(())
    }

    fn temperature(&self, t_initial: f64, sweep: usize) -> f64 {
        if self.sweeps == 1 {
            return self.t_final;
        }
        let frac = sweep as f64 / (self.sweeps - 1) as f64;
        t_initial * (self.t_final / t_initial).powf(frac)
    }
}

struct RestartOutcome {
    best_bits: Vec<bool>,
    best_energy: f64,
    best_sweep: usize,
    trace: Vec<f64>,
    /// State -> (end-of-sweep count, first sweep seen).
    population: HashMap<Vec<bool>, (u64, usize)>,
}

fn run_restart(model: &QuadraticModel, sched: &AnnealSchedule, t_initial: f64, restart: usize) -> RestartOutcome {
    let mut rng = stream_rng(sched.seed, restart as u64);
    let n = model.n;
    let mut x: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut fields = model.fields(&x);
    let mut energy = model.energy(&x);
    let mut best_bits = x.clone();
    let mut best_energy = energy;
    let mut best_sweep = 0;
    let mut order: Vec<usize> = (0..n).collect();
    let mut trace = Vec::with_capacity(sched.sweeps);
    let mut population = HashMap::new();
    let population_start = sched.population_sweeps.map_or(0, |p| sched.sweeps.saturating_sub(p));

    for sweep in 0..sched.sweeps {
        let t = sched.temperature(t_initial, sweep);
        order.shuffle(&mut rng);
        for &i in &order {
            let delta = model.flip_delta(&x, &fields, i);
            if delta <= 0.0 || rng.random::<f64>() < (-delta / t).exp() {
                model.flip(&mut x, &mut fields, i);
                energy += delta;
                if energy < best_energy - 1e-9 {
                    best_energy = energy;
                    best_bits.copy_from_slice(&x);
                    best_sweep = sweep + 1;
                }
            }
        }
        trace.push(energy);
        if sweep >= population_start {
            population.entry(x.clone()).or_insert((0, sweep + 1)).0 += 1;
        }
    }
    let e = population.entry(best_bits.clone()).or_insert((0, best_sweep));
    e.0 += 1;
    e.1 = e.1.min(best_sweep);
    RestartOutcome {
        best_bits,
        best_energy,
        best_sweep,
        trace,
        population,
    }
}

/// Anneals `q` with independent restarts and keeps the best state. The
/// trace has one point per sweep: the lowest end-of-sweep energy over
/// restarts and the lowest energy reached so far by any restart. The
/// sample set holds the end-of-sweep states of every restart (the final
/// `population_sweeps` sweeps when set) plus each restart's best state.
pub fn anneal(q: &QuboProblem, sched: &AnnealSchedule) -> Result<SolveResult> {
    let t_initial = sched.resolve_t_initial(q);
    sched.check(t_initial)?;
    let model = QuadraticModel::new(&q.polynomial, q.num_vars());

    let mut best: Option<(Vec<bool>, f64)> = None;
    // Per sweep: lowest end-of-sweep energy and lowest energy seen so far,
    // both across restarts.
    let mut sweep_min = vec![f64::INFINITY; sched.sweeps];
    let mut sweep_best = vec![f64::INFINITY; sched.sweeps];
    let mut observations = Vec::new();
    for restart in 0..sched.restarts {
        let out = run_restart(&model, sched, t_initial, restart);
        let mut running = f64::INFINITY;
        for (s, &e) in out.trace.iter().enumerate() {
            running = running.min(e);
            if s + 1 >= out.best_sweep {
                running = running.min(out.best_energy);
            }
            sweep_min[s] = sweep_min[s].min(e);
            sweep_best[s] = sweep_best[s].min(running);
        }
        if best.as_ref().is_none_or(|b| out.best_energy < b.1 - 1e-9) {
            best = Some((out.best_bits.clone(), out.best_energy));
        }
        let mut pop: Vec<_> = out.population.into_iter().collect();
        pop.sort();
        observations.extend(pop);
    }
    let (best_bits, best_energy) = best.expect("at least one restart");
    let iterations_to_best = sweep_best
        .iter()
        .position(|&b| b <= best_energy + 1e-9)
        .map_or(sched.sweeps, |s| s + 1);
    let trace = sweep_min
        .into_iter()
        .zip(sweep_best)
        .enumerate()
        .map(|(s, (objective, best_so_far))| TracePoint {
            iteration: s + 1,
            objective,
            best_so_far,
        })
        .collect();
    let mut first_seen: HashMap<Vec<bool>, usize> = HashMap::new();
    for (bits, (_, sweep)) in &observations {
        let e = first_seen.entry(bits.clone()).or_insert(*sweep);
        *e = (*e).min(*sweep);
    }
    let mut samples = SampleSet::from_observations(observations.into_iter().map(|(bits, (count, _))| {
        let e = model.energy(&bits);
        (bits, count, e)
    }));
    for s in &mut samples.samples {
        s.first_iteration = first_seen.get(&s.bits).copied();
    }
    let best_value = q.evaluate(&best_bits)?;
    Ok(SolveResult {
        best_bits,
        best_value,
        iterations_to_best,
        trace,
        samples,
        provenance: Provenance::Anneal {
            schedule: *sched,
            t_initial,
        },
        parameters: None,
        selection: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::poly::BinaryPolynomial;
    use crate::encoder::qubo::{encode, EncodeOptions};
    use crate::model::sequence::parse_sequence;

    fn toy(poly: BinaryPolynomial, n: usize) -> QuboProblem {
        let seq = parse_sequence(&"P".repeat(n / 6 + 2)).unwrap();
        let mut q = encode(&seq, &EncodeOptions::default(), 0).unwrap();
        assert_eq!(q.num_vars(), n);
        q.polynomial = poly;
        q
    }

    fn quick(seed: u64) -> AnnealSchedule {
        AnnealSchedule {
            sweeps: 200,
            restarts: 3,
            seed,
            population_sweeps: Some(10),
            ..Default::default()
        }
    }

    #[test]
    fn linear_term_goes_to_zero() {
        let mut poly = BinaryPolynomial::var(0);
        for i in 1..6 {
            poly.add_term(vec![i], 1.0);
        }
        let r = anneal(&toy(poly, 6), &quick(1)).unwrap();
        assert_eq!(r.best_bits, vec![false; 6]);
        assert_eq!(r.best_value, 0.0);
    }

    #[test]
    fn ferromagnetic_pair() {
        let mut poly = BinaryPolynomial::from_terms([(vec![0, 1], -1.0)]);
        for i in 2..6 {
            poly.add_term(vec![i], 0.5);
        }
        let r = anneal(&toy(poly, 6), &quick(2)).unwrap();
        assert_eq!(&r.best_bits[..2], &[true, true]);
        assert_eq!(r.best_value, -1.0);
    }

    #[test]
    fn best_value_matches_evaluation_and_samples() {
        let seq = parse_sequence("HPPHPH").unwrap();
        let q = encode(&seq, &EncodeOptions::default(), 4).unwrap();
        let r = anneal(&q, &quick(3)).unwrap();
        assert!((q.evaluate(&r.best_bits).unwrap() - r.best_value).abs() < 1e-9);
        for s in &r.samples.samples {
            assert!((q.evaluate(&s.bits).unwrap() - s.energy).abs() < 1e-9);
            assert!(s.energy >= r.best_value - 1e-9);
        }
        assert_eq!(r.trace.len(), 200);
        assert!(r.trace.windows(2).all(|w| w[1].best_so_far <= w[0].best_so_far));
        assert!((r.trace.last().unwrap().best_so_far - r.best_value).abs() < 1e-9);
    }

    #[test]
    fn deterministic() {
        let seq = parse_sequence("HPPHPH").unwrap();
        let q = encode(&seq, &EncodeOptions::default(), 4).unwrap();
        assert_eq!(anneal(&q, &quick(9)).unwrap(), anneal(&q, &quick(9)).unwrap());
    }

    #[test]
    fn zero_temperature_is_descent() {
        let seq = parse_sequence("HHPPHPH").unwrap();
        let q = encode(&seq, &EncodeOptions::default(), 5).unwrap();
        let sched = AnnealSchedule {
            t_initial: Some(1e-6),
            t_final: 1e-6,
            sweeps: 50,
            restarts: 1,
            seed: 5,
            population_sweeps: Some(1),
        };
        let r = anneal(&q, &sched).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1].objective <= w[0].objective + 1e-9);
        }
    }

    #[test]
    fn rejects_bad_schedule() {
        let seq = parse_sequence("HPH").unwrap();
        let q = encode(&seq, &EncodeOptions::default(), 0).unwrap();
        let bad = AnnealSchedule {
            t_initial: Some(0.001),
            t_final: 0.01,
            ..Default::default()
        };
        assert!(anneal(&q, &bad).is_err());
        let none = AnnealSchedule {
            sweeps: 0,
            ..Default::default()
        };
        assert!(anneal(&q, &none).is_err());
    }
}

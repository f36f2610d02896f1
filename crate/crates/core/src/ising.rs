//! Diagonal spin operators, sample sets and CVaR.
//!
//! Spin convention: bit 0 maps to `z = +1` and bit 1 to `z = -1`, from the
//! substitution `x = (1 - z) / 2`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::encoder::poly::BinaryPolynomial;
use crate::encoder::qubo::QuboProblem;
use crate::error::{Error, Result};

pub const SPIN_CONVENTION: &str = "bit 0 -> z = +1, bit 1 -> z = -1";

/// `constant + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingOperator {
    pub n: usize,
    pub constant: f64,
    pub h: Vec<f64>,
    pub couplings: BTreeMap<(usize, usize), f64>,
}

#[inline]
fn spin(bit: bool) -> f64 {
    if bit {
        -1.0
    } else {
        1.0
    }
}

impl IsingOperator {
    /// Converts a polynomial of degree at most 2 over `n` variables.
    pub fn from_polynomial(p: &BinaryPolynomial, n: usize) -> Result<Self> {
        if p.degree() > 2 {
            return Err(Error::DegreeTooHigh(p.degree()));
        }
        if p.num_vars() > n {
            return Err(Error::MissingAssignment {
                required: p.num_vars(),
                provided: n,
            });
        }
        let mut op = IsingOperator {
            n,
            constant: 0.0,
            h: vec![0.0; n],
            couplings: BTreeMap::new(),
        };
        for (vars, c) in p.terms() {
            match *vars {
                [] => op.constant += c,
                // c x_i = c/2 - c/2 z_i
                [i] => {
                    op.constant += c / 2.0;
                    op.h[i] -= c / 2.0;
                }
                // c x_i x_j = c/4 (1 - z_i - z_j + z_i z_j)
                [i, j] => {
                    op.constant += c / 4.0;
                    op.h[i] -= c / 4.0;
                    op.h[j] -= c / 4.0;
                    *op.couplings.entry((i, j)).or_insert(0.0) += c / 4.0;
                }
                _ => unreachable!("degree checked above"),
            }
        }
        op.couplings.retain(|_, v| *v != 0.0);
        Ok(op)
    }

    /// Energy of a computational basis state.
    pub fn energy(&self, bits: &[bool]) -> Result<f64> {
        if bits.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: bits.len(),
            });
        }
        let mut e = self.constant;
        for (i, &h) in self.h.iter().enumerate() {
            e += h * spin(bits[i]);
        }
        for (&(i, j), &c) in &self.couplings {
            e += c * spin(bits[i]) * spin(bits[j]);
        }
        Ok(e)
    }

    /// Energy change from flipping bit `i`: `-2 z_i (h_i + sum_j J_ij z_j)`.
    pub fn flip_delta(&self, bits: &[bool], i: usize) -> f64 {
        let mut field = self.h[i];
        for (&(a, b), &c) in &self.couplings {
            if a == i {
                field += c * spin(bits[b]);
            } else if b == i {
                field += c * spin(bits[a]);
            }
        }
        -2.0 * spin(bits[i]) * field
    }

    /// Energies of all `2^n` basis states, indexed with bit `i` of the index
    /// holding variable `i`.
    pub fn diagonal(&self) -> Vec<f64> {
        let n = self.n;
        let size = 1usize << n;
        let mut coupled: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (&(i, j), &c) in &self.couplings {
            coupled[i].push((j, c));
            coupled[j].push((i, c));
        }
        let mut energies = vec![0.0; size];
        energies[0] = self.constant + self.h.iter().sum::<f64>() + self.couplings.values().sum::<f64>();
        for idx in 1..size {
            // Set the highest bit k of idx starting from idx without it; all
            // bits above k are zero there, so z = +1 for them.
            let k = usize::BITS as usize - 1 - idx.leading_zeros() as usize;
            let prev = idx & !(1 << k);
            let mut field = self.h[k];
            for &(j, c) in &coupled[k] {
                field += c * if prev >> j & 1 == 1 { -1.0 } else { 1.0 };
            }
            energies[idx] = energies[prev] - 2.0 * field;
        }
        energies
    }
}

impl QuboProblem {
    pub fn to_ising(&self) -> IsingOperator {
        IsingOperator::from_polynomial(&self.polynomial, self.num_vars()).expect("assembled problems are quadratic")
    }
}

/// Ising form of an assembled problem.
pub fn qubo_to_ising(q: &QuboProblem) -> IsingOperator {
    q.to_ising()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingExport {
    pub num_qubits: usize,
    pub spin_convention: String,
    pub constant: f64,
    pub h: Vec<(usize, f64)>,
    pub j: Vec<(usize, usize, f64)>,
}

impl From<&IsingOperator> for IsingExport {
    fn from(op: &IsingOperator) -> Self {
        Self {
            num_qubits: op.n,
            spin_convention: SPIN_CONVENTION.to_string(),
            constant: op.constant,
            h: op
                .h
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, v)| (i, *v))
                .collect(),
            j: op.couplings.iter().map(|(&(a, b), &c)| (a, b, c)).collect(),
        }
    }
}

impl TryFrom<IsingExport> for IsingOperator {
    type Error = Error;

    fn try_from(e: IsingExport) -> Result<Self> {
        if e.spin_convention != SPIN_CONVENTION {
            return Err(Error::Format(format!("unsupported spin convention {:?}", e.spin_convention)));
        }
        let mut h = vec![0.0; e.num_qubits];
        for (i, v) in e.h {
            *h.get_mut(i).ok_or_else(|| Error::Format(format!("h index {i} out of range")))? += v;
        }
        let mut couplings = BTreeMap::new();
        for (a, b, c) in e.j {
            if a >= b || b >= e.num_qubits {
                return Err(Error::Format(format!("bad coupling ({a}, {b})")));
            }
            *couplings.entry((a, b)).or_insert(0.0) += c;
        }
        Ok(IsingOperator {
            n: e.num_qubits,
            constant: e.constant,
            h,
            couplings,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(with = "crate::io::bitstring_serde")]
    pub bits: Vec<bool>,
    pub count: u64,
    pub energy: f64,
    /// Solver iteration at which the state was first seen, when tracked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_iteration: Option<usize>,
}

/// Distinct bitstrings with multiplicities; `shots` is the total count.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SampleSet {
    pub samples: Vec<Sample>,
    pub shots: u64,
}

impl SampleSet {
    /// Merges duplicate bitstrings, keeping first-seen order.
    pub fn from_observations<I>(observations: I) -> Self
    where
        I: IntoIterator<Item = (Vec<bool>, u64, f64)>,
    {
        let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut set = SampleSet::default();
        for (bits, count, energy) in observations {
            if count == 0 {
                continue;
            }
            set.shots += count;
            match index.get(&bits) {
                Some(&i) => set.samples[i].count += count,
                None => {
                    index.insert(bits.clone(), set.samples.len());
                    set.samples.push(Sample {
                        bits,
                        count,
                        energy,
                        first_iteration: None,
                    });
                }
            }
        }
        set
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn min_energy(&self) -> Option<f64> {
        self.samples.iter().map(|s| s.energy).min_by(f64::total_cmp)
    }

    /// Multiplicity-weighted CVaR of the sample energies.
    pub fn cvar(&self, alpha: f64) -> Result<f64> {
        let weighted: Vec<(f64, f64)> = self.samples.iter().map(|s| (s.energy, s.count as f64)).collect();
        cvar_weighted(&weighted, alpha)
    }

    /// Keeps the `k` lowest-energy samples (ties by bitstring), sorted by
    /// energy. `shots` is recomputed from the survivors.
    pub fn retain_lowest(&mut self, k: usize) {
        self.samples
            .sort_by(|a, b| a.energy.total_cmp(&b.energy).then_with(|| a.bits.cmp(&b.bits)));
        self.samples.truncate(k);
        self.shots = self.samples.iter().map(|s| s.count).sum();
    }

    /// Merges `other` into `self`, keeping the earliest `first_iteration`.
    pub fn extend(&mut self, other: SampleSet) {
        let mut first: HashMap<Vec<bool>, usize> = HashMap::new();
        for s in self.samples.iter().chain(&other.samples) {
            if let Some(it) = s.first_iteration {
                let e = first.entry(s.bits.clone()).or_insert(it);
                *e = (*e).min(it);
            }
        }
        let mut merged = SampleSet::from_observations(
            std::mem::take(&mut self.samples)
                .into_iter()
                .chain(other.samples)
                .map(|s| (s.bits, s.count, s.energy)),
        );
        for s in &mut merged.samples {
            s.first_iteration = first.get(&s.bits).copied();
        }
        *self = merged;
    }

    pub fn get(&self, bits: &[bool]) -> Option<&Sample> {
        self.samples.iter().find(|s| s.bits == bits)
    }
}

/// Mean of the lowest `alpha` fraction of equally weighted energies.
pub fn cvar(energies: &[f64], alpha: f64) -> Result<f64> {
    let weighted: Vec<(f64, f64)> = energies.iter().map(|&e| (e, 1.0)).collect();
    cvar_weighted(&weighted, alpha)
}

/// CVaR over `(energy, weight)` pairs: the weighted mean of the lowest
/// `alpha * total_weight` mass, with the boundary item counted fractionally.
pub fn cvar_weighted(items: &[(f64, f64)], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let mut sorted: Vec<(f64, f64)> = items.iter().copied().filter(|(_, w)| *w > 0.0).collect();
    if sorted.is_empty() {
        return Err(Error::EmptySamples);
    }
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = sorted.iter().map(|(_, w)| w).sum();
    if alpha == 1.0 {
        return Ok(sorted.iter().map(|(e, w)| e * w).sum::<f64>() / total);
    }
    let mass = alpha * total;
    let mut remaining = mass;
    let mut acc = 0.0;
    for (e, w) in sorted {
        let take = w.min(remaining);
        acc += e * take;
        remaining -= take;
        if remaining <= 0.0 {
            break;
        }
    }
    Ok(acc / (mass - remaining.max(0.0)))
}

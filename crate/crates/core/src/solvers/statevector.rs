//! Exact amplitude-vector simulation of a hardware-efficient rotation/CNOT
//! ansatz.
//!
//! Qubit `i` is bit `i` of the basis index and corresponds to problem
//! variable `i`; `|1>` on a qubit means the variable is 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 22 qubits = 4M amplitudes = 64 MiB of complex doubles.
pub const MAX_STATEVECTOR_QUBITS: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entangler {
    /// CNOT(i, i+1) for i = 0..n-1.
    #[default]
    Linear,
    /// The linear chain plus CNOT(n-1, 0).
    Circular,
}

/// Alternating RY/RZ rotation layers with CNOT entanglers in between:
/// `reps` entangling blocks and `reps + 1` rotation blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub qubits: usize,
    pub reps: usize,
    #[serde(default)]
    pub entangler: Entangler,
}

impl AnsatzSpec {
    pub fn new(qubits: usize, reps: usize) -> Result<Self> {
        let spec = AnsatzSpec {
            qubits,
            reps,
            entangler: Entangler::Linear,
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<()> {
        if self.qubits == 0 {
            return Err(Error::Config("ansatz needs at least one qubit".into()));
        }
        if self.qubits > MAX_STATEVECTOR_QUBITS {
            return Err(Error::QubitBudget {
                qubits: self.qubits,
                max: MAX_STATEVECTOR_QUBITS,
            });
        }
        if !(1..=2).contains(&self.reps) {
            return Err(Error::Config(format!("ansatz repetitions must be 1 or 2, got {}", self.reps)));
        }
        Ok(())
    }

    /// `2 * qubits * (reps + 1)`: one RY and one RZ angle per qubit per
    /// rotation block.
    pub fn num_parameters(&self) -> usize {
        2 * self.qubits * (self.reps + 1)
    }

    fn cnot_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.qubits;
        let mut pairs: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if self.entangler == Entangler::Circular && n > 2 {
            pairs.push((n - 1, 0));
        }
        pairs
    }

    /// Prepares the ansatz state from `|0...0>`.
    ///
    /// Parameter layout: block `l` occupies `[2nl, 2n(l+1))`, RY angles
    /// first, then RZ angles, qubit-major.
    pub fn prepare(&self, params: &[f64]) -> Result<Statevector> {
        self.check()?;
        if params.len() != self.num_parameters() {
            return Err(Error::LengthMismatch {
                expected: self.num_parameters(),
                actual: params.len(),
            });
        }
        let n = self.qubits;
        let mut psi = Statevector::zero_state(n);
        let cnots = self.cnot_pairs();
        for (block, angles) in params.chunks_exact(2 * n).enumerate() {
            let (ry, rz) = angles.split_at(n);
            for (q, (&theta, &phi)) in ry.iter().zip(rz).enumerate() {
                psi.ry(q, theta);
                psi.rz(q, phi);
            }
            if block < self.reps {
                for &(c, t) in &cnots {
                    psi.cnot(c, t);
                }
            }
        }
        Ok(psi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    pub n: usize,
    pub amplitudes: Vec<Complex64>,
}

impl Statevector {
    pub fn zero_state(n: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Statevector { n, amplitudes }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies the 2x2 matrix `[[a, b], [c, d]]` to qubit `q`.
    fn apply_1q(&mut self, q: usize, m: [Complex64; 4]) {
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                let j = i | bit;
                let (u, v) = (self.amplitudes[i], self.amplitudes[j]);
                self.amplitudes[i] = m[0] * u + m[1] * v;
                self.amplitudes[j] = m[2] * u + m[3] * v;
            }
        }
    }

    pub fn ry(&mut self, q: usize, theta: f64) {
        let (s, c) = (theta / 2.0).sin_cos();
        let (c, s) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
        self.apply_1q(q, [c, -s, s, c]);
    }

    pub fn rz(&mut self, q: usize, phi: f64) {
        let bit = 1usize << q;
        let lo = Complex64::from_polar(1.0, -phi / 2.0);
        let hi = Complex64::from_polar(1.0, phi / 2.0);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            *a *= if i & bit == 0 { lo } else { hi };
        }
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1usize << control, 1usize << target);
        for i in 0..self.amplitudes.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amplitudes.swap(i, i | tb);
            }
        }
    }
}

/// Expands basis index `idx` into `n` bits, bit `i` first.
pub fn index_bits(idx: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| idx >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn parameter_count() {
        assert_eq!(AnsatzSpec::new(4, 1).unwrap().num_parameters(), 16);
        assert_eq!(AnsatzSpec::new(6, 2).unwrap().num_parameters(), 36);
    }

    #[test]
    fn budget_and_reps() {
        assert!(matches!(AnsatzSpec::new(23, 1), Err(Error::QubitBudget { qubits: 23, .. })));
        assert!(AnsatzSpec::new(3, 0).is_err());
        assert!(AnsatzSpec::new(3, 3).is_err());
    }

    #[test]
    fn zero_parameters_stay_in_ground_basis_state() {
        let a = AnsatzSpec::new(5, 2).unwrap();
        let p = a.prepare(&vec![0.0; a.num_parameters()]).unwrap().probabilities();
        assert!((p[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pi_rotation_then_cnot() {
        // RY(pi) on qubit 0 gives |1> there; CNOT(0,1) then flips qubit 1.
        let a = AnsatzSpec::new(2, 1).unwrap();
        let mut params = vec![0.0; a.num_parameters()];
        params[0] = PI;
        let p = a.prepare(&params).unwrap().probabilities();
        assert!((p[0b11] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gates_preserve_norm() {
        let mut psi = Statevector::zero_state(3);
        psi.ry(0, 0.3);
        psi.ry(2, 1.7);
        psi.rz(1, -0.4);
        psi.cnot(0, 1);
        psi.cnot(2, 0);
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circular_adds_wraparound() {
        let a = AnsatzSpec {
            qubits: 3,
            reps: 1,
            entangler: Entangler::Circular,
        };
        assert_eq!(a.cnot_pairs(), vec![(0, 1), (1, 2), (2, 0)]);
    }
}

//! Flat adjacency form of a quadratic polynomial for fast local updates.

use crate::encoder::poly::BinaryPolynomial;

#[derive(Debug, Clone)]
pub struct QuadraticModel {
    pub n: usize,
    pub offset: f64,
    pub linear: Vec<f64>,
    /// Symmetric neighbour lists: `(j, Q_ij)` appears under both `i` and `j`.
    pub neighbors: Vec<Vec<(usize, f64)>>,
}

impl QuadraticModel {
    /// # Panics
    /// If the polynomial has a term of degree above 2 or a variable `>= n`.
    pub fn new(p: &BinaryPolynomial, n: usize) -> Self {
        let mut m = QuadraticModel {
            n,
            offset: 0.0,
            linear: vec![0.0; n],
            neighbors: vec![Vec::new(); n],
        };
        for (vars, c) in p.terms() {
            match *vars {
                [] => m.offset += c,
                [i] => m.linear[i] += c,
                [i, j] => {
                    m.neighbors[i].push((j, c));
                    m.neighbors[j].push((i, c));
                }
                _ => panic!("quadratic model needs degree <= 2"),
            }
        }
        m
    }

    pub fn energy(&self, x: &[bool]) -> f64 {
        let mut e = self.offset;
        for i in 0..self.n {
            if !x[i] {
                continue;
            }
            e += self.linear[i];
            for &(j, c) in &self.neighbors[i] {
                if j > i && x[j] {
                    e += c;
                }
            }
        }
        e
    }

    /// `field[i] = linear[i] + sum_j Q_ij x_j`; flipping `i` changes the energy
    /// by `field[i]` (0 -> 1) or `-field[i]` (1 -> 0).
    pub fn fields(&self, x: &[bool]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                self.linear[i]
                    + self.neighbors[i]
                        .iter()
                        .filter(|(j, _)| x[*j])
                        .map(|(_, c)| c)
                        .sum::<f64>()
            })
            .collect()
    }

    #[inline]
    pub fn flip_delta(&self, x: &[bool], fields: &[f64], i: usize) -> f64 {
        if x[i] {
            -fields[i]
        } else {
            fields[i]
        }
    }

    /// Flips `i` and updates the neighbours' fields.
    #[inline]
    pub fn flip(&self, x: &mut [bool], fields: &mut [f64], i: usize) {
        x[i] = !x[i];
        let sign = if x[i] { 1.0 } else { -1.0 };
        for &(j, c) in &self.neighbors[i] {
            fields[j] += sign * c;
        }
    }
}

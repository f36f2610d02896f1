//! Multilinear polynomials over binary variables.
//!
//! Every monomial is a sorted set of distinct variable indices; products
//! collapse repeated variables (`x * x = x`) because the variables take
//! values in `{0, 1}`. Coefficients smaller than [`PRUNE_EPS`] in magnitude
//! are dropped.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

pub const PRUNE_EPS: f64 = 1e-12;

pub type Monomial = Vec<usize>;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BinaryPolynomial {
    terms: BTreeMap<Monomial, f64>,
}

fn canonical(mut vars: Vec<usize>) -> Monomial {
    vars.sort_unstable();
    vars.dedup();
    vars
}

fn union(a: &[usize], b: &[usize]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![i], 1.0);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut p = Self::zero();
        for (vars, c) in terms {
            p.add_term(vars, c);
        }
        p
    }

    /// Adds `c * prod(vars)`; repeated variables collapse.
    pub fn add_term(&mut self, vars: Vec<usize>, c: f64) {
        self.accumulate(canonical(vars), c);
    }

    fn accumulate(&mut self, key: Monomial, c: f64) {
        if c == 0.0 {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if c.abs() >= PRUNE_EPS {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.abs() < PRUNE_EPS {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn coefficient(&self, vars: &[usize]) -> f64 {
        self.terms.get(&canonical(vars.to_vec())).copied().unwrap_or(0.0)
    }

    pub fn constant_term(&self) -> f64 {
        self.terms.get(&Vec::new()).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// One past the largest variable index that appears.
    pub fn num_vars(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|k| k.last())
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(k, _)| !k.is_empty())
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), v * c);
        }
        out
    }

    /// `self * self`, reduced.
    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact evaluation. `bits` must cover every variable that appears.
    pub fn evaluate(&self, bits: &[bool]) -> Result<f64> {
        let required = self.num_vars();
        if bits.len() < required {
            return Err(Error::MissingAssignment {
                required,
                provided: bits.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .filter(|(k, _)| k.iter().all(|&i| bits[i]))
            .map(|(_, c)| c)
            .sum())
    }
}

impl AddAssign<&BinaryPolynomial> for BinaryPolynomial {
    fn add_assign(&mut self, rhs: &BinaryPolynomial) {
        for (k, v) in &rhs.terms {
            self.accumulate(k.clone(), *v);
        }
    }
}

impl SubAssign<&BinaryPolynomial> for BinaryPolynomial {
    fn sub_assign(&mut self, rhs: &BinaryPolynomial) {
        for (k, v) in &rhs.terms {
            self.accumulate(k.clone(), -*v);
        }
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: &BinaryPolynomial) -> BinaryPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(mut self, rhs: BinaryPolynomial) -> BinaryPolynomial {
        self += &rhs;
        self
    }
}

impl Sub for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn sub(self, rhs: &BinaryPolynomial) -> BinaryPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn sub(mut self, rhs: BinaryPolynomial) -> BinaryPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn neg(self) -> BinaryPolynomial {
        self.scale(-1.0)
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: &BinaryPolynomial) -> BinaryPolynomial {
        let mut out = BinaryPolynomial::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                out.accumulate(union(ka, kb), va * vb);
            }
        }
        out
    }
}

impl Mul for BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: BinaryPolynomial) -> BinaryPolynomial {
        &self * &rhs
    }
}

impl Mul<f64> for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, c: f64) -> BinaryPolynomial {
        self.scale(c)
    }
}

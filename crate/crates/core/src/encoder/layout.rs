//! Mapping between turn bits and contiguous variable indices.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::model::geometry::Turn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Which of the two bits of a turn component: the component is `a - b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Half {
    A,
    B,
}

/// Variable layout for an `N`-bead chain. Steps are numbered `1..=N-1`; each
/// encoded step owns six consecutive variables ordered
/// `x_a, x_b, y_a, y_b, z_a, z_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableLayout {
    n_beads: usize,
    fixed_first: Option<Turn>,
}

impl VariableLayout {
    pub fn new(n_beads: usize, fixed_first: Option<Turn>) -> Self {
        assert!(n_beads >= 2, "a chain needs at least two beads");
        Self { n_beads, fixed_first }
    }

    /// First turn pinned to `(1,0,0)`: `6(N-2)` variables.
    pub fn fixed_first_turn(n_beads: usize) -> Self {
        Self::new(n_beads, Some(Turn::X_POS))
    }

    /// Every turn encoded: `6(N-1)` variables.
    pub fn all_turns(n_beads: usize) -> Self {
        Self::new(n_beads, None)
    }

    pub fn n_beads(&self) -> usize {
        self.n_beads
    }

    pub fn n_steps(&self) -> usize {
        self.n_beads - 1
    }

    pub fn fixed_first(&self) -> Option<Turn> {
        self.fixed_first
    }

    pub fn first_encoded_step(&self) -> usize {
        if self.fixed_first.is_some() {
            2
        } else {
            1
        }
    }

    pub fn encoded_steps(&self) -> usize {
        self.n_steps() + 1 - self.first_encoded_step()
    }

    pub fn encoded_step_range(&self) -> RangeInclusive<usize> {
        self.first_encoded_step()..=self.n_steps()
    }

    pub fn num_vars(&self) -> usize {
        6 * self.encoded_steps()
    }

    /// Variable index of one bit, or `None` for the fixed first step.
    pub fn index(&self, step: usize, axis: Axis, half: Half) -> Option<usize> {
        if step < self.first_encoded_step() || step > self.n_steps() {
            return None;
        }
        let half = match half {
            Half::A => 0,
            Half::B => 1,
        };
        Some(6 * (step - self.first_encoded_step()) + 2 * axis.index() + half)
    }

    /// Inverse of [`index`](Self::index).
    pub fn locate(&self, var: usize) -> Option<(usize, Axis, Half)> {
        if var >= self.num_vars() {
            return None;
        }
        let step = var / 6 + self.first_encoded_step();
        let axis = Axis::ALL[(var % 6) / 2];
        let half = if var.is_multiple_of(2) { Half::A } else { Half::B };
        Some((step, axis, half))
    }

    /// Human-readable variable name such as `x_a^3`.
    pub fn name(&self, var: usize) -> Option<String> {
        self.locate(var).map(|(step, axis, half)| {
            let h = if half == Half::A { 'a' } else { 'b' };
            format!("{axis}_{h}^{step}")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_counts() {
        assert_eq!(VariableLayout::fixed_first_turn(10).num_vars(), 48);
        assert_eq!(VariableLayout::all_turns(10).num_vars(), 54);
        assert_eq!(VariableLayout::all_turns(20).num_vars(), 114);
        assert_eq!(VariableLayout::fixed_first_turn(2).num_vars(), 0);
    }

    #[test]
    fn index_is_bijective() {
        for layout in [VariableLayout::fixed_first_turn(6), VariableLayout::all_turns(6)] {
            let mut seen = vec![false; layout.num_vars()];
            for step in 1..=layout.n_steps() {
                for axis in Axis::ALL {
                    for half in [Half::A, Half::B] {
                        match layout.index(step, axis, half) {
                            Some(v) => {
                                assert!(!seen[v]);
                                seen[v] = true;
                                assert_eq!(layout.locate(v), Some((step, axis, half)));
                            }
                            None => assert_eq!(step, 1),
                        }
                    }
                }
            }
            assert!(seen.iter().all(|s| *s));
        }
    }

    #[test]
    fn names() {
        let l = VariableLayout::fixed_first_turn(4);
        assert_eq!(l.name(0).unwrap(), "x_a^2");
        assert_eq!(l.name(11).unwrap(), "z_b^3");
        assert_eq!(l.name(12), None);
    }
}

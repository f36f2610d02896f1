//! Random per-pair axis selection for the overlap and crossing terms.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::encoder::layout::{Axis, VariableLayout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisChoice {
    pub i: usize,
    pub j: usize,
    pub axis: Axis,
}

/// One axis per overlap pair `(i, j)` and per crossing pair `(r, k)`, each
/// list sorted by pair.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AxisDraw {
    pub overlap: Vec<AxisChoice>,
    pub crossing: Vec<AxisChoice>,
}

fn lookup(list: &[AxisChoice], i: usize, j: usize) -> Option<Axis> {
    list.binary_search_by_key(&(i, j), |c| (c.i, c.j))
        .ok()
        .map(|idx| list[idx].axis)
}

impl AxisDraw {
    pub fn overlap_axis(&self, i: usize, j: usize) -> Option<Axis> {
        lookup(&self.overlap, i, j)
    }

    pub fn crossing_axis(&self, r: usize, k: usize) -> Option<Axis> {
        lookup(&self.crossing, r, k)
    }

    /// Every pair assigned the same axis.
    pub fn uniform(n_beads: usize, axis: Axis) -> Self {
        let wrap = |(i, j)| AxisChoice { i, j, axis };
        Self {
            overlap: overlap_pairs(n_beads).into_iter().map(wrap).collect(),
            crossing: crossing_pairs(n_beads).into_iter().map(wrap).collect(),
        }
    }

    /// Restores sort order after manual edits or deserialization.
    pub fn normalize(&mut self) {
        self.overlap.sort_by_key(|c| (c.i, c.j));
        self.crossing.sort_by_key(|c| (c.i, c.j));
    }
}

/// Non-adjacent bead pairs `(i, j)`, `1 <= i <= N-2`, `i+2 <= j <= N`.
pub fn overlap_pairs(n_beads: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n_beads.saturating_sub(2) {
        for j in i + 2..=n_beads {
            out.push((i, j));
        }
    }
    out
}

/// Bond pairs `(r, k)`, `1 <= r <= N-3`, `r+2 <= k <= N-1`.
pub fn crossing_pairs(n_beads: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 1..=n_beads.saturating_sub(3) {
        for k in r + 2..n_beads {
            out.push((r, k));
        }
    }
    out
}

/// Axis of the largest of three values; exact ties go to x, then y.
pub fn select_axis(a: f64, b: f64, c: f64) -> Axis {
    if a >= b && a >= c {
        Axis::X
    } else if b >= c {
        Axis::Y
    } else {
        Axis::Z
    }
}

/// Draws three standard normals per pair and keeps the axis of the largest.
/// Overlap pairs are drawn first, then crossing pairs, both in sorted order.
pub fn draw_axes<R: Rng + ?Sized>(rng: &mut R, layout: &VariableLayout) -> AxisDraw {
    let n = layout.n_beads();
    let mut pick = |(i, j): (usize, usize)| {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        let c: f64 = rng.sample(StandardNormal);
        AxisChoice {
            i,
            j,
            axis: select_axis(a, b, c),
        }
    };
    let overlap = overlap_pairs(n).into_iter().map(&mut pick).collect();
    let crossing = crossing_pairs(n).into_iter().map(&mut pick).collect();
    AxisDraw { overlap, crossing }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_counts() {
        for n in 3..12 {
            assert_eq!(overlap_pairs(n).len(), (n - 2) * (n - 1) / 2);
            assert_eq!(crossing_pairs(n).len(), (n - 3) * (n - 2) / 2);
        }
        assert!(overlap_pairs(2).is_empty());
        assert!(crossing_pairs(3).is_empty());
    }

    #[test]
    fn deterministic_given_seed() {
        let layout = VariableLayout::fixed_first_turn(10);
        let a = draw_axes(&mut ChaCha8Rng::seed_from_u64(5), &layout);
        let b = draw_axes(&mut ChaCha8Rng::seed_from_u64(5), &layout);
        let c = draw_axes(&mut ChaCha8Rng::seed_from_u64(6), &layout);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.overlap.len(), 36);
        assert_eq!(a.crossing.len(), 28);
        assert!(a.overlap_axis(1, 3).is_some());
        assert!(a.overlap_axis(1, 2).is_none());
        assert!(a.crossing_axis(7, 9).is_some());
    }

    #[test]
    fn ties_prefer_lower_axis() {
        assert_eq!(select_axis(1.0, 1.0, 1.0), Axis::X);
        assert_eq!(select_axis(0.0, 1.0, 1.0), Axis::Y);
        assert_eq!(select_axis(0.0, 0.5, 1.0), Axis::Z);
        assert_eq!(select_axis(2.0, 1.0, 1.0), Axis::X);
    }

    #[test]
    fn axes_are_balanced() {
        // 10^4 pairs: each frequency within 5 binomial sigmas of 1/3.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let layout = VariableLayout::all_turns(143);
        let draw = draw_axes(&mut rng, &layout);
        let pairs: Vec<_> = draw.overlap.iter().take(10_000).collect();
        assert_eq!(pairs.len(), 10_000);
        let n = pairs.len() as f64;
        let sigma = (n * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for axis in Axis::ALL {
            let count = pairs.iter().filter(|c| c.axis == axis).count() as f64;
            assert!((count - n / 3.0).abs() <= 5.0 * sigma, "{axis}: {count}");
        }
    }
}

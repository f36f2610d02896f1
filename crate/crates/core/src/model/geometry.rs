//! Turns, bit decoding, lattice coordinates and contact scoring.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::encoder::layout::{Axis, Half, VariableLayout};
use crate::error::{Error, Result};
use crate::model::sequence::{hydrophobic_pairs, HpSequence};

/// One lattice step, each component in `{-1, 0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i8; 3]", try_from = "[i8; 3]")]
pub struct Turn {
    pub x: i8,
    pub y: i8,
    pub z: i8,
}

impl Turn {
    pub const ZERO: Turn = Turn { x: 0, y: 0, z: 0 };
    pub const X_POS: Turn = Turn { x: 1, y: 0, z: 0 };

    pub fn new(x: i8, y: i8, z: i8) -> Result<Self> {
        for c in [x, y, z] {
            if !(-1..=1).contains(&c) {
                return Err(Error::TurnOutOfRange(c as i32));
            }
        }
        Ok(Self { x, y, z })
    }

    pub fn component(self, axis: Axis) -> i8 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Turn::ZERO
    }

    /// Body diagonal `(±1, ±1, ±1)`.
    pub fn is_steric_diagonal(self) -> bool {
        self.x != 0 && self.y != 0 && self.z != 0
    }

    /// The 26 non-zero moves of the cubic lattice with diagonals.
    pub fn alphabet() -> Vec<Turn> {
        let mut out = Vec::with_capacity(26);
        for x in -1..=1 {
            for y in -1..=1 {
                for z in -1..=1 {
                    let t = Turn { x, y, z };
                    if !t.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    /// Canonical `(a, b)` bits for one component: `1 -> (1,0)`, `-1 -> (0,1)`, `0 -> (0,0)`.
    pub fn component_bits(c: i8) -> (bool, bool) {
        match c {
            1 => (true, false),
            -1 => (false, true),
            _ => (false, false),
        }
    }
}

impl From<Turn> for [i8; 3] {
    fn from(t: Turn) -> Self {
        [t.x, t.y, t.z]
    }
}

impl TryFrom<[i8; 3]> for Turn {
    type Error = Error;

    fn try_from(v: [i8; 3]) -> Result<Self> {
        Turn::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// Ordered steps between consecutive beads; `N - 1` entries for `N` beads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TurnVector(pub Vec<Turn>);

impl TurnVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn turns(&self) -> &[Turn] {
        &self.0
    }

    /// Builds a turn vector from integer triples, checking component range.
    pub fn from_triples(triples: &[[i8; 3]]) -> Result<Self> {
        triples
            .iter()
            .map(|&t| Turn::try_from(t))
            .collect::<Result<Vec<_>>>()
            .map(TurnVector)
    }

    /// Canonical bit assignment for `layout` (the fixed first turn, if any, is dropped).
    pub fn to_bits(&self, layout: &VariableLayout) -> Result<Vec<bool>> {
        if self.len() != layout.n_steps() {
            return Err(Error::LengthMismatch {
                expected: layout.n_steps(),
                actual: self.len(),
            });
        }
        let mut bits = vec![false; layout.num_vars()];
        for step in layout.encoded_step_range() {
            let turn = self.0[step - 1];
            for axis in Axis::ALL {
                let (a, b) = Turn::component_bits(turn.component(axis));
                bits[layout.index(step, axis, Half::A).expect("encoded")] = a;
                bits[layout.index(step, axis, Half::B).expect("encoded")] = b;
            }
        }
        Ok(bits)
    }
}

pub type Coord = [i32; 3];

/// Lattice positions of every bead; the first bead sits at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Conformation {
    pub coords: Vec<Coord>,
}

impl Conformation {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Recovers the steps between consecutive coordinates.
    pub fn to_turns(&self) -> Result<TurnVector> {
        self.coords
            .windows(2)
            .map(|w| {
                let d = [w[1][0] - w[0][0], w[1][1] - w[0][1], w[1][2] - w[0][2]];
                for c in d {
                    if !(-1..=1).contains(&c) {
                        return Err(Error::TurnOutOfRange(c));
                    }
                }
                Ok(Turn {
                    x: d[0] as i8,
                    y: d[1] as i8,
                    z: d[2] as i8,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(TurnVector)
    }
}

/// Decodes a bit assignment into turns via `t = a - b` per axis. The layout's
/// fixed first turn, if any, is prepended.
pub fn decode_bitstring(bits: &[bool], layout: &VariableLayout) -> Result<TurnVector> {
    if bits.len() != layout.num_vars() {
        return Err(Error::LengthMismatch {
            expected: layout.num_vars(),
            actual: bits.len(),
        });
    }
    let mut turns = Vec::with_capacity(layout.n_steps());
    if let Some(t) = layout.fixed_first() {
        turns.push(t);
    }
    for chunk in bits.chunks_exact(6) {
        let c = |a: bool, b: bool| a as i8 - b as i8;
        turns.push(Turn {
            x: c(chunk[0], chunk[1]),
            y: c(chunk[2], chunk[3]),
            z: c(chunk[4], chunk[5]),
        });
    }
    Ok(TurnVector(turns))
}

/// Prefix sums of the turns, starting from the origin.
pub fn turns_to_coordinates(turns: &TurnVector) -> Conformation {
    let mut coords = Vec::with_capacity(turns.len() + 1);
    let mut p = [0i32; 3];
    coords.push(p);
    for t in turns.turns() {
        p = [p[0] + t.x as i32, p[1] + t.y as i32, p[2] + t.z as i32];
        coords.push(p);
    }
    Conformation { coords }
}

/// Chebyshev distance between two lattice points.
pub fn chebyshev(a: Coord, b: Coord) -> i32 {
    (0..3).map(|i| (a[i] - b[i]).abs()).max().unwrap_or(0)
}

/// Number of non-bonded H-H pairs at Chebyshev distance exactly 1 (Euclidean
/// 1, √2 or √3). The HP energy is the negation of this count.
pub fn count_contacts(conf: &Conformation, seq: &HpSequence) -> Result<usize> {
    if conf.len() != seq.len() {
        return Err(Error::LengthMismatch {
            expected: seq.len(),
            actual: conf.len(),
        });
    }
    Ok(hydrophobic_pairs(seq)
        .into_iter()
        .filter(|&(j, k)| chebyshev(conf.coords[j - 1], conf.coords[k - 1]) == 1)
        .count())
}

/// Weighted HP energy: minus the sum of pair weights over contacts.
pub fn contact_energy(conf: &Conformation, seq: &HpSequence) -> Result<f64> {
    if conf.len() != seq.len() {
        return Err(Error::LengthMismatch {
            expected: seq.len(),
            actual: conf.len(),
        });
    }
    let mut e = 0.0;
    for (j, k) in hydrophobic_pairs(seq) {
        if chebyshev(conf.coords[j - 1], conf.coords[k - 1]) == 1 {
            e -= seq.weight(j, k);
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sequence::parse_sequence;

    fn tv(t: &[[i8; 3]]) -> TurnVector {
        TurnVector::from_triples(t).unwrap()
    }

    #[test]
    fn alphabet_has_26_moves() {
        let a = Turn::alphabet();
        assert_eq!(a.len(), 26);
        assert_eq!(a.iter().filter(|t| t.is_steric_diagonal()).count(), 8);
    }

    #[test]
    fn decode_first_turn_example() {
        let layout = VariableLayout::all_turns(2);
        let bits = [false, true, false, false, true, false];
        assert_eq!(decode_bitstring(&bits, &layout).unwrap(), tv(&[[-1, 0, 1]]));
    }

    #[test]
    fn decode_degenerate_patterns() {
        let layout = VariableLayout::all_turns(3);
        let zeros = vec![false; 12];
        assert_eq!(decode_bitstring(&zeros, &layout).unwrap(), tv(&[[0, 0, 0], [0, 0, 0]]));
        let ones = vec![true; 12];
        assert_eq!(decode_bitstring(&ones, &layout).unwrap(), tv(&[[0, 0, 0], [0, 0, 0]]));
    }

    #[test]
    fn decode_prepends_fixed_turn() {
        let layout = VariableLayout::fixed_first_turn(3);
        let bits = [false, false, true, false, false, false];
        assert_eq!(decode_bitstring(&bits, &layout).unwrap(), tv(&[[1, 0, 0], [0, 1, 0]]));
        assert!(matches!(
            decode_bitstring(&bits[..5], &layout),
            Err(Error::LengthMismatch { expected: 6, actual: 5 })
        ));
    }

    #[test]
    fn coordinates_are_prefix_sums() {
        assert_eq!(turns_to_coordinates(&TurnVector::default()).coords, vec![[0, 0, 0]]);
        assert_eq!(
            turns_to_coordinates(&tv(&[[1, 0, 0], [0, 1, 0]])).coords,
            vec![[0, 0, 0], [1, 0, 0], [1, 1, 0]]
        );
        assert_eq!(
            turns_to_coordinates(&tv(&[[-1, 0, 1]])).coords,
            vec![[0, 0, 0], [-1, 0, 1]]
        );
    }

    #[test]
    fn contacts_use_unit_cube_proximity() {
        let hph = parse_sequence("HPH").unwrap();
        let c = Conformation {
            coords: vec![[0, 0, 0], [1, 0, 0], [1, 1, 0]],
        };
        assert_eq!(count_contacts(&c, &hph).unwrap(), 1);

        let hph_diag = Conformation {
            coords: vec![[0, 0, 0], [1, 0, 1], [1, 1, 1]],
        };
        assert_eq!(count_contacts(&hph_diag, &hph).unwrap(), 1);

        let far = Conformation {
            coords: vec![[0, 0, 0], [1, 0, 0], [2, 0, 0]],
        };
        assert_eq!(count_contacts(&far, &hph).unwrap(), 0);
        assert!(count_contacts(&far, &parse_sequence("HP").unwrap()).is_err());
    }

    #[test]
    fn bits_round_trip_for_canonical_turns() {
        let layout = VariableLayout::fixed_first_turn(4);
        let turns = tv(&[[1, 0, 0], [-1, 1, 0], [0, -1, 1]]);
        let bits = turns.to_bits(&layout).unwrap();
        assert_eq!(decode_bitstring(&bits, &layout).unwrap(), turns);
    }

    #[test]
    fn turn_range_is_checked() {
        assert!(Turn::new(2, 0, 0).is_err());
        assert!(serde_json::from_str::<Turn>("[0,-2,1]").is_err());
        assert_eq!(serde_json::from_str::<Turn>("[0,-1,1]").unwrap(), Turn { x: 0, y: -1, z: 1 });
    }
}

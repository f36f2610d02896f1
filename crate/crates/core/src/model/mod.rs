//! Sequences, turn decoding, lattice geometry, feasibility and contact scoring.

pub mod enumerate;
pub mod geometry;
pub mod sequence;
pub mod validate;

pub use enumerate::{enumerate_optimal, MAX_ENUMERATION_BEADS};
pub use geometry::{
    chebyshev, contact_energy, count_contacts, decode_bitstring, turns_to_coordinates, Conformation, Coord,
    Turn, TurnVector,
};
pub use sequence::{hydrophobic_pairs, max_contacts, parse_sequence, Bead, HpSequence};
pub use validate::{crossing_sum, crossing_sum_from_turns, validate, validate_assignment, FeasibilityReport};

//! Penalized quadratic encoding of the folding problem.

pub mod draw;
pub mod layout;
pub mod penalties;
pub mod poly;
pub mod qubo;
pub mod terms;

pub use draw::{crossing_pairs, draw_axes, overlap_pairs, select_axis, AxisChoice, AxisDraw};
pub use layout::{Axis, Half, VariableLayout};
pub use penalties::{calibrate_penalties, Calibration, PenaltyConfig, PenaltyOverrides, DEFAULT_LAMBDA3_HINT};
pub use poly::BinaryPolynomial;
pub use qubo::{assemble, encode, read_qubo, write_qubo, Components, EncodeOptions, QuboExport, QuboProblem};
pub use terms::{
    build_continuity, build_crossing, build_objective, build_overlap, build_pair_exclusion, crossing_form,
    turn_component, turn_square, ContinuityForm,
};

//! Assembly of the penalized quadratic objective and its file format.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::encoder::draw::{draw_axes, AxisDraw};
use crate::encoder::layout::VariableLayout;
use crate::encoder::penalties::{calibrate_penalties, Calibration, PenaltyConfig, PenaltyOverrides, DEFAULT_LAMBDA3_HINT};
use crate::encoder::poly::BinaryPolynomial;
use crate::encoder::terms::{
    build_continuity, build_crossing, build_objective, build_overlap, build_pair_exclusion, ContinuityForm,
};
use crate::error::{Error, Result};
use crate::model::sequence::{parse_sequence, HpSequence};

/// The unweighted pieces of the consolidated objective.
#[derive(Debug, Clone)]
pub struct Components {
    pub objective: BinaryPolynomial,
    pub continuity: BinaryPolynomial,
    pub overlap: BinaryPolynomial,
    pub crossing: BinaryPolynomial,
    pub pair_exclusion: BinaryPolynomial,
}

impl Components {
    pub fn build(seq: &HpSequence, layout: &VariableLayout, draw: &AxisDraw) -> Result<Self> {
        Ok(Self {
            objective: build_objective(seq, layout),
            continuity: build_continuity(layout, ContinuityForm::Quadratic),
            overlap: build_overlap(layout, draw)?,
            crossing: build_crossing(layout, draw)?,
            pair_exclusion: build_pair_exclusion(layout),
        })
    }

    /// `l0*Obj + l1*C1 - l2*C2 - l3*C3 + l4*C4`.
    pub fn combine(&self, p: &PenaltyConfig) -> BinaryPolynomial {
        let mut total = self.objective.scale(p.lambda0);
        total += &self.continuity.scale(p.lambda1);
        total -= &self.overlap.scale(p.lambda2);
        total -= &self.crossing.scale(p.lambda3);
        total += &self.pair_exclusion.scale(p.lambda4);
        total
    }
}

/// A quadratic binary problem together with everything needed to rebuild it.
#[derive(Debug, Clone)]
pub struct QuboProblem {
    pub polynomial: BinaryPolynomial,
    pub sequence: HpSequence,
    pub layout: VariableLayout,
    pub penalties: PenaltyConfig,
    pub axis_draw: AxisDraw,
    pub seed: u64,
}

impl QuboProblem {
    pub fn num_vars(&self) -> usize {
        self.layout.num_vars()
    }

    /// Value of the penalized objective; `bits` must match the layout exactly.
    pub fn evaluate(&self, bits: &[bool]) -> Result<f64> {
        if bits.len() != self.num_vars() {
            return Err(Error::LengthMismatch {
                expected: self.num_vars(),
                actual: bits.len(),
            });
        }
        self.polynomial.evaluate(bits)
    }
}

/// Combines the components with `penalties` and checks the result is quadratic.
pub fn assemble(
    seq: &HpSequence,
    layout: &VariableLayout,
    penalties: &PenaltyConfig,
    draw: &AxisDraw,
    seed: u64,
) -> Result<QuboProblem> {
    penalties.check()?;
    if layout.n_beads() != seq.len() {
        return Err(Error::LengthMismatch {
            expected: seq.len(),
            actual: layout.n_beads(),
        });
    }
    let polynomial = Components::build(seq, layout, draw)?.combine(penalties);
    let degree = polynomial.degree();
    if degree > 2 {
        return Err(Error::DegreeTooHigh(degree));
    }
    Ok(QuboProblem {
        polynomial,
        sequence: seq.clone(),
        layout: *layout,
        penalties: *penalties,
        axis_draw: draw.clone(),
        seed,
    })
}

/// Encoding choices that, together with a sequence and a seed, fully
/// determine a [`QuboProblem`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncodeOptions {
    pub fix_first_turn: bool,
    pub lambda3_hint: f64,
    pub overrides: PenaltyOverrides,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        Self {
            fix_first_turn: true,
            lambda3_hint: DEFAULT_LAMBDA3_HINT,
            overrides: PenaltyOverrides::default(),
        }
    }
}

impl EncodeOptions {
    pub fn layout(&self, seq: &HpSequence) -> VariableLayout {
        if self.fix_first_turn {
            VariableLayout::fixed_first_turn(seq.len())
        } else {
            VariableLayout::all_turns(seq.len())
        }
    }

    pub fn calibrate(&self, seq: &HpSequence) -> Result<Calibration> {
        calibrate_penalties(seq, self.lambda3_hint, &self.overrides)
    }
}

/// Calibrates penalties, draws axes from `seed` and assembles.
pub fn encode(seq: &HpSequence, options: &EncodeOptions, seed: u64) -> Result<QuboProblem> {
    let layout = options.layout(seq);
    let penalties = options.calibrate(seq)?.penalties;
    let draw = draw_axes(&mut ChaCha8Rng::seed_from_u64(seed), &layout);
    assemble(seq, &layout, &penalties, &draw, seed)
}

pub const QUBO_FORMAT: &str = "hpfold-qubo/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuboMetadata {
    pub sequence: String,
    /// Non-default H-H weights as `(j, k, w)`, 1-based.
    #[serde(default)]
    pub weights: Vec<(usize, usize, f64)>,
    pub seed: u64,
    pub penalties: PenaltyConfig,
    pub layout: VariableLayout,
    pub axis_draw: AxisDraw,
}

/// Serialized QUBO: `sum linear[i] x_i + sum quadratic[i,j] x_i x_j + constant`
/// with `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuboExport {
    pub format: String,
    pub num_variables: usize,
    pub variable_names: Vec<String>,
    pub constant: f64,
    pub linear: Vec<(usize, f64)>,
    pub quadratic: Vec<(usize, usize, f64)>,
    pub metadata: QuboMetadata,
}

impl QuboExport {
    pub fn from_problem(q: &QuboProblem) -> Self {
        let mut linear = Vec::new();
        let mut quadratic = Vec::new();
        for (vars, c) in q.polynomial.terms() {
            match *vars {
                [] => {}
                [i] => linear.push((i, c)),
                [i, j] => quadratic.push((i, j, c)),
                _ => unreachable!("assembled problems are quadratic"),
            }
        }
        Self {
            format: QUBO_FORMAT.to_string(),
            num_variables: q.num_vars(),
            variable_names: (0..q.num_vars())
                .map(|v| q.layout.name(v).expect("in range"))
                .collect(),
            constant: q.polynomial.constant_term(),
            linear,
            quadratic,
            metadata: QuboMetadata {
                sequence: q.sequence.to_string(),
                weights: q
                    .sequence
                    .explicit_weights()
                    .iter()
                    .map(|(&(j, k), &w)| (j, k, w))
                    .collect(),
                seed: q.seed,
                penalties: q.penalties,
                layout: q.layout,
                axis_draw: q.axis_draw.clone(),
            },
        }
    }

    pub fn into_problem(self) -> Result<QuboProblem> {
        if self.format != QUBO_FORMAT {
            return Err(Error::Format(format!("unknown QUBO format {:?}", self.format)));
        }
        if self.metadata.layout.num_vars() != self.num_variables {
            return Err(Error::Format("variable count disagrees with layout".into()));
        }
        let sequence = parse_sequence(&self.metadata.sequence)?.with_weights(self.metadata.weights.into_iter().map(|(j, k, w)| ((j, k), w)))?;
        let mut polynomial = BinaryPolynomial::constant(self.constant);
        for (i, c) in self.linear {
            polynomial.add_term(vec![i], c);
        }
        for (i, j, c) in self.quadratic {
            polynomial.add_term(vec![i, j], c);
        }
        if polynomial.num_vars() > self.num_variables {
            return Err(Error::Format("term references unknown variable".into()));
        }
        let mut axis_draw = self.metadata.axis_draw;
        axis_draw.normalize();
        Ok(QuboProblem {
            polynomial,
            sequence,
            layout: self.metadata.layout,
            penalties: self.metadata.penalties,
            axis_draw,
            seed: self.metadata.seed,
        })
    }
}

pub fn write_qubo(path: &Path, q: &QuboProblem) -> Result<()> {
    crate::io::write_json(path, &QuboExport::from_problem(q))
}

pub fn read_qubo(path: &Path) -> Result<QuboProblem> {
    crate::io::read_json::<QuboExport>(path)?.into_problem()
}

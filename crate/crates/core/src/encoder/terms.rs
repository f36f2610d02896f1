//! Builders for the objective and each constraint term.
//!
//! Every builder returns a [`BinaryPolynomial`] over the variables of a
//! [`VariableLayout`]. A fixed first turn is substituted as constants.

use crate::encoder::draw::{crossing_pairs, overlap_pairs, AxisDraw};
use crate::encoder::layout::{Axis, Half, VariableLayout};
use crate::encoder::poly::BinaryPolynomial;
use crate::error::{Error, Result};
use crate::model::sequence::{hydrophobic_pairs, HpSequence};

/// Variants of the continuity penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuityForm {
    /// High only for the zero turn. Degree 6 in the bits.
    AllowSteric,
    /// High for the zero turn and for body diagonals. Degree 4.
    PenalizeSteric,
    /// Quadratic rewrite of [`PenalizeSteric`](Self::PenalizeSteric) that
    /// agrees with it whenever no component has both bits set.
    Quadratic,
}

/// Linear form of one turn component, `a - b`.
pub fn turn_component(layout: &VariableLayout, step: usize, axis: Axis) -> BinaryPolynomial {
    match (layout.index(step, axis, Half::A), layout.index(step, axis, Half::B)) {
        (Some(a), Some(b)) => &BinaryPolynomial::var(a) - &BinaryPolynomial::var(b),
        _ => BinaryPolynomial::constant(fixed_component(layout, step, axis) as f64),
    }
}

/// `a + b`, which equals `|a - b|` whenever the pair is not `(1, 1)`.
fn component_magnitude(layout: &VariableLayout, step: usize, axis: Axis) -> BinaryPolynomial {
    match (layout.index(step, axis, Half::A), layout.index(step, axis, Half::B)) {
        (Some(a), Some(b)) => &BinaryPolynomial::var(a) + &BinaryPolynomial::var(b),
        _ => BinaryPolynomial::constant(fixed_component(layout, step, axis).abs() as f64),
    }
}

fn fixed_component(layout: &VariableLayout, step: usize, axis: Axis) -> i8 {
    assert!(
        step >= 1 && step <= layout.n_steps(),
        "step {step} outside 1..={}",
        layout.n_steps()
    );
    layout
        .fixed_first()
        .filter(|_| step == 1)
        .expect("unencoded step must be the fixed first turn")
        .component(axis)
}

/// Multilinear form of the squared turn component: `a + b - 2ab`.
pub fn turn_square(layout: &VariableLayout, step: usize, axis: Axis) -> BinaryPolynomial {
    turn_component(layout, step, axis).square()
}

/// `sum_{l=from}^{to} t_l` along `axis` (1-based, inclusive).
pub fn axis_sum(layout: &VariableLayout, from: usize, to: usize, axis: Axis) -> BinaryPolynomial {
    let mut s = BinaryPolynomial::zero();
    for l in from..=to {
        s += &turn_component(layout, l, axis);
    }
    s
}

/// Squared Euclidean distance between beads `j < k`.
pub fn squared_distance(layout: &VariableLayout, j: usize, k: usize) -> BinaryPolynomial {
    let mut d = BinaryPolynomial::zero();
    for axis in Axis::ALL {
        d += &axis_sum(layout, j, k - 1, axis).square();
    }
    d
}

/// Weighted sum of squared distances over all non-bonded H pairs.
pub fn build_objective(seq: &HpSequence, layout: &VariableLayout) -> BinaryPolynomial {
    let mut obj = BinaryPolynomial::zero();
    for (j, k) in hydrophobic_pairs(seq) {
        obj += &squared_distance(layout, j, k).scale(seq.weight(j, k));
    }
    obj
}

/// Continuity penalty summed over every step of the chain.
pub fn build_continuity(layout: &VariableLayout, form: ContinuityForm) -> BinaryPolynomial {
    let mut total = BinaryPolynomial::zero();
    for step in 1..=layout.n_steps() {
        total += &continuity_step(layout, step, form);
    }
    total
}

fn continuity_step(layout: &VariableLayout, step: usize, form: ContinuityForm) -> BinaryPolynomial {
    let [x2, y2, z2] = Axis::ALL.map(|a| turn_square(layout, step, a));
    let mut p = BinaryPolynomial::constant(1.0);
    p -= &x2;
    p -= &y2;
    p -= &z2;
    match form {
        ContinuityForm::AllowSteric | ContinuityForm::PenalizeSteric => {
            p += &(&x2 * &y2);
            p += &(&y2 * &z2);
            p += &(&z2 * &x2);
            if form == ContinuityForm::AllowSteric {
                p -= &(&(&x2 * &y2) * &z2);
            }
        }
        ContinuityForm::Quadratic => {
            let [xm, ym, zm] = Axis::ALL.map(|a| component_magnitude(layout, step, a));
            p += &(&xm * &ym);
            p += &(&ym * &zm);
            p += &(&zm * &xm);
        }
    }
    p
}

/// Sum over non-adjacent pairs of the squared separation along the drawn axis.
pub fn build_overlap(layout: &VariableLayout, draw: &AxisDraw) -> Result<BinaryPolynomial> {
    let mut total = BinaryPolynomial::zero();
    for (i, j) in overlap_pairs(layout.n_beads()) {
        let axis = draw.overlap_axis(i, j).ok_or(Error::MissingDraw(i, j))?;
        total += &axis_sum(layout, i, j - 1, axis).square();
    }
    Ok(total)
}

/// `t_k + t_r + 2 * sum_{j=r+1}^{k-1} t_j` along `axis`: the doubled offset
/// between the midpoints of bonds `(r, r+1)` and `(k, k+1)`.
pub fn crossing_form(layout: &VariableLayout, r: usize, k: usize, axis: Axis) -> BinaryPolynomial {
    let mut s = &turn_component(layout, k, axis) + &turn_component(layout, r, axis);
    if k > r + 1 {
        s += &axis_sum(layout, r + 1, k - 1, axis).scale(2.0);
    }
    s
}

/// Sum over bond pairs of the squared midpoint offset along the drawn axis.
pub fn build_crossing(layout: &VariableLayout, draw: &AxisDraw) -> Result<BinaryPolynomial> {
    let mut total = BinaryPolynomial::zero();
    for (r, k) in crossing_pairs(layout.n_beads()) {
        let axis = draw.crossing_axis(r, k).ok_or(Error::MissingDraw(r, k))?;
        total += &crossing_form(layout, r, k, axis).square();
    }
    Ok(total)
}

/// Counts components whose two bits are both set.
pub fn build_pair_exclusion(layout: &VariableLayout) -> BinaryPolynomial {
    let mut total = BinaryPolynomial::zero();
    for step in layout.encoded_step_range() {
        for axis in Axis::ALL {
            let a = layout.index(step, axis, Half::A).expect("encoded");
            let b = layout.index(step, axis, Half::B).expect("encoded");
            total.add_term(vec![a, b], 1.0);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::geometry::TurnVector;
    use crate::model::sequence::parse_sequence;

    fn bits_for(layout: &VariableLayout, t: &[[i8; 3]]) -> Vec<bool> {
        TurnVector::from_triples(t).unwrap().to_bits(layout).unwrap()
    }

    #[test]
    fn turn_square_truth_table() {
        let layout = VariableLayout::all_turns(2);
        let sq = turn_square(&layout, 1, Axis::X);
        let eval = |a, b| sq.evaluate(&[a, b, false, false, false, false]).unwrap();
        assert_eq!(eval(false, false), 0.0);
        assert_eq!(eval(true, true), 0.0);
        assert_eq!(eval(false, true), 1.0);
        assert_eq!(eval(true, false), 1.0);
        // symmetric under a <-> b
        let swapped = BinaryPolynomial::from_terms(sq.terms().map(|(k, c)| {
            (k.iter().map(|&v| if v == 0 { 1 } else if v == 1 { 0 } else { v }).collect(), c)
        }));
        assert_eq!(swapped, sq);
    }

    #[test]
    fn fixed_turn_square_is_constant() {
        let layout = VariableLayout::fixed_first_turn(3);
        assert_eq!(turn_square(&layout, 1, Axis::X), BinaryPolynomial::constant(1.0));
        assert!(turn_square(&layout, 1, Axis::Y).is_zero());
    }

    #[test]
    fn objective_values() {
        let layout = VariableLayout::all_turns(3);
        let seq = parse_sequence("HPH").unwrap();
        let obj = build_objective(&seq, &layout);
        assert_eq!(obj.evaluate(&bits_for(&layout, &[[1, 0, 0], [1, 0, 0]])).unwrap(), 4.0);
        assert_eq!(obj.evaluate(&bits_for(&layout, &[[1, 0, 0], [-1, 1, 0]])).unwrap(), 1.0);
        assert!(build_objective(&parse_sequence("PPP").unwrap(), &layout).is_zero());

        let mut weighted = seq.clone();
        weighted.set_weight(1, 3, 2.0).unwrap();
        assert_eq!(build_objective(&weighted, &layout), obj.scale(2.0));
    }

    #[test]
    fn continuity_examples() {
        let layout = VariableLayout::all_turns(2);
        let eval = |form, b: [bool; 6]| build_continuity(&layout, form).evaluate(&b).unwrap();
        for form in [ContinuityForm::AllowSteric, ContinuityForm::PenalizeSteric, ContinuityForm::Quadratic] {
            assert_eq!(eval(form, [false; 6]), 1.0);
            assert_eq!(eval(form, [true, false, false, false, false, false]), 0.0);
        }
        let diag = [true, false, true, false, true, false];
        assert_eq!(eval(ContinuityForm::PenalizeSteric, diag), 1.0);
        assert_eq!(eval(ContinuityForm::Quadratic, diag), 1.0);
        assert_eq!(eval(ContinuityForm::AllowSteric, diag), 0.0);
    }

    #[test]
    fn continuity_degrees() {
        let layout = VariableLayout::all_turns(4);
        assert_eq!(build_continuity(&layout, ContinuityForm::AllowSteric).degree(), 6);
        assert_eq!(build_continuity(&layout, ContinuityForm::PenalizeSteric).degree(), 4);
        assert_eq!(build_continuity(&layout, ContinuityForm::Quadratic).degree(), 2);
    }

    #[test]
    fn overlap_examples() {
        let layout = VariableLayout::all_turns(3);
        let p = build_overlap(&layout, &AxisDraw::uniform(3, Axis::X)).unwrap();
        assert_eq!(p.evaluate(&bits_for(&layout, &[[1, 0, 0], [-1, 0, 0]])).unwrap(), 0.0);
        assert_eq!(p.evaluate(&bits_for(&layout, &[[1, 0, 0], [1, 0, 0]])).unwrap(), 4.0);
        assert!(matches!(
            build_overlap(&layout, &AxisDraw::default()),
            Err(Error::MissingDraw(1, 3))
        ));
    }

    #[test]
    fn crossing_examples() {
        let layout = VariableLayout::all_turns(4);
        let straight = bits_for(&layout, &[[1, 0, 0]; 3]);
        let p = build_crossing(&layout, &AxisDraw::uniform(4, Axis::X)).unwrap();
        assert_eq!(p.evaluate(&straight).unwrap(), 16.0);

        let crossing = bits_for(&layout, &[[1, 1, 0], [0, -1, 0], [-1, 1, 0]]);
        for axis in Axis::ALL {
            let p = build_crossing(&layout, &AxisDraw::uniform(4, axis)).unwrap();
            assert_eq!(p.evaluate(&crossing).unwrap(), 0.0);
        }
    }

    #[test]
    fn pair_exclusion_examples() {
        let layout = VariableLayout::all_turns(2);
        let c4 = build_pair_exclusion(&layout);
        assert_eq!(c4.degree(), 2);
        assert_eq!(c4.evaluate(&[true, true, false, false, false, false]).unwrap(), 1.0);
        assert_eq!(c4.evaluate(&[false; 6]).unwrap(), 0.0);
        assert_eq!(c4.evaluate(&[true, false, true, false, true, false]).unwrap(), 0.0);
    }
}

//! Turn vectors, bitstrings and feasibility checks without any solver.

use hpfold::encoder::VariableLayout;
use hpfold::model::{
    count_contacts, decode_bitstring, parse_sequence, turns_to_coordinates, validate, validate_assignment,
    TurnVector,
};

fn main() -> hpfold::Result<()> {
    let seq = parse_sequence("HPHPH")?;
    let layout = VariableLayout::fixed_first_turn(seq.len());

    // A compact fold: out along x, diagonally back, then around.
    let good = TurnVector::from_triples(&[[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, 0, 1]])?;
    let bits = good.to_bits(&layout)?;
    let decoded = decode_bitstring(&bits, &layout)?;
    assert_eq!(decoded, good);

    let conf = turns_to_coordinates(&good);
    let report = validate(&good, &seq, true)?;
    println!("bits      {}", hpfold::io::bits_to_string(&bits));
    println!("coords    {:?}", conf.coords);
    println!("feasible  {}  contacts {}", report.feasible, count_contacts(&conf, &seq)?);

    // Walking straight back onto the first bead.
    let bad = TurnVector::from_triples(&[[1, 0, 0], [-1, 0, 0], [1, 0, 0], [1, 0, 0]])?;
    let report = validate(&bad, &seq, true)?;
    println!("\nbacktracking fold: feasible {}", report.feasible);
    println!("  overlaps   {:?}", report.overlap_violations);
    println!("  crossings  {:?}", report.crossing_violations);

    // Setting both halves of an axis is outside the encoding even though it
    // decodes to a zero component.
    let mut raw = good.to_bits(&layout)?;
    raw[0] = true;
    raw[1] = true;
    let report = validate_assignment(&raw, &layout, &seq, true)?;
    println!("\nexcluded bit pattern: {} violation(s)", report.violation_count());
    println!("  pair exclusion {:?}", report.pair_exclusion_violations);
    println!("  zero turns     {:?}", report.continuity_violations);
    Ok(())
}

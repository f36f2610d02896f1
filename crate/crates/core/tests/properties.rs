//! Invariants of the encoding, geometry and solvers on random inputs.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hpfold::encoder::{
    build_crossing, build_objective, crossing_form, crossing_pairs, draw_axes, encode, Components,
    EncodeOptions, PenaltyConfig, QuboExport, VariableLayout,
};
use hpfold::ising::{cvar, qubo_to_ising, SampleSet};
use hpfold::model::{
    count_contacts, crossing_sum, crossing_sum_from_turns, decode_bitstring, max_contacts, parse_sequence,
    turns_to_coordinates, validate, Conformation, HpSequence, Turn, TurnVector,
};
use hpfold::pipeline::{run_pipeline, RunConfig};
use hpfold::solvers::statevector::index_bits;
use hpfold::solvers::{anneal, exhaustive, postselect, AnnealSchedule, AnsatzSpec};

fn sequence(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = HpSequence> {
    prop::collection::vec(prop::bool::ANY, len).prop_map(|hs| {
        let text: String = hs.iter().map(|&h| if h { 'H' } else { 'P' }).collect();
        parse_sequence(&text).unwrap()
    })
}

/// Turn vectors for `n` beads with the first turn fixed to +x.
fn turns(n: usize) -> impl Strategy<Value = TurnVector> {
    let alphabet = Turn::alphabet();
    prop::collection::vec(prop::sample::select(alphabet), n - 2).prop_map(|rest| {
        let mut v = vec![Turn::new(1, 0, 0).unwrap()];
        v.extend(rest);
        TurnVector(v)
    })
}

fn sequence_and_bits(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (HpSequence, Vec<bool>)> {
    sequence(len).prop_flat_map(|seq| {
        let n = VariableLayout::fixed_first_turn(seq.len()).num_vars();
        (Just(seq), prop::collection::vec(prop::bool::ANY, n))
    })
}

fn sequence_and_turns(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (HpSequence, TurnVector)> {
    sequence(len).prop_flat_map(|seq| {
        let n = seq.len();
        (Just(seq), turns(n))
    })
}

/// Applies a signed permutation of the axes to every turn.
fn transform(t: &TurnVector, perm: [usize; 3], signs: [i8; 3]) -> TurnVector {
    TurnVector(
        t.turns()
            .iter()
            .map(|turn| {
                let c = [turn.x, turn.y, turn.z];
                Turn::new(signs[0] * c[perm[0]], signs[1] * c[perm[1]], signs[2] * c[perm[2]]).unwrap()
            })
            .collect(),
    )
}

fn brute_overlaps(conf: &Conformation) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..conf.len() {
        for j in i + 2..conf.len() {
            if conf.coords[i] == conf.coords[j] {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn turns_survive_the_bit_round_trip((seq, t) in sequence_and_turns(3..=12)) {
        let layout = VariableLayout::fixed_first_turn(seq.len());
        let bits = t.to_bits(&layout).unwrap();
        prop_assert_eq!(bits.len(), layout.num_vars());
        prop_assert_eq!(decode_bitstring(&bits, &layout).unwrap(), t);
    }

    #[test]
    fn any_bitstring_decodes_and_re_encodes((seq, bits) in sequence_and_bits(3..=10)) {
        let layout = VariableLayout::fixed_first_turn(seq.len());
        let t = decode_bitstring(&bits, &layout).unwrap();
        prop_assert_eq!(t.len(), seq.len() - 1);
        let again = t.to_bits(&layout).unwrap();
        prop_assert_eq!(decode_bitstring(&again, &layout).unwrap(), t);
    }

    #[test]
    fn contacts_and_feasibility_are_symmetric(
        (seq, t) in sequence_and_turns(3..=10),
        perm in prop::sample::select(PERMS.to_vec()),
        signs in prop::array::uniform3(prop::sample::select(vec![-1i8, 1])),
        shift in prop::array::uniform3(-5i32..=5),
    ) {
        let conf = turns_to_coordinates(&t);
        let contacts = count_contacts(&conf, &seq).unwrap();
        let feasible = validate(&t, &seq, true).unwrap().feasible;

        let moved = transform(&t, perm, signs);
        prop_assert_eq!(count_contacts(&turns_to_coordinates(&moved), &seq).unwrap(), contacts);
        prop_assert_eq!(validate(&moved, &seq, true).unwrap().feasible, feasible);

        let translated = Conformation {
            coords: conf.coords.iter().map(|p| [p[0] + shift[0], p[1] + shift[1], p[2] + shift[2]]).collect(),
        };
        prop_assert_eq!(count_contacts(&translated, &seq).unwrap(), contacts);
    }

    #[test]
    fn overlap_report_matches_pairwise_scan((seq, t) in sequence_and_turns(3..=10)) {
        let conf = turns_to_coordinates(&t);
        let report = validate(&t, &seq, true).unwrap();
        prop_assert_eq!(&report.overlap_violations, &brute_overlaps(&conf));
    }

    #[test]
    fn feasible_folds_respect_the_contact_bound((seq, t) in sequence_and_turns(3..=10)) {
        if validate(&t, &seq, true).unwrap().feasible {
            let conf = turns_to_coordinates(&t);
            prop_assert!(count_contacts(&conf, &seq).unwrap() <= max_contacts(&seq));
        }
    }

    #[test]
    fn crossing_sum_in_turns_matches_coordinates((seq, t) in sequence_and_turns(4..=10)) {
        let conf = turns_to_coordinates(&t);
        for (r, k) in crossing_pairs(seq.len()) {
            prop_assert_eq!(crossing_sum(&conf, r, k), crossing_sum_from_turns(&t, r, k));
        }
    }

    #[test]
    fn polynomial_terms_match_decoded_geometry((seq, bits) in sequence_and_bits(4..=8), seed in any::<u64>()) {
        let layout = VariableLayout::fixed_first_turn(seq.len());
        let t = decode_bitstring(&bits, &layout).unwrap();
        let conf = turns_to_coordinates(&t);

        let mut direct = 0.0;
        for (j, k) in hpfold::model::hydrophobic_pairs(&seq) {
            let (a, b) = (conf.coords[j - 1], conf.coords[k - 1]);
            let d2: i32 = (0..3).map(|i| (a[i] - b[i]).pow(2)).sum();
            direct += seq.weight(j, k) * d2 as f64;
        }
        let obj = build_objective(&seq, &layout).evaluate(&bits).unwrap();
        prop_assert!((obj - direct).abs() < 1e-9);

        let draw = draw_axes(&mut ChaCha8Rng::seed_from_u64(seed), &layout);
        let mut squares = 0.0;
        for (r, k) in crossing_pairs(seq.len()) {
            let axis = draw.crossing_axis(r, k).unwrap();
            let s = crossing_sum_from_turns(&t, r, k)[axis.index()];
            let form = crossing_form(&layout, r, k, axis).evaluate(&bits).unwrap();
            prop_assert!((form - s as f64).abs() < 1e-9);
            squares += (s * s) as f64;
        }
        let crossing = build_crossing(&layout, &draw).unwrap().evaluate(&bits).unwrap();
        prop_assert!((crossing - squares).abs() < 1e-9);
    }

    #[test]
    fn combine_is_linear_in_the_weights(
        (seq, bits) in sequence_and_bits(4..=7),
        l in prop::array::uniform5(0.0f64..20.0),
        seed in any::<u64>(),
    ) {
        let layout = VariableLayout::fixed_first_turn(seq.len());
        let draw = draw_axes(&mut ChaCha8Rng::seed_from_u64(seed), &layout);
        let c = Components::build(&seq, &layout, &draw).unwrap();
        let p = PenaltyConfig { lambda0: l[0], lambda1: l[1], lambda2: l[2], lambda3: l[3], lambda4: l[4] };
        let e = |poly: &hpfold::encoder::BinaryPolynomial| poly.evaluate(&bits).unwrap();
        let expected = l[0] * e(&c.objective) + l[1] * e(&c.continuity) - l[2] * e(&c.overlap)
            - l[3] * e(&c.crossing) + l[4] * e(&c.pair_exclusion);
        let got = e(&c.combine(&p));
        prop_assert!((got - expected).abs() <= 1e-9 * expected.abs().max(1.0));
    }

    #[test]
    fn ising_form_matches_the_qubo((seq, bits) in sequence_and_bits(3..=9), seed in any::<u64>()) {
        let q = encode(&seq, &EncodeOptions::default(), seed).unwrap();
        let op = qubo_to_ising(&q);
        let (a, b) = (q.evaluate(&bits).unwrap(), op.energy(&bits).unwrap());
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn qubo_export_round_trips(seq in sequence(3..=8), seed in any::<u64>()) {
        let q = encode(&seq, &EncodeOptions::default(), seed).unwrap();
        let json = serde_json::to_string(&QuboExport::from_problem(&q)).unwrap();
        let back = serde_json::from_str::<QuboExport>(&json).unwrap().into_problem().unwrap();
        prop_assert_eq!(back.polynomial, q.polynomial);
        prop_assert_eq!(back.penalties, q.penalties);
        prop_assert_eq!(back.axis_draw, q.axis_draw);
    }

    #[test]
    fn cvar_is_monotone_in_alpha(
        energies in prop::collection::vec(-100.0f64..100.0, 1..60),
        a in 0.01f64..=1.0,
        b in 0.01f64..=1.0,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let min = energies.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = energies.iter().sum::<f64>() / energies.len() as f64;
        let (c_lo, c_hi) = (cvar(&energies, lo).unwrap(), cvar(&energies, hi).unwrap());
        prop_assert!(c_lo <= c_hi + 1e-9);
        prop_assert!(min <= c_lo + 1e-9);
        prop_assert!((cvar(&energies, 1.0).unwrap() - mean).abs() < 1e-9);
    }

    #[test]
    fn ansatz_states_are_normalized(
        qubits in 1usize..=8,
        reps in 1usize..=2,
        raw in prop::collection::vec(-10.0f64..10.0, 48),
    ) {
        let ansatz = AnsatzSpec::new(qubits, reps).unwrap();
        let psi = ansatz.prepare(&raw[..ansatz.num_parameters()]).unwrap();
        prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn postselection_ignores_sample_order(
        (seq, pool) in sequence(4..=6).prop_flat_map(|seq| {
            let n = VariableLayout::fixed_first_turn(seq.len()).num_vars();
            (Just(seq), prop::collection::vec(prop::collection::vec(prop::bool::ANY, n), 1..80))
        }),
        seed in any::<u64>(),
        shuffle in any::<u64>(),
    ) {
        let q = encode(&seq, &EncodeOptions::default(), seed).unwrap();
        let obs = |v: &[Vec<bool>]| {
            SampleSet::from_observations(v.iter().map(|b| (b.clone(), 1, q.evaluate(b).unwrap())))
        };
        let mut shuffled = pool.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        for top_k in [5, 4000] {
            let a = postselect(&obs(&pool), &q, top_k, true).unwrap();
            let b = postselect(&obs(&shuffled), &q, top_k, true).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn exhaustive_bounds_annealing(seq in sequence(3..=5), seed in any::<u64>()) {
        let q = encode(&seq, &EncodeOptions::default(), seed).unwrap();
        let scan = exhaustive(&q, 16).unwrap();
        let schedule = AnnealSchedule { restarts: 3, sweeps: 100, seed, ..Default::default() };
        let r = anneal(&q, &schedule).unwrap();
        prop_assert!(scan.best_value <= r.best_value + 1e-9);
        prop_assert!((q.evaluate(&r.best_bits).unwrap() - r.best_value).abs() < 1e-9);
        for s in &r.samples.samples {
            prop_assert!(r.best_value <= s.energy + 1e-9);
        }
        let op = qubo_to_ising(&q);
        if op.n <= 12 {
            let diag = op.diagonal();
            let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert!((min - scan.best_value).abs() < 1e-9);
            let mean = diag.iter().sum::<f64>() / diag.len() as f64;
            prop_assert!((mean - op.constant).abs() < 1e-9 * mean.abs().max(1.0));
            prop_assert_eq!(index_bits(0, op.n), vec![false; op.n]);
        }
    }

    #[test]
    fn pipeline_is_deterministic(seq in sequence(4..=6), seed in any::<u64>()) {
        let mut cfg = RunConfig::new(seq);
        cfg.seed = seed;
        cfg.draws = 3;
        cfg.schedule.restarts = 2;
        cfg.schedule.sweeps = 60;
        let (a, b) = (run_pipeline(&cfg).unwrap(), run_pipeline(&cfg).unwrap());
        prop_assert_eq!(a.best_draw, b.best_draw);
        for (x, y) in a.draws.iter().zip(&b.draws) {
            prop_assert_eq!(&x.result, &y.result);
        }
    }
}


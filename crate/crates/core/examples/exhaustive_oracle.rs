//! Cross-checks three independent answers on a short chain: a scan of every
//! QUBO assignment, direct enumeration of lattice walks, and annealing.

use hpfold::encoder::{encode, EncodeOptions};
use hpfold::model::{enumerate_optimal, parse_sequence};
use hpfold::solvers::{anneal, exhaustive, AnnealSchedule};

fn main() -> hpfold::Result<()> {
    let seq = parse_sequence("HPPHH")?;
    let q = encode(&seq, &EncodeOptions::default(), 1)?;

    let (optimum, witness) = enumerate_optimal(&seq, true)?;
    println!("enumeration   {optimum} contacts, e.g. {:?}", witness.coords);

    let started = std::time::Instant::now();
    let mut scan = exhaustive(&q, 4000)?;
    let sel = scan.postselect(&q, 4000, true)?.clone();
    println!(
        "QUBO scan     2^{} states in {:.2?}: minimum {:.4}, {} contacts (feasible {})",
        q.num_vars(),
        started.elapsed(),
        scan.best_value,
        sel.contacts,
        sel.feasible
    );

    let schedule = AnnealSchedule {
        restarts: 8,
        sweeps: 500,
        seed: 3,
        ..Default::default()
    };
    let mut annealed = anneal(&q, &schedule)?;
    let sel = annealed.postselect(&q, 4000, true)?.clone();
    println!(
        "annealing     best {:.4} at sweep {}, {} contacts",
        annealed.best_value, annealed.iterations_to_best, sel.contacts
    );
    assert!(scan.best_value <= annealed.best_value + 1e-9);
    Ok(())
}

//! Convert a QUBO into spin form and check both agree on every state.

use hpfold::encoder::{encode, EncodeOptions};
use hpfold::ising::{qubo_to_ising, IsingExport, SPIN_CONVENTION};
use hpfold::model::parse_sequence;
use hpfold::solvers::statevector::index_bits;

fn main() -> hpfold::Result<()> {
    let seq = parse_sequence("HPPH")?;
    let q = encode(&seq, &EncodeOptions::default(), 2)?;
    let op = qubo_to_ising(&q);

    let mut worst: f64 = 0.0;
    for idx in 0..1usize << op.n {
        let bits = index_bits(idx, op.n);
        worst = worst.max((q.evaluate(&bits)? - op.energy(&bits)?).abs());
    }
    let export = IsingExport::from(&op);
    println!("convention      {SPIN_CONVENTION}");
    println!("qubits          {}", export.num_qubits);
    println!("fields          {}", export.h.len());
    println!("couplings       {}", export.j.len());
    println!("constant        {:.4}", export.constant);
    println!("max |QUBO - Ising| over {} states: {worst:.2e}", 1usize << op.n);

    let path = std::env::temp_dir().join("hpfold-example-ising.json");
    hpfold::io::write_json(&path, &export)?;
    println!("wrote           {}", path.display());
    Ok(())
}

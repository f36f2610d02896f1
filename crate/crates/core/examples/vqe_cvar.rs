//! CVaR-VQE on the exact statevector simulator, over a few tail fractions.

use hpfold::encoder::{encode, EncodeOptions};
use hpfold::ising::qubo_to_ising;
use hpfold::model::parse_sequence;
use hpfold::solvers::{vqe_statevector, AnsatzSpec, VqeOptions};

fn main() -> hpfold::Result<()> {
    let seq = parse_sequence("HPH")?;
    let q = encode(&seq, &EncodeOptions::default(), 5)?;
    let op = qubo_to_ising(&q);
    let ansatz = AnsatzSpec::new(op.n, 1)?;
    println!("{} qubits, {} parameters", ansatz.qubits, ansatz.num_parameters());

    for alpha in [0.05, 0.25, 1.0] {
        let opts = VqeOptions {
            alpha,
            seed: 11,
            ..Default::default()
        };
        let mut r = vqe_statevector(&op, &ansatz, &opts)?;
        let final_cvar = r.trace.last().map_or(f64::NAN, |t| t.best_so_far);
        let sel = r.postselect(&q, 4000, true)?.clone();
        println!(
            "alpha {alpha:<4}  CVaR {final_cvar:>9.4} after {:>3} steps  tail CVaR of readout {:>9.4}  contacts {} (feasible {})",
            r.trace.len(),
            r.samples.cvar(alpha)?,
            sel.contacts,
            sel.feasible
        );
    }
    Ok(())
}

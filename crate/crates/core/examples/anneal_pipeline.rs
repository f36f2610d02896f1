//! The full multi-draw pipeline with simulated annealing.
//!
//! `cargo run --release --example anneal_pipeline -- HPPHPPHPHH`

use hpfold::model::parse_sequence;
use hpfold::pipeline::{run_pipeline, xyz_text, RunConfig, SolverKind};

fn main() -> hpfold::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "HPPHPPHPHH".into());
    let mut cfg = RunConfig::new(parse_sequence(&text)?);
    cfg.solver = SolverKind::Anneal;
    cfg.draws = 10;
    cfg.seed = 7;
    cfg.schedule.restarts = 10;
    cfg.schedule.sweeps = 1000;

    let started = std::time::Instant::now();
    let result = run_pipeline(&cfg)?;
    println!("{} draws in {:.2?}", cfg.draws, started.elapsed());
    for d in &result.draws {
        let s = d.selection();
        println!(
            "draw {:>2}  feasible {:<5}  contacts {:>2}  qubo {:>10.3}  feasible states {}/{}",
            d.draw, s.feasible, s.contacts, s.qubo_value, s.feasible_candidates, s.candidates
        );
    }
    let best = result.selection();
    println!("\nbest draw {}: {} of {} contacts", result.best_draw, best.contacts, result.max_contacts);
    print!("{}", xyz_text(&cfg.sequence, &best.conformation));
    Ok(())
}

//! Encode a sequence as a QUBO and look at what went into it.
//!
//! `cargo run --example encode_qubo -- HPPHPPHPHH 7`

use hpfold::encoder::{encode, EncodeOptions, QuboExport};
use hpfold::model::{max_contacts, parse_sequence};

fn main() -> hpfold::Result<()> {
    let mut args = std::env::args().skip(1);
    let seq = parse_sequence(&args.next().unwrap_or_else(|| "HPPHPPHPHH".into()))?;
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let options = EncodeOptions::default();
    let cal = options.calibrate(&seq)?;
    let q = encode(&seq, &options, seed)?;
    let p = &cal.penalties;

    println!("sequence          {seq} ({} beads, max {} contacts)", seq.len(), max_contacts(&seq));
    println!("variables         {}", q.num_vars());
    println!("term counts       objective {}, overlap {}, crossing {}", cal.n0, cal.n2, cal.n3);
    println!(
        "penalties         l0 {:.4}  l1 {:.4}  l2 {:.4}  l3 {:.4}  l4 {:.4}",
        p.lambda0, p.lambda1, p.lambda2, p.lambda3, p.lambda4
    );
    println!("monomials         {} (degree {})", q.polynomial.len(), q.polynomial.degree());
    println!("largest |coef|    {:.4}", q.polynomial.max_abs_coefficient());
    println!("constant          {:.4}", q.polynomial.constant_term());

    let export = QuboExport::from_problem(&q);
    let path = std::env::temp_dir().join("hpfold-example-qubo.json");
    hpfold::io::write_json(&path, &export)?;
    let back = hpfold::encoder::read_qubo(&path)?;
    assert_eq!(back.polynomial, q.polynomial);
    println!("round-tripped     {}", path.display());
    Ok(())
}

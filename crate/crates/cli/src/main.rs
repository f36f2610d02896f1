//! `hpfold`: fold an HP sequence end to end and write the results.
//!
//! Every flag can also be given in a TOML file passed with `--config`,
//! keyed by the flag name (`top-k = 4000`, `format = "json,xyz"`); flags on
//! the command line win.
//!
//! Exit codes: 0 on success (including runs whose best fold is infeasible,
//! which is reported), 2 for invalid configuration or input, 3 for I/O
//! failures, 1 for anything else.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use hpfold::model::parse_sequence;
use hpfold::pipeline::{emit, read_params, read_weights, run_pipeline, OutputFormat, RunConfig, SolverKind};
use hpfold::Error;
use serde::{Deserialize, Deserializer};

#[derive(Debug, Default, Parser, Deserialize)]
#[command(name = "hpfold", version, about = "HP lattice protein folding via QUBO encoding")]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct Settings {
    /// H/P sequence, e.g. HPPHPPHPHH
    #[arg(long, conflicts_with = "seq_file")]
    seq: Option<String>,
    /// File holding the sequence (lines starting with '#' are ignored)
    #[arg(long)]
    seq_file: Option<PathBuf>,
    /// anneal, exhaustive or vqe
    #[arg(long)]
    solver: Option<String>,
    /// Independent axis draws; the best outcome is reported
    #[arg(long)]
    draws: Option<usize>,
    /// Annealing restarts per draw
    #[arg(long)]
    restarts: Option<usize>,
    /// Annealing sweeps per restart
    #[arg(long)]
    sweeps: Option<usize>,
    /// Initial annealing temperature (default: 10 x largest coefficient)
    #[arg(long)]
    t_initial: Option<f64>,
    /// Final annealing temperature
    #[arg(long)]
    t_final: Option<f64>,
    /// CVaR tail fraction for VQE, in (0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Shots per VQE objective evaluation (0 = exact probabilities)
    #[arg(long)]
    shots: Option<u64>,
    /// VQE ansatz repetitions (1 or 2)
    #[arg(long)]
    reps: Option<usize>,
    /// VQE optimizer iteration cap
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Lowest-energy distinct states inspected by post-selection
    #[arg(long)]
    top_k: Option<usize>,
    /// Fix the first turn to (1,0,0) and encode the rest
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    fix_first_turn: Option<bool>,
    /// Accept body-diagonal turns as valid
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    allow_steric: Option<bool>,
    /// Objective weight (default: balanced against the distance penalties)
    #[arg(long)]
    lambda0: Option<f64>,
    /// Continuity penalty
    #[arg(long)]
    lambda1: Option<f64>,
    /// Overlap separation weight
    #[arg(long)]
    lambda2: Option<f64>,
    /// Crossing separation weight
    #[arg(long)]
    lambda3: Option<f64>,
    /// Bit-pair exclusion penalty
    #[arg(long)]
    lambda4: Option<f64>,
    /// Crossing weight used when calibrating the objective weight
    #[arg(long)]
    lambda3_hint: Option<f64>,
    /// CSV of j,k,w rows overriding H-H interaction weights
    #[arg(long)]
    weights_file: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Comma-separated subset of json,xyz,csv
    #[arg(long, value_delimiter = ',')]
    #[serde(default, deserialize_with = "comma_list")]
    format: Option<Vec<String>>,
    /// Also write the winning QUBO and its Ising form
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    export_qubo: Option<bool>,
    /// Start VQE from parameters in a params.json file
    #[arg(long)]
    resume_params: Option<PathBuf>,
    /// TOML file with defaults for any of the flags above
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

fn comma_list<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<String>>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum List {
        One(String),
        Many(Vec<String>),
    }
    Ok(Some(match List::deserialize(d)? {
        List::One(s) => s.split(',').map(|p| p.trim().to_string()).collect(),
        List::Many(v) => v,
    }))
}

macro_rules! fill_from {
    ($cli:ident, $file:ident, $($field:ident),+ $(,)?) => {
        $( if $cli.$field.is_none() { $cli.$field = $file.$field; } )+
    };
}

impl Settings {
    /// Fills every flag not given on the command line from `file`.
    fn merge(mut self, file: Settings) -> Settings {
        fill_from!(
            self, file, seq, seq_file, solver, draws, restarts, sweeps, t_initial, t_final, alpha, shots, reps,
            max_iterations, top_k, fix_first_turn, allow_steric, lambda0, lambda1, lambda2, lambda3, lambda4,
            lambda3_hint, weights_file, seed, out_dir, format, export_qubo, resume_params,
        );
        if self.seq.is_some() && self.seq_file.is_some() {
            // A sequence on the command line beats a file from the config.
            self.seq_file = None;
        }
        self
    }
}

fn load_config(path: &Path) -> hpfold::Result<Settings> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn read_sequence_file(path: &Path) -> hpfold::Result<String> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

fn build_config(s: &Settings) -> hpfold::Result<RunConfig> {
    let text = match (&s.seq, &s.seq_file) {
        (Some(seq), _) => seq.clone(),
        (None, Some(path)) => read_sequence_file(path)?,
        (None, None) => return Err(Error::Config("a sequence is required (--seq or --seq-file)".into())),
    };
    let mut sequence = parse_sequence(&text)?;
    if let Some(path) = &s.weights_file {
        sequence = sequence.with_weights(read_weights(path)?)?;
    }
    let mut cfg = RunConfig::new(sequence);
    if let Some(solver) = &s.solver {
        cfg.solver = solver.parse::<SolverKind>()?;
    }
    if let Some(v) = s.draws {
        cfg.draws = v;
    }
    if let Some(v) = s.seed {
        cfg.seed = v;
    }
    if let Some(v) = s.top_k {
        cfg.top_k = v;
    }
    if let Some(v) = s.fix_first_turn {
        cfg.encode.fix_first_turn = v;
    }
    if let Some(v) = s.allow_steric {
        cfg.allow_steric = v;
    }
    if let Some(v) = s.lambda3_hint {
        cfg.encode.lambda3_hint = v;
    }
    let o = &mut cfg.encode.overrides;
    (o.lambda0, o.lambda1, o.lambda2, o.lambda3, o.lambda4) = (s.lambda0, s.lambda1, s.lambda2, s.lambda3, s.lambda4);

    if let Some(v) = s.restarts {
        cfg.schedule.restarts = v;
    }
    if let Some(v) = s.sweeps {
        cfg.schedule.sweeps = v;
    }
    if s.t_initial.is_some() {
        cfg.schedule.t_initial = s.t_initial;
    }
    if let Some(v) = s.t_final {
        cfg.schedule.t_final = v;
    }
    if let Some(v) = s.alpha {
        cfg.vqe.alpha = v;
    }
    if let Some(v) = s.shots {
        cfg.vqe.shots = v;
    }
    if let Some(v) = s.max_iterations {
        cfg.vqe.max_iterations = v;
    }
    if let Some(v) = s.reps {
        cfg.reps = v;
    }
    if let Some(path) = &s.resume_params {
        cfg.vqe.initial_params = Some(read_params(path)?);
    }

    if let Some(dir) = &s.out_dir {
        cfg.output.out_dir = dir.clone();
    }
    if let Some(formats) = &s.format {
        cfg.output.formats = formats
            .iter()
            .filter(|f| !f.trim().is_empty())
            .map(|f| f.parse::<OutputFormat>())
            .collect::<hpfold::Result<_>>()?;
    }
    if let Some(v) = s.export_qubo {
        cfg.output.export_qubo = v;
    }
    Ok(cfg)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } | Error::Json { .. } | Error::Csv { .. } => 3,
        Error::InvalidBead { .. }
        | Error::SequenceTooShort(_)
        | Error::InvalidWeight { .. }
        | Error::NegativePenalty { .. }
        | Error::ExhaustiveTooLarge { .. }
        | Error::QubitBudget { .. }
        | Error::AlphaOutOfRange(_)
        | Error::Config(_)
        | Error::Format(_)
        | Error::LengthMismatch { .. } => 2,
        _ => 1,
    }
}

fn run(cli: Settings) -> hpfold::Result<()> {
    let settings = match &cli.config {
        Some(path) => {
            let file = load_config(path)?;
            cli.merge(file)
        }
        None => cli,
    };
    let cfg = build_config(&settings)?;
    let result = run_pipeline(&cfg)?;
    let written = emit(&cfg, &result)?;

    let sel = result.selection();
    println!("sequence      {}", cfg.sequence);
    println!("solver        {} ({} draws, seed {})", cfg.solver, cfg.draws, cfg.seed);
    println!("variables     {}", result.problem.num_vars());
    println!("best draw     {}", result.best_draw);
    println!("feasible      {}", sel.feasible);
    println!("contacts      {} of max {}", sel.contacts, result.max_contacts);
    if !sel.feasible {
        println!("violations    {}", sel.report.violation_count());
    }
    println!("qubo value    {}", sel.qubo_value);
    for path in written {
        println!("wrote         {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Settings::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

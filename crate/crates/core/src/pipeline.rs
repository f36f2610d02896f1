//! End-to-end runs: repeated axis draws, solving, post-selection and result
//! files.
//!
//! Every draw gets its own seed derived from the run seed, encodes the
//! sequence with a fresh axis draw, solves, and post-selects. The best
//! draw is the one with a feasible fold and the most contacts (ties: lower
//! objective, then lower draw index), so the outcome does not depend on
//! thread scheduling.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoder::penalties::PenaltyConfig;
use crate::encoder::qubo::{encode, write_qubo, EncodeOptions, QuboProblem};
use crate::error::{Error, Result};
use crate::io::{bits_to_string, read_json, write_json, write_text};
use crate::ising::IsingExport;
use crate::model::geometry::{count_contacts, turns_to_coordinates, Conformation, TurnVector};
use crate::model::sequence::{max_contacts, parse_sequence, HpSequence};
use crate::model::validate::{validate, FeasibilityReport};
use crate::rng::derive_seed;
use crate::solvers::{
    anneal, exhaustive, vqe_statevector, AnnealSchedule, AnsatzSpec, Entangler, Selection, SolveResult,
    VqeOptions, DEFAULT_TOP_K, MAX_EXHAUSTIVE_VARS, MAX_STATEVECTOR_QUBITS,
};

pub const RESULT_FORMAT: &str = "hpfold-result/1";
pub const DEFAULT_DRAWS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    #[default]
    Anneal,
    Exhaustive,
    Vqe,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Anneal => "anneal",
            SolverKind::Exhaustive => "exhaustive",
            SolverKind::Vqe => "vqe",
        })
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "anneal" => Ok(SolverKind::Anneal),
            "exhaustive" => Ok(SolverKind::Exhaustive),
            "vqe" => Ok(SolverKind::Vqe),
            other => Err(Error::Config(format!("unknown solver {other:?} (anneal, exhaustive, vqe)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Xyz,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "xyz" => Ok(OutputFormat::Xyz),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!("unknown output format {other:?} (json, xyz, csv)"))),
        }
    }
}

/// Where and what [`emit`] writes.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub out_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
    /// Also write the winning draw's QUBO and Ising operator.
    pub export_qubo: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self {
            out_dir: PathBuf::from("out"),
            formats: vec![OutputFormat::Json, OutputFormat::Xyz, OutputFormat::Csv],
            export_qubo: false,
        }
    }
}

/// Everything a run needs. Solver seeds inside `schedule` and `vqe` are
/// ignored; each draw derives its own from `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub sequence: HpSequence,
    pub solver: SolverKind,
    /// Number of independent axis draws; the best outcome wins.
    pub draws: usize,
    pub seed: u64,
    pub encode: EncodeOptions,
    pub allow_steric: bool,
    pub top_k: usize,
    pub schedule: AnnealSchedule,
    pub reps: usize,
    pub entangler: Entangler,
    pub vqe: VqeOptions,
    pub output: OutputOptions,
}

impl RunConfig {
    pub fn new(sequence: HpSequence) -> Self {
        Self {
            sequence,
            solver: SolverKind::Anneal,
            draws: DEFAULT_DRAWS,
            seed: 0,
            encode: EncodeOptions::default(),
            allow_steric: true,
            top_k: DEFAULT_TOP_K,
            schedule: AnnealSchedule::default(),
            reps: 1,
            entangler: Entangler::Linear,
            vqe: VqeOptions::default(),
            output: OutputOptions::default(),
        }
    }

    /// Number of binary variables each draw's problem has.
    pub fn num_vars(&self) -> usize {
        self.encode.layout(&self.sequence).num_vars()
    }

    pub fn ansatz(&self) -> AnsatzSpec {
        AnsatzSpec {
            qubits: self.num_vars(),
            reps: self.reps,
            entangler: self.entangler,
        }
    }

    /// Rejects settings the chosen solver cannot run with.
    pub fn check(&self) -> Result<()> {
        if self.draws == 0 {
            return Err(Error::Config("draws must be at least 1".into()));
        }
        if self.top_k == 0 {
            return Err(Error::Config("top_k must be at least 1".into()));
        }
        self.encode.calibrate(&self.sequence)?.penalties.check()?;
        match self.solver {
            SolverKind::Anneal => {
                let t0 = self.schedule.t_initial.unwrap_or(f64::INFINITY);
                self.schedule.check(t0)?;
            }
            SolverKind::Exhaustive => {
                if self.num_vars() > MAX_EXHAUSTIVE_VARS {
                    return Err(Error::ExhaustiveTooLarge {
                        vars: self.num_vars(),
                        max: MAX_EXHAUSTIVE_VARS,
                    });
                }
            }
            SolverKind::Vqe => {
                if self.num_vars() > MAX_STATEVECTOR_QUBITS {
                    return Err(Error::QubitBudget {
                        qubits: self.num_vars(),
                        max: MAX_STATEVECTOR_QUBITS,
                    });
                }
                self.ansatz().check()?;
                if !(self.vqe.alpha > 0.0 && self.vqe.alpha <= 1.0) {
                    return Err(Error::AlphaOutOfRange(self.vqe.alpha));
                }
                if let Some(p) = &self.vqe.initial_params {
                    let expected = self.ansatz().num_parameters();
                    if p.len() != expected {
                        return Err(Error::Config(format!(
                            "resume parameters have {} entries, the ansatz needs {expected}",
                            p.len()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One draw's solve and post-selection. Only the `top_k` lowest samples are
/// kept.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawOutcome {
    pub draw: usize,
    pub seed: u64,
    pub result: SolveResult,
}

impl DrawOutcome {
    pub fn selection(&self) -> &Selection {
        self.result.selection.as_ref().expect("post-selected")
    }
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub draws: Vec<DrawOutcome>,
    pub best_draw: usize,
    /// The winning draw's problem, for export and reuse.
    pub problem: QuboProblem,
    pub max_contacts: usize,
}

impl PipelineResult {
    pub fn best(&self) -> &DrawOutcome {
        &self.draws[self.best_draw]
    }

    pub fn selection(&self) -> &Selection {
        self.best().selection()
    }
}

fn solve_draw(cfg: &RunConfig, draw: usize) -> Result<(DrawOutcome, QuboProblem)> {
    let seed = derive_seed(cfg.seed, draw as u64);
    let q = encode(&cfg.sequence, &cfg.encode, seed)?;
    let solver_seed = derive_seed(seed, u64::MAX);
    let mut result = match cfg.solver {
        SolverKind::Anneal => {
            let sched = AnnealSchedule {
                seed: solver_seed,
                ..cfg.schedule
            };
            anneal(&q, &sched)?
        }
        SolverKind::Exhaustive => exhaustive(&q, cfg.top_k)?,
        SolverKind::Vqe => {
            let opts = VqeOptions {
                seed: solver_seed,
                ..cfg.vqe.clone()
            };
            vqe_statevector(&q.to_ising(), &cfg.ansatz(), &opts)?
        }
    };
    result.samples.retain_lowest(cfg.top_k);
    result.postselect(&q, cfg.top_k, cfg.allow_steric)?;
    Ok((DrawOutcome { draw, seed, result }, q))
}

fn better(a: &Selection, b: &Selection) -> bool {
    match (a.feasible, b.feasible) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => a.contacts > b.contacts || (a.contacts == b.contacts && a.qubo_value < b.qubo_value),
        (false, false) => {
            let (va, vb) = (a.report.violation_count(), b.report.violation_count());
            va < vb || (va == vb && a.qubo_value < b.qubo_value)
        }
    }
}

/// Runs all draws (in parallel) and picks the best.
pub fn run_pipeline(cfg: &RunConfig) -> Result<PipelineResult> {
    cfg.check()?;
    let outcomes: Vec<(DrawOutcome, QuboProblem)> = (0..cfg.draws)
        .into_par_iter()
        .map(|d| solve_draw(cfg, d))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, (o, _)) in outcomes.iter().enumerate().skip(1) {
        if better(o.selection(), outcomes[best].0.selection()) {
            best = i;
        }
    }
    let mut draws = Vec::with_capacity(outcomes.len());
    let mut problem = None;
    for (i, (o, q)) in outcomes.into_iter().enumerate() {
        if i == best {
            problem = Some(q);
        }
        draws.push(o);
    }
    Ok(PipelineResult {
        draws,
        best_draw: best,
        problem: problem.expect("best draw exists"),
        max_contacts: max_contacts(&cfg.sequence),
    })
}

/// Per-draw line of the result document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawSummary {
    pub draw: usize,
    pub seed: u64,
    pub feasible: bool,
    pub contacts: usize,
    pub qubo_value: f64,
    pub best_value: f64,
    pub iterations_to_best: usize,
    #[serde(default)]
    pub saturation_iteration: Option<usize>,
    pub candidates: usize,
    pub feasible_candidates: usize,
}

/// The JSON result document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub format: String,
    pub sequence: String,
    #[serde(default)]
    pub weights: Vec<(usize, usize, f64)>,
    pub solver: SolverKind,
    pub seed: u64,
    pub allow_steric: bool,
    pub best_draw: usize,
    pub draw_seed: u64,
    pub feasible: bool,
    pub contacts: usize,
    pub max_contacts: usize,
    /// Bits of the selected state, variable 0 first.
    pub bits: String,
    pub turns: TurnVector,
    pub coords: Conformation,
    pub qubo_value: f64,
    pub violations: FeasibilityReport,
    pub num_variables: usize,
    pub penalties: PenaltyConfig,
    pub draws: Vec<DrawSummary>,
}

impl ResultDocument {
    pub fn new(cfg: &RunConfig, r: &PipelineResult) -> Self {
        let best = r.best();
        let sel = best.selection();
        Self {
            format: RESULT_FORMAT.to_string(),
            sequence: cfg.sequence.to_string(),
            weights: cfg
                .sequence
                .explicit_weights()
                .iter()
                .map(|(&(j, k), &w)| (j, k, w))
                .collect(),
            solver: cfg.solver,
            seed: cfg.seed,
            allow_steric: cfg.allow_steric,
            best_draw: r.best_draw,
            draw_seed: best.seed,
            feasible: sel.feasible,
            contacts: sel.contacts,
            max_contacts: r.max_contacts,
            bits: bits_to_string(&sel.bits),
            turns: sel.turns.clone(),
            coords: sel.conformation.clone(),
            qubo_value: sel.qubo_value,
            violations: sel.report.clone(),
            num_variables: r.problem.num_vars(),
            penalties: r.problem.penalties,
            draws: r
                .draws
                .iter()
                .map(|o| {
                    let s = o.selection();
                    DrawSummary {
                        draw: o.draw,
                        seed: o.seed,
                        feasible: s.feasible,
                        contacts: s.contacts,
                        qubo_value: s.qubo_value,
                        best_value: o.result.best_value,
                        iterations_to_best: o.result.iterations_to_best,
                        saturation_iteration: s.saturation_iteration,
                        candidates: s.candidates,
                        feasible_candidates: s.feasible_candidates,
                    }
                })
                .collect(),
        }
    }
}

/// Reads a result document and re-checks it: coordinates must follow from
/// the turns, the contact count must match, and a `feasible: true` claim
/// must survive an independent validation.
pub fn load_result(path: &Path) -> Result<ResultDocument> {
    let doc: ResultDocument = read_json(path)?;
    let fail = |msg: String| Error::Format(format!("{}: {msg}", path.display()));
    if doc.format != RESULT_FORMAT {
        return Err(fail(format!("unknown result format {:?}", doc.format)));
    }
    let seq = parse_sequence(&doc.sequence)?.with_weights(doc.weights.iter().map(|&(j, k, w)| ((j, k), w)))?;
    if turns_to_coordinates(&doc.turns) != doc.coords {
        return Err(fail("coordinates do not follow from the turns".into()));
    }
    let report = validate(&doc.turns, &seq, doc.allow_steric)?;
    if doc.feasible && !report.feasible {
        return Err(fail(format!("claims feasibility but has {} violations", report.violation_count())));
    }
    let contacts = count_contacts(&doc.coords, &seq)?;
    if contacts != doc.contacts {
        return Err(fail(format!("reports {} contacts, conformation has {contacts}", doc.contacts)));
    }
    if doc.contacts > doc.max_contacts || doc.max_contacts != max_contacts(&seq) {
        return Err(fail("inconsistent max_contacts".into()));
    }
    Ok(doc)
}

/// `N` lines of `<bead> <x> <y> <z>`.
pub fn xyz_text(seq: &HpSequence, conf: &Conformation) -> String {
    let mut out = String::new();
    for (b, c) in seq.beads().iter().zip(&conf.coords) {
        out.push_str(&format!("{} {} {} {}\n", b.as_char(), c[0], c[1], c[2]));
    }
    out
}

fn write_traces(path: &Path, r: &PipelineResult) -> Result<()> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["draw", "iteration", "objective", "best_so_far"])
        .map_err(csv_err)?;
    for o in &r.draws {
        for t in &o.result.trace {
            w.write_record([
                o.draw.to_string(),
                t.iteration.to_string(),
                t.objective.to_string(),
                t.best_so_far.to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes the requested artifacts into `cfg.output.out_dir` and returns
/// their paths:
///
/// - json: `result.json` ([`ResultDocument`]), `samples.json` (the winning
///   draw's inspected samples) and, for VQE, `params.json` (flat array)
/// - xyz: `conformation.xyz`
/// - csv: `trace.csv` with `draw,iteration,objective,best_so_far`
/// - export_qubo: `qubo.json` and `ising.json` of the winning draw
pub fn emit(cfg: &RunConfig, r: &PipelineResult) -> Result<Vec<PathBuf>> {
    let out = &cfg.output;
    std::fs::create_dir_all(&out.out_dir).map_err(|e| Error::io(&out.out_dir, e))?;
    let mut written = Vec::new();
    let mut path_for = |name: &str| {
        let p = out.out_dir.join(name);
        written.push(p.clone());
        p
    };
    let best = r.best();
    let sel = best.selection();
    for fmt in &out.formats {
        match fmt {
            OutputFormat::Json => {
                write_json(&path_for("result.json"), &ResultDocument::new(cfg, r))?;
                write_json(&path_for("samples.json"), &best.result.samples)?;
                if let Some(p) = &best.result.parameters {
                    write_json(&path_for("params.json"), p)?;
                }
            }
            OutputFormat::Xyz => write_text(&path_for("conformation.xyz"), &xyz_text(&cfg.sequence, &sel.conformation))?,
            OutputFormat::Csv => write_traces(&path_for("trace.csv"), r)?,
        }
    }
    if out.export_qubo {
        write_qubo(&path_for("qubo.json"), &r.problem)?;
        write_json(&path_for("ising.json"), &IsingExport::from(&r.problem.to_ising()))?;
    }
    Ok(written)
}

/// Reads a weight file with `j,k,w` rows (1-based bead indices; an optional
/// header row and `#` comments are allowed).
pub fn read_weights(path: &Path) -> Result<Vec<((usize, usize), f64)>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let mut weights = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() != 3 {
            return Err(Error::Format(format!(
                "{}: row {} has {} fields, expected j,k,w",
                path.display(),
                row + 1,
                rec.len()
            )));
        }
        let parsed = (rec[0].parse::<usize>(), rec[1].parse::<usize>(), rec[2].parse::<f64>());
        match parsed {
            (Ok(j), Ok(k), Ok(w)) => weights.push(((j, k), w)),
            _ if row == 0 => continue,
            _ => {
                return Err(Error::Format(format!(
                    "{}: row {} is not j,k,w numbers",
                    path.display(),
                    row + 1
                )))
            }
        }
    }
    Ok(weights)
}

/// Reads a flat JSON array of parameters, as written to `params.json`.
pub fn read_params(path: &Path) -> Result<Vec<f64>> {
    read_json(path)
}

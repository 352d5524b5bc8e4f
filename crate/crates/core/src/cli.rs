//! Command-line front end. Exit codes: 0 success, 1 input or usage error,
//! 2 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::controllability::{self, DEFAULT_CHOICE_LIMIT, DEFAULT_ORACLE_CAP};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::observability;
use crate::partition::partition;
use crate::report::{
    partition_table, set_text, AnalysisReport, ControllabilitySummary, ObservabilitySummary,
    PartitionSummary, TOOL, VERSION,
};
use crate::structure::{generic_rank, genericity_probe, pattern_of};
use crate::system::{load_system_file, NetworkSystem};

#[derive(Debug, Parser)]
#[command(
    name = "netdecomp",
    version,
    about = "Node-level decomposition of linear dynamical networks"
)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Observability matrix, reduction trace and observable nodes.
    Observe {
        file: PathBuf,
        /// Include the coordinate transformation T.
        #[arg(long = "emit-T")]
        emit_t: bool,
    },
    /// Controllability matrix, core C1, completion choices, perturbed nodes.
    Control {
        file: PathBuf,
        #[command(flatten)]
        limit: LimitArgs,
        /// Include T and T^-1 for every choice.
        #[arg(long = "emit-T")]
        emit_t: bool,
    },
    /// Six-cell node decomposition for each controllable-set choice.
    Partition {
        file: PathBuf,
        /// Report only this choice (0-based).
        #[arg(long)]
        choice: Option<usize>,
        #[command(flatten)]
        limit: LimitArgs,
    },
    /// Definition-level sets, cross-checked against the main algorithms.
    Oracle {
        file: PathBuf,
        /// Largest number of candidate node subsets to examine.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u128,
    },
    /// Generic (structural) rank of A, O or K via maximum matching.
    GenericRank {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixKind::A)]
        matrix: MatrixKind,
    },
    /// Resample nonzero weights and check the observable set is unchanged.
    Probe {
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, clap::Args)]
struct LimitArgs {
    /// Report every valid choice.
    #[arg(long, conflicts_with = "limit")]
    all: bool,
    /// Report at most this many choices.
    #[arg(long)]
    limit: Option<usize>,
}

impl LimitArgs {
    fn get(&self) -> Option<usize> {
        if self.all {
            None
        } else {
            Some(self.limit.unwrap_or(DEFAULT_CHOICE_LIMIT))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum MatrixKind {
    #[value(name = "A")]
    A,
    #[value(name = "O")]
    O,
    #[value(name = "K")]
    K,
}

#[derive(Serialize)]
struct ErrorPayload<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ObserveDoc {
    tool: &'static str,
    version: &'static str,
    system: crate::system::Fingerprint,
    observability: ObservabilitySummary,
}

#[derive(Serialize)]
struct ControlDoc {
    tool: &'static str,
    version: &'static str,
    system: crate::system::Fingerprint,
    controllability: ControllabilitySummary,
}

#[derive(Serialize)]
struct OracleDoc {
    observable_set: Vec<String>,
    observable_agrees: bool,
    controllable_sets: Vec<Vec<String>>,
    controllable_agrees: bool,
}

#[derive(Serialize)]
struct GenericRankDoc {
    matrix: MatrixKind,
    rows: usize,
    cols: usize,
    generic_rank: usize,
    rank: usize,
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            if cli.json {
                let payload = ErrorPayload {
                    error: ErrorBody {
                        kind: e.kind(),
                        message: e.to_string(),
                    },
                };
                let _ = writeln!(out, "{}", to_json(&payload));
            }
            let _ = writeln!(err, "netdecomp: {e}");
            e.exit_code()
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Observe { file, emit_t } => {
            let sys = load_system_file(file)?;
            let res = observability::analyze_checked(&sys)?;
            let summary = ObservabilitySummary::new(&sys, &res, true, *emit_t);
            if cli.json {
                let doc = ObserveDoc {
                    tool: TOOL,
                    version: VERSION,
                    system: sys.fingerprint(),
                    observability: summary,
                };
                emit(out, &format!("{}\n", to_json(&doc)))
            } else {
                emit(out, &observe_text(&sys, &summary))
            }
        }
        Command::Control {
            file,
            limit,
            emit_t,
        } => {
            let sys = load_system_file(file)?;
            let res = controllability::analyze(&sys, limit.get())?;
            let summary = ControllabilitySummary::new(&sys, &res, true, *emit_t);
            if cli.json {
                let doc = ControlDoc {
                    tool: TOOL,
                    version: VERSION,
                    system: sys.fingerprint(),
                    controllability: summary,
                };
                emit(out, &format!("{}\n", to_json(&doc)))
            } else {
                emit(out, &control_text(&summary))
            }
        }
        Command::Partition {
            file,
            choice,
            limit,
        } => {
            let sys = load_system_file(file)?;
            let report = build_report(&sys, *choice, limit.get())?;
            if cli.json {
                emit(out, &format!("{}\n", to_json(&report)))
            } else {
                let obs = observability::analyze_checked(&sys)?;
                let ctrl = controllability::analyze(&sys, limit.get())?;
                let parts = selected_partitions(&obs, &ctrl, *choice)?;
                let mut text = format!(
                    "observable nodes: {}\n",
                    set_text(&report.observability.observable_set)
                );
                text.push_str(&partition_table(&sys, &parts));
                emit(out, &text)
            }
        }
        Command::Oracle { file, cap } => {
            let sys = load_system_file(file)?;
            let doc = oracle(&sys, *cap)?;
            if cli.json {
                emit(out, &format!("{}\n", to_json(&doc)))
            } else {
                let mut text = format!("observable nodes: {}\n", set_text(&doc.observable_set));
                text.push_str(&format!(
                    "maximal controllable sets ({}):\n",
                    doc.controllable_sets.len()
                ));
                for s in &doc.controllable_sets {
                    text.push_str(&format!("  {}\n", set_text(s)));
                }
                text.push_str("cross-check: ok\n");
                emit(out, &text)
            }
        }
        Command::GenericRank { file, matrix } => {
            let sys = load_system_file(file)?;
            let m = match matrix {
                MatrixKind::A => sys.a().clone(),
                MatrixKind::O => observability::build_o(&sys),
                MatrixKind::K => controllability::build_k(&sys),
            };
            let doc = GenericRankDoc {
                matrix: *matrix,
                rows: m.nrows(),
                cols: m.ncols(),
                generic_rank: generic_rank(&pattern_of(&m)),
                rank: rank(&m),
            };
            if cli.json {
                emit(out, &format!("{}\n", to_json(&doc)))
            } else {
                emit(
                    out,
                    &format!(
                        "matrix {:?} ({}x{}): generic rank {}, rank {}\n",
                        doc.matrix, doc.rows, doc.cols, doc.generic_rank, doc.rank
                    ),
                )
            }
        }
        Command::Probe {
            file,
            samples,
            seed,
        } => {
            if *samples == 0 {
                return Err(Error::InvalidArgument(
                    "--samples must be at least 1".into(),
                ));
            }
            let sys = load_system_file(file)?;
            let rep = genericity_probe(&sys, *samples, *seed)?;
            if cli.json {
                emit(out, &format!("{}\n", to_json(&rep)))
            } else {
                let mut text = format!(
                    "baseline observable nodes: {}\nsamples: {} (seed {})\nagreement: {}\n",
                    set_text(&rep.baseline_set),
                    rep.samples,
                    rep.seed,
                    crate::linalg::format_scalar(&rep.agreement_fraction)
                );
                for d in &rep.disagreeing_samples {
                    text.push_str(&format!("  sample {}: {}\n", d.sample, set_text(&d.set)));
                }
                emit(out, &text)
            }
        }
    }
}

fn selected_partitions(
    obs: &observability::ObservabilityResult,
    ctrl: &controllability::ControllabilityResult,
    choice: Option<usize>,
) -> Result<Vec<(usize, crate::partition::NodePartition)>> {
    let indices: Vec<usize> = match choice {
        Some(i) if i >= ctrl.choices.len() => {
            return Err(Error::InvalidArgument(format!(
                "choice {i} out of range: {} choices reported",
                ctrl.choices.len()
            )))
        }
        Some(i) => vec![i],
        None => (0..ctrl.choices.len()).collect(),
    };
    indices
        .into_iter()
        .map(|i| partition(obs, ctrl, &ctrl.choices[i]).map(|p| (i, p)))
        .collect()
}

/// Full report for the `partition` command.
pub fn build_report(
    sys: &NetworkSystem,
    choice: Option<usize>,
    limit: Option<usize>,
) -> Result<AnalysisReport> {
    let limit = match (choice, limit) {
        (Some(i), Some(l)) => Some(l.max(i + 1)),
        (_, l) => l,
    };
    let obs = observability::analyze_checked(sys)?;
    let ctrl = controllability::analyze(sys, limit)?;
    let parts = selected_partitions(&obs, &ctrl, choice)?;
    Ok(AnalysisReport {
        tool: TOOL,
        version: VERSION,
        system: sys.fingerprint(),
        seeds: Vec::new(),
        observability: ObservabilitySummary::new(sys, &obs, false, false),
        controllability: ControllabilitySummary::new(sys, &ctrl, false, false),
        partitions: parts
            .iter()
            .map(|(i, p)| PartitionSummary::new(sys, *i, p))
            .collect(),
    })
}

fn oracle(sys: &NetworkSystem, cap: u128) -> Result<OracleDoc> {
    let observable = observability::observable_oracle(sys);
    let reduced = observability::analyze(sys)?.observable_set;
    let k = controllability::build_k(sys);
    let sets = controllability::controllable_oracle(&k, cap)?;
    let ctrl = controllability::analyze(sys, None)?;
    let enumerated: Vec<Vec<usize>> = ctrl.choices.iter().map(|c| c.c.clone()).collect();
    let mut sorted = enumerated.clone();
    sorted.sort();
    let doc = OracleDoc {
        observable_set: sys.labels_of(&observable),
        observable_agrees: observable == reduced,
        controllable_sets: sets.iter().map(|s| sys.labels_of(s)).collect(),
        controllable_agrees: sorted == sets,
    };
    if !doc.observable_agrees {
        return Err(Error::InvariantViolation(format!(
            "observable sets disagree: reduction {:?}, definition {:?}",
            sys.labels_of(&reduced),
            doc.observable_set
        )));
    }
    if !doc.controllable_agrees {
        return Err(Error::InvariantViolation(
            "enumerated controllable sets differ from the exhaustive search".into(),
        ));
    }
    Ok(doc)
}

fn observe_text(sys: &NetworkSystem, s: &ObservabilitySummary) -> String {
    let mut t = format!("system: n={} m={} p={}\n", sys.n(), sys.m(), sys.p());
    if let Some(o) = &s.o {
        t.push_str("O =\n");
        t.push_str(&o.to_string());
    }
    t.push_str(&format!("q = rank(O) = {}\n", s.q));
    for it in &s.iterations {
        t.push_str(&format!(
            "iteration {}: q_k = {}, f_k = {}, H columns -> {}\n",
            it.k,
            it.q_k,
            it.f_k,
            set_text(&it.h_columns)
        ));
        for op in &it.row_ops {
            t.push_str(&format!("    {op}\n"));
        }
    }
    t.push_str(&format!(
        "observable nodes ({}): {}\n",
        s.observable_count,
        set_text(&s.observable_set)
    ));
    if let Some(m) = &s.t {
        t.push_str("T =\n");
        t.push_str(&m.to_string());
    }
    t
}

fn control_text(s: &ControllabilitySummary) -> String {
    let mut t = String::new();
    if let Some(k) = &s.k {
        t.push_str("K =\n");
        t.push_str(&k.to_string());
    }
    t.push_str(&format!(
        "q = rank(K) = {}\nh = {}\nC1 = {}\n",
        s.q,
        s.h,
        set_text(&s.c1)
    ));
    t.push_str(&format!(
        "choices: {}{}\n",
        s.choice_count,
        if s.truncated { " (truncated)" } else { "" }
    ));
    for ch in &s.choices {
        t.push_str(&format!(
            "[{}] C2 = {}  C = {}  P = {}  downstream = {}\n",
            ch.index,
            set_text(&ch.c2),
            set_text(&ch.c),
            set_text(&ch.p),
            set_text(&ch.downstream)
        ));
        if ch.w.nrows() > 0 && ch.w.ncols() > 0 {
            t.push_str(&format!("    W (rows {}):\n", set_text(&ch.rest)));
            for line in ch.w.to_string().lines() {
                t.push_str(&format!("    {line}\n"));
            }
        }
        if let (Some(order), Some(tm), Some(ti)) = (&ch.t_order, &ch.t, &ch.t_inv) {
            t.push_str(&format!("    row order {}\n    T =\n", set_text(order)));
            for line in tm.to_string().lines() {
                t.push_str(&format!("    {line}\n"));
            }
            t.push_str("    T^-1 =\n");
            for line in ti.to_string().lines() {
                t.push_str(&format!("    {line}\n"));
            }
        }
    }
    t
}

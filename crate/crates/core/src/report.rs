//! JSON documents and fixed-width tables emitted by the command-line tool.
//!
//! Every document is a plain struct so key order is fixed, and every
//! rational is a canonical `p/q` or integer string.

use std::fmt::Write as _;

use serde::Serialize;

use crate::controllability::ControllabilityResult;
use crate::linalg::Mat;
use crate::observability::ObservabilityResult;
use crate::partition::NodePartition;
use crate::ser;
use crate::system::{Fingerprint, NetworkSystem};

pub const TOOL: &str = "netdecomp";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct IterationSummary {
    pub k: usize,
    pub q_k: usize,
    pub f_k: usize,
    pub row_ops: Vec<String>,
    pub h_columns: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObservabilitySummary {
    pub q: usize,
    pub observable_count: usize,
    pub observable_set: Vec<String>,
    pub iterations: Vec<IterationSummary>,
    #[serde(
        rename = "O",
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser::opt_mat"
    )]
    pub o: Option<Mat>,
    #[serde(
        rename = "T",
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser::opt_mat"
    )]
    pub t: Option<Mat>,
}

impl ObservabilitySummary {
    pub fn new(sys: &NetworkSystem, res: &ObservabilityResult, with_o: bool, with_t: bool) -> Self {
        ObservabilitySummary {
            q: res.q,
            observable_count: res.observable_set.len(),
            observable_set: sys.labels_of(&res.observable_set),
            iterations: res
                .trace
                .iter()
                .map(|r| IterationSummary {
                    k: r.k,
                    q_k: r.q_k,
                    f_k: r.f_k,
                    row_ops: r.row_ops.describe(),
                    h_columns: sys.labels_of(&r.column_permutation_k[..r.q_k - r.f_k]),
                })
                .collect(),
            o: with_o.then(|| res.o.clone()),
            t: with_t.then(|| res.t.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChoiceSummary {
    pub index: usize,
    #[serde(rename = "C2")]
    pub c2: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    /// Row labels of `W`.
    pub rest: Vec<String>,
    #[serde(rename = "W", serialize_with = "ser::mat")]
    pub w: Mat,
    /// Driver-reachable nodes outside `C`, for comparison with `P`.
    pub downstream: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_order: Option<Vec<String>>,
    #[serde(
        rename = "T",
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser::opt_mat"
    )]
    pub t: Option<Mat>,
    #[serde(
        rename = "T_inv",
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser::opt_mat"
    )]
    pub t_inv: Option<Mat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ControllabilitySummary {
    pub q: usize,
    pub h: usize,
    #[serde(rename = "C1")]
    pub c1: Vec<String>,
    pub choice_count: usize,
    pub truncated: bool,
    pub choices: Vec<ChoiceSummary>,
    #[serde(
        rename = "K",
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser::opt_mat"
    )]
    pub k: Option<Mat>,
}

impl ControllabilitySummary {
    pub fn new(
        sys: &NetworkSystem,
        res: &ControllabilityResult,
        with_k: bool,
        with_t: bool,
    ) -> Self {
        let choices = res
            .choices
            .iter()
            .enumerate()
            .map(|(index, ch)| ChoiceSummary {
                index,
                c2: sys.labels_of(&ch.c2),
                c: sys.labels_of(&ch.c),
                p: sys.labels_of(&ch.p),
                rest: sys.labels_of(&ch.rest),
                w: ch.w.clone(),
                downstream: sys.labels_of(&ch.downstream),
                t_order: with_t.then(|| sys.labels_of(&ch.order)),
                t: with_t.then(|| ch.t.clone()),
                t_inv: with_t.then(|| ch.t_inv.clone()),
            })
            .collect();
        ControllabilitySummary {
            q: res.q,
            h: res.h,
            c1: sys.labels_of(&res.c1),
            choice_count: res.choices.len(),
            truncated: res.truncated,
            choices,
            k: with_k.then(|| res.k.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionCells {
    pub controllable_observable: Vec<String>,
    pub perturbed_observable: Vec<String>,
    pub unperturbed_observable: Vec<String>,
    pub controllable_unobservable: Vec<String>,
    pub perturbed_unobservable: Vec<String>,
    pub unperturbed_unobservable: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionSummary {
    pub choice: usize,
    #[serde(rename = "C2")]
    pub c2: Vec<String>,
    pub cells: PartitionCells,
}

impl PartitionSummary {
    pub fn new(sys: &NetworkSystem, choice: usize, p: &NodePartition) -> Self {
        PartitionSummary {
            choice,
            c2: sys.labels_of(&p.c2),
            cells: PartitionCells {
                controllable_observable: sys.labels_of(&p.controllable_observable),
                perturbed_observable: sys.labels_of(&p.perturbed_observable),
                unperturbed_observable: sys.labels_of(&p.rest_observable),
                controllable_unobservable: sys.labels_of(&p.controllable_unobservable),
                perturbed_unobservable: sys.labels_of(&p.perturbed_unobservable),
                unperturbed_unobservable: sys.labels_of(&p.rest_unobservable),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub system: Fingerprint,
    pub seeds: Vec<u64>,
    pub observability: ObservabilitySummary,
    pub controllability: ControllabilitySummary,
    pub partitions: Vec<PartitionSummary>,
}

/// Fixed-width table, one row per node.
pub fn partition_table(sys: &NetworkSystem, parts: &[(usize, NodePartition)]) -> String {
    let width = sys
        .labels()
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(4)
        .max(4);
    let mut out = String::new();
    for (idx, p) in parts {
        let c2 = sys.labels_of(&p.c2).join(", ");
        let _ = writeln!(out, "choice {idx}: C2 = {{{c2}}}");
        let _ = writeln!(out, "  {:<width$}  {:<13}  observation", "node", "control");
        for v in 0..sys.n() {
            let (role, observable) = p.classify(v).expect("partition covers every node");
            let obs = if observable {
                "observable"
            } else {
                "unobservable"
            };
            let _ = writeln!(
                out,
                "  {:<width$}  {:<13}  {}",
                sys.label(v),
                role.as_str(),
                obs
            );
        }
    }
    out
}

pub fn set_text(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

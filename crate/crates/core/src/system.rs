//! The network triple `(A, B, C)`, its graph views and walk enumeration.
//!
//! Nodes are 0-based internally and 1-based in documents and reports.
//! An edge `v_j -> v_i` exists in the network graph iff `a_ij != 0`; the
//! transposed graph has every edge reversed.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, int, parse_scalar, Mat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkSystem {
    a: Mat,
    b: Mat,
    c: Mat,
    labels: Vec<String>,
}

/// Dimensions plus a content hash of the canonical document.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub sha256: String,
}

impl NetworkSystem {
    /// Validates and assembles a system. `labels` defaults to `v1..vN`.
    pub fn new(a: Mat, b: Mat, c: Mat, labels: Option<Vec<String>>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Validation(format!(
                "A must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        let n = a.nrows();
        if b.nrows() != n {
            return Err(Error::Validation(format!(
                "B has {} rows, expected {n}",
                b.nrows()
            )));
        }
        if c.ncols() != n {
            return Err(Error::Validation(format!(
                "C has {} columns, expected {n}",
                c.ncols()
            )));
        }
        for j in 0..b.ncols() {
            let nz = b.column(j).iter().filter(|v| !v.is_zero()).count();
            if nz != 1 {
                return Err(Error::Validation(format!(
                    "B column {} has {nz} nonzero entries, expected exactly 1",
                    j + 1
                )));
            }
        }
        for i in 0..c.nrows() {
            let row = c.row(i);
            let nz: Vec<&Scalar> = row.iter().filter(|v| !v.is_zero()).collect();
            if nz.len() != 1 || *nz[0] != int(1) {
                return Err(Error::Validation(format!(
                    "C row {} is not a versor (needs a single entry equal to 1)",
                    i + 1
                )));
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(Error::Validation(format!(
                        "{} labels for {n} nodes",
                        l.len()
                    )));
                }
                l
            }
            None => default_labels(n),
        };
        Ok(NetworkSystem { a, b, c, labels })
    }

    /// Convenience constructor from driver `(node, gain)` and sensor node lists (0-based).
    pub fn from_parts(
        a: Mat,
        drivers: &[(usize, Scalar)],
        sensors: &[usize],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = a.nrows();
        let mut b = Mat::zeros(n, drivers.len());
        for (k, (node, gain)) in drivers.iter().enumerate() {
            if *node >= n {
                return Err(Error::Validation(format!(
                    "driver {} targets node {} outside 1..{n}",
                    k + 1,
                    node + 1
                )));
            }
            b[(*node, k)] = gain.clone();
        }
        let mut c = Mat::zeros(sensors.len(), n);
        for (k, &node) in sensors.iter().enumerate() {
            if node >= n {
                return Err(Error::Validation(format!(
                    "sensor {} targets node {} outside 1..{n}",
                    k + 1,
                    node + 1
                )));
            }
            c[(k, node)] = int(1);
        }
        NetworkSystem::new(a, b, c, labels)
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// Number of inputs (columns of B).
    pub fn m(&self) -> usize {
        self.b.ncols()
    }

    /// Number of sensors (rows of C).
    pub fn p(&self) -> usize {
        self.c.nrows()
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    pub fn b(&self) -> &Mat {
        &self.b
    }

    pub fn c(&self) -> &Mat {
        &self.c
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    /// Labels of a node set, in the given order.
    pub fn labels_of(&self, nodes: &[usize]) -> Vec<String> {
        nodes.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Node measured by sensor row `j`.
    pub fn sensor_node(&self, j: usize) -> usize {
        self.c
            .row(j)
            .iter()
            .position(|v| !v.is_zero())
            .expect("validated versor row")
    }

    /// Node driven by input column `j`, with its gain.
    pub fn driver(&self, j: usize) -> (usize, Scalar) {
        (0..self.n())
            .find(|&i| !self.b[(i, j)].is_zero())
            .map(|i| (i, self.b[(i, j)].clone()))
            .expect("validated driver column")
    }

    pub fn graph(&self, direction: Direction) -> Graph {
        Graph::from_adjacency(&self.a, direction)
    }

    /// Same structure with new values; re-validated.
    pub fn with_matrices(&self, a: Mat, b: Mat, c: Mat) -> Result<Self> {
        NetworkSystem::new(a, b, c, Some(self.labels.clone()))
    }

    /// Relabels nodes: node `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::InvalidArgument("permutation length".into()));
        }
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(perm[i], perm[j])] = self.a[(i, j)].clone();
            }
        }
        let mut b = Mat::zeros(n, self.m());
        for i in 0..n {
            for k in 0..self.m() {
                b[(perm[i], k)] = self.b[(i, k)].clone();
            }
        }
        let mut c = Mat::zeros(self.p(), n);
        for k in 0..self.p() {
            for j in 0..n {
                c[(k, perm[j])] = self.c[(k, j)].clone();
            }
        }
        let mut labels = vec![String::new(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
        }
        NetworkSystem::new(a, b, c, Some(labels))
    }

    pub fn to_document(&self) -> SystemDocument {
        let n = self.n();
        let triplets = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.a[(i, j)].is_zero())
            .map(|(i, j)| {
                (
                    i + 1,
                    j + 1,
                    ScalarLiteral::Text(format_scalar(&self.a[(i, j)])),
                )
            })
            .collect();
        let drivers = (0..self.m())
            .map(|k| {
                let (node, gain) = self.driver(k);
                DriverEntry {
                    node: node + 1,
                    gain: ScalarLiteral::Text(format_scalar(&gain)),
                }
            })
            .collect();
        let sensors = (0..self.p()).map(|k| self.sensor_node(k) + 1).collect();
        SystemDocument {
            n,
            labels: Some(self.labels.clone()),
            a: MatrixSpec::Triplets { triplets },
            b: Some(InputSpec::Drivers { drivers }),
            c: Some(OutputSpec::Sensors { sensors }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable document")
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let canonical = serde_json::to_string(&self.to_document()).expect("serializable document");
        let digest = Sha256::digest(canonical.as_bytes());
        Fingerprint {
            n: self.n(),
            m: self.m(),
            p: self.p(),
            sha256: hex::encode(digest),
        }
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// Reads a system from its JSON document.
pub fn load_system(source: &str) -> Result<NetworkSystem> {
    let doc: SystemDocument =
        serde_json::from_str(source).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_system()
}

pub fn load_system_file(path: impl AsRef<std::path::Path>) -> Result<NetworkSystem> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    load_system(&text)
}

/// Entry value: a string literal (`"7"`, `"-3/2"`, `"0.25"`) or a bare JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Text(String),
    Number(serde_json::Number),
}

impl ScalarLiteral {
    fn value(&self) -> Result<Scalar> {
        match self {
            ScalarLiteral::Text(s) => parse_scalar(s),
            ScalarLiteral::Number(n) => parse_scalar(&n.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(rename = "A")]
    pub a: MatrixSpec,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<InputSpec>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum MatrixSpec {
    Dense {
        dense: Vec<Vec<ScalarLiteral>>,
    },
    /// 1-based `(row, column, value)`.
    Triplets {
        triplets: Vec<(usize, usize, ScalarLiteral)>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriverEntry {
    pub node: usize,
    pub gain: ScalarLiteral,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum InputSpec {
    Drivers { drivers: Vec<DriverEntry> },
    Dense { dense: Vec<Vec<ScalarLiteral>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum OutputSpec {
    Sensors { sensors: Vec<usize> },
    Dense { dense: Vec<Vec<ScalarLiteral>> },
}

fn dense_matrix(rows: &[Vec<ScalarLiteral>], cols: usize, what: &str) -> Result<Mat> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Validation(format!(
                "{what} row {} has {} entries, expected {cols}",
                i + 1,
                row.len()
            )));
        }
        out.push(
            row.iter()
                .map(ScalarLiteral::value)
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Mat::from_rows(out, cols)
}

impl SystemDocument {
    pub fn into_system(self) -> Result<NetworkSystem> {
        let n = self.n;
        let a = match &self.a {
            MatrixSpec::Dense { dense } => {
                if dense.len() != n {
                    return Err(Error::Validation(format!(
                        "A has {} rows, expected {n}",
                        dense.len()
                    )));
                }
                dense_matrix(dense, n, "A")?
            }
            MatrixSpec::Triplets { triplets } => {
                let mut a = Mat::zeros(n, n);
                let mut seen = BTreeMap::new();
                for (k, (i, j, v)) in triplets.iter().enumerate() {
                    if *i < 1 || *i > n || *j < 1 || *j > n {
                        return Err(Error::Validation(format!(
                            "A triplet {} has index ({i}, {j}) outside 1..{n}",
                            k + 1
                        )));
                    }
                    if seen.insert((*i, *j), k).is_some() {
                        return Err(Error::Validation(format!(
                            "A triplet {} repeats entry ({i}, {j})",
                            k + 1
                        )));
                    }
                    a[(i - 1, j - 1)] = v.value()?;
                }
                a
            }
        };
        let b = match &self.b {
            None => Mat::zeros(n, 0),
            Some(InputSpec::Dense { dense }) => {
                if dense.len() != n {
                    return Err(Error::Validation(format!(
                        "B has {} rows, expected {n}",
                        dense.len()
                    )));
                }
                let cols = dense.first().map_or(0, Vec::len);
                dense_matrix(dense, cols, "B")?
            }
            Some(InputSpec::Drivers { drivers }) => {
                let mut b = Mat::zeros(n, drivers.len());
                for (k, d) in drivers.iter().enumerate() {
                    if d.node < 1 || d.node > n {
                        return Err(Error::Validation(format!(
                            "B column {} drives node {} outside 1..{n}",
                            k + 1,
                            d.node
                        )));
                    }
                    b[(d.node - 1, k)] = d.gain.value()?;
                }
                b
            }
        };
        let c = match &self.c {
            None => Mat::zeros(0, n),
            Some(OutputSpec::Dense { dense }) => dense_matrix(dense, n, "C")?,
            Some(OutputSpec::Sensors { sensors }) => {
                let mut c = Mat::zeros(sensors.len(), n);
                for (k, &s) in sensors.iter().enumerate() {
                    if s < 1 || s > n {
                        return Err(Error::Validation(format!(
                            "C row {} senses node {s} outside 1..{n}",
                            k + 1
                        )));
                    }
                    c[(k, s - 1)] = int(1);
                }
                c
            }
        };
        NetworkSystem::new(a, b, c, self.labels)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `v_j -> v_i` for every `a_ij != 0`.
    Forward,
    /// The same edges reversed.
    Transposed,
}

/// Weighted directed graph; self-loops carry the diagonal of A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    direction: Direction,
    /// Outgoing `(target, weight)` lists, targets ascending.
    out: Vec<Vec<(usize, Scalar)>>,
}

impl Graph {
    pub fn from_adjacency(a: &Mat, direction: Direction) -> Self {
        let n = a.nrows();
        let mut out = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let w = &a[(i, j)];
                if w.is_zero() {
                    continue;
                }
                match direction {
                    Direction::Forward => out[j].push((i, w.clone())),
                    Direction::Transposed => out[i].push((j, w.clone())),
                }
            }
        }
        for list in &mut out {
            list.sort_by_key(|(t, _)| *t);
        }
        Graph { n, direction, out }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// `(from, to, weight)` for every edge, ordered by source then target.
    pub fn edges(&self) -> Vec<(usize, usize, Scalar)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, l)| l.iter().map(move |(t, w)| (s, *t, w.clone())))
            .collect()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out[from].iter().any(|(t, _)| *t == to)
    }

    pub fn successors(&self, from: usize) -> &[(usize, Scalar)] {
        &self.out[from]
    }

    /// 0/1 adjacency matrix with `M[from][to] = 1` per edge.
    pub fn adjacency(&self) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (s, t, _) in self.edges() {
            m[(s, t)] = int(1);
        }
        m
    }
}

/// A walk: consecutive edges share endpoints; nodes and edges may repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub edges: Vec<(usize, usize)>,
    pub weight: Scalar,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn nodes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().map(|e| e.0).collect();
        if let Some(last) = self.edges.last() {
            v.push(last.1);
        }
        v
    }
}

/// Every walk of exactly `k` edges from `from` to `to`, with exact weights.
/// Exponential in `k`; intended for verification at desk scale.
pub fn paths_of_length(
    sys: &NetworkSystem,
    from: usize,
    to: usize,
    k: usize,
    direction: Direction,
) -> Result<Vec<Path>> {
    let n = sys.n();
    if from >= n || to >= n {
        return Err(Error::InvalidArgument(format!(
            "nodes ({}, {}) outside 1..{n}",
            from + 1,
            to + 1
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument(
            "walk length must be at least 1".into(),
        ));
    }
    let g = sys.graph(direction);
    let mut found = Vec::new();
    let mut stack = Vec::with_capacity(k);
    extend_walks(&g, from, to, k, &mut stack, int(1), &mut found);
    Ok(found)
}

fn extend_walks(
    g: &Graph,
    at: usize,
    to: usize,
    remaining: usize,
    stack: &mut Vec<(usize, usize)>,
    weight: Scalar,
    found: &mut Vec<Path>,
) {
    if remaining == 0 {
        if at == to {
            found.push(Path {
                edges: stack.clone(),
                weight,
            });
        }
        return;
    }
    for (next, w) in g.successors(at) {
        stack.push((at, *next));
        extend_walks(g, *next, to, remaining - 1, stack, &weight * w, found);
        stack.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathIdentity {
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub equal: bool,
}

/// Compares `(c_j A^k)_i` with the summed weights of all length-`k` walks
/// from the sensor node of row `j` to `v_i` in the transposed graph.
pub fn verify_path_identity(
    sys: &NetworkSystem,
    sensor_row: usize,
    node: usize,
    k: usize,
) -> Result<PathIdentity> {
    if sensor_row >= sys.p() {
        return Err(Error::InvalidArgument(format!(
            "sensor row {} outside 1..{}",
            sensor_row + 1,
            sys.p()
        )));
    }
    let ak = sys.a().pow(k);
    let c_row = sys.c().select_rows(&[sensor_row]);
    let lhs = (&c_row * &ak)[(0, node)].clone();
    let s = sys.sensor_node(sensor_row);
    let rhs: Scalar = paths_of_length(sys, s, node, k, Direction::Transposed)?
        .into_iter()
        .map(|p| p.weight)
        .sum();
    let equal = lhs == rhs;
    Ok(PathIdentity { lhs, rhs, equal })
}

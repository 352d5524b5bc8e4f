//! Serde helpers writing exact rationals as canonical strings.

use serde::ser::{SerializeSeq, Serializer};

use crate::linalg::{format_scalar, Mat, Scalar};

pub fn scalar<S: Serializer>(v: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_scalar(v))
}

pub fn mat<S: Serializer>(m: &Mat, s: S) -> Result<S::Ok, S::Error> {
    let rows = m.to_strings();
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in &rows {
        seq.serialize_element(r)?;
    }
    seq.end()
}

pub fn opt_mat<S: Serializer>(m: &Option<Mat>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => mat(m, s),
        None => s.serialize_none(),
    }
}

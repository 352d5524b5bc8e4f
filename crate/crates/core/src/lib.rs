//! Node-level observability and controllability of linear networks
//! `x' = A x + B u`, `y = C x`, computed in exact rational arithmetic.
//!
//! ```
//! use netdecomp::{fixtures, observability};
//!
//! let sys = fixtures::eight_node();
//! let res = observability::analyze(&sys).unwrap();
//! assert_eq!(res.q, 6);
//! assert_eq!(sys.labels_of(&res.observable_set), ["v1", "v2", "v3", "v4"]);
//! ```

pub mod cli;
pub mod controllability;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod observability;
pub mod partition;
pub mod report;
pub(crate) mod ser;
pub mod structure;
pub mod system;

pub use error::{Error, Result};

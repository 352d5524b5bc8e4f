//! Six-cell node decomposition: (controllable | perturbed | neither) x
//! (observable | unobservable), one per controllable-set choice.

use serde::Serialize;

use crate::controllability::{ControllabilityResult, ControllableChoice};
use crate::error::{Error, Result};
use crate::observability::ObservabilityResult;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NodePartition {
    /// The completion that identifies this decomposition.
    pub c2: Vec<usize>,
    pub controllable_observable: Vec<usize>,
    pub perturbed_observable: Vec<usize>,
    pub rest_observable: Vec<usize>,
    pub controllable_unobservable: Vec<usize>,
    pub perturbed_unobservable: Vec<usize>,
    pub rest_unobservable: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlRole {
    Controllable,
    Perturbed,
    Unperturbed,
}

impl ControlRole {
    pub fn as_str(self) -> &'static str {
        match self {
            ControlRole::Controllable => "controllable",
            ControlRole::Perturbed => "perturbed",
            ControlRole::Unperturbed => "unperturbed",
        }
    }
}

impl NodePartition {
    pub fn cells(&self) -> [&[usize]; 6] {
        [
            &self.controllable_observable,
            &self.perturbed_observable,
            &self.rest_observable,
            &self.controllable_unobservable,
            &self.perturbed_unobservable,
            &self.rest_unobservable,
        ]
    }

    /// `(role, observable)` of `node`.
    pub fn classify(&self, node: usize) -> Option<(ControlRole, bool)> {
        let roles = [
            ControlRole::Controllable,
            ControlRole::Perturbed,
            ControlRole::Unperturbed,
        ];
        self.cells()
            .iter()
            .position(|cell| cell.contains(&node))
            .map(|i| (roles[i % 3], i < 3))
    }

    /// Cells pairwise disjoint and covering `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![0u8; n];
        for cell in self.cells() {
            for &v in cell {
                if v >= n {
                    return false;
                }
                seen[v] += 1;
            }
        }
        seen.iter().all(|&c| c == 1)
    }
}

pub fn partition(
    obs: &ObservabilityResult,
    ctrl: &ControllabilityResult,
    choice: &ControllableChoice,
) -> Result<NodePartition> {
    if obs.system != ctrl.system {
        return Err(Error::MismatchedSystem);
    }
    let n = obs.system.n;
    let observable = |v: &usize| obs.observable_set.contains(v);
    let mut out = NodePartition {
        c2: choice.c2.clone(),
        ..NodePartition::default()
    };
    for v in 0..n {
        let cell = match (choice.c.contains(&v), choice.p.contains(&v), observable(&v)) {
            (true, _, true) => &mut out.controllable_observable,
            (true, _, false) => &mut out.controllable_unobservable,
            (false, true, true) => &mut out.perturbed_observable,
            (false, true, false) => &mut out.perturbed_unobservable,
            (false, false, true) => &mut out.rest_observable,
            (false, false, false) => &mut out.rest_unobservable,
        };
        cell.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, Mat, Scalar};
    use crate::system::NetworkSystem;
    use crate::{controllability, fixtures, observability};

    #[test]
    fn chain_partition() {
        let sys = fixtures::chain3();
        let obs = observability::analyze(&sys).unwrap();
        let ctrl = controllability::analyze(&sys, None).unwrap();
        assert_eq!(obs.observable_set, vec![0]);
        let p = partition(&obs, &ctrl, &ctrl.choices[0]).unwrap();
        assert_eq!(p.c2, vec![1]);
        assert_eq!(p.controllable_observable, vec![0]);
        assert_eq!(p.controllable_unobservable, vec![1]);
        assert_eq!(p.perturbed_unobservable, vec![2]);
        assert!(p.perturbed_observable.is_empty());
        assert!(p.rest_observable.is_empty() && p.rest_unobservable.is_empty());
        assert!(p.is_partition_of(3));
        assert_eq!(p.classify(2), Some((ControlRole::Perturbed, false)));
    }

    #[test]
    fn fully_controllable_and_observable() {
        let drivers: Vec<(usize, Scalar)> = (0..3).map(|i| (i, int(1))).collect();
        let sys = NetworkSystem::from_parts(Mat::zeros(3, 3), &drivers, &[0, 1, 2], None).unwrap();
        let obs = observability::analyze(&sys).unwrap();
        let ctrl = controllability::analyze(&sys, None).unwrap();
        let p = partition(&obs, &ctrl, &ctrl.choices[0]).unwrap();
        assert_eq!(p.controllable_observable, vec![0, 1, 2]);
        assert_eq!(p.cells().iter().filter(|c| !c.is_empty()).count(), 1);
    }

    #[test]
    fn no_drivers() {
        let sys = fixtures::eight_node();
        let obs = observability::analyze(&sys).unwrap();
        let ctrl = controllability::analyze(&sys, None).unwrap();
        let p = partition(&obs, &ctrl, &ctrl.choices[0]).unwrap();
        assert_eq!(p.rest_observable, vec![0, 1, 2, 3]);
        assert_eq!(p.rest_unobservable, vec![4, 5, 6, 7]);
        assert!(p.is_partition_of(8));
    }

    #[test]
    fn mismatched_systems_are_rejected() {
        let obs = observability::analyze(&fixtures::chain3()).unwrap();
        let ctrl = controllability::analyze(&fixtures::chain3_weighted(5, 7), None).unwrap();
        assert_eq!(
            partition(&obs, &ctrl, &ctrl.choices[0]),
            Err(Error::MismatchedSystem)
        );
    }
}

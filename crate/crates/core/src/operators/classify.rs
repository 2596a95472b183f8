use serde::Serialize;

use super::OperatorSpec;
use crate::bitset::ObjSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::thick::{all_submodules, principal, ThickSubmodule};

/// Outcome of one exhaustive property check; `witness` holds the member
/// sets of a counterexample when the property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub holds: bool,
    pub witness: Vec<ObjSet>,
}

impl PropertyCheck {
    fn from_counterexample(found: Option<Vec<ObjSet>>) -> Self {
        match found {
            None => PropertyCheck {
                holds: true,
                witness: Vec::new(),
            },
            Some(witness) => PropertyCheck {
                holds: false,
                witness,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub extensive: PropertyCheck,
    pub order_preserving: PropertyCheck,
    pub idempotent: PropertyCheck,
    pub finite_type: PropertyCheck,
}

impl Classification {
    /// Extensive, order-preserving and of finite type. Idempotence is not
    /// required.
    pub fn gate(&self) -> Result<()> {
        if !self.extensive.holds {
            return Err(Error::GateFailed("extensive"));
        }
        if !self.order_preserving.holds {
            return Err(Error::GateFailed("order-preserving"));
        }
        if !self.finite_type.holds {
            return Err(Error::GateFailed("finite-type"));
        }
        Ok(())
    }

    pub fn passes_gate(&self) -> bool {
        self.gate().is_ok()
    }

    /// All four properties.
    pub fn is_closure_of_finite_type(&self) -> bool {
        self.passes_gate() && self.idempotent.holds
    }
}

pub fn classify(c: &OperatorSpec) -> Classification {
    classify_with(c, Exec::default())
}

/// Decides each property by exhaustive search over `SMod(M)`; pairs for
/// order preservation. The counterexample reported is the first in point
/// order whatever the execution strategy.
pub fn classify_with(c: &OperatorSpec, exec: Exec) -> Classification {
    let p = c.presentation().as_ref();
    let points = all_submodules(p);
    let images: Vec<ThickSubmodule> = exec.map(points.len(), |i| c.apply(&points[i]));
    let principal_images: Vec<ObjSet> = p
        .module_objects()
        .iter()
        .map(|m| {
            c.apply(&principal(p, m).expect("object in range"))
                .members()
        })
        .collect();
    let n = points.len();

    let extensive = exec.find_first(n, |i| {
        (!points[i].is_subset(&images[i])).then(|| vec![points[i].members(), images[i].members()])
    });

    let order_preserving = exec.find_first(n * n, |ij| {
        let (i, j) = (ij / n, ij % n);
        (points[i].is_subset(&points[j]) && !images[i].is_subset(&images[j])).then(|| {
            vec![
                points[i].members(),
                points[j].members(),
                images[i].members(),
                images[j].members(),
            ]
        })
    });

    let idempotent = exec.find_first(n, |i| {
        let twice = c.apply(&images[i]);
        (twice != images[i])
            .then(|| vec![points[i].members(), images[i].members(), twice.members()])
    });

    let finite_type = exec.find_first(n, |i| {
        let union = points[i].members().iter().fold(ObjSet::EMPTY, |acc, m| {
            acc.union(principal_images[m.index()])
        });
        (union != images[i].members())
            .then(|| vec![points[i].members(), images[i].members(), union])
    });

    Classification {
        extensive: PropertyCheck::from_counterexample(extensive),
        order_preserving: PropertyCheck::from_counterexample(order_preserving),
        idempotent: PropertyCheck::from_counterexample(idempotent),
        finite_type: PropertyCheck::from_counterexample(finite_type),
    }
}

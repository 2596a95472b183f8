use serde::Serialize;

use super::SModSpace;
use crate::bitset::{ObjSet, ObjectId, PointId};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::operators::OperatorSpec;
use crate::thick::{is_thick, ThickSubmodule};

const PRINCIPAL_NOTE: &str =
    "every ultrafilter on a finite set is principal, so the principal ultrafilters are all of them";

/// The limit object set of the principal ultrafilter at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UltrafilterEntry {
    pub point: PointId,
    pub limit: ObjSet,
    pub thick: bool,
    pub fixed: bool,
    pub equals_point: bool,
    /// `U(m) ∈ 𝔘` iff the limit lies in `U(m)`, for every object `m`.
    pub biconditional: bool,
    pub biconditional_witness: Option<ObjectId>,
}

impl UltrafilterEntry {
    pub fn passed(&self) -> bool {
        self.thick && self.fixed && self.equals_point && self.biconditional
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UltrafilterReport {
    pub operator: String,
    pub entries: Vec<UltrafilterEntry>,
    pub passed: bool,
    pub note: &'static str,
}

pub fn ultrafilter_check(space: &SModSpace, c: &OperatorSpec) -> Result<UltrafilterReport> {
    ultrafilter_check_with(space, c, Exec::default())
}

/// For the ultrafilter of sets containing point `N`, the limit is the set of
/// objects `m` with `N ∈ U(m)`. It should be a thick fixed point equal to
/// `N`, and `U(m) ∈ 𝔘` should hold exactly when the limit lies in `U(m)`.
pub fn ultrafilter_check_with(
    space: &SModSpace,
    c: &OperatorSpec,
    exec: Exec,
) -> Result<UltrafilterReport> {
    let p = space.presentation().as_ref();
    if c.presentation().fingerprint() != p.fingerprint() {
        return Err(Error::PresentationMismatch);
    }
    let objs: Vec<ObjectId> = p.module_objects().iter().collect();
    let entries = exec.map(space.len(), |i| {
        let x = PointId(i);
        let in_filter = |m: ObjectId| space.basic_open(m).contains(x);
        let limit: ObjSet = objs.iter().copied().filter(|&m| in_filter(m)).collect();
        let thick = is_thick(p, limit).map(|t| t.holds()).unwrap_or(false);
        let fixed = thick && c.is_fixed(&ThickSubmodule::trusted(p, limit));
        let at = space.index_of_members(limit);
        let biconditional_witness = objs.iter().copied().find(|&m| {
            let limit_in_open = at.is_some_and(|j| space.basic_open(m).contains(j));
            in_filter(m) != limit_in_open
        });
        UltrafilterEntry {
            point: x,
            limit,
            thick,
            fixed,
            equals_point: limit == space.point(x).members(),
            biconditional: biconditional_witness.is_none(),
            biconditional_witness,
        }
    });
    let passed = entries.iter().all(UltrafilterEntry::passed);
    Ok(UltrafilterReport {
        operator: c.name().to_string(),
        entries,
        passed,
        note: PRINCIPAL_NOTE,
    })
}

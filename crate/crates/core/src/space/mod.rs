//! The space `SMod(M)` of thick submodules with the topology generated by
//! `U(m) = { N : m in N }`, its fixed-point subspaces `SMod^c(M)`, and the
//! finite spectrality checks.

mod topology;
mod ultrafilter;

use std::sync::Arc;

use serde::Serialize;

use crate::bitset::{ObjSet, ObjectId, PointId, PointSet};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::operators::OperatorSpec;
use crate::presentation::ModulePresentation;
use crate::thick::{principal, ThickSubmodule};

pub use topology::{FiniteTopology, SoberViolation, SpectralReport};
pub use ultrafilter::{
    ultrafilter_check, ultrafilter_check_with, UltrafilterEntry, UltrafilterReport,
};

/// An enumerated set of thick submodules with basis `U(m)` restricted to
/// it. Points are ordered by size and then by member bits.
#[derive(Clone, Debug)]
pub struct SModSpace {
    presentation: Arc<ModulePresentation>,
    points: Vec<ThickSubmodule>,
    /// Basis set `k` is `U(m)` for the `k`-th module object `m`.
    topology: FiniteTopology,
    operator: Option<String>,
}

impl SModSpace {
    fn from_points(
        presentation: &Arc<ModulePresentation>,
        points: Vec<ThickSubmodule>,
        operator: Option<String>,
    ) -> Self {
        let p = presentation.as_ref();
        let basis = p
            .module_objects()
            .iter()
            .map(|m| {
                (0..points.len())
                    .filter(|&i| points[i].contains(m))
                    .map(PointId)
                    .collect()
            })
            .collect();
        let topology =
            FiniteTopology::from_parts(points.len(), basis).expect("at most one point per object");
        SModSpace {
            presentation: Arc::clone(presentation),
            points,
            topology,
            operator,
        }
    }

    pub fn presentation(&self) -> &Arc<ModulePresentation> {
        &self.presentation
    }

    pub fn points(&self) -> &[ThickSubmodule] {
        &self.points
    }

    pub fn point(&self, i: PointId) -> &ThickSubmodule {
        &self.points[i.index()]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Name of the operator whose fixed points these are, if any.
    pub fn operator(&self) -> Option<&str> {
        self.operator.as_deref()
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    /// `U(m)` restricted to this space.
    pub fn basic_open(&self, m: ObjectId) -> PointSet {
        self.topology.basis()[m.index()]
    }

    pub fn all_points(&self) -> PointSet {
        self.topology.points()
    }

    pub fn index_of(&self, n: &ThickSubmodule) -> Option<PointId> {
        self.points.iter().position(|x| x == n).map(PointId)
    }

    pub fn index_of_members(&self, s: ObjSet) -> Option<PointId> {
        self.points
            .iter()
            .position(|x| x.members() == s)
            .map(PointId)
    }

    /// For point `x`, the points `y` with `x <= y`. In `SMod` this is
    /// inclusion of member sets.
    pub fn specialization(&self) -> Vec<PointSet> {
        self.topology.specialization()
    }

    /// Covering pairs `(x, y)` of the specialization order, `x < y`.
    pub fn hasse_edges(&self) -> Vec<(PointId, PointId)> {
        let up = self.specialization();
        let below =
            |a: PointId, b: PointId| up[a.index()].contains(b) && !up[b.index()].contains(a);
        let all = self.all_points();
        let mut edges = Vec::new();
        for x in all.iter() {
            for y in all.iter().filter(|&y| below(x, y)) {
                if !all.iter().any(|w| below(x, w) && below(w, y)) {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    pub fn spectral_report(&self) -> SpectralReport {
        self.topology.spectral_report()
    }

    pub fn spectral_report_with(&self, exec: Exec) -> SpectralReport {
        self.topology.spectral_report_with(exec)
    }
}

/// `SMod(M)`: the deduplicated principals `K(m)`, complete because every
/// thick submodule of a finite presentation is principal.
pub fn enumerate_smod(p: &Arc<ModulePresentation>) -> SModSpace {
    enumerate_smod_with(p, Exec::default())
}

pub fn enumerate_smod_with(p: &Arc<ModulePresentation>, exec: Exec) -> SModSpace {
    let objs: Vec<ObjectId> = p.module_objects().iter().collect();
    let mut points = exec.map(objs.len(), |i| {
        principal(p, objs[i]).expect("object in range")
    });
    points.sort_by_key(|s| (s.len(), s.members().bits()));
    points.dedup();
    SModSpace::from_points(p, points, None)
}

/// The subspace of points fixed by `c`.
pub fn fixed_points(space: &SModSpace, c: &OperatorSpec) -> Result<SModSpace> {
    if c.presentation().fingerprint() != space.presentation.fingerprint() {
        return Err(Error::PresentationMismatch);
    }
    let points = space
        .points
        .iter()
        .filter(|n| c.is_fixed(n))
        .copied()
        .collect();
    Ok(SModSpace::from_points(
        &space.presentation,
        points,
        Some(c.name().to_string()),
    ))
}

/// Outcome of one of the basis identities, with the objects of the first
/// counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCheck {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<Vec<ObjectId>>,
}

impl BasisCheck {
    fn scan(cases: impl Iterator<Item = (bool, Vec<ObjectId>)>) -> Self {
        let mut checked = 0;
        for (ok, objs) in cases {
            checked += 1;
            if !ok {
                return BasisCheck {
                    holds: false,
                    checked,
                    witness: Some(objs),
                };
            }
        }
        BasisCheck {
            holds: true,
            checked,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    /// `U(0)` is the whole space.
    pub zero: BasisCheck,
    /// `U(m) ⊇ U(m') ∩ U(m'')` for every stored triangle `(m', m, m'')`.
    pub triangles: BasisCheck,
    /// `U(m (+) m') = U(m) ∩ U(m')`.
    pub sums: BasisCheck,
    /// `U(m) ⊆ U(a * m)`.
    pub action: BasisCheck,
    /// `U(T m) = U(m)`.
    pub translation: BasisCheck,
}

impl BasisReport {
    pub fn holds(&self) -> bool {
        [
            &self.zero,
            &self.triangles,
            &self.sums,
            &self.action,
            &self.translation,
        ]
        .iter()
        .all(|c| c.holds)
    }
}

pub fn basis_properties(p: &ModulePresentation, space: &SModSpace) -> Result<BasisReport> {
    if p.fingerprint() != space.presentation.fingerprint() {
        return Err(Error::PresentationMismatch);
    }
    let u = |m: ObjectId| space.basic_open(m);
    let objs: Vec<ObjectId> = p.module_objects().iter().collect();
    let acting: Vec<ObjectId> = p.category_objects().iter().collect();
    let zero = BasisCheck::scan(std::iter::once((
        u(p.zero()) == space.all_points(),
        vec![p.zero()],
    )));
    let triangles = BasisCheck::scan(p.triangles().iter().map(|t| {
        let [x, m, y] = t.entries();
        (u(x).intersection(u(y)).is_subset(u(m)), vec![x, m, y])
    }));
    let sums = BasisCheck::scan(objs.iter().flat_map(|&x| {
        objs.iter()
            .map(move |&y| (u(p.sum(x, y)) == u(x).intersection(u(y)), vec![x, y]))
    }));
    let action = BasisCheck::scan(acting.iter().flat_map(|&a| {
        objs.iter()
            .map(move |&m| (u(m).is_subset(u(p.act(a, m))), vec![a, m]))
    }));
    let translation = BasisCheck::scan(objs.iter().map(|&m| (u(p.translate(m)) == u(m), vec![m])));
    Ok(BasisReport {
        zero,
        triangles,
        sums,
        action,
        translation,
    })
}

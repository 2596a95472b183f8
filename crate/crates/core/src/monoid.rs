//! The operation `(N, N') -> c^inf(N + N')` on the fixed points of a gated
//! operator `c`, its unit, the monoid axioms and continuity in each variable
//! through the sets `N^c(m)`.

use serde::Serialize;

use crate::bitset::{ObjSet, ObjectId, PointId, PointSet};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::operators::{c_infinity, OperatorSpec};
use crate::space::{enumerate_smod_with, fixed_points, SModSpace};
use crate::thick::{add, principal, ThickSubmodule};

/// Fixed points of `c` with the operation `c^inf(N + N')`.
#[derive(Clone, Debug)]
pub struct Monoid {
    base: OperatorSpec,
    completion: OperatorSpec,
    space: SModSpace,
}

impl Monoid {
    /// Fails unless `c` is extensive, order-preserving and of finite type.
    pub fn new(c: &OperatorSpec) -> Result<Self> {
        Self::with_exec(c, Exec::default())
    }

    pub fn with_exec(c: &OperatorSpec, exec: Exec) -> Result<Self> {
        let completion = c_infinity(c)?;
        let space = fixed_points(&enumerate_smod_with(c.presentation(), exec), c)?;
        Ok(Monoid {
            base: c.clone(),
            completion,
            space,
        })
    }

    pub fn operator(&self) -> &OperatorSpec {
        &self.base
    }

    /// `c^inf`.
    pub fn completion(&self) -> &OperatorSpec {
        &self.completion
    }

    pub fn space(&self) -> &SModSpace {
        &self.space
    }

    fn check_fixed(&self, n: &ThickSubmodule) -> Result<()> {
        if !n.belongs_to(self.base.presentation()) {
            return Err(Error::PresentationMismatch);
        }
        if !self.base.is_fixed(n) {
            return Err(Error::NotFixedPoint);
        }
        Ok(())
    }

    fn join(&self, a: &ThickSubmodule, b: &ThickSubmodule) -> ThickSubmodule {
        let sum = add(self.base.presentation(), a, b).expect("same presentation");
        self.completion.apply(&sum)
    }

    pub fn op(&self, a: &ThickSubmodule, b: &ThickSubmodule) -> Result<ThickSubmodule> {
        self.check_fixed(a)?;
        self.check_fixed(b)?;
        Ok(self.join(a, b))
    }

    /// `c^inf(K(0))`, the least fixed point.
    pub fn identity_candidate(&self) -> ThickSubmodule {
        self.completion
            .apply(&ThickSubmodule::zero(self.base.presentation()))
    }

    /// The unit, after checking it is neutral against every point.
    pub fn identity_element(&self) -> Result<PointId> {
        let e = self.identity_candidate();
        let at = self.space.index_of(&e).ok_or(Error::NotFixedPoint)?;
        for (i, n) in self.space.points().iter().enumerate() {
            if self.join(&e, n) != *n || self.join(n, &e) != *n {
                return Err(Error::NeutralityFailure(i));
            }
        }
        Ok(at)
    }

    /// `N^c(m) = { m' : m in c^inf(N + K(m')) }`.
    pub fn nc_set(&self, n: &ThickSubmodule, m: ObjectId) -> Result<ObjSet> {
        self.check_fixed(n)?;
        let p = self.base.presentation().as_ref();
        p.check_object(m)?;
        Ok(p.module_objects()
            .iter()
            .filter(|&k| self.join_raw(n, k).contains(m))
            .collect())
    }

    /// Compares `f^{-1}(U(m))` for `f = N o -` with the union of `U(m')`
    /// over `m'` in `N^c(m)`, for every object `m`.
    pub fn continuity_check(&self, n: &ThickSubmodule) -> Result<ContinuityReport> {
        self.check_fixed(n)?;
        let p = self.base.presentation().as_ref();
        let row: Vec<ThickSubmodule> = self
            .space
            .points()
            .iter()
            .map(|x| self.join(n, x))
            .collect();
        let reach: Vec<ThickSubmodule> = p
            .module_objects()
            .iter()
            .map(|k| self.join_raw(n, k))
            .collect();
        Ok(self.continuity_from(self.space.index_of(n), &row, &reach))
    }

    /// `c^inf(N + K(k))`; `N + K(k)` need not be fixed.
    fn join_raw(&self, n: &ThickSubmodule, k: ObjectId) -> ThickSubmodule {
        let p = self.base.presentation().as_ref();
        let km = principal(p, k).expect("object in range");
        self.completion
            .apply(&add(p, n, &km).expect("same presentation"))
    }

    fn continuity_from(
        &self,
        point: Option<PointId>,
        row: &[ThickSubmodule],
        reach: &[ThickSubmodule],
    ) -> ContinuityReport {
        let p = self.base.presentation().as_ref();
        let entries: Vec<ContinuityEntry> = p
            .module_objects()
            .iter()
            .map(|m| {
                let nc: ObjSet = p
                    .module_objects()
                    .iter()
                    .filter(|k| reach[k.index()].contains(m))
                    .collect();
                let preimage: PointSet = (0..row.len())
                    .filter(|&j| row[j].contains(m))
                    .map(PointId)
                    .collect();
                let union = nc.iter().fold(PointSet::EMPTY, |acc, k| {
                    acc.union(self.space.basic_open(k))
                });
                ContinuityEntry {
                    object: m,
                    nc_set: nc,
                    preimage,
                    union,
                    holds: preimage == union,
                }
            })
            .collect();
        ContinuityReport {
            point,
            holds: entries.iter().all(|e| e.holds),
            entries,
        }
    }

    /// The operation table, or the first cell leaving the space.
    pub fn structure(&self) -> Result<MonoidStructure> {
        let table = self.table(Exec::default());
        let mut op_table = Vec::with_capacity(table.len());
        for row in &table {
            let mut out = Vec::with_capacity(row.len());
            for cell in row {
                out.push(cell.ok_or(Error::NotFixedPoint)?);
            }
            op_table.push(out);
        }
        Ok(MonoidStructure {
            points: self.space.points().iter().map(|n| n.members()).collect(),
            op_table,
            identity: self.identity_element()?,
        })
    }

    fn table(&self, exec: Exec) -> Vec<Vec<Option<PointId>>> {
        let pts = self.space.points();
        let n = pts.len();
        let cells = exec.map(n * n, |ij| {
            self.space.index_of(&self.join(&pts[ij / n], &pts[ij % n]))
        });
        cells.chunks(n.max(1)).map(<[_]>::to_vec).take(n).collect()
    }

    pub fn report(&self) -> MonoidReport {
        self.report_with(Exec::default())
    }

    pub fn report_with(&self, exec: Exec) -> MonoidReport {
        let p = self.base.presentation().as_ref();
        let pts = self.space.points();
        let n = pts.len();
        let table = self.table(exec);
        let cell = |i: usize, j: usize| table[i][j];

        let closure = MonoidCheck::from(exec.find_first(n * n, |ij| {
            let (i, j) = (ij / n, ij % n);
            cell(i, j).is_none().then(|| vec![PointId(i), PointId(j)])
        }));
        let commutativity = MonoidCheck::from(exec.find_first(n * n, |ij| {
            let (i, j) = (ij / n, ij % n);
            (cell(i, j) != cell(j, i)).then(|| vec![PointId(i), PointId(j)])
        }));
        let associativity = MonoidCheck::from(exec.find_first(n * n * n, |ijk| {
            let (i, j, k) = (ijk / (n * n), (ijk / n) % n, ijk % n);
            let left = cell(i, j).and_then(|ij| cell(ij.index(), k));
            let right = cell(j, k).and_then(|jk| cell(i, jk.index()));
            (left.is_none() || left != right).then(|| vec![PointId(i), PointId(j), PointId(k)])
        }));
        let identity = self.space.index_of(&self.identity_candidate());
        let neutrality = MonoidCheck::from(match identity {
            None => Some(Vec::new()),
            Some(e) => (0..n)
                .find(|&i| {
                    cell(e.index(), i) != Some(PointId(i)) || cell(i, e.index()) != Some(PointId(i))
                })
                .map(|i| vec![e, PointId(i)]),
        });
        let idempotence = MonoidCheck::from(
            (0..n)
                .find(|&i| cell(i, i) != Some(PointId(i)))
                .map(|i| vec![PointId(i)]),
        );

        let objs: Vec<ObjectId> = p.module_objects().iter().collect();
        let continuity = exec.map(n, |i| {
            let row: Vec<ThickSubmodule> = pts.iter().map(|x| self.join(&pts[i], x)).collect();
            let reach: Vec<ThickSubmodule> =
                objs.iter().map(|&k| self.join_raw(&pts[i], k)).collect();
            self.continuity_from(Some(PointId(i)), &row, &reach)
        });
        let continuous = continuity.iter().all(|c| c.holds);

        let passed = closure.holds
            && commutativity.holds
            && associativity.holds
            && neutrality.holds
            && continuous;
        MonoidReport {
            operator: self.base.name().to_string(),
            points: pts.iter().map(|x| x.members()).collect(),
            identity,
            table,
            closure,
            commutativity,
            associativity,
            neutrality,
            idempotence,
            continuous,
            continuity,
            passed,
        }
    }
}

/// The materialized operation on point indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidStructure {
    pub points: Vec<ObjSet>,
    pub op_table: Vec<Vec<PointId>>,
    pub identity: PointId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidCheck {
    pub holds: bool,
    pub witness: Vec<PointId>,
}

impl From<Option<Vec<PointId>>> for MonoidCheck {
    fn from(found: Option<Vec<PointId>>) -> Self {
        MonoidCheck {
            holds: found.is_none(),
            witness: found.unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityEntry {
    pub object: ObjectId,
    pub nc_set: ObjSet,
    pub preimage: PointSet,
    pub union: PointSet,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub point: Option<PointId>,
    pub entries: Vec<ContinuityEntry>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidReport {
    pub operator: String,
    pub points: Vec<ObjSet>,
    pub identity: Option<PointId>,
    /// `table[i][j]` is the point `i o j`, absent if it left the space.
    pub table: Vec<Vec<Option<PointId>>>,
    pub closure: MonoidCheck,
    pub commutativity: MonoidCheck,
    pub associativity: MonoidCheck,
    pub neutrality: MonoidCheck,
    /// `N o N = N`; reported, not part of `passed`.
    pub idempotence: MonoidCheck,
    pub continuous: bool,
    pub continuity: Vec<ContinuityReport>,
    pub passed: bool,
}

/// `c^inf(N + N')` for fixed points `N`, `N'` of `c`.
pub fn monoid_op(
    c: &OperatorSpec,
    a: &ThickSubmodule,
    b: &ThickSubmodule,
) -> Result<ThickSubmodule> {
    Monoid::new(c)?.op(a, b)
}

pub fn identity_element(c: &OperatorSpec) -> Result<ThickSubmodule> {
    let m = Monoid::new(c)?;
    let e = m.identity_element()?;
    Ok(*m.space().point(e))
}

pub fn nc_set(c: &OperatorSpec, n: &ThickSubmodule, m: ObjectId) -> Result<ObjSet> {
    Monoid::new(c)?.nc_set(n, m)
}

pub fn continuity_check(c: &OperatorSpec, n: &ThickSubmodule) -> Result<ContinuityReport> {
    Monoid::new(c)?.continuity_check(n)
}

pub fn monoid_report(c: &OperatorSpec) -> Result<MonoidReport> {
    Ok(Monoid::new(c)?.report())
}

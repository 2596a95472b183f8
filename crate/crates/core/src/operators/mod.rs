//! Operators `c : SMod(M) -> SMod(M)`: identity, radical, division by a
//! multiplicative set, family-induced closures, user tables, and the
//! completion `c^inf`.
//!
//! Every constructor evaluates the operator on all of `SMod(M)` once and
//! rejects it if any image fails to be thick, so evaluation on a thick
//! submodule of the same presentation always yields a thick submodule.

mod classify;
mod family;

use std::sync::Arc;

use crate::bitset::{ObjSet, ObjectId};
use crate::error::{Error, Result};
use crate::presentation::ModulePresentation;
use crate::thick::{all_submodules, first_violation, generate, principal, ThickSubmodule};

pub use classify::{classify, classify_with, Classification, PropertyCheck};
pub use family::{FamilySpec, FamilyViolation, MAX_FAMILY_SIZE};

#[derive(Clone, Debug)]
pub enum OperatorKind {
    Identity,
    /// `powers[a]` holds every distinct `a^{(x)n}`, `n >= 1`.
    Radical {
        powers: Vec<ObjSet>,
    },
    /// Division by the multiplicative set `s` (objects of `K`).
    Division {
        s: ObjSet,
    },
    Family {
        family: FamilySpec,
    },
    /// User-supplied images of the principals; `table[m]` contains `m`.
    Table {
        table: Vec<ObjSet>,
    },
    CInfinity {
        inner: Box<OperatorSpec>,
    },
}

impl OperatorKind {
    pub fn label(&self) -> &'static str {
        match self {
            OperatorKind::Identity => "identity",
            OperatorKind::Radical { .. } => "radical",
            OperatorKind::Division { .. } => "division",
            OperatorKind::Family { .. } => "family",
            OperatorKind::Table { .. } => "table",
            OperatorKind::CInfinity { .. } => "c-infinity",
        }
    }
}

/// Result of one evaluation; `repaired` marks a table operator whose raw
/// union of principal images was not thick and had to be generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub image: ThickSubmodule,
    pub repaired: bool,
}

#[derive(Clone, Debug)]
pub struct OperatorSpec {
    presentation: Arc<ModulePresentation>,
    name: String,
    kind: OperatorKind,
    /// `c(K(m))` for every module object `m`.
    principal_table: Vec<ThickSubmodule>,
    /// Submodules on which a table operator needed the generation repair.
    repairs: Vec<ThickSubmodule>,
}

impl OperatorSpec {
    fn build(
        presentation: &Arc<ModulePresentation>,
        name: impl Into<String>,
        kind: OperatorKind,
    ) -> Result<Self> {
        let mut op = OperatorSpec {
            presentation: Arc::clone(presentation),
            name: name.into(),
            kind,
            principal_table: Vec::new(),
            repairs: Vec::new(),
        };
        let p = op.presentation.as_ref();
        for point in all_submodules(p) {
            let (raw, repairable) = op.raw_image(point.members());
            if repairable {
                continue;
            }
            if let Some(v) = first_violation(p, raw) {
                return Err(Error::ImageNotThick {
                    operator: op.name.clone(),
                    detail: format!(
                        "image of {} is {{{}}}: {v}",
                        point.label(p),
                        p.names_of(raw).join(",")
                    ),
                });
            }
        }
        let mut repairs = Vec::new();
        for point in all_submodules(p) {
            if op.evaluate_traced(&point)?.repaired {
                repairs.push(point);
            }
        }
        let principal_table = p
            .module_objects()
            .iter()
            .map(|m| op.apply(&principal(p, m).expect("object in range")))
            .collect();
        op.principal_table = principal_table;
        op.repairs = repairs;
        Ok(op)
    }

    pub fn presentation(&self) -> &Arc<ModulePresentation> {
        &self.presentation
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `c(K(m))`.
    pub fn principal_image(&self, m: ObjectId) -> Result<ThickSubmodule> {
        self.presentation.check_object(m)?;
        Ok(self.principal_table[m.index()])
    }

    pub fn principal_table(&self) -> &[ThickSubmodule] {
        &self.principal_table
    }

    pub fn repairs(&self) -> &[ThickSubmodule] {
        &self.repairs
    }

    pub fn evaluate(&self, n: &ThickSubmodule) -> Result<ThickSubmodule> {
        self.evaluate_traced(n).map(|e| e.image)
    }

    pub fn evaluate_traced(&self, n: &ThickSubmodule) -> Result<Evaluation> {
        if !n.belongs_to(&self.presentation) {
            return Err(Error::PresentationMismatch);
        }
        let p = self.presentation.as_ref();
        let (raw, finite_union) = self.raw_image(n.members());
        if first_violation(p, raw).is_none() {
            return Ok(Evaluation {
                image: ThickSubmodule::trusted(p, raw),
                repaired: false,
            });
        }
        // Only the table rule can land here: other kinds were checked on
        // every submodule at construction.
        debug_assert!(finite_union);
        let (image, _) = generate(p, raw)?;
        Ok(Evaluation {
            image,
            repaired: true,
        })
    }

    /// Infallible evaluation for submodules known to share the presentation.
    pub(crate) fn apply(&self, n: &ThickSubmodule) -> ThickSubmodule {
        debug_assert!(n.belongs_to(&self.presentation));
        self.evaluate_traced(n)
            .expect("operator evaluation on own presentation")
            .image
    }

    pub fn is_fixed(&self, n: &ThickSubmodule) -> bool {
        n.belongs_to(&self.presentation) && self.apply(n) == *n
    }

    /// The image as a bare set, before any repair, and whether the rule is
    /// a union over principal images.
    fn raw_image(&self, n: ObjSet) -> (ObjSet, bool) {
        let p = self.presentation.as_ref();
        match &self.kind {
            OperatorKind::Identity => (n, false),
            OperatorKind::Radical { powers } => (
                p.module_objects()
                    .iter()
                    .filter(|a| !powers[a.index()].is_disjoint(n))
                    .collect(),
                false,
            ),
            OperatorKind::Division { s } => (
                p.module_objects()
                    .iter()
                    .filter(|&a| s.iter().any(|x| n.contains(p.tensor(a, x))))
                    .collect(),
                false,
            ),
            OperatorKind::Family { family } => (
                n.iter()
                    .fold(ObjSet::EMPTY, |acc, m| acc.union(family.meet_containing(m))),
                false,
            ),
            OperatorKind::Table { table } => (
                n.iter()
                    .fold(ObjSet::EMPTY, |acc, m| acc.union(table[m.index()])),
                true,
            ),
            OperatorKind::CInfinity { inner } => {
                let start = ThickSubmodule::trusted(p, n);
                (inner.iterate_to_fixpoint(&start).members(), false)
            }
        }
    }

    /// `N, c(N), c(c(N)), ...` until it repeats; for an extensive operator
    /// this is the union of all iterates.
    pub(crate) fn iterate_to_fixpoint(&self, n: &ThickSubmodule) -> ThickSubmodule {
        let mut cur = *n;
        // An extensive operator stabilises within |objects| steps.
        for _ in 0..=self.presentation.module_len() {
            let next = self.apply(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
        cur
    }
}

pub fn identity(p: &Arc<ModulePresentation>) -> Result<OperatorSpec> {
    OperatorSpec::build(p, "identity", OperatorKind::Identity)
}

/// `I -> { a | a^{(x)n} in I for some n >= 1 }`. Needs `K` acting on itself.
pub fn radical(p: &Arc<ModulePresentation>) -> Result<OperatorSpec> {
    if !p.is_self_action() {
        return Err(Error::NotSelfAction);
    }
    let powers = p
        .category_objects()
        .iter()
        .map(|a| {
            let mut seen = ObjSet::EMPTY;
            let mut cur = a;
            // The power sequence in a finite table is eventually periodic.
            while seen.insert(cur) {
                cur = p.tensor(cur, a);
            }
            seen
        })
        .collect();
    OperatorSpec::build(p, "radical", OperatorKind::Radical { powers })
}

/// `I -> { a | a (x) s in I for some s in S }` for a nonempty
/// multiplicatively closed `S`. Needs `K` acting on itself.
pub fn division(p: &Arc<ModulePresentation>, s: ObjSet) -> Result<OperatorSpec> {
    if !p.is_self_action() {
        return Err(Error::NotSelfAction);
    }
    if let Some(bad) = s.difference(p.category_objects()).first() {
        return Err(Error::UnknownObject(bad.index()));
    }
    if s.is_empty() {
        return Err(Error::EmptyMultiplicativeSet);
    }
    if let Some((x, y, xy)) = multiplicative_gap(p, s) {
        return Err(Error::NotMultiplicativelyClosed(
            x.index(),
            y.index(),
            xy.index(),
        ));
    }
    let name = format!("division{{{}}}", p.names_of(s).join(","));
    OperatorSpec::build(p, name, OperatorKind::Division { s })
}

/// First pair of `S` whose product leaves `S`.
pub fn multiplicative_gap(
    p: &ModulePresentation,
    s: ObjSet,
) -> Option<(ObjectId, ObjectId, ObjectId)> {
    s.iter()
        .flat_map(|x| s.iter().map(move |y| (x, y)))
        .map(|(x, y)| (x, y, p.tensor(x, y)))
        .find(|&(_, _, xy)| !s.contains(xy))
}

/// `c(K(m)) = meet of the members containing m`, `c(N) = union over N`.
pub fn from_family(p: &Arc<ModulePresentation>, family: FamilySpec) -> Result<OperatorSpec> {
    if !family.belongs_to(p) {
        return Err(Error::PresentationMismatch);
    }
    let name = format!("family[{}]", family.len());
    OperatorSpec::build(p, name, OperatorKind::Family { family })
}

/// Operator given by the images of the principals: `N -> union of table[n]`
/// over `n in N`, generated up to a thick submodule when the raw union
/// is not thick.
pub fn table_operator(
    p: &Arc<ModulePresentation>,
    name: impl Into<String>,
    table: &[ObjSet],
) -> Result<OperatorSpec> {
    let n = p.module_len();
    if table.len() < n {
        return Err(Error::TableNotTotal(table.len()));
    }
    if table.len() > n {
        return Err(Error::UnknownObject(n));
    }
    for m in p.module_objects().iter() {
        let entry = table[m.index()];
        p.check_set(entry)?;
        if first_violation(p, entry).is_some() {
            return Err(Error::TableEntryNotThick(m.index()));
        }
        if !entry.contains(m) {
            return Err(Error::TableEntryNotExtensive(m.index()));
        }
    }
    OperatorSpec::build(
        p,
        name,
        OperatorKind::Table {
            table: table.to_vec(),
        },
    )
}

/// `c^inf(N) = union of c^i(N)`. Requires `c` extensive, order-preserving
/// and of finite type.
pub fn c_infinity(c: &OperatorSpec) -> Result<OperatorSpec> {
    classify(c).gate()?;
    let name = format!("c-infinity({})", c.name());
    OperatorSpec::build(
        &c.presentation,
        name,
        OperatorKind::CInfinity {
            inner: Box::new(c.clone()),
        },
    )
}

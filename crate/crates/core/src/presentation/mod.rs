//! Finite skeletal presentations of a tensor triangulated category `K` and of
//! a triangulated `K`-module `M`.
//!
//! Objects are isomorphism classes, so every structure map is a lookup
//! table. Raw tables ([`PresentationTables`]) are freely editable; a
//! [`ModulePresentation`] is the validated, immutable form every algorithm
//! consumes.

mod models;
mod validate;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use indexmap::IndexSet;
use serde::Serialize;

use crate::bitset::{ObjSet, ObjectId, CAPACITY};
use crate::error::{Error, Result};

pub use models::{
    chain_model, chain_model_bounded, restriction_model, support_model, support_model_bounded,
    DEFAULT_CHAIN_BOUND, DEFAULT_SUPPORT_BOUND,
};
pub use validate::{validate, Axiom, Side, StructuralError, ValidationReport, Violation};

/// Default cap on the object count of a loaded presentation.
pub const DEFAULT_MAX_OBJECTS: usize = 16;

/// A stored distinguished triangle `m' -> m -> m'' -> T m'`, as `[m', m, m'']`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triangle(pub [ObjectId; 3]);

impl Triangle {
    pub fn new(a: ObjectId, b: ObjectId, c: ObjectId) -> Self {
        Triangle([a, b, c])
    }

    /// `(m', m, m'') -> (m, m'', T m')`.
    pub fn rotate(self, translate: &[ObjectId]) -> Self {
        let [a, b, c] = self.0;
        Triangle([b, c, translate[a.index()]])
    }

    pub fn entries(self) -> [ObjectId; 3] {
        self.0
    }
}

/// Closes `triangles` under rotation, keeping first-occurrence order: each
/// input triple is followed by whatever rotations of it were not yet present.
pub fn close_under_rotation(triangles: &[Triangle], translate: &[ObjectId]) -> Vec<Triangle> {
    let mut closed: IndexSet<Triangle> = IndexSet::with_capacity(triangles.len() * 3);
    for &t in triangles {
        let mut cur = t;
        while closed.insert(cur) {
            cur = cur.rotate(translate);
        }
    }
    closed.into_iter().collect()
}

/// Tables of the acting category `(K, (+), (x), 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CategoryTables {
    pub names: Vec<String>,
    pub zero: ObjectId,
    pub unit: ObjectId,
    pub sum: Vec<Vec<ObjectId>>,
    pub tensor: Vec<Vec<ObjectId>>,
    pub translate: Vec<ObjectId>,
    pub triangles: Vec<Triangle>,
}

/// Tables of the module `M`; `action[a][m]` is `a * m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleTables {
    pub names: Vec<String>,
    pub zero: ObjectId,
    pub sum: Vec<Vec<ObjectId>>,
    pub translate: Vec<ObjectId>,
    pub triangles: Vec<Triangle>,
    pub action: Vec<Vec<ObjectId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentationTables {
    pub category: CategoryTables,
    pub module: ModuleTables,
    /// Set when `M` was declared as `K` acting on itself; the module tables
    /// are then required to be copies of the category tables.
    pub self_action: bool,
}

impl PresentationTables {
    /// `K` as a module over itself via `(x)`.
    pub fn regular(category: CategoryTables) -> Self {
        let module = ModuleTables {
            names: category.names.clone(),
            zero: category.zero,
            sum: category.sum.clone(),
            translate: category.translate.clone(),
            triangles: category.triangles.clone(),
            action: category.tensor.clone(),
        };
        PresentationTables {
            category,
            module,
            self_action: true,
        }
    }

    /// Replaces both triangle lists by their rotation closures. Tables with
    /// out-of-range entries are left alone for the validator to report.
    pub fn close_triangles(&mut self) {
        let k = &mut self.category;
        if closable(&k.translate, &k.triangles, k.names.len()) {
            k.triangles = close_under_rotation(&k.triangles, &k.translate);
        }
        let m = &mut self.module;
        if closable(&m.translate, &m.triangles, m.names.len()) {
            m.triangles = close_under_rotation(&m.triangles, &m.translate);
        }
    }
}

fn closable(translate: &[ObjectId], triangles: &[Triangle], n: usize) -> bool {
    translate.len() == n
        && translate.iter().all(|x| x.index() < n)
        && triangles
            .iter()
            .all(|t| t.entries().iter().all(|x| x.index() < n))
}

/// A validated finite presentation of `K` acting on `M`.
///
/// Immutable after construction and safe to share across threads.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    tables: PresentationTables,
    summands: Vec<ObjSet>,
    fingerprint: u64,
}

impl ModulePresentation {
    pub fn new(tables: PresentationTables) -> Result<Self> {
        Self::with_limit(tables, DEFAULT_MAX_OBJECTS)
    }

    pub fn with_limit(tables: PresentationTables, max_objects: usize) -> Result<Self> {
        let limit = max_objects.min(CAPACITY);
        for (what, count) in [
            ("category", tables.category.names.len()),
            ("module", tables.module.names.len()),
        ] {
            if count > limit {
                return Err(Error::TooLarge {
                    what: what.to_string(),
                    count,
                    limit,
                });
            }
        }
        let report = validate(&tables)?;
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        let m = &tables.module;
        let n = m.names.len();
        let mut summands = vec![ObjSet::EMPTY; n];
        for x in 0..n {
            for y in 0..n {
                summands[m.sum[x][y].index()].insert(ObjectId(x));
            }
        }
        let mut hasher = DefaultHasher::new();
        tables.hash(&mut hasher);
        Ok(ModulePresentation {
            fingerprint: hasher.finish(),
            tables,
            summands,
        })
    }

    pub fn tables(&self) -> &PresentationTables {
        &self.tables
    }

    pub fn into_tables(self) -> PresentationTables {
        self.tables
    }

    pub fn category(&self) -> &CategoryTables {
        &self.tables.category
    }

    pub fn module(&self) -> &ModuleTables {
        &self.tables.module
    }

    /// Content hash of the tables; equal tables give equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn module_len(&self) -> usize {
        self.tables.module.names.len()
    }

    pub fn category_len(&self) -> usize {
        self.tables.category.names.len()
    }

    pub fn module_objects(&self) -> ObjSet {
        ObjSet::full(self.module_len())
    }

    pub fn category_objects(&self) -> ObjSet {
        ObjSet::full(self.category_len())
    }

    pub fn zero(&self) -> ObjectId {
        self.tables.module.zero
    }

    pub fn name(&self, m: ObjectId) -> &str {
        &self.tables.module.names[m.index()]
    }

    pub fn category_name(&self, a: ObjectId) -> &str {
        &self.tables.category.names[a.index()]
    }

    pub fn names_of(&self, s: ObjSet) -> Vec<String> {
        s.iter().map(|m| self.name(m).to_string()).collect()
    }

    pub fn object(&self, name: &str) -> Option<ObjectId> {
        self.tables
            .module
            .names
            .iter()
            .position(|n| n == name)
            .map(ObjectId)
    }

    pub fn category_object(&self, name: &str) -> Option<ObjectId> {
        self.tables
            .category
            .names
            .iter()
            .position(|n| n == name)
            .map(ObjectId)
    }

    #[inline]
    pub fn sum(&self, x: ObjectId, y: ObjectId) -> ObjectId {
        self.tables.module.sum[x.index()][y.index()]
    }

    #[inline]
    pub fn act(&self, a: ObjectId, m: ObjectId) -> ObjectId {
        self.tables.module.action[a.index()][m.index()]
    }

    #[inline]
    pub fn tensor(&self, a: ObjectId, b: ObjectId) -> ObjectId {
        self.tables.category.tensor[a.index()][b.index()]
    }

    #[inline]
    pub fn translate(&self, m: ObjectId) -> ObjectId {
        self.tables.module.translate[m.index()]
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.tables.module.triangles
    }

    /// Closed sum of a set of module objects; the zero object for `{}`.
    pub fn sum_all(&self, s: ObjSet) -> ObjectId {
        s.iter().fold(self.zero(), |acc, m| self.sum(acc, m))
    }

    pub fn check_object(&self, m: ObjectId) -> Result<()> {
        if m.index() < self.module_len() {
            Ok(())
        } else {
            Err(Error::UnknownObject(m.index()))
        }
    }

    pub fn check_set(&self, s: ObjSet) -> Result<()> {
        match s.difference(self.module_objects()).first() {
            None => Ok(()),
            Some(bad) => Err(Error::UnknownObject(bad.index())),
        }
    }

    /// `{ n | n (+) n' = x for some n' }`, read off the sum table.
    pub fn summands(&self, x: ObjectId) -> Result<ObjSet> {
        self.check_object(x)?;
        Ok(self.summands[x.index()])
    }

    #[inline]
    pub(crate) fn summands_of(&self, x: ObjectId) -> ObjSet {
        self.summands[x.index()]
    }

    /// Whether `M` is `K` acting on itself, decided from the tables alone.
    pub fn is_self_action(&self) -> bool {
        let (k, m) = (&self.tables.category, &self.tables.module);
        k.names.len() == m.names.len()
            && k.zero == m.zero
            && k.sum == m.sum
            && k.translate == m.translate
            && k.tensor == m.action
            && k.triangles.iter().collect::<IndexSet<_>>()
                == m.triangles.iter().collect::<IndexSet<_>>()
    }
}

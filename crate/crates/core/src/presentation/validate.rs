//! Table-level checks of the axioms a presentation is assumed to satisfy.
//!
//! Structural problems (wrong table shapes, out-of-range ids, duplicate
//! names) abort with a [`StructuralError`]. Axiom failures are collected
//! exhaustively into a [`ValidationReport`], each with its witnessing tuple.
//! The octahedral axiom is not checkable from object-level tables and is
//! listed in every report as an unchecked assumption.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{CategoryTables, ModuleTables, PresentationTables, Triangle};
use crate::bitset::{ObjectId, CAPACITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("{0} has no objects")]
    Empty(Side),
    #[error("{side} has more than {CAPACITY} objects ({count})")]
    Capacity { side: Side, count: usize },
    #[error("{side}: duplicate object name '{name}'")]
    DuplicateName { side: Side, name: String },
    #[error("{side}: table '{table}' has shape {found}, expected {expected}")]
    Shape {
        side: Side,
        table: &'static str,
        expected: String,
        found: String,
    },
    #[error("{side}: table '{table}' refers to object id {id} outside 0..{len}")]
    OutOfRange {
        side: Side,
        table: &'static str,
        id: usize,
        len: usize,
    },
    #[error(
        "module declared as K acting on itself but its tables differ from the category's ({0})"
    )]
    SelfActionMismatch(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Category,
    Module,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Category => "category",
            Side::Module => "module",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    SumCommutative,
    SumAssociative,
    SumZero,
    TensorCommutative,
    TensorAssociative,
    TensorUnit,
    TensorZero,
    TensorDistributive,
    TranslateBijective,
    RotationClosure,
    IdentityTriangle,
    ActionUnit,
    ActionAssociative,
    ActionDistributiveCategory,
    ActionDistributiveModule,
    ActionZeroModule,
    ActionZeroCategory,
    TranslationCompatible,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::SumCommutative => "sum-commutative",
            Axiom::SumAssociative => "sum-associative",
            Axiom::SumZero => "sum-zero",
            Axiom::TensorCommutative => "tensor-commutative",
            Axiom::TensorAssociative => "tensor-associative",
            Axiom::TensorUnit => "tensor-unit",
            Axiom::TensorZero => "tensor-zero",
            Axiom::TensorDistributive => "tensor-distributive",
            Axiom::TranslateBijective => "translate-bijective",
            Axiom::RotationClosure => "rotation-closure",
            Axiom::IdentityTriangle => "identity-triangle",
            Axiom::ActionUnit => "action-unit",
            Axiom::ActionAssociative => "action-associative",
            Axiom::ActionDistributiveCategory => "action-distributive-category",
            Axiom::ActionDistributiveModule => "action-distributive-module",
            Axiom::ActionZeroModule => "action-zero-module",
            Axiom::ActionZeroCategory => "action-zero-category",
            Axiom::TranslationCompatible => "translation-compatible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub side: Side,
    pub axiom: Axiom,
    /// Object names of the witnessing tuple.
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} at ({})",
            self.side,
            self.axiom.name(),
            self.witness.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub unchecked: Vec<&'static str>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn summary(&self) -> String {
        const SHOWN: usize = 3;
        let mut parts: Vec<String> = self
            .violations
            .iter()
            .take(SHOWN)
            .map(ToString::to_string)
            .collect();
        if self.violations.len() > SHOWN {
            parts.push(format!("... {} more", self.violations.len() - SHOWN));
        }
        parts.join("; ")
    }
}

pub fn validate(tables: &PresentationTables) -> Result<ValidationReport, StructuralError> {
    check_structure(tables)?;
    let k = &tables.category;
    let m = &tables.module;
    let mut out = Vec::new();

    check_category(k, &mut out);
    if !tables.self_action {
        let side = TriangulatedSide {
            side: Side::Module,
            names: &m.names,
            zero: m.zero,
            sum: &m.sum,
            translate: &m.translate,
            triangles: &m.triangles,
        };
        side.check(&mut out);
    }
    check_action(k, m, &mut out);

    Ok(ValidationReport {
        violations: out,
        unchecked: vec!["octahedral axiom (not decidable from object-level tables)"],
    })
}

fn check_structure(t: &PresentationTables) -> Result<(), StructuralError> {
    let k = &t.category;
    let m = &t.module;
    let (nk, nm) = (k.names.len(), m.names.len());
    for (side, names) in [(Side::Category, &k.names), (Side::Module, &m.names)] {
        if names.is_empty() {
            return Err(StructuralError::Empty(side));
        }
        if names.len() > CAPACITY {
            return Err(StructuralError::Capacity {
                side,
                count: names.len(),
            });
        }
        let mut seen = HashSet::new();
        for n in names {
            if !seen.insert(n) {
                return Err(StructuralError::DuplicateName {
                    side,
                    name: n.clone(),
                });
            }
        }
    }

    let c = Side::Category;
    let md = Side::Module;
    in_range(c, "zero", [k.zero], nk)?;
    in_range(c, "unit", [k.unit], nk)?;
    square(c, "sum", &k.sum, nk, nk)?;
    square(c, "tensor", &k.tensor, nk, nk)?;
    vector(c, "translate", &k.translate, nk)?;
    in_range(c, "triangles", k.triangles.iter().flat_map(|t| t.0), nk)?;

    in_range(md, "zero", [m.zero], nm)?;
    square(md, "sum", &m.sum, nm, nm)?;
    square(md, "action", &m.action, nk, nm)?;
    vector(md, "translate", &m.translate, nm)?;
    in_range(md, "triangles", m.triangles.iter().flat_map(|t| t.0), nm)?;

    if t.self_action {
        let mismatch = if k.names != m.names {
            Some("names")
        } else if k.zero != m.zero {
            Some("zero")
        } else if k.sum != m.sum {
            Some("sum")
        } else if k.translate != m.translate {
            Some("translate")
        } else if k.tensor != m.action {
            Some("action")
        } else if k.triangles.iter().collect::<HashSet<_>>()
            != m.triangles.iter().collect::<HashSet<_>>()
        {
            Some("triangles")
        } else {
            None
        };
        if let Some(what) = mismatch {
            return Err(StructuralError::SelfActionMismatch(what));
        }
    }
    Ok(())
}

fn in_range(
    side: Side,
    table: &'static str,
    ids: impl IntoIterator<Item = ObjectId>,
    len: usize,
) -> Result<(), StructuralError> {
    match ids.into_iter().find(|x| x.index() >= len) {
        None => Ok(()),
        Some(bad) => Err(StructuralError::OutOfRange {
            side,
            table,
            id: bad.index(),
            len,
        }),
    }
}

fn square(
    side: Side,
    table: &'static str,
    rows: &[Vec<ObjectId>],
    nrows: usize,
    ncols: usize,
) -> Result<(), StructuralError> {
    let shape_ok = rows.len() == nrows && rows.iter().all(|r| r.len() == ncols);
    if !shape_ok {
        let found = match rows.iter().find(|r| r.len() != ncols) {
            Some(r) if rows.len() == nrows => format!("{}x(row of {})", rows.len(), r.len()),
            _ => format!("{} rows", rows.len()),
        };
        return Err(StructuralError::Shape {
            side,
            table,
            expected: format!("{nrows}x{ncols}"),
            found,
        });
    }
    // values live on the column side
    in_range(side, table, rows.iter().flatten().copied(), ncols)
}

fn vector(
    side: Side,
    table: &'static str,
    v: &[ObjectId],
    n: usize,
) -> Result<(), StructuralError> {
    if v.len() != n {
        return Err(StructuralError::Shape {
            side,
            table,
            expected: n.to_string(),
            found: v.len().to_string(),
        });
    }
    in_range(side, table, v.iter().copied(), n)
}

/// The part of the axioms shared by `K` and `M`: sum table, translation,
/// and the triangle set.
struct TriangulatedSide<'a> {
    side: Side,
    names: &'a [String],
    zero: ObjectId,
    sum: &'a [Vec<ObjectId>],
    translate: &'a [ObjectId],
    triangles: &'a [Triangle],
}

impl TriangulatedSide<'_> {
    fn name(&self, x: usize) -> String {
        self.names[x].clone()
    }

    fn push(&self, out: &mut Vec<Violation>, axiom: Axiom, witness: &[usize]) {
        out.push(Violation {
            side: self.side,
            axiom,
            witness: witness.iter().map(|&x| self.name(x)).collect(),
        });
    }

    fn check(&self, out: &mut Vec<Violation>) {
        let n = self.names.len();
        let s = |x: usize, y: usize| self.sum[x][y].index();
        let z = self.zero.index();
        for x in 0..n {
            if s(x, z) != x {
                self.push(out, Axiom::SumZero, &[x]);
            }
            for y in 0..n {
                if y > x && s(x, y) != s(y, x) {
                    self.push(out, Axiom::SumCommutative, &[x, y]);
                }
                for w in 0..n {
                    if s(s(x, y), w) != s(x, s(y, w)) {
                        self.push(out, Axiom::SumAssociative, &[x, y, w]);
                    }
                }
            }
        }

        let mut hit = vec![false; n];
        for &t in self.translate {
            hit[t.index()] = true;
        }
        if let Some(x) = hit.iter().position(|h| !h) {
            self.push(out, Axiom::TranslateBijective, &[x]);
        }

        let stored: HashSet<Triangle> = self.triangles.iter().copied().collect();
        for &t in self.triangles {
            if !stored.contains(&t.rotate(self.translate)) {
                let [a, b, c] = t.0;
                self.push(
                    out,
                    Axiom::RotationClosure,
                    &[a.index(), b.index(), c.index()],
                );
            }
        }
        for x in 0..n {
            let id = ObjectId(x);
            if !stored.contains(&Triangle::new(id, id, self.zero)) {
                self.push(out, Axiom::IdentityTriangle, &[x]);
            }
        }
    }
}

fn check_category(k: &CategoryTables, out: &mut Vec<Violation>) {
    let side = TriangulatedSide {
        side: Side::Category,
        names: &k.names,
        zero: k.zero,
        sum: &k.sum,
        translate: &k.translate,
        triangles: &k.triangles,
    };
    side.check(out);

    let n = k.names.len();
    let s = |x: usize, y: usize| k.sum[x][y].index();
    let t = |x: usize, y: usize| k.tensor[x][y].index();
    let (one, z) = (k.unit.index(), k.zero.index());
    for x in 0..n {
        if t(x, one) != x {
            side.push(out, Axiom::TensorUnit, &[x]);
        }
        if t(x, z) != z {
            side.push(out, Axiom::TensorZero, &[x]);
        }
        for y in 0..n {
            if y > x && t(x, y) != t(y, x) {
                side.push(out, Axiom::TensorCommutative, &[x, y]);
            }
            for w in 0..n {
                if t(t(x, y), w) != t(x, t(y, w)) {
                    side.push(out, Axiom::TensorAssociative, &[x, y, w]);
                }
                // c (x) (a (+) b) = (c (x) a) (+) (c (x) b)
                if t(w, s(x, y)) != s(t(w, x), t(w, y)) {
                    side.push(out, Axiom::TensorDistributive, &[w, x, y]);
                }
            }
        }
    }
}

fn check_action(k: &CategoryTables, m: &ModuleTables, out: &mut Vec<Violation>) {
    let (nk, nm) = (k.names.len(), m.names.len());
    let act = |a: usize, x: usize| m.action[a][x].index();
    let ks = |a: usize, b: usize| k.sum[a][b].index();
    let kt = |a: usize, b: usize| k.tensor[a][b].index();
    let ms = |x: usize, y: usize| m.sum[x][y].index();
    let (one, kz, mz) = (k.unit.index(), k.zero.index(), m.zero.index());
    let shift = k.translate[one].index();

    let mut push = |axiom: Axiom, ka: &[usize], mx: &[usize]| {
        let witness = ka
            .iter()
            .map(|&a| k.names[a].clone())
            .chain(mx.iter().map(|&x| m.names[x].clone()))
            .collect();
        out.push(Violation {
            side: Side::Module,
            axiom,
            witness,
        });
    };

    for x in 0..nm {
        if act(one, x) != x {
            push(Axiom::ActionUnit, &[], &[x]);
        }
        if act(kz, x) != mz {
            push(Axiom::ActionZeroCategory, &[], &[x]);
        }
        if m.translate[x].index() != act(shift, x) {
            push(Axiom::TranslationCompatible, &[], &[x]);
        }
    }
    for a in 0..nk {
        if act(a, mz) != mz {
            push(Axiom::ActionZeroModule, &[a], &[]);
        }
        for x in 0..nm {
            for b in 0..nk {
                if act(kt(a, b), x) != act(a, act(b, x)) {
                    push(Axiom::ActionAssociative, &[a, b], &[x]);
                }
                if act(ks(a, b), x) != ms(act(a, x), act(b, x)) {
                    push(Axiom::ActionDistributiveCategory, &[a, b], &[x]);
                }
            }
            for y in 0..nm {
                if act(a, ms(x, y)) != ms(act(a, x), act(a, y)) {
                    push(Axiom::ActionDistributiveModule, &[a], &[x, y]);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{chain_model, restriction_model, support_model};

    #[test]
    fn reference_models_validate() {
        for n in 1..=4 {
            let p = support_model(n).unwrap();
            assert!(
                validate(p.tables()).unwrap().is_empty(),
                "support_model({n})"
            );
        }
        for n in 1..=8 {
            let p = chain_model(n).unwrap();
            assert!(validate(p.tables()).unwrap().is_empty(), "chain_model({n})");
        }
        let p = restriction_model(3, 2).unwrap();
        assert!(validate(p.tables()).unwrap().is_empty());
    }

    #[test]
    fn broken_sum_unit_is_named() {
        let mut t = support_model(2).unwrap().into_tables();
        // a (+) z := b in both category and module copies
        t.category.sum[1][0] = ObjectId(2);
        t.module.sum[1][0] = ObjectId(2);
        let report = validate(&t).unwrap();
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == Axiom::SumZero)
            .expect("sum-zero violation");
        assert_eq!(v.witness, vec!["a".to_string()]);
    }

    #[test]
    fn deleted_rotation_is_reported() {
        let mut t = support_model(2).unwrap().into_tables();
        let victim = Triangle::new(ObjectId(3), ObjectId(2), ObjectId(1));
        t.category.triangles.retain(|&x| x != victim);
        t.module.triangles.retain(|&x| x != victim);
        let report = validate(&t).unwrap();
        assert!(report.has(Axiom::RotationClosure));
        // The triple whose rotation went missing is (a, t, b).
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::RotationClosure && v.witness == ["a", "t", "b"]));
    }

    #[test]
    fn out_of_range_is_structural() {
        let mut t = support_model(2).unwrap().into_tables();
        t.module.action[0][0] = ObjectId(7);
        t.self_action = false;
        assert!(matches!(
            validate(&t),
            Err(StructuralError::OutOfRange {
                table: "action",
                id: 7,
                ..
            })
        ));
    }

    #[test]
    fn missing_row_is_structural() {
        let mut t = chain_model(2).unwrap().into_tables();
        t.category.tensor.pop();
        assert!(matches!(
            validate(&t),
            Err(StructuralError::Shape {
                table: "tensor",
                ..
            })
        ));
    }

    #[test]
    fn self_action_copy_must_match() {
        let mut t = support_model(2).unwrap().into_tables();
        t.module.sum[1][1] = ObjectId(0);
        assert!(matches!(
            validate(&t),
            Err(StructuralError::SelfActionMismatch("sum"))
        ));
    }

    #[test]
    fn broken_action_associativity() {
        let mut t = restriction_model(2, 1).unwrap().into_tables();
        // b * t := t, so (b (x) a) * t = z but b * (a * t) = t
        t.module.action[2][1] = ObjectId(1);
        let report = validate(&t).unwrap();
        assert!(!report.is_empty());
    }

    #[test]
    fn report_lists_octahedral_assumption() {
        let report = validate(support_model(1).unwrap().tables()).unwrap();
        assert_eq!(report.unchecked.len(), 1);
        assert!(report.unchecked[0].contains("octahedral"));
    }
}

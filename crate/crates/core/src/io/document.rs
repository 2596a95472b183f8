//! The presentation file format: JSON with object names in every table.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bitset::ObjectId;
use crate::error::{Error, Result};
use crate::presentation::{
    CategoryTables, ModulePresentation, ModuleTables, PresentationTables, Triangle,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    pub category: CategorySection,
    /// Absent means `K` acting on itself by the tensor product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSection>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub operators: IndexMap<String, OperatorDef>,
}

/// Rows of `sum` and `tensor` follow `objects`; `translate[i]` is the
/// translate of `objects[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySection {
    pub objects: Vec<String>,
    pub zero: String,
    pub unit: String,
    pub sum: Vec<Vec<String>>,
    pub tensor: Vec<Vec<String>>,
    pub translate: Vec<String>,
    #[serde(default)]
    pub triangles: Vec<[String; 3]>,
}

/// `action[i][j]` is `category.objects[i] * objects[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    pub objects: Vec<String>,
    pub zero: String,
    pub sum: Vec<Vec<String>>,
    pub translate: Vec<String>,
    #[serde(default)]
    pub triangles: Vec<[String; 3]>,
    pub action: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OperatorDef {
    Identity {},
    Radical {},
    /// Multiplicative set, as category object names.
    Division {
        s: Vec<String>,
    },
    /// Member lists of the family's submodules.
    Family {
        members: Vec<Vec<String>>,
    },
    /// Image of each principal `K(m)`, keyed by module object name.
    Table {
        table: IndexMap<String, Vec<String>>,
    },
    /// Completion of another operator of this document, or `identity`.
    CInfinity {
        inner: String,
    },
}

impl PresentationDocument {
    /// Parses a document, reporting the position of syntax and shape errors.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        super::json::to_string(self)
    }

    /// Resolves names to indices and closes both triangle lists under
    /// rotation. Shape and range problems are left to validation.
    pub fn tables(&self) -> Result<PresentationTables> {
        let k = &self.category;
        let kn = Names::new(&k.objects, "category");
        let category = CategoryTables {
            names: k.objects.clone(),
            zero: kn.get(&k.zero, "category.zero")?,
            unit: kn.get(&k.unit, "category.unit")?,
            sum: kn.rows(&k.sum, "category.sum")?,
            tensor: kn.rows(&k.tensor, "category.tensor")?,
            translate: kn.row(&k.translate, "category.translate")?,
            triangles: kn.triangles(&k.triangles, "category.triangles")?,
        };
        let mut tables = match &self.module {
            None => PresentationTables::regular(category),
            Some(m) => {
                let mn = Names::new(&m.objects, "module");
                let module = ModuleTables {
                    names: m.objects.clone(),
                    zero: mn.get(&m.zero, "module.zero")?,
                    sum: mn.rows(&m.sum, "module.sum")?,
                    translate: mn.row(&m.translate, "module.translate")?,
                    triangles: mn.triangles(&m.triangles, "module.triangles")?,
                    action: mn.rows(&m.action, "module.action")?,
                };
                PresentationTables {
                    category,
                    module,
                    self_action: false,
                }
            }
        };
        tables.close_triangles();
        Ok(tables)
    }

    /// The document of a presentation, with an empty operator section.
    pub fn from_presentation(p: &ModulePresentation) -> Self {
        let t = p.tables();
        let k = &t.category;
        let kname = |x: &ObjectId| k.names[x.index()].clone();
        let category = CategorySection {
            objects: k.names.clone(),
            zero: kname(&k.zero),
            unit: kname(&k.unit),
            sum: name_rows(&k.sum, &kname),
            tensor: name_rows(&k.tensor, &kname),
            translate: k.translate.iter().map(kname).collect(),
            triangles: name_triangles(&k.triangles, &kname),
        };
        let module = (!t.self_action).then(|| {
            let m = &t.module;
            let mname = |x: &ObjectId| m.names[x.index()].clone();
            ModuleSection {
                objects: m.names.clone(),
                zero: mname(&m.zero),
                sum: name_rows(&m.sum, &mname),
                translate: m.translate.iter().map(mname).collect(),
                triangles: name_triangles(&m.triangles, &mname),
                action: name_rows(&m.action, &mname),
            }
        });
        PresentationDocument {
            category,
            module,
            operators: IndexMap::new(),
        }
    }

    /// The document with triangle lists replaced by their rotation closures;
    /// what a load followed by a save produces.
    pub fn normalized(&self) -> Result<Self> {
        let tables = self.tables()?;
        let mut out = self.clone();
        let k = &tables.category;
        let kname = |x: &ObjectId| k.names[x.index()].clone();
        out.category.triangles = name_triangles(&k.triangles, &kname);
        if let Some(m) = out.module.as_mut() {
            let mt = &tables.module;
            let mname = |x: &ObjectId| mt.names[x.index()].clone();
            m.triangles = name_triangles(&mt.triangles, &mname);
        }
        Ok(out)
    }
}

fn name_rows(rows: &[Vec<ObjectId>], name: &impl Fn(&ObjectId) -> String) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(name).collect()).collect()
}

fn name_triangles(ts: &[Triangle], name: &impl Fn(&ObjectId) -> String) -> Vec<[String; 3]> {
    ts.iter().map(|t| t.entries().map(|x| name(&x))).collect()
}

/// First index of each name; duplicates are reported by validation.
pub(crate) struct Names {
    index: HashMap<String, usize>,
    side: &'static str,
}

impl Names {
    pub(crate) fn new(names: &[String], side: &'static str) -> Self {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            index.entry(n.clone()).or_insert(i);
        }
        Names { index, side }
    }

    pub(crate) fn get(&self, token: &str, context: &str) -> Result<ObjectId> {
        self.index
            .get(token)
            .map(|&i| ObjectId(i))
            .ok_or_else(|| Error::Resolve {
                token: token.to_string(),
                context: format!("{context} ({} objects)", self.side),
            })
    }

    pub(crate) fn row(&self, row: &[String], context: &str) -> Result<Vec<ObjectId>> {
        row.iter().map(|t| self.get(t, context)).collect()
    }

    fn rows(&self, rows: &[Vec<String>], context: &str) -> Result<Vec<Vec<ObjectId>>> {
        rows.iter().map(|r| self.row(r, context)).collect()
    }

    fn triangles(&self, ts: &[[String; 3]], context: &str) -> Result<Vec<Triangle>> {
        ts.iter()
            .map(|[a, b, c]| {
                Ok(Triangle::new(
                    self.get(a, context)?,
                    self.get(b, context)?,
                    self.get(c, context)?,
                ))
            })
            .collect()
    }
}

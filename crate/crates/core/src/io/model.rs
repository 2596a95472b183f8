use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use sha2::{Digest, Sha256};

use super::document::{Names, OperatorDef, PresentationDocument};
use crate::bitset::{ObjSet, CAPACITY};
use crate::error::{Error, Result};
use crate::operators::{
    c_infinity, division, from_family, identity, radical, table_operator, FamilySpec, OperatorSpec,
};
use crate::presentation::{ModulePresentation, DEFAULT_MAX_OBJECTS};
use crate::thick::ThickSubmodule;

/// Name of the operator every model provides without declaring it.
pub const IDENTITY: &str = "identity";

/// A loaded presentation with its named operators, in document order.
#[derive(Clone, Debug)]
pub struct Model {
    presentation: Arc<ModulePresentation>,
    operators: IndexMap<String, OperatorSpec>,
    document: PresentationDocument,
}

impl Model {
    pub fn from_document(doc: PresentationDocument, max_objects: usize) -> Result<Self> {
        if max_objects > CAPACITY {
            return Err(Error::Usage(format!(
                "--max-objects {max_objects} exceeds the supported maximum of {CAPACITY}"
            )));
        }
        let document = doc.normalized()?;
        let presentation = Arc::new(ModulePresentation::with_limit(
            document.tables()?,
            max_objects,
        )?);
        if document.operators.contains_key(IDENTITY) {
            return Err(Error::Usage(format!(
                "operator name '{IDENTITY}' is reserved"
            )));
        }
        let mut operators = IndexMap::new();
        for name in document.operators.keys() {
            build_operator(
                &presentation,
                &document,
                name,
                &mut operators,
                &mut Vec::new(),
            )?;
        }
        // Keep document order regardless of the order dependencies resolved in.
        let operators = document
            .operators
            .keys()
            .map(|k| (k.clone(), operators.swap_remove(k).expect("built")))
            .collect();
        Ok(Model {
            presentation,
            operators,
            document,
        })
    }

    /// Wraps a generated presentation with no named operators.
    pub fn from_presentation(p: ModulePresentation) -> Self {
        Model {
            document: PresentationDocument::from_presentation(&p),
            presentation: Arc::new(p),
            operators: IndexMap::new(),
        }
    }

    pub fn presentation(&self) -> &Arc<ModulePresentation> {
        &self.presentation
    }

    /// The rotation-closed document this model was built from.
    pub fn document(&self) -> &PresentationDocument {
        &self.document
    }

    pub fn operators(&self) -> &IndexMap<String, OperatorSpec> {
        &self.operators
    }

    /// `identity` first, then the declared operators in document order.
    pub fn operator_names(&self) -> Vec<String> {
        std::iter::once(IDENTITY.to_string())
            .chain(self.operators.keys().cloned())
            .collect()
    }

    pub fn operator(&self, name: &str) -> Result<OperatorSpec> {
        if name == IDENTITY {
            return identity(&self.presentation);
        }
        self.operators
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Resolve {
                token: name.to_string(),
                context: format!("operators (known: {})", self.operator_names().join(", ")),
            })
    }

    /// Hex SHA-256 of the saved form.
    pub fn digest(&self) -> String {
        digest(&self.document)
    }
}

pub fn digest(doc: &PresentationDocument) -> String {
    hex::encode(Sha256::digest(doc.to_json().as_bytes()))
}

fn build_operator(
    p: &Arc<ModulePresentation>,
    doc: &PresentationDocument,
    name: &str,
    done: &mut IndexMap<String, OperatorSpec>,
    visiting: &mut Vec<String>,
) -> Result<OperatorSpec> {
    if name == IDENTITY {
        return identity(p);
    }
    if let Some(op) = done.get(name) {
        return Ok(op.clone());
    }
    let def = doc.operators.get(name).ok_or_else(|| Error::Resolve {
        token: name.to_string(),
        context: "operators".into(),
    })?;
    if visiting.iter().any(|v| v == name) {
        return Err(Error::Usage(format!(
            "operators form a cycle: {} -> {name}",
            visiting.join(" -> ")
        )));
    }
    visiting.push(name.to_string());
    let context = |field: &str| format!("operators.{name}.{field}");
    let module = Names::new(&p.module().names, "module");
    let members = |list: &[String], field: &str| -> Result<ObjSet> {
        Ok(module.row(list, &context(field))?.into_iter().collect())
    };
    let op = match def {
        OperatorDef::Identity {} => identity(p)?,
        OperatorDef::Radical {} => radical(p)?,
        OperatorDef::Division { s } => {
            let category = Names::new(&p.category().names, "category");
            let s: ObjSet = category.row(s, &context("s"))?.into_iter().collect();
            division(p, s)?
        }
        OperatorDef::Family { members: lists } => {
            let subs = lists
                .iter()
                .map(|l| ThickSubmodule::new(p, members(l, "members")?))
                .collect::<Result<Vec<_>>>()?;
            from_family(p, FamilySpec::new(p, subs)?)?
        }
        OperatorDef::Table { table } => {
            let mut rows = vec![None; p.module_len()];
            for (key, list) in table {
                let m = module.get(key, &context("table"))?;
                rows[m.index()] = Some(members(list, "table")?);
            }
            let rows = rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| r.ok_or(Error::TableNotTotal(i)))
                .collect::<Result<Vec<_>>>()?;
            table_operator(p, name, &rows)?
        }
        OperatorDef::CInfinity { inner } => {
            let inner = build_operator(p, doc, inner, done, visiting)?;
            c_infinity(&inner)?
        }
    }
    .with_name(name);
    visiting.pop();
    done.insert(name.to_string(), op.clone());
    Ok(op)
}

pub fn load_str(text: &str, max_objects: usize) -> Result<Model> {
    Model::from_document(PresentationDocument::parse(text)?, max_objects)
}

/// Loads with the default object limit.
pub fn load(path: impl AsRef<Path>) -> Result<Model> {
    load_with_limit(path, DEFAULT_MAX_OBJECTS)
}

pub fn load_with_limit(path: impl AsRef<Path>, max_objects: usize) -> Result<Model> {
    let text = read(path.as_ref())?;
    load_str(&text, max_objects)
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// The saved form: pretty JSON of the rotation-closed document.
pub fn save(model: &Model) -> String {
    model.document.to_json()
}

pub fn save_to(model: &Model, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, save(model))?;
    Ok(())
}

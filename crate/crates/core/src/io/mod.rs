//! Presentation files, named operators, command dispatch, reports and
//! graph export.

mod document;
mod dot;
mod json;
mod model;
mod report;
mod run;

pub use document::{CategorySection, ModuleSection, OperatorDef, PresentationDocument};
pub use dot::{hasse_dot, monoid_dot};
pub use model::{digest, load, load_str, load_with_limit, save, save_to, Model, IDENTITY};
pub use report::{Report, Verdict};
pub use run::{run, Command, Options};

//! Thick submodules of finite tensor triangulated module presentations,
//! closure operators of finite type on them, and exhaustive verification of
//! the spectral and topological-monoid structure of their fixed points.

pub mod bitset;
pub mod error;
pub mod exec;
pub mod io;
pub mod monoid;
pub mod operators;
pub mod presentation;
pub mod space;
pub mod thick;

pub use bitset::{ObjSet, ObjectId, PointId, PointSet};
pub use error::{Error, Result};
pub use exec::Exec;

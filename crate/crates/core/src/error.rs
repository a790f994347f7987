//! Structural errors raised while building or resolving objects.
//!
//! Law violations are not errors; they are returned as witness lists by the
//! various `validate`/`report` functions.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("names must be non-empty")]
    EmptyName,
    #[error("duplicate object name: {name}")]
    DuplicateObject { name: String },
    #[error("duplicate morphism name: {name}")]
    DuplicateMorphism { name: String },
    #[error("object {object} has no identity morphism")]
    MissingIdentity { object: String },
    #[error("morphism {morphism} cannot be the identity of {object}: endpoints differ")]
    BadIdentity { object: String, morphism: String },
    #[error("unknown object: {name}")]
    UnknownObject { name: String },
    #[error("unknown morphism: {name}")]
    UnknownMorphism { name: String },
    #[error("unknown element {element} at object {object}")]
    UnknownElement { element: String, object: String },
    #[error("{context}: expected {expected}, found {found}")]
    Mismatch {
        context: String,
        expected: String,
        found: String,
    },
    #[error("{0}")]
    Invalid(String),
}

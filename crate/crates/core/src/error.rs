use thiserror::Error;

use crate::Elem;

/// Errors raised while building or validating finite structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("{op} has no identity element")]
    NoIdentity { op: &'static str },

    #[error("addition is not an abelian group ({reason}) at {witness:?}")]
    NotAbelianAddition {
        reason: &'static str,
        witness: Vec<Elem>,
    },

    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(Elem, Elem, Elem),

    #[error("multiplication does not distribute over addition at ({0}, {1}, {2})")]
    NotDistributive(Elem, Elem, Elem),

    #[error("group axiom fails ({reason}) at {witness:?}")]
    NotAGroup {
        reason: &'static str,
        witness: Vec<Elem>,
    },

    #[error("{cap} cap exceeded: {actual} > {limit}")]
    CapExceeded {
        cap: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("not a homomorphism: {reason} (witness {witness:?})")]
    NotAHomomorphism { reason: String, witness: Vec<Elem> },

    #[error("unknown automorphism {0}")]
    UnknownAutomorphism(String),

    #[error("generators {0:?} do not generate the group")]
    NotGenerating(Vec<Elem>),

    #[error("not a morphism over Aut(R): theta_{g}({r}) != psi_f({g})({r})")]
    NotOverAut { g: Elem, r: Elem },

    #[error("not a morphism under R: h(f({r})) != g({r})")]
    NotUnderR { r: Elem },

    #[error("incompatible objects: {0}")]
    Incompatible(String),

    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),

    /// A construction that a proven statement guarantees has failed. This only
    /// happens on an implementation bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

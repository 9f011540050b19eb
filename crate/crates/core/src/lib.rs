//! Twisted group rings and semilinear automorphism groups over finite rings,
//! with exhaustive checks of the hom-set bijection
//! `Hom_{R/Ring}(R_θ[G], S) ≅ Hom_{Grp/Aut(R)}(G, semi_R(S))`.

pub mod abelian;
pub mod actions;
pub mod adjunction;
pub mod aut;
pub mod caps;
pub mod error;
pub mod family;
pub mod group;
pub mod hom;
pub mod oracle;
pub mod recipe;
pub mod report;
pub mod ring;
pub mod search;
pub mod semilin;
pub mod twist;

/// Element of a finite structure, identified by its index in canonical order.
pub type Elem = usize;

pub use caps::Caps;
pub use error::{Error, Result};

//! Exact symbolic path calculus over p-adic polytopes.
//!
//! The crate models functions on p-adic polytopes as finite sums of
//! characters, integrates them along polytopes with values in a formal ring
//! of periods, and provides analytic chains, their boundaries and the
//! subdivision homotopies relating chains to their barycentric or cubical
//! subdivisions.
//!
//! Modules, bottom-up:
//!
//! * [`localfield`] — the base field `Q_p` at capped relative precision;
//! * [`characters`] — generators of the character group and formal characters;
//! * [`polytope`] — rational polytopes, lattices and thick representatives;
//! * [`periods`] — the formal period ring and reduced logarithms;
//! * [`funcring`] — polynomial functions on polytopes, units and gluing;
//! * [`calculus`] — derivatives, forms, integrals and Stokes checks;
//! * [`paths`] — analytic chains, residues and obstruction classes;
//! * [`subdivision`] — barycentric and cubical subdivision homotopies.

pub mod localfield;
pub mod calculus;
pub mod characters;
pub mod error;
pub mod funcring;
pub mod linalg;
pub mod paths;
pub mod periods;
pub mod polytope;
pub mod subdivision;
pub mod suites;

pub use error::{Error, Result};

/// The book's chapters, compiled as doc-tests so that every snippet stays
/// in sync with the crate.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/local-field.md")]
    pub mod local_field {}
    #[doc = include_str!("../../../book/src/characters.md")]
    pub mod characters {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    pub mod polytopes {}
    #[doc = include_str!("../../../book/src/functions.md")]
    pub mod functions {}
    #[doc = include_str!("../../../book/src/periods.md")]
    pub mod periods {}
    #[doc = include_str!("../../../book/src/integration.md")]
    pub mod integration {}
    #[doc = include_str!("../../../book/src/paths.md")]
    pub mod paths {}
    #[doc = include_str!("../../../book/src/subdivision.md")]
    pub mod subdivision {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

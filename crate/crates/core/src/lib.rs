//! Exact toric geometry: lattices, cones, fans, class groups, and the
//! transitivity degree of the automorphism group of a toric variety.
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doc-tests of this crate.

pub mod classify;
pub mod cli;
pub mod cone;
pub mod cox;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod oracle;
pub mod surfaces;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/fans.md")]
    mod fans {}
    #[doc = include_str!("../../../book/src/cox.md")]
    mod cox {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/transitivity.md")]
    mod transitivity {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

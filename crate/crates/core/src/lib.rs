//! Exact arithmetic and verification for Curtis-Tits amalgams of affine type Ã.
//!
//! The crate builds the amalgams over finite fields, realizes their completions as
//! matrix groups over (skew) Laurent polynomial rings, and checks the defining
//! identities exactly. See the guide in `book/` for the mathematics.

pub mod error;
pub mod field;
pub mod form;
pub mod mixed;
pub mod amalgam;
pub mod coxeter;
pub mod laurent;
pub mod skew;
pub mod specialize;
pub mod matrix;
pub mod endo;
pub mod geometry;
pub mod suite;

pub use error::{Error, Result};
pub use field::{field_norm, FieldAut, FqElem, Field};
pub use laurent::LaurentPoly;
pub use matrix::{CommRing, Ring, RingMatrix};
pub use skew::{skew_mul, SkewLaurentPoly};
pub use endo::{compose_endo, det_r, is_unit_r, rho_embed, EndoR};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/det_r.md")]
    mod det_r {}
    #[doc = include_str!("../../../book/src/amalgams.md")]
    mod amalgams {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/coxeter.md")]
    mod coxeter {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

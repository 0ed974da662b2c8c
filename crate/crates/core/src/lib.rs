//! Exact sign degree and approximate degree of Boolean functions, with
//! certificates for both bounds.
//!
//! TRUE is `-1`. A point of the cube is a mask whose bit `i` is set when
//! `x_{i+1}` is TRUE.
//!
//! ```
//! use signlab::cube::BoolFunction;
//! use signlab::degree::{sign_degree, verify_dual_witness, Alpha};
//!
//! let xor = BoolFunction::parity(2);
//! let c = sign_degree(&xor).unwrap();
//! assert_eq!(c.degree, 2);
//! assert!(c.representation.verify(&xor, &Alpha::Infinity).is_ok());
//! assert!(verify_dual_witness(&xor, c.witness.as_ref().unwrap(), &Alpha::Infinity).ok());
//! ```
//!
//! Modules:
//!
//! - [`cube`]: truth tables, rational tables, inner products;
//! - [`fourier`]: exact Fourier expansions;
//! - [`formula`]: AND/OR formulas, parsing and builders;
//! - [`simplex`]: exact two-phase simplex;
//! - [`degree`]: degree decisions, representations and dual witnesses;
//! - [`composition`]: block composition and composed witnesses;
//! - [`sweep`]: exhaustive checks over small formulas;
//! - [`adversary`]: spectral adversary ratios in floating point.

pub mod adversary;
pub mod composition;
pub mod cube;
pub mod degree;
pub mod error;
pub mod formula;
pub mod fourier;
pub mod simplex;
pub mod sweep;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cube.md")]
    mod cube {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/degree.md")]
    mod degree {}
    #[doc = include_str!("../../../book/src/composition.md")]
    mod composition {}
    #[doc = include_str!("../../../book/src/sweep.md")]
    mod sweep {}
    #[doc = include_str!("../../../book/src/adversary.md")]
    mod adversary {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

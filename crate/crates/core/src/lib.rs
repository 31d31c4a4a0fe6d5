//! Exact arithmetic for integral binary forms and the rings they define.
//!
//! The crate is organized around a small set of exact-arithmetic layers:
//!
//! - [`arith`]: integer utilities: Kronecker symbols, fundamental
//!   discriminants, sieves, exact determinants.
//! - [`forms`]: binary forms of any degree, ternary quadratic forms,
//!   resolvent cubics and ternary sextic index forms.
//! - [`rings`]: invariant orders `R_F` of binary forms with explicit
//!   structure constants, cubic index forms, maximality tests, bounded
//!   unit searches.
//! - [`localsolve`]: splitting types over `F_p`, smooth point search on
//!   `ε z² = F(x, y)`, Hensel-certified local representation of ±1 by
//!   index forms, and the fixed 2-adic quartic catalogue.
//! - [`classgrp`]: imaginary quadratic form class groups with
//!   composition, 3-torsion, prime ideal classes, S-class quotients and
//!   the ideal-pair cubic field count.
//! - [`cubicfields`]: independent enumeration of cubic fields of a given
//!   discriminant by reduced binary cubic forms.
//! - [`families`]: the discriminant families Σ_n^± and their statistical
//!   reports.
//!
//! Everything is exact: no floating point enters any computation.

pub mod arith;
pub mod classgrp;
pub mod cubicfields;
pub mod error;
pub mod families;
pub mod forms;
pub mod localsolve;
pub mod realroots;
pub mod rings;
pub mod verify;

pub use error::{Error, Result};

//! Pants decompositions of closed hyperbolic surfaces.
//!
//! The crate builds closed genus-`g` surfaces as Fuchsian groups acting on the
//! upper half-plane, searches them for short closed geodesics and
//! orthogeodesics, and runs a constructive cutting procedure that produces a
//! pants decomposition whose curves all have length at most
//! `4π(g−1) + 4·R_g`, together with a checkable certificate.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, rendering and
//! the command line live in the companion `pants-cli` crate.
//!
//! Layout:
//! - [`hyp`]: points, isometries and geodesics of the upper half-plane.
//! - [`bounds`]: closed-form length bounds and trigonometric relations.
//! - [`surface`]: pants graphs, Fenchel–Nielsen coordinates, Fuchsian groups.
//! - [`geodesy`]: enumeration, systoles, lifts of curves, cut-surface components.
//! - [`algorithm`]: the decomposition procedure and its verification.
#![cfg_attr(not(test), no_std)]
// `!(x < y)` is used on purpose so that NaN fails the test
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod algorithm;
pub mod bounds;
mod config;
mod dd;
mod dirichlet;
mod error;
pub mod geodesy;
pub mod hyp;
mod math;
pub mod surface;
mod word;

pub use config::{Settings, Tolerances};
pub use error::{Error, Result};
pub use word::Word;

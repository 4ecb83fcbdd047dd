//! Exact shuffle formulas for the framed cohomological Hall algebra of a
//! quiver and for cohomological stable envelopes of Nakajima varieties.
//!
//! Everything is computed with exact rational arithmetic on tautological
//! polynomial representatives:
//!
//! - [`symalg`]: polynomials, rational functions, shuffles, flag pushforward
//! - [`quiver`]: quivers, equivariant weights, K-classes and Euler classes
//! - [`coha`]: the products `m`, `m_τ` and the abelianized `m_ab,τ`
//! - [`stab`]: inductive stable envelopes, `ψ`, and the semistable product
//! - [`fixloc`]: fixed points, `e(N⁻)` and the stable-envelope axioms
//! - [`rmatrix`]: restriction matrices, R-matrices, unitarity and braid checks
//! - [`cli`]: the job runner behind the `cohastab` binary

pub mod cache;
pub mod cli;
pub mod coha;
pub mod error;
pub mod fixloc;
pub mod quiver;
pub mod rmatrix;
pub mod stab;
pub mod symalg;

pub use error::{Error, Result};

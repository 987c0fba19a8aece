//! Corner-counting generating polynomials for non-intersecting lattice
//! paths in one-sided ladder regions.
//!
//! The crate computes, exactly, the polynomial `W = sum_k w_k t^k` where
//! `w_k` counts families of pairwise disjoint paths with `k` corners in
//! total, the determinant `W~ = det[W(P_i, Q_j)]` of single-path
//! polynomials, and the coefficient calculus relating the two. Every
//! identity between these objects can be checked by name through
//! [`verifier`], against brute-force enumeration where that is feasible.

pub mod acoeff;
pub mod brackets;
pub mod closedform;
mod counts;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod polyring;
pub mod region;
pub mod tuple;
pub mod verifier;

pub use error::{Error, Result};
pub use polyring::Poly;
pub use region::{Cell, EndpointSpec, LadderRegion};
pub use tuple::IncTuple;

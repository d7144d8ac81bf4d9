//! Support sets of bivariate distributions, and what support factorization can
//! and cannot tell you about independence.
//!
//! The library models closed subsets of the line and the plane, computes the
//! support of discrete, continuous, mixed, and singular distributions, and
//! screens joint distributions for dependence by comparing the joint support
//! against the product of the marginal supports. Support factorization is a
//! necessary condition for independence, never a sufficient one; exact and
//! numeric factorization oracles are provided so the gap is observable.
//!
//! The crate is `no_std` (with `alloc`) so the numeric kernel can be embedded;
//! IO, file formats, and the CLI live in the companion `supfact-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod builtins;
pub mod dist;
pub mod error;
pub mod independence;
pub mod numerics;
pub mod region;
pub mod sets;
pub mod support;

pub use error::{Error, Result};

//! Exact-arithmetic toolkit for finite lattices, their incidence algebras,
//! and machine-checkable representation-type certificates.
//!
//! The crate builds Cambrian lattices and weak orders of finite Coxeter
//! groups, order-ideal lattices of root posets and a Stokes-lattice fixture,
//! classifies the representation type of their incidence algebras as
//! finite / tame / wild, and emits certificates that can be re-validated
//! from raw poset data alone.

pub mod coxeter;
pub mod exact;
pub mod fixtures;
pub mod poset;
pub mod quiverrep;
pub mod reptype;
pub mod rootposets;

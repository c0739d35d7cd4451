//! Exact computer algebra for vertex Lie algebras.
//!
//! The crate is organised bottom-up: exact rationals and polynomials, the
//! formal delta calculus, finite Lie algebras, vertex Lie structures and
//! their vacuum modules, Zhu-type Poisson quotients, and the finite Poisson
//! algebras attached to even lattices.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod error;
pub mod formal_calc;
pub mod lattice;
pub mod lie_core;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod rational;
pub mod report;
pub mod vacuum;
pub mod vertex_lie;

pub use error::{Error, Result};
pub use poly::{Monomial, Poly};
pub use rational::Rational;

//! Poisson algebras attached to vertex Lie structures: the Zhu-type quotient
//! `P₂(V(L)) = V(L)/C₂(V(L))`, and vertex Poisson differential algebras with
//! their `A/(DA)A` quotients.

mod p2;
mod presentation;
mod vpa;

pub use p2::{c2_reduce, p2_bracket, p2_product, p2_structure, p2_structure_of, verify_p2_iso, P2Samples};
pub use presentation::{PoissonPresentation, PresentationJson};
pub use vpa::{field_var, split_field_var, DiffPoly, VPBracketConfig, VPConfig, VPDiffAlgebra, VPTermConfig};

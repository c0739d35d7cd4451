//! Vertex Lie structures: a base space `U`, a partial map `d`, and bracket
//! tables `[u_a(x), u_b(y)] = Σ f^(k)(y) Δ^(l)(x, y)`.
//!
//! Modes `u(n)` are reduced through `(du)(n) = -n u(n-1)` onto the chosen
//! complements, so every [`ModeElement`] is in canonical form. Window checks
//! of skew symmetry and Jacobi are evidence, not proof.

pub mod algebra;
pub mod builders;
mod config;
mod criteria;
mod mode;
mod structure;
mod verify;

pub use algebra::{AlgebraConfig, FiniteAlgebra};
pub use builders::{affine, heisenberg, loop_algebra, novikov, virasoro, witt};
pub use config::{BasisEntry, BracketConfig, DConfig, TermConfig, VLConfig};
pub use criteria::{
    b3_criterion, novikov_criterion, po_data_from_algebra, verify_po_relations, CriterionReport, PolarParts,
};
pub use mode::{Mode, ModeElement};
pub use structure::{FieldExpr, Generator, Term, VLData, VLStructure};

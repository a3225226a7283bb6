//! Invariants of smooth Gizatullin surfaces.
//!
//! The crate works from two kinds of input: a boundary zigzag with its
//! feathers (an extended divisor), or a blow-up presentation of the quadric.
//! From either it derives the inner/outer classification, exceptional
//! components, configuration invariants, invariant subsets of the
//! automorphism action and the shape of the fibration graph.

pub mod autgraph;
pub mod document;
pub mod dot;
pub mod extdiv;
pub mod field;
pub mod lexer;
pub mod zigzag;

pub use field::{cyc_arith, cyc_parse, ArithOp, CycNumber, FieldError};
pub mod homogeneity;
pub mod invariants;
pub mod report;

//! Exact rational-homotopy computations on free differential graded algebras.
//!
//! The crate builds Chevalley–Eilenberg models of nilpotent Lie algebras
//! (the Heisenberg and Kodaira–Thurston models, the `V_n` family), models of
//! complex projective spaces and of projectivized bundles, and computes
//! cohomology, cup products, triple Massey products and symplectic
//! invariants (Hard Lefschetz, symplectic star, harmonic representatives).
//! All arithmetic is exact over ℚ.

pub mod blowup;
pub mod cohom;
pub mod dga;
pub mod error;
pub mod grade;
pub mod massey;
pub mod models;
pub mod parse;
pub mod qlin;
pub mod symp;

pub use cohom::{betti, betti_profile, class_of, cup, is_exact, CohomClass, CohomologySpace};
pub use dga::Dga;
pub use error::{Error, Result};
pub use grade::{Element, GeneratorSpec, GradedAlgebra, Monomial};
pub use parse::parse_element;
pub use qlin::{QMatrix, QVector, Rational, Subspace};
